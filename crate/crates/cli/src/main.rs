fn main() {
    std::process::exit(hallint::run(std::env::args_os()));
}
