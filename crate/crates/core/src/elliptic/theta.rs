//! Jacobi theta series used to invert the period ratio `K'/K`.

/// Sum `sum_{n>=0} q^{n(n+1)}` and `1 + 2 sum_{n>=1} q^{n^2}`, i.e. the
/// series parts of `theta_2(q) / (2 q^{1/4})` and `theta_3(q)`.
///
/// Terms are added until the increment drops below `1e-17` of the running
/// sum; for `q <= e^{-pi}` this takes at most four terms.
fn theta_series(q: f64) -> (f64, f64) {
    let mut t2 = 1.0;
    let mut t3 = 1.0;
    let mut n = 1u32;
    loop {
        let nf = f64::from(n);
        let a = libm::pow(q, nf * (nf + 1.0));
        let b = 2.0 * libm::pow(q, nf * nf);
        t2 += a;
        t3 += b;
        if b < 1e-17 * t3 && a < 1e-17 * t2 {
            break;
        }
        n += 1;
        if n > 64 {
            break;
        }
    }
    (t2, t3)
}

/// Elliptic parameter of nome `q`: `lambda = (theta_2(q)/theta_3(q))^4`.
///
/// Written as `16 q (S_2 / theta_3)^4` so that the result keeps full relative
/// precision when `q` (and hence `lambda`) is tiny.
pub(crate) fn parameter_from_nome(q: f64) -> f64 {
    let (s2, t3) = theta_series(q);
    let r = s2 / t3;
    let r2 = r * r;
    16.0 * q * r2 * r2
}
