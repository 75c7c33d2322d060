use hallint_core::device::{g_h0_3c, g_h0_4c, SnrModel};
use hallint_core::elliptic::{complete_e, complete_k, complete_kprime, incomplete_f, nome};
use hallint_core::integrals::{a_double, i_direct};
use hallint_core::{ModulusPair, ParamPair, Parameter, QuadOptions, QuadResult};

use crate::args::{EvalArgs, Expr};
use crate::error::CliError;

fn need(value: Option<f64>, flag: &str, expr: Expr) -> Result<f64, CliError> {
    value.ok_or_else(|| CliError::usage(format!("{expr:?} needs --{flag}")))
}

/// Evaluates the requested quantity.
pub fn evaluate(args: &EvalArgs, max_evals: usize) -> Result<QuadResult, CliError> {
    let e = args.expr;
    let opts = QuadOptions::from(args.tol).with_max_evals(max_evals);
    let lambda = || need(args.lambda, "lambda", e).and_then(|l| Ok(Parameter::new(l)?));
    let pair = || Ok::<_, CliError>(ParamPair::new(need(args.alpha, "alpha", e)?, need(args.beta, "beta", e)?)?);
    let pf = || Ok::<_, CliError>((need(args.p, "p", e)?, need(args.f, "f", e)?));
    let model = SnrModel {
        constant: args.snr_constant,
    };
    let result = match e {
        Expr::K => QuadResult::exact(complete_k(lambda()?)?),
        Expr::Kprime => QuadResult::exact(complete_kprime(lambda()?)?),
        Expr::E => QuadResult::exact(complete_e(lambda()?)?),
        Expr::F => QuadResult::exact(incomplete_f(need(args.phi, "phi", e)?, lambda()?)?),
        Expr::Nome => QuadResult::exact(nome(lambda()?)?),
        Expr::A => a_double(ModulusPair::new(need(args.p, "p", e)?, need(args.q, "q", e)?)?, opts)?,
        Expr::I => i_direct(pair()?, opts)?,
        Expr::G3c => g_h0_3c(pair()?, opts)?,
        Expr::Snr3c => model.snr_3c(pair()?, opts)?,
        Expr::G4c => {
            let (p, f) = pf()?;
            g_h0_4c(p, f, opts)?
        }
        Expr::Snr4c => {
            let (p, f) = pf()?;
            model.snr_4c(p, f, opts)?
        }
    };
    Ok(result)
}

/// `value (±error)`; the value is printed in shortest round-trip form.
pub fn render(result: &QuadResult) -> String {
    format!("{} (±{:.1e})", result.value, result.abs_error_estimate)
}
