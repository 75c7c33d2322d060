//! Identities behind the symmetry results, evaluated as numeric residuals.
//!
//! Every check returns an [`IdentityReport`] holding both sides, the
//! absolute and relative residuals and the verdict against a tolerance.
//! Quadrature inside a check runs at a thousandth of the check tolerance
//! (but never below [`MIN_TOL`]) so that integration error does not eat the
//! residual budget. The finite-difference operator checks are the exception:
//! their stencils amplify quadrature noise by `1/h^2`, so they always
//! integrate at [`MIN_TOL`].
//!
//! Throughout, `K(t)` abbreviates `K(√t)` and `K'(t)` abbreviates `K(√(1-t))`.

use crate::device::{complement_device, snr_3c};
use crate::elliptic::{self, complete_e, complete_k, complete_kprime, dk_dparam, k_of, kprime_of, Parameter};
use crate::error::{Error, Result};
use crate::integrals::{
    a_double, first_double_integral, i1a_representation, i2_representation, i_direct, ModulusPair,
    ParamPair,
};
use crate::math::{sqrt, FRAC_PI_2, PI};
use crate::quadrature::{
    cauchy_pv, integrate, EndpointBehavior, QuadOptions, QuadResult, Singularity,
    DEFAULT_MAX_EVALS, MIN_TOL,
};

/// Default tolerance of the checks that only involve quadrature.
pub const QUADRATURE_TOL: f64 = 1e-8;
/// Default tolerance of the finite-difference operator checks.
pub const OPERATOR_TOL: f64 = 1e-5;
/// Closer than this to a removable singularity the limit value is used.
pub const REMOVABLE_GAP: f64 = 1e-8;

/// Outcome of one identity check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityReport {
    pub name: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    pub abs_residual: f64,
    pub rel_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl IdentityReport {
    /// Residuals are `|lhs - rhs|` and that divided by `max(|lhs|, |rhs|)`
    /// (0 when both sides vanish). The check passes if either is within
    /// `tolerance`.
    pub fn new(name: &'static str, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        let abs_residual = (lhs - rhs).abs();
        let scale = lhs.abs().max(rhs.abs());
        let rel_residual = if scale > 0.0 { abs_residual / scale } else { 0.0 };
        IdentityReport {
            name,
            lhs,
            rhs,
            abs_residual,
            rel_residual,
            tolerance,
            passed: abs_residual <= tolerance || rel_residual <= tolerance,
        }
    }
}

/// Tolerance of a check and the evaluation budget of each integral in it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckOptions {
    pub tol: f64,
    pub max_evals: usize,
}

impl From<f64> for CheckOptions {
    fn from(tol: f64) -> Self {
        CheckOptions {
            tol,
            max_evals: DEFAULT_MAX_EVALS,
        }
    }
}

impl CheckOptions {
    pub fn with_max_evals(self, max_evals: usize) -> Self {
        CheckOptions { max_evals, ..self }
    }

    fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::domain("tol", self.tol, "finite tol > 0"));
        }
        Ok(())
    }

    fn quadrature(&self) -> Result<QuadOptions> {
        self.validate()?;
        Ok(QuadOptions {
            tol: (1e-3 * self.tol).max(MIN_TOL),
            max_evals: self.max_evals,
        })
    }

    fn finest(&self) -> Result<QuadOptions> {
        self.validate()?;
        Ok(QuadOptions {
            tol: MIN_TOL,
            max_evals: self.max_evals,
        })
    }
}

fn interior(name: &'static str, x: f64) -> Result<Parameter> {
    if x > 0.0 && x < 1.0 {
        Parameter::new(x)
    } else {
        Err(Error::domain(name, x, "0 < value < 1"))
    }
}

/// `A(p, q) = A(√(1-p²), √(1-q²))`.
pub fn a_symmetry_residual(p: f64, q: f64, opts: impl Into<CheckOptions>) -> Result<IdentityReport> {
    let opts = opts.into();
    let quad = opts.quadrature()?;
    let m = ModulusPair::new(p, q)?;
    let lhs = a_double(m, quad)?.value;
    let rhs = a_double(m.complement(), quad)?.value;
    Ok(IdentityReport::new("A-symmetry", lhs, rhs, opts.tol))
}

/// `I(α, β) = I(1-β, 1-α)` for `0 <= β <= α <= 1`.
pub fn i_symmetry_residual(alpha: f64, beta: f64, opts: impl Into<CheckOptions>) -> Result<IdentityReport> {
    let opts = opts.into();
    let quad = opts.quadrature()?;
    let pair = ParamPair::new(alpha, beta)?;
    let lhs = i_direct(pair, quad)?.value;
    let rhs = i_direct(pair.swap_complement(), quad)?.value;
    Ok(IdentityReport::new("I-symmetry", lhs, rhs, opts.tol))
}

/// `I(α, α) = 0`.
pub fn i_diagonal_residual(alpha: f64, opts: impl Into<CheckOptions>) -> Result<IdentityReport> {
    let opts = opts.into();
    let lhs = i_direct(ParamPair::new(alpha, alpha)?, opts.quadrature()?)?.value;
    Ok(IdentityReport::new("I-diagonal", lhs, 0.0, opts.tol))
}

/// The direct double integral against the `K`-kernel route
/// `D1 - D2` with `D1` from [`i1a_representation`] and `D2` from
/// [`i2_representation`]; needs `0 < β < α < 1`.
pub fn route_residual(alpha: f64, beta: f64, opts: impl Into<CheckOptions>) -> Result<IdentityReport> {
    let opts = opts.into();
    let quad = opts.quadrature()?;
    let pair = ParamPair::new(alpha, beta)?;
    let lhs = i_direct(pair, quad)?.value;
    let d1 = i1a_representation(pair.alpha(), pair.beta(), quad)?;
    let d2 = i2_representation(pair, quad)?;
    Ok(IdentityReport::new("route-equivalence", lhs, (d1 - d2).value, opts.tol))
}

/// `∫_a^b g(t) / (c - t) dt`, as a principal value when `a < c < b`.
fn pole_integral<G: Fn(f64) -> f64>(
    g: G,
    a: f64,
    b: f64,
    c: f64,
    behavior: EndpointBehavior,
    opts: QuadOptions,
) -> Result<QuadResult> {
    if a < c && c < b {
        cauchy_pv(g, a, b, c, behavior, opts)
    } else {
        integrate(|t: f64| g(t) / (c - t), a, b, behavior, opts)
    }
}

/// The reciprocity identity for distinct `α, β` in `(0, 1)`:
///
/// ```text
/// P∫_0^α K'(α) K(t) / (π(β - t)) dt + P∫_α^1 K(α) K'(t) / (π(β - t)) dt
///   + P∫_0^β K'(β) K(t) / (π(α - t)) dt + P∫_β^1 K(β) K'(t) / (π(α - t)) dt
///   - K(α) K(β) + K'(α) K'(β) = 0
/// ```
///
/// Each integral is a principal value only when its pole falls inside the
/// interval; the kernels are regular at every endpoint used here.
pub fn recip_residual(alpha: f64, beta: f64, opts: impl Into<CheckOptions>) -> Result<IdentityReport> {
    let opts = opts.into();
    let quad = opts.quadrature()?.scaled(0.25 * PI);
    let (pa, pb) = (interior("alpha", alpha)?, interior("beta", beta)?);
    if alpha == beta {
        return Err(Error::domain("beta", beta, "beta != alpha"));
    }
    let (ka, kpa) = (complete_k(pa)?, complete_kprime(pa)?);
    let (kb, kpb) = (complete_k(pb)?, complete_kprime(pb)?);
    let regular = EndpointBehavior::REGULAR;
    let sum = pole_integral(k_of, 0.0, alpha, beta, regular, quad.scaled(1.0 / kpa))? * kpa
        + pole_integral(kprime_of, alpha, 1.0, beta, regular, quad.scaled(1.0 / ka))? * ka
        + pole_integral(k_of, 0.0, beta, alpha, regular, quad.scaled(1.0 / kpb))? * kpb
        + pole_integral(kprime_of, beta, 1.0, alpha, regular, quad.scaled(1.0 / kb))? * kb;
    let lhs = sum.value / PI - ka * kb + kpa * kpb;
    Ok(IdentityReport::new("reciprocity", lhs, 0.0, opts.tol))
}

/// The vanishing identity for `α` in `(0, 1)`:
///
/// ```text
/// (1/π) ∫_0^α [K'(α) - K'(t)] K(t) / (α - t) dt
///   + (1/π) ∫_α^1 [K(α) - K(t)] K'(t) / (α - t) dt = 0
/// ```
///
/// Both difference quotients are removable at `t = α`; within
/// [`REMOVABLE_GAP`] of it they are replaced by the analytic derivatives
/// `dK'/dα = -K_λ(1-α)` and `dK/dα = K_λ(α)`.
pub fn vanishing_residual(alpha: f64, opts: impl Into<CheckOptions>) -> Result<IdentityReport> {
    let opts = opts.into();
    let quad = opts.quadrature()?.scaled(0.5 * PI);
    let pa = interior("alpha", alpha)?;
    let (ka, kpa) = (complete_k(pa)?, complete_kprime(pa)?);
    let dk = dk_dparam(pa)?;
    let dkp = -dk_dparam(pa.complement())?;
    let below = integrate(
        |t: f64| {
            let d = alpha - t;
            let quotient = if d.abs() < REMOVABLE_GAP { dkp } else { (kpa - kprime_of(t)) / d };
            quotient * k_of(t)
        },
        0.0,
        alpha,
        EndpointBehavior::left(Singularity::Log),
        quad,
    )?;
    let above = integrate(
        |t: f64| {
            let d = alpha - t;
            let quotient = if d.abs() < REMOVABLE_GAP { dk } else { (ka - k_of(t)) / d };
            quotient * kprime_of(t)
        },
        alpha,
        1.0,
        EndpointBehavior::right(Singularity::Log),
        quad,
    )?;
    let lhs = (below + above).value / PI;
    Ok(IdentityReport::new("vanishing", lhs, 0.0, opts.tol))
}

/// The companion principal value used as a cross-check of the vanishing
/// identity: `([K'(α)]² - [K(α)]²)/2 = -P∫_0^1 K'(t) K(t) / (π(α - t)) dt`.
pub fn companion_residual(alpha: f64, opts: impl Into<CheckOptions>) -> Result<IdentityReport> {
    let opts = opts.into();
    let quad = opts.quadrature()?.scaled(PI);
    let pa = interior("alpha", alpha)?;
    let (ka, kpa) = (complete_k(pa)?, complete_kprime(pa)?);
    let lhs = 0.5 * (kpa * kpa - ka * ka);
    let pv = cauchy_pv(
        |t: f64| kprime_of(t) * k_of(t),
        0.0,
        1.0,
        alpha,
        EndpointBehavior::new(Singularity::Log, Singularity::Log),
        quad,
    )?;
    Ok(IdentityReport::new("companion", lhs, -pv.value / PI, opts.tol))
}

/// `K(λ) dK'(λ)/dλ - K'(λ) dK(λ)/dλ = -π / (4 λ (1-λ))` with analytic
/// derivatives.
pub fn wronskian_residual(lambda: f64, opts: impl Into<CheckOptions>) -> Result<IdentityReport> {
    let opts = opts.into();
    opts.validate()?;
    let param = interior("lambda", lambda)?;
    let (k, kp) = (complete_k(param)?, complete_kprime(param)?);
    let dk = dk_dparam(param)?;
    let dkp = -dk_dparam(param.complement())?;
    let lhs = k * dkp - kp * dk;
    let rhs = -PI / (4.0 * lambda * param.complement_value());
    Ok(IdentityReport::new("wronskian", lhs, rhs, opts.tol))
}

/// Legendre's relation `E K' + E' K - K K' = π/2`.
pub fn legendre_residual(lambda: f64, opts: impl Into<CheckOptions>) -> Result<IdentityReport> {
    let opts = opts.into();
    opts.validate()?;
    let param = interior("lambda", lambda)?;
    let (k, kp) = (complete_k(param)?, complete_kprime(param)?);
    let (e, ep) = (complete_e(param)?, complete_e(param.complement())?);
    let lhs = e * kp + ep * k - k * kp;
    Ok(IdentityReport::new("legendre", lhs, FRAC_PI_2, opts.tol))
}

/// `snr_3c(α, β) = snr_3c(1-β, 1-α)` for `0 < β <= α < 1`.
pub fn snr_complement_residual(alpha: f64, beta: f64, opts: impl Into<CheckOptions>) -> Result<IdentityReport> {
    let opts = opts.into();
    let quad = opts.quadrature()?;
    let pair = ParamPair::new(alpha, beta)?;
    let lhs = snr_3c(pair, quad)?.value;
    let rhs = snr_3c(complement_device(pair), quad)?.value;
    Ok(IdentityReport::new("snr-complement", lhs, rhs, opts.tol))
}

/// Default finite-difference step `1e-3 min(β, 1-β)`.
pub fn default_step(beta: f64) -> f64 {
    1e-3 * beta.min(1.0 - beta)
}

/// `L f(β) = d/dβ[β(1-β) df/dβ] - f/4 = β(1-β) f'' + (1-2β) f' - f/4`
/// from the fourth-order five-point centered stencil with step `h`.
///
/// The stencil reaches `β ± 2h`, which must stay inside `(0, 1)`.
pub fn apply_operator<F: FnMut(f64) -> Result<f64>>(mut f: F, beta: f64, h: f64) -> Result<f64> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::domain("h", h, "finite step > 0"));
    }
    if !(beta - 2.0 * h > 0.0 && beta + 2.0 * h < 1.0) {
        return Err(Error::domain("beta", beta, "beta - 2h > 0 and beta + 2h < 1"));
    }
    let (fm2, fm1) = (f(beta - 2.0 * h)?, f(beta - h)?);
    let f0 = f(beta)?;
    let (fp1, fp2) = (f(beta + h)?, f(beta + 2.0 * h)?);
    let d1 = (-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2) / (12.0 * h);
    let d2 = (-fp2 + 16.0 * fp1 - 30.0 * f0 + 16.0 * fm1 - fm2) / (12.0 * h * h);
    Ok(beta * (1.0 - beta) * d2 + (1.0 - 2.0 * beta) * d1 - 0.25 * f0)
}

/// `L_β D1(α, β) = -1 / (4 (√α + √β) √β)`, with `L_β` applied by
/// [`apply_operator`] to `β ↦` [`first_double_integral`]`(α, β)`.
pub fn operator_residual_d1(alpha: f64, beta: f64, h: f64, opts: impl Into<CheckOptions>) -> Result<IdentityReport> {
    let opts = opts.into();
    let quad = opts.finest()?;
    let pa = interior("alpha", alpha)?;
    interior("beta", beta)?;
    let lhs = apply_operator(
        |b| Ok(first_double_integral(pa, Parameter::new(b)?, quad)?.value),
        beta,
        h,
    )?;
    let rhs = -0.25 / ((sqrt(alpha) + sqrt(beta)) * sqrt(beta));
    Ok(IdentityReport::new("operator-d1", lhs, rhs, opts.tol))
}

/// `(1/π) [ K'(β) ∫_0^β K(t) g(α, t) dt + K(β) ∫_β^1 K'(t) g(α, t) dt ]`.
///
/// Both outer endpoints get tanh-sinh panels, so kernels with integrable
/// endpoint singularities such as `t^(-1/2)` are accepted.
pub fn split_kernel_integral<G: Fn(f64, f64) -> f64>(
    alpha: f64,
    beta: Parameter,
    g: &G,
    opts: QuadOptions,
) -> Result<f64> {
    let b = beta.value();
    let below = integrate(
        |t: f64| k_of(t) * g(alpha, t),
        0.0,
        b,
        EndpointBehavior::left(Singularity::InverseSqrt),
        opts,
    )?;
    let above = integrate(
        |t: f64| kprime_of(t) * g(alpha, t),
        b,
        1.0,
        EndpointBehavior::right(Singularity::Log),
        opts,
    )?;
    let (k, kp) = (elliptic::complete_k(beta)?, elliptic::complete_kprime(beta)?);
    Ok((kp * below.value + k * above.value) / PI)
}

/// `L_β [split_kernel_integral(α, β, g)] = -g(α, β) / 4`.
///
/// `g` must be smooth in `t` on a neighbourhood of `β` (the stencil
/// differentiates through the split point) and integrable on `[0, 1]`.
pub fn operator_residual_kernel<G: Fn(f64, f64) -> f64>(
    alpha: f64,
    beta: f64,
    g: G,
    h: f64,
    opts: impl Into<CheckOptions>,
) -> Result<IdentityReport> {
    let opts = opts.into();
    let quad = opts.finest()?;
    interior("alpha", alpha)?;
    interior("beta", beta)?;
    let lhs = apply_operator(
        |b| split_kernel_integral(alpha, Parameter::new(b)?, &g, quad),
        beta,
        h,
    )?;
    let rhs = -0.25 * g(alpha, beta);
    if !rhs.is_finite() {
        return Err(Error::Evaluation {
            abscissa: beta,
            value: rhs,
        });
    }
    Ok(IdentityReport::new("operator-kernel", lhs, rhs, opts.tol))
}

/// The kernel `1 / ((√t + √α) √t)` that turns the split integral into `D1`.
pub fn sqrt_kernel(alpha: f64, t: f64) -> f64 {
    let rt = sqrt(t);
    1.0 / ((rt + sqrt(alpha)) * rt)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_invariants() {
        let r = IdentityReport::new("x", 2.0, 2.0 + 1e-9, 1e-8);
        assert!(r.passed && (r.abs_residual - 1e-9).abs() < 1e-15);
        let z = IdentityReport::new("z", 0.0, 0.0, 1e-8);
        assert_eq!(z.rel_residual, 0.0);
        assert!(!IdentityReport::new("y", 1.0, 2.0, 1e-3).passed);
        // relative criterion alone is enough
        assert!(IdentityReport::new("big", 1e9, 1e9 + 1.0, 1e-8).passed);
    }

    #[test]
    fn reciprocity_examples() {
        let r = recip_residual(0.7, 0.2, QUADRATURE_TOL).unwrap();
        assert!(r.abs_residual < 1e-8, "{r:?}");
        let s = recip_residual(0.2, 0.7, QUADRATURE_TOL).unwrap();
        assert!((r.lhs - s.lhs).abs() < 1e-10);
        let near = recip_residual(0.501, 0.499, 1e-6).unwrap();
        assert!(near.abs_residual < 1e-6, "{near:?}");
        assert!(recip_residual(0.4, 0.4, QUADRATURE_TOL).is_err());
        assert!(recip_residual(0.0, 0.4, QUADRATURE_TOL).is_err());
    }

    #[test]
    fn vanishing_examples() {
        for a in [0.5, 0.1] {
            let r = vanishing_residual(a, QUADRATURE_TOL).unwrap();
            assert!(r.abs_residual < 1e-8, "{r:?}");
        }
        assert!(vanishing_residual(1.0, QUADRATURE_TOL).is_err());
        let c = companion_residual(0.3, QUADRATURE_TOL).unwrap();
        assert!(c.abs_residual < 1e-8, "{c:?}");
    }

    #[test]
    fn wronskian_examples() {
        let r = wronskian_residual(0.5, 1e-10).unwrap();
        assert!((r.rhs + PI).abs() < 1e-15 && r.abs_residual < 1e-10);
        let r = wronskian_residual(0.1, 1e-10).unwrap();
        assert!((r.rhs + PI / 0.36).abs() < 1e-12 && r.abs_residual < 1e-10);
        assert!(wronskian_residual(0.0, 1e-10).is_err());
    }

    #[test]
    fn analytic_derivative_matches_difference() {
        let h = 1e-6;
        let k = |x: f64| complete_k(Parameter::new(x).unwrap()).unwrap();
        let fd = (k(0.4 + h) - k(0.4 - h)) / (2.0 * h);
        assert!((fd - dk_dparam(Parameter::new(0.4).unwrap()).unwrap()).abs() < 1e-7);
    }

    #[test]
    fn operator_on_first_double_integral() {
        let r = operator_residual_d1(0.25, 0.25, 1e-3, OPERATOR_TOL).unwrap();
        assert!((r.rhs + 0.5).abs() < 1e-15);
        assert!(r.abs_residual < 1e-5, "{r:?}");
        let r = operator_residual_d1(0.5, 0.2, default_step(0.2), OPERATOR_TOL).unwrap();
        assert!(r.abs_residual < 1e-5, "{r:?}");
    }

    #[test]
    fn operator_annihilates_k() {
        let lk = apply_operator(|b| complete_k(Parameter::new(b)?), 0.3, default_step(0.3)).unwrap();
        assert!(lk.abs() < 1e-6, "{lk}");
        let lkp = apply_operator(|b| complete_kprime(Parameter::new(b)?), 0.3, default_step(0.3)).unwrap();
        assert!(lkp.abs() < 1e-6, "{lkp}");
    }

    #[test]
    fn stencil_is_fourth_order() {
        let k = |b: f64| complete_k(Parameter::new(b)?);
        let coarse = apply_operator(k, 0.5, 0.04).unwrap().abs();
        let fine = apply_operator(k, 0.5, 0.02).unwrap().abs();
        let ratio = coarse / fine;
        assert!((8.0..=32.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn operator_on_kernels() {
        let cases: [(f64, f64, fn(f64, f64) -> f64); 3] = [
            (0.5, 0.3, sqrt_kernel),
            (0.4, 0.6, |_, _| 1.0),
            (0.3, 0.5, |_, t| t),
        ];
        for (a, b, g) in cases {
            let r = operator_residual_kernel(a, b, g, default_step(b), OPERATOR_TOL).unwrap();
            assert!(r.abs_residual < 1e-5, "({a}, {b}): {r:?}");
        }
        let r = operator_residual_kernel(0.3, 0.5, |_, t| t, 1e-3, OPERATOR_TOL).unwrap();
        assert!((r.rhs + 0.125).abs() < 1e-15);
        assert!(operator_residual_kernel(0.3, 0.001, |_, t| t, 1e-3, OPERATOR_TOL).is_err());
    }

    #[test]
    fn symmetry_checks() {
        assert!(a_symmetry_residual(0.3, 0.7, QUADRATURE_TOL).unwrap().passed);
        assert!(i_symmetry_residual(0.7, 0.2, QUADRATURE_TOL).unwrap().passed);
        assert!(i_diagonal_residual(0.5, 1e-9).unwrap().passed);
        assert!(route_residual(0.6, 0.2, 1e-7).unwrap().passed);
        assert!(legendre_residual(0.05, 1e-12).unwrap().abs_residual < 1e-12);
        assert!(snr_complement_residual(0.7, 0.2, QUADRATURE_TOL).unwrap().passed);
        assert!(a_symmetry_residual(0.3, 0.7, -1.0).is_err());
    }
}
