//! The double integrals `A(p, q)` and `I(alpha, beta)`.
//!
//! `A(p, q) = ∫_0^pi dx / sqrt(1 - p cos x) ∫_0^x dy / sqrt(1 + q cos y)`.
//!
//! `I(alpha, beta) = D1 - D2` with
//!
//! ```text
//! D1 = ∫_0^{pi/2} dθ / sqrt(1 - (1-α) sin²θ) ∫_0^θ dφ / sqrt(1 - (1-β) sin²φ)
//! D2 = ∫_0^{pi/2} sqrt(α(1-α)) sinθ dθ
//!        / ( sqrt(α(1-β) - (1-α)β cos²θ) sqrt(1 - (1-α) sin²θ) )
//!        * ∫_0^θ dφ / sqrt(1 - (1-α) sin²φ)
//! ```
//!
//! The direct routes always collapse the inner integral to the incomplete
//! integral `F`, so each double integral costs one adaptive pass. The
//! `*_representation` functions evaluate the same quantities through single
//! integrals over products of complete integrals (`K`-kernels), some of them
//! principal values, and serve as an independent route.

use crate::elliptic::{self, incomplete_f_unchecked, k_of, kprime_of, Parameter};
use crate::error::{Error, Result};
use crate::math::{cos, hypot, sin, sqrt, FRAC_PI_2, PI};
use crate::quadrature::{
    cauchy_pv, integrate, EndpointBehavior, QuadOptions, QuadResult, Singularity,
};

/// Four-contact moduli `(p, q)` in `[0, 1]^2`.
///
/// The complementary moduli `sqrt(1 - p^2)`, `sqrt(1 - q^2)` are computed once
/// at construction so that [`ModulusPair::complement`] is an exact involution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModulusPair {
    p: f64,
    q: f64,
    p_co: f64,
    q_co: f64,
}

fn co_modulus(k: f64) -> f64 {
    sqrt((1.0 - k) * (1.0 + k))
}

impl ModulusPair {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::domain("p", p, "0 <= p <= 1"));
        }
        if !(0.0..=1.0).contains(&q) {
            return Err(Error::domain("q", q, "0 <= q <= 1"));
        }
        Ok(ModulusPair {
            p,
            q,
            p_co: co_modulus(p),
            q_co: co_modulus(q),
        })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    /// `(sqrt(1 - p^2), sqrt(1 - q^2))`.
    pub fn complement(&self) -> Self {
        ModulusPair {
            p: self.p_co,
            q: self.q_co,
            p_co: self.p,
            q_co: self.q,
        }
    }
}

/// Three-contact parameters with `0 <= beta <= alpha <= 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamPair {
    alpha: Parameter,
    beta: Parameter,
}

impl ParamPair {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        Self::from_parameters(Parameter::new(alpha)?, Parameter::new(beta)?)
    }

    pub fn from_parameters(alpha: Parameter, beta: Parameter) -> Result<Self> {
        // near 1 distinct parameters can share a value; the complements
        // still order them
        let inverted = beta.value() > alpha.value()
            || (beta.value() == alpha.value() && beta.complement_value() < alpha.complement_value());
        if inverted {
            return Err(Error::domain("beta", beta.value(), "beta <= alpha"));
        }
        Ok(ParamPair { alpha, beta })
    }

    pub fn alpha(&self) -> Parameter {
        self.alpha
    }

    pub fn beta(&self) -> Parameter {
        self.beta
    }

    /// `(1 - beta, 1 - alpha)`; an involution that preserves the ordering.
    pub fn swap_complement(&self) -> Self {
        ParamPair {
            alpha: self.beta.complement(),
            beta: self.alpha.complement(),
        }
    }

    fn is_strictly_ordered_interior(&self) -> bool {
        self.beta.value() > 0.0
            && self.beta.value() < self.alpha.value()
            && self.alpha.complement_value() > 0.0
    }
}

fn require_interior(name: &'static str, p: Parameter) -> Result<()> {
    if p.value() > 0.0 && p.complement_value() > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(name, p.value(), "0 < value < 1"))
    }
}

/// `A(p, q)` for `p, q` in `[0, 1]`.
///
/// Half-angle reductions bring both factors to the `1 - m sin^2` form:
///
/// ```text
/// 1 + q cos y = (1 + q) (1 - (2q/(1+q)) sin²(y/2))
///   => ∫_0^x dy / sqrt(1 + q cos y) = 2/sqrt(1+q) F(x/2 | 2q/(1+q))
/// 1 - p cos x = (1 - p) + 2p sin²(x/2)
/// ```
///
/// The outer weight is evaluated as `hypot(sqrt(1-p), sqrt(2p) sin(x/2))` so
/// that `p = 1` (weight `~ 1/x`, bounded product) stays finite near `x = 0`.
/// At `q = 1` the inner factor has a logarithmic singularity at `x = pi`,
/// which is flagged to the quadrature.
pub fn a_double(pair: ModulusPair, opts: impl Into<QuadOptions>) -> Result<QuadResult> {
    let (p, q) = (pair.p, pair.q);
    let inner_param = Parameter::new(2.0 * q / (1.0 + q))?;
    let inner_scale = 2.0 / sqrt(1.0 + q);
    let (root_one_minus_p, root_two_p) = (sqrt(1.0 - p), sqrt(2.0 * p));
    let integrand = |x: f64| {
        let half = 0.5 * x;
        let inner = inner_scale * incomplete_f_unchecked(half, inner_param);
        inner / hypot(root_one_minus_p, root_two_p * sin(half))
    };
    let behavior = if q == 1.0 {
        EndpointBehavior::right(Singularity::Log)
    } else {
        EndpointBehavior::REGULAR
    };
    integrate(integrand, 0.0, PI, behavior, opts)
}

/// The first double integral `D1(alpha, beta)` of `I`:
/// `∫_0^{pi/2} F(θ | 1-β) / sqrt(1 - (1-α) sin²θ) dθ`.
///
/// Defined for all `alpha` in `(0, 1]` and `beta` in `[0, 1]` (no ordering).
/// At `beta = 0` the inner factor `F(θ | 1) = artanh(sin θ)` is
/// logarithmically singular at `pi/2`; that endpoint is then flagged.
pub fn first_double_integral(
    alpha: Parameter,
    beta: Parameter,
    opts: impl Into<QuadOptions>,
) -> Result<QuadResult> {
    if alpha.value() == 0.0 {
        return Err(Error::Divergence {
            name: "alpha",
            value: 0.0,
        });
    }
    let inner = beta.complement();
    let (a, a_co) = (alpha.value(), alpha.complement_value());
    let integrand = |theta: f64| {
        let c = cos(theta);
        // 1 - (1-α) sin² = α + (1-α) cos²
        incomplete_f_unchecked(theta, inner) / sqrt(a + a_co * c * c)
    };
    let behavior = if beta.value() == 0.0 {
        EndpointBehavior::right(Singularity::Log)
    } else {
        EndpointBehavior::REGULAR
    };
    integrate(integrand, 0.0, FRAC_PI_2, behavior, opts)
}

/// The weighted double integral `D2(alpha, beta)` of `I`, `beta <= alpha`.
///
/// With `δ = α - β` the radicand is rewritten without cancellation,
/// `α(1-β) - (1-α)β cos²θ = δ + (1-α)β sin²θ`, and `sin θ` is divided out:
///
/// ```text
/// w(θ) = sqrt(α(1-α)) / ( sqrt(δ / sin²θ + (1-α)β) sqrt(α + (1-α) cos²θ) )
/// ```
///
/// which is exact on the diagonal `δ = 0` and free of `0/0` at `θ = 0`.
pub fn second_double_integral(pair: ParamPair, opts: impl Into<QuadOptions>) -> Result<QuadResult> {
    let (alpha, beta) = (pair.alpha, pair.beta);
    let (a, a_co, b) = (alpha.value(), alpha.complement_value(), beta.value());
    if a_co == 0.0 {
        // prefactor sqrt(α(1-α)) vanishes
        return Ok(QuadResult::default());
    }
    if a == 0.0 {
        return Err(Error::Divergence {
            name: "alpha",
            value: 0.0,
        });
    }
    let inner = alpha.complement();
    let delta = a - b;
    let prefactor = sqrt(a * a_co);
    let cb = a_co * b;
    let integrand = |theta: f64| {
        let (s, c) = (sin(theta), cos(theta));
        let w = prefactor / (sqrt(delta / (s * s) + cb) * sqrt(a + a_co * c * c));
        w * incomplete_f_unchecked(theta, inner)
    };
    integrate(integrand, 0.0, FRAC_PI_2, EndpointBehavior::REGULAR, opts)
}

/// `I(alpha, beta)` for `0 <= beta <= alpha <= 1` via `D1 - D2`.
///
/// Boundary cases: at `alpha = 1` the second term vanishes identically; at
/// `beta = 0` the first term has a flagged logarithmic endpoint. The corners
/// `(0, 0)` and `(1, 1)` lie on the diagonal where the two terms coincide,
/// but there one of them is divergent or `0/0`, so the diagonal value 0 is
/// returned directly.
pub fn i_direct(pair: ParamPair, opts: impl Into<QuadOptions>) -> Result<QuadResult> {
    let opts = opts.into();
    let (a, b) = (pair.alpha.value(), pair.beta.value());
    if a == b && (a == 0.0 || a == 1.0) {
        return Ok(QuadResult::default());
    }
    let half = opts.scaled(0.5);
    let d1 = first_double_integral(pair.alpha, pair.beta, half)?;
    let d2 = second_double_integral(pair, half)?;
    Ok(d1 - d2)
}

/// `(1/π) [ K(√(1-L)) ∫_0^L K(√t) dt / ((√t + √s) √t)
///        + K(√L) ∫_L^1 K(√(1-t)) dt / ((√t + √s) √t) ]`
fn sqrt_kernel_pair(limit: Parameter, shift: Parameter, opts: QuadOptions) -> Result<QuadResult> {
    let (l, root_s) = (limit.value(), sqrt(shift.value()));
    let k_l = elliptic::complete_k(limit)?;
    let kp_l = elliptic::complete_kprime(limit)?;
    let half = opts.scaled(0.5);
    let lower = integrate(
        |t: f64| {
            let rt = sqrt(t);
            k_of(t) / ((rt + root_s) * rt)
        },
        0.0,
        l,
        EndpointBehavior::left(Singularity::InverseSqrt),
        half.scaled(1.0 / kp_l),
    )?;
    let upper = integrate(
        |t: f64| {
            let rt = sqrt(t);
            kprime_of(t) / ((rt + root_s) * rt)
        },
        l,
        1.0,
        EndpointBehavior::REGULAR,
        half.scaled(1.0 / k_l),
    )?;
    Ok((lower * kp_l + upper * k_l) * (1.0 / PI))
}

/// `D1(alpha, beta)` through the first `K`-kernel representation:
///
/// ```text
/// (1/π) ∫_0^β K(√(1-β)) K(√t) / (√t + √α) dt/√t
///   + (1/π) ∫_β^1 K(√β) K(√(1-t)) / (√t + √α) dt/√t
/// ```
///
/// Valid for all `alpha, beta` in `(0, 1)`; no ordering is required.
pub fn i1a_representation(
    alpha: Parameter,
    beta: Parameter,
    opts: impl Into<QuadOptions>,
) -> Result<QuadResult> {
    require_interior("alpha", alpha)?;
    require_interior("beta", beta)?;
    sqrt_kernel_pair(beta, alpha, opts.into())
}

/// `D1(alpha, beta)` through the second `K`-kernel representation:
///
/// ```text
/// K(√(1-α)) K(√(1-β))
///   - (1/π) ∫_0^α K(√(1-α)) K(√t) / (√t + √β) dt/√t
///   - (1/π) ∫_α^1 K(√α) K(√(1-t)) / (√t + √β) dt/√t
/// ```
pub fn i1b_representation(
    alpha: Parameter,
    beta: Parameter,
    opts: impl Into<QuadOptions>,
) -> Result<QuadResult> {
    require_interior("alpha", alpha)?;
    require_interior("beta", beta)?;
    let product = elliptic::complete_kprime(alpha)? * elliptic::complete_kprime(beta)?;
    Ok(QuadResult::exact(product) - sqrt_kernel_pair(alpha, beta, opts.into())?)
}

/// `∫ K(√(1-s)) ds / ((√s + √(1-α)) √s)` when `use_kprime` is set and
/// `∫ K(√s) ds / ((√s + √(1-α)) √s)` otherwise, over `[lower, upper]`.
fn reflected_sqrt_kernel(
    lower: f64,
    upper: f64,
    alpha_co: f64,
    use_kprime: bool,
    opts: QuadOptions,
) -> Result<QuadResult> {
    let root = sqrt(alpha_co);
    if use_kprime {
        integrate(
            |s: f64| {
                let rs = sqrt(s);
                kprime_of(s) / ((rs + root) * rs)
            },
            lower,
            upper,
            EndpointBehavior::REGULAR,
            opts,
        )
    } else {
        integrate(
            |s: f64| {
                let rs = sqrt(s);
                k_of(s) / ((rs + root) * rs)
            },
            lower,
            upper,
            EndpointBehavior::left(Singularity::InverseSqrt),
            opts,
        )
    }
}

/// `D2(alpha, beta)` for `0 < beta < alpha < 1` through `K`-kernels:
///
/// ```text
/// - P∫_0^1 K(√β) K(√(1-t)) dt / (π(α - t))
/// - (1/π) ∫_0^β [K(√(1-β)) K(√t) - K(√β) K(√(1-t))] / (α - t) dt
/// + (1/π) ∫_0^β K(√(1-β)) K(√t) / (√(1-t) + √(1-α)) dt/√(1-t)
/// + (1/π) ∫_β^1 K(√β) K(√(1-t)) / (√(1-t) + √(1-α)) dt/√(1-t)
/// ```
///
/// The last integral is evaluated after `s = 1 - t`, which moves its
/// inverse-square-root endpoint to `s = 0`.
pub fn i2_representation(pair: ParamPair, opts: impl Into<QuadOptions>) -> Result<QuadResult> {
    if !pair.is_strictly_ordered_interior() {
        return Err(Error::domain(
            "beta",
            pair.beta.value(),
            "0 < beta < alpha < 1",
        ));
    }
    let opts = opts.into().scaled(0.25);
    let (alpha, beta) = (pair.alpha, pair.beta);
    let (a, b) = (alpha.value(), beta.value());
    let alpha_co = alpha.complement_value();
    let k_b = elliptic::complete_k(beta)?;
    let kp_b = elliptic::complete_kprime(beta)?;

    let pv = cauchy_pv(
        kprime_of,
        0.0,
        1.0,
        a,
        EndpointBehavior::left(Singularity::Log),
        opts.scaled(PI / k_b),
    )? * (k_b / PI);
    let mixed = integrate(
        |t: f64| (kp_b * k_of(t) - k_b * kprime_of(t)) / (a - t),
        0.0,
        b,
        EndpointBehavior::left(Singularity::Log),
        opts.scaled(PI),
    )? * (1.0 / PI);
    let root_co = sqrt(alpha_co);
    let near = integrate(
        |t: f64| {
            let r = sqrt(1.0 - t);
            k_of(t) / ((r + root_co) * r)
        },
        0.0,
        b,
        EndpointBehavior::REGULAR,
        opts.scaled(PI / kp_b),
    )? * (kp_b / PI);
    let far = reflected_sqrt_kernel(0.0, beta.complement_value(), alpha_co, false, opts.scaled(PI / k_b))?
        * (k_b / PI);
    Ok(-pv - mixed + near + far)
}

/// `I(alpha, beta)` for `0 < beta < alpha < 1`, assembled from the
/// `K`-kernel terms used to prove the complement symmetry:
///
/// ```text
/// K(√(1-α)) K(√(1-β))
///   + (1/π) ∫_0^β K(√(1-β)) K(√t) / (α - t) dt
///   + P∫_β^1 K(√β) K(√(1-t)) / (π(α - t)) dt
///   - (1/π) ∫_0^α K(√(1-α)) K(√t) / (√t + √β) dt/√t
///   - (1/π) ∫_α^1 K(√α) K(√(1-t)) / (√t + √β) dt/√t
///   - (1/π) ∫_{1-β}^1 K(√(1-β)) K(√(1-s)) / (√s + √(1-α)) ds/√s
///   - (1/π) ∫_0^{1-β} K(√β) K(√s) / (√s + √(1-α)) ds/√s
/// ```
pub fn i_representation(pair: ParamPair, opts: impl Into<QuadOptions>) -> Result<QuadResult> {
    if !pair.is_strictly_ordered_interior() {
        return Err(Error::domain(
            "beta",
            pair.beta.value(),
            "0 < beta < alpha < 1",
        ));
    }
    let opts = opts.into().scaled(0.2);
    let (alpha, beta) = (pair.alpha, pair.beta);
    let (a, b) = (alpha.value(), beta.value());
    let k_b = elliptic::complete_k(beta)?;
    let kp_b = elliptic::complete_kprime(beta)?;
    let kp_a = elliptic::complete_kprime(alpha)?;

    let product = QuadResult::exact(kp_a * kp_b);
    let below = integrate(
        |t: f64| k_of(t) / (a - t),
        0.0,
        b,
        EndpointBehavior::REGULAR,
        opts.scaled(PI / kp_b),
    )? * (kp_b / PI);
    let pv = cauchy_pv(
        kprime_of,
        b,
        1.0,
        a,
        EndpointBehavior::REGULAR,
        opts.scaled(PI / k_b),
    )? * (k_b / PI);
    let swapped = sqrt_kernel_pair(alpha, beta, opts)?;
    let co_b = beta.complement_value();
    let alpha_co = alpha.complement_value();
    let tail = reflected_sqrt_kernel(co_b, 1.0, alpha_co, true, opts.scaled(PI / kp_b))? * (kp_b / PI);
    let head = reflected_sqrt_kernel(0.0, co_b, alpha_co, false, opts.scaled(PI / k_b))? * (k_b / PI);
    Ok(product + below + pv - swapped - tail - head)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-12;

    fn pair(a: f64, b: f64) -> ParamPair {
        ParamPair::new(a, b).unwrap()
    }

    fn p(x: f64) -> Parameter {
        Parameter::new(x).unwrap()
    }

    #[test]
    fn a_at_origin() {
        let v = a_double(ModulusPair::new(0.0, 0.0).unwrap(), TOL).unwrap();
        assert!((v.value - PI * PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn a_complement_symmetry_example() {
        let m = ModulusPair::new(0.6, 0.8).unwrap();
        let lhs = a_double(m, TOL).unwrap().value;
        let rhs = a_double(m.complement(), TOL).unwrap().value;
        assert!((lhs - rhs).abs() < 1e-9);
        // mpmath, 25 digits
        assert!((lhs - 4.256_712_938_732_822_793).abs() < 1e-10);
    }

    #[test]
    fn a_closed_endpoints_are_finite() {
        for (pp, qq) in [(1.0, 0.5), (0.5, 1.0), (1.0, 1.0), (1.0, 0.0)] {
            let v = a_double(ModulusPair::new(pp, qq).unwrap(), 1e-10).unwrap();
            assert!(v.value.is_finite() && v.value > 0.0, "({pp}, {qq}) -> {v:?}");
        }
                let lhs = a_double(ModulusPair::new(1.0, 0.0).unwrap(), 1e-11).unwrap().value;
        let rhs = a_double(ModulusPair::new(0.0, 1.0).unwrap(), 1e-11).unwrap().value;
        assert!((lhs - rhs).abs() < 1e-9, "{lhs} vs {rhs}");
    }

    #[test]
    fn modulus_pair_validation() {
        assert!(ModulusPair::new(1.1, 0.5).is_err());
        assert!(ModulusPair::new(0.5, -0.1).is_err());
        let m = ModulusPair::new(0.3, 0.9).unwrap();
        assert_eq!(m.complement().complement(), m);
    }

    #[test]
    fn param_pair_validation() {
        assert!(ParamPair::new(0.2, 0.7).is_err());
        let (hi, lo) = (Parameter::from_complement(1e-20).unwrap(), Parameter::from_complement(1e-19).unwrap());
        assert_eq!(hi.value(), lo.value());
        assert!(ParamPair::from_parameters(hi, lo).is_ok());
        assert!(ParamPair::from_parameters(lo, hi).is_err());
        let pp = pair(0.7, 0.2);
        assert_eq!(pp.swap_complement().swap_complement(), pp);
        let sc = pp.swap_complement();
        assert!((sc.alpha().value() - 0.8).abs() < 1e-15);
        assert!((sc.beta().value() - 0.3).abs() < 1e-15);
    }

    #[test]
    fn diagonal_vanishes() {
        for a in [0.2, 0.5, 0.9] {
            let v = i_direct(pair(a, a), TOL).unwrap();
            assert!(v.value.abs() < 1e-12, "alpha = {a}: {v:?}");
        }
        assert_eq!(i_direct(pair(0.0, 0.0), TOL).unwrap().value, 0.0);
        assert_eq!(i_direct(pair(1.0, 1.0), TOL).unwrap().value, 0.0);
    }

    #[test]
    fn i_at_one_zero_is_twice_catalan() {
        let v = i_direct(pair(1.0, 0.0), TOL).unwrap();
        assert!((v.value - 1.831_931_188_354_438_030_1).abs() < 1e-11, "{v:?}");
    }

    #[test]
    fn i_boundary_symmetry() {
        // I(α, 0) = I(1, 1 - α)
        let lhs = i_direct(pair(0.4, 0.0), TOL).unwrap().value;
        let rhs = i_direct(pair(1.0, 0.6), TOL).unwrap().value;
        assert!((lhs - rhs).abs() < 1e-10, "{lhs} vs {rhs}");
    }

    #[test]
    fn i_direct_matches_mpmath() {
        // (alpha, beta, I) from a 25-digit mpmath nested evaluation
        let cases = [
            (0.7, 0.2, 0.941_766_341_347_657_726_4),
            (0.5, 0.3, 0.545_224_792_284_102_252_5),
            (0.9, 0.1, 1.281_104_002_947_350_589_5),
        ];
        for (a, b, want) in cases {
            let got = i_direct(pair(a, b), TOL).unwrap().value;
            assert!((got - want).abs() < 1e-11, "({a}, {b}): {got} vs {want}");
        }
    }

    #[test]
    fn i_direct_symmetry_example() {
        let pp = pair(0.7, 0.2);
        let lhs = i_direct(pp, TOL).unwrap().value;
        let rhs = i_direct(pp.swap_complement(), TOL).unwrap().value;
        assert!((lhs - rhs).abs() < 1e-10);
    }

    #[test]
    fn i1a_matches_direct_first_term() {
        let d1 = first_double_integral(p(0.5), p(0.3), TOL).unwrap().value;
        let rep = i1a_representation(p(0.5), p(0.3), TOL).unwrap().value;
        assert!((d1 - rep).abs() < 1e-10, "{d1} vs {rep}");
    }

    #[test]
    fn i1a_on_diagonal_is_half_kprime_squared() {
        let a = p(0.3);
        let k = elliptic::complete_kprime(a).unwrap();
        let rep = i1a_representation(a, a, TOL).unwrap().value;
        assert!((rep - 0.5 * k * k).abs() < 1e-10);
    }

    #[test]
    fn i1a_symmetric_sum() {
        let (a, b) = (p(0.4), p(0.6));
        let sum = i1a_representation(a, b, TOL).unwrap().value
            + i1a_representation(b, a, TOL).unwrap().value;
        let want = elliptic::complete_kprime(a).unwrap() * elliptic::complete_kprime(b).unwrap();
        assert!((sum - want).abs() < 1e-10);
    }

    #[test]
    fn i1b_agrees_with_i1a() {
        let lhs = i1b_representation(p(0.5), p(0.3), TOL).unwrap().value;
        let rhs = i1a_representation(p(0.5), p(0.3), TOL).unwrap().value;
        assert!((lhs - rhs).abs() < 1e-10);
        let a = p(0.25);
        let k = elliptic::complete_kprime(a).unwrap();
        assert!((i1b_representation(a, a, TOL).unwrap().value - 0.5 * k * k).abs() < 1e-10);
        assert!(i1b_representation(p(0.9), p(0.1), TOL).unwrap().value.is_finite());
        assert!(i1b_representation(p(0.0), p(0.1), TOL).is_err());
    }

    #[test]
    fn i2_matches_direct_second_term() {
        for (a, b, tol) in [(0.6, 0.2, 1e-10), (0.5, 0.49, 1e-9), (0.5, 1e-3, 1e-9)] {
            let pp = pair(a, b);
            let d2 = second_double_integral(pp, TOL).unwrap().value;
            let rep = i2_representation(pp, TOL).unwrap().value;
            assert!((d2 - rep).abs() < tol, "({a}, {b}): {d2} vs {rep}");
        }
        assert!(i2_representation(pair(0.5, 0.5), TOL).is_err());
        assert!(i2_representation(pair(0.5, 0.0), TOL).is_err());
    }

    #[test]
    fn i_representation_matches_direct() {
        for (a, b, tol) in [(0.7, 0.3, 1e-10), (0.51, 0.5, 1e-9)] {
            let pp = pair(a, b);
            let direct = i_direct(pp, TOL).unwrap().value;
            let rep = i_representation(pp, TOL).unwrap().value;
            assert!((direct - rep).abs() < tol, "({a}, {b}): {direct} vs {rep}");
        }
        let pp = pair(0.8, 0.5);
        let diff = i_representation(pp, TOL).unwrap().value
            - i_representation(pp.swap_complement(), TOL).unwrap().value;
        assert!(diff.abs() < 1e-10);
    }
}
