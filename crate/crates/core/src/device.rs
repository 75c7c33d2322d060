//! Hall geometry factors and signal-to-noise ratios of 3- and 4-contact
//! devices.
//!
//! Argument conventions differ between the formulas, so each function states
//! the parameter it hands to the elliptic layer:
//!
//! * 4-contact quantities take moduli `p`, `f`; `K(k)` there means
//!   `complete_k(k^2)` and `K'(k)` means `complete_kprime(k^2)`.
//! * 3-contact quantities take the parameters `alpha`, `beta` directly, so
//!   `K(sqrt(alpha))` is `complete_k(alpha)`.
//!
//! SNR values are only defined up to a constant factor. [`SnrModel`] carries
//! that factor (1 by default); the free functions use the default model.

use crate::elliptic::{complete_k, complete_kprime, incomplete_f_unchecked, invert_ratio, Parameter};
use crate::error::{Error, Result};
use crate::integrals::{i_direct, ParamPair};
use crate::math::{cos, hypot, sin, sqrt, FRAC_PI_2};
use crate::quadrature::{integrate, EndpointBehavior, QuadOptions, QuadResult};

/// Equivalent-resistor-circuit resistances of a 3-contact device, in ohms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Resistances3C {
    pub r_e: f64,
    pub r_d: f64,
    pub r_sh: f64,
}

impl Resistances3C {
    pub fn new(r_e: f64, r_d: f64, r_sh: f64) -> Result<Self> {
        let r = Resistances3C { r_e, r_d, r_sh };
        r.validate()?;
        Ok(r)
    }

    fn validate(&self) -> Result<()> {
        for (name, value) in [("r_e", self.r_e), ("r_d", self.r_d), ("r_sh", self.r_sh)] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::domain(name, value, "finite resistance > 0"));
            }
        }
        Ok(())
    }

    /// `K'/K` target for `alpha`: `R_e R_d / ((R_e + 2 R_d) R_sh)`.
    pub fn alpha_ratio(&self) -> f64 {
        self.r_e * self.r_d / ((self.r_e + 2.0 * self.r_d) * self.r_sh)
    }

    /// `K'/K` target for `beta`: `R_d / R_sh`.
    pub fn beta_ratio(&self) -> f64 {
        self.r_d / self.r_sh
    }
}

/// Geometry factor and (scaled) SNR of one device.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeviceMetrics {
    pub geometry_factor: QuadResult,
    pub snr_proportional: QuadResult,
}

/// Proportionality constant of the SNR formulas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnrModel {
    pub constant: f64,
}

impl Default for SnrModel {
    fn default() -> Self {
        SnrModel { constant: 1.0 }
    }
}

fn open_unit(name: &'static str, x: f64) -> Result<()> {
    if x > 0.0 && x < 1.0 {
        Ok(())
    } else {
        Err(Error::domain(name, x, "0 < value < 1"))
    }
}

fn interior_pair(pair: ParamPair) -> Result<()> {
    open_unit("alpha", pair.alpha().value())?;
    open_unit("beta", pair.beta().value())
}

/// `(1 - x) / (1 + x)` as an elliptic parameter (its square), with the
/// complement `4x / (1 + x)^2` computed without cancellation.
fn mobius_parameter(x: f64) -> Result<Parameter> {
    Parameter::from_modulus((1.0 - x) / (1.0 + x))
}

/// 4-contact Hall geometry factor `G_H0` for moduli `p, f` in `(0, 1)`.
///
/// With `k_p = (1-p)/(1+p)`, `k_f = (1-f)/(1+f)` the outer integral over
/// `x` in `[0, 1]` is taken through `x = sin φ`, which turns the inner
/// integral into `F(φ | k_p^2)` and absorbs the `1/sqrt(1 - x^2)` endpoint:
///
/// ```text
/// G = ∫_0^{pi/2} F(φ | k_p^2) / sqrt(sin²φ + k_f² cos²φ) dφ / (K'(k_p) K(k_f))
/// ```
///
/// As `p -> 1` the normalisation `K'(k_p)` diverges and the divergence is
/// reported as an error.
pub fn g_h0_4c(p: f64, f: f64, opts: impl Into<QuadOptions>) -> Result<QuadResult> {
    open_unit("p", p)?;
    open_unit("f", f)?;
    let (lp, lf) = (mobius_parameter(p)?, mobius_parameter(f)?);
    let norm = complete_kprime(lp)? * complete_k(lf)?;
    let kf = lf.modulus();
    let integral = integrate(
        |phi: f64| incomplete_f_unchecked(phi, lp) / hypot(sin(phi), kf * cos(phi)),
        0.0,
        FRAC_PI_2,
        EndpointBehavior::REGULAR,
        opts.into().scaled(norm),
    )?;
    Ok(integral * (1.0 / norm))
}

/// 3-contact Hall geometry factor `2 I(α, β) / (K(√α) K(√β))`.
pub fn g_h0_3c(pair: ParamPair, opts: impl Into<QuadOptions>) -> Result<QuadResult> {
    interior_pair(pair)?;
    let norm = complete_k(pair.alpha())? * complete_k(pair.beta())?;
    Ok(i_direct(pair, opts.into().scaled(0.5 * norm))? * (2.0 / norm))
}

impl SnrModel {
    /// `c · I(α, β) / sqrt(K(√α) K'(√α) K(√β) K'(√β))`.
    pub fn snr_3c(&self, pair: ParamPair, opts: impl Into<QuadOptions>) -> Result<QuadResult> {
        interior_pair(pair)?;
        let (a, b) = (pair.alpha(), pair.beta());
        let norm = sqrt(complete_k(a)? * complete_kprime(a)? * complete_k(b)? * complete_kprime(b)?);
        let scale = self.constant / norm;
        Ok(i_direct(pair, opts.into().scaled(1.0 / scale.abs().max(f64::MIN_POSITIVE)))? * scale)
    }

    /// `c · G_H0(p, f) sqrt(K'(f) K(p)) / sqrt(K(f) K'(p))` with moduli `p, f`.
    pub fn snr_4c(&self, p: f64, f: f64, opts: impl Into<QuadOptions>) -> Result<QuadResult> {
        open_unit("p", p)?;
        open_unit("f", f)?;
        let (lp, lf) = (Parameter::from_modulus(p)?, Parameter::from_modulus(f)?);
        let factor = sqrt(complete_kprime(lf)? * complete_k(lp)? / (complete_k(lf)? * complete_kprime(lp)?));
        let scale = self.constant * factor;
        Ok(g_h0_4c(p, f, opts.into().scaled(1.0 / scale.abs().max(f64::MIN_POSITIVE)))? * scale)
    }

    /// Geometry factor and SNR of a 3-contact device.
    pub fn metrics_3c(&self, pair: ParamPair, opts: impl Into<QuadOptions>) -> Result<DeviceMetrics> {
        let opts = opts.into();
        Ok(DeviceMetrics {
            geometry_factor: g_h0_3c(pair, opts)?,
            snr_proportional: self.snr_3c(pair, opts)?,
        })
    }

    /// Geometry factor and SNR of a 4-contact device.
    pub fn metrics_4c(&self, p: f64, f: f64, opts: impl Into<QuadOptions>) -> Result<DeviceMetrics> {
        let opts = opts.into();
        Ok(DeviceMetrics {
            geometry_factor: g_h0_4c(p, f, opts)?,
            snr_proportional: self.snr_4c(p, f, opts)?,
        })
    }
}

/// [`SnrModel::snr_3c`] with unit constant.
pub fn snr_3c(pair: ParamPair, opts: impl Into<QuadOptions>) -> Result<QuadResult> {
    SnrModel::default().snr_3c(pair, opts)
}

/// [`SnrModel::snr_4c`] with unit constant.
pub fn snr_4c(p: f64, f: f64, opts: impl Into<QuadOptions>) -> Result<QuadResult> {
    SnrModel::default().snr_4c(p, f, opts)
}

/// `(α, β)` from the resistances by inverting the two `K'/K` ratios.
///
/// `R_e R_d / ((R_e + 2 R_d) R_sh) < R_d / R_sh` and `K'/K` is decreasing,
/// so the result always satisfies `β < α`.
pub fn params_from_resistances(r: Resistances3C) -> Result<ParamPair> {
    r.validate()?;
    let alpha = invert_ratio(r.alpha_ratio())?;
    let beta = invert_ratio(r.beta_ratio())?;
    ParamPair::from_parameters(alpha, beta)
}

/// Resistances with sheet resistance `r_sh` that reproduce `pair`; needs
/// `0 < β < α < 1`.
pub fn resistances_from_params(pair: ParamPair, r_sh: f64) -> Result<Resistances3C> {
    interior_pair(pair)?;
    if !(r_sh.is_finite() && r_sh > 0.0) {
        return Err(Error::domain("r_sh", r_sh, "finite resistance > 0"));
    }
    let ratio = |p: Parameter| complete_kprime(p).and_then(|kp| Ok(kp / complete_k(p)?));
    let (ra, rb) = (ratio(pair.alpha())?, ratio(pair.beta())?);
    if !(ra < rb) {
        return Err(Error::domain("beta", pair.beta().value(), "beta < alpha"));
    }
    let r_d = rb * r_sh;
    // R_e R_d = ra R_sh (R_e + 2 R_d)
    let r_e = 2.0 * ra * r_sh * r_d / (r_d - ra * r_sh);
    Resistances3C::new(r_e, r_d, r_sh)
}

/// The complementary device `(1 - β, 1 - α)`.
pub fn complement_device(pair: ParamPair) -> ParamPair {
    pair.swap_complement()
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-12;

    fn pair(a: f64, b: f64) -> ParamPair {
        ParamPair::new(a, b).unwrap()
    }

    #[test]
    fn g4c_matches_mpmath() {
        // nested mpmath quadrature of the x-form, 25 digits
        for (p, f, want) in [
            (0.5, 0.5, 0.387_495_164_048_765_847_6),
            (0.3, 0.6, 0.505_558_891_763_288_631_8),
        ] {
            let got = g_h0_4c(p, f, TOL).unwrap().value;
            assert!((got - want).abs() < 1e-11, "({p}, {f}): {got}");
        }
    }

    #[test]
    fn g4c_is_self_consistent_and_bounded() {
        let coarse = g_h0_4c(0.5, 0.5, 1e-9).unwrap().value;
        let fine = g_h0_4c(0.5, 0.5, 1e-10).unwrap().value;
        assert!((coarse - fine).abs() < 1e-9);
        assert!(coarse > 0.0 && coarse < 1.0);
    }

    #[test]
    fn g4c_domain_and_divergence() {
        assert!(matches!(g_h0_4c(1.0, 0.5, TOL), Err(Error::Domain { .. })));
        assert!(matches!(g_h0_4c(0.5, 0.0, TOL), Err(Error::Domain { .. })));
        assert!(matches!(g_h0_4c(1.0 - 1e-7, 0.5, TOL), Err(Error::Divergence { .. })));
    }

    #[test]
    fn g3c_definition_and_diagonal() {
        let pp = pair(0.7, 0.2);
        let g = g_h0_3c(pp, TOL).unwrap().value;
        let i = i_direct(pp, TOL).unwrap().value;
        let k = complete_k(pp.alpha()).unwrap() * complete_k(pp.beta()).unwrap();
        assert!((g - 2.0 * i / k).abs() < 1e-9);
        assert!(g_h0_3c(pair(0.4, 0.4), TOL).unwrap().value.abs() < 1e-12);
        assert!(g_h0_3c(pair(1.0, 0.2), TOL).is_err());
    }

    #[test]
    fn snr3c_complement_invariance() {
        let pp = pair(0.7, 0.2);
        let lhs = snr_3c(pp, TOL).unwrap().value;
        let rhs = snr_3c(complement_device(pp), TOL).unwrap().value;
        assert!((lhs - rhs).abs() < 1e-10, "{lhs} vs {rhs}");
        assert!(snr_3c(pair(0.3, 0.3), TOL).unwrap().value.abs() < 1e-12);
    }

    #[test]
    fn snr4c_from_parts_and_scaling() {
        let base = snr_4c(0.5, 0.5, TOL).unwrap().value;
        // K(f)=K(p) and K'(f)=K'(p) at p = f, so the factor is 1.
        assert!((base - 0.387_495_164_048_765_847_6).abs() < 1e-11);
        let doubled = SnrModel { constant: 2.0 }.snr_4c(0.5, 0.5, TOL).unwrap().value;
        assert!((doubled - 2.0 * base).abs() < 1e-12);
        let (p, f) = (0.3, 0.6);
        let parts = g_h0_4c(p, f, TOL).unwrap().value
            * sqrt(
                complete_kprime(Parameter::new(f * f).unwrap()).unwrap()
                    * complete_k(Parameter::new(p * p).unwrap()).unwrap()
                    / (complete_k(Parameter::new(f * f).unwrap()).unwrap()
                        * complete_kprime(Parameter::new(p * p).unwrap()).unwrap()),
            );
        assert!((snr_4c(p, f, TOL).unwrap().value - parts).abs() < 1e-10);
    }

    #[test]
    fn resistances_self_complementary_point() {
        let pp = params_from_resistances(Resistances3C::new(2.0, 1.0, 1.0).unwrap()).unwrap();
        assert!((pp.beta().value() - 0.5).abs() < 1e-14);
        let alpha = invert_ratio(0.5).unwrap();
        assert!((pp.alpha().value() - alpha.value()).abs() < 1e-15);
    }

    #[test]
    fn resistances_round_trip() {
        let pp = pair(0.6, 0.4);
        let r = resistances_from_params(pp, 1.0).unwrap();
        let back = params_from_resistances(r).unwrap();
        assert!((back.alpha().value() - 0.6).abs() < 1e-9);
        assert!((back.beta().value() - 0.4).abs() < 1e-9);
    }

    #[test]
    fn large_edge_resistance_merges_parameters() {
        let pp = params_from_resistances(Resistances3C::new(1e12, 1.0, 1.3).unwrap()).unwrap();
        assert!((pp.alpha().value() - pp.beta().value()).abs() < 1e-9);
    }

    #[test]
    fn resistances_validation() {
        assert!(Resistances3C::new(0.0, 1.0, 1.0).is_err());
        assert!(Resistances3C::new(1.0, f64::INFINITY, 1.0).is_err());
        assert!(Resistances3C::new(1.0, 1.0, -2.0).is_err());
    }

    #[test]
    fn complement_is_involution() {
        let pp = pair(0.7, 0.2);
        let c = complement_device(pp);
        assert!((c.alpha().value() - 0.8).abs() < 1e-15 && (c.beta().value() - 0.3).abs() < 1e-15);
        assert_eq!(complement_device(c), pp);
        let d = complement_device(pair(0.35, 0.35));
        assert!((d.alpha().value() - 0.65).abs() < 1e-15 && d.alpha() == d.beta());
    }
}
