//! Complete and incomplete elliptic integrals in the parameter convention.
//!
//! Formulas in the Hall-device literature are written as `K(sqrt(lambda))`,
//! i.e. with the *modulus* `k = sqrt(lambda)` as argument. Everything here
//! takes the *parameter* `lambda = k^2` instead, wrapped in [`Parameter`], so
//!
//! ```text
//! K(sqrt(lambda))      == complete_k(lambda)
//! K(sqrt(1 - lambda))  == complete_kprime(lambda)
//! ```
//!
//! `K` is evaluated with the arithmetic–geometric mean,
//! `K(lambda) = pi / (2 agm(1, sqrt(1 - lambda)))`; `F` and `E` go through
//! Carlson's `R_F` / `R_D`.

mod carlson;
mod theta;

use crate::error::{Error, Result};
use crate::math::{cos, exp, sin, sqrt, FRAC_PI_2, PI};

/// Parameters closer than this to the logarithmic singularity of `K` are
/// reported as [`Error::Divergence`] instead of returning a large float.
pub const DIVERGENCE_THRESHOLD: f64 = 1e-12;

/// Elliptic parameter `lambda = k^2` in `[0, 1]`.
///
/// The complementary parameter `1 - lambda` is stored alongside the value so
/// that [`Parameter::complement`] is an exact involution and parameters very
/// close to 1 keep their full relative precision on the complementary side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Parameter {
    value: f64,
    co: f64,
}

impl Parameter {
    pub const ZERO: Parameter = Parameter { value: 0.0, co: 1.0 };
    pub const HALF: Parameter = Parameter { value: 0.5, co: 0.5 };
    pub const ONE: Parameter = Parameter { value: 1.0, co: 0.0 };

    pub fn new(lambda: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::domain("lambda", lambda, "0 <= lambda <= 1"));
        }
        Ok(Parameter {
            value: lambda,
            co: 1.0 - lambda,
        })
    }

    /// Parameter whose complement `1 - lambda` is `co`.
    pub fn from_complement(co: f64) -> Result<Self> {
        Ok(Self::new(co)?.complement())
    }

    /// Parameter of modulus `k`, i.e. `lambda = k^2`.
    pub fn from_modulus(k: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&k) {
            return Err(Error::domain("modulus", k, "0 <= k <= 1"));
        }
        Ok(Parameter {
            value: k * k,
            co: (1.0 - k) * (1.0 + k),
        })
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.value
    }

    /// `1 - lambda`, as stored.
    #[inline]
    pub fn complement_value(self) -> f64 {
        self.co
    }

    #[inline]
    pub fn complement(self) -> Self {
        Parameter {
            value: self.co,
            co: self.value,
        }
    }

    /// The modulus `k = sqrt(lambda)`.
    pub fn modulus(self) -> f64 {
        sqrt(self.value)
    }

    pub(crate) fn is_interior(self) -> bool {
        self.value > 0.0 && self.co > 0.0
    }
}

/// `K(sqrt(lambda))` together with `K(sqrt(1 - lambda))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticPair {
    pub k_value: f64,
    pub kprime_value: f64,
}

impl EllipticPair {
    /// The period ratio `K'/K`.
    pub fn ratio(&self) -> f64 {
        self.kprime_value / self.k_value
    }
}

pub(crate) fn agm_unchecked(mut a: f64, mut b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    for _ in 0..64 {
        if (a - b).abs() <= 2.0 * f64::EPSILON * a.max(b) {
            break;
        }
        let mean = 0.5 * (a + b);
        b = sqrt(a) * sqrt(b);
        a = mean;
    }
    0.5 * (a + b)
}

/// Arithmetic–geometric mean of `a > 0` and `b >= 0`.
pub fn agm(a: f64, b: f64) -> Result<f64> {
    if !a.is_finite() || a <= 0.0 {
        return Err(Error::domain("a", a, "finite a > 0"));
    }
    if !b.is_finite() || b < 0.0 {
        return Err(Error::domain("b", b, "finite b >= 0"));
    }
    Ok(agm_unchecked(a, b))
}

/// `K` for the parameter whose complement is `co`: `pi / (2 agm(1, sqrt(co)))`.
///
/// No range checks; `co == 0` yields `+inf`.
#[inline]
pub(crate) fn k_from_complement(co: f64) -> f64 {
    FRAC_PI_2 / agm_unchecked(1.0, sqrt(co))
}

/// `K(sqrt(t))` for a kernel abscissa `t` in `[0, 1)`.
#[inline]
pub(crate) fn k_of(t: f64) -> f64 {
    k_from_complement(1.0 - t)
}

/// `K(sqrt(1 - t))` for a kernel abscissa `t` in `(0, 1]`.
#[inline]
pub(crate) fn kprime_of(t: f64) -> f64 {
    k_from_complement(t)
}

/// Complete elliptic integral of the first kind, `K(sqrt(lambda))`, for
/// `0 <= lambda < 1`.
pub fn complete_k(param: Parameter) -> Result<f64> {
    if param.co < DIVERGENCE_THRESHOLD {
        return Err(Error::Divergence {
            name: "lambda",
            value: param.value,
        });
    }
    Ok(k_from_complement(param.co))
}

/// Complementary integral `K'(sqrt(lambda)) = K(sqrt(1 - lambda))` for
/// `0 < lambda <= 1`.
pub fn complete_kprime(param: Parameter) -> Result<f64> {
    complete_k(param.complement())
}

pub fn elliptic_pair(param: Parameter) -> Result<EllipticPair> {
    Ok(EllipticPair {
        k_value: complete_k(param)?,
        kprime_value: complete_kprime(param)?,
    })
}

/// Complete elliptic integral of the second kind for `0 <= lambda <= 1`.
pub fn complete_e(param: Parameter) -> Result<f64> {
    if param.co == 0.0 {
        return Ok(1.0);
    }
    Ok(carlson::rf(0.0, param.co, 1.0) - param.value / 3.0 * carlson::rd(0.0, param.co, 1.0))
}

/// `F(phi | lambda)` without range checks. `phi` in `[0, pi/2]`.
pub(crate) fn incomplete_f_unchecked(phi: f64, param: Parameter) -> f64 {
    let (s, c) = (sin(phi), cos(phi));
    let c2 = c * c;
    // 1 - lambda sin^2 = (1 - lambda) + lambda cos^2
    s * carlson::rf(c2, param.co + param.value * c2, 1.0)
}

/// Incomplete integral of the first kind
/// `F(phi | lambda) = ∫_0^phi dt / sqrt(1 - lambda sin^2 t)`, `phi` in `[0, pi/2]`.
pub fn incomplete_f(phi: f64, param: Parameter) -> Result<f64> {
    if !(0.0..=FRAC_PI_2).contains(&phi) {
        return Err(Error::domain("phi", phi, "0 <= phi <= pi/2"));
    }
    if phi == FRAC_PI_2 {
        return complete_k(param);
    }
    if phi == 0.0 {
        return Ok(0.0);
    }
    Ok(incomplete_f_unchecked(phi, param))
}

/// `dK(sqrt(lambda))/dlambda` for `0 < lambda < 1`.
pub fn dk_dparam(param: Parameter) -> Result<f64> {
    if !param.is_interior() {
        return Err(Error::domain("lambda", param.value, "0 < lambda < 1"));
    }
    if param.value < 0.1 {
        // Hypergeometric series: K = pi/2 * sum c_n lambda^n, c_n = ((1/2)_n / n!)^2.
        let mut c = 0.25;
        let mut pow = 1.0;
        let mut sum = 0.0;
        for n in 1..200 {
            let term = f64::from(n) * c * pow;
            sum += term;
            if term < 1e-17 * sum {
                break;
            }
            let ratio = (f64::from(n) + 0.5) / (f64::from(n) + 1.0);
            c *= ratio * ratio;
            pow *= param.value;
        }
        return Ok(FRAC_PI_2 * sum);
    }
    let k = complete_k(param)?;
    let e = complete_e(param)?;
    Ok((e - param.co * k) / (2.0 * param.value * param.co))
}

/// Period ratio `K'(sqrt(lambda)) / K(sqrt(lambda))` for `0 < lambda < 1`.
pub fn period_ratio(param: Parameter) -> Result<f64> {
    if !param.is_interior() {
        return Err(Error::domain("lambda", param.value, "0 < lambda < 1"));
    }
    Ok(agm_unchecked(1.0, sqrt(param.co)) / agm_unchecked(1.0, sqrt(param.value)))
}

/// Nome `q = exp(-pi K'/K)` for `0 < lambda < 1`.
pub fn nome(param: Parameter) -> Result<f64> {
    Ok(exp(-PI * period_ratio(param)?))
}

/// One Newton step on `K'/K(mu) = ratio`, using the Wronskian
/// `d(K'/K)/dmu = -pi / (4 mu (1 - mu) K^2)`.
fn polish(mu: f64, ratio: f64) -> f64 {
    if mu <= 0.0 || mu >= 1.0 {
        return mu;
    }
    let co = 1.0 - mu;
    let a_co = agm_unchecked(1.0, sqrt(co));
    let current = a_co / agm_unchecked(1.0, sqrt(mu));
    let k = FRAC_PI_2 / a_co;
    let next = mu + (current - ratio) * 4.0 * mu * co * k * k / PI;
    if next > 0.0 && next < 1.0 {
        next
    } else {
        mu
    }
}

/// Parameter `lambda` with `K'(sqrt(lambda)) / K(sqrt(lambda)) = r`.
///
/// The ratio is strictly decreasing in `lambda`, so the answer is unique.
/// Uses the nome `q = exp(-pi r)` and `lambda = (theta_2/theta_3)^4`; for
/// `r < 1` the complementary problem `1/r` is solved instead, which keeps
/// `q <= exp(-pi)` and returns a parameter whose complement is exact.
pub fn invert_ratio(r: f64) -> Result<Parameter> {
    if !r.is_finite() || r <= 0.0 {
        return Err(Error::domain("ratio", r, "finite r > 0"));
    }
    let (target, flipped) = if r >= 1.0 { (r, false) } else { (1.0 / r, true) };
    let mu = polish(theta::parameter_from_nome(exp(-PI * target)), target);
    if flipped {
        Parameter::from_complement(mu)
    } else {
        Parameter::new(mu)
    }
}
