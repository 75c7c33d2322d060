//! Carlson symmetric integrals `R_F` and `R_D` by duplication.
//!
//! The stopping rule and the fifth-order Taylor tail follow Carlson's 1995
//! formulation: iterate until `4^-m * Q < |A_m|`, which bounds the relative
//! truncation error by roughly one unit roundoff.

use crate::math::sqrt;

fn max_dev(a0: f64, x: f64, y: f64, z: f64) -> f64 {
    (a0 - x).abs().max((a0 - y).abs()).max((a0 - z).abs())
}

/// `R_F(x, y, z) = 1/2 ∫_0^∞ dt / sqrt((t+x)(t+y)(t+z))`.
///
/// Arguments must be nonnegative with at most one zero; this is not checked.
pub(crate) fn rf(x0: f64, y0: f64, z0: f64) -> f64 {
    let a0 = (x0 + y0 + z0) / 3.0;
    // (3 eps)^(-1/6)
    let q = 340.0 * max_dev(a0, x0, y0, z0);
    let (mut x, mut y, mut z, mut a) = (x0, y0, z0, a0);
    let mut pow4 = 1.0;
    while pow4 * q >= a.abs() {
        let (sx, sy, sz) = (sqrt(x), sqrt(y), sqrt(z));
        let lam = sx * sy + sx * sz + sy * sz;
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
        a = 0.25 * (a + lam);
        pow4 *= 0.25;
    }
    let dx = (a0 - x0) * pow4 / a;
    let dy = (a0 - y0) * pow4 / a;
    let dz = -(dx + dy);
    let e2 = dx * dy - dz * dz;
    let e3 = dx * dy * dz;
    (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) / sqrt(a)
}

/// `R_D(x, y, z) = 3/2 ∫_0^∞ dt / ((t+z) sqrt((t+x)(t+y)(t+z)))`.
///
/// Requires `x, y >= 0` (at most one zero) and `z > 0`; not checked.
pub(crate) fn rd(x0: f64, y0: f64, z0: f64) -> f64 {
    let a0 = (x0 + y0 + 3.0 * z0) / 5.0;
    // (eps/4)^(-1/6)
    let q = 550.0 * max_dev(a0, x0, y0, z0);
    let (mut x, mut y, mut z, mut a) = (x0, y0, z0, a0);
    let mut pow4 = 1.0;
    let mut sum = 0.0;
    while pow4 * q >= a.abs() {
        let (sx, sy, sz) = (sqrt(x), sqrt(y), sqrt(z));
        let lam = sx * sy + sx * sz + sy * sz;
        sum += pow4 / (sz * (z + lam));
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
        a = 0.25 * (a + lam);
        pow4 *= 0.25;
    }
    let dx = (a0 - x0) * pow4 / a;
    let dy = (a0 - y0) * pow4 / a;
    let dz = -(dx + dy) / 3.0;
    let xy = dx * dy;
    let z2 = dz * dz;
    let e2 = xy - 6.0 * z2;
    let e3 = (3.0 * xy - 8.0 * z2) * dz;
    let e4 = 3.0 * (xy - z2) * z2;
    let e5 = xy * z2 * dz;
    let series = 1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0
        - 3.0 * e4 / 22.0
        - 9.0 * e2 * e3 / 52.0
        + 3.0 * e5 / 26.0;
    pow4 * series / (a * sqrt(a)) + 3.0 * sum
}
