//! Numerical core for the iterated elliptic integrals that show up in Hall
//! effect device theory.
//!
//! The crate is `no_std` (it needs `alloc` for the adaptive quadrature work
//! queue) and is organised bottom-up:
//!
//! * [`elliptic`]: AGM, complete/incomplete elliptic integrals, nome and
//!   inversion of the `K'/K` period ratio.
//! * [`quadrature`]: adaptive Gauss–Legendre with tanh-sinh endpoint panels
//!   and Cauchy principal values.
//! * [`integrals`]: the double integrals `A(p, q)` and `I(alpha, beta)`, each
//!   by a direct route and by single-integral `K`-kernel representations.
//! * [`identities`]: residual reports for the reciprocity, vanishing,
//!   Wronskian and inhomogeneous-operator identities.
//! * [`device`]: Hall geometry factors and SNR for 3- and 4-contact devices.
//!
//! Parameter convention: every public function takes the elliptic
//! *parameter* `lambda = k^2`, wrapped in [`Parameter`]. Physics formulas
//! written as `K(sqrt(lambda))` therefore map to `complete_k(lambda)`.

#![no_std]
// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![cfg_attr(test, allow(clippy::excessive_precision, clippy::type_complexity))]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod device;
pub mod elliptic;
mod error;
pub mod identities;
pub mod integrals;
mod math;
pub mod quadrature;

pub use elliptic::{EllipticPair, Parameter};
pub use error::{Error, Result};
pub use identities::IdentityReport;
pub use integrals::{ModulusPair, ParamPair};
pub use quadrature::{EndpointBehavior, QuadOptions, QuadResult, Singularity};
