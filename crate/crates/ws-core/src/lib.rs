//! Evaluation of Weber-Schafheitlin type Bessel integrals
//! `∫_0^∞ κ^ρ J_μ(xκ) J_ν(κ) dκ` and their K-, I- and Hankel-kernel
//! relatives, in closed form, for every parameter regime: ordinary
//! function values where the integral converges (`Re ρ < 1`) and
//! distributions on the half-line anchored at `x = 1` where it does not
//! (`Re ρ > 0`).
//!
//! The crate is organised as follows:
//!
//! * [`specfun`] — self-contained special functions: complex Gamma,
//!   digamma, Bessel J/I/K and Hankel functions, and a Gauss
//!   hypergeometric engine covering the cut plane, including the
//!   regularized variant and the integer-parameter log-case series.
//! * [`distr`] — distributions on `(0, ∞)` as finite sums of
//!   coefficient-times-singular-basis terms, paired against smooth
//!   compactly supported test functions.
//! * [`wsint`] — the closed-form evaluators for the four integral
//!   families (J·J, H±·J, K·J, K·I).
//! * [`oracle`] — independent brute-force quadrature used as ground
//!   truth in tests.
//! * [`abkernel`] — integral kernels of spectral projections, fractional
//!   powers and wave-operator compositions of the half-line operator
//!   `H_μ = -∂² + (μ²-1/4)/x²`.
//!
//! The core is `no_std` (with `alloc`); all IO lives in the companion
//! CLI crate.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod abkernel;
pub mod cjson;
pub mod config;
pub mod distr;
pub mod error;
pub mod oracle;
pub mod quad;
pub mod specfun;
pub mod taylor;
pub mod wsint;

pub use config::EvalConfig;
pub use error::{Error, Result};

/// Complex double-precision scalar used throughout.
pub type Complex = num_complex::Complex<f64>;

/// Shorthand constructor.
#[inline]
pub fn c64(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}
