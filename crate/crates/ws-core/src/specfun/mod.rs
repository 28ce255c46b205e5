//! Special functions backing the closed-form evaluators: complex Gamma
//! and digamma, Bessel J/I/K and Hankel functions, and the Gauss
//! hypergeometric engine with its regularized and boundary variants.

mod bessel;
mod gamma;
mod hyp2f1;

pub use bessel::{bessel_i, bessel_j, bessel_j_real, bessel_k, hankel};
pub use gamma::{cos_pi, digamma, gamma, ln_gamma_real, pochhammer, rgamma, sin_pi};
pub use hyp2f1::{
    hyp2f1, hyp2f1_boundary, hyp2f1_regularized, hyp2f1_regularized_boundary,
    hyp2f1_regularized_derivs, s_series, t_series, SeriesResult,
};

/// Which side of the real axis a boundary value is taken from.
///
/// The tag follows the `x ± i0` convention of the base variable: `Plus`
/// is the limit from `Im x > 0`. A hypergeometric factor evaluated at
/// the argument `x^{-2}` therefore approaches its branch cut `[1, ∞)`
/// from the *lower* half-plane when the side is `Plus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    /// +1 for `Plus`, -1 for `Minus`.
    pub fn sign(self) -> f64 {
        match self {
            Side::Plus => 1.0,
            Side::Minus => -1.0,
        }
    }

    pub fn flipped(self) -> Side {
        match self {
            Side::Plus => Side::Minus,
            Side::Minus => Side::Plus,
        }
    }
}
