//! Distributions on the half-line `(0, ∞)` anchored at `x = 1`.
//!
//! A [`GeneralizedFunction`] is a finite sum of terms, each the product
//! of a smooth coefficient and a singular basis element. The pairing
//! engine implements every regularized integral of the basis:
//! integration by parts for non-integer powers, the log-regularized
//! finite parts with their harmonic-number corrections for integer
//! powers, subtract-the-value regularization for the principal value,
//! and exact point evaluations for delta derivatives.

use alloc::sync::Arc;
use alloc::vec::Vec;
use alloc::{format, vec};

use crate::quad::{integrate, integrate_singular};
use crate::specfun::Side;
use crate::taylor::Jet;
use crate::{c64, Complex, Error, Result};

const PI: f64 = core::f64::consts::PI;
/// Distance below which a power exponent snaps to an integer and the
/// log-regularized pairing is used.
const INT_SNAP: f64 = 1e-12;
/// Default cap on adaptive panels per pairing integral.
const MAX_PANELS: usize = 4000;

/// Singular basis elements, all anchored at `x = 1`.
///
/// `PowMinus(λ)` and `PowPlus(λ)` are `(x−1)^λ_∓` — supported on `x<1`
/// resp. `x>1`. For non-integer `λ` (any `Re λ`) they are defined by
/// analytic continuation (integration by parts); when `λ` is an integer
/// `≤ −1` they carry the log-regularized finite-part pairing with its
/// harmonic-number correction. `BoundaryPower(λ, ±)` is `(x−1±i0)^λ`,
/// expanded on demand via [`remark1_expand`].
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub enum SingularBasis {
    Regular,
    PowMinus(#[serde(with = "crate::cjson")] Complex),
    PowPlus(#[serde(with = "crate::cjson")] Complex),
    BoundaryPower(#[serde(with = "crate::cjson")] Complex, Side),
    DeltaDeriv(usize),
    PrincipalValue,
    LogAbs,
    HeavisideStep,
}

/// Smooth coefficient evaluable together with its derivatives.
pub trait SmoothCoeff: Send + Sync {
    /// Derivatives `[f, f', …, f^(order)]` at `x > 0`.
    fn derivs(&self, x: f64, order: usize) -> Result<Vec<Complex>>;
}

/// Constant coefficient.
#[derive(Debug, Clone, Copy)]
pub struct ConstCoeff(pub Complex);

impl SmoothCoeff for ConstCoeff {
    fn derivs(&self, _x: f64, order: usize) -> Result<Vec<Complex>> {
        let mut v = vec![c64(0.0, 0.0); order + 1];
        v[0] = self.0;
        Ok(v)
    }
}

/// Coefficient scaled by a constant.
pub struct ScaledCoeff {
    pub scale: Complex,
    pub inner: Arc<dyn SmoothCoeff>,
}

impl SmoothCoeff for ScaledCoeff {
    fn derivs(&self, x: f64, order: usize) -> Result<Vec<Complex>> {
        let mut v = self.inner.derivs(x, order)?;
        for c in &mut v {
            *c *= self.scale;
        }
        Ok(v)
    }
}

/// `k`-th derivative of another coefficient.
pub struct DiffCoeff {
    pub order: usize,
    pub inner: Arc<dyn SmoothCoeff>,
}

impl SmoothCoeff for DiffCoeff {
    fn derivs(&self, x: f64, order: usize) -> Result<Vec<Complex>> {
        let v = self.inner.derivs(x, order + self.order)?;
        Ok(v[self.order..].to_vec())
    }
}

/// One summand: smooth coefficient times singular basis element.
#[derive(Clone)]
pub struct Term {
    pub coeff: Arc<dyn SmoothCoeff>,
    pub basis: SingularBasis,
}

impl Term {
    pub fn new(coeff: Arc<dyn SmoothCoeff>, basis: SingularBasis) -> Term {
        Term { coeff, basis }
    }

    pub fn constant(value: Complex, basis: SingularBasis) -> Term {
        Term::new(Arc::new(ConstCoeff(value)), basis)
    }
}

/// A distribution on `(0, ∞)`: finite sum of [`Term`]s. The empty sum
/// is the zero distribution.
#[derive(Clone, Default)]
pub struct GeneralizedFunction {
    pub terms: Vec<Term>,
}

impl GeneralizedFunction {
    pub fn zero() -> GeneralizedFunction {
        GeneralizedFunction { terms: Vec::new() }
    }

    pub fn from_terms(terms: Vec<Term>) -> GeneralizedFunction {
        GeneralizedFunction { terms }
    }
}

/// Smooth compactly supported bump
/// `φ(x) = exp(−1/(1−t²))`, `t = (x−center)/width`, zero for `|t| ≥ 1`,
/// or one of its derivatives (`diff_order > 0`).
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct TestFunction {
    pub center: f64,
    pub width: f64,
    pub max_deriv_order: usize,
    #[serde(default)]
    pub diff_order: usize,
}

impl TestFunction {
    /// New bump; requires `center > width > 0` so that the support
    /// stays inside `(0, ∞)`.
    pub fn bump(center: f64, width: f64, max_deriv_order: usize) -> Result<TestFunction> {
        if !(width > 0.0 && center > width) {
            return Err(Error::Domain(format!(
                "bump requires center > width > 0, got center {center}, width {width}"
            )));
        }
        Ok(TestFunction {
            center,
            width,
            max_deriv_order,
            diff_order: 0,
        })
    }

    /// Support interval `(center − width, center + width)`.
    pub fn support(&self) -> (f64, f64) {
        (self.center - self.width, self.center + self.width)
    }

    /// The distributional test object `φ^(diff_order + 1)`.
    pub fn differentiated(&self) -> TestFunction {
        TestFunction {
            diff_order: self.diff_order + 1,
            ..*self
        }
    }

    /// Derivatives `[φ, φ', …, φ^(order)]` at `x` (of the already
    /// `diff_order`-times differentiated bump).
    pub fn derivs(&self, x: f64, order: usize) -> Result<Vec<f64>> {
        let total = order + self.diff_order;
        if total > self.max_deriv_order {
            return Err(Error::InsufficientDerivOrder {
                required: total,
                available: self.max_deriv_order,
            });
        }
        let t = (x - self.center) / self.width;
        if t.abs() >= 1.0 {
            return Ok(vec![0.0; order + 1]);
        }
        // jet of exp(-1/(1-t^2)) in x
        let tj = Jet::variable(x, total)
            .sub(&Jet::constant(c64(self.center, 0.0), total))
            .scale(c64(1.0 / self.width, 0.0));
        let one = Jet::constant(c64(1.0, 0.0), total);
        let inner = one.sub(&tj.mul(&tj));
        let phi = inner.recip().scale(c64(-1.0, 0.0)).exp();
        let d = phi.derivatives();
        Ok(d[self.diff_order..].iter().map(|c| c.re).collect())
    }

    /// Bump value at `x`.
    pub fn value(&self, x: f64) -> f64 {
        self.derivs(x, 0).map(|v| v[0]).unwrap_or(0.0)
    }
}

fn harmonic(n: usize) -> f64 {
    (1..=n).map(|j| 1.0 / j as f64).sum()
}

fn factorial(n: usize) -> f64 {
    let mut f = 1.0;
    for i in 2..=n {
        f *= i as f64;
    }
    f
}

/// Derivatives `[g, g', …, g^(order)]` of `g = coeff·φ` at `x` by the
/// Leibniz rule.
fn product_derivs(
    coeff: &dyn SmoothCoeff,
    phi: &TestFunction,
    x: f64,
    order: usize,
) -> Result<Vec<Complex>> {
    let cd = coeff.derivs(x, order)?;
    let pd = phi.derivs(x, order)?;
    let mut out = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let mut binom = 1.0;
        let mut s = c64(0.0, 0.0);
        for j in 0..=n {
            if j > 0 {
                binom *= (n - j + 1) as f64 / j as f64;
            }
            s += binom * cd[j] * pd[n - j];
        }
        out.push(s);
    }
    Ok(out)
}

/// Expansion of `(x−1±i0)^λ` into the real basis:
/// non-integer `λ` gives `e^{±iλπ}(x−1)^λ_− + (x−1)^λ_+`; at `λ = −k`
/// the limit of that family is
/// `(−1)^k (x−1)^{−k}_− + (x−1)^{−k}_+ ± (−1)^k iπ δ^{(k−1)}(x−1)/(k−1)!`
/// with the log-regularized integer parts.
pub fn remark1_expand(lambda: Complex, side: Side) -> GeneralizedFunction {
    let (n, d) = {
        let r = libm::round(lambda.re);
        (r as i64, libm::hypot(lambda.re - r, lambda.im))
    };
    if d < INT_SNAP && n <= -1 {
        let k = (-n) as usize;
        let ksign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let lam = c64(n as f64, 0.0);
        return GeneralizedFunction::from_terms(vec![
            Term::constant(c64(ksign, 0.0), SingularBasis::PowMinus(lam)),
            Term::constant(c64(1.0, 0.0), SingularBasis::PowPlus(lam)),
            Term::constant(
                c64(0.0, side.sign() * ksign * PI / factorial(k - 1)),
                SingularBasis::DeltaDeriv(k - 1),
            ),
        ]);
    }
    let phase = (c64(0.0, side.sign() * PI) * lambda).exp();
    GeneralizedFunction::from_terms(vec![
        Term::constant(phase, SingularBasis::PowMinus(lambda)),
        Term::constant(c64(1.0, 0.0), SingularBasis::PowPlus(lambda)),
    ])
}

/// Pairing `⟨d, φ⟩`.
pub fn pair(d: &GeneralizedFunction, phi: &TestFunction, tol: f64) -> Result<Complex> {
    let mut acc = c64(0.0, 0.0);
    for term in &d.terms {
        acc += pair_term(&term.coeff, term.basis, phi, tol)?;
    }
    Ok(acc)
}

fn pair_term(
    coeff_arc: &Arc<dyn SmoothCoeff>,
    basis: SingularBasis,
    phi: &TestFunction,
    tol: f64,
) -> Result<Complex> {
    let coeff: &dyn SmoothCoeff = coeff_arc.as_ref();
    let (lo, hi) = phi.support();
    match basis {
        SingularBasis::Regular => {
            // split at the anchor so panels never straddle x = 1
            let g = &mut |x: f64| -> Complex {
                match product_derivs(coeff, phi, x, 0) {
                    Ok(v) => v[0],
                    Err(_) => c64(f64::NAN, 0.0),
                }
            };
            let mut acc = c64(0.0, 0.0);
            for (a, b) in split_at_anchor(lo, hi) {
                acc += integrate(g, a, b, tol, MAX_PANELS)?.value;
            }
            Ok(acc)
        }
        SingularBasis::HeavisideStep => {
            if hi <= 1.0 {
                return Ok(c64(0.0, 0.0));
            }
            let g = &mut |x: f64| -> Complex {
                match product_derivs(coeff, phi, x, 0) {
                    Ok(v) => v[0],
                    Err(_) => c64(f64::NAN, 0.0),
                }
            };
            Ok(integrate(g, lo.max(1.0), hi, tol, MAX_PANELS)?.value)
        }
        SingularBasis::DeltaDeriv(m) => {
            let g = product_derivs(coeff, phi, 1.0, m)?;
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            Ok(sign * g[m])
        }
        SingularBasis::LogAbs => {
            // s = |x-1| so the log singularity sits at s = 0
            let mut acc = c64(0.0, 0.0);
            for minus in [true, false] {
                let smax = if minus { 1.0 - lo } else { hi - 1.0 };
                if smax <= 0.0 {
                    continue;
                }
                let g = &mut |s: f64| -> Complex {
                    let x = if minus { 1.0 - s } else { 1.0 + s };
                    match product_derivs(coeff, phi, x, 0) {
                        Ok(v) => v[0] * libm::log(s),
                        Err(_) => c64(f64::NAN, 0.0),
                    }
                };
                acc += integrate_singular(g, 0.0, smax, true, false, tol, MAX_PANELS)?.value;
            }
            Ok(acc)
        }
        SingularBasis::PrincipalValue => {
            if hi <= 1.0 || lo >= 1.0 {
                let g = &mut |x: f64| -> Complex {
                    match product_derivs(coeff, phi, x, 0) {
                        Ok(v) => v[0] / (x - 1.0),
                        Err(_) => c64(f64::NAN, 0.0),
                    }
                };
                return Ok(integrate(g, lo, hi, tol, MAX_PANELS)?.value);
            }
            // subtract-the-value: ∫ (g(x)-g(1))/(x-1) + g(1) log remainder
            let g1d = product_derivs(coeff, phi, 1.0, 3)?;
            let g = &mut |x: f64| -> Complex {
                let s = x - 1.0;
                if libm::fabs(s) < 1e-7 {
                    return g1d[1] + s * (g1d[2] / 2.0 + s * g1d[3] / 6.0);
                }
                match product_derivs(coeff, phi, x, 0) {
                    Ok(v) => (v[0] - g1d[0]) / s,
                    Err(_) => c64(f64::NAN, 0.0),
                }
            };
            let mut acc = integrate(g, lo, 1.0, tol, MAX_PANELS)?.value;
            acc += integrate(g, 1.0, hi, tol, MAX_PANELS)?.value;
            acc += g1d[0] * libm::log((hi - 1.0) / (1.0 - lo));
            Ok(acc)
        }
        SingularBasis::PowMinus(lambda) => pair_power(coeff, phi, lambda, false, tol),
        SingularBasis::PowPlus(lambda) => pair_power(coeff, phi, lambda, true, tol),
        SingularBasis::BoundaryPower(lambda, side) => {
            let expansion = remark1_expand(lambda, side);
            let mut acc = c64(0.0, 0.0);
            for t in &expansion.terms {
                let scale = t.coeff.derivs(1.0, 0)?[0];
                let scaled: Arc<dyn SmoothCoeff> = Arc::new(ScaledCoeff {
                    scale,
                    inner: coeff_arc.clone(),
                });
                acc += pair_term(&scaled, t.basis, phi, tol)?;
            }
            Ok(acc)
        }
    }
}

fn split_at_anchor(lo: f64, hi: f64) -> Vec<(f64, f64)> {
    if lo < 1.0 && hi > 1.0 {
        vec![(lo, 1.0), (1.0, hi)]
    } else {
        vec![(lo, hi)]
    }
}

/// Pairing of `(x−1)^λ_∓` (`plus_side = false` for the `x<1` part).
fn pair_power(
    coeff: &dyn SmoothCoeff,
    phi: &TestFunction,
    lambda: Complex,
    plus_side: bool,
    tol: f64,
) -> Result<Complex> {
    let (lo, hi) = phi.support();
    let (a, b) = if plus_side {
        (lo.max(1.0), hi)
    } else {
        (lo, hi.min(1.0))
    };
    if b <= a {
        return Ok(c64(0.0, 0.0));
    }
    let (n, d) = {
        let r = libm::round(lambda.re);
        (r as i64, libm::hypot(lambda.re - r, lambda.im))
    };
    // integrate in the distance s = |x-1| so the singular point sits at
    // s = 0, where the geometric grading loses no mass to rounding
    let smax = if plus_side { b - 1.0 } else { 1.0 - a };
    let x_of = move |s: f64| if plus_side { 1.0 + s } else { 1.0 - s };
    if d < INT_SNAP && n <= -1 {
        // integer power: log-regularized finite part with the
        // harmonic-number correction
        let k = (-n) as usize;
        let km1f = factorial(k - 1);
        let g = &mut |s: f64| -> Complex {
            let gk = match product_derivs(coeff, phi, x_of(s), k) {
                Ok(v) => v[k],
                Err(_) => return c64(f64::NAN, 0.0),
            };
            gk * libm::log(s)
        };
        let integral = integrate_singular(g, 0.0, smax, true, false, tol, MAX_PANELS)?.value;
        let gboundary = product_derivs(coeff, phi, 1.0, k - 1)?[k - 1];
        let corr = gboundary * harmonic(k - 1) / km1f;
        if plus_side {
            Ok(-integral / km1f + corr)
        } else {
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            Ok(sign * (integral / km1f + corr))
        }
    } else {
        // analytic continuation: IBP depth chosen so the remaining
        // exponent lies in [-1/2, 1/2), keeping the graded quadrature
        // far from the non-integrable regime
        let depth = libm::ceil(-lambda.re - 0.5).max(0.0) as usize;
        let mut denom = c64(1.0, 0.0);
        for i in 1..=depth {
            denom *= lambda + i as f64;
        }
        let expo = lambda + depth as f64;
        let g = &mut |s: f64| -> Complex {
            let gk = match product_derivs(coeff, phi, x_of(s), depth) {
                Ok(v) => v[depth],
                Err(_) => return c64(f64::NAN, 0.0),
            };
            gk * c64(s, 0.0).powc(expo)
        };
        let integral = integrate_singular(g, 0.0, smax, true, false, tol, MAX_PANELS)?.value;
        let sign = if plus_side && depth % 2 == 1 {
            -1.0
        } else {
            1.0
        };
        Ok(sign * integral / denom)
    }
}

/// Distributional derivative, term by term:
/// `(c·B)' = c'·B + c·B'` with the basis derivative rules
/// (delta corrections appear for the integer powers).
pub fn differentiate(d: &GeneralizedFunction) -> GeneralizedFunction {
    let mut terms = Vec::new();
    for t in &d.terms {
        let c = t.coeff.clone();
        let cprime: Arc<dyn SmoothCoeff> = Arc::new(DiffCoeff {
            order: 1,
            inner: c.clone(),
        });
        // c'·B for every basis
        terms.push(Term::new(cprime, t.basis));
        // c·B'
        match t.basis {
            SingularBasis::Regular => {} // already covered: (c)' = c'
            SingularBasis::HeavisideStep => {
                terms.push(Term::new(c, SingularBasis::DeltaDeriv(0)));
            }
            SingularBasis::LogAbs => {
                terms.push(Term::new(c, SingularBasis::PrincipalValue));
            }
            SingularBasis::PrincipalValue => {
                let m2 = c64(-2.0, 0.0);
                terms.push(Term::new(
                    scaled(c.clone(), c64(-1.0, 0.0)),
                    SingularBasis::PowMinus(m2),
                ));
                terms.push(Term::new(
                    scaled(c, c64(-1.0, 0.0)),
                    SingularBasis::PowPlus(m2),
                ));
            }
            SingularBasis::DeltaDeriv(m) => {
                terms.push(Term::new(c, SingularBasis::DeltaDeriv(m + 1)));
            }
            SingularBasis::BoundaryPower(lambda, side) => {
                if lambda.norm() > 0.0 {
                    terms.push(Term::new(
                        scaled(c, lambda),
                        SingularBasis::BoundaryPower(lambda - 1.0, side),
                    ));
                }
            }
            SingularBasis::PowMinus(lambda) => {
                let (n, dist) = {
                    let r = libm::round(lambda.re);
                    (r as i64, libm::hypot(lambda.re - r, lambda.im))
                };
                terms.push(Term::new(
                    scaled(c.clone(), -lambda),
                    SingularBasis::PowMinus(lambda - 1.0),
                ));
                if dist < INT_SNAP && n <= -1 {
                    let k = (-n) as usize;
                    terms.push(Term::new(
                        scaled(c, c64(-1.0 / factorial(k), 0.0)),
                        SingularBasis::DeltaDeriv(k),
                    ));
                } else if dist < INT_SNAP && n == 0 {
                    // (x-1)^0_- is the mirrored Heaviside θ(1−x)
                    terms.push(Term::new(
                        scaled(c, c64(-1.0, 0.0)),
                        SingularBasis::DeltaDeriv(0),
                    ));
                }
            }
            SingularBasis::PowPlus(lambda) => {
                let (n, dist) = {
                    let r = libm::round(lambda.re);
                    (r as i64, libm::hypot(lambda.re - r, lambda.im))
                };
                terms.push(Term::new(
                    scaled(c.clone(), lambda),
                    SingularBasis::PowPlus(lambda - 1.0),
                ));
                if dist < INT_SNAP && n <= -1 {
                    let k = (-n) as usize;
                    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                    terms.push(Term::new(
                        scaled(c, c64(sign / factorial(k), 0.0)),
                        SingularBasis::DeltaDeriv(k),
                    ));
                } else if dist < INT_SNAP && n == 0 {
                    // (x-1)^0_+ is θ(x−1)
                    terms.push(Term::new(c, SingularBasis::DeltaDeriv(0)));
                }
            }
        }
    }
    GeneralizedFunction::from_terms(terms)
}

fn scaled(inner: Arc<dyn SmoothCoeff>, scale: Complex) -> Arc<dyn SmoothCoeff> {
    Arc::new(ScaledCoeff { scale, inner })
}

/// `α·d1 + d2` by term-list concatenation.
pub fn scale_add(
    alpha: Complex,
    d1: &GeneralizedFunction,
    d2: &GeneralizedFunction,
) -> GeneralizedFunction {
    let mut terms: Vec<Term> = d1
        .terms
        .iter()
        .map(|t| Term::new(scaled(t.coeff.clone(), alpha), t.basis))
        .collect();
    terms.extend(d2.terms.iter().cloned());
    GeneralizedFunction::from_terms(terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bump() -> TestFunction {
        TestFunction::bump(1.0, 0.5, 24).unwrap()
    }

    fn single(basis: SingularBasis) -> GeneralizedFunction {
        GeneralizedFunction::from_terms(vec![Term::constant(c64(1.0, 0.0), basis)])
    }

    fn close(a: Complex, b: Complex, tol: f64) -> bool {
        (a - b).norm() <= tol * (1.0 + b.norm())
    }

    #[test]
    fn bump_derivatives_match_finite_differences() {
        let phi = bump();
        let x = 1.13;
        let d = phi.derivs(x, 2).unwrap();
        let h = 1e-6;
        let fd1 = (phi.value(x + h) - phi.value(x - h)) / (2.0 * h);
        let fd2 = (phi.value(x + h) - 2.0 * phi.value(x) + phi.value(x - h)) / (h * h);
        assert!((d[1] - fd1).abs() < 1e-8);
        assert!((d[2] - fd2).abs() < 1e-3);
        // support edges are exact zeros
        assert_eq!(phi.value(0.5), 0.0);
        assert_eq!(phi.value(1.5), 0.0);
    }

    #[test]
    fn delta_is_point_evaluation() {
        let phi = bump();
        let v = pair(&single(SingularBasis::DeltaDeriv(0)), &phi, 1e-12).unwrap();
        assert!(close(v, c64(phi.value(1.0), 0.0), 1e-13));
    }

    #[test]
    fn pv_of_symmetric_bump_vanishes() {
        let phi = bump();
        let v = pair(&single(SingularBasis::PrincipalValue), &phi, 1e-12).unwrap();
        assert!(v.norm() < 1e-10, "{v}");
    }

    #[test]
    fn pow_minus_matches_explicit_ibp_oracle() {
        // λ = -3/2, unit coefficient: compare against the depth-1 IBP
        // formula ∫_0^1 (1-x)^{-1/2} φ'(x) dx / (λ+1) coded separately
        let phi = bump();
        let d = single(SingularBasis::PowMinus(c64(-1.5, 0.0)));
        let v = pair(&d, &phi, 1e-12).unwrap();
        let g = &mut |x: f64| -> Complex {
            let p = phi.derivs(x, 1).unwrap();
            c64(libm::pow(1.0 - x, -0.5) * p[1], 0.0)
        };
        let oracle =
            integrate_singular(g, 0.5, 1.0, false, true, 1e-12, 4000).unwrap().value / (-0.5);
        assert!(close(v, oracle, 1e-9), "{v} vs {oracle}");
    }

    #[test]
    fn analytic_continuation_consistency() {
        // Re λ ∈ (-1, 0): direct quadrature (engine) against a manual
        // depth-1 IBP evaluation
        let phi = bump();
        for &lam in &[-0.3, -0.62, -0.95] {
            let v = pair(&single(SingularBasis::PowPlus(c64(lam, 0.0))), &phi, 1e-12).unwrap();
            let g = &mut |x: f64| -> Complex {
                let p = phi.derivs(x, 1).unwrap();
                c64(libm::pow(x - 1.0, lam + 1.0) * p[1], 0.0)
            };
            let oracle = -integrate_singular(g, 1.0, 1.5, true, false, 1e-12, 4000)
                .unwrap()
                .value
                / (lam + 1.0);
            assert!(close(v, oracle, 1e-9), "lam={lam}: {v} vs {oracle}");
        }
    }

    #[test]
    fn weak_derivative_all_bases() {
        let phi = bump();
        let bases = [
            SingularBasis::Regular,
            SingularBasis::HeavisideStep,
            SingularBasis::LogAbs,
            SingularBasis::PrincipalValue,
            SingularBasis::DeltaDeriv(1),
            SingularBasis::PowMinus(c64(-0.4, 0.0)),
            SingularBasis::PowPlus(c64(-1.7, 0.2)),
            SingularBasis::PowMinus(c64(-2.0, 0.0)),
            SingularBasis::PowPlus(c64(-1.0, 0.0)),
            SingularBasis::BoundaryPower(c64(0.4, 0.0), Side::Plus),
        ];
        for basis in bases {
            let d = single(basis);
            let lhs = pair(&differentiate(&d), &phi, 1e-11).unwrap();
            let rhs = pair(&d, &phi.differentiated(), 1e-11).unwrap();
            assert!(
                (lhs + rhs).norm() < 1e-9 * (1.0 + rhs.norm()),
                "{basis:?}: {lhs} vs -({rhs})"
            );
        }
    }

    #[test]
    fn side_relation_jump_is_left_part() {
        let phi = bump();
        let lam = c64(-1.35, 0.0);
        let p = pair(&remark1_expand(lam, Side::Plus), &phi, 1e-12).unwrap();
        let m = pair(&remark1_expand(lam, Side::Minus), &phi, 1e-12).unwrap();
        let pm = pair(&single(SingularBasis::PowMinus(lam)), &phi, 1e-12).unwrap();
        let jump = ((c64(0.0, PI) * lam).exp() - (c64(0.0, -PI) * lam).exp()) * pm;
        assert!(close(p - m, jump, 1e-10), "{} vs {jump}", p - m);
    }

    #[test]
    fn boundary_power_expansion_at_minus_one() {
        // (x-1+i0)^{-1} = Pv - iπδ
        let phi = bump();
        let v = pair(
            &single(SingularBasis::BoundaryPower(c64(-1.0, 0.0), Side::Plus)),
            &phi,
            1e-12,
        )
        .unwrap();
        let pv = pair(&single(SingularBasis::PrincipalValue), &phi, 1e-12).unwrap();
        let expect = pv - c64(0.0, PI) * phi.value(1.0);
        assert!(close(v, expect, 1e-10), "{v} vs {expect}");
    }

    #[test]
    fn case3_is_limit_of_noninteger_family() {
        // λ → -1: pair(remark1_expand(λ,±)) must approach the integer
        // combination; Richardson in ε
        let phi = bump();
        let exact = pair(&remark1_expand(c64(-1.0, 0.0), Side::Plus), &phi, 1e-12).unwrap();
        let f = |eps: f64| {
            pair(&remark1_expand(c64(-1.0 + eps, 0.0), Side::Plus), &phi, 1e-12).unwrap()
        };
        let v1 = (f(1e-3) + f(-1e-3)) / 2.0;
        let v2 = (f(5e-4) + f(-5e-4)) / 2.0;
        let lim = (4.0 * v2 - v1) / 3.0;
        assert!(close(lim, exact, 1e-7), "{lim} vs {exact}");
    }

    #[test]
    fn remark1_zero_power_is_one() {
        let phi = bump();
        let v = pair(&remark1_expand(c64(0.0, 0.0), Side::Plus), &phi, 1e-12).unwrap();
        let g = &mut |x: f64| c64(phi.value(x), 0.0);
        let oracle = integrate(g, 0.5, 1.5, 1e-12, 2000).unwrap().value;
        assert!(close(v, oracle, 1e-10), "{v} vs {oracle}");
    }

    #[test]
    fn scale_add_linearity() {
        let phi = bump();
        let d = single(SingularBasis::DeltaDeriv(0));
        let z = GeneralizedFunction::zero();
        let v0 = pair(&scale_add(c64(0.0, 0.0), &d, &z), &phi, 1e-12).unwrap();
        assert_eq!(v0, c64(0.0, 0.0));
        let cancel = scale_add(c64(1.0, 0.0), &d, &scale_add(c64(-1.0, 0.0), &d, &z));
        let vc = pair(&cancel, &phi, 1e-12).unwrap();
        assert!(vc.norm() < 1e-13);
        let three = pair(&scale_add(c64(2.0, 0.0), &d, &d), &phi, 1e-12).unwrap();
        assert!(close(three, c64(3.0 * phi.value(1.0), 0.0), 1e-12));
    }

    #[test]
    fn ibp_depth_independence() {
        // non-integer λ with Re λ > -2: engine (depth 2) equals a
        // manually coded depth-1 continuation
        let phi = bump();
        let lam = -1.25;
        let v = pair(&single(SingularBasis::PowMinus(c64(lam, 0.0))), &phi, 1e-12).unwrap();
        let g = &mut |x: f64| -> Complex {
            let p = phi.derivs(x, 1).unwrap();
            c64(libm::pow(1.0 - x, lam + 1.0) * p[1], 0.0)
        };
        let oracle = integrate_singular(g, 0.5, 1.0, false, true, 1e-12, 4000)
            .unwrap()
            .value
            / (lam + 1.0);
        assert!(close(v, oracle, 1e-9), "{v} vs {oracle}");
    }

    #[test]
    fn insufficient_derivative_order_reported() {
        let phi = TestFunction::bump(1.0, 0.5, 2).unwrap();
        let d = single(SingularBasis::DeltaDeriv(5));
        assert!(matches!(
            pair(&d, &phi, 1e-10),
            Err(Error::InsufficientDerivOrder { .. })
        ));
    }
}
