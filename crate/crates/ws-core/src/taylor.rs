//! Truncated Taylor-series (jet) arithmetic over complex coefficients.
//!
//! Jets carry a function value and its derivatives at a point and
//! propagate them exactly through products, quotients, powers and
//! compositions. The pairing engine relies on this to obtain high-order
//! derivatives of closed-form coefficients without numerical
//! differentiation.

use alloc::vec;
use alloc::vec::Vec;

use crate::Complex;

/// Taylor coefficients `c[k] = f^(k)(x0)/k!` of a function at a point,
/// truncated after `c[n]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    c: Vec<Complex>,
}

impl Jet {
    /// Jet of the constant `v`.
    pub fn constant(v: Complex, order: usize) -> Jet {
        let mut c = vec![Complex::new(0.0, 0.0); order + 1];
        c[0] = v;
        Jet { c }
    }

    /// Jet of the identity `x ↦ x` at `x0`.
    pub fn variable(x0: f64, order: usize) -> Jet {
        let mut c = vec![Complex::new(0.0, 0.0); order + 1];
        c[0] = Complex::new(x0, 0.0);
        if order >= 1 {
            c[1] = Complex::new(1.0, 0.0);
        }
        Jet { c }
    }

    pub fn from_coeffs(c: Vec<Complex>) -> Jet {
        assert!(!c.is_empty());
        Jet { c }
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn value(&self) -> Complex {
        self.c[0]
    }

    pub fn coeff(&self, k: usize) -> Complex {
        self.c[k]
    }

    /// Derivatives `[f, f', ..., f^(n)]` recovered from the
    /// coefficients.
    pub fn derivatives(&self) -> Vec<Complex> {
        let mut out = Vec::with_capacity(self.c.len());
        let mut fact = 1.0;
        for (k, &c) in self.c.iter().enumerate() {
            if k > 0 {
                fact *= k as f64;
            }
            out.push(c * fact);
        }
        out
    }

    pub fn add(&self, rhs: &Jet) -> Jet {
        assert_eq!(self.order(), rhs.order());
        Jet {
            c: self
                .c
                .iter()
                .zip(&rhs.c)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Jet) -> Jet {
        assert_eq!(self.order(), rhs.order());
        Jet {
            c: self
                .c
                .iter()
                .zip(&rhs.c)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, s: Complex) -> Jet {
        Jet {
            c: self.c.iter().map(|a| a * s).collect(),
        }
    }

    pub fn mul(&self, rhs: &Jet) -> Jet {
        assert_eq!(self.order(), rhs.order());
        let n = self.c.len();
        let mut c = vec![Complex::new(0.0, 0.0); n];
        for i in 0..n {
            for j in 0..n - i {
                c[i + j] += self.c[i] * rhs.c[j];
            }
        }
        Jet { c }
    }

    /// Series reciprocal; the leading coefficient must be nonzero.
    pub fn recip(&self) -> Jet {
        let n = self.c.len();
        let mut r = vec![Complex::new(0.0, 0.0); n];
        let u0 = self.c[0];
        r[0] = 1.0 / u0;
        for k in 1..n {
            let mut s = Complex::new(0.0, 0.0);
            for j in 1..=k {
                s += self.c[j] * r[k - j];
            }
            r[k] = -s / u0;
        }
        Jet { c: r }
    }

    pub fn div(&self, rhs: &Jet) -> Jet {
        self.mul(&rhs.recip())
    }

    /// Series exponential.
    pub fn exp(&self) -> Jet {
        let n = self.c.len();
        let mut e = vec![Complex::new(0.0, 0.0); n];
        e[0] = self.c[0].exp();
        for k in 1..n {
            let mut s = Complex::new(0.0, 0.0);
            for j in 1..=k {
                s += (j as f64) * self.c[j] * e[k - j];
            }
            e[k] = s / (k as f64);
        }
        Jet { c: e }
    }

    /// Series logarithm (principal branch at the leading value).
    pub fn ln(&self) -> Jet {
        let n = self.c.len();
        let mut l = vec![Complex::new(0.0, 0.0); n];
        let u0 = self.c[0];
        l[0] = u0.ln();
        for k in 1..n {
            let mut s = Complex::new(0.0, 0.0);
            for j in 1..k {
                s += (j as f64) * l[j] * self.c[k - j];
            }
            l[k] = (self.c[k] - s / (k as f64)) / u0;
        }
        Jet { c: l }
    }

    /// Complex power `u^alpha` via `exp(alpha ln u)`.
    pub fn powc(&self, alpha: Complex) -> Jet {
        self.ln().scale(alpha).exp()
    }

    /// Compose an outer function, given its derivatives at
    /// `self.value()`, with this (inner) jet:
    /// returns the jet of `g(f(x))`.
    ///
    /// `outer_derivs[m]` must hold `g^(m)(f(x0))` for `m = 0..=order`.
    pub fn compose_outer(&self, outer_derivs: &[Complex]) -> Jet {
        let n = self.c.len();
        assert!(outer_derivs.len() >= n);
        // delta = f - f(x0), nilpotent to order n in the truncated algebra
        let mut delta = self.clone();
        delta.c[0] = Complex::new(0.0, 0.0);
        // Horner evaluation of sum_m g^(m)/m! * delta^m
        let mut acc = Jet::constant(
            outer_derivs[n - 1] / factorial(n - 1),
            self.order(),
        );
        for m in (0..n - 1).rev() {
            acc = acc.mul(&delta);
            acc.c[0] += outer_derivs[m] / factorial(m);
        }
        acc
    }
}

fn factorial(m: usize) -> f64 {
    let mut f = 1.0;
    for i in 2..=m {
        f *= i as f64;
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;

    fn close(a: Complex, b: Complex, tol: f64) -> bool {
        (a - b).norm() <= tol * (1.0 + b.norm())
    }

    #[test]
    fn exp_jet_matches_derivatives() {
        // f(x) = exp(2x) at x0 = 0.3: f^(k) = 2^k exp(0.6)
        let x = Jet::variable(0.3, 5).scale(c64(2.0, 0.0));
        let e = x.exp();
        let d = e.derivatives();
        let base = libm::exp(0.6);
        for (k, dk) in d.iter().enumerate() {
            let expect = libm::pow(2.0, k as f64) * base;
            assert!(close(*dk, c64(expect, 0.0), 1e-13), "k={k}");
        }
    }

    #[test]
    fn powc_jet_matches_derivatives() {
        // f(x) = x^a at x0: f' = a x^(a-1), f'' = a(a-1) x^(a-2)
        let a = c64(-1.7, 0.4);
        let x0 = 1.9;
        let j = Jet::variable(x0, 3).powc(a);
        let d = j.derivatives();
        let p = |e: Complex| c64(x0, 0.0).powc(e);
        assert!(close(d[0], p(a), 1e-13));
        assert!(close(d[1], a * p(a - 1.0), 1e-13));
        assert!(close(d[2], a * (a - 1.0) * p(a - 2.0), 1e-12));
        assert!(close(d[3], a * (a - 1.0) * (a - 2.0) * p(a - 3.0), 1e-12));
    }

    #[test]
    fn compose_outer_chain_rule() {
        // g(u) = u^2 with inner f(x) = sin-free polynomial 1 + x + x^2
        let x0 = 0.5;
        let x = Jet::variable(x0, 4);
        let inner = Jet::constant(c64(1.0, 0.0), 4)
            .add(&x)
            .add(&x.mul(&x));
        let u0 = inner.value();
        // derivatives of g(u) = u^2 at u0
        let outer = [
            u0 * u0,
            2.0 * u0,
            c64(2.0, 0.0),
            c64(0.0, 0.0),
            c64(0.0, 0.0),
        ];
        let composed = inner.compose_outer(&outer);
        let direct = inner.mul(&inner);
        for k in 0..=4 {
            assert!(close(composed.coeff(k), direct.coeff(k), 1e-13));
        }
    }

    #[test]
    fn division_roundtrip() {
        let x = Jet::variable(0.7, 6);
        let num = x.exp();
        let den = Jet::constant(c64(1.0, 0.0), 6).add(&x.mul(&x));
        let q = num.div(&den);
        let back = q.mul(&den);
        for k in 0..=6 {
            assert!(close(back.coeff(k), num.coeff(k), 1e-12));
        }
    }
}
