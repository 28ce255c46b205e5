//! Complex Gamma, reciprocal Gamma, digamma, Pochhammer symbols, and
//! phase-accurate `sin(πz)`/`cos(πz)`.

use crate::{c64, Complex, Error, Result};

const PI: f64 = core::f64::consts::PI;

/// Lanczos coefficients, g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn is_nonpositive_integer(z: Complex, tol: f64) -> Option<i64> {
    if z.im.abs() > tol {
        return None;
    }
    let r = libm::round(z.re);
    if r <= 0.0 && (z.re - r).abs() <= tol {
        Some(r as i64)
    } else {
        None
    }
}

/// `sin(πz)` with argument reduction so that near-integer arguments map
/// to exact zeros of the reduced phase.
pub fn sin_pi(z: Complex) -> Complex {
    let n = libm::round(z.re);
    let r = z.re - n;
    // sin(π(r + n) + iπy) = (-1)^n sin(π(r + iy))
    let w = c64(PI * r, PI * z.im);
    let s = w.sin();
    if (n as i64) % 2 == 0 {
        s
    } else {
        -s
    }
}

/// `cos(πz) = sin(π(z + 1/2))`, exact zeros at half-integers.
pub fn cos_pi(z: Complex) -> Complex {
    sin_pi(z + 0.5)
}

fn lanczos_gamma_shifted(z: Complex) -> Complex {
    // valid for Re z >= 0.5; computes Gamma(z)
    let z = z - 1.0;
    let mut x = c64(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    let sqrt_two_pi = libm::sqrt(2.0 * PI);
    sqrt_two_pi * t.powc(z + 0.5) * (-t).exp() * x
}

/// The Gamma function on the complex plane.
///
/// Errors with [`Error::Pole`] at non-positive integers and with
/// [`Error::Overflow`] when the magnitude leaves the double range.
pub fn gamma(z: Complex) -> Result<Complex> {
    if is_nonpositive_integer(z, 1e-13).is_some() {
        return Err(Error::Pole { at: z });
    }
    let v = if z.re >= 0.5 {
        lanczos_gamma_shifted(z)
    } else {
        // reflection: Gamma(z) = pi / (sin(pi z) Gamma(1 - z))
        let denom = sin_pi(z) * lanczos_gamma_shifted(1.0 - z);
        PI / denom
    };
    if !v.re.is_finite() || !v.im.is_finite() {
        return Err(Error::Overflow);
    }
    Ok(v)
}

/// The reciprocal Gamma function `1/Γ(z)`, entire, exactly zero at
/// non-positive integers.
pub fn rgamma(z: Complex) -> Complex {
    if is_nonpositive_integer(z, 1e-13).is_some() {
        return c64(0.0, 0.0);
    }
    if z.re >= 0.5 {
        1.0 / lanczos_gamma_shifted(z)
    } else {
        sin_pi(z) * lanczos_gamma_shifted(1.0 - z) / PI
    }
}

/// `ln Γ(x)` for real positive `x`, used for overflow-safe magnitude
/// estimates.
pub fn ln_gamma_real(x: f64) -> f64 {
    assert!(x > 0.0);
    let g = lanczos_gamma_shifted(c64(x, 0.0));
    // for moderate x take the log directly; recurse down for large x
    if g.re.is_finite() && g.re > 0.0 {
        libm::log(g.re)
    } else {
        // Stirling
        0.5 * libm::log(2.0 * PI / x) + x * (libm::log(x) - 1.0)
            + libm::log(1.0 + 1.0 / (12.0 * x))
    }
}

const DIGAMMA_BERNOULLI: [f64; 7] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
];

/// The digamma function `ψ(z) = Γ'(z)/Γ(z)`.
pub fn digamma(z: Complex) -> Result<Complex> {
    if is_nonpositive_integer(z, 1e-13).is_some() {
        return Err(Error::Pole { at: z });
    }
    let mut w = z;
    let mut acc = c64(0.0, 0.0);
    if w.re < 0.5 {
        // psi(z) = psi(1-z) - pi cot(pi z)
        let cot = cos_pi(z) / sin_pi(z);
        acc -= PI * cot;
        w = 1.0 - z;
    }
    while w.re < 10.0 {
        acc -= 1.0 / w;
        w += 1.0;
    }
    let inv = 1.0 / w;
    let inv2 = inv * inv;
    let mut s = w.ln() - 0.5 * inv;
    let mut p = inv2;
    for (n, &b) in DIGAMMA_BERNOULLI.iter().enumerate() {
        s -= b / (2.0 * (n as f64 + 1.0)) * p;
        p *= inv2;
    }
    Ok(acc + s)
}

/// Rising factorial `(a)_k = a (a+1) ⋯ (a+k-1)`, with `(a)_0 = 1`.
pub fn pochhammer(a: Complex, k: usize) -> Complex {
    let mut p = c64(1.0, 0.0);
    for i in 0..k {
        p *= a + i as f64;
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex, b: Complex, tol: f64) -> bool {
        (a - b).norm() <= tol * (1.0 + b.norm())
    }

    #[test]
    fn gamma_factorial() {
        assert!(close(gamma(c64(5.0, 0.0)).unwrap(), c64(24.0, 0.0), 1e-14));
    }

    #[test]
    fn gamma_half() {
        let sqrt_pi = libm::sqrt(PI);
        assert!(close(
            gamma(c64(0.5, 0.0)).unwrap(),
            c64(sqrt_pi, 0.0),
            1e-14
        ));
    }

    #[test]
    fn gamma_reflection_complex() {
        // Gamma(0.3+0.7i) * Gamma(0.7-0.7i) = pi / sin(pi (0.3+0.7i))
        let z = c64(0.3, 0.7);
        let lhs = gamma(z).unwrap() * gamma(1.0 - z).unwrap();
        let rhs = PI / sin_pi(z);
        assert!(close(lhs, rhs, 1e-12));
    }

    #[test]
    fn gamma_pole() {
        assert!(matches!(gamma(c64(0.0, 0.0)), Err(Error::Pole { .. })));
        assert!(matches!(gamma(c64(-3.0, 0.0)), Err(Error::Pole { .. })));
        assert_eq!(rgamma(c64(-3.0, 0.0)), c64(0.0, 0.0));
    }

    #[test]
    fn digamma_recurrence_unit() {
        let d2 = digamma(c64(2.0, 0.0)).unwrap();
        let d1 = digamma(c64(1.0, 0.0)).unwrap();
        assert!(close(d2 - d1, c64(1.0, 0.0), 1e-13));
    }

    #[test]
    fn digamma_euler_mascheroni() {
        // independent oracle: gamma_E = lim (sum 1/k - ln n), accelerated
        // with the standard n + 1/2 midpoint correction
        let n = 2_000_000u64;
        let mut s = 0.0;
        for k in 1..=n {
            s += 1.0 / k as f64;
        }
        let gamma_e = s - libm::log(n as f64 + 0.5);
        let d1 = digamma(c64(1.0, 0.0)).unwrap();
        assert!((d1.re + gamma_e).abs() < 1e-9, "psi(1) = -gamma_E");
        assert!((d1.re + 0.577_215_664_901_532_9).abs() < 1e-13);
    }

    #[test]
    fn digamma_duplication_half() {
        let dh = digamma(c64(0.5, 0.0)).unwrap();
        let d1 = digamma(c64(1.0, 0.0)).unwrap();
        assert!(close(dh, d1 - 2.0 * libm::log(2.0), 1e-13));
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(c64(2.3, 1.0), 0), c64(1.0, 0.0));
        assert!(close(pochhammer(c64(1.0, 0.0), 4), c64(24.0, 0.0), 1e-15));
        assert!(close(pochhammer(c64(0.5, 0.0), 2), c64(0.75, 0.0), 1e-15));
    }

    #[test]
    fn sin_pi_exact_zero_at_integers() {
        assert_eq!(sin_pi(c64(4.0, 0.0)), c64(0.0, 0.0));
        assert_eq!(sin_pi(c64(-7.0, 0.0)), c64(-0.0, 0.0) * 1.0);
        assert!(sin_pi(c64(1.0, 0.0)).norm() == 0.0);
        assert!((cos_pi(c64(0.5, 0.0)).norm()) == 0.0);
    }
}
