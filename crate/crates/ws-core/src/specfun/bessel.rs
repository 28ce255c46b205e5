//! Bessel functions J, I, K and the Hankel functions H±, for complex
//! order and the argument rays the integral formulas need: the positive
//! real axis for J and I, the right half-plane and the imaginary axis
//! for K.

use super::gamma::{rgamma, sin_pi};
use super::Side;
use crate::{c64, Complex, Error, Result};

const PI: f64 = core::f64::consts::PI;

/// Power series / asymptotic switch-over point for the argument
/// modulus. Both methods meet double-precision-level accuracy in an
/// overlap band around it (validated in tests on 10..=14).
const SERIES_LIMIT: f64 = 12.0;

fn series_failure(terms: usize, err: f64) -> Error {
    Error::NonConvergence {
        terms_used: terms,
        est_abs_error: err,
    }
}

/// `I_order(z)` by its (everywhere convergent) power series, complex
/// argument allowed internally.
fn bessel_i_series(order: Complex, z: Complex) -> Result<Complex> {
    let q = z * z * 0.25;
    let mut term = z.powc(order) * c64(2.0, 0.0).powc(-order) * rgamma(order + 1.0);
    let mut sum = term;
    for k in 0..600usize {
        term *= q / ((k as f64 + 1.0) * (order + (k as f64 + 1.0)));
        sum += term;
        if term.norm() < 1e-17 * (1.0 + sum.norm()) {
            return Ok(sum);
        }
    }
    Err(series_failure(600, term.norm()))
}

/// `J_order(x)` by power series; `x > 0` real, complex order.
fn bessel_j_series(order: Complex, x: f64) -> Result<Complex> {
    let q = -x * x * 0.25;
    let half = c64(0.5 * x, 0.0);
    let mut term = half.powc(order) * rgamma(order + 1.0);
    let mut sum = term;
    for k in 0..600usize {
        term *= q / ((k as f64 + 1.0) * (order + (k as f64 + 1.0)));
        sum += term;
        if term.norm() < 1e-17 * (1.0 + sum.norm()) {
            return Ok(sum);
        }
    }
    Err(series_failure(600, term.norm()))
}

/// Hankel-style asymptotic expansion of `J_order(x)` for large real x.
fn bessel_j_asymptotic(order: Complex, x: f64) -> Complex {
    let mu4 = 4.0 * order * order;
    let omega = c64(x, 0.0) - (order * 0.5 + 0.25) * PI;
    let mut p = c64(1.0, 0.0);
    let mut q = c64(0.0, 0.0);
    let mut t = c64(1.0, 0.0);
    let mut prev = f64::INFINITY;
    for m in 1..40usize {
        let j = (2 * m - 1) as f64;
        t *= (mu4 - j * j) / (m as f64 * 8.0 * x);
        if t.norm() >= prev {
            break;
        }
        prev = t.norm();
        // t holds t_m; it contributes to P for even m, Q for odd m,
        // with alternating signs (-1)^(m/2) resp. (-1)^((m-1)/2)
        let sign = if (m / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if m % 2 == 0 {
            p += sign * t;
        } else {
            q += sign * t;
        }
        if t.norm() < 1e-17 {
            break;
        }
    }
    let amp = libm::sqrt(2.0 / (PI * x));
    amp * (omega.cos() * p - omega.sin() * q)
}

/// The Bessel function of the first kind `J_order(x)` for real `x > 0`
/// and complex order.
pub fn bessel_j(order: Complex, x: f64) -> Result<Complex> {
    if !(x > 0.0) {
        return Err(Error::Domain(alloc::format!(
            "bessel_j requires x > 0, got {x}"
        )));
    }
    if x <= SERIES_LIMIT {
        bessel_j_series(order, x)
    } else {
        Ok(bessel_j_asymptotic(order, x))
    }
}

/// `J_nu(x)` for real order, returning the real value. Used by the
/// quadrature oracle, which never needs complex orders.
pub fn bessel_j_real(nu: f64, x: f64) -> f64 {
    bessel_j(c64(nu, 0.0), x).map(|v| v.re).unwrap_or(f64::NAN)
}

/// The modified Bessel function of the first kind `I_order(x)`,
/// real `x > 0`.
pub fn bessel_i(order: Complex, x: f64) -> Result<Complex> {
    if !(x > 0.0) {
        return Err(Error::Domain(alloc::format!(
            "bessel_i requires x > 0, got {x}"
        )));
    }
    bessel_i_series(order, c64(x, 0.0))
}

/// Asymptotic expansion of `K_order(z)`, valid for `|arg z| < 3π/2`.
fn bessel_k_asymptotic(order: Complex, z: Complex) -> Complex {
    let mu4 = 4.0 * order * order;
    let mut t = c64(1.0, 0.0);
    let mut sum = t;
    let mut prev = f64::INFINITY;
    for m in 1..50usize {
        let j = (2 * m - 1) as f64;
        t *= (mu4 - j * j) / (m as f64 * 8.0 * z);
        if t.norm() >= prev {
            break;
        }
        prev = t.norm();
        sum += t;
        if t.norm() < 1e-17 * sum.norm() {
            break;
        }
    }
    (PI / (2.0 * z)).sqrt() * (-z).exp() * sum
}

/// Integer-order small-argument series for `K_n(z)` (the log case).
fn bessel_k_integer_series(n: u32, z: Complex) -> Result<Complex> {
    let half = z * 0.5;
    let q = z * z * 0.25;
    let nf = n as f64;

    // finite sum: (1/2)(z/2)^{-n} sum_{k=0}^{n-1} ((n-k-1)!/k!)(-q)^k
    let mut finite = c64(0.0, 0.0);
    if n > 0 {
        let mut fact_k = 1.0;
        for k in 0..n {
            let mut num = 1.0; // (n-k-1)!
            for i in 1..(n - k) {
                num *= i as f64;
            }
            if k > 0 {
                fact_k *= k as f64;
            }
            finite += num / fact_k * (-q).powu(k);
        }
        finite = 0.5 * half.powc(c64(-nf, 0.0)) * finite;
    }

    // log part: (-1)^(n+1) ln(z/2) I_n(z)
    let i_n = bessel_i_series(c64(nf, 0.0), z)?;
    let sign_n = if n % 2 == 0 { 1.0 } else { -1.0 };
    let log_part = -sign_n * half.ln() * i_n;

    // psi series: (-1)^n (1/2)(z/2)^n sum_k [psi(k+1)+psi(n+k+1)] q^k/(k!(n+k)!)
    let mut psi_k = -0.577_215_664_901_532_9; // psi(1)
    let mut psi_nk = psi_k;
    for i in 1..=n {
        psi_nk += 1.0 / i as f64;
    }
    let mut denom = 1.0; // k! (n+k)! / n!  tracked incrementally
    let mut nfact = 1.0;
    for i in 2..=n {
        nfact *= i as f64;
    }
    let mut qpow = c64(1.0, 0.0);
    let mut psum = c64(0.0, 0.0);
    for k in 0..400usize {
        let term = (psi_k + psi_nk) / (denom * nfact) * qpow;
        psum += term;
        if term.norm() < 1e-17 * (1.0 + psum.norm()) && k > 2 {
            break;
        }
        let kf = k as f64 + 1.0;
        psi_k += 1.0 / kf;
        psi_nk += 1.0 / (nf + kf);
        denom *= kf * (nf + kf);
        qpow *= q;
    }
    let psi_part = sign_n * 0.5 * half.powc(c64(nf, 0.0)) * psum;

    Ok(finite + log_part + psi_part)
}

/// Steed's continued fraction CF2 with Temme's q-series: returns
/// `(K_μ(z), K_{μ+1}(z))` for `|Re μ| ≤ 1/2`, `Re z ≥ 1`. Unlike the
/// reflection formula this has no exponential cancellation, so it
/// keeps full relative accuracy at moderate arguments.
fn bessel_k_cf2(mu: Complex, z: Complex) -> Result<(Complex, Complex)> {
    let a1 = c64(0.25, 0.0) - mu * mu;
    let mut b = (z + 1.0) * 2.0;
    let mut d = 1.0 / b;
    let mut delh = d;
    let mut h = d;
    let mut q1 = c64(0.0, 0.0);
    let mut q2 = c64(1.0, 0.0);
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = c64(1.0, 0.0) + q * delh;
    for i in 2..20000usize {
        a -= (2 * (i - 1)) as f64;
        c = -a * c / (i as f64);
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        let dels = q * delh;
        s += dels;
        if dels.norm() <= 1e-16 * s.norm() {
            let h = a1 * h;
            let kmu = (PI / (2.0 * z)).sqrt() * (-z).exp() / s;
            let k1 = kmu * (mu + z + 0.5 - h) / z;
            return Ok((kmu, k1));
        }
    }
    Err(series_failure(20000, f64::INFINITY))
}

/// The modified Bessel function of the second kind `K_order(z)` for
/// `Re z > 0` or purely imaginary `z ≠ 0`.
pub fn bessel_k(order: Complex, z: Complex) -> Result<Complex> {
    if z.norm() == 0.0 || z.re < -1e-300 {
        return Err(Error::Domain(alloc::format!(
            "bessel_k requires Re z >= 0, z != 0, got {z}"
        )));
    }
    // K is even in the order
    let order = if order.re < 0.0 { -order } else { order };
    if z.norm() >= SERIES_LIMIT {
        return Ok(bessel_k_asymptotic(order, z));
    }
    if z.re >= 1.0 {
        // order reduction to |Re μ| ≤ 1/2, then upward recurrence
        let m = libm::round(order.re) as i64;
        let mu0 = order - m as f64;
        let (mut km, mut kp) = bessel_k_cf2(mu0, z)?;
        let mut mu = mu0;
        for _ in 0..m {
            let next = kp * (2.0 * (mu + 1.0)) / z + km;
            km = kp;
            kp = next;
            mu += 1.0;
        }
        return Ok(km);
    }
    let nearest = libm::round(order.re);
    if order.im.abs() < 1e-6 && (order.re - nearest).abs() < 1e-6 && nearest >= 0.0 {
        return bessel_k_integer_series(nearest as u32, z);
    }
    // K_mu = pi/2 (I_{-mu} - I_mu) / sin(pi mu)
    let i_m = bessel_i_series(-order, z)?;
    let i_p = bessel_i_series(order, z)?;
    Ok(PI / 2.0 * (i_m - i_p) / sin_pi(order))
}

/// Hankel functions `H^±_order(x)` for real `x > 0`, computed through
/// `K` at imaginary argument:
/// `H^+(x) = (2/iπ) e^{-iπμ/2} K_μ(-ix)` and
/// `H^-(x) = -(2/iπ) e^{iπμ/2} K_μ(ix)`.
pub fn hankel(side: Side, order: Complex, x: f64) -> Result<Complex> {
    if !(x > 0.0) {
        return Err(Error::Domain(alloc::format!(
            "hankel requires x > 0, got {x}"
        )));
    }
    let i = c64(0.0, 1.0);
    match side {
        Side::Plus => {
            let k = bessel_k(order, c64(0.0, -x))?;
            Ok(2.0 / (i * PI) * (-i * PI * order / 2.0).exp() * k)
        }
        Side::Minus => {
            let k = bessel_k(order, c64(0.0, x))?;
            Ok(-2.0 / (i * PI) * (i * PI * order / 2.0).exp() * k)
        }
    }
}
