//! Integral kernels built from the half-line Bessel operator
//! `H_μ = −∂² + (μ² − 1/4)/x²` on `L²(0, ∞)`, whose generalized
//! eigenfunctions are `√(xκ) J_μ(xκ)`. Three kernel families are
//! provided:
//!
//! * spectral projections `1_{[a,b]}(H_μ)`, with a smooth kernel given
//!   by a finite oscillatory integral;
//! * complex powers `H_μ^γ`, whose kernel is a Weber–Schafheitlin
//!   integral in the ratio `x/y` — an ordinary function off the
//!   diagonal for `Re γ < 0` and a distribution anchored at `x = y`
//!   otherwise;
//! * compositions `H_ν^{γ} Ω` with the wave operator
//!   `Ω = e^{±i(μ−ν)π/2} 𝓕_ν 𝓕_μ`, which differ from the power kernel
//!   by using both orders `μ ≠ ν` and a constant phase.
//!
//! Distribution-regime kernels are returned as a [`KernelRow`]: the
//! fixed-`x` slice `K(x, ·)`, expressed as a prefactor times a
//! [`WSDist`] in the ratio variable `u = y/x`, so that pairing against
//! a test function in `y` reduces to the anchored pairing engine of
//! [`crate::distr`].

use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};

use crate::distr::{pair, TestFunction};
use crate::quad::integrate;
use crate::specfun::{bessel_j_real, Side};
use crate::wsint::{ws_distribution, ws_function, Regime, ScalarResult, WSDist};
use crate::{c64, Complex, Error, EvalConfig, Result};

const PI: f64 = core::f64::consts::PI;

/// Parameters of a kernel evaluation.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct KernelSpec {
    /// Bessel order of the operator (`μ > −1` for self-adjointness of
    /// the Friedrichs realization used here).
    pub mu: f64,
    /// Second order for wave-operator compositions; ignored by the
    /// projection and power kernels.
    pub nu: f64,
    /// Exponent of the power `H^γ`.
    #[serde(with = "crate::cjson")]
    pub gamma: Complex,
    /// Spectral window `[a, b]` (in the energy variable `λ = κ²`) for
    /// the projection kernel.
    pub window: (f64, f64),
    /// Sign branch `±` of the wave-operator phase `e^{±i(μ−ν)π/2}`.
    pub sign: Side,
    /// Permit wave-operator orders outside `μ, ν > 1`; the result then
    /// carries a warning instead of an error.
    #[serde(default)]
    pub allow_outside_hypothesis: bool,
}

/// A distribution-regime kernel slice `K(x, ·)`:
/// `⟨K(x, ·), φ⟩ = prefactor · ⟨dist(u), φ(xu)⟩` with `u = y/x`.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct KernelRow {
    pub x: f64,
    #[serde(with = "crate::cjson")]
    pub prefactor: Complex,
    pub dist: WSDist,
    pub regime: Regime,
}

/// Result of a power/wave kernel evaluation at `(x, y)` or at a row.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub enum KernelValue {
    /// Pointwise kernel value off the diagonal.
    Scalar(ScalarResult),
    /// Distributional slice at fixed `x`.
    Row(KernelRow),
}

fn check_mu(spec: &KernelSpec) -> Result<()> {
    if !(spec.mu > -1.0) {
        return Err(Error::Validity(format!(
            "kernel order must satisfy mu > -1, got {}",
            spec.mu
        )));
    }
    Ok(())
}

fn check_xy(x: f64, y: f64) -> Result<()> {
    if !(x > 0.0) || !(y > 0.0) {
        return Err(Error::Domain(format!(
            "kernel arguments must be positive, got x = {x}, y = {y}"
        )));
    }
    Ok(())
}

/// Kernel of the spectral projection `1_{[a,b]}(H_μ)`:
/// `∫_{√a}^{√b} √(xy) J_μ(xκ) J_μ(yκ) κ dκ`, a smooth symmetric
/// function computed by adaptive quadrature over the finite window.
pub fn projection_kernel(spec: &KernelSpec, x: f64, y: f64) -> Result<ScalarResult> {
    check_mu(spec)?;
    check_xy(x, y)?;
    let (lo, hi) = spec.window;
    if !(0.0 <= lo && lo <= hi) {
        return Err(Error::Domain(format!(
            "spectral window must satisfy 0 <= a <= b, got [{lo}, {hi}]"
        )));
    }
    let (klo, khi) = (libm::sqrt(lo), libm::sqrt(hi));
    if khi <= klo {
        return Ok(ScalarResult {
            value: c64(0.0, 0.0),
            est_abs_error: 0.0,
        });
    }
    let mu = spec.mu;
    let amp = libm::sqrt(x * y);
    // one panel per oscillation of the faster Bessel factor
    let rate = x.max(y).max(1.0);
    let panels = (libm::ceil((khi - klo) * rate / PI) as usize + 8).max(16);
    let mut value = c64(0.0, 0.0);
    let mut err = 0.0;
    let h = (khi - klo) / panels as f64;
    for j in 0..panels {
        let (pa, pb) = (klo + j as f64 * h, klo + (j + 1) as f64 * h);
        let r = integrate(
            // grouping the Bessel factors first keeps the value
            // bitwise symmetric under x ↔ y
            &mut |k| c64(amp * (bessel_j_real(mu, x * k) * bessel_j_real(mu, y * k)) * k, 0.0),
            pa,
            pb,
            1e-13,
            400,
        )?;
        value += r.value;
        err += r.est_abs_error;
    }
    Ok(ScalarResult {
        value,
        est_abs_error: err,
    })
}

/// The Weber–Schafheitlin reduction shared by the power and wave
/// kernels: `K(x, y) = phase · √(x/y) y^{−ρ} WS(m, n, ρ; x/y)` with
/// `ρ = 2γ + 1`, as a pointwise value (requires `Re ρ < 1`, `x ≠ y`).
fn ws_kernel_scalar(
    m: f64,
    n: f64,
    rho: Complex,
    phase: Complex,
    x: f64,
    y: f64,
    cfg: &EvalConfig,
) -> Result<ScalarResult> {
    if x == y {
        return Err(Error::Domain(
            "the power/wave kernel has no pointwise value on the diagonal x = y".into(),
        ));
    }
    let ws = ws_function(c64(m, 0.0), c64(n, 0.0), rho, x / y, cfg)?;
    let pre = phase * c64(libm::sqrt(x / y), 0.0) * c64(y, 0.0).powc(-rho);
    Ok(ScalarResult {
        value: pre * ws.value,
        est_abs_error: pre.norm() * ws.est_abs_error,
    })
}

/// The distributional slice shared by the power and wave kernels.
///
/// Substituting `y = xu` in `⟨K(x,·), φ⟩` and using the interchange
/// symmetry `WS(m, n, ρ; 1/u) = u^{ρ+1} WS(n, m, ρ; u)` gives
/// `⟨K(x,·), φ⟩ = phase · x^{1−ρ} ⟨u^{1/2} WS(n, m, ρ; u), φ(xu)⟩`,
/// with the singular support moved to the anchor `u = 1`.
fn ws_kernel_row(
    m: f64,
    n: f64,
    rho: Complex,
    phase: Complex,
    x: f64,
    cfg: &EvalConfig,
) -> Result<(KernelRow, Vec<String>)> {
    // note the interchanged orders (n, m)
    let ws = ws_distribution(c64(n, 0.0), c64(m, 0.0), rho, cfg)?;
    let dist = ws
        .dist
        .as_ref()
        .ok_or_else(|| Error::Domain("distribution regime produced no term list".into()))?;
    let half = c64(0.5, 0.0);
    let row = KernelRow {
        x,
        prefactor: phase * c64(x, 0.0).powc(c64(1.0, 0.0) - rho),
        dist: WSDist {
            terms: dist
                .terms
                .iter()
                .map(|t| crate::wsint::DistTerm {
                    coeff: t.coeff.scaled_power(c64(1.0, 0.0), half),
                    basis: t.basis,
                })
                .collect(),
        },
        regime: ws.regime,
    };
    Ok((row, ws.warnings))
}

/// Kernel of the complex power `H_μ^γ` at `(x, y)`:
/// `√(x/y) y^{−2γ−1} WS(μ, μ, 2γ+1; x/y)`.
///
/// For `Re γ < 0` (and `x ≠ y`) this is an ordinary function; for
/// `Re γ ≥ 0` the distributional slice `K(x, ·)` is returned and `y`
/// is ignored.
pub fn power_kernel(spec: &KernelSpec, x: f64, y: f64, cfg: &EvalConfig) -> Result<KernelValue> {
    check_mu(spec)?;
    check_xy(x, y)?;
    let rho = 2.0 * spec.gamma + 1.0;
    let one = c64(1.0, 0.0);
    if rho.re < 1.0 && x != y {
        return Ok(KernelValue::Scalar(ws_kernel_scalar(
            spec.mu, spec.mu, rho, one, x, y, cfg,
        )?));
    }
    if rho.re <= 0.0 {
        return Err(Error::Domain(
            "the power kernel has no pointwise value on the diagonal x = y".into(),
        ));
    }
    let (row, _) = ws_kernel_row(spec.mu, spec.mu, rho, one, x, cfg)?;
    Ok(KernelValue::Row(row))
}

/// Kernel of `H_ν^γ Ω^±` with the wave operator
/// `Ω^± = e^{±i(μ−ν)π/2} 𝓕_ν 𝓕_μ`:
/// `e^{±i(μ−ν)π/2} √(x/y) y^{−2γ−1} WS(μ, ν, 2γ+1; x/y)`.
///
/// The closed form is established for `μ, ν > 1`; other orders are
/// rejected unless [`KernelSpec::allow_outside_hypothesis`] is set, in
/// which case a warning is attached.
pub fn wave_operator_kernel(
    spec: &KernelSpec,
    x: f64,
    y: f64,
    cfg: &EvalConfig,
) -> Result<(KernelValue, Vec<String>)> {
    check_mu(spec)?;
    check_xy(x, y)?;
    let mut warnings = Vec::new();
    if !(spec.mu > 1.0 && spec.nu > 1.0) {
        if !spec.allow_outside_hypothesis {
            return Err(Error::Validity(format!(
                "wave-operator kernel requires mu > 1 and nu > 1 (got mu = {}, nu = {}); \
                 set allow_outside_hypothesis to evaluate anyway",
                spec.mu, spec.nu
            )));
        }
        warnings.push(format!(
            "orders mu = {}, nu = {} are outside the hypothesis mu, nu > 1; \
             the closed form is used as an analytic continuation",
            spec.mu, spec.nu
        ));
    }
    let rho = 2.0 * spec.gamma + 1.0;
    let phase = (c64(0.0, spec.sign.sign() * PI / 2.0) * (spec.mu - spec.nu)).exp();
    if rho.re < 1.0 && x != y {
        let s = ws_kernel_scalar(spec.mu, spec.nu, rho, phase, x, y, cfg)?;
        return Ok((KernelValue::Scalar(s), warnings));
    }
    if rho.re <= 0.0 {
        return Err(Error::Domain(
            "the wave-operator kernel has no pointwise value on the diagonal x = y".into(),
        ));
    }
    let (row, mut w) = ws_kernel_row(spec.mu, spec.nu, rho, phase, x, cfg)?;
    warnings.append(&mut w);
    Ok((KernelValue::Row(row), warnings))
}

/// Pair a kernel slice against a test function in `y`:
/// `⟨K(x, ·), φ⟩`. The bump is pulled back through `y = xu` (a bump
/// again, with center and width divided by `x`) and paired with the
/// anchored distribution.
pub fn pair_row(row: &KernelRow, phi: &TestFunction, tol: f64) -> Result<Complex> {
    if phi.diff_order != 0 {
        return Err(Error::Domain(
            "kernel rows pair against undifferentiated bumps only".into(),
        ));
    }
    let pulled = TestFunction::bump(phi.center / row.x, phi.width / row.x, phi.max_deriv_order)?;
    Ok(row.prefactor * pair(&row.dist.realize(), &pulled, tol)?)
}

/// Discretized Hankel transform `𝓕_μ f(k) = ∫ √(kx) J_μ(kx) f(x) dx`
/// as a dense `n × n` matrix (row-major) on the midpoint grid
/// `x_j = (j + 1/2) · xmax/n`. `𝓕_μ` is an involution, so the square
/// of this matrix approximates the identity on vectors sampled from
/// smooth functions supported well inside `(0, xmax)`.
pub fn hankel_matrix(mu: f64, n: usize, xmax: f64) -> Vec<f64> {
    let h = xmax / n as f64;
    let grid: Vec<f64> = (0..n).map(|j| (j as f64 + 0.5) * h).collect();
    let mut m = vec![0.0; n * n];
    for (i, &k) in grid.iter().enumerate() {
        for (j, &x) in grid.iter().enumerate() {
            m[i * n + j] = h * libm::sqrt(k * x) * bessel_j_real(mu, k * x);
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{quad_ws, OscKind, QuadConfig};

    fn spec(mu: f64) -> KernelSpec {
        KernelSpec {
            mu,
            nu: mu,
            gamma: c64(0.0, 0.0),
            window: (0.0, 1.0),
            sign: Side::Plus,
            allow_outside_hypothesis: false,
        }
    }

    #[test]
    fn projection_symmetric_and_additive() {
        let cfgs = [(0.5, 1.3, 0.7), (0.0, 0.4, 2.1), (1.5, 1.0, 1.0)];
        for &(mu, x, y) in &cfgs {
            let mut s = spec(mu);
            s.window = (0.3, 2.0);
            let kxy = projection_kernel(&s, x, y).unwrap().value;
            let kyx = projection_kernel(&s, y, x).unwrap().value;
            assert!((kxy - kyx).norm() < 1e-12, "symmetry {mu} {x} {y}");
            let mut s1 = s;
            s1.window = (0.3, 1.1);
            let mut s2 = s;
            s2.window = (1.1, 2.0);
            let sum = projection_kernel(&s1, x, y).unwrap().value
                + projection_kernel(&s2, x, y).unwrap().value;
            assert!((kxy - sum).norm() < 1e-11, "additivity {mu} {x} {y}");
        }
    }

    #[test]
    fn power_kernel_scalar_matches_quadrature() {
        // Re γ < 0: K(x,y) = ∫ √(xy) J_μ(xκ) J_μ(yκ) κ^{2γ+1} dκ
        let mut s = spec(0.5);
        s.gamma = c64(-0.4, 0.0);
        let (x, y) = (0.8, 1.7);
        let k = match power_kernel(&s, x, y, &EvalConfig::default()).unwrap() {
            KernelValue::Scalar(v) => v.value,
            _ => panic!("expected scalar"),
        };
        let rho = 2.0 * s.gamma + 1.0;
        let (q, _) = quad_ws(s.mu, s.mu, rho.re, x / y, OscKind::Jj, &QuadConfig::default())
            .unwrap();
        let expect = libm::sqrt(x / y) * c64(y, 0.0).powc(-rho) * q;
        assert!((k - expect).norm() < 1e-9 * expect.norm(), "{k} vs {expect}");
    }

    #[test]
    fn power_kernel_gamma_zero_is_identity() {
        // γ = 0: ⟨K(x,·), φ⟩ = φ(x)
        let cfg = EvalConfig::default();
        for &(mu, x) in &[(0.0, 0.9), (0.5, 1.6), (2.5, 0.55)] {
            let s = spec(mu);
            let phi = TestFunction::bump(1.0, 0.6, 24).unwrap();
            let row = match power_kernel(&s, x, x, &cfg).unwrap() {
                KernelValue::Row(r) => r,
                _ => panic!("expected row"),
            };
            let got = pair_row(&row, &phi, 1e-11).unwrap();
            let expect = phi.value(x);
            assert!(
                (got - c64(expect, 0.0)).norm() < 1e-8,
                "mu {mu} x {x}: {got} vs {expect}"
            );
        }
    }

    #[test]
    fn diagonal_has_no_pointwise_value() {
        // 2γ+1 ≤ 0: neither a pointwise value nor a distribution exists
        let mut s = spec(0.5);
        s.gamma = c64(-0.8, 0.0);
        assert!(matches!(
            power_kernel(&s, 1.3, 1.3, &EvalConfig::default()),
            Err(Error::Domain(_))
        ));
        // 0 < 2γ+1 < 1: the diagonal point still has a distributional slice
        s.gamma = c64(-0.4, 0.0);
        assert!(matches!(
            power_kernel(&s, 1.3, 1.3, &EvalConfig::default()),
            Ok(KernelValue::Row(_))
        ));
    }

    #[test]
    fn wave_kernel_hypothesis_enforced() {
        let mut s = spec(0.5);
        s.nu = 1.5;
        s.gamma = c64(-0.3, 0.0);
        let cfg = EvalConfig::default();
        assert!(matches!(
            wave_operator_kernel(&s, 0.7, 1.9, &cfg),
            Err(Error::Validity(_))
        ));
        s.allow_outside_hypothesis = true;
        let (_, warnings) = wave_operator_kernel(&s, 0.7, 1.9, &cfg).unwrap();
        assert!(warnings.iter().any(|w| w.contains("outside the hypothesis")));
    }

    #[test]
    fn wave_kernel_equal_orders_reduces_to_power() {
        let mut s = spec(1.5);
        s.gamma = c64(-0.3, 0.0);
        let cfg = EvalConfig::default();
        let (x, y) = (0.7, 1.9);
        let w = match wave_operator_kernel(&s, x, y, &cfg).unwrap().0 {
            KernelValue::Scalar(v) => v.value,
            _ => panic!("expected scalar"),
        };
        let p = match power_kernel(&s, x, y, &cfg).unwrap() {
            KernelValue::Scalar(v) => v.value,
            _ => panic!("expected scalar"),
        };
        assert!((w - p).norm() < 1e-14);
    }

    #[test]
    fn wave_kernel_phase() {
        let mut s = spec(2.5);
        s.nu = 1.5;
        s.gamma = c64(-0.3, 0.0);
        let cfg = EvalConfig::default();
        let (x, y) = (0.7, 1.9);
        let (wp, _) = wave_operator_kernel(&s, x, y, &cfg).unwrap();
        s.sign = Side::Minus;
        let (wm, _) = wave_operator_kernel(&s, x, y, &cfg).unwrap();
        let (vp, vm) = match (wp, wm) {
            (KernelValue::Scalar(p), KernelValue::Scalar(m)) => (p.value, m.value),
            _ => panic!("expected scalars"),
        };
        // orders differ by 1: the two sign branches differ by e^{iπ} = −1
        assert!((vp + vm).norm() < 1e-13 * vp.norm().max(1.0));
    }

    #[test]
    fn hankel_matrix_squares_to_identity() {
        // 𝓕_μ ∘ 𝓕_μ = 1 on smooth vectors supported inside the grid
        let (n, xmax) = (220usize, 22.0);
        let f = hankel_matrix(0.5, n, xmax);
        let h = xmax / n as f64;
        let v: alloc::vec::Vec<f64> = (0..n)
            .map(|j| {
                let x = (j as f64 + 0.5) * h;
                x * x * libm::exp(-(x - 4.0) * (x - 4.0))
            })
            .collect();
        let apply = |m: &[f64], w: &[f64]| -> alloc::vec::Vec<f64> {
            (0..n)
                .map(|i| (0..n).map(|j| m[i * n + j] * w[j]).sum())
                .collect()
        };
        let ffv = apply(&f, &apply(&f, &v));
        let resid = v
            .iter()
            .zip(&ffv)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        let scale = v.iter().fold(0.0f64, |m, a| m.max(a.abs()));
        assert!(resid / scale < 1e-3, "residual {resid} scale {scale}");
    }
}
