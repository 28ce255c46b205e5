//! Evaluation configuration.

/// Precision settings shared by the series and quadrature engines.
///
/// All operations are pure given a configuration value, so a single
/// `EvalConfig` can be shared freely between threads.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalConfig {
    /// Relative tolerance targeted by series summation.
    pub series_rel_tol: f64,
    /// Hard cap on series terms.
    pub series_max_terms: usize,
    /// Convergence is declared after this many consecutive terms below
    /// tolerance.
    pub series_run_length: usize,
    /// Distance from an integer below which ρ snaps to the integer
    /// branch.
    pub integer_snap_tol: f64,
    /// Distance from an integer below which sin/cos prefactors are
    /// evaluated by argument reduction so that exact zeros survive.
    pub trig_reduction_band: f64,
    /// Maximum delta-derivative order accepted by the pairing engine.
    pub max_delta_order: usize,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            series_rel_tol: 1e-14,
            series_max_terms: 100_000,
            series_run_length: 3,
            integer_snap_tol: 1e-12,
            trig_reduction_band: 1e-3,
            max_delta_order: 20,
        }
    }
}
