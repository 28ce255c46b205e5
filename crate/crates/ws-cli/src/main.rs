//! `ws` — command-line front end for the Weber–Schafheitlin evaluators:
//! closed-form evaluation (`eval`), distributional pairing (`pair`),
//! brute-force oracle quadrature (`oracle`), operator kernels
//! (`kernel`) and a quick self-check (`selftest`).
//!
//! All machine output carries the schema tag `ws-kernel/1`; complex
//! numbers serialize as `{re, im}` pairs. Exit codes: 2 validity
//! violation, 3 unsupported degenerate case, 4 numerical failure,
//! 5 oracle-check discrepancy.

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use ws_core::abkernel::{
    pair_row, power_kernel, projection_kernel, wave_operator_kernel, KernelSpec, KernelValue,
};
use ws_core::distr::{pair, TestFunction};
use ws_core::oracle::{quad_kexp, quad_pairing, quad_ws, Damping, KexpKind, OscKind, QuadConfig};
use ws_core::specfun::Side;
use ws_core::wsint::{classify, eval, Classification, Kind, WSDist, WSParams, WSResult};
use ws_core::{c64, Complex, Error, EvalConfig};

const SCHEMA: &str = "ws-kernel/1";

#[derive(Parser)]
#[command(name = "ws", version, about = "Weber-Schafheitlin integral toolkit")]
struct Cli {
    /// JSON config file; the WS_CONFIG environment variable is the
    /// fallback path. Explicit flags win over config values.
    #[arg(long, global = true)]
    config: Option<String>,
    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output to this path instead of stdout.
    #[arg(long, global = true)]
    out: Option<String>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate one integral in closed form.
    Eval(EvalArgs),
    /// Pair a distribution-regime integral with a bump test function.
    Pair(PairArgs),
    /// Evaluate by brute-force quadrature only.
    Oracle(OracleArgs),
    /// Operator kernels (spectral projection, powers, wave operators).
    Kernel(KernelArgs),
    /// Run the built-in consistency checks.
    Selftest,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    /// Complex parameter as `re` or `re,im`.
    #[arg(long, value_parser = parse_complex)]
    mu: Complex,
    #[arg(long, value_parser = parse_complex)]
    nu: Complex,
    #[arg(long, value_parser = parse_complex)]
    rho: Complex,
    /// Ratio argument for the J/H families.
    #[arg(long)]
    x: Option<f64>,
    /// Complex scale for the K families, as `re` or `re,im`.
    #[arg(long, value_parser = parse_complex)]
    z: Option<Complex>,
    /// Emit the symbolic term list even when a pointwise value exists.
    #[arg(long)]
    x_symbolic: bool,
}

#[derive(Args)]
struct PairArgs {
    #[arg(long, value_enum, default_value = "jj")]
    kind: KindArg,
    #[arg(long, value_parser = parse_complex)]
    mu: Complex,
    #[arg(long, value_parser = parse_complex)]
    nu: Complex,
    #[arg(long, value_parser = parse_complex)]
    rho: Complex,
    /// Bump center (> width).
    #[arg(long)]
    center: f64,
    /// Bump width (> 0).
    #[arg(long)]
    width: f64,
    #[arg(long, default_value_t = 30)]
    max_deriv_order: usize,
    /// Pair a previously serialized term list (JSON `WSDist`) instead
    /// of assembling one.
    #[arg(long)]
    dist_json: Option<String>,
    /// Also run the quadrature oracle and report the discrepancy.
    #[arg(long)]
    check: bool,
    #[arg(long, default_value_t = 1e-6)]
    check_tol: f64,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long)]
    mu: f64,
    #[arg(long)]
    nu: f64,
    #[arg(long)]
    rho: f64,
    #[arg(long)]
    x: Option<f64>,
    #[arg(long, value_parser = parse_complex)]
    z: Option<Complex>,
    /// Bump center: with `--width`, computes the Abel-regularized
    /// pairing instead of a pointwise value.
    #[arg(long)]
    center: Option<f64>,
    #[arg(long)]
    width: Option<f64>,
}

#[derive(Args)]
struct KernelArgs {
    #[arg(value_enum)]
    which: KernelKind,
    #[arg(long)]
    mu: f64,
    #[arg(long)]
    nu: Option<f64>,
    /// Power exponent as `re` or `re,im`.
    #[arg(long, value_parser = parse_complex, default_value = "0")]
    gamma: Complex,
    /// Spectral window `a,b` for the projection kernel.
    #[arg(long, value_parser = parse_window, default_value = "0,1")]
    window: (f64, f64),
    #[arg(long, value_enum, default_value = "plus")]
    sign: SignArg,
    #[arg(long)]
    allow_outside_hypothesis: bool,
    /// Evaluation grid `start:stop:count` in x.
    #[arg(long, value_parser = parse_grid)]
    x_grid: Option<(f64, f64, usize)>,
    /// Evaluation grid `start:stop:count` in y (defaults to the x grid).
    #[arg(long, value_parser = parse_grid)]
    y_grid: Option<(f64, f64, usize)>,
    /// Row point for distribution-regime pairing output.
    #[arg(long)]
    x: Option<f64>,
    #[arg(long)]
    pair_center: Option<f64>,
    #[arg(long)]
    pair_width: Option<f64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Jj,
    HplusJ,
    HminusJ,
    Kj,
    Ki,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::Jj => Kind::Jj,
            KindArg::HplusJ => Kind::HplusJ,
            KindArg::HminusJ => Kind::HminusJ,
            KindArg::Kj => Kind::Kj,
            KindArg::Ki => Kind::Ki,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KernelKind {
    Projection,
    Power,
    Wave,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SignArg {
    Plus,
    Minus,
}

impl From<SignArg> for Side {
    fn from(s: SignArg) -> Side {
        match s {
            SignArg::Plus => Side::Plus,
            SignArg::Minus => Side::Minus,
        }
    }
}

fn parse_complex(s: &str) -> Result<Complex, String> {
    let mut it = s.splitn(2, ',');
    let re: f64 = it
        .next()
        .unwrap()
        .trim()
        .parse()
        .map_err(|e| format!("bad real part: {e}"))?;
    let im: f64 = match it.next() {
        Some(t) => t.trim().parse().map_err(|e| format!("bad imaginary part: {e}"))?,
        None => 0.0,
    };
    Ok(c64(re, im))
}

fn parse_window(s: &str) -> Result<(f64, f64), String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err("expected `a,b`".into());
    }
    let a: f64 = parts[0].trim().parse().map_err(|e| format!("{e}"))?;
    let b: f64 = parts[1].trim().parse().map_err(|e| format!("{e}"))?;
    Ok((a, b))
}

fn parse_grid(s: &str) -> Result<(f64, f64, usize), String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err("expected `start:stop:count`".into());
    }
    let a: f64 = parts[0].trim().parse().map_err(|e| format!("{e}"))?;
    let b: f64 = parts[1].trim().parse().map_err(|e| format!("{e}"))?;
    let n: usize = parts[2].trim().parse().map_err(|e| format!("{e}"))?;
    if n == 0 {
        return Err("count must be positive".into());
    }
    Ok((a, b, n))
}

/// Defaults overridable from the config file; explicit flags win.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RunConfig {
    series_rel_tol: Option<f64>,
    series_max_terms: Option<usize>,
    integer_snap_tol: Option<f64>,
    max_delta_order: Option<usize>,
    oracle_rel_tol: Option<f64>,
    oracle_abs_tol: Option<f64>,
    oracle_max_panels: Option<usize>,
    abel_eps_ladder: Option<Vec<f64>>,
    extrapolation_order: Option<usize>,
    pair_tol: Option<f64>,
    format: Option<String>,
    out: Option<String>,
}

struct Ctx {
    eval_cfg: EvalConfig,
    quad_cfg: QuadConfig,
    pair_tol: f64,
    format: Format,
    out: Option<String>,
}

fn load_config(path: Option<&str>) -> Result<RunConfig, Error> {
    let path = match path {
        Some(p) => Some(p.to_string()),
        None => std::env::var("WS_CONFIG").ok(),
    };
    let Some(path) = path else {
        return Ok(RunConfig::default());
    };
    let text = fs::read_to_string(&path)
        .map_err(|e| Error::Domain(format!("cannot read config {path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| Error::Domain(format!("bad config {path}: {e}")))
}

fn build_ctx(cli: &Cli) -> Result<Ctx, Error> {
    let rc = load_config(cli.config.as_deref())?;
    let mut eval_cfg = EvalConfig::default();
    if let Some(v) = rc.series_rel_tol {
        eval_cfg.series_rel_tol = v;
    }
    if let Some(v) = rc.series_max_terms {
        eval_cfg.series_max_terms = v;
    }
    if let Some(v) = rc.integer_snap_tol {
        eval_cfg.integer_snap_tol = v;
    }
    if let Some(v) = rc.max_delta_order {
        eval_cfg.max_delta_order = v;
    }
    let mut quad_cfg = QuadConfig::default();
    if let Some(v) = rc.oracle_rel_tol {
        quad_cfg.rel_tol = v;
    }
    if let Some(v) = rc.oracle_abs_tol {
        quad_cfg.abs_tol = v;
    }
    if let Some(v) = rc.oracle_max_panels {
        quad_cfg.max_panels = v;
    }
    if let Some(v) = rc.abel_eps_ladder.clone() {
        quad_cfg.abel_eps_ladder = v;
    }
    if let Some(v) = rc.extrapolation_order {
        quad_cfg.extrapolation_order = v;
    }
    let format = match cli.format {
        Some(f) => f,
        None => match rc.format.as_deref() {
            Some("csv") => Format::Csv,
            Some("text") => Format::Text,
            Some("json") | None => Format::Json,
            Some(other) => {
                return Err(Error::Domain(format!("unknown format {other:?} in config")))
            }
        },
    };
    Ok(Ctx {
        eval_cfg,
        quad_cfg,
        pair_tol: rc.pair_tol.unwrap_or(1e-10),
        format,
        out: cli.out.clone().or(rc.out),
    })
}

fn emit(ctx: &Ctx, text: &str) -> Result<(), Error> {
    match &ctx.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Error::Domain(format!("cannot write {path}: {e}"))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.write_all(b"\n"))
                .map_err(|e| Error::Domain(format!("stdout: {e}")))
        }
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Validity(_) | Error::Domain(_) => 2,
        Error::DegenerateUnsupported(_) => 3,
        _ => 4,
    }
}

#[derive(Serialize)]
struct ErrorRecord<'a> {
    schema: &'a str,
    error: ErrorBody,
}

#[derive(Serialize)]
struct ErrorBody {
    kind: String,
    message: String,
}

fn fail(ctx: Option<&Ctx>, err: Error) -> ExitCode {
    let rec = ErrorRecord {
        schema: SCHEMA,
        error: ErrorBody {
            kind: match &err {
                Error::Validity(_) => "validity".into(),
                Error::Domain(_) => "domain".into(),
                Error::DegenerateUnsupported(_) => "degenerate".into(),
                _ => "numerical".into(),
            },
            message: format!("{err:?}"),
        },
    };
    let text = serde_json::to_string_pretty(&rec).unwrap();
    match ctx {
        Some(c) => {
            let _ = emit(c, &text);
        }
        None => eprintln!("{text}"),
    }
    ExitCode::from(exit_code_for(&err))
}

#[derive(Serialize)]
struct EvalOutput<'a> {
    schema: &'a str,
    command: &'a str,
    params: &'a WSParams,
    classification: Classification,
    result: &'a WSResult,
}

fn cmd_eval(ctx: &Ctx, a: &EvalArgs) -> Result<(), Error> {
    let kind: Kind = a.kind.into();
    let z_or_x = match kind {
        Kind::Kj | Kind::Ki => a
            .z
            .ok_or_else(|| Error::Domain("the K families need --z".into()))?,
        _ => c64(
            a.x.ok_or_else(|| Error::Domain("the J/H families need --x (or --x-symbolic with any --x)".into()))
                .or_else(|e| if a.x_symbolic { Ok(1.0) } else { Err(e) })?,
            0.0,
        ),
    };
    let p = WSParams {
        mu: a.mu,
        nu: a.nu,
        rho: a.rho,
        kind,
        z_or_x,
    };
    let result = if a.x_symbolic {
        match kind {
            Kind::Jj => ws_core::wsint::ws_distribution(a.mu, a.nu, a.rho, &ctx.eval_cfg)?,
            Kind::HplusJ => ws_core::wsint::hankel_distribution(
                a.mu,
                a.nu,
                a.rho,
                Side::Plus,
                &ctx.eval_cfg,
            )?,
            Kind::HminusJ => ws_core::wsint::hankel_distribution(
                a.mu,
                a.nu,
                a.rho,
                Side::Minus,
                &ctx.eval_cfg,
            )?,
            _ => return Err(Error::Domain("--x-symbolic applies to the J/H families".into())),
        }
    } else {
        eval(&p, &ctx.eval_cfg)?
    };
    let out = EvalOutput {
        schema: SCHEMA,
        command: "eval",
        params: &p,
        classification: classify(&p, &ctx.eval_cfg),
        result: &result,
    };
    match ctx.format {
        Format::Csv => {
            let (vre, vim, err) = match &result.scalar {
                Some(s) => (s.value.re, s.value.im, s.est_abs_error),
                None => (f64::NAN, f64::NAN, f64::NAN),
            };
            emit(
                ctx,
                &format!(
                    "kind,mu_re,mu_im,nu_re,nu_im,rho_re,rho_im,arg_re,arg_im,value_re,value_im,est_abs_error\n\
                     {:?},{},{},{},{},{},{},{},{},{},{},{}",
                    kind, a.mu.re, a.mu.im, a.nu.re, a.nu.im, a.rho.re, a.rho.im,
                    z_or_x.re, z_or_x.im, vre, vim, err
                ),
            )
        }
        Format::Text => {
            let body = match (&result.scalar, &result.dist) {
                (Some(s), _) => format!("value = {} + {}i (est err {})", s.value.re, s.value.im, s.est_abs_error),
                (None, Some(d)) => format!("distribution with {} terms ({:?})", d.terms.len(), result.regime),
                _ => "empty result".into(),
            };
            emit(ctx, &body)
        }
        Format::Json => emit(ctx, &serde_json::to_string_pretty(&out).unwrap()),
    }
}

#[derive(Serialize)]
struct PairOutput<'a> {
    schema: &'a str,
    command: &'a str,
    #[serde(with = "ws_core::cjson")]
    value: Complex,
    #[serde(skip_serializing_if = "Option::is_none", with = "ws_core::cjson::option", default)]
    oracle: Option<Complex>,
    #[serde(skip_serializing_if = "Option::is_none")]
    abs_diff: Option<f64>,
    warnings: Vec<String>,
}

fn cmd_pair(ctx: &Ctx, a: &PairArgs) -> Result<(), Error> {
    let phi = TestFunction::bump(a.center, a.width, a.max_deriv_order)?;
    let (dist, warnings) = match &a.dist_json {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::Domain(format!("cannot read {path}: {e}")))?;
            let d: WSDist = serde_json::from_str(&text)
                .map_err(|e| Error::Domain(format!("bad term list {path}: {e}")))?;
            (d, Vec::new())
        }
        None => {
            let r = match a.kind {
                KindArg::Jj => ws_core::wsint::ws_distribution(a.mu, a.nu, a.rho, &ctx.eval_cfg)?,
                KindArg::HplusJ => ws_core::wsint::hankel_distribution(
                    a.mu,
                    a.nu,
                    a.rho,
                    Side::Plus,
                    &ctx.eval_cfg,
                )?,
                KindArg::HminusJ => ws_core::wsint::hankel_distribution(
                    a.mu,
                    a.nu,
                    a.rho,
                    Side::Minus,
                    &ctx.eval_cfg,
                )?,
                _ => {
                    return Err(Error::Domain(
                        "pairing applies to the J/H families only".into(),
                    ))
                }
            };
            let w = r.warnings.clone();
            (
                r.dist
                    .ok_or_else(|| Error::Validity("not in the distribution regime".into()))?,
                w,
            )
        }
    };
    let value = pair(&dist.realize(), &phi, ctx.pair_tol)?;
    let (oracle, abs_diff) = if a.check {
        if a.mu.im != 0.0 || a.nu.im != 0.0 || a.rho.im != 0.0 {
            return Err(Error::Domain(
                "--check supports real parameters only".into(),
            ));
        }
        if a.kind != KindArg::Jj {
            return Err(Error::Domain("--check supports --kind jj only".into()));
        }
        let (q, _) = quad_pairing(a.mu.re, a.nu.re, a.rho.re, &phi, Damping::Exp, &ctx.quad_cfg)?;
        (Some(q), Some((value - q).norm()))
    } else {
        (None, None)
    };
    let out = PairOutput {
        schema: SCHEMA,
        command: "pair",
        value,
        oracle,
        abs_diff,
        warnings,
    };
    match ctx.format {
        Format::Csv => {
            let (ore, oim, diff) = match (oracle, abs_diff) {
                (Some(o), Some(d)) => (o.re, o.im, d),
                _ => (f64::NAN, f64::NAN, f64::NAN),
            };
            emit(
                ctx,
                &format!(
                    "mu_re,nu_re,rho_re,center,width,value_re,value_im,oracle_re,oracle_im,abs_diff\n\
                     {},{},{},{},{},{},{},{},{},{}",
                    a.mu.re, a.nu.re, a.rho.re, a.center, a.width,
                    value.re, value.im, ore, oim, diff
                ),
            )?;
        }
        Format::Text => emit(
            ctx,
            &format!("pairing = {} + {}i", value.re, value.im),
        )?,
        Format::Json => emit(ctx, &serde_json::to_string_pretty(&out).unwrap())?,
    }
    if let Some(d) = abs_diff {
        if d > a.check_tol {
            return Err(Error::QuadratureFailure {
                panels: 0,
                est_abs_error: d,
            })
            .map_err(|_| Error::Domain(format!("check discrepancy {d:.3e} exceeds {:.3e}", a.check_tol)))
            .map_err(CheckDiscrepancy::wrap)?;
        }
    }
    Ok(())
}

/// Marker for exit code 5: wraps a message into a distinguishable
/// error value.
struct CheckDiscrepancy;

impl CheckDiscrepancy {
    fn wrap(e: Error) -> Error {
        // encoded by message prefix; unwrapped in `run`
        match e {
            Error::Domain(m) => Error::Domain(format!("check-discrepancy: {m}")),
            other => other,
        }
    }
}

#[derive(Serialize)]
struct OracleOutput<'a> {
    schema: &'a str,
    command: &'a str,
    #[serde(with = "ws_core::cjson")]
    value: Complex,
    est_abs_error: f64,
}

fn cmd_oracle(ctx: &Ctx, a: &OracleArgs) -> Result<(), Error> {
    let (value, est) = match a.kind {
        KindArg::Kj | KindArg::Ki => {
            let z = a.z.ok_or_else(|| Error::Domain("the K families need --z".into()))?;
            let kk = if a.kind == KindArg::Ki {
                KexpKind::Ki
            } else {
                KexpKind::Kj
            };
            quad_kexp(
                c64(a.mu, 0.0),
                c64(a.nu, 0.0),
                c64(a.rho, 0.0),
                z,
                kk,
                &ctx.quad_cfg,
            )?
        }
        _ => match (a.center, a.width) {
            (Some(c), Some(w)) => {
                if a.kind != KindArg::Jj {
                    return Err(Error::Domain(
                        "pairing oracle supports --kind jj only".into(),
                    ));
                }
                let phi = TestFunction::bump(c, w, 30)?;
                quad_pairing(a.mu, a.nu, a.rho, &phi, Damping::Exp, &ctx.quad_cfg)?
            }
            _ => {
                let x = a
                    .x
                    .ok_or_else(|| Error::Domain("pointwise oracle needs --x".into()))?;
                let kind = match a.kind {
                    KindArg::Jj => OscKind::Jj,
                    KindArg::HplusJ => OscKind::Hankel(Side::Plus),
                    KindArg::HminusJ => OscKind::Hankel(Side::Minus),
                    _ => unreachable!(),
                };
                quad_ws(a.mu, a.nu, a.rho, x, kind, &ctx.quad_cfg)?
            }
        },
    };
    let out = OracleOutput {
        schema: SCHEMA,
        command: "oracle",
        value,
        est_abs_error: est,
    };
    match ctx.format {
        Format::Csv => emit(
            ctx,
            &format!(
                "value_re,value_im,est_abs_error\n{},{},{}",
                value.re, value.im, est
            ),
        ),
        Format::Text => emit(
            ctx,
            &format!("oracle = {} + {}i (est err {est})", value.re, value.im),
        ),
        Format::Json => emit(ctx, &serde_json::to_string_pretty(&out).unwrap()),
    }
}

#[derive(Serialize)]
struct KernelCell {
    x: f64,
    y: f64,
    #[serde(with = "ws_core::cjson")]
    value: Complex,
}

#[derive(Serialize)]
struct KernelOutput<'a> {
    schema: &'a str,
    command: &'a str,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    rows: Vec<KernelCell>,
    #[serde(skip_serializing_if = "Option::is_none", with = "ws_core::cjson::option", default)]
    pairing: Option<Complex>,
    warnings: Vec<String>,
}

fn grid_points(g: (f64, f64, usize)) -> Vec<f64> {
    let (a, b, n) = g;
    if n == 1 {
        return vec![a];
    }
    (0..n)
        .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
        .collect()
}

fn cmd_kernel(ctx: &Ctx, a: &KernelArgs) -> Result<(), Error> {
    let spec = KernelSpec {
        mu: a.mu,
        nu: a.nu.unwrap_or(a.mu),
        gamma: a.gamma,
        window: a.window,
        sign: a.sign.into(),
        allow_outside_hypothesis: a.allow_outside_hypothesis,
    };
    let mut rows = Vec::new();
    let mut pairing = None;
    let mut warnings = Vec::new();

    if let (Some(pc), Some(pw)) = (a.pair_center, a.pair_width) {
        // distribution-regime row pairing at --x
        let x = a
            .x
            .ok_or_else(|| Error::Domain("row pairing needs --x".into()))?;
        let phi = TestFunction::bump(pc, pw, 24)?;
        let kv = match a.which {
            KernelKind::Power => power_kernel(&spec, x, x, &ctx.eval_cfg)?,
            KernelKind::Wave => {
                let (kv, w) = wave_operator_kernel(&spec, x, x, &ctx.eval_cfg)?;
                warnings = w;
                kv
            }
            KernelKind::Projection => {
                return Err(Error::Domain(
                    "the projection kernel is an ordinary function; use a grid".into(),
                ))
            }
        };
        match kv {
            KernelValue::Row(row) => pairing = Some(pair_row(&row, &phi, ctx.pair_tol)?),
            KernelValue::Scalar(_) => {
                return Err(Error::Domain(
                    "kernel is pointwise in this regime; use a grid instead of pairing flags".into(),
                ))
            }
        }
    } else {
        let xg = a
            .x_grid
            .ok_or_else(|| Error::Domain("kernel evaluation needs --x-grid (or pairing flags)".into()))?;
        let yg = a.y_grid.unwrap_or(xg);
        for &x in &grid_points(xg) {
            for &y in &grid_points(yg) {
                let value = match a.which {
                    KernelKind::Projection => projection_kernel(&spec, x, y)?.value,
                    KernelKind::Power => match power_kernel(&spec, x, y, &ctx.eval_cfg) {
                        Ok(KernelValue::Scalar(s)) => s.value,
                        Ok(KernelValue::Row(_)) => {
                            return Err(Error::Domain(
                                "distribution regime: use --pair-center/--pair-width/--x".into(),
                            ))
                        }
                        Err(Error::Domain(_)) if x == y => c64(f64::NAN, f64::NAN),
                        Err(e) => return Err(e),
                    },
                    KernelKind::Wave => match wave_operator_kernel(&spec, x, y, &ctx.eval_cfg) {
                        Ok((KernelValue::Scalar(s), w)) => {
                            warnings = w;
                            s.value
                        }
                        Ok((KernelValue::Row(_), _)) => {
                            return Err(Error::Domain(
                                "distribution regime: use --pair-center/--pair-width/--x".into(),
                            ))
                        }
                        Err(Error::Domain(_)) if x == y => c64(f64::NAN, f64::NAN),
                        Err(e) => return Err(e),
                    },
                };
                rows.push(KernelCell { x, y, value });
            }
        }
    }

    let out = KernelOutput {
        schema: SCHEMA,
        command: "kernel",
        rows,
        pairing,
        warnings,
    };
    match ctx.format {
        Format::Csv => {
            let mut text = String::from("x,y,value_re,value_im");
            for c in &out.rows {
                text.push_str(&format!("\n{},{},{},{}", c.x, c.y, c.value.re, c.value.im));
            }
            if let Some(p) = out.pairing {
                text.push_str(&format!("\npairing,,{},{}", p.re, p.im));
            }
            emit(ctx, &text)
        }
        Format::Text => {
            let body = match out.pairing {
                Some(p) => format!("pairing = {} + {}i", p.re, p.im),
                None => format!("{} kernel values computed", out.rows.len()),
            };
            emit(ctx, &body)
        }
        Format::Json => emit(ctx, &serde_json::to_string_pretty(&out).unwrap()),
    }
}

fn cmd_selftest(ctx: &Ctx) -> Result<(), Error> {
    let cfg = &ctx.eval_cfg;
    let mut lines = Vec::new();
    let mut ok = true;
    let mut check = |name: &str, pass: bool, detail: String| {
        lines.push(format!(
            "{name}: {} ({detail})",
            if pass { "PASS" } else { "FAIL" }
        ));
        ok &= pass;
    };

    // closure relation
    let phi = TestFunction::bump(1.0, 0.4, 30)?;
    let d = ws_core::wsint::ws_distribution(c64(0.5, 0.0), c64(0.5, 0.0), c64(1.0, 0.0), cfg)?
        .dist
        .unwrap();
    let v = pair(&d.realize(), &phi, 1e-11)?;
    let err = (v - c64(phi.value(1.0), 0.0)).norm();
    check("closure relation", err < 1e-8, format!("err {err:.2e}"));

    // pointwise value vs oracle
    let f = ws_core::wsint::ws_function(c64(0.0, 0.0), c64(0.0, 0.0), c64(-0.5, 0.0), 2.0, cfg)?;
    let (q, _) = quad_ws(0.0, 0.0, -0.5, 2.0, OscKind::Jj, &ctx.quad_cfg)?;
    let err = (f.value - q).norm() / q.norm();
    check("function vs oracle", err < 1e-8, format!("rel err {err:.2e}"));

    // elementary K·J value
    let z = 1.5;
    let kj = ws_core::wsint::kj_integral(c64(0.5, 0.0), c64(0.5, 0.0), c64(0.0, 0.0), c64(z, 0.0), cfg)?;
    let exact = (1.0f64 / z).atan() / z.sqrt();
    let err = (kj.value - c64(exact, 0.0)).norm();
    check("K.J elementary value", err < 1e-12, format!("err {err:.2e}"));

    // projection-kernel symmetry
    let spec = KernelSpec {
        mu: 0.5,
        nu: 0.5,
        gamma: c64(0.0, 0.0),
        window: (0.3, 2.0),
        sign: Side::Plus,
        allow_outside_hypothesis: false,
    };
    let k1 = projection_kernel(&spec, 1.3, 0.7)?.value;
    let k2 = projection_kernel(&spec, 0.7, 1.3)?.value;
    let err = (k1 - k2).norm();
    check("projection symmetry", err < 1e-12, format!("err {err:.2e}"));

    // serialization round trip
    let text = serde_json::to_string(&d).unwrap();
    let d2: WSDist = serde_json::from_str(&text).unwrap();
    let v2 = pair(&d2.realize(), &phi, 1e-11)?;
    let err = (v - v2).norm();
    check("serialization round trip", err < 1e-12, format!("err {err:.2e}"));

    emit(ctx, &lines.join("\n"))?;
    if !ok {
        return Err(Error::Domain("selftest failed".into()));
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<Ctx, (Option<Ctx>, Error)> {
    let ctx = build_ctx(cli).map_err(|e| (None, e))?;
    let r = match &cli.cmd {
        Cmd::Eval(a) => cmd_eval(&ctx, a),
        Cmd::Pair(a) => cmd_pair(&ctx, a),
        Cmd::Oracle(a) => cmd_oracle(&ctx, a),
        Cmd::Kernel(a) => cmd_kernel(&ctx, a),
        Cmd::Selftest => cmd_selftest(&ctx),
    };
    match r {
        Ok(()) => Ok(ctx),
        Err(e) => Err((Some(ctx), e)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(_) => ExitCode::SUCCESS,
        Err((ctx, e)) => {
            if let Error::Domain(msg) = &e {
                if msg.starts_with("check-discrepancy:") {
                    let _ = fail(ctx.as_ref(), e);
                    return ExitCode::from(5);
                }
            }
            fail(ctx.as_ref(), e)
        }
    }
}
