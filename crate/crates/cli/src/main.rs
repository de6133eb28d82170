use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use twoarc::algebra::{fmt_f64, Field, GaussRat, Mode, Poly, Scalar};
use twoarc::preimage::{emit_csv, emit_svg, order_into_arcs, sample_preimage, tracks_as_arcs};
use twoarc::tuples::{
    endpoint_polynomial, exact_roots, extremal_polynomials, numeric_roots, small_degree_oracle, solve_fourth_endpoint,
    solve_tuple, CandidateReport, Classification, EndpointTuple, ModePoly, PartialTuple, TupleError, TupleReport,
    TupleSolutionReport,
};
use twoarc::zolotarev::{zolotarev, ZolotarevError, ZolotarevReport};

#[derive(Parser, Debug)]
#[command(name = "twoarc", version, about = "Polynomials whose inverse image of [-1, 1] is two arcs")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Arithmetic: exact (Gaussian rationals), approx (complex floats) or auto.
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Auto)]
    mode: ModeArg,
    /// Validation tolerance (default 1e-9 for tuples and preimages, 1e-10 for Zolotarev).
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true, default_value_t = 500)]
    max_iter: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output format (default json; csv for preimage).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Largest n for which auto mode picks exact arithmetic.
    #[arg(long, global = true, default_value_t = 12)]
    exact_cap: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum ModeArg {
    Exact,
    Approx,
    Auto,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SlotArg {
    A,
    B,
    C,
    D,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Candidates for the fourth endpoint given three.
    Endpoint {
        #[arg(long)]
        n: usize,
        /// Endpoints where T = -1.
        #[arg(long, allow_hyphen_values = true)]
        minus: Option<String>,
        /// Endpoints where T = +1.
        #[arg(long, allow_hyphen_values = true)]
        plus: Option<String>,
        /// Three known endpoints in slot order, skipping the unknown slot.
        #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["minus", "plus"])]
        points: Option<String>,
        /// Slot of the unknown endpoint when --points is used.
        #[arg(long, value_enum, default_value_t = SlotArg::D)]
        unknown: SlotArg,
    },
    /// Extremal points x_j (T = 1) and y_j (T = -1) of a tuple.
    Extremal {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        points: String,
    },
    /// T_n and U_{n-2} for a tuple, verified by the Pell equation.
    Build {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        points: String,
    },
    /// Zolotarev polynomial with z^{n-1} coefficient -n*sigma.
    Zolotarev {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        sigma: f64,
    },
    /// Sample T^{-1}([-1, 1]) and emit CSV or SVG.
    Preimage {
        /// Coefficients c0,c1,...,cn (ascending).
        #[arg(long, allow_hyphen_values = true, conflicts_with = "poly_file")]
        coeffs: Option<String>,
        /// JSON file: a coefficient array, or `build` output.
        #[arg(long)]
        poly_file: Option<PathBuf>,
        /// Build T from a tuple instead.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        points: Option<String>,
        #[arg(long, default_value_t = 200)]
        grid: usize,
        #[arg(long, default_value_t = 800)]
        width: u32,
        #[arg(long, default_value_t = 600)]
        height: u32,
    },
    /// The hand-derived endpoint equation (n = 2, 3, 4) at four points.
    Oracle {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        points: String,
    },
}

#[derive(Debug)]
enum CliError {
    Parse(String),
    NoSolution(String),
    Validation(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::NoSolution(_) => 2,
            CliError::Validation(_) => 3,
            CliError::Parse(_) => 4,
            CliError::Io(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Parse(m) | CliError::NoSolution(m) | CliError::Validation(m) | CliError::Io(m) => m,
        }
    }
}

fn validation(e: impl std::fmt::Display) -> CliError {
    CliError::Validation(e.to_string())
}

#[derive(Serialize, Debug)]
struct RunConfig {
    command: &'static str,
    mode_requested: ModeArg,
    mode: Mode,
    tol: String,
    max_iter: usize,
    seed: u64,
    output: Format,
    out: Option<String>,
    exact_cap: usize,
}

/// What a command produced; `status` carries a failure to report after the
/// output has been written.
struct Output {
    body: String,
    status: Result<(), CliError>,
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    config: &'a RunConfig,
    result: T,
}

fn to_json<T: Serialize>(config: &RunConfig, result: T) -> String {
    let mut s = serde_json::to_string_pretty(&Envelope { config, result }).expect("serializable");
    s.push('\n');
    s
}

fn parse_points(src: &str, expected: Option<usize>) -> Result<Vec<Scalar>, CliError> {
    let pts: Vec<Scalar> = src
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<Scalar>().map_err(|e| CliError::Parse(e.to_string())))
        .collect::<Result<_, _>>()?;
    if let Some(k) = expected {
        if pts.len() != k {
            return Err(CliError::Parse(format!("expected {k} points, got {}", pts.len())));
        }
    }
    Ok(pts)
}

struct Ctx {
    common: Common,
    command: &'static str,
}

impl Ctx {
    fn resolve_mode(&self, n: usize, inputs: &[Scalar]) -> Result<Mode, CliError> {
        let all_exact = inputs.iter().all(|s| s.mode() == Mode::Exact);
        match self.common.mode {
            ModeArg::Exact if !all_exact => Err(CliError::Parse("exact mode needs rational inputs".into())),
            ModeArg::Exact => Ok(Mode::Exact),
            ModeArg::Approx => Ok(Mode::Approx),
            ModeArg::Auto if all_exact && n <= self.common.exact_cap => Ok(Mode::Exact),
            ModeArg::Auto => Ok(Mode::Approx),
        }
    }

    fn config(&self, mode: Mode, default_tol: f64, default_format: Format) -> RunConfig {
        RunConfig {
            command: self.command,
            mode_requested: self.common.mode,
            mode,
            tol: fmt_f64(self.common.tol.unwrap_or(default_tol)),
            max_iter: self.common.max_iter,
            seed: self.common.seed,
            output: self.common.format.unwrap_or(default_format),
            out: self.common.out.as_ref().map(|p| p.display().to_string()),
            exact_cap: self.common.exact_cap,
        }
    }

    fn tol(&self, default: f64) -> f64 {
        self.common.tol.unwrap_or(default)
    }

    fn json_only(&self) -> Result<(), CliError> {
        match self.common.format {
            None | Some(Format::Json) => Ok(()),
            Some(f) => Err(CliError::Parse(format!("{} supports only json output, not {f:?}", self.command))),
        }
    }
}

fn convert(points: &[Scalar], mode: Mode) -> Vec<Scalar> {
    points
        .iter()
        .map(|s| match mode {
            Mode::Exact => s.clone(),
            Mode::Approx => Scalar::Approx(s.to_c64()),
        })
        .collect()
}

fn four(points: Vec<Scalar>) -> [Scalar; 4] {
    points.try_into().expect("four points")
}

#[derive(Serialize)]
struct EndpointResult {
    n: usize,
    unknown: String,
    polynomial: Vec<String>,
    candidates: Vec<CandidateReport>,
}

fn cmd_endpoint(
    ctx: &Ctx,
    n: usize,
    minus: Option<&str>,
    plus: Option<&str>,
    points: Option<&str>,
    unknown: SlotArg,
) -> Result<Output, CliError> {
    ctx.json_only()?;
    let pt = match points {
        Some(p) => {
            let pts = parse_points(p, Some(3))?;
            let mode = ctx.resolve_mode(n, &pts)?;
            let mut it = convert(&pts, mode).into_iter();
            let slot = unknown as usize;
            let known = [0, 1, 2, 3].map(|i| if i == slot { None } else { it.next() });
            (PartialTuple::new(n, known).map_err(|e| CliError::Parse(e.to_string()))?, mode)
        }
        None => {
            let m = minus.map(|s| parse_points(s, None)).transpose()?.unwrap_or_default();
            let p = plus.map(|s| parse_points(s, None)).transpose()?.unwrap_or_default();
            let all: Vec<Scalar> = m.iter().chain(&p).cloned().collect();
            let mode = ctx.resolve_mode(n, &all)?;
            let pt = PartialTuple::from_roles(n, &convert(&m, mode), &convert(&p, mode))
                .map_err(|e| CliError::Parse(e.to_string()))?;
            (pt, mode)
        }
    };
    let (pt, mode) = pt;
    let config = ctx.config(mode, 1e-9, Format::Json);
    let tol = ctx.tol(1e-9);
    let poly = endpoint_polynomial(&pt).map_err(validation)?;
    let candidates = solve_fourth_endpoint(&pt, tol).map_err(validation)?;
    let any_proper = candidates.iter().any(|c| c.classification == Classification::Proper);
    let result = EndpointResult {
        n,
        unknown: pt.unknown().label().to_string(),
        polynomial: poly.coeff_strings(),
        candidates: candidates.iter().map(CandidateReport::from).collect(),
    };
    let status = if any_proper { Ok(()) } else { Err(CliError::NoSolution("no proper candidate".into())) };
    Ok(Output { body: to_json(&config, result), status })
}

#[derive(Serialize)]
struct ExtremalResult {
    n: usize,
    tuple: TupleReport,
    #[serde(rename = "X")]
    x: Vec<String>,
    #[serde(rename = "Y")]
    y: Vec<String>,
    xs: Vec<String>,
    ys: Vec<String>,
}

fn root_strings(p: &ModePoly) -> Vec<String> {
    let roots: Vec<Scalar> = match p {
        _ if p.degree().unwrap_or(0) == 0 => Vec::new(),
        ModePoly::Exact(q) => exact_roots(q),
        ModePoly::Approx(q) => numeric_roots(q)
            .into_iter()
            .flat_map(|(z, k)| std::iter::repeat(Scalar::Approx(z)).take(k))
            .collect(),
    };
    roots.iter().map(|s| s.to_string()).collect()
}

fn extremal_mode(n: usize, points: &[Scalar; 4], mode: Mode) -> Result<(ModePoly, ModePoly), TupleError> {
    match mode {
        Mode::Exact => {
            let e: Vec<GaussRat> = points.iter().map(GaussRat::from_scalar).collect::<Result<_, _>>()?;
            let (x, y) = extremal_polynomials(n, &four_k(e))?;
            Ok((ModePoly::from_poly(&x), ModePoly::from_poly(&y)))
        }
        Mode::Approx => {
            let e: Vec<Complex64> = points.iter().map(|s| s.to_c64()).collect();
            let (x, y) = extremal_polynomials(n, &four_k(e))?;
            Ok((ModePoly::from_poly(&x), ModePoly::from_poly(&y)))
        }
    }
}

fn four_k<K>(v: Vec<K>) -> [K; 4] {
    match v.try_into() {
        Ok(a) => a,
        Err(_) => unreachable!("four points"),
    }
}

fn cmd_extremal(ctx: &Ctx, n: usize, points: &str) -> Result<Output, CliError> {
    ctx.json_only()?;
    let pts = parse_points(points, Some(4))?;
    let mode = ctx.resolve_mode(n, &pts)?;
    let pts = four(convert(&pts, mode));
    let config = ctx.config(mode, 1e-9, Format::Json);
    let (x, y) = extremal_mode(n, &pts, mode).map_err(validation)?;
    let result = ExtremalResult {
        n,
        tuple: TupleReport::from(&EndpointTuple::for_degree(n, pts.clone())),
        xs: root_strings(&x),
        ys: root_strings(&y),
        x: x.coeff_strings(),
        y: y.coeff_strings(),
    };
    Ok(Output { body: to_json(&config, result), status: Ok(()) })
}

fn cmd_build(ctx: &Ctx, n: usize, points: &str) -> Result<Output, CliError> {
    ctx.json_only()?;
    let pts = parse_points(points, Some(4))?;
    let mode = ctx.resolve_mode(n, &pts)?;
    let pts = four(convert(&pts, mode));
    let config = ctx.config(mode, 1e-9, Format::Json);
    let sol = solve_tuple(n, &pts, ctx.tol(1e-9)).map_err(validation)?;
    Ok(Output { body: to_json(&config, TupleSolutionReport::from(&sol)), status: Ok(()) })
}

fn cmd_zolotarev(ctx: &Ctx, n: usize, sigma: f64) -> Result<Output, CliError> {
    ctx.json_only()?;
    if ctx.common.mode == ModeArg::Exact {
        return Err(CliError::Parse("zolotarev runs in approx mode only".into()));
    }
    let config = ctx.config(Mode::Approx, 1e-10, Format::Json);
    let tol = ctx.tol(1e-10);
    let sol = zolotarev(n, sigma, tol, ctx.common.max_iter.min(200)).map_err(|e| match e {
        ZolotarevError::ChebyshevRegime { .. } | ZolotarevError::NoSignChange { .. } => CliError::NoSolution(e.to_string()),
        ZolotarevError::UnsupportedDegree(_) => CliError::Parse(e.to_string()),
        other => validation(other),
    })?;
    let status = if sol.equioscillation.ok && sol.pell_residual_norm <= 1e-8 {
        Ok(())
    } else {
        Err(CliError::Validation(format!("equioscillation {:?}, Pell residual {:e}", sol.equioscillation, sol.pell_residual_norm)))
    };
    Ok(Output { body: to_json(&config, ZolotarevReport::from(&sol)), status })
}

/// Coefficients from a JSON array of strings or numbers, or from the `T`
/// field of `build` output.
fn coeffs_from_json(v: &serde_json::Value) -> Result<Vec<Scalar>, CliError> {
    let arr = match v {
        serde_json::Value::Array(a) => a,
        serde_json::Value::Object(o) => {
            let inner = o.get("result").unwrap_or(v);
            return match inner.get("T").or_else(|| inner.get("Z")) {
                Some(t) => coeffs_from_json(t),
                None => Err(CliError::Parse("no coefficient array (`T`) in file".into())),
            };
        }
        _ => return Err(CliError::Parse("expected a JSON array of coefficients".into())),
    };
    arr.iter()
        .map(|c| match c {
            serde_json::Value::String(s) => s.parse::<Scalar>().map_err(|e| CliError::Parse(e.to_string())),
            serde_json::Value::Number(x) => Ok(Scalar::Approx(Complex64::new(x.as_f64().unwrap_or(f64::NAN), 0.0))),
            _ => Err(CliError::Parse("coefficients must be strings or numbers".into())),
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn cmd_preimage(
    ctx: &Ctx,
    coeffs: Option<&str>,
    poly_file: Option<&PathBuf>,
    n: Option<usize>,
    points: Option<&str>,
    grid: usize,
    width: u32,
    height: u32,
) -> Result<Output, CliError> {
    let format = ctx.common.format.unwrap_or(Format::Csv);
    let (t, mode) = match (coeffs, poly_file, n, points) {
        (Some(c), None, None, None) => {
            let c = parse_points(c, None)?;
            (Poly::new(c.iter().map(|s| s.to_c64()).collect()), Mode::Approx)
        }
        (None, Some(path), None, None) => {
            let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| CliError::Parse(e.to_string()))?;
            let c = coeffs_from_json(&v)?;
            (Poly::new(c.iter().map(|s| s.to_c64()).collect()), Mode::Approx)
        }
        (None, None, Some(n), Some(p)) => {
            let pts = parse_points(p, Some(4))?;
            let mode = ctx.resolve_mode(n, &pts)?;
            let sol = solve_tuple(n, &four(convert(&pts, mode)), ctx.tol(1e-9)).map_err(validation)?;
            (sol.t.to_c64(), mode)
        }
        _ => return Err(CliError::Parse("give exactly one of --coeffs, --poly-file, or --n with --points".into())),
    };
    let config = ctx.config(mode, 1e-9, format);
    let tol = ctx.tol(1e-9);
    let samples =
        sample_preimage(&t, grid, ctx.common.max_iter, ctx.common.seed).map_err(|e| CliError::Parse(e.to_string()))?;
    let arcs = match order_into_arcs(&samples) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("warning: {e}; emitting raw root tracks");
            tracks_as_arcs(&samples)
        }
    };
    let worst = samples.iter().map(|s| s.residual).fold(0.0, |a: f64, b| if b.is_nan() { b } else { a.max(b) });
    let status = if worst <= tol {
        Ok(())
    } else {
        Err(CliError::Validation(format!("max |T(z) - t| = {worst:e} exceeds {tol:e}")))
    };
    let body = match format {
        Format::Csv => emit_csv(&samples, Some(&arcs)),
        Format::Svg => emit_svg(&arcs.arcs, width, height),
        Format::Json => {
            #[derive(Serialize)]
            struct Arcs {
                degree: usize,
                arcs: Vec<Vec<[String; 2]>>,
                max_residual: String,
            }
            let list = arcs
                .arcs
                .iter()
                .map(|a| a.points.iter().map(|z| [fmt_f64(z.re), fmt_f64(z.im)]).collect())
                .collect();
            return Ok(Output {
                body: to_json(&config, Arcs { degree: t.degree().unwrap_or(0), arcs: list, max_residual: fmt_f64(worst) }),
                status,
            });
        }
    };
    eprintln!("{}", serde_json::to_string(&config).expect("serializable"));
    Ok(Output { body, status })
}

#[derive(Serialize)]
struct OracleResult {
    n: usize,
    tuple: TupleReport,
    value: String,
    vanishes: bool,
}

fn cmd_oracle(ctx: &Ctx, n: usize, points: &str) -> Result<Output, CliError> {
    ctx.json_only()?;
    if !(2..=4).contains(&n) {
        return Err(CliError::Parse(format!("oracle covers n = 2, 3, 4, not {n}")));
    }
    let pts = parse_points(points, Some(4))?;
    let mode = ctx.resolve_mode(n, &pts)?;
    let pts = four(convert(&pts, mode));
    let config = ctx.config(mode, 1e-9, Format::Json);
    let (value, vanishes) = match mode {
        Mode::Exact => {
            let e: Vec<GaussRat> = pts.iter().map(GaussRat::from_scalar).collect::<Result<_, _>>().map_err(validation)?;
            let v = small_degree_oracle(n, &four_k(e)).map_err(validation)?;
            let zero = twoarc::algebra::Ring::is_zero(&v);
            (Scalar::Exact(v), zero)
        }
        Mode::Approx => {
            let e: Vec<Complex64> = pts.iter().map(|s| s.to_c64()).collect();
            let scale = e.iter().map(|z| z.norm()).fold(1.0, f64::max).powi(n as i32 * n as i32 / 4);
            let v = small_degree_oracle(n, &four_k(e)).map_err(validation)?;
            (Scalar::Approx(v), v.norm() <= ctx.tol(1e-9) * scale)
        }
    };
    let result = OracleResult {
        n,
        tuple: TupleReport::from(&EndpointTuple::for_degree(n, pts.clone())),
        value: value.to_string(),
        vanishes,
    };
    Ok(Output { body: to_json(&config, result), status: Ok(()) })
}

fn run(cli: Cli) -> Result<Output, CliError> {
    if let Some(t) = cli.common.tol {
        if !(t > 0.0) {
            return Err(CliError::Parse("--tol must be positive".into()));
        }
    }
    let name = match &cli.command {
        Command::Endpoint { .. } => "endpoint",
        Command::Extremal { .. } => "extremal",
        Command::Build { .. } => "build",
        Command::Zolotarev { .. } => "zolotarev",
        Command::Preimage { .. } => "preimage",
        Command::Oracle { .. } => "oracle",
    };
    let ctx = Ctx { common: cli.common, command: name };
    match &cli.command {
        Command::Endpoint { n, minus, plus, points, unknown } => {
            cmd_endpoint(&ctx, *n, minus.as_deref(), plus.as_deref(), points.as_deref(), *unknown)
        }
        Command::Extremal { n, points } => cmd_extremal(&ctx, *n, points),
        Command::Build { n, points } => cmd_build(&ctx, *n, points),
        Command::Zolotarev { n, sigma } => cmd_zolotarev(&ctx, *n, *sigma),
        Command::Preimage { coeffs, poly_file, n, points, grid, width, height } => {
            cmd_preimage(&ctx, coeffs.as_deref(), poly_file.as_ref(), *n, points.as_deref(), *grid, *width, *height)
        }
        Command::Oracle { n, points } => cmd_oracle(&ctx, *n, points),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 4 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let out_path = cli.common.out.clone();
    let output = match run(cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {}", e.message());
            return ExitCode::from(e.code());
        }
    };
    let written = match &out_path {
        Some(p) => fs::write(p, &output.body).map_err(|e| format!("{}: {e}", p.display())),
        None => std::io::stdout().write_all(output.body.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    match output.status {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
