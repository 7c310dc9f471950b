//! Command-line front end.
//!
//! Exit codes: 0 success, 1 self-test failure, 2 structure constants violate
//! `d² = 0`, 3 unreadable input or bad arguments, 4 any other runtime error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::exterior::{analyze, make_coframe_algebra, ExteriorError, StructureConstantsDoc, StructureResiduals};
use crate::flow::{self, init_state, FlowError, FlowRow, Preset, Scheme};
use crate::heisenberg::{
    io::{read_field, AnyField},
    make_grid, paneitz_diagnostics, pluriharmonic_residual, testfields, ComplexField, FieldError, PaneitzDiagnostics,
    RealField,
};
use crate::numeric::observed_orders;
use crate::pointwise::{
    admissible_mu_interval, extremal_parameters, is_c0_negative, is_c0_positive, margin_verdict, pinching_margin,
    webster_scalar, MuInterval, Verdict,
};
use crate::report::{complex_pair, format_float, to_json};
use crate::selftest::{self, SelftestOptions};
use crate::soliton::{
    bianchi_residual, harnack_torsion, harnack_yamabe, q_curvature, residuals, soliton_integrals, suggested_mu,
    yamabe_integral_identity, IntegralReport, SolitonData, SolitonKind, SpaceForm, YamabeIdentityReport,
};

#[derive(Debug, Parser)]
#[command(
    name = "crgeom",
    version,
    about = "Pseudohermitian invariants, positivity tests and curvature flows on CR 3-manifolds"
)]
pub struct Cli {
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for randomly generated fields and the self-test.
    #[arg(long, global = true, default_value_t = selftest::DEFAULT_SEED)]
    pub seed: u64,
    /// Indentation width for JSON output; 0 prints a single line.
    #[arg(long = "json-indent", global = true, default_value_t = 2)]
    pub json_indent: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Curvature, torsion and positivity data of a left-invariant coframe.
    Classify {
        /// JSON file with the coefficients of dθ¹.
        file: PathBuf,
    },
    /// C₀-positivity verdict at a point.
    Positivity {
        #[arg(long = "W", allow_negative_numbers = true)]
        w: f64,
        /// Torsion as `re,im`.
        #[arg(long = "A11", value_parser = parse_complex, allow_hyphen_values = true)]
        a11: Complex64,
        #[arg(long = "C0", allow_negative_numbers = true)]
        c0: f64,
    },
    /// Scalar curvature of the Webster metric, or the admissible λ² interval.
    Webster {
        #[arg(long = "W", allow_negative_numbers = true)]
        w: f64,
        #[arg(long = "absA")]
        abs_a: f64,
        #[arg(long, allow_negative_numbers = true)]
        lambda: Option<f64>,
    },
    /// Self-adjointness and integration-by-parts diagnostics of P₀.
    Paneitz {
        /// Grid sizes; several values give a refinement ladder.
        #[arg(long = "N", value_delimiter = ',', default_value = "8")]
        n: Vec<usize>,
        #[arg(long, visible_alias = "input")]
        phi: Option<PathBuf>,
        #[arg(long)]
        psi: Option<PathBuf>,
        #[arg(long = "A")]
        a: Option<PathBuf>,
    },
    /// Integrate the curvature-torsion system and write a CSV time series.
    Flow {
        #[arg(long = "N", default_value_t = 8)]
        n: usize,
        #[arg(long = "t-end")]
        t_end: f64,
        #[arg(long = "C0", default_value_t = 0.5)]
        c0: f64,
        #[arg(long, value_enum, default_value_t = FlowModeArg::Pe)]
        mode: FlowModeArg,
        /// Preset (`homogeneous:W0,a0` or `pinched-demo`) or field file.
        #[arg(long = "W-init", default_value = "pinched-demo")]
        w_init: String,
        #[arg(long = "a-init", default_value = "pinched-demo")]
        a_init: String,
        /// Q-curvature field file (generic mode).
        #[arg(long = "Q")]
        q: Option<PathBuf>,
        /// Torsion source field file (generic mode).
        #[arg(long = "H")]
        h: Option<PathBuf>,
        #[arg(long)]
        dt: Option<f64>,
        #[arg(long, value_enum, default_value_t = SchemeArg::Heun)]
        scheme: SchemeArg,
        #[arg(long = "record-every", default_value_t = 1)]
        record_every: usize,
    },
    /// Soliton residuals, Harnack quantities and integral identities.
    Soliton {
        #[arg(long = "N", default_value_t = 8)]
        n: usize,
        #[arg(long, value_enum, default_value_t = KindArg::Torsion)]
        kind: KindArg,
        #[arg(long, allow_negative_numbers = true)]
        mu: Option<f64>,
        #[arg(long, value_enum)]
        preset: Option<SpaceFormArg>,
        #[arg(long)]
        f: Option<PathBuf>,
        #[arg(long = "W")]
        w: Option<PathBuf>,
        #[arg(long = "A")]
        a: Option<PathBuf>,
    },
    /// Run the randomized invariant suite.
    Selftest {
        /// Print the report as JSON instead of a table.
        #[arg(long)]
        json: bool,
        /// Make the named check fail (exercises the failure path).
        #[arg(long, hide = true)]
        tamper: Option<String>,
    },
    /// Derived plotting columns from a flow CSV.
    Plotdata { csv: PathBuf },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FlowModeArg {
    Pe,
    Generic,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SchemeArg {
    Heun,
    Euler,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum KindArg {
    Yamabe,
    Torsion,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SpaceFormArg {
    Sphere,
    Heisenberg,
    Lorentz,
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let (re, im) = s.split_once(',').ok_or_else(|| format!("expected `re,im`, got '{s}'"))?;
    let re = re.trim().parse::<f64>().map_err(|e| e.to_string())?;
    let im = im.trim().parse::<f64>().map_err(|e| e.to_string())?;
    Ok(Complex64::new(re, im))
}

#[derive(Debug)]
pub enum CliError {
    Jacobi(String),
    Input(String),
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Jacobi(_) => 2,
            CliError::Input(_) => 3,
            CliError::Runtime(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Jacobi(m) | CliError::Input(m) | CliError::Runtime(m) => m,
        }
    }
}

impl From<FieldError> for CliError {
    fn from(e: FieldError) -> Self {
        match e {
            FieldError::Io(_)
            | FieldError::Format(_)
            | FieldError::BadSize(_)
            | FieldError::LengthMismatch { .. }
            | FieldError::GridMismatch { .. } => CliError::Input(e.to_string()),
            _ => CliError::Runtime(e.to_string()),
        }
    }
}

impl From<ExteriorError> for CliError {
    fn from(e: ExteriorError) -> Self {
        match e {
            ExteriorError::JacobiViolation { .. } => CliError::Jacobi(e.to_string()),
            _ => CliError::Runtime(e.to_string()),
        }
    }
}

impl From<FlowError> for CliError {
    fn from(e: FlowError) -> Self {
        match e {
            FlowError::Field(f) => f.into(),
            FlowError::NegativeTorsionNorm { .. } | FlowError::CflViolation { .. } | FlowError::InvalidInput(_) => {
                CliError::Input(e.to_string())
            }
            _ => CliError::Runtime(e.to_string()),
        }
    }
}

/// Text to emit and the exit status.
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: 0 }
    }
}

fn json<T: Serialize>(cli: &Cli, value: &T) -> Result<String, CliError> {
    let indent = (cli.json_indent > 0).then_some(cli.json_indent);
    let mut s = to_json(value, indent).map_err(|e| CliError::Runtime(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Classify { file } => classify(cli, file).map(Outcome::ok),
        Command::Positivity { w, a11, c0 } => positivity(cli, *w, *a11, *c0).map(Outcome::ok),
        Command::Webster { w, abs_a, lambda } => webster(cli, *w, *abs_a, *lambda).map(Outcome::ok),
        Command::Paneitz { n, phi, psi, a } => {
            paneitz(cli, n, phi.as_deref(), psi.as_deref(), a.as_deref()).map(Outcome::ok)
        }
        Command::Flow { .. } => flow_command(cli).map(Outcome::ok),
        Command::Soliton { .. } => soliton_command(cli).map(Outcome::ok),
        Command::Selftest { json: as_json, tamper } => {
            let report = selftest::run(&SelftestOptions { seed: cli.seed, tamper: tamper.clone() });
            let text = if *as_json { json(cli, &report)? } else { report.table() };
            Ok(Outcome { text, code: if report.passed { 0 } else { 1 } })
        }
        Command::Plotdata { csv } => plotdata(csv).map(Outcome::ok),
    }
}

/// Parses arguments, runs, writes output and returns the process exit code.
pub fn main_entry<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 3 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(outcome) => {
            let written = match &cli.out {
                Some(path) => fs::write(path, &outcome.text),
                None => std::io::stdout().write_all(outcome.text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return 4;
            }
            outcome.code
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.exit_code()
        }
    }
}

#[derive(Serialize)]
struct MarginEntry {
    #[serde(rename = "C0")]
    c0: f64,
    margin: f64,
    verdict: Verdict,
    c0_positive: bool,
    c0_negative: bool,
}

#[derive(Serialize)]
struct WebsterSummary {
    mu_interval: Option<MuInterval>,
    lambda: Option<f64>,
}

#[derive(Serialize)]
struct ClassifyReport {
    #[serde(rename = "W")]
    w: f64,
    #[serde(rename = "A11", serialize_with = "complex_pair")]
    a11: Complex64,
    #[serde(rename = "absA")]
    abs_a: f64,
    residuals: StructureResiduals,
    margins: Vec<MarginEntry>,
    webster: WebsterSummary,
    model_case: Option<&'static str>,
}

const MODEL_TOL: f64 = 1e-12;

fn model_case(w: f64, abs_a: f64) -> Option<&'static str> {
    if abs_a > MODEL_TOL {
        return None;
    }
    [(1.0, "W=1 spherical model"), (0.0, "W=0 Heisenberg model"), (-1.0, "W=-1 Lorentz model")]
        .into_iter()
        .find(|(k, _)| (w - k).abs() <= MODEL_TOL)
        .map(|(_, name)| name)
}

fn classify(cli: &Cli, file: &Path) -> Result<String, CliError> {
    let text = fs::read_to_string(file).map_err(|e| CliError::Input(format!("{}: {e}", file.display())))?;
    let doc: StructureConstantsDoc =
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", file.display())))?;
    let alg = make_coframe_algebra(doc.constants())?;
    let (_, point, residuals) = analyze(&alg)?;
    // roundoff-level torsion and curvature count as zero for the model match and the λ search
    let abs_a = point.a11.norm();
    let snapped_a = if abs_a <= MODEL_TOL { 0.0 } else { abs_a };
    let snapped_w = if point.w.abs() <= MODEL_TOL { 0.0 } else { point.w };
    let margins = [0.5, 1.0]
        .into_iter()
        .map(|c0| {
            let margin = pinching_margin(point.w, point.a11, c0);
            MarginEntry {
                c0,
                margin,
                verdict: margin_verdict(margin),
                c0_positive: is_c0_positive(point.w, point.a11, c0),
                c0_negative: is_c0_negative(point.w, point.a11, c0),
            }
        })
        .collect();
    let interval = admissible_mu_interval(snapped_w, snapped_a);
    json(
        cli,
        &ClassifyReport {
            w: point.w,
            a11: point.a11,
            abs_a,
            residuals,
            margins,
            webster: WebsterSummary { mu_interval: interval, lambda: interval.map(|i| i.representative_lambda()) },
            model_case: model_case(point.w, abs_a),
        },
    )
}

#[derive(Serialize)]
struct PositivityReport {
    margin: f64,
    verdict: Verdict,
    c0_positive: bool,
    c0_negative: bool,
    s0: Option<f64>,
    s1: Option<f64>,
    fmax: f64,
    fmin: f64,
    extremum_attained: bool,
}

fn positivity(cli: &Cli, w: f64, a11: Complex64, c0: f64) -> Result<String, CliError> {
    if !(c0 >= 0.0) {
        return Err(CliError::Input(format!("C0 must be non-negative, got {c0}")));
    }
    let e = extremal_parameters(a11);
    let margin = pinching_margin(w, a11, c0);
    json(
        cli,
        &PositivityReport {
            margin,
            verdict: margin_verdict(margin),
            c0_positive: is_c0_positive(w, a11, c0),
            c0_negative: is_c0_negative(w, a11, c0),
            s0: e.s0,
            s1: e.s1,
            fmax: e.fmax,
            fmin: e.fmin,
            extremum_attained: e.attained,
        },
    )
}

#[derive(Serialize)]
#[serde(untagged)]
enum WebsterReport {
    Scalar { lambda: f64, scalar: f64, positive: bool },
    Interval { mu_interval: Option<MuInterval>, lambda: Option<f64> },
}

fn webster(cli: &Cli, w: f64, abs_a: f64, lambda: Option<f64>) -> Result<String, CliError> {
    if !(abs_a >= 0.0) {
        return Err(CliError::Input(format!("absA must be non-negative, got {abs_a}")));
    }
    let report = match lambda {
        Some(l) => {
            let scalar = webster_scalar(l, w, abs_a).map_err(|e| CliError::Input(e.to_string()))?;
            WebsterReport::Scalar { lambda: l, scalar, positive: scalar > 0.0 }
        }
        None => {
            let interval = admissible_mu_interval(w, abs_a);
            WebsterReport::Interval { mu_interval: interval, lambda: interval.map(|i| i.representative_lambda()) }
        }
    };
    json(cli, &report)
}

#[derive(Serialize)]
struct PaneitzLevel {
    #[serde(flatten)]
    diagnostics: PaneitzDiagnostics,
    pluriharmonic_residual: f64,
}

#[derive(Serialize)]
struct PaneitzReport {
    levels: Vec<PaneitzLevel>,
    self_adjoint_orders: Vec<f64>,
    ibp_orders: Vec<f64>,
}

fn load(path: &Path) -> Result<AnyField, CliError> {
    read_field(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn paneitz(
    cli: &Cli,
    sizes: &[usize],
    phi: Option<&Path>,
    psi: Option<&Path>,
    a: Option<&Path>,
) -> Result<String, CliError> {
    let from_files = phi.is_some() || psi.is_some() || a.is_some();
    if from_files && sizes.len() > 1 {
        return Err(CliError::Input("a refinement ladder needs generated fields, not files".into()));
    }
    let mut levels = Vec::new();
    for &n in sizes {
        let grid = make_grid(n)?;
        let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
        let phi_f = match phi {
            Some(p) => load(p)?.into_real()?,
            None => testfields::random_smooth_real(&grid, &mut rng, 1.0),
        };
        let psi_f = match psi {
            Some(p) => load(p)?.into_real()?,
            None => testfields::random_smooth_real(phi_f.grid(), &mut rng, 1.0),
        };
        let a_f = match a {
            Some(p) => load(p)?.into_complex(),
            None => testfields::random_smooth_complex(phi_f.grid(), &mut rng, 0.5),
        };
        let diagnostics = paneitz_diagnostics(&phi_f, &psi_f, &a_f)?;
        levels.push(PaneitzLevel { diagnostics, pluriharmonic_residual: pluriharmonic_residual(&phi_f) });
    }
    let sa: Vec<f64> = levels.iter().map(|l| l.diagnostics.self_adjoint_rel_err).collect();
    let id: Vec<f64> = levels.iter().map(|l| l.diagnostics.ibp_rel_err).collect();
    json(cli, &PaneitzReport { self_adjoint_orders: observed_orders(&sa), ibp_orders: observed_orders(&id), levels })
}

fn initial_field(spec: &str, n: usize, which: char) -> Result<RealField, CliError> {
    let grid = make_grid(n)?;
    if let Ok(preset) = spec.parse::<Preset>() {
        return Ok(if which == 'W' { preset.w(&grid) } else { preset.a(&grid) });
    }
    let field = load(Path::new(spec))?.into_real()?;
    if field.grid().n() != n {
        return Err(CliError::Input(format!("{spec}: grid size {} does not match --N {n}", field.grid().n())));
    }
    Ok(field)
}

pub fn flow_csv(rows: &[FlowRow]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| CliError::Runtime(e.to_string());
    w.write_record(["t", "minW", "maxW", "maxA", "margin", "meanW", "blowup_flag"]).map_err(err)?;
    for r in rows {
        let nums = [r.t, r.min_w, r.max_w, r.max_a, r.margin, r.mean_w].map(format_float);
        let mut rec: Vec<String> = nums.to_vec();
        rec.push(r.blowup_flag.to_string());
        w.write_record(&rec).map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Runtime(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Runtime(e.to_string()))
}

fn flow_command(cli: &Cli) -> Result<String, CliError> {
    let Command::Flow { n, t_end, c0, mode, w_init, a_init, q, h, dt, scheme, record_every } = &cli.command else {
        unreachable!("dispatched on Flow");
    };
    let w = initial_field(w_init, *n, 'W')?;
    let a = initial_field(a_init, *n, 'a')?;
    let mut state = init_state(w, a, *c0, *dt)?;
    if let FlowModeArg::Generic = mode {
        let grid = state.grid().clone();
        let source = |p: &Option<PathBuf>| -> Result<RealField, CliError> {
            match p {
                Some(path) => Ok(load(path)?.into_real()?),
                None => Ok(RealField::zeros(&grid)),
            }
        };
        state = state.with_sources(source(q)?, source(h)?)?;
    } else if q.is_some() || h.is_some() {
        return Err(CliError::Input("--Q and --H require --mode generic".into()));
    }
    let scheme = match scheme {
        SchemeArg::Heun => Scheme::Heun,
        SchemeArg::Euler => Scheme::Euler,
    };
    let out = flow::run(state, *t_end, *record_every, scheme)?;
    flow_csv(&out.rows)
}

#[derive(Serialize)]
struct SolitonReport {
    kind: SolitonKind,
    mu: f64,
    suggested_mu: f64,
    #[serde(flatten)]
    integrals: IntegralReport,
    r1_sup: f64,
    r2_sup: f64,
    harnack_yamabe_sup: f64,
    harnack_torsion_sup: f64,
    harnack_q_form_sup: f64,
    harnack_forms_gap: f64,
    bianchi_residual_sup: f64,
    yamabe_identity: YamabeIdentityReport,
}

fn soliton_command(cli: &Cli) -> Result<String, CliError> {
    let Command::Soliton { n, kind, mu, preset, f, w, a } = &cli.command else {
        unreachable!("dispatched on Soliton");
    };
    let kind = match kind {
        KindArg::Yamabe => SolitonKind::Yamabe,
        KindArg::Torsion => SolitonKind::Torsion,
    };
    let grid = make_grid(*n)?;
    let checked = |p: &PathBuf| -> Result<AnyField, CliError> {
        let field = load(p)?;
        if field.n() != *n {
            return Err(CliError::Input(format!("{}: grid size {} does not match --N {n}", p.display(), field.n())));
        }
        Ok(field)
    };
    let base = match preset {
        Some(sf) => {
            let sf = match sf {
                SpaceFormArg::Sphere => SpaceForm::Sphere,
                SpaceFormArg::Heisenberg => SpaceForm::Heisenberg,
                SpaceFormArg::Lorentz => SpaceForm::Lorentz,
            };
            sf.data(&grid, 1.0)
        }
        None => {
            let mu = mu.unwrap_or(0.0);
            SolitonData::new(RealField::zeros(&grid), mu, RealField::constant(&grid, mu), ComplexField::zeros(&grid))?
        }
    };
    let sd = SolitonData::new(
        match f {
            Some(p) => checked(p)?.into_real()?,
            None => base.f,
        },
        mu.unwrap_or(base.mu),
        match w {
            Some(p) => checked(p)?.into_real()?,
            None => base.w,
        },
        match a {
            Some(p) => checked(p)?.into_complex(),
            None => base.a11,
        },
    )?;

    let (r1, r2) = residuals(&sd, kind);
    let q = q_curvature(&sd.w, &sd.a11)?;
    let (div_form, q_form) = harnack_torsion(&sd, &q)?;
    let report = SolitonReport {
        kind,
        mu: sd.mu,
        suggested_mu: suggested_mu(&sd),
        integrals: soliton_integrals(&sd, kind)?,
        r1_sup: r1.sup_norm(),
        r2_sup: r2.sup_norm(),
        harnack_yamabe_sup: harnack_yamabe(&sd)?.sup_norm(),
        harnack_torsion_sup: div_form.sup_norm(),
        harnack_q_form_sup: q_form.sup_norm(),
        harnack_forms_gap: (&div_form - &q_form).sup_norm(),
        bianchi_residual_sup: bianchi_residual(&sd.w, &sd.a11)?.sup_norm(),
        yamabe_identity: yamabe_integral_identity(&sd, None)?,
    };
    json(cli, &report)
}

#[derive(Debug, serde::Deserialize)]
struct CsvRow {
    t: f64,
    #[serde(rename = "minW")]
    min_w: f64,
    #[serde(rename = "maxW")]
    max_w: f64,
    #[serde(rename = "maxA")]
    _max_a: f64,
    margin: f64,
    #[serde(rename = "meanW")]
    _mean_w: f64,
    blowup_flag: u8,
}

/// `t, margin/margin(0), ln max|W|, blowup_flag`.
pub fn plotdata_from_str(text: &str) -> Result<String, CliError> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let rows: Vec<CsvRow> = reader
        .deserialize()
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Input(format!("malformed flow CSV: {e}")))?;
    let first = rows.first().ok_or_else(|| CliError::Input("flow CSV has no data rows".into()))?;
    let margin0 = first.margin;
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| CliError::Runtime(e.to_string());
    w.write_record(["t", "margin_normalized", "log_max_abs_W", "blowup_flag"]).map_err(err)?;
    for r in &rows {
        let max_abs = r.min_w.abs().max(r.max_w.abs());
        let normalized = if margin0 != 0.0 { format_float(r.margin / margin0) } else { "nan".into() };
        w.write_record([format_float(r.t), normalized, format_float(max_abs.ln()), r.blowup_flag.to_string()])
            .map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Runtime(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Runtime(e.to_string()))
}

fn plotdata(path: &Path) -> Result<String, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    plotdata_from_str(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_argument() {
        assert_eq!(parse_complex("1,-0.5").unwrap(), Complex64::new(1.0, -0.5));
        assert!(parse_complex("1").is_err());
    }

    #[test]
    fn model_cases() {
        assert_eq!(model_case(1.0, 0.0), Some("W=1 spherical model"));
        assert_eq!(model_case(0.0, 0.0), Some("W=0 Heisenberg model"));
        assert_eq!(model_case(-1.0, 0.0), Some("W=-1 Lorentz model"));
        assert_eq!(model_case(0.0, 0.3), None);
        assert_eq!(model_case(0.5, 0.0), None);
    }

    #[test]
    fn plotdata_rejects_empty_and_malformed() {
        assert_eq!(plotdata_from_str("").unwrap_err().exit_code(), 3);
        assert_eq!(plotdata_from_str("t,minW,maxW,maxA,margin,meanW,blowup_flag\n").unwrap_err().exit_code(), 3);
        assert_eq!(plotdata_from_str("t,minW\n1,x\n").unwrap_err().exit_code(), 3);
    }
}
