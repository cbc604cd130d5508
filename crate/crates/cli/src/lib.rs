//! Command line front end for `mahlerlab`.
//!
//! [`run`] parses arguments and writes to the given streams so that commands can be
//! exercised in-process; the binary is a thin wrapper around it.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mahlerlab::bodies::{bound_report, catalog_table, proven_bound, reference_body, REFERENCE_NAMES};
use mahlerlab::polarity::BoundReport;
use mahlerlab::search::{certify_local_min, minimize_product, InvariantFamily, SearchConfig, SearchResult};
use mahlerlab::sections::{check_lemma1, check_lemma2, classify_equality, planar_body, SectorPair};
use mahlerlab::signed_volume::{
    check_lemma4, check_lemma7, curve, curve_vector, group_bound_check, patch_cone_volume, GroupBoundCheck,
    SAMPLES_PER_ARC,
};
use mahlerlab::symmetry::{invariance_defect, rotation_z};
use mahlerlab::{ConvexBody3, Error, GroupKind, Vec3};
use serde::{Deserialize, Serialize};

/// Exit code for success.
pub const EXIT_OK: i32 = 0;
/// Exit code when a computed value falls below a proven bound or a check fails.
pub const EXIT_VIOLATION: i32 = 1;
/// Exit code for unreadable input or arguments.
pub const EXIT_INPUT: i32 = 2;

/// Relative tolerance for reproducing closed-form products.
pub const TABLE_TOL: f64 = 1e-8;
/// Slack allowed below a proven bound before a result counts as a violation.
pub const BOUND_SLACK: f64 = 1e-6;

#[derive(Debug, Parser)]
#[command(name = "mahlerlab", version, about = "Volume products of symmetric convex polytopes")]
pub struct Cli {
    /// Write the JSON report to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Recompute the table of proven bounds on their minimizers.
    VerifyBounds(VerifyArgs),
    /// Volume product of a polytope given as JSON.
    Compute(ComputeArgs),
    /// The catalog of point groups.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Planar sector estimates.
    Lemma(LemmaArgs),
    /// Curve vectors, patch volumes and the per-group chain of inequalities.
    SignedVolume(SignedVolumeArgs),
    /// Minimize the volume product over a symmetric family.
    Search(SearchArgs),
    /// Random symmetric perturbations of a minimizer.
    Certify(CertifyArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Largest prism order in the table.
    #[arg(long, default_value_t = 8)]
    pub l_max: usize,
    /// Verify the bodies in this JSON file instead of the built-in minimizers.
    #[arg(long)]
    pub catalog: Option<PathBuf>,
    /// Emit JSON instead of a text table.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    pub body: PathBuf,
    /// Group to check invariance and the bound against, e.g. `T`, `C_4h`, `D` with `--l`.
    #[arg(long)]
    pub group: Option<String>,
    #[arg(long)]
    pub l: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum CatalogAction {
    /// Print the bound table as CSV.
    List {
        #[arg(long, default_value_t = 6)]
        l_max: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum LemmaKind {
    /// `|L||L°| ≥ (a − b)·(a° − b°)/4`.
    L1,
    /// `|L||L°| ≥ (1 − cos ξ)/2` for rotated pairs.
    L2,
    /// Which equality configuration the pair is in.
    Classify,
}

#[derive(Debug, Args)]
pub struct LemmaArgs {
    pub which: LemmaKind,
    /// square, diamond, triangle, hexagon, ngon (with --l) or disc.
    #[arg(long)]
    pub body: String,
    #[arg(long)]
    pub l: Option<usize>,
    /// Direction of the first boundary point.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub theta: f64,
    /// Angle from the first to the second point.
    #[arg(long, default_value_t = std::f64::consts::FRAC_PI_2)]
    pub xi: f64,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Cycle {
    /// The four upper corners directions `(±1, ±1, 1)`.
    Top,
    /// The tetrahedral triangle through `(1,1,1)`, `(1,−1,−1)`, `(−1,1,−1)`.
    Abc,
    /// Pole, `e1` and its image under the `ℓ`-fold rotation.
    Pab,
}

#[derive(Debug, Args)]
pub struct SignedVolumeArgs {
    /// Optional `check` keyword.
    #[arg(value_parser = ["check"])]
    pub action: Option<String>,
    /// Reference body name (see `catalog`), or a path to a JSON body.
    #[arg(long)]
    pub body: String,
    #[arg(long, value_enum, default_value_t = Cycle::Top)]
    pub cycle: Cycle,
    /// Replay the chain of inequalities for this group.
    #[arg(long)]
    pub group: Option<String>,
    #[arg(long)]
    pub l: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub l: Option<usize>,
    /// Number of seed directions.
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Evaluations per restart.
    #[arg(long, default_value_t = 2000)]
    pub budget: usize,
    #[arg(long, default_value_t = 8)]
    pub restarts: usize,
    #[arg(long)]
    pub seed: u64,
    /// CSV file for the (restart, evaluation, product) trace.
    #[arg(long)]
    pub trace: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    /// Reference body name, or a path to a JSON body.
    #[arg(long)]
    pub body: String,
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub l: Option<usize>,
    #[arg(long, default_value_t = 0.05)]
    pub eps: f64,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    #[arg(long)]
    pub seed: u64,
}

/// Provenance embedded in every JSON report.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RunManifest {
    pub command: String,
    pub arguments: Vec<String>,
    pub seed: Option<u64>,
    pub tool_version: String,
    pub wall_time_seconds: f64,
    pub output_paths: Vec<String>,
}

/// Failure of a command, mapped to an exit code.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Io(std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

type CmdResult = std::result::Result<i32, CliError>;

struct Ctx<'a> {
    command: &'static str,
    arguments: Vec<String>,
    seed: Option<u64>,
    started: Instant,
    out_path: Option<PathBuf>,
    extra_outputs: Vec<String>,
    stdout: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn manifest(&self) -> RunManifest {
        let mut output_paths: Vec<String> = self.out_path.iter().map(|p| p.display().to_string()).collect();
        output_paths.extend(self.extra_outputs.iter().cloned());
        RunManifest {
            command: self.command.to_string(),
            arguments: self.arguments.clone(),
            seed: self.seed,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            wall_time_seconds: self.started.elapsed().as_secs_f64(),
            output_paths,
        }
    }

    /// Writes `{"manifest": …, <payload fields>}` to the output file or stdout.
    fn emit<T: Serialize>(&mut self, payload: &T) -> std::result::Result<(), CliError> {
        let mut value = serde_json::to_value(payload).map_err(|e| CliError::Input(e.to_string()))?;
        let manifest = serde_json::to_value(self.manifest()).expect("manifest serializes");
        match &mut value {
            serde_json::Value::Object(map) => {
                map.insert("manifest".into(), manifest);
            }
            other => {
                let inner = std::mem::take(other);
                *other = serde_json::json!({ "manifest": manifest, "result": inner });
            }
        }
        let text = serde_json::to_string_pretty(&value).expect("json value serializes");
        match &self.out_path {
            Some(p) => std::fs::write(p, text + "\n")?,
            None => writeln!(self.stdout, "{text}")?,
        }
        Ok(())
    }
}

/// Sets the size of the global thread pool from `MAHLERLAB_THREADS`, if present.
pub fn configure_threads() {
    if let Some(n) = std::env::var("MAHLERLAB_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // Fails only if the pool was already built, in which case the first setting stands.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

/// Runs the command line `args` (including the program name) and returns the exit code.
pub fn run<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(stderr, "{text}");
            } else {
                let _ = write!(stdout, "{text}");
            }
            return code;
        }
    };
    let arguments = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let mut ctx = Ctx {
        command: command_name(&cli.command),
        arguments,
        seed: None,
        started: Instant::now(),
        out_path: cli.out.clone(),
        extra_outputs: Vec::new(),
        stdout,
    };
    let result = match &cli.command {
        Command::VerifyBounds(a) => verify_bounds(&mut ctx, a),
        Command::Compute(a) => compute(&mut ctx, a),
        Command::Catalog { action } => catalog(&mut ctx, action),
        Command::Lemma(a) => lemma(&mut ctx, a),
        Command::SignedVolume(a) => signed_volume(&mut ctx, a),
        Command::Search(a) => search(&mut ctx, a),
        Command::Certify(a) => certify(&mut ctx, a),
    };
    match result {
        Ok(code) => code,
        Err(CliError::Input(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_INPUT
        }
        Err(CliError::Io(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::VerifyBounds(_) => "verify-bounds",
        Command::Compute(_) => "compute",
        Command::Catalog { .. } => "catalog list",
        Command::Lemma(_) => "lemma",
        Command::SignedVolume(_) => "signed-volume",
        Command::Search(_) => "search",
        Command::Certify(_) => "certify",
    }
}

fn read_body(path: &Path) -> std::result::Result<ConvexBody3, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    Ok(ConvexBody3::from_json(&text)?)
}

/// A reference body name (with `l` for prisms) or a JSON file path.
fn resolve_body(spec: &str, l: Option<usize>) -> std::result::Result<ConvexBody3, CliError> {
    if REFERENCE_NAMES.contains(&spec) {
        return Ok(reference_body(spec, l)?.body);
    }
    let path = Path::new(spec);
    if path.exists() {
        return read_body(path);
    }
    Err(CliError::Input(format!(
        "unknown body {spec:?}: expected one of {} or a JSON file",
        REFERENCE_NAMES.join(", ")
    )))
}

/// One row of the bound reproduction table.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TableRow {
    pub group: String,
    pub body: String,
    pub product: f64,
    pub closed_form: f64,
    pub relative_error: f64,
    pub pass: bool,
}

impl TableRow {
    fn new(group: String, body: String, product: f64, closed_form: f64) -> TableRow {
        let relative_error = (product - closed_form).abs() / closed_form;
        TableRow {
            group,
            body,
            product,
            closed_form,
            relative_error,
            pass: relative_error <= TABLE_TOL,
        }
    }
}

/// Body in a `--catalog` fixture.
#[derive(Debug, Deserialize)]
struct FixtureEntry {
    name: String,
    group: String,
    #[serde(default)]
    l: Option<usize>,
    vertices: Vec<[f64; 3]>,
}

/// Rows for the built-in minimizers.
pub fn bound_table(l_max: usize) -> mahlerlab::Result<Vec<TableRow>> {
    use mahlerlab::bodies::{hanner, prism_product};
    let mut jobs: Vec<(String, String, ConvexBody3, f64)> = Vec::new();
    for (group, names) in [
        ("T", ["simplex", "simplex_polar"]),
        ("O", ["octahedron", "cube"]),
        ("I", ["icosahedron", "dodecahedron"]),
    ] {
        for name in names {
            let entry = reference_body(name, None)?;
            let value = entry.closed_form_product.expect("reference bodies have closed forms");
            jobs.push((group.to_string(), name.to_string(), entry.body, value));
        }
    }
    for l in 3..=l_max {
        for name in ["prism", "bipyramid"] {
            let entry = reference_body(name, Some(l))?;
            jobs.push((
                format!("C_{l}h/D_{l}/D_{l}h"),
                format!("{name}_{l}"),
                entry.body,
                prism_product(l),
            ));
        }
    }
    for name in ["hanner_box", "hanner_octa"] {
        let entry = hanner(name, [1.0, 2.0, 3.0])?;
        jobs.push(("D_2h".into(), format!("{name}(1,2,3)"), entry.body, 32.0 / 3.0));
    }
    use rayon::prelude::*;
    jobs.into_par_iter()
        .map(|(group, name, body, value)| {
            let p = mahlerlab::polarity::volume_product(&body)?.product;
            Ok(TableRow::new(group, name, p, value))
        })
        .collect()
}

fn fixture_rows(path: &Path) -> std::result::Result<Vec<TableRow>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let entries: Vec<FixtureEntry> = serde_json::from_str(&text).map_err(|e| CliError::Input(e.to_string()))?;
    let mut rows = Vec::new();
    for e in entries {
        let kind = GroupKind::parse(&e.group, e.l)?;
        let bound = proven_bound(kind)
            .ok_or_else(|| CliError::Input(format!("{} has no proven bound to verify", e.group)))?;
        let pts: Vec<Vec3> = e.vertices.iter().map(|v| Vec3::new(v[0], v[1], v[2])).collect();
        let body = ConvexBody3::from_points(&pts)?;
        let p = mahlerlab::polarity::volume_product(&body)?.product;
        rows.push(TableRow::new(kind.to_string(), e.name, p, bound.value));
    }
    Ok(rows)
}

#[derive(Serialize)]
struct VerifyReport {
    rows: Vec<TableRow>,
    all_pass: bool,
}

fn verify_bounds(ctx: &mut Ctx, a: &VerifyArgs) -> CmdResult {
    let rows = match &a.catalog {
        Some(path) => fixture_rows(path)?,
        None => bound_table(a.l_max)?,
    };
    let all_pass = rows.iter().all(|r| r.pass);
    if a.json || ctx.out_path.is_some() {
        ctx.emit(&VerifyReport { rows, all_pass })?;
    } else {
        writeln!(
            ctx.stdout,
            "{:<16} {:<20} {:>16} {:>16} {:>10}  status",
            "group", "body", "product", "closed form", "rel err"
        )?;
        for r in &rows {
            writeln!(
                ctx.stdout,
                "{:<16} {:<20} {:>16.10} {:>16.10} {:>10.1e}  {}",
                r.group,
                r.body,
                r.product,
                r.closed_form,
                r.relative_error,
                if r.pass { "PASS" } else { "FAIL" }
            )?;
        }
    }
    Ok(if all_pass { EXIT_OK } else { EXIT_VIOLATION })
}

#[derive(Serialize)]
struct ComputeReport {
    report: BoundReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    invariance_defect: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    invariant: Option<bool>,
}

fn compute(ctx: &mut Ctx, a: &ComputeArgs) -> CmdResult {
    let body = read_body(&a.body)?;
    let id = a.body.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let out = match &a.group {
        None => {
            let mut report = mahlerlab::polarity::volume_product(&body)?;
            report.body_id = id;
            ComputeReport {
                report,
                invariance_defect: None,
                invariant: None,
            }
        }
        Some(name) => {
            let kind = GroupKind::parse(name, a.l)?;
            let defect = invariance_defect(&kind.group(), &body);
            let invariant = defect < 1e-9;
            let mut report = bound_report(&body, kind, &id)?;
            if !invariant {
                // The bound says nothing about bodies outside the family.
                report = report.with_bound(None);
                report.equality_class = mahlerlab::EqualityClass::Unknown;
            }
            ComputeReport {
                report,
                invariance_defect: Some(defect),
                invariant: Some(invariant),
            }
        }
    };
    let violated = out.report.margin.is_some_and(|m| m < -BOUND_SLACK);
    ctx.emit(&out)?;
    Ok(if violated { EXIT_VIOLATION } else { EXIT_OK })
}

fn catalog(ctx: &mut Ctx, action: &CatalogAction) -> CmdResult {
    let CatalogAction::List { l_max } = action;
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in catalog_table(*l_max) {
        w.serialize(row).map_err(|e| CliError::Input(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Input(e.to_string()))?;
    match &ctx.out_path {
        Some(p) => std::fs::write(p, bytes)?,
        None => ctx.stdout.write_all(&bytes)?,
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct LemmaReport {
    lemma: &'static str,
    body: String,
    theta: f64,
    xi: f64,
    product: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    margin: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    case: Option<mahlerlab::EqualityCase>,
}

fn lemma(ctx: &mut Ctx, a: &LemmaArgs) -> CmdResult {
    let poly = planar_body(&a.body, a.l)?;
    let pair = SectorPair::from_angles(&poly, a.theta, a.xi)?;
    let (name, margin, case) = match a.which {
        LemmaKind::L1 => ("l1", Some(check_lemma1(&pair)), None),
        LemmaKind::L2 => ("l2", Some(check_lemma2(&pair, a.tol)?), None),
        LemmaKind::Classify => ("classify", None, Some(classify_equality(&pair, a.tol)?)),
    };
    let report = LemmaReport {
        lemma: name,
        body: a.body.clone(),
        theta: a.theta,
        xi: a.xi,
        product: pair.product(),
        margin,
        case,
    };
    let violated = margin.is_some_and(|m| m < -1e-9);
    ctx.emit(&report)?;
    Ok(if violated { EXIT_VIOLATION } else { EXIT_OK })
}

#[derive(Serialize)]
struct SignedVolumeReport {
    body: String,
    cycle: Cycle,
    anchors: Vec<[f64; 3]>,
    curve_vector: [f64; 3],
    patch_volume: f64,
    /// Signed volume estimate at the origin and at every vertex; the smallest is listed.
    lemma4_margin_origin: f64,
    lemma4_min_margin: f64,
    lemma7_lhs: f64,
    lemma7_rhs: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    chain: Option<GroupBoundCheck>,
    pass: bool,
}

fn cycle_anchors(body: &ConvexBody3, cycle: Cycle, l: Option<usize>) -> std::result::Result<Vec<Vec3>, CliError> {
    let dirs: Vec<Vec3> = match cycle {
        Cycle::Top => vec![
            Vec3::new(1.0, 1.0, 1.0),
            Vec3::new(-1.0, 1.0, 1.0),
            Vec3::new(-1.0, -1.0, 1.0),
            Vec3::new(1.0, -1.0, 1.0),
        ],
        Cycle::Abc => vec![
            Vec3::new(1.0, 1.0, 1.0),
            Vec3::new(1.0, -1.0, -1.0),
            Vec3::new(-1.0, 1.0, -1.0),
        ],
        Cycle::Pab => {
            let l = l.unwrap_or(4);
            if l < 3 {
                return Err(CliError::Input("the pab cycle needs l >= 3".into()));
            }
            vec![Vec3::z(), Vec3::x(), rotation_z(l) * Vec3::x()]
        }
    };
    let mut pts = dirs
        .iter()
        .map(|d| body.radial_point(d))
        .collect::<mahlerlab::Result<Vec<_>>>()?;
    pts.push(pts[0]);
    Ok(pts)
}

fn signed_volume(ctx: &mut Ctx, a: &SignedVolumeArgs) -> CmdResult {
    let body = resolve_body(&a.body, a.l)?;
    let anchors = cycle_anchors(&body, a.cycle, a.l)?;
    let c = curve(&body, &anchors, SAMPLES_PER_ARC)?;
    let v = curve_vector(&c);
    let patch = patch_cone_volume(&body, &c)?;
    let at_origin = check_lemma4(&body, &c, &Vec3::zeros())?;
    let mut min_margin = at_origin;
    for x in body.vertices() {
        min_margin = min_margin.min(check_lemma4(&body, &c, x)?);
    }
    let (lhs, rhs) = check_lemma7(&body, &c)?;
    let chain = match &a.group {
        Some(name) => Some(group_bound_check(&body, GroupKind::parse(name, a.l)?)?),
        None => None,
    };
    let scale = patch.abs().max(1.0);
    let pass = min_margin >= -1e-8 * scale
        && lhs >= rhs - 1e-6
        && chain.as_ref().map_or(true, |ch| ch.all_hold());
    let report = SignedVolumeReport {
        body: a.body.clone(),
        cycle: a.cycle,
        anchors: anchors[..anchors.len() - 1].iter().map(|p| [p.x, p.y, p.z]).collect(),
        curve_vector: [v.x, v.y, v.z],
        patch_volume: patch,
        lemma4_margin_origin: at_origin,
        lemma4_min_margin: min_margin,
        lemma7_lhs: lhs,
        lemma7_rhs: rhs,
        chain,
        pass,
    };
    ctx.emit(&report)?;
    Ok(if pass { EXIT_OK } else { EXIT_VIOLATION })
}

/// Writes the evaluation trace of a search as CSV.
pub fn write_trace(result: &SearchResult, path: &Path) -> std::io::Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for t in &result.trace {
        w.serialize(t)?;
    }
    w.flush()
}

fn search(ctx: &mut Ctx, a: &SearchArgs) -> CmdResult {
    ctx.seed = Some(a.seed);
    let kind = GroupKind::parse(&a.group, a.l)?;
    let family = InvariantFamily::for_group(kind, a.k)?;
    let config = SearchConfig {
        max_evals: a.budget,
        restarts: a.restarts,
        seed: a.seed,
        ..SearchConfig::default()
    };
    let result = minimize_product(&family, &config)?;
    if let Some(path) = &a.trace {
        write_trace(&result, path)?;
        ctx.extra_outputs.push(path.display().to_string());
    }
    let violated = result.margin.is_some_and(|m| m < -BOUND_SLACK);
    ctx.emit(&result)?;
    Ok(if violated { EXIT_VIOLATION } else { EXIT_OK })
}

#[derive(Serialize)]
struct CertifyReport {
    body: String,
    group: String,
    eps: f64,
    trials: usize,
    min_margin: f64,
    pass: bool,
}

fn certify(ctx: &mut Ctx, a: &CertifyArgs) -> CmdResult {
    ctx.seed = Some(a.seed);
    let kind = GroupKind::parse(&a.group, a.l)?;
    let body = resolve_body(&a.body, a.l.or(kind.axial_order()))?;
    let defect = invariance_defect(&kind.group(), &body);
    if defect >= 1e-9 {
        return Err(Error::NotInvariant(format!("{kind} (defect {defect:e})")).into());
    }
    let min_margin = certify_local_min(&body, kind, a.eps, a.trials, a.seed)?;
    let pass = min_margin >= -BOUND_SLACK;
    ctx.emit(&CertifyReport {
        body: a.body.clone(),
        group: kind.to_string(),
        eps: a.eps,
        trials: a.trials,
        min_margin,
        pass,
    })?;
    Ok(if pass { EXIT_OK } else { EXIT_VIOLATION })
}
