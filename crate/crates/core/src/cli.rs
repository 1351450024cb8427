//! Command-line front end.
//!
//! Every subcommand builds a [`RunReport`]: named tables, pass/fail checks
//! with their tolerances, and per-stage wall-clock timings. The report is
//! printed as text and can be written as JSON (`--json <path>`) or as one
//! CSV file per table (`--csv <dir>`).
//!
//! Exit codes: 0 all checks pass, 1 a check failed, 2 usage or domain
//! error, 3 a resource cap was hit.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::boson_oracle::{build_basis, vertex_state, ORACLE_LEVEL_CAP};
use crate::error::{Error, Result};
use crate::formfactor::{formfactor, VertexWeight};
use crate::params::{finite_size_energy, params_from_coupling, xi_from_anisotropy, LuttingerParams, SectorCharge};
use crate::pipeline::{density_scaling, fit_transverse, lowest_scaling, particle_hole_table};
use crate::series::{reconstruct_correlator, sum_rule_table};
use crate::states::{enumerate_level, ChiralState};
use crate::xx_oracle::{ed_reference, ground_state, XxChainConfig, ED_MAX_LENGTH};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

/// Environment variable capping the worker pool.
pub const THREADS_ENV: &str = "LUTTINGER_FF_THREADS";

#[derive(Debug, Parser)]
#[command(name = "luttinger-ff", version, about = "Luttinger-liquid formfactors and their checks")]
#[command(args_override_self = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write the full report as JSON.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,

    /// Write every table as `<dir>/<command>_<table>.csv`.
    #[arg(long, global = true, value_name = "DIR")]
    pub csv: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Profile::Default)]
    pub tolerance_profile: Profile,

    /// `key=value` file presetting flags; the command line wins.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Stiffness, velocity and the zero-mode energy tower.
    Params {
        /// XXZ anisotropy.
        #[arg(long, conflicts_with = "lambda", required_unless_present = "lambda", allow_hyphen_values = true)]
        delta: Option<f64>,
        /// Density-density coupling of the two-branch model.
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<f64>,
        #[arg(long, default_value_t = 100)]
        length: u32,
    },
    /// Tabulate `F(p, q)` for one state or a whole level.
    Ff {
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        #[arg(long, required_unless_present = "state")]
        level: Option<usize>,
        /// `p1,p2,...;q1,q2,...`
        #[arg(long, allow_hyphen_values = true)]
        state: Option<String>,
        /// Add the brute-force vertex-operator amplitude.
        #[arg(long)]
        oracle: bool,
    },
    /// Level sums of `|F|^2` against `Gamma(a^2 + m) / (m! Gamma(a^2))`.
    Sumrule {
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        #[arg(long, default_value_t = 12)]
        max_level: usize,
    },
    /// Resum the formfactor series at `z = r exp(2 pi i x / L)`.
    Reconstruct {
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        #[arg(long)]
        r: f64,
        #[arg(long, allow_hyphen_values = true)]
        x_over_l: f64,
        #[arg(long, default_value_t = 24)]
        max_level: usize,
    },
    /// Free-fermion XX chain: formfactors, correlators, fits and scaling relations.
    XxValidate {
        #[arg(long)]
        length: usize,
        #[arg(long, default_value_t = 2)]
        max_level: usize,
        /// Cross-check against exact diagonalisation (L <= 12).
        #[arg(long)]
        ed: bool,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Params { .. } => "params",
            Command::Ff { .. } => "ff",
            Command::Sumrule { .. } => "sumrule",
            Command::Reconstruct { .. } => "reconstruct",
            Command::XxValidate { .. } => "xx-validate",
        }
    }
}

const SUBCOMMANDS: [&str; 5] = ["params", "ff", "sumrule", "reconstruct", "xx-validate"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    Strict,
    Default,
}

/// Pass/fail thresholds.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Tolerances {
    pub sum_rule: f64,
    pub tail_ratio: f64,
    pub oracle: f64,
    pub ed: f64,
    pub scaldens: f64,
    pub lowest_vs_fit: f64,
    pub richardson: f64,
}

impl Tolerances {
    pub fn for_profile(profile: Profile) -> Self {
        match profile {
            Profile::Default => Self {
                sum_rule: 1e-10,
                tail_ratio: 1e-3,
                oracle: 1e-9,
                ed: 1e-10,
                scaldens: 1e-6,
                lowest_vs_fit: 1e-2,
                richardson: 1e-2,
            },
            Profile::Strict => Self {
                sum_rule: 1e-12,
                tail_ratio: 1e-4,
                oracle: 1e-11,
                ed: 1e-12,
                scaldens: 1e-9,
                lowest_vs_fit: 5e-3,
                richardson: 5e-3,
            },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    fn new(name: &str, columns: &[&str]) -> Self {
        Self {
            name: name.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub measured: f64,
    pub tolerance: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Timing {
    pub stage: String,
    pub seconds: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub tables: Vec<Table>,
    pub checks: Vec<Check>,
    pub timing: Vec<Timing>,
}

impl RunReport {
    fn new(command: &str) -> Self {
        Self {
            command: command.into(),
            parameters: BTreeMap::new(),
            tables: Vec::new(),
            checks: Vec::new(),
            timing: Vec::new(),
        }
    }

    fn param(&mut self, key: &str, value: impl ToString) {
        self.parameters.insert(key.into(), value.to_string());
    }

    /// Passes when `measured <= tolerance`.
    fn check(&mut self, name: impl Into<String>, measured: f64, tolerance: f64) {
        self.checks.push(Check {
            name: name.into(),
            passed: measured <= tolerance,
            measured,
            tolerance,
        });
    }

    fn flag(&mut self, name: impl Into<String>, ok: bool) {
        self.checks.push(Check {
            name: name.into(),
            passed: ok,
            measured: if ok { 0.0 } else { 1.0 },
            tolerance: 0.0,
        });
    }

    fn stage<T>(&mut self, stage: &str, f: impl FnOnce() -> Result<T>) -> Result<T> {
        let start = Instant::now();
        let out = f()?;
        self.timing.push(Timing {
            stage: stage.into(),
            seconds: start.elapsed().as_secs_f64(),
        });
        Ok(out)
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// The report without timings, which is what stays fixed between runs.
    pub fn body(&self) -> Value {
        json!({
            "command": self.command,
            "parameters": self.parameters,
            "tables": self.tables,
            "checks": self.checks,
        })
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# {}", self.command);
        for (k, v) in &self.parameters {
            let _ = writeln!(out, "  {k} = {v}");
        }
        for table in &self.tables {
            let _ = writeln!(out, "\n## {}", table.name);
            let cells: Vec<Vec<String>> = table
                .rows
                .iter()
                .map(|r| r.iter().map(cell_text).collect())
                .collect();
            let widths: Vec<usize> = table
                .columns
                .iter()
                .enumerate()
                .map(|(i, c)| cells.iter().map(|r| r[i].len()).chain([c.len()]).max().unwrap_or(0))
                .collect();
            let line = |items: Vec<&str>| {
                items
                    .iter()
                    .zip(&widths)
                    .map(|(s, w)| format!("{s:>w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
            };
            let _ = writeln!(out, "{}", line(table.columns.iter().map(String::as_str).collect()));
            for row in &cells {
                let _ = writeln!(out, "{}", line(row.iter().map(String::as_str).collect()));
            }
        }
        if !self.checks.is_empty() {
            let _ = writeln!(out, "\n## checks");
            for c in &self.checks {
                let status = if c.passed { "PASS" } else { "FAIL" };
                let _ = writeln!(out, "{status}  {}  measured={:e}  tolerance={:e}", c.name, c.measured, c.tolerance);
            }
        }
        out
    }

    pub fn write_json(&self, path: &Path) -> std::io::Result<()> {
        let text = serde_json::to_string_pretty(self).map_err(std::io::Error::other)?;
        std::fs::write(path, text + "\n")
    }

    pub fn write_csv(&self, dir: &Path) -> std::io::Result<Vec<PathBuf>> {
        std::fs::create_dir_all(dir)?;
        let mut written = Vec::new();
        for table in &self.tables {
            let path = dir.join(format!("{}_{}.csv", self.command, table.name));
            let mut w = csv::Writer::from_path(&path)?;
            w.write_record(&table.columns)?;
            for row in &table.rows {
                w.write_record(row.iter().map(cell_text))?;
            }
            w.flush()?;
            written.push(path);
        }
        Ok(written)
    }
}

fn cell_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

pub fn run(command: &Command, tol: &Tolerances) -> Result<RunReport> {
    match command {
        Command::Params { delta, lambda, length } => run_params(*delta, *lambda, *length),
        Command::Ff { a, level, state, oracle } => run_ff(*a, *level, state.as_deref(), *oracle, tol),
        Command::Sumrule { a, max_level } => run_sumrule(*a, *max_level, tol),
        Command::Reconstruct { a, r, x_over_l, max_level } => run_reconstruct(*a, *r, *x_over_l, *max_level, tol),
        Command::XxValidate { length, max_level, ed } => run_xx_validate(*length, *max_level, *ed, tol),
    }
}

pub fn run_params(delta: Option<f64>, lambda: Option<f64>, length: u32) -> Result<RunReport> {
    let mut report = RunReport::new("params");
    let l = f64::from(length);
    let params = match (delta, lambda) {
        (Some(d), None) => {
            report.param("delta", d);
            report.param("energy_unit", "u");
            LuttingerParams::new(xi_from_anisotropy(d)?, 1.0, l, std::f64::consts::FRAC_PI_2)?
        }
        (None, Some(lam)) => {
            report.param("lambda", lam);
            params_from_coupling(lam, l, std::f64::consts::FRAC_PI_2)?
        }
        _ => return Err(Error::Domain("give exactly one of --delta, --lambda".into())),
    };
    report.param("length", length);

    let mut summary = Table::new("parameters", &["xi", "u"]);
    summary.push(vec![num(params.xi()), if delta.is_some() { Value::Null } else { num(params.u()) }]);
    report.tables.push(summary);

    let mut tower = Table::new("energy_tower", &["delta_n", "delta_q", "energy"]);
    for dn in -2i64..=2 {
        for dq in -2i64..=2 {
            if let Ok(charge) = SectorCharge::new(dn, dq) {
                tower.push(vec![dn.into(), dq.into(), num(finite_size_energy(&params, charge))]);
            }
        }
    }
    report.tables.push(tower);
    Ok(report)
}

pub fn run_ff(a: f64, level: Option<usize>, state: Option<&str>, oracle: bool, tol: &Tolerances) -> Result<RunReport> {
    let mut report = RunReport::new("ff");
    report.param("a", a);
    let weight = VertexWeight::new(a)?;
    let states: Vec<ChiralState> = match (state, level) {
        (Some(s), _) => {
            report.param("state", s);
            vec![s.parse()?]
        }
        (None, Some(m)) => {
            report.param("level", m);
            enumerate_level(m)?
        }
        (None, None) => return Err(Error::Domain("give --level or --state".into())),
    };
    report.param("oracle", oracle);

    let mut columns = vec!["state", "level", "F", "gamma_pole"];
    if oracle {
        columns.extend(["oracle", "error", "tolerance"]);
    }
    let mut table = Table::new("formfactors", &columns);

    let basis = if oracle {
        let cutoff = states.iter().map(ChiralState::level).max().unwrap_or(0);
        if cutoff > ORACLE_LEVEL_CAP {
            return Err(Error::Resource {
                what: "oracle level",
                requested: cutoff,
                cap: ORACLE_LEVEL_CAP,
            });
        }
        let basis = report.stage("oracle_basis", || build_basis(cutoff))?;
        let v = vertex_state(&basis, a);
        Some((basis, v))
    } else {
        None
    };

    let mut worst = 0.0f64;
    for s in &states {
        let f = formfactor(s, weight);
        let mut row = vec![s.to_string().into(), s.level().into(), num(f.value()), f.gamma_pole().into()];
        if let Some((basis, v)) = &basis {
            let amp = v.amplitude(basis, s);
            let err = (amp - f.value()).abs();
            worst = worst.max(err);
            row.extend([num(amp), num(err), num(tol.oracle)]);
        }
        table.push(row);
    }
    report.tables.push(table);
    if oracle {
        report.check("oracle amplitudes equal F", worst, tol.oracle);
    }
    Ok(report)
}

pub fn run_sumrule(a: f64, max_level: usize, tol: &Tolerances) -> Result<RunReport> {
    let mut report = RunReport::new("sumrule");
    report.param("a", a);
    report.param("max_level", max_level);
    let rows = report.stage("enumerate", || sum_rule_table(max_level, a))?;
    let mut table = Table::new(
        "level_sums",
        &["level", "states", "enumerated", "closed_form", "rel_err", "tolerance"],
    );
    let mut worst = 0.0f64;
    for r in &rows {
        worst = worst.max(r.rel_err);
        table.push(vec![
            r.level.into(),
            r.state_count.into(),
            num(r.enumerated_sum),
            num(r.closed_form),
            num(r.rel_err),
            num(tol.sum_rule),
        ]);
    }
    report.tables.push(table);
    report.check("sum rule", worst, tol.sum_rule);
    Ok(report)
}

pub fn run_reconstruct(a: f64, r: f64, x_over_l: f64, max_level: usize, tol: &Tolerances) -> Result<RunReport> {
    let mut report = RunReport::new("reconstruct");
    report.param("a", a);
    report.param("r", r);
    report.param("x_over_l", x_over_l);
    report.param("max_level", max_level);
    let theta = 2.0 * std::f64::consts::PI * x_over_l;
    let ev = report.stage("series", || reconstruct_correlator(r, theta, a, max_level))?;
    let mut table = Table::new(
        "series",
        &[
            "z_re", "z_im", "partial_re", "partial_im", "closed_re", "closed_im", "abs_error", "tail_bound",
        ],
    );
    table.push(vec![
        num(ev.z.re),
        num(ev.z.im),
        num(ev.partial_sum.re),
        num(ev.partial_sum.im),
        num(ev.closed_form.re),
        num(ev.closed_form.im),
        num(ev.abs_error),
        num(ev.tail_bound),
    ]);
    report.tables.push(table);
    report.check("error within tail bound", ev.abs_error, ev.tail_bound);
    report.param("tail_ratio_tolerance", tol.tail_ratio);
    if ev.closed_form.norm() > 0.0 {
        report.check("tail bound relative size", ev.tail_bound / ev.closed_form.norm(), tol.tail_ratio);
    }
    Ok(report)
}

/// Smallest ring on which the correlator fits have enough samples.
const MIN_FIT_LENGTH: usize = 32;
// The ratio errors fall like 1/L^2, so a 16/32 pair is still too coarse for the Richardson check.
const MIN_PARTICLE_HOLE_LENGTH: usize = 64;

pub fn run_xx_validate(length: usize, max_level: usize, ed: bool, tol: &Tolerances) -> Result<RunReport> {
    let mut report = RunReport::new("xx-validate");
    report.param("length", length);
    report.param("max_level", max_level);
    report.param("ed", ed);
    if ed && length > ED_MAX_LENGTH {
        return Err(Error::Resource {
            what: "ED length",
            requested: length,
            cap: ED_MAX_LENGTH,
        });
    }
    let config = XxChainConfig::half_filling(length)?;

    let gs = report.stage("ground_states", || ground_state(&config))?;
    let mut states = Table::new("ground_state", &["length", "filling", "sector", "energy"]);
    states.push(vec![
        length.into(),
        config.filling().into(),
        format!("{:?}", config.sector()).to_lowercase().into(),
        num(gs.energy()),
    ]);
    report.tables.push(states);

    if ed {
        let cmp = report.stage("ed", || ed_reference(&config))?;
        let mut t = Table::new("ed_comparison", &["observable", "error", "tolerance"]);
        for (name, err) in [
            ("energy", cmp.energy_diff),
            ("ground_overlap", (1.0 - cmp.ground_overlap).abs()),
            ("transverse_correlator", cmp.transverse_max_diff),
            ("density_correlator", cmp.density_max_diff),
            ("lowest_sigma_minus", cmp.lowest_formfactor_diff),
            ("lowest_density", cmp.density_formfactor_diff),
        ] {
            t.push(vec![name.into(), num(err), num(tol.ed)]);
            report.check(format!("ED {name}"), err, tol.ed);
        }
        report.tables.push(t);
    }

    let lowest = report.stage("lowest_formfactor", || lowest_scaling(&[length]))?[0];
    let mut scal = Table::new("lowest_formfactor", &["length", "C", "C2_sqrt_half_L"]);
    scal.push(vec![length.into(), num(lowest.formfactor), num(lowest.scaled)]);
    report.tables.push(scal);

    if length >= MIN_FIT_LENGTH {
        let fit = report.stage("transverse_fit", || fit_transverse(&config, 0.125, 0.375))?;
        let c0 = fit.model.amplitude(0).expect("m = 0 harmonic");
        let rel = (lowest.scaled - c0).abs() / c0;
        let mut t = Table::new("transverse_fit", &["C0_fitted", "fit_residual", "scaling_rel_diff", "tolerance"]);
        t.push(vec![num(c0), num(fit.max_rel_residual), num(rel), num(tol.lowest_vs_fit)]);
        report.tables.push(t);
        report.check("C^2 (L/2)^(1/2) vs fitted C0", rel, tol.lowest_vs_fit);

        let d = report.stage("density_fit", || density_scaling(&config))?;
        let mut t = Table::new(
            "density_scaling",
            &["C1", "C10_fitted", "uniform_fitted", "fit_residual", "relation_residual", "tolerance"],
        );
        t.push(vec![
            num(d.c1),
            num(d.c10_fitted),
            num(d.uniform_fitted),
            num(d.fit_residual),
            num(d.relation_residual),
            num(tol.scaldens),
        ]);
        report.tables.push(t);
        report.check("fitted C10 = 2", (d.c10_fitted - 2.0).abs(), tol.scaldens);
        report.check("density scaling relation", d.relation_residual, tol.scaldens);
    }

    if max_level > 0 && length >= MIN_PARTICLE_HOLE_LENGTH && length.is_multiple_of(4) {
        let lengths = [length / 2, length];
        let rows = report.stage("particle_hole", || particle_hole_table(max_level, &lengths))?;
        let mut t = Table::new(
            "particle_hole",
            &[
                "state", "branch", "target", "ratio_half_L", "ratio_L", "error_half_L", "error_L",
                "richardson", "richardson_rel_err", "tolerance",
            ],
        );
        for r in &rows {
            t.push(vec![
                r.state.clone().into(),
                format!("{:?}", r.branch).to_lowercase().into(),
                num(r.target),
                num(r.ratios[0]),
                num(r.ratios[1]),
                num(r.errors[0]),
                num(r.errors[1]),
                num(r.richardson),
                num(r.richardson_rel_err),
                num(tol.richardson),
            ]);
            let name = format!("{} {:?}", r.state, r.branch).to_lowercase();
            report.flag(format!("ratio error shrinks {name}"), r.monotone());
            report.check(format!("Richardson {name}"), r.richardson_rel_err, tol.richardson);
        }
        report.tables.push(t);
    }
    Ok(report)
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Resource { .. } => EXIT_RESOURCE,
        _ => EXIT_USAGE,
    }
}

/// Reads `key=value` lines; blank lines and `#` comments are skipped.
pub fn parse_config(text: &str) -> std::result::Result<Vec<OsString>, String> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("config line {}: expected key=value", n + 1))?;
        let key = key.trim().trim_start_matches("--").replace('_', "-");
        let value = value.trim();
        match value {
            "true" => out.push(format!("--{key}").into()),
            "false" => {}
            _ => out.push(format!("--{key}={value}").into()),
        }
    }
    Ok(out)
}

/// Splices the config file's flags in right after the subcommand so that
/// flags given on the command line, which come later, override them.
fn with_config(args: Vec<OsString>) -> std::result::Result<Vec<OsString>, String> {
    let mut path = None;
    for (i, a) in args.iter().enumerate() {
        let s = a.to_string_lossy();
        if let Some(p) = s.strip_prefix("--config=") {
            path = Some(PathBuf::from(p));
        } else if s == "--config" {
            path = args.get(i + 1).map(PathBuf::from);
        }
    }
    let Some(path) = path else {
        return Ok(args);
    };
    let text = std::fs::read_to_string(&path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let extra = parse_config(&text)?;
    let at = args
        .iter()
        .position(|a| SUBCOMMANDS.contains(&a.to_string_lossy().as_ref()))
        .map_or(args.len(), |i| i + 1);
    let mut out = args[..at].to_vec();
    out.extend(extra);
    out.extend_from_slice(&args[at..]);
    Ok(out)
}

fn configure_threads() {
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()) {
        if n > 0 {
            // Fails only if a pool exists already, in which case it is kept.
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let args = match with_config(args) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    configure_threads();
    let tol = Tolerances::for_profile(cli.tolerance_profile);
    let mut report = match run(&cli.command, &tol) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    report.param("tolerance_profile", format!("{:?}", cli.tolerance_profile).to_lowercase());
    print!("{}", report.render_text());
    if let Some(path) = &cli.json {
        if let Err(e) = report.write_json(path) {
            eprintln!("error: writing {}: {e}", path.display());
            return EXIT_USAGE;
        }
    }
    if let Some(dir) = &cli.csv {
        if let Err(e) = report.write_csv(dir) {
            eprintln!("error: writing CSV to {}: {e}", dir.display());
            return EXIT_USAGE;
        }
    }
    if report.all_passed() {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}
