//! Command-line front end for the `macdonald-hc` engine.
//!
//! [`run`] executes a [`RunConfig`] and returns the exit status together with
//! the complete output document, so nothing reaches standard output until a
//! command has fully succeeded or failed.

use std::fmt::Write as _;
use std::str::FromStr;

use clap::{Parser, ValueEnum};
use macdonald_hc::continuation::braid_matrix;
use macdonald_hc::hcseries::{default_truncation, leading_coefficient, solve_coefficients, standard_points};
use macdonald_hc::macpoly::{macdonald_poly_seeded, Partition};
use macdonald_hc::operators::{SpectralData, WeylElement};
use macdonald_hc::qcore::{Mode, QParams};
use macdonald_hc::{Error, C64};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Evaluate the series solution at points of the asymptotic zone
    #[default]
    Eval,
    /// Solve for the series coefficients
    Solve,
    /// Symmetric polynomial eigenfunction for a partition
    Macpoly,
    /// Continuation matrices across a wall
    Connect,
    /// Eigen-equation residuals of the series solution
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
pub enum ModeArg {
    #[default]
    A,
    B,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::A => Mode::ModeA,
            ModeArg::B => Mode::ModeB,
        }
    }
}

/// A complex coordinate; JSON accepts a number, a string such as
/// `"0.9+0.5i"`, `[re, im]` or `{"re": .., "im": ..}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coord(pub C64);

#[derive(Deserialize)]
#[serde(untagged)]
enum CoordJson {
    Real(f64),
    Text(String),
    Pair([f64; 2]),
    Object { re: f64, im: f64 },
}

impl<'de> Deserialize<'de> for Coord {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        Ok(Coord(match CoordJson::deserialize(de)? {
            CoordJson::Real(x) => C64::new(x, 0.0),
            CoordJson::Text(s) => parse_complex(&s).map_err(serde::de::Error::custom)?,
            CoordJson::Pair([re, im]) => C64::new(re, im),
            CoordJson::Object { re, im } => C64::new(re, im),
        }))
    }
}

impl Serialize for Coord {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        cjson(self.0).serialize(ser)
    }
}

/// Everything a run needs; `None` fields take defaults that depend on the
/// rest of the configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub command: Command,
    pub q: f64,
    pub k: f64,
    pub lambda: Vec<f64>,
    /// 1-based permutation; identity when absent.
    pub w: Option<Vec<usize>>,
    #[serde(rename = "N")]
    pub max_degree: Option<usize>,
    pub points: Option<Vec<Vec<Coord>>>,
    pub output_format: OutputFormat,
    pub seed: u64,
    pub tolerance: Option<f64>,
    pub mode: ModeArg,
    /// 1-based wall index for `connect`.
    pub index: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            command: Command::Eval,
            q: 0.5,
            k: 0.4,
            lambda: vec![0.3, -0.3],
            w: None,
            max_degree: None,
            points: None,
            output_format: OutputFormat::Json,
            seed: 0,
            tolerance: None,
            mode: ModeArg::A,
            index: 1,
        }
    }
}

/// Exit status and the document destined for standard output.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub exit_code: i32,
    pub stdout: String,
    /// Diagnostics for standard error.
    pub stderr: String,
}

/// Exit status of a `verify` run whose checks did not all pass.
pub const EXIT_CHECK_FAILED: i32 = 1;

#[derive(Debug, Parser)]
#[command(name = "macdonald-hc", version, about = "Harish Chandra series for Macdonald q-difference equations")]
pub struct Cli {
    /// Command to run (defaults to the config file's command, else eval)
    #[arg(value_enum)]
    pub command: Option<Command>,
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long)]
    pub k: Option<f64>,
    /// Comma-separated spectral vector (or partition for macpoly)
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
    pub lambda: Option<Vec<f64>>,
    /// Comma-separated 1-based permutation
    #[arg(long, value_delimiter = ',')]
    pub w: Option<Vec<usize>>,
    /// Truncation degree of the series
    #[arg(long = "N")]
    pub max_degree: Option<usize>,
    /// Points as `z1,z2;z1,z2`, coordinates like `1.5` or `0.9+0.5i`
    #[arg(long, allow_hyphen_values = true)]
    pub points: Option<String>,
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// Wall index for connect (1-based)
    #[arg(long)]
    pub index: Option<usize>,
    /// JSON file with a RunConfig; flags override its fields
    #[arg(long)]
    pub config: Option<std::path::PathBuf>,
}

fn parse_complex(s: &str) -> Result<C64, String> {
    let t = s.trim();
    C64::from_str(t).map_err(|_| format!("cannot parse complex number {t:?}"))
}

/// Parses `a,b;c,d` into points.
pub fn parse_points(s: &str) -> Result<Vec<Vec<C64>>, String> {
    s.split(';')
        .map(|pt| pt.split(',').map(parse_complex).collect())
        .collect()
}

impl Cli {
    /// Merges the flags over `base`.
    pub fn into_config(self, mut base: RunConfig) -> Result<RunConfig, String> {
        if let Some(c) = self.command {
            base.command = c;
        }
        if let Some(v) = self.q {
            base.q = v;
        }
        if let Some(v) = self.k {
            base.k = v;
        }
        if let Some(v) = self.lambda {
            base.lambda = v;
        }
        if let Some(v) = self.w {
            base.w = Some(v);
        }
        if let Some(v) = self.max_degree {
            base.max_degree = Some(v);
        }
        if let Some(v) = self.points {
            base.points = Some(parse_points(&v)?.into_iter().map(|p| p.into_iter().map(Coord).collect()).collect());
        }
        if let Some(v) = self.format {
            base.output_format = v;
        }
        if let Some(v) = self.seed {
            base.seed = v;
        }
        if let Some(v) = self.tol {
            base.tolerance = Some(v);
        }
        if let Some(v) = self.mode {
            base.mode = v;
        }
        if let Some(v) = self.index {
            base.index = v;
        }
        Ok(base)
    }
}

fn error_output(kind: &str, message: &str, exit_code: i32) -> RunOutput {
    let doc = json!({ "error": { "kind": kind, "message": message } });
    RunOutput {
        exit_code,
        stdout: format!("{doc}\n"),
        stderr: format!("error: {message}\n"),
    }
}

fn engine_error(e: &Error) -> RunOutput {
    error_output(e.kind(), &e.to_string(), e.exit_code())
}

/// Parses command-line arguments (without the program name handling of
/// `--help` and `--version`, which callers print themselves) and runs.
pub fn run_args<I, T>(args: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => RunOutput {
                    exit_code: 0,
                    stdout: e.to_string(),
                    stderr: String::new(),
                },
                _ => error_output("usage", e.to_string().trim(), 2),
            };
        }
    };
    let base = match &cli.config {
        Some(path) => match std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))
            .and_then(|s| serde_json::from_str::<RunConfig>(&s).map_err(|e| format!("invalid config: {e}")))
        {
            Ok(c) => c,
            Err(m) => return error_output("config", &m, 2),
        },
        None => RunConfig::default(),
    };
    match cli.into_config(base) {
        Ok(config) => run(&config),
        Err(m) => error_output("usage", &m, 2),
    }
}

/// Executes `config`.
pub fn run(config: &RunConfig) -> RunOutput {
    match execute(config) {
        Ok(Done { doc, passed, stderr }) => RunOutput {
            exit_code: if passed { 0 } else { EXIT_CHECK_FAILED },
            stdout: doc,
            stderr,
        },
        Err(e) => engine_error(&e),
    }
}

struct Done {
    doc: String,
    passed: bool,
    stderr: String,
}

impl Done {
    fn ok(doc: String) -> Self {
        Done {
            doc,
            passed: true,
            stderr: String::new(),
        }
    }
}

fn cjson(c: C64) -> Value {
    json!({ "re": c.re, "im": c.im })
}

fn csv_num(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv_point(z: &[C64]) -> String {
    z.iter()
        .map(|c| format!("{}{:+.16e}i", csv_num(c.re), c.im))
        .collect::<Vec<_>>()
        .join("|")
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("documents serialize");
    s.push('\n');
    s
}

struct Setup {
    p: QParams,
    n: usize,
    max_degree: usize,
    points: Vec<Vec<C64>>,
}

fn setup(config: &RunConfig) -> Result<Setup, Error> {
    let p = QParams::new(config.q, config.k)?;
    let n = config.lambda.len();
    if n < 2 {
        return Err(Error::Domain(format!("lambda needs at least 2 entries, got {n}")));
    }
    let max_degree = config.max_degree.unwrap_or_else(|| default_truncation(n));
    let points = match &config.points {
        Some(pts) => pts.iter().map(|pt| pt.iter().map(|c| c.0).collect()).collect(),
        None => vec![standard_points(n, config.q)],
    };
    for pt in &points {
        if pt.len() != n {
            return Err(Error::Domain(format!("point {pt:?} has {} coordinates, expected {n}", pt.len())));
        }
    }
    Ok(Setup { p, n, max_degree, points })
}

fn spectral(config: &RunConfig, n: usize) -> Result<SpectralData, Error> {
    let w = match &config.w {
        Some(w) => WeylElement::from_one_based(w)?,
        None => WeylElement::identity(n),
    };
    if w.n() != n {
        return Err(Error::Domain(format!("w has {} entries, lambda has {n}", w.n())));
    }
    SpectralData::from_real(&config.lambda, w)
}

fn execute(config: &RunConfig) -> Result<Done, Error> {
    match config.command {
        Command::Eval => eval(config),
        Command::Solve => solve(config),
        Command::Macpoly => macpoly(config),
        Command::Connect => connect(config),
        Command::Verify => verify(config),
    }
}

fn eval(config: &RunConfig) -> Result<Done, Error> {
    let st = setup(config)?;
    let s = spectral(config, st.n)?;
    let sol = solve_coefficients(&s, &st.p, st.max_degree)?;
    let lead = match leading_coefficient(&s, &st.p, config.mode.into()) {
        Ok(c) => Some(c),
        Err(Error::RootPole { .. }) => None,
        Err(e) => return Err(e),
    };
    let evals = st.points.iter().map(|z| sol.evaluate(z)).collect::<Result<Vec<_>, _>>()?;
    let mut stderr = String::new();
    for (i, e) in evals.iter().enumerate() {
        if e.truncated {
            let _ = writeln!(stderr, "warning: point {i}: tail estimate {:e} exceeds tolerance", e.tail_estimate);
        }
    }
    let doc = match config.output_format {
        OutputFormat::Json => pretty(&json!({
            "command": "eval",
            "n": st.n,
            "N": st.max_degree,
            "mode": if config.mode == ModeArg::A { "A" } else { "B" },
            "leading_coefficient": lead.map(cjson),
            "points": st.points.iter().zip(&evals).map(|(z, e)| json!({
                "z": z.iter().map(|c| cjson(*c)).collect::<Vec<_>>(),
                "value": cjson(e.value),
                "normalized_value": lead.map(|l| cjson(l * e.value)),
                "tail_estimate": e.tail_estimate,
                "truncated": e.truncated,
            })).collect::<Vec<_>>(),
        })),
        OutputFormat::Csv => {
            let mut s = String::from("point,z,value_re,value_im,normalized_re,normalized_im,tail_estimate,truncated\n");
            for (i, (z, e)) in st.points.iter().zip(&evals).enumerate() {
                let (nr, ni) = match lead {
                    Some(l) => {
                        let v = l * e.value;
                        (csv_num(v.re), csv_num(v.im))
                    }
                    None => (String::new(), String::new()),
                };
                let _ = writeln!(
                    s,
                    "{i},{},{},{},{nr},{ni},{},{}",
                    csv_point(z),
                    csv_num(e.value.re),
                    csv_num(e.value.im),
                    csv_num(e.tail_estimate),
                    e.truncated
                );
            }
            s
        }
    };
    Ok(Done { doc, passed: true, stderr })
}

fn solve(config: &RunConfig) -> Result<Done, Error> {
    let st = setup(config)?;
    let s = spectral(config, st.n)?;
    let sol = solve_coefficients(&s, &st.p, st.max_degree)?;
    Ok(Done::ok(match config.output_format {
        OutputFormat::Json => pretty(&sol),
        OutputFormat::Csv => {
            let mut s = String::from("p,re,im\n");
            for (idx, c) in sol.table.iter() {
                let p: Vec<String> = idx.iter().map(|x| x.to_string()).collect();
                let _ = writeln!(s, "{},{},{}", p.join(" "), csv_num(c.re), csv_num(c.im));
            }
            s
        }
    }))
}

fn macpoly(config: &RunConfig) -> Result<Done, Error> {
    let p = QParams::new(config.q, config.k)?;
    let n = config.lambda.len();
    if n < 2 {
        return Err(Error::Domain(format!("the partition needs at least 2 entries, got {n}")));
    }
    let parts = config
        .lambda
        .iter()
        .map(|&x| {
            if x >= 0.0 && x.fract() == 0.0 && x <= u32::MAX as f64 {
                Ok(x as u32)
            } else {
                Err(Error::Domain(format!("partition entry {x} is not a nonnegative integer")))
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    let lam = Partition::new(parts)?;
    let poly = macdonald_poly_seeded(&lam, n, &p, config.seed)?;
    Ok(Done::ok(match config.output_format {
        OutputFormat::Json => pretty(&poly),
        OutputFormat::Csv => {
            let mut s = String::from("exp,re,im\n");
            for (e, c) in poly.terms() {
                let e: Vec<String> = e.iter().map(|x| x.to_string()).collect();
                let _ = writeln!(s, "{},{},{}", e.join(" "), csv_num(c.re), csv_num(c.im));
            }
            s
        }
    }))
}

fn connect(config: &RunConfig) -> Result<Done, Error> {
    let st = setup(config)?;
    let s = spectral(config, st.n)?;
    let mats = st
        .points
        .iter()
        .map(|z| braid_matrix(&s, config.index, z, &st.p))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Done::ok(match config.output_format {
        OutputFormat::Json => pretty(&json!({
            "command": "connect",
            "matrices": serde_json::to_value(&mats).expect("matrices serialize"),
        })),
        OutputFormat::Csv => {
            let mut s = String::from("point,i,ratio_re,ratio_im,row,col,re,im\n");
            for (k, m) in mats.iter().enumerate() {
                for (r, row) in m.entries.iter().enumerate() {
                    for (c, e) in row.iter().enumerate() {
                        let _ = writeln!(
                            s,
                            "{k},{},{},{},{r},{c},{},{}",
                            m.i,
                            csv_num(m.ratio.re),
                            csv_num(m.ratio.im),
                            csv_num(e.re),
                            csv_num(e.im)
                        );
                    }
                }
            }
            s
        }
    }))
}

fn verify(config: &RunConfig) -> Result<Done, Error> {
    let st = setup(config)?;
    let s = spectral(config, st.n)?;
    let tol = config.tolerance.unwrap_or(if st.n == 2 { 1e-8 } else { 1e-6 });
    let sol = solve_coefficients(&s, &st.p, st.max_degree)?;
    let mut checks = Vec::new();
    for (i, z) in st.points.iter().enumerate() {
        for m in 1..=st.n {
            let r = sol.eigen_residual(m, z)?;
            checks.push((i, m, r, r < tol));
        }
    }
    let passed = checks.iter().all(|c| c.3);
    let doc = match config.output_format {
        OutputFormat::Json => pretty(&json!({
            "command": "verify",
            "n": st.n,
            "N": st.max_degree,
            "tolerance": tol,
            "recursion_residual": sol.recursion_residual(),
            "checks": checks.iter().map(|(i, m, r, ok)| json!({
                "point": i, "m": m, "residual": r, "pass": ok,
            })).collect::<Vec<_>>(),
            "passed": passed,
        })),
        OutputFormat::Csv => {
            let mut s = String::from("point,m,residual,pass\n");
            for (i, m, r, ok) in &checks {
                let _ = writeln!(s, "{i},{m},{},{ok}", csv_num(*r));
            }
            s
        }
    };
    let stderr = if passed { String::new() } else { format!("verification failed at tolerance {tol:e}\n") };
    Ok(Done { doc, passed, stderr })
}
