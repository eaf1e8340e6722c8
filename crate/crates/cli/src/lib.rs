//! Front end for the `tateres` binary: argument parsing, input loading and
//! JSON or text reports.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use tateres::io::{chain_from_json, lie_algebra_from_json, IoError};
use tateres::laurent::{parse_poly, ParseError};
use tateres::suites::{run_suite, Suite, SuiteError, SuiteParams};
use tateres::{format_q, residue, virasoro_table, CocycleError, Flavor, LaurentPoly, LieAlgebra, ResidueError};

pub const MAX_N: usize = 4;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("expected n + 1 polynomials for highest variable t{n}, got {got}")]
    Arity { n: usize, got: usize },
    #[error("n = {0} is outside 1..={MAX_N}")]
    BadN(usize),
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {message}")]
    Read { path: String, message: String },
    #[error(transparent)]
    Format(#[from] IoError),
    #[error(transparent)]
    Residue(#[from] ResidueError),
    #[error(transparent)]
    Cocycle(#[from] CocycleError),
    #[error(transparent)]
    Suite(#[from] SuiteError),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Parse(_) => "parse",
            CliError::Arity { .. } => "arity",
            CliError::BadN(_) => "range",
            CliError::Usage(_) => "usage",
            CliError::Read { .. } => "read",
            CliError::Format(_) => "format",
            CliError::Residue(_) => "residue",
            CliError::Cocycle(_) => "cocycle",
            CliError::Suite(_) => "verify",
        }
    }

    /// `{"error": {"kind": …, "message": …}}`, with `offset` for parse errors.
    pub fn to_json(&self) -> Value {
        let mut body = json!({ "kind": self.kind(), "message": self.to_string() });
        if let CliError::Parse(e) = self {
            body["offset"] = json!(e.offset);
        }
        json!({ "error": body })
    }
}

#[derive(Debug, Parser)]
#[command(name = "tateres", version, about = "Exact multidimensional residues and Tate cocycles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// JSON output (the default).
    #[arg(long, global = true, conflicts_with = "text")]
    pub json: bool,
    /// Plain text output.
    #[arg(long, global = true)]
    pub text: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Residue of f0 df1 ∧ … ∧ dfn given as "f0 ; f1 ; … ; fn".
    Residue(ResidueArgs),
    /// Cocycle value on a chain read from JSON.
    Cocycle(CocycleArgs),
    /// Seeded identity suites.
    Verify(VerifyArgs),
    /// φ(L_m ∧ L_-m) for m = 1..=max-m.
    Virasoro(VirasoroArgs),
}

#[derive(Debug, Args)]
pub struct ResidueArgs {
    #[arg(long, conflicts_with = "input", required_unless_present = "input")]
    pub form: Option<String>,
    /// File holding the form text.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CocycleArgs {
    /// Chain JSON file.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "multiloop")]
    pub flavor: FlavorArg,
    /// Lie algebra JSON, overriding the chain's own `algebra` entry.
    #[arg(long)]
    pub algebra: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub suite: SuiteArg,
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    #[arg(long, default_value_t = 2)]
    pub degree_bound: i64,
    #[arg(long, value_enum, default_value = "multiloop")]
    pub flavor: FlavorArg,
    /// Lie algebra JSON for multiloop cocycle runs (sl2 if absent).
    #[arg(long)]
    pub algebra: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VirasoroArgs {
    #[arg(long, default_value_t = 6)]
    pub max_m: i64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FlavorArg {
    Multiloop,
    Scalar,
    Vectorfield,
}

impl From<FlavorArg> for Flavor {
    fn from(f: FlavorArg) -> Flavor {
        match f {
            FlavorArg::Multiloop => Flavor::Multiloop,
            FlavorArg::Scalar => Flavor::Scalar,
            FlavorArg::Vectorfield => Flavor::VectorField,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SuiteArg {
    All,
    Cube,
    Residue,
    Lift,
    Cocycle,
    Rho,
}

/// Splits on `;` and parses each piece; offsets in errors refer to `text`.
pub fn parse_form(text: &str) -> Result<(LaurentPoly, Vec<LaurentPoly>), CliError> {
    let mut parsed = Vec::new();
    let mut start = 0;
    for piece in text.split(';') {
        let p = parse_poly(piece).map_err(|e| ParseError { offset: e.offset + start, message: e.message })?;
        parsed.push(p);
        start += piece.len() + 1;
    }
    let n = parsed.iter().map(|p| p.max_var).max().unwrap_or(0);
    if parsed.len() < 2 || parsed.len() != n + 1 {
        return Err(CliError::Arity { n, got: parsed.len() });
    }
    if n > MAX_N {
        return Err(CliError::BadN(n));
    }
    let mut polys = parsed.iter().map(|p| p.into_poly(n));
    let f0 = polys.next().expect("at least two pieces");
    Ok((f0, polys.collect()))
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Read { path: path.display().to_string(), message: e.to_string() })
}

fn load_algebra(path: &Path) -> Result<LieAlgebra, CliError> {
    Ok(lie_algebra_from_json(&read(path)?)?)
}

/// The outcome of one invocation: what to print and the exit status.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub value: Value,
    pub text: String,
    pub success: bool,
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Residue(a) => run_residue(a),
        Command::Cocycle(a) => run_cocycle(a),
        Command::Verify(a) => run_verify(a),
        Command::Virasoro(a) => run_virasoro(a),
    }
}

fn run_residue(a: &ResidueArgs) -> Result<Outcome, CliError> {
    let text = match (&a.form, &a.input) {
        (Some(f), _) => f.clone(),
        (None, Some(p)) => read(p)?,
        (None, None) => return Err(CliError::Usage("give --form or --input".into())),
    };
    let (f0, fs) = parse_form(text.trim())?;
    let r = residue(&f0, &fs)?;
    let text = format!(
        "n = {}\nresidue = {}\noracle = {}\nagrees = {}\nraw = {}\nres_star = {}\n",
        r.n, r.residue, r.oracle, r.agrees, r.raw, r.res_star
    );
    Ok(Outcome { value: serde_json::to_value(&r).expect("serializable"), text, success: r.agrees })
}

fn run_cocycle(a: &CocycleArgs) -> Result<Outcome, CliError> {
    let body = read(&a.input)?;
    let base = a.input.parent().map(Path::to_path_buf).unwrap_or_default();
    let override_alg = a.algebra.as_deref().map(load_algebra).transpose()?;
    let flavor: Flavor = a.flavor.into();
    let chain = chain_from_json(&body, flavor, |name| match &override_alg {
        Some(alg) => Ok(alg.clone()),
        None => load_algebra(&base.join(name)).map_err(|e| IoError::Load(name.to_string(), e.to_string())),
    })?;
    if !(1..=MAX_N).contains(&chain.n) {
        return Err(CliError::BadN(chain.n));
    }
    let value = chain.phi()?;
    let out = json!({ "flavor": flavor, "n": chain.n, "terms": chain.terms.len(), "value": format_q(&value) });
    let text = format!("flavor = {flavor:?}\nn = {}\nvalue = {}\n", chain.n, format_q(&value));
    Ok(Outcome { value: out, text, success: true })
}

fn run_verify(a: &VerifyArgs) -> Result<Outcome, CliError> {
    if !(1..=MAX_N).contains(&a.n) {
        return Err(CliError::BadN(a.n));
    }
    let algebra = a.algebra.as_deref().map(load_algebra).transpose()?.map(Arc::new);
    let params = SuiteParams { n: a.n, seed: a.seed, trials: a.trials, degree_bound: a.degree_bound, flavor: a.flavor.into(), algebra };
    let suites: Vec<Suite> = match a.suite {
        SuiteArg::All => Suite::ALL.to_vec(),
        SuiteArg::Cube => vec![Suite::Cube],
        SuiteArg::Residue => vec![Suite::Residue],
        SuiteArg::Lift => vec![Suite::Lift],
        SuiteArg::Cocycle => vec![Suite::Cocycle],
        SuiteArg::Rho => vec![Suite::Rho],
    };
    let mut reports = Vec::new();
    let mut text = String::new();
    for s in suites {
        let r = run_suite(s, &params)?;
        text.push_str(&format!("{:?}: {}\n", s, if r.passed { "pass" } else { "FAIL" }));
        for c in &r.checks {
            text.push_str(&format!("  {} [{} cases]: {}\n", c.name, c.cases, if c.passed { "pass" } else { "FAIL" }));
            for x in &c.counterexamples {
                text.push_str(&format!("    {x}\n"));
            }
        }
        reports.push(r);
    }
    let success = reports.iter().all(|r| r.passed);
    let value = json!({ "passed": success, "suites": reports });
    Ok(Outcome { value, text, success })
}

fn run_virasoro(a: &VirasoroArgs) -> Result<Outcome, CliError> {
    if a.max_m < 1 {
        return Err(CliError::Usage("--max-m must be at least 1".into()));
    }
    let rows = virasoro_table(1..=a.max_m)?;
    let value = Value::Array(rows.iter().map(|(m, v)| json!({ "m": m, "value": format_q(v) })).collect());
    let text = rows.iter().map(|(m, v)| format!("{m}\t{}\n", format_q(v))).collect();
    Ok(Outcome { value, text, success: true })
}

/// Runs an argument vector and returns `(exit status, stdout)`.
pub fn main_with_args<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return (0, e.to_string());
            }
            let err = CliError::Usage(e.to_string().trim().to_string());
            return (1, format!("{}\n", serde_json::to_string_pretty(&err.to_json()).expect("json")));
        }
    };
    match run(&cli) {
        Ok(out) => {
            let body = if cli.output.text { out.text } else { format!("{}\n", serde_json::to_string_pretty(&out.value).expect("json")) };
            (if out.success { 0 } else { 1 }, body)
        }
        Err(e) => (1, format!("{}\n", serde_json::to_string_pretty(&e.to_json()).expect("json"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn form_examples() {
        let (f0, fs) = parse_form("t1^-1 ; t1").unwrap();
        assert_eq!(f0.n(), 1);
        assert_eq!(fs.len(), 1);
        let (_, fs) = parse_form("t1^-2*t2^-3 ; t1*t2 ; t1*t2^2").unwrap();
        assert_eq!(fs.len(), 2);
    }

    #[test]
    fn form_errors() {
        match parse_form("t1^^2") {
            Err(CliError::Parse(e)) => assert_eq!(e.offset, 3),
            other => panic!("{other:?}"),
        }
        match parse_form("t1 ; t1^^2") {
            Err(CliError::Parse(e)) => assert_eq!(e.offset, 8),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_form("t1"), Err(CliError::Arity { .. })));
        assert!(matches!(parse_form("t1 ; t1 ; t1"), Err(CliError::Arity { .. })));
        assert!(matches!(parse_form("t5;1;1;1;1;1"), Err(CliError::BadN(5))));
    }
}
