//! Command-line front end. `run` is the whole program minus process exit.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::network::{Basis, Config, Network};
use crate::report::{self, WitnessType};

#[derive(Debug, Parser)]
#[command(name = "bnalg", version, about = "Algebraic analysis of finite Bayesian networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Graph description (JSON).
    #[arg(long, global = true)]
    graph: Option<PathBuf>,

    /// Degree of the graded component.
    #[arg(long, global = true)]
    degree: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[arg(long, global = true, value_enum, default_value_t = BasisArg::Standard)]
    basis: BasisArg,

    #[arg(long = "type", global = true, value_enum)]
    witness_type: Option<TypeArg>,

    /// Bound on the number of monomials in a graded component.
    #[arg(long, global = true, default_value_t = 100_000)]
    max_monomials: usize,

    /// Bound on the vertex count for exhaustive enumeration.
    #[arg(long, global = true, default_value_t = 10)]
    max_n: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Structure, Markov properties and kernel/CI dimensions.
    Analyze,
    /// Plus-basis monomial parametrization.
    Param,
    /// Minors of the reduced global Markov statements.
    CiGens,
    /// Basis of a graded component of the kernel.
    Kernel,
    /// Compare the kernel with the CI ideal in one degree.
    CheckGss,
    /// Kernel element outside the ideal of lower-degree relations.
    Witness,
    /// Quadratic-form ranks of the CI minors and their pencils.
    Rank,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BasisArg {
    Plus,
    Standard,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TypeArg {
    Deg4,
    #[value(name = "detM")]
    DetM,
}

impl From<BasisArg> for Basis {
    fn from(b: BasisArg) -> Self {
        match b {
            BasisArg::Plus => Basis::Plus,
            BasisArg::Standard => Basis::Standard,
        }
    }
}

impl From<TypeArg> for WitnessType {
    fn from(t: TypeArg) -> Self {
        match t {
            TypeArg::Deg4 => WitnessType::Deg4,
            TypeArg::DetM => WitnessType::DetM,
        }
    }
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_GUARD: i32 = 2;

/// Parses `args` (program name first), writes the report to `out` and
/// diagnostics to `err`, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let _ = write!(err, "{e}");
            return EXIT_INVALID;
        }
    };
    match execute(&cli) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_guard() {
                EXIT_GUARD
            } else {
                EXIT_INVALID
            }
        }
    }
}

fn load(cli: &Cli) -> Result<Network> {
    let path = cli
        .graph
        .as_ref()
        .ok_or_else(|| Error::Parse("--graph <path> is required".into()))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    let mut net = Network::from_json(&text)?;
    net.set_config(Config {
        max_n: cli.max_n,
        max_cycle_n: Config::default().max_cycle_n.max(cli.max_n),
        max_monomials: cli.max_monomials,
    });
    Ok(net)
}

fn render(cli: &Cli, value: &Value, text: impl FnOnce() -> String) -> String {
    match cli.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => text(),
    }
}

fn execute(cli: &Cli) -> Result<String> {
    let net = load(cli)?;
    let basis: Basis = cli.basis.into();
    match cli.command {
        Command::Analyze => {
            let r = report::analyze(&net, cli.degree.unwrap_or(2).max(2), cli.witness_type.map(Into::into))?;
            let v = serde_json::to_value(&r).expect("report serializes");
            Ok(render(cli, &v, || text::analyze(&r)))
        }
        Command::Param => {
            let v = report::param_report(&net)?;
            Ok(render(cli, &v, || text::param(&v)))
        }
        Command::CiGens => {
            let v = report::ci_gens_report(&net)?;
            Ok(render(cli, &v, || text::ci_gens(&v)))
        }
        Command::Kernel => {
            let v = report::kernel_report(&net, cli.degree.unwrap_or(2), basis, true)?;
            Ok(render(cli, &v, || text::kernel(&v)))
        }
        Command::CheckGss => {
            let v = report::kernel_report(&net, cli.degree.unwrap_or(2), basis, false)?;
            Ok(render(cli, &v, || text::kernel(&v)))
        }
        Command::Witness => {
            let t = cli.witness_type.unwrap_or(TypeArg::Deg4);
            let v = report::witness_report(&net, t.into())?;
            Ok(render(cli, &v, || text::witness(&v)))
        }
        Command::Rank => {
            let (forms, pairs) = report::rank_report(&net)?;
            let v = json!({"forms": forms, "pairs": pairs});
            Ok(render(cli, &v, || text::rank(&v)))
        }
    }
}

mod text {
    use std::fmt::Write as _;

    use serde_json::Value;

    use crate::poly::{PolyJson, XPoly};
    use crate::report::AnalysisReport;

    fn poly(v: &Value) -> String {
        match serde_json::from_value::<PolyJson>(v.clone()).ok().and_then(|j| XPoly::from_json(&j).ok()) {
            Some(p) => p.to_string(),
            None => v.to_string(),
        }
    }

    fn list(v: &[usize]) -> String {
        let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        format!("{{{}}}", parts.join(","))
    }

    pub fn analyze(r: &AnalysisReport) -> String {
        let mut s = String::new();
        let g = &r.graph;
        let _ = writeln!(s, "vertices: {}", g.n);
        let _ = writeln!(s, "levels: {:?}", g.levels);
        let edges: Vec<String> = g.edges.iter().map(|[a, b]| format!("{a}->{b}")).collect();
        let _ = writeln!(s, "edges: {}", edges.join(" "));
        let _ = writeln!(s, "sinks: {}", list(&g.sinks));
        let _ = writeln!(s, "perfect: {}", r.perfect);
        let _ = writeln!(s, "toric criterion: {}", r.toric_criterion);
        let cycles: Vec<String> = r.induced_cycles.iter().map(|c| list(c)).collect();
        let _ = writeln!(s, "induced cycles: {}", if cycles.is_empty() { "none".into() } else { cycles.join(" ") });
        let _ = writeln!(s, "global Markov statements: {}", r.markov_statement_count);
        let _ = writeln!(s, "reduced statements:");
        for st in &r.reduced_statements {
            let _ = writeln!(s, "  {st}");
        }
        for d in &r.degrees {
            let _ = writeln!(
                s,
                "degree {}: kernel {} ci {} equal {}",
                d.degree, d.kernel_dim, d.ci_dim, d.equal
            );
        }
        if let Some(w) = &r.witness {
            s.push_str(&witness(w));
        }
        s
    }

    pub fn param(v: &Value) -> String {
        let mut s = String::new();
        for row in v["basis"].as_array().into_iter().flatten() {
            let _ = writeln!(s, "{}\t{}", row["index"].as_str().unwrap_or(""), row["image"].as_str().unwrap_or(""));
        }
        s
    }

    pub fn ci_gens(v: &Value) -> String {
        let mut s = String::new();
        for st in v["statements"].as_array().into_iter().flatten() {
            let _ = writeln!(s, "{}", st["statement"].as_str().unwrap_or(""));
            for g in st["generators"].as_array().into_iter().flatten() {
                let _ = writeln!(s, "  {}", poly(g));
            }
        }
        let _ = writeln!(s, "global CI quadrics: {} spanning dimension {}", v["global_raw_count"], v["global_dim"]);
        s
    }

    pub fn kernel(v: &Value) -> String {
        let mut s = format!(
            "degree {} ({} basis): kernel {} ci {} equal {}\n",
            v["degree"],
            v["basis"].as_str().unwrap_or(""),
            v["kernel_dim"],
            v["ci_dim"],
            v["equal"]
        );
        for e in v["elements"].as_array().into_iter().flatten() {
            let _ = writeln!(s, "  {}", poly(e));
        }
        s
    }

    pub fn witness(v: &Value) -> String {
        let mut s = format!(
            "{} witness, degree {}: kernel {} ci {}\n  f = {}\n",
            v["type"].as_str().unwrap_or(""),
            v["degree"],
            v["kernel_dim"],
            v["ci_dim"],
            poly(&v["witness"])
        );
        if let Some(cert) = v["certificate"].as_object() {
            for (k, val) in cert {
                let _ = writeln!(s, "  {k}: {val}");
            }
        }
        s
    }

    pub fn rank(v: &Value) -> String {
        let mut s = String::new();
        for f in v["forms"].as_array().into_iter().flatten() {
            let _ = writeln!(
                s,
                "{} [{}] rank {}: {}",
                f["name"].as_str().unwrap_or(""),
                f["statement"].as_str().unwrap_or(""),
                f["rank"],
                f["poly"].as_str().unwrap_or("")
            );
        }
        for p in v["pairs"].as_array().into_iter().flatten() {
            let _ = writeln!(
                s,
                "{} + c*{}: generic rank {} verdict {} minor gcd {}",
                p["i"].as_str().unwrap_or(""),
                p["j"].as_str().unwrap_or(""),
                p["generic_rank"],
                p["verdict"],
                p["minor_gcd"].as_str().unwrap_or("")
            );
        }
        s
    }
}
