use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cusp_saito::invariants::{
    cmd_check, cmd_invariants, cmd_saito, cmd_saito_pair_d1, cmd_semimodule, CheckReport, CurveInput, InvariantReport, SaitoPairD1Report,
    SaitoReport, SemimoduleReport,
};
use cusp_saito::semimodule::StructureTable;
use cusp_saito::Error;
use serde::Serialize;

const EXIT_INPUT: u8 = 1;
const EXIT_COMPUTATION: u8 = 2;
const EXIT_CHECK: u8 = 3;

#[derive(Parser)]
#[command(name = "cusp-saito", version, about = "Semimodules, standard bases and Saito bases of plane cusps")]
struct Cli {
    /// Print a human readable table instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full invariant report of a curve.
    Invariants {
        #[command(flatten)]
        curve: CurveArgs,
        /// Include the computed forms in the report.
        #[arg(long)]
        emit_forms: bool,
    },
    /// Structure table of a semimodule given by its basis.
    Semimodule {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        m: i64,
        /// Comma separated basis, starting with n.
        #[arg(long, value_delimiter = ',', required = true)]
        basis: Vec<i64>,
    },
    /// Saito basis and criterion witness.
    Saito {
        #[command(flatten)]
        curve: CurveArgs,
    },
    /// Saito pair at the first divisor.
    SaitoPairD1 {
        #[command(flatten)]
        curve: CurveArgs,
    },
    /// Cross-checks and randomized round trips.
    Check {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct CurveArgs {
    /// Curve file in JSON.
    #[arg(long, required_unless_present = "input_dir", conflicts_with = "input_dir")]
    input: Option<PathBuf>,
    /// Directory of curve files, processed in parallel.
    #[arg(long)]
    input_dir: Option<PathBuf>,
    /// Truncation weight of the computation.
    #[arg(long)]
    truncation: Option<i64>,
    /// Degree bound of the first-divisor search.
    #[arg(long)]
    degree_bound: Option<i64>,
}

/// A command result ready for printing.
struct Outcome {
    json: serde_json::Value,
    pretty: String,
    code: u8,
}

fn outcome<T: Serialize>(value: &T, pretty: String, code: u8) -> Outcome {
    Outcome { json: serde_json::to_value(value).expect("reports serialize"), pretty, code }
}

fn error_outcome(e: &Error) -> Outcome {
    let code = if e.is_input_error() { EXIT_INPUT } else { EXIT_COMPUTATION };
    Outcome { json: serde_json::json!({ "error": e.to_string() }), pretty: format!("error: {e}\n"), code }
}

fn load(path: &Path, args: &CurveArgs) -> Result<CurveInput, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    let mut input = CurveInput::from_json(&text)?;
    if args.truncation.is_some() {
        input.truncation = args.truncation;
    }
    if args.degree_bound.is_some() {
        input.degree_bound = args.degree_bound;
    }
    let (_, rescaled) = input.param()?;
    if rescaled {
        eprintln!("warning: {}: leading coefficient of y rescaled to 1", path.display());
    }
    Ok(input)
}

fn run_curve(command: &Command, path: &Path, args: &CurveArgs) -> Outcome {
    let input = match load(path, args) {
        Ok(i) => i,
        Err(e) => return error_outcome(&e),
    };
    let result = match command {
        Command::Invariants { emit_forms, .. } => cmd_invariants(&input, *emit_forms).map(|r| outcome(&r, pretty_invariants(&r), 0)),
        Command::Saito { .. } => cmd_saito(&input).map(|r| outcome(&r, pretty_saito(&r), 0)),
        Command::SaitoPairD1 { .. } => cmd_saito_pair_d1(&input).map(|r| outcome(&r, pretty_d1(&r), 0)),
        Command::Check { seed, .. } => {
            cmd_check(&input, *seed).map(|r| outcome(&r, pretty_check(&r), if r.all_passed { 0 } else { EXIT_CHECK }))
        }
        Command::Semimodule { .. } => unreachable!("semimodule takes no curve"),
    };
    result.unwrap_or_else(|e| error_outcome(&e))
}

fn curve_files(dir: &Path) -> Result<Vec<PathBuf>, Error> {
    let entries = std::fs::read_dir(dir).map_err(|e| Error::InvalidInput(format!("{}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> =
        entries.filter_map(|e| e.ok().map(|e| e.path())).filter(|p| p.extension().is_some_and(|x| x == "json")).collect();
    files.sort();
    Ok(files)
}

fn run(cli: &Cli) -> Outcome {
    let args = match &cli.command {
        Command::Semimodule { n, m, basis } => {
            return match cmd_semimodule(*n, *m, basis) {
                Ok(r) => outcome(&r, pretty_semimodule(&r), 0),
                Err(e) => error_outcome(&e),
            };
        }
        Command::Invariants { curve, .. } | Command::Saito { curve } | Command::SaitoPairD1 { curve } | Command::Check { curve, .. } => {
            curve
        }
    };
    if let Some(path) = &args.input {
        return run_curve(&cli.command, path, args);
    }
    let dir = args.input_dir.as_deref().expect("clap requires --input or --input-dir");
    let files = match curve_files(dir) {
        Ok(f) => f,
        Err(e) => return error_outcome(&e),
    };
    let results: Vec<(PathBuf, Outcome)> = {
        use rayon::prelude::*;
        files
            .into_par_iter()
            .map(|p| {
                let o = run_curve(&cli.command, &p, args);
                (p, o)
            })
            .collect()
    };
    let code = results.iter().map(|(_, o)| o.code).max().unwrap_or(0);
    let json = results.iter().map(|(p, o)| serde_json::json!({ "file": p.display().to_string(), "report": o.json })).collect();
    let pretty = results.iter().map(|(p, o)| format!("== {}\n{}", p.display(), o.pretty)).collect::<Vec<_>>().join("\n");
    Outcome { json: serde_json::Value::Array(json), pretty, code }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = run(&cli);
    if cli.pretty {
        print!("{}", out.pretty);
    } else {
        println!("{}", serde_json::to_string_pretty(&out.json).expect("json values serialize"));
    }
    if out.code != 0 {
        if let Some(msg) = out.json.get("error").and_then(|m| m.as_str()) {
            eprintln!("error: {msg}");
        }
    }
    ExitCode::from(out.code)
}

fn pair(p: [i64; 2]) -> String {
    format!("({}, {})", p[0], p[1])
}

fn list(v: &[i64]) -> String {
    v.iter().map(i64::to_string).collect::<Vec<_>>().join(", ")
}

fn pretty_table(t: &StructureTable) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:>3} {:>6} {:>6} {:>4} {:>4} {:>4} {:>4} {:>6} {:>6} {:>6} {:>6}",
        "i", "u_n", "u_m", "l_n", "l_m", "a", "b", "t_n", "t_m", "t", "t~"
    );
    for r in &t.rows {
        let _ = writeln!(
            s,
            "{:>3} {:>6} {:>6} {:>4} {:>4} {:>4} {:>4} {:>6} {:>6} {:>6} {:>6}",
            r.i, r.u_n, r.u_m, r.l_n, r.l_m, r.a, r.b, r.t_n, r.t_m, r.t, r.t_tilde
        );
    }
    s
}

fn pretty_invariants(r: &InvariantReport) -> String {
    let mut s = String::new();
    let g = &r.semigroup;
    let _ = writeln!(s, "semigroup      <{}, {}>  conductor {}", g.n, g.m, g.conductor);
    let _ = writeln!(s, "basis          ({})  s = {}", list(&r.basis), r.s);
    let _ = writeln!(s, "increasing     {}", r.is_increasing);
    let _ = writeln!(s, "saito pair D_C {}  measured {}", pair(r.saito_pair_dc), pair(r.saito_pair_dc_measured));
    let d1 = &r.saito_pair_d1;
    let _ = writeln!(s, "saito pair D_1 ({}, {})  degree bound {}", d1.s1, d1.s1_tilde, d1.degree_bound);
    let _ = writeln!(s, "mu - tau       {}", r.mu_minus_tau);
    let _ = writeln!(s, "criterion      {}", if r.criterion.holds { "holds" } else { "fails" });
    let _ = writeln!(s, "truncation     {}  certified {}", r.truncation.weight, r.truncation.truncation_certified);
    s.push_str(&pretty_table(&r.table));
    if let Some(f) = &r.forms {
        let _ = writeln!(s, "w_last  = {}", f.w_last);
        let _ = writeln!(s, "wt_last = {}", f.wt_last);
    }
    s
}

fn pretty_semimodule(r: &SemimoduleReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "semigroup  <{}, {}>", r.semigroup.n, r.semigroup.m);
    let _ = writeln!(s, "basis      ({})", list(&r.basis));
    let _ = writeln!(s, "increasing {}", r.is_increasing);
    let _ = writeln!(s, "conductor  {}", r.conductor);
    let _ = writeln!(s, "checks     {}", if r.all_checks_passed { "all pass" } else { "failures" });
    s.push_str(&pretty_table(&r.table));
    s
}

fn pretty_saito(r: &SaitoReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "w_last    = {}", r.w_last);
    let _ = writeln!(s, "wt_last   = {}", r.wt_last);
    let _ = writeln!(s, "orders    {}", pair(r.orders));
    let _ = writeln!(s, "criterion {}", if r.criterion.holds { "holds" } else { "fails" });
    if let Some(u) = &r.criterion.unit_constant {
        let _ = writeln!(s, "unit(0)   {u}");
    }
    s
}

fn pretty_d1(r: &SaitoPairD1Report) -> String {
    let d = &r.saito_pair_d1;
    let mut s = String::new();
    let _ = writeln!(s, "pair         ({}, {})", d.s1, d.s1_tilde);
    let _ = writeln!(s, "generators   {}", pair(d.generator_orders));
    let _ = writeln!(s, "degree bound {}", d.degree_bound);
    let _ = writeln!(s, "eta          {}", r.eta);
    s
}

fn pretty_check(r: &CheckReport) -> String {
    let mut s = String::new();
    for c in &r.checks {
        let _ = write!(s, "{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name);
        if let Some(d) = &c.detail {
            let _ = write!(s, "  {d}");
        }
        s.push('\n');
    }
    s
}
