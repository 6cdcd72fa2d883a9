use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use biquandle::algebra::{check_biquandle_axioms, check_quandle_axioms, derived_quandle, FiniteBiquandle};
use biquandle::catalog::{self, Algebra};
use biquandle::cocycle::{biquandle_cocycle_invariant, check_biquandle_cocycle, shadow_cocycle_invariant, BiquandleCocycle};
use biquandle::coloring::{
    biquandle_equations_hold, enumerate_biquandle_colorings, enumerate_quandle_colorings, oracle_biquandle_colorings,
    oracle_quandle_colorings, quandle_equations_hold, BiquandleColoring, QuandleColoring,
};
use biquandle::correspondence::{phi, psi, verify_bijection, verify_naturality_named};
use biquandle::diagram::LinkDiagram;
use biquandle::io::{self, Coloring};
use biquandle::verify::{self, Suite};
use biquandle::Error;

const FORMATS: &str = "\
JSON formats:
  biquandle  {\"n\": int, \"under\": [[int]], \"over\": [[int]]}   rows indexed by the left operand
  quandle    {\"n\": int, \"op\": [[int]]}
  diagram    {\"crossings\": [{\"sign\": 1|-1, \"slots\": [s0,s1,s2,s3]}], \"components\": [ids],
              \"unbounded\": {\"crossing\": i, \"slot\": j}}   (unbounded optional)
             slots run counterclockwise from the incoming under semi-arc
  coloring   {\"kind\": \"quandle\"|\"biquandle\", \"colors\": {id: element}}
  cocycle    {\"arity\": 2, \"A\": [m1,...], \"values\": {\"x,y\": [a1,...]}}   missing entries are 0
  invariant  {\"invariant\": [{\"value\": [..], \"mult\": k}]}   sorted by value

ALGEBRA is a JSON file or a catalog id (see `bq catalog`); DIAGRAM is a JSON file or a fixture name.
Exit codes: 0 all checks pass, 1 mathematical failure (witness printed), 2 input error.";

#[derive(Parser)]
#[command(name = "bq", version, about = "Biquandle and quandle colorings, their correspondence, and cocycle invariants", after_help = FORMATS)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, ValueEnum)]
enum Mode {
    Q,
    Bq,
}

#[derive(Copy, Clone, ValueEnum)]
enum SuiteArg {
    Main,
    Naturality,
    Cocycle,
    States,
    Appendix,
    All,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check quandle or biquandle axioms
    Check { algebra: String },
    /// Enumerate colorings by backtracking
    Colorings {
        algebra: String,
        diagram: String,
        #[arg(long, value_enum, default_value = "bq")]
        mode: Mode,
        #[arg(long)]
        count_only: bool,
    },
    /// Enumerate colorings by walking the whole product space
    Oracle {
        algebra: String,
        diagram: String,
        #[arg(long, value_enum, default_value = "bq")]
        mode: Mode,
        #[arg(long)]
        count_only: bool,
    },
    /// Map a derived-quandle coloring to a biquandle coloring
    Psi {
        algebra: String,
        diagram: String,
        /// Coloring JSON file, or `-` for stdin
        coloring: String,
    },
    /// Map a biquandle coloring to a derived-quandle coloring
    Phi { algebra: String, diagram: String, coloring: String },
    /// Cocycle state sum; --shadow uses the pulled-back shadow cocycle
    Invariant {
        algebra: String,
        cocycle: String,
        diagram: String,
        #[arg(long)]
        shadow: bool,
    },
    /// Run a verification suite
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        #[arg(long, default_value_t = verify::DEFAULT_SEED)]
        seed: u64,
    },
    /// Counts and both compositions of the correspondence on one diagram
    VerifyBijection { algebra: String, diagram: String },
    /// Naturality of the correspondence on a move pair
    VerifyNaturality { algebra: String, pair: String },
    /// List catalog ids and fixtures
    Catalog,
}

enum Failure {
    Math(Value),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<Value, Failure>;

fn read_input(spec: &str) -> Result<String, Failure> {
    if spec == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Input(e.to_string()))?;
        Ok(s)
    } else {
        std::fs::read_to_string(spec).map_err(|e| Failure::Input(format!("{spec}: {e}")))
    }
}

fn biquandle_of(spec: &str) -> Result<FiniteBiquandle, Failure> {
    Ok(io::load_algebra(spec)?.to_biquandle())
}

fn verdict(passed: bool, report: Value) -> Outcome {
    if passed {
        Ok(report)
    } else {
        Err(Failure::Math(report))
    }
}

fn check(spec: &str) -> Outcome {
    if std::path::Path::new(spec).is_file() {
        // report axioms without requiring them to hold
        let (a, b) = io::algebra_tables(&read_input(spec)?)?;
        let r = match b {
            Some(over) => check_biquandle_axioms(&a, &over)?,
            None => check_quandle_axioms(&a)?,
        };
        return verdict(r.passed, serde_json::to_value(&r).unwrap());
    }
    let mut reports = Vec::new();
    let mut all = true;
    for (id, x) in catalog::algebras(spec)? {
        let r = match catalog::algebra(&id)? {
            Algebra::Quandle(q) => check_quandle_axioms(&q.rows())?,
            Algebra::Biquandle(_) => check_biquandle_axioms(&x.under_rows(), &x.over_rows())?,
        };
        all &= r.passed;
        reports.push(json!({ "algebra": id, "report": r }));
    }
    let out = if reports.len() == 1 { reports.pop().unwrap()["report"].take() } else { Value::Array(reports) };
    verdict(all, out)
}

fn coloring_listing(d: &LinkDiagram, bq: Option<Vec<BiquandleColoring>>, q: Option<Vec<QuandleColoring>>, count_only: bool) -> Value {
    let items: Vec<Value> = match (bq, q) {
        (Some(v), _) => v.iter().map(|c| serde_json::to_value(io::biquandle_coloring_json(d, c)).unwrap()).collect(),
        (_, Some(v)) => v.iter().map(|c| serde_json::to_value(io::quandle_coloring_json(d, c)).unwrap()).collect(),
        _ => unreachable!(),
    };
    if count_only {
        json!(items.len())
    } else {
        Value::Array(items)
    }
}

fn colorings(algebra: &str, diagram: &str, mode: Mode, count_only: bool, oracle: bool) -> Outcome {
    let x = biquandle_of(algebra)?;
    let d = io::load_diagram(diagram)?;
    Ok(match mode {
        Mode::Bq => {
            let v = if oracle { oracle_biquandle_colorings(&x, &d)? } else { enumerate_biquandle_colorings(&x, &d) };
            coloring_listing(&d, Some(v), None, count_only)
        }
        Mode::Q => {
            let q = derived_quandle(&x);
            let v = if oracle { oracle_quandle_colorings(&q, &d)? } else { enumerate_quandle_colorings(&q, &d) };
            coloring_listing(&d, None, Some(v), count_only)
        }
    })
}

fn map_coloring(algebra: &str, diagram: &str, coloring: &str, forward: bool) -> Outcome {
    let x = biquandle_of(algebra)?;
    let d = io::load_diagram(diagram)?;
    let c = io::parse_coloring(&d, &read_input(coloring)?, x.order())?;
    let internal = |e: Error| Failure::Math(json!({ "error": e.to_string() }));
    match (c, forward) {
        (Coloring::Quandle(c), true) => {
            if !quandle_equations_hold(&derived_quandle(&x), &d, &c.0) {
                return Err(Failure::Input("input is not a coloring by the derived quandle".into()));
            }
            let b = psi(&x, &d, &c).map_err(internal)?;
            Ok(serde_json::to_value(io::biquandle_coloring_json(&d, &b)).unwrap())
        }
        (Coloring::Biquandle(c), false) => {
            if !biquandle_equations_hold(&x, &d, &c.0) {
                return Err(Failure::Input("input is not a biquandle coloring".into()));
            }
            let q = phi(&x, &d, &c).map_err(internal)?;
            Ok(serde_json::to_value(io::quandle_coloring_json(&d, &q)).unwrap())
        }
        (_, true) => Err(Failure::Input("psi takes a coloring of kind \"quandle\"".into())),
        (_, false) => Err(Failure::Input("phi takes a coloring of kind \"biquandle\"".into())),
    }
}

fn invariant(algebra: &str, cocycle: &str, diagram: &str, shadow: bool) -> Outcome {
    let x = biquandle_of(algebra)?;
    let d = io::load_diagram(diagram)?;
    let table = io::parse_cocycle(&read_input(cocycle)?, x.order())?;
    let report = check_biquandle_cocycle(&table, &x)?;
    if !report.passed {
        return Err(Failure::Math(json!({ "error": "not a biquandle cocycle", "report": report })));
    }
    let theta = BiquandleCocycle::new(table, &x)?;
    let v = if shadow { shadow_cocycle_invariant(&x, &theta, &d)? } else { biquandle_cocycle_invariant(&x, &theta, &d)? };
    Ok(io::invariant_json(&v))
}

fn run(cmd: Cmd) -> Outcome {
    match cmd {
        Cmd::Check { algebra } => check(&algebra),
        Cmd::Colorings { algebra, diagram, mode, count_only } => colorings(&algebra, &diagram, mode, count_only, false),
        Cmd::Oracle { algebra, diagram, mode, count_only } => colorings(&algebra, &diagram, mode, count_only, true),
        Cmd::Psi { algebra, diagram, coloring } => map_coloring(&algebra, &diagram, &coloring, true),
        Cmd::Phi { algebra, diagram, coloring } => map_coloring(&algebra, &diagram, &coloring, false),
        Cmd::Invariant { algebra, cocycle, diagram, shadow } => invariant(&algebra, &cocycle, &diagram, shadow),
        Cmd::Verify { suite, seed } => {
            let suite = match suite {
                SuiteArg::Main => Suite::Main,
                SuiteArg::Naturality => Suite::Naturality,
                SuiteArg::Cocycle => Suite::Cocycle,
                SuiteArg::States => Suite::States,
                SuiteArg::Appendix => Suite::Appendix,
                SuiteArg::All => Suite::All,
            };
            let m = verify::run(suite, seed);
            verdict(m.passed, serde_json::to_value(&m).unwrap())
        }
        Cmd::VerifyBijection { algebra, diagram } => {
            let x = biquandle_of(&algebra)?;
            let d = io::load_diagram(&diagram)?;
            let r = verify_bijection(&x, &d);
            verdict(r.passed(), serde_json::to_value(&r).unwrap())
        }
        Cmd::VerifyNaturality { algebra, pair } => {
            let x = biquandle_of(&algebra)?;
            let r = verify_naturality_named(&x, &pair)?;
            verdict(r.commutes, serde_json::to_value(&r).unwrap())
        }
        Cmd::Catalog => Ok(json!(catalog::listing())),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let listing = matches!(cli.cmd, Cmd::Colorings { .. } | Cmd::Oracle { .. });
    match run(cli.cmd) {
        Ok(Value::Array(items)) if listing => {
            println!("{}", serde_json::to_string(&items).unwrap());
            println!("count: {}", items.len());
            ExitCode::SUCCESS
        }
        Ok(v) => {
            println!("{}", serde_json::to_string_pretty(&v).unwrap());
            ExitCode::SUCCESS
        }
        Err(Failure::Math(v)) => {
            println!("{}", serde_json::to_string_pretty(&v).unwrap());
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
