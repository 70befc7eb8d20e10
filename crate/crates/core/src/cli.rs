//! Command-line front end: `eval`, `table` and `verify`.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value as Json};

use crate::closedform::{self, DihedralOrder, ExpectationResult, Formula, Value};
use crate::elements::{check_order, guard_limit, Family, Gens, GroupSpec};
use crate::error::{Error, Result};
use crate::exact::{evolve_pairtable, ExactWalk};
use crate::lengths::{statistic, Measure};
use crate::montecarlo::{simulate, SimResult};
use crate::rational::{display, Rational};
use crate::verify::{run_suite, Suite};

#[derive(Parser, Debug)]
#[command(
    name = "coxwalk",
    version,
    about = "Expected (absolute) length of random reflection products"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate one expectation.
    Eval(EvalArgs),
    /// Tabulate closed form, exact engine and Monte Carlo for t = 0..=t-max.
    Table(TableArgs),
    /// Run the cross-check suites.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Engine {
    Closed,
    ExactFull,
    ExactPair,
    Mc,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct CellArgs {
    #[arg(long)]
    family: Family,
    /// Letters for A, rank for B/D/G, m for I2 ("inf" allowed with closed forms).
    #[arg(long)]
    n: Option<String>,
    #[arg(long, conflicts_with = "n")]
    m: Option<String>,
    #[arg(long, default_value_t = 1)]
    r: u64,
    #[arg(long, default_value = "reflections")]
    gens: Gens,
    #[arg(long, default_value = "length")]
    measure: Measure,
    #[arg(long, default_value = "auto")]
    formula: Formula,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[command(flatten)]
    cell: CellArgs,
    #[arg(long)]
    t: u64,
    #[arg(long, value_enum, default_value = "closed")]
    engine: Engine,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[command(flatten)]
    cell: CellArgs,
    #[arg(long)]
    t_max: u64,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: Suite,
}

/// The group a cell refers to: a finite spec, or I2(∞).
enum Target {
    Finite(GroupSpec),
    InfiniteDihedral,
}

impl CellArgs {
    fn target(&self) -> Result<Target> {
        let raw = match (&self.n, &self.m) {
            (Some(v), None) | (None, Some(v)) => v,
            (None, None) => return Err(Error::InvalidSpec("--n is required".into())),
            (Some(_), Some(_)) => {
                return Err(Error::InvalidSpec("--n and --m are exclusive".into()))
            }
        };
        if self.m.is_some() && self.family != Family::I2 {
            return Err(Error::InvalidSpec("--m only applies to --family I2".into()));
        }
        if self.family == Family::I2 {
            if let DihedralOrder::Infinite = raw.parse::<DihedralOrder>()? {
                return Ok(Target::InfiniteDihedral);
            }
        }
        let n = raw
            .parse::<u64>()
            .map_err(|_| Error::InvalidSpec(format!("--n: not a positive integer: {raw:?}")))?;
        if self.r != 1 && self.family != Family::G {
            return Err(Error::InvalidSpec("--r only applies to --family G".into()));
        }
        let spec = GroupSpec::new(self.family, n, self.r)?;
        spec.validate()?;
        Ok(Target::Finite(spec))
    }
}

fn warn(msg: &str) {
    eprintln!("warning: {msg}");
}

/// Exact expectation by evolving the full distribution.
fn exact_full(spec: &GroupSpec, gens: Gens, measure: Measure, t: u64) -> Result<ExpectationResult> {
    let stat = statistic(spec, measure)?;
    let mut walk = ExactWalk::new(spec, gens)?;
    walk.advance_to(t);
    let value = walk.expectation(&*stat);
    Ok(ExpectationResult::new(
        spec,
        gens,
        measure,
        t,
        Value::Exact(value),
        "exact-full",
    ))
}

fn pair_engine_applies(spec: &GroupSpec, gens: Gens, measure: Measure) -> bool {
    matches!(spec.family, Family::A | Family::B | Family::D)
        && gens == Gens::AllReflections
        && measure == Measure::Length
}

fn exact_pair(spec: &GroupSpec, gens: Gens, measure: Measure, t: u64) -> Result<ExpectationResult> {
    if !pair_engine_applies(spec, gens, measure) {
        return Err(Error::Unsupported(
            "the pairwise engine covers length under all reflections in A, B, D".into(),
        ));
    }
    let value = evolve_pairtable(spec.family, spec.n, t)?.expected_length()?;
    Ok(ExpectationResult::new(
        spec,
        gens,
        measure,
        t,
        Value::Exact(value),
        "exact-pair",
    ))
}

fn closed_or_fallback(target: &Target, cell: &CellArgs, t: u64) -> Result<ExpectationResult> {
    match target {
        Target::InfiniteDihedral => {
            closedform::closed_form_infinite_dihedral(cell.gens, cell.measure, t)
        }
        Target::Finite(spec) => {
            match closedform::closed_form(spec, cell.gens, cell.measure, t, cell.formula) {
                Err(Error::Unsupported(msg)) if cell.formula == Formula::Auto => {
                    warn(&format!("{msg}; falling back to --engine exact-full"));
                    exact_full(spec, cell.gens, cell.measure, t)
                }
                other => other,
            }
        }
    }
}

fn rational_json(q: &Rational) -> Json {
    json!({ "num": q.numer().to_string(), "den": q.denom().to_string() })
}

fn value_json(v: &Value) -> Json {
    match v {
        Value::Exact(q) => rational_json(q),
        Value::Float(x) => json!(x),
    }
}

fn value_csv(v: &Value) -> String {
    match v {
        Value::Exact(q) => display(q),
        Value::Float(x) => x.to_string(),
    }
}

fn header_json(res: &ExpectationResult) -> serde_json::Map<String, Json> {
    let mut obj = serde_json::Map::new();
    obj.insert("family".into(), json!(res.family.to_string()));
    obj.insert("param".into(), res.param.map_or(json!("inf"), |p| json!(p)));
    obj.insert("r".into(), json!(res.r));
    obj.insert("gens".into(), json!(res.gens.to_string()));
    obj.insert("measure".into(), json!(res.measure.to_string()));
    obj.insert("t".into(), json!(res.t));
    obj.insert("method".into(), json!(res.method));
    obj
}

fn sim_to_result(sim: &SimResult) -> ExpectationResult {
    ExpectationResult::new(
        &sim.spec,
        sim.gens,
        sim.measure,
        sim.t,
        Value::Float(sim.mean),
        "mc",
    )
}

fn eval(args: &EvalArgs, out: &mut dyn Write) -> Result<()> {
    let cell = &args.cell;
    let target = cell.target()?;
    let finite = |engine: &str| match &target {
        Target::Finite(spec) => Ok(*spec),
        Target::InfiniteDihedral => Err(Error::Unsupported(format!(
            "I2(inf) has no {engine} engine"
        ))),
    };
    let (res, sim) = match args.engine {
        Engine::Closed => (closed_or_fallback(&target, cell, args.t)?, None),
        Engine::ExactFull => (
            exact_full(&finite("exact-full")?, cell.gens, cell.measure, args.t)?,
            None,
        ),
        Engine::ExactPair => (
            exact_pair(&finite("exact-pair")?, cell.gens, cell.measure, args.t)?,
            None,
        ),
        Engine::Mc => {
            let sim = simulate(
                &finite("mc")?,
                cell.gens,
                cell.measure,
                args.t,
                cell.trials,
                cell.seed,
            )?;
            (sim_to_result(&sim), Some(sim))
        }
    };
    match args.format {
        Format::Json => {
            let mut obj = header_json(&res);
            obj.insert("value".into(), value_json(&res.value));
            if let Some(sim) = &sim {
                obj.insert("stderr".into(), json!(sim.stderr));
                obj.insert("trials".into(), json!(sim.trials));
                obj.insert("seed".into(), json!(sim.seed));
            }
            writeln!(out, "{}", Json::Object(obj))
        }
        Format::Csv => {
            writeln!(
                out,
                "family,param,r,gens,measure,t,method,value,stderr,trials,seed"
            )
            .map_err(io_error)?;
            let param = res.param.map_or("inf".to_string(), |p| p.to_string());
            let (stderr, trials, seed) =
                sim.as_ref()
                    .map_or((String::new(), String::new(), String::new()), |s| {
                        (
                            s.stderr.to_string(),
                            s.trials.to_string(),
                            s.seed.to_string(),
                        )
                    });
            writeln!(
                out,
                "{},{param},{},{},{},{},{},{},{stderr},{trials},{seed}",
                res.family,
                res.r,
                res.gens,
                res.measure,
                res.t,
                res.method,
                value_csv(&res.value)
            )
        }
    }
    .map_err(io_error)
}

fn io_error(e: std::io::Error) -> Error {
    Error::Unsupported(format!("write failed: {e}"))
}

struct Row {
    t: u64,
    closed: Option<Value>,
    exact: Option<Rational>,
    mc: Option<SimResult>,
}

/// The exact column: full distribution while the group is small enough,
/// else the pairwise engine where it applies.
enum ExactColumn {
    Full(Box<ExactWalk>, crate::lengths::Statistic),
    Pair(GroupSpec),
    None,
}

impl ExactColumn {
    fn new(target: &Target, cell: &CellArgs) -> Self {
        let Target::Finite(spec) = target else {
            return ExactColumn::None;
        };
        let full = || -> Result<ExactColumn> {
            check_order(spec, guard_limit())?;
            let stat = statistic(spec, cell.measure)?;
            Ok(ExactColumn::Full(
                Box::new(ExactWalk::new(spec, cell.gens)?),
                stat,
            ))
        };
        match full() {
            Ok(col) => col,
            Err(_) if pair_engine_applies(spec, cell.gens, cell.measure) => {
                ExactColumn::Pair(*spec)
            }
            Err(e) => {
                warn(&format!("exact column left empty: {e}"));
                ExactColumn::None
            }
        }
    }

    fn at(&mut self, t: u64) -> Result<Option<Rational>> {
        match self {
            ExactColumn::Full(walk, stat) => {
                walk.advance_to(t);
                Ok(Some(walk.expectation(&**stat)))
            }
            ExactColumn::Pair(spec) => Ok(Some(
                evolve_pairtable(spec.family, spec.n, t)?.expected_length()?,
            )),
            ExactColumn::None => Ok(None),
        }
    }
}

fn table(args: &TableArgs, out: &mut dyn Write) -> Result<()> {
    let cell = &args.cell;
    let target = cell.target()?;
    let mut exact = ExactColumn::new(&target, cell);
    let mut warned = false;
    let mut rows = Vec::new();
    for t in 0..=args.t_max {
        let closed = match &target {
            Target::InfiniteDihedral => {
                Some(closedform::closed_form_infinite_dihedral(cell.gens, cell.measure, t)?.value)
            }
            Target::Finite(spec) => {
                match closedform::closed_form(spec, cell.gens, cell.measure, t, cell.formula) {
                    Ok(res) => Some(res.value),
                    Err(Error::Unsupported(msg)) => {
                        if !warned {
                            warn(&format!("{msg}; closed_form column left empty"));
                            warned = true;
                        }
                        None
                    }
                    Err(e) => return Err(e),
                }
            }
        };
        let mc = match &target {
            Target::Finite(spec) => Some(simulate(
                spec,
                cell.gens,
                cell.measure,
                t,
                cell.trials,
                cell.seed,
            )?),
            Target::InfiniteDihedral => None,
        };
        rows.push(Row {
            t,
            closed,
            exact: exact.at(t)?,
            mc,
        });
    }
    match args.format {
        Format::Csv => {
            writeln!(out, "t,closed_form,exact,mc_mean,mc_stderr").map_err(io_error)?;
            for row in &rows {
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    row.t,
                    row.closed.as_ref().map(value_csv).unwrap_or_default(),
                    row.exact.as_ref().map(display).unwrap_or_default(),
                    row.mc
                        .as_ref()
                        .map(|s| s.mean.to_string())
                        .unwrap_or_default(),
                    row.mc
                        .as_ref()
                        .map(|s| s.stderr.to_string())
                        .unwrap_or_default(),
                )
                .map_err(io_error)?;
            }
        }
        Format::Json => {
            let param = match &target {
                Target::Finite(spec) => json!(spec.n),
                Target::InfiniteDihedral => json!("inf"),
            };
            let rows: Vec<Json> = rows
                .iter()
                .map(|row| {
                    json!({
                        "t": row.t,
                        "closed_form": row.closed.as_ref().map(value_json),
                        "exact": row.exact.as_ref().map(rational_json),
                        "mc_mean": row.mc.as_ref().map(|s| s.mean),
                        "mc_stderr": row.mc.as_ref().map(|s| s.stderr),
                    })
                })
                .collect();
            let obj = json!({
                "family": cell.family.to_string(),
                "param": param,
                "r": cell.r,
                "gens": cell.gens.to_string(),
                "measure": cell.measure.to_string(),
                "method": "table",
                "trials": cell.trials,
                "seed": cell.seed,
                "rows": rows,
            });
            writeln!(out, "{obj}").map_err(io_error)?;
        }
    }
    Ok(())
}

fn verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<bool> {
    let checks = run_suite(args.suite);
    for check in &checks {
        writeln!(out, "{check}").map_err(io_error)?;
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    writeln!(out, "{} checks, {failed} failed", checks.len()).map_err(io_error)?;
    Ok(failed == 0)
}

/// Runs the command line `args` (program name first) and returns the exit
/// code: 0 on success, 1 when verification fails, 2 on usage errors.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                eprint!("{}", e.render());
            } else {
                let _ = write!(out, "{}", e.render());
            }
            return e.exit_code();
        }
    };
    let result = match &cli.command {
        Command::Eval(a) => eval(a, out).map(|_| true),
        Command::Table(a) => table(a, out).map(|_| true),
        Command::Verify(a) => verify(a, out),
    };
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
