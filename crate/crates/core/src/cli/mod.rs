//! Command-line front end.
//!
//! | exit | meaning |
//! |------|---------|
//! | 0 | success, order holds, report consistent |
//! | 1 | order fails, or a figure does not show its expected behaviour |
//! | 2 | unreadable scenario, bad arguments |
//! | 3 | numerical evaluation failed |
//! | 4 | order verdict inconclusive |
//! | 5 | soundness red flag |

pub mod reproduce;
pub mod scenario_file;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::distribution::LifetimeDistribution;
use crate::error::{Error, Result};
use crate::extremes::{Extreme, ExtremeDistribution};
use crate::numerics::{Grid, Spacing};
use crate::orders::{self, OrderStatus, Relation, DEFAULT_GRID_POINTS, DEFAULT_LORENZ_POINTS};
use crate::theorems::audit::{run_audit, AuditConfig};
use crate::theorems::builtin::{builtin_scenario, builtin_scenarios, BUILTIN_IDS};
use crate::theorems::{evaluate_theorem_with, ComparisonScenario, EvalOptions};

use scenario_file::{read_scenario, scenario_to_toml, GridSpec, ScenarioFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_EVAL: i32 = 3;
pub const EXIT_INCONCLUSIVE: i32 = 4;
pub const EXIT_RED_FLAG: i32 = 5;

#[derive(Debug, Parser)]
#[command(
    name = "outlier-extremes",
    version,
    about = "Extreme order statistics of dependent multiple-outlier models",
    after_help = "SCENARIO is a TOML scenario file or a builtin id: ex_3_1, ce_3_1, ex_3_2, ex_3_4, ce_3_2, ex_3_5.\n\
                  Exit codes: 0 ok/holds, 1 fails, 2 parse, 3 evaluation, 4 inconclusive, 5 red flag."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: GlobalOpts,
}

#[derive(Debug, Clone, clap::Args)]
pub struct GlobalOpts {
    /// Lower end of the evaluation grid.
    #[arg(long, global = true)]
    pub grid_lo: Option<f64>,
    /// Upper end of the evaluation grid.
    #[arg(long, global = true)]
    pub grid_hi: Option<f64>,
    /// Number of grid points.
    #[arg(long, global = true)]
    pub grid_n: Option<usize>,
    /// `log` or `linear`.
    #[arg(long, global = true)]
    pub spacing: Option<String>,
    /// Tolerance of the order verdict.
    #[arg(long, global = true)]
    pub slack: Option<f64>,
    /// Seed of randomized runs.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Output file (eval, scaffold) or directory (reproduce).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    Cdf,
    Sf,
    Pdf,
    Hazard,
    RevHazard,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    X,
    Y,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate a function of one extreme order statistic as CSV.
    Eval {
        scenario: String,
        #[arg(value_enum)]
        what: Quantity,
        #[arg(long, value_enum, default_value = "x")]
        side: SideArg,
    },
    /// Check an order between the two extremes: Y against X for maxima,
    /// X against Y for minima.
    Compare {
        scenario: String,
        /// st, hr, rh, star or lorenz.
        relation: String,
        /// Reverse the direction of the comparison.
        #[arg(long)]
        swap: bool,
    },
    /// Evaluate the hypotheses and conclusion of a registered result.
    Theorem { id: String, scenario: String },
    /// Write the plot data of a builtin scenario (or `all`) as CSV.
    Reproduce { id: String },
    /// Randomized soundness audit of every registered result.
    Audit {
        /// Number of random scenarios.
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
    /// Write a scenario file, from a builtin id if given.
    Scaffold { id: Option<String> },
}

/// Runs the tool on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
        }
    };
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::InvalidInput(_) => EXIT_PARSE,
        _ => EXIT_EVAL,
    }
}

fn dispatch(cli: &Cli) -> Result<i32> {
    let o = &cli.opts;
    match &cli.command {
        Command::Eval { scenario, what, side } => cmd_eval(&load(scenario)?, *what, *side, o),
        Command::Compare {
            scenario,
            relation,
            swap,
        } => cmd_compare(&load(scenario)?, relation.parse()?, *swap, o),
        Command::Theorem { id, scenario } => cmd_theorem(id, &load(scenario)?, o),
        Command::Reproduce { id } => cmd_reproduce(id, o),
        Command::Audit { count } => cmd_audit(*count, o),
        Command::Scaffold { id } => cmd_scaffold(id.as_deref(), o),
    }
}

/// Reads a scenario file, falling back to a builtin id.
pub fn load(arg: &str) -> Result<ScenarioFile> {
    let path = Path::new(arg);
    if path.exists() {
        return read_scenario(path);
    }
    match builtin_scenario(arg) {
        Some(b) => Ok(ScenarioFile {
            scenario: b.scenario,
            grid: None,
        }),
        None => Err(Error::Parse {
            line: None,
            field: "scenario".into(),
            message: format!(
                "`{arg}` is neither a readable file nor a builtin id ({})",
                BUILTIN_IDS.join(", ")
            ),
        }),
    }
}

fn has_grid_flags(o: &GlobalOpts) -> bool {
    o.grid_lo.is_some() || o.grid_hi.is_some() || o.grid_n.is_some() || o.spacing.is_some()
}

/// The grid an order check uses when nothing else is given.
fn default_grid(relation: Relation, a: &dyn LifetimeDistribution, b: &dyn LifetimeDistribution) -> Result<Grid> {
    match relation {
        Relation::Star => orders::tail_u_grid(DEFAULT_GRID_POINTS),
        Relation::Lorenz => orders::default_u_grid(DEFAULT_LORENZ_POINTS),
        _ => orders::default_x_grid(a, b, DEFAULT_GRID_POINTS),
    }
}

/// Grid from the flags, then the file's grid section, then `default`.
fn resolve_grid(o: &GlobalOpts, file: Option<&GridSpec>, default: impl FnOnce() -> Result<Grid>) -> Result<Grid> {
    if !has_grid_flags(o) {
        if let Some(g) = file {
            return g.build();
        }
        return default();
    }
    let base = match file {
        Some(g) => *g,
        None => {
            let d = default()?;
            GridSpec {
                lo: d.lo(),
                hi: d.hi(),
                count: d.len(),
                spacing: d.spacing(),
            }
        }
    };
    let spacing: Spacing = match &o.spacing {
        Some(s) => s.parse()?,
        None => base.spacing,
    };
    Grid::new(
        o.grid_lo.unwrap_or(base.lo),
        o.grid_hi.unwrap_or(base.hi),
        o.grid_n.unwrap_or(base.count),
        spacing,
    )
}

/// `(A, B)` of a comparison `A <= B`: `(Y, X)` for maxima, `(X, Y)` for
/// minima, reversed by `swap`.
pub fn comparison_pair(s: &ComparisonScenario, swap: bool) -> (ExtremeDistribution, ExtremeDistribution) {
    let (x, y) = (s.model_x.distribution(), s.model_y.distribution());
    let (a, b) = match s.extreme() {
        Extreme::Max => (y, x),
        Extreme::Min => (x, y),
    };
    if swap {
        (b, a)
    } else {
        (a, b)
    }
}

/// CSV text with header `x,<headers>` and 17 significant digits.
pub fn csv_text(headers: &[&str], x: &[f64], columns: &[&[f64]]) -> String {
    let mut out = String::with_capacity(x.len() * 24 * (columns.len() + 1));
    out.push('x');
    for h in headers {
        out.push(',');
        out.push_str(h);
    }
    out.push('\n');
    for (i, xi) in x.iter().enumerate() {
        out.push_str(&format!("{xi:.16e}"));
        for c in columns {
            out.push_str(&format!(",{:.16e}", c[i]));
        }
        out.push('\n');
    }
    out
}

/// Writes through a temporary file in the target directory and renames.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

pub fn write_csv(path: &Path, headers: &[&str], x: &[f64], columns: &[&[f64]]) -> Result<()> {
    write_atomic(path, &csv_text(headers, x, columns))
}

fn emit(o: &GlobalOpts, text: &str) -> Result<()> {
    match &o.out {
        Some(p) => write_atomic(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn cmd_eval(f: &ScenarioFile, what: Quantity, side: SideArg, o: &GlobalOpts) -> Result<i32> {
    let s = &f.scenario;
    let d = match side {
        SideArg::X => s.model_x.distribution(),
        SideArg::Y => s.model_y.distribution(),
    };
    let grid = resolve_grid(o, f.grid.as_ref(), || {
        let (a, b) = comparison_pair(s, false);
        orders::default_x_grid(&a, &b, DEFAULT_GRID_POINTS)
    })?;
    let values = grid
        .points()
        .iter()
        .map(|&x| match what {
            Quantity::Cdf => Ok(d.cdf(x)),
            Quantity::Sf => Ok(d.sf(x)),
            Quantity::Pdf => Ok(d.pdf(x)),
            Quantity::Hazard => d.hazard(x),
            Quantity::RevHazard => d.rev_hazard(x),
        })
        .collect::<Result<Vec<f64>>>()?;
    emit(o, &csv_text(&["value"], grid.points(), &[&values]))?;
    Ok(EXIT_OK)
}

pub fn cmd_compare(f: &ScenarioFile, relation: Relation, swap: bool, o: &GlobalOpts) -> Result<i32> {
    let s = &f.scenario;
    let (a, b) = comparison_pair(s, swap);
    let file_grid = if relation.uses_probability_grid() { None } else { f.grid.as_ref() };
    let grid = resolve_grid(o, file_grid, || default_grid(relation, &a, &b))?;
    let v = orders::check_on(relation, &a, &b, Some(&grid), o.slack)?;
    let label = |d: &ExtremeDistribution| {
        let side = if d.model() == &s.model_x { "X" } else { "Y" };
        format!("{side}_{}", d.model().label())
    };
    println!("claim: {} {} {}", label(&a), relation.symbol(), label(&b));
    println!("status: {}", v.status);
    match v.witness {
        Some(w) => println!("witness: {w:.9e}"),
        None => println!("witness: none"),
    }
    println!("margin: {:.6e} (slack {:.1e})", v.margin, v.slack);
    println!("excluded: {} of {}", v.excluded, grid.len());
    if let Some(note) = &v.note {
        println!("note: {note}");
    }
    println!("{}", v.summary_line());
    Ok(match v.status {
        OrderStatus::Holds => EXIT_OK,
        OrderStatus::Fails => EXIT_FAILS,
        OrderStatus::Inconclusive => EXIT_INCONCLUSIVE,
    })
}

pub fn cmd_theorem(id: &str, f: &ScenarioFile, o: &GlobalOpts) -> Result<i32> {
    let s = &f.scenario;
    let spec = crate::theorems::resolve_id(id, s)?;
    let relation = spec.relation;
    let file_grid = if relation.uses_probability_grid() { None } else { f.grid.as_ref() };
    let grid = if has_grid_flags(o) || file_grid.is_some() {
        let (a, b) = spec.pair.operands();
        let (a, b) = (s.operand(a).distribution(), s.operand(b).distribution());
        Some(resolve_grid(o, file_grid, || default_grid(relation, &a, &b))?)
    } else {
        None
    };
    let report = evaluate_theorem_with(id, s, &EvalOptions { grid, slack: o.slack })?;
    print!("{}", report.render());
    Ok(if report.red_flag() { EXIT_RED_FLAG } else { EXIT_OK })
}

pub fn cmd_reproduce(id: &str, o: &GlobalOpts) -> Result<i32> {
    let targets = if id.eq_ignore_ascii_case("all") {
        builtin_scenarios()
    } else {
        vec![load_builtin(id)?]
    };
    let out = o.out.clone().unwrap_or_else(|| PathBuf::from("figures"));
    let mut code = EXIT_OK;
    for b in &targets {
        let grid = if has_grid_flags(o) {
            Some(resolve_grid(o, None, || reproduce::figure_grid(b))?)
        } else {
            None
        };
        let r = reproduce::reproduce(b, grid.as_ref(), Some(&out))?;
        if let Some(p) = &r.path {
            println!("wrote {}", p.display());
        }
        println!("{}", r.summary_line());
        if !r.observed {
            code = EXIT_FAILS;
        }
    }
    Ok(code)
}

fn load_builtin(id: &str) -> Result<crate::theorems::BuiltinScenario> {
    builtin_scenario(id).ok_or_else(|| {
        Error::invalid(format!("unknown builtin id `{id}` ({} or all)", BUILTIN_IDS.join(", ")))
    })
}

pub fn cmd_audit(count: usize, o: &GlobalOpts) -> Result<i32> {
    let summary = run_audit(&AuditConfig {
        seed: o.seed,
        random_scenarios: count,
        include_builtins: true,
    })?;
    print!("{}", summary.render());
    Ok(if summary.passed() { EXIT_OK } else { EXIT_RED_FLAG })
}

pub fn cmd_scaffold(id: Option<&str>, o: &GlobalOpts) -> Result<i32> {
    let b = load_builtin(id.unwrap_or("ex_3_1"))?;
    let text = format!(
        "# {}: {}\n{}",
        b.id,
        b.description,
        scenario_to_toml(&b.scenario, None)?
    );
    emit(o, &text)?;
    Ok(EXIT_OK)
}
