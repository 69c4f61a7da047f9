//! Command-line front end.
//!
//! Exit codes: 0 when the readings agree (or validation passes), 1 when a
//! divergence is found (or validation fails), 2 on any input or usage error.

use std::fs;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::engine::evaluate;
use crate::error::Error;
use crate::report::{DeterminismStatus, DomainDocument, FactsDocument, GridDocument, LimitOverrides, ReportDocument};
use crate::search::{
    bounded_search, cross_validation_grid, find_inconsistency_zone, sweep_facts, sweep_prior_exclusion, PeriodVar,
    SearchOptions,
};
use crate::statute::{CombineRule, NumeratorMode, StatuteParams, TimeUnit};
use crate::validation::{FixtureSet, Validator};

pub const EXIT_CONSISTENT: i32 = 0;
pub const EXIT_DIVERGENT: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "sec121", version, about = "Compare the sum-of-limitations and joint-cap readings of the home-sale exclusion")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate both readings on one facts file.
    Evaluate {
        /// JSON facts document.
        facts: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Override the document's joint numerator mode.
        #[arg(long, value_parser = parse_mode)]
        mode: Option<NumeratorMode>,
    },
    /// Sweep spouse B's prior-exclusion gap over an inclusive range such as `1..36`.
    Sweep {
        #[arg(value_parser = parse_range)]
        range: RangeInclusive<u64>,
        #[arg(long, value_parser = parse_unit, default_value = "months")]
        unit: TimeUnit,
        #[arg(long)]
        base_limit: Option<u64>,
        #[arg(long)]
        joint_limit: Option<u64>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Enumerate a bounded domain of fact patterns and list divergent ones.
    Search {
        /// JSON domain document.
        domain: PathBuf,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        limit: u64,
        #[arg(long, value_parser = parse_mode)]
        mode: Option<NumeratorMode>,
        #[arg(long, default_value_t = SearchOptions::DEFAULT_SAFETY_BOUND as u64)]
        domain_bound: u64,
        #[arg(long)]
        override_domain_bound: bool,
        #[arg(long)]
        parallel: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Unit x combine-rule cross-validation grid.
    Grid {
        /// JSON document with facts per unit.
        facts: PathBuf,
        /// Units to evaluate (repeatable); defaults to every unit in the file.
        #[arg(long, value_parser = parse_unit)]
        unit: Vec<TimeUnit>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Run the validation runners against the golden fixtures.
    Validate {
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
        runs: u64,
        /// Directory holding the fixture files; the built-in copies are used otherwise.
        #[arg(long)]
        fixtures: Option<PathBuf>,
        #[arg(long)]
        parallel: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

fn parse_mode(s: &str) -> Result<NumeratorMode, String> {
    s.parse()
}

fn parse_unit(s: &str) -> Result<TimeUnit, String> {
    s.parse()
}

/// `a..b` or `a..=b`, both inclusive; a bare `a` is `a..a`.
pub fn parse_range(s: &str) -> Result<RangeInclusive<u64>, String> {
    let num = |v: &str| v.trim().parse::<u64>().map_err(|_| format!("bad range bound `{v}`"));
    match s.split_once("..") {
        Some((lo, hi)) => Ok(num(lo)?..=num(hi.strip_prefix('=').unwrap_or(hi))?),
        None => {
            let v = num(s)?;
            Ok(v..=v)
        }
    }
}

/// A failed command: message for stderr plus exit code.
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

struct Outcome {
    report: ReportDocument,
    code: i32,
    note: Option<String>,
}

fn read_input(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn in_file(path: &Path) -> impl Fn(String) -> Failure + '_ {
    move |msg| Failure(format!("{}: {msg}", path.display()))
}

fn code_for(diverges: bool) -> i32 {
    if diverges {
        EXIT_DIVERGENT
    } else {
        EXIT_CONSISTENT
    }
}

fn execute(command: &Command) -> Result<(Outcome, Format), Failure> {
    match command {
        Command::Evaluate { facts, format, mode } => {
            let doc = FactsDocument::parse(&read_input(facts)?).map_err(in_file(facts))?;
            let mut p = doc.params();
            if let Some(mode) = mode {
                p = p.with_mode(*mode);
            }
            let couple = doc.facts();
            let outcome = evaluate(&couple, &p);
            let report = ReportDocument::evaluate(&couple, &p, &outcome)?;
            Ok((Outcome { report, code: code_for(outcome.diverges), note: None }, *format))
        }
        Command::Sweep { range, unit, base_limit, joint_limit, format } => {
            let p = LimitOverrides { base_limit: *base_limit, joint_limit: *joint_limit }.apply(StatuteParams::new(*unit));
            let rows = sweep_prior_exclusion(range.clone(), &p)?;
            let zones = find_inconsistency_zone(PeriodVar::PriorB, range.clone(), &sweep_facts(0, &p), &p)?;
            let diverges = rows.iter().any(|r| r.diverges());
            let report = ReportDocument::sweep(*unit, range.clone(), &rows, &zones)?;
            Ok((Outcome { report, code: code_for(diverges), note: None }, *format))
        }
        Command::Search { domain, limit, mode, domain_bound, override_domain_bound, parallel, format } => {
            let doc = DomainDocument::parse(&read_input(domain)?).map_err(in_file(domain))?;
            let mut p = doc.params();
            if let Some(mode) = mode {
                p = p.with_mode(*mode);
            }
            let d = doc.domain().map_err(|e| in_file(domain)(e.to_string()))?;
            let limit = usize::try_from(*limit).unwrap_or(usize::MAX);
            let opts = SearchOptions {
                limit,
                safety_bound: u128::from(*domain_bound),
                override_bound: *override_domain_bound,
                parallel: *parallel,
            };
            let witnesses = bounded_search(&d, &p, &opts)?;
            let report = ReportDocument::search(&p, d.size(), limit, &witnesses)?;
            Ok((Outcome { report, code: code_for(!witnesses.is_empty()), note: None }, *format))
        }
        Command::Grid { facts, unit, format } => {
            let doc = GridDocument::parse(&read_input(facts)?).map_err(in_file(facts))?;
            let per_unit = doc.facts();
            let units: Vec<TimeUnit> = if unit.is_empty() {
                per_unit.keys().copied().collect()
            } else {
                let mut u = unit.clone();
                u.sort();
                u.dedup();
                u
            };
            let cells = cross_validation_grid(&per_unit, &units, &CombineRule::ALL, &doc.limits())
                .map_err(|e| in_file(facts)(e.to_string()))?;
            let diverges = cells.iter().any(|c| !c.converged);
            let report = ReportDocument::grid(&cells)?;
            Ok((Outcome { report, code: code_for(diverges), note: None }, *format))
        }
        Command::Validate { runs, fixtures, parallel, format } => {
            let set = match fixtures {
                Some(dir) => FixtureSet::load_dir(dir)?,
                None => FixtureSet::embedded(),
            };
            let validator = Validator::new(set).with_parallel(*parallel);
            let runners = validator.run_suite()?;
            let runs = usize::try_from(*runs).unwrap_or(usize::MAX);
            let (determinism, note) = if runs >= 2 {
                let ok = validator.determinism_check(runs)?;
                (if ok { DeterminismStatus::Pass } else { DeterminismStatus::Fail }, None)
            } else {
                (DeterminismStatus::Skipped, Some("determinism check skipped: needs --runs >= 2".to_owned()))
            };
            let report = ReportDocument::validate(runs, runners, determinism);
            let passed = report.validate.as_ref().is_some_and(|v| v.overall.is_pass());
            Ok((Outcome { report, code: code_for(!passed), note }, *format))
        }
    }
}

fn render(report: &ReportDocument, format: Format) -> Result<String, Error> {
    match format {
        Format::Table => Ok(report.to_table()),
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    }
}

/// Runs one invocation; returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_CONSISTENT };
            let _ = if e.use_stderr() {
                write!(stderr, "{}", e.render())
            } else {
                write!(stdout, "{}", e.render())
            };
            return code;
        }
    };
    let result = execute(&cli.command).and_then(|(outcome, format)| {
        let text = render(&outcome.report, format)?;
        Ok((outcome, text))
    });
    match result {
        Ok((outcome, text)) => {
            if stdout.write_all(text.as_bytes()).is_err() {
                return EXIT_ERROR;
            }
            if let Some(note) = outcome.note {
                let _ = writeln!(stderr, "note: {note}");
            }
            outcome.code
        }
        Err(Failure(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_ERROR
        }
    }
}
