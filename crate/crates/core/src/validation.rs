//! Fixed and mixed validation runners.
//!
//! Expected values live in pipe-delimited fixture files (one per runner), not
//! in code. Each runner evaluates its cases, compares whole-dollar results
//! against the fixture, and produces a [`RunnerReport`] whose canonical
//! serialization depends only on the cases.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::engine::{evaluate, InterpretationOutcome};
use crate::error::{Error, Result};
use crate::money::ExactAmount;
use crate::search::{
    bounded_search, sweep_domain, sweep_facts, sweep_prior_exclusion, PeriodRange, PriorDomain, SearchDomain,
    SearchOptions, SweepRow,
};
use crate::statute::{CoupleFacts, NumeratorMode, SpouseTimeline, StatuteParams};

pub const NO_INCONSISTENCY: &str = "run_case_no_inconsistency";
pub const WITH_INCONSISTENCY: &str = "run_case_with_inconsistency";
pub const ALL_VALIDATION: &str = "run_all_validation_tests";
pub const JOINT_PRIOR_TABLE: &str = "run_joint_prior_table";

pub const RUNNER_NAMES: [&str; 4] = [NO_INCONSISTENCY, WITH_INCONSISTENCY, ALL_VALIDATION, JOINT_PRIOR_TABLE];

/// Fixture text for every runner.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureSet {
    pub no_inconsistency: String,
    pub with_inconsistency: String,
    pub all_validation: String,
    pub joint_prior_table: String,
}

impl FixtureSet {
    pub fn file_name(runner: &str) -> String {
        format!("{runner}.txt")
    }

    /// The fixtures compiled into the binary.
    pub fn embedded() -> Self {
        Self {
            no_inconsistency: include_str!("../fixtures/run_case_no_inconsistency.txt").to_owned(),
            with_inconsistency: include_str!("../fixtures/run_case_with_inconsistency.txt").to_owned(),
            all_validation: include_str!("../fixtures/run_all_validation_tests.txt").to_owned(),
            joint_prior_table: include_str!("../fixtures/run_joint_prior_table.txt").to_owned(),
        }
    }

    pub fn load_dir(dir: &Path) -> Result<Self> {
        let read = |runner: &str| {
            let path = dir.join(Self::file_name(runner));
            if !path.is_file() {
                return Err(Error::FixtureMissing(path));
            }
            Ok(fs::read_to_string(&path)?)
        };
        Ok(Self {
            no_inconsistency: read(NO_INCONSISTENCY)?,
            with_inconsistency: read(WITH_INCONSISTENCY)?,
            all_validation: read(ALL_VALIDATION)?,
            joint_prior_table: read(JOINT_PRIOR_TABLE)?,
        })
    }
}

/// One runner-fixture row: `label | inputs | sum | joint | divergence`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseFixture {
    pub label: String,
    pub inputs: String,
    pub facts: CoupleFacts,
    pub sum: i128,
    pub joint: i128,
    pub diverges: bool,
}

/// One prior-sweep fixture row: `P | SumA | min_six | min_three_joint | held_b2A_months`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableFixture {
    pub p: u64,
    pub cells: [i128; 4],
}

pub const TABLE_COLUMNS: [&str; 4] = ["SumA", "min_six", "min_three_joint", "held_b2A_months"];

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn format_err(file: &str, line: usize, message: impl Into<String>) -> Error {
    Error::FixtureFormat {
        file: file.to_owned(),
        line,
        message: message.into(),
    }
}

fn parse_flag(s: &str) -> Option<bool> {
    match s {
        "yes" | "true" => Some(true),
        "no" | "false" => Some(false),
        _ => None,
    }
}

fn parse_spouse(s: &str) -> std::result::Result<SpouseTimeline, String> {
    let parts: Vec<&str> = s.split('/').map(str::trim).collect();
    let [own, use_, prior, reason] = parts[..] else {
        return Err(format!("expected ownership/use/prior/reason, got `{s}`"));
    };
    let period = |v: &str| v.parse::<u64>().map_err(|_| format!("bad period `{v}`"));
    let prior = match prior {
        "never" => None,
        v => Some(period(v)?),
    };
    let reason = parse_flag(reason).ok_or_else(|| format!("bad reason flag `{reason}`"))?;
    Ok(SpouseTimeline::new(period(own)?, period(use_)?, prior, reason))
}

/// Parses `A=30/30/never/no; B=12/12/never/yes`.
pub fn parse_inputs(s: &str) -> std::result::Result<CoupleFacts, String> {
    let mut a = None;
    let mut b = None;
    for item in s.split(';').map(str::trim).filter(|i| !i.is_empty()) {
        let (key, value) = item.split_once('=').ok_or_else(|| format!("expected KEY=VALUE, got `{item}`"))?;
        match key.trim() {
            "A" => a = Some(parse_spouse(value.trim())?),
            "B" => b = Some(parse_spouse(value.trim())?),
            other => return Err(format!("unknown input key `{other}`")),
        }
    }
    match (a, b) {
        (Some(a), Some(b)) => Ok(CoupleFacts::new(a, b)),
        _ => Err("inputs need both A= and B=".to_owned()),
    }
}

pub fn format_inputs(c: &CoupleFacts) -> String {
    let one = |t: &SpouseTimeline| format!("{}/{}", t.short_label(), if t.qualifying_reason { "yes" } else { "no" });
    format!("A={}; B={}", one(&c.spouse_a), one(&c.spouse_b))
}

fn parse_dollars(s: &str) -> std::result::Result<i128, String> {
    s.parse::<i128>().map_err(|_| format!("bad dollar amount `{s}`"))
}

pub fn parse_case_fixture(file: &str, text: &str) -> Result<Vec<CaseFixture>> {
    data_lines(text)
        .map(|(line, l)| {
            let cols: Vec<&str> = l.split('|').map(str::trim).collect();
            let [label, inputs, sum, joint, diverges] = cols[..] else {
                return Err(format_err(file, line, format!("expected 5 columns, found {}", cols.len())));
            };
            let err = |m: String| format_err(file, line, m);
            Ok(CaseFixture {
                label: label.to_owned(),
                inputs: inputs.to_owned(),
                facts: parse_inputs(inputs).map_err(err)?,
                sum: parse_dollars(sum).map_err(err)?,
                joint: parse_dollars(joint).map_err(err)?,
                diverges: parse_flag(diverges).ok_or_else(|| err(format!("bad divergence flag `{diverges}`")))?,
            })
        })
        .collect()
}

pub fn parse_table_fixture(file: &str, text: &str) -> Result<Vec<TableFixture>> {
    data_lines(text)
        .map(|(line, l)| {
            let cols: Vec<&str> = l.split('|').map(str::trim).collect();
            if cols.len() != 5 {
                return Err(format_err(file, line, format!("expected 5 columns, found {}", cols.len())));
            }
            let p = cols[0]
                .parse::<u64>()
                .map_err(|_| format_err(file, line, format!("bad P `{}`", cols[0])))?;
            let mut cells = [0i128; 4];
            for (cell, raw) in cells.iter_mut().zip(&cols[1..]) {
                *cell = parse_dollars(raw).map_err(|m| format_err(file, line, m))?;
            }
            Ok(TableFixture { p, cells })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn is_pass(self) -> bool {
        self == Status::Pass
    }
}

/// A JSON boolean or integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CellValue {
    Flag(bool),
    Dollars(i128),
}

impl Serialize for CellValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            CellValue::Flag(b) => s.serialize_bool(*b),
            CellValue::Dollars(d) => s.serialize_i128(*d),
        }
    }
}

impl<'de> Deserialize<'de> for CellValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct CellVisitor;

        impl serde::de::Visitor<'_> for CellVisitor {
            type Value = CellValue;

            fn expecting(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
                f.write_str("a boolean or an integer")
            }

            fn visit_bool<E: serde::de::Error>(self, v: bool) -> std::result::Result<CellValue, E> {
                Ok(CellValue::Flag(v))
            }

            fn visit_i64<E: serde::de::Error>(self, v: i64) -> std::result::Result<CellValue, E> {
                Ok(CellValue::Dollars(v.into()))
            }

            fn visit_u64<E: serde::de::Error>(self, v: u64) -> std::result::Result<CellValue, E> {
                Ok(CellValue::Dollars(v.into()))
            }

            fn visit_i128<E: serde::de::Error>(self, v: i128) -> std::result::Result<CellValue, E> {
                Ok(CellValue::Dollars(v))
            }

            fn visit_u128<E: serde::de::Error>(self, v: u128) -> std::result::Result<CellValue, E> {
                i128::try_from(v).map(CellValue::Dollars).map_err(E::custom)
            }
        }

        d.deserialize_any(CellVisitor)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub column: String,
    pub value: CellValue,
}

impl Cell {
    fn dollars(column: &str, value: i128) -> Self {
        Self { column: column.to_owned(), value: CellValue::Dollars(value) }
    }

    fn flag(column: &str, value: bool) -> Self {
        Self { column: column.to_owned(), value: CellValue::Flag(value) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseResult {
    pub label: String,
    pub inputs: String,
    pub expected: Vec<Cell>,
    pub actual: Vec<Cell>,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
}

impl CaseResult {
    fn compare(label: &str, inputs: &str, expected: Vec<Cell>, actual: Vec<Cell>, context: &str) -> Self {
        let mismatches: Vec<String> = expected
            .iter()
            .zip(&actual)
            .filter(|(e, a)| e.value != a.value)
            .map(|(e, a)| format!("{context}column {}: expected {}, actual {}", e.column, show(&e.value), show(&a.value)))
            .collect();
        let ok = mismatches.is_empty() && expected.len() == actual.len();
        Self {
            label: label.to_owned(),
            inputs: inputs.to_owned(),
            expected,
            actual,
            status: Status::from_bool(ok),
            diagnostic: (!mismatches.is_empty()).then(|| mismatches.join("; ")),
        }
    }
}

fn show(v: &CellValue) -> String {
    match v {
        CellValue::Flag(b) => if *b { "yes" } else { "no" }.to_owned(),
        CellValue::Dollars(d) => d.to_string(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunnerReport {
    pub runner_name: String,
    pub cases: Vec<CaseResult>,
    pub overall: Status,
}

impl RunnerReport {
    pub fn new(runner_name: &str, cases: Vec<CaseResult>) -> Self {
        let overall = Status::from_bool(cases.iter().all(|c| c.status.is_pass()));
        Self { runner_name: runner_name.to_owned(), cases, overall }
    }

    pub fn passed(&self) -> bool {
        self.overall.is_pass()
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseResult> {
        self.cases.iter().filter(|c| !c.status.is_pass())
    }

    /// Compact JSON of the report; a pure function of its cases.
    pub fn canonical_serialization(&self) -> Vec<u8> {
        serde_json::to_vec(self).expect("runner reports always serialize")
    }
}

fn rounded(a: &ExactAmount) -> i128 {
    a.rounded_i128().expect("runner amounts are bounded by the joint limit")
}

fn outcome_cells(o: &InterpretationOutcome) -> Vec<Cell> {
    vec![
        Cell::dollars("sum", rounded(&o.sum_reading)),
        Cell::dollars("joint", rounded(&o.joint_reading)),
        Cell::flag("diverges", o.diverges),
    ]
}

fn fixture_cells(f: &CaseFixture) -> Vec<Cell> {
    vec![Cell::dollars("sum", f.sum), Cell::dollars("joint", f.joint), Cell::flag("diverges", f.diverges)]
}

fn check_case(f: &CaseFixture, outcome: &InterpretationOutcome) -> CaseResult {
    CaseResult::compare(&f.label, &f.inputs, fixture_cells(f), outcome_cells(outcome), "")
}

fn failed_case(label: &str, inputs: &str, expected: Vec<Cell>, diagnostic: String) -> CaseResult {
    CaseResult {
        label: label.to_owned(),
        inputs: inputs.to_owned(),
        expected,
        actual: Vec::new(),
        status: Status::Fail,
        diagnostic: Some(diagnostic),
    }
}

/// Runs the validation runners against one fixture set.
#[derive(Clone, Debug)]
pub struct Validator {
    pub fixtures: FixtureSet,
    pub params: StatuteParams,
    pub parallel: bool,
}

impl Validator {
    pub fn new(fixtures: FixtureSet) -> Self {
        Self { fixtures, params: StatuteParams::months(), parallel: false }
    }

    pub fn embedded() -> Self {
        Self::new(FixtureSet::embedded())
    }

    pub fn with_parallel(mut self, parallel: bool) -> Self {
        self.parallel = parallel;
        self
    }

    fn fixed_runner(&self, name: &str, text: &str) -> Result<RunnerReport> {
        let rows = parse_case_fixture(&FixtureSet::file_name(name), text)?;
        let cases = rows.iter().map(|f| check_case(f, &evaluate(&f.facts, &self.params))).collect();
        Ok(RunnerReport::new(name, cases))
    }

    pub fn run_case_no_inconsistency(&self) -> Result<RunnerReport> {
        self.fixed_runner(NO_INCONSISTENCY, &self.fixtures.no_inconsistency)
    }

    pub fn run_case_with_inconsistency(&self) -> Result<RunnerReport> {
        self.fixed_runner(WITH_INCONSISTENCY, &self.fixtures.with_inconsistency)
    }

    /// Parts 1-3 are fixed cases, part 4 re-runs them and byte-compares, and
    /// parts 5-6 must be rediscovered by bounded search.
    pub fn run_all_validation_tests(&self) -> Result<RunnerReport> {
        let rows = parse_case_fixture(&FixtureSet::file_name(ALL_VALIDATION), &self.fixtures.all_validation)?;
        let (search_rows, fixed_rows): (Vec<_>, Vec<_>) =
            rows.iter().partition(|f| f.label.starts_with("part5") || f.label.starts_with("part6"));

        let run_fixed = || -> Vec<CaseResult> {
            fixed_rows.iter().map(|f| check_case(f, &evaluate(&f.facts, &self.params))).collect()
        };
        let mut cases = run_fixed();
        let first = serde_json::to_vec(&cases)?;
        let again = serde_json::to_vec(&run_fixed())?;
        let repeat_ok = first == again;
        cases.push(CaseResult {
            label: "part4_determinism".to_owned(),
            inputs: format!("re-run of {} fixed cases", fixed_rows.len()),
            expected: vec![Cell::flag("identical", true)],
            actual: vec![Cell::flag("identical", repeat_ok)],
            status: Status::from_bool(repeat_ok),
            diagnostic: (!repeat_ok).then(|| "repeated fixed cases serialized differently".to_owned()),
        });

        for row in search_rows {
            cases.push(if row.label.starts_with("part5") {
                self.first_witness_case(row)?
            } else {
                self.rediscovered_witness_case(row)?
            });
        }
        Ok(RunnerReport::new(ALL_VALIDATION, cases))
    }

    fn search_options(&self, limit: usize) -> SearchOptions {
        SearchOptions { limit, parallel: self.parallel, ..SearchOptions::default() }
    }

    /// The first witness on the sweep domain must be exactly the fixture row.
    fn first_witness_case(&self, row: &CaseFixture) -> Result<CaseResult> {
        let full = self.params.full_test_length.get();
        let domain = sweep_domain(PeriodRange::new(1, 5 * full)?, &self.params);
        let found = bounded_search(&domain, &self.params, &self.search_options(1))?;
        Ok(match found.first() {
            Some(w) if w.facts == row.facts => check_case(row, &w.outcome),
            Some(w) => failed_case(
                &row.label,
                &row.inputs,
                fixture_cells(row),
                format!("first witness was {}", format_inputs(&w.facts)),
            ),
            None => failed_case(&row.label, &row.inputs, fixture_cells(row), "search found no witness".to_owned()),
        })
    }

    /// Searches a wider domain around the sweep configuration and requires the
    /// fixture row among the witnesses.
    fn rediscovered_witness_case(&self, row: &CaseFixture) -> Result<CaseResult> {
        let mut domain = SearchDomain::singleton(&sweep_facts(0, &self.params));
        let background = domain.spouse_b.ownership.hi();
        let around = PeriodRange::new(background.saturating_sub(20), background)?;
        domain.spouse_b.ownership = around;
        domain.spouse_b.use_ = around;
        domain.spouse_b.prior = PriorDomain::range(PeriodRange::new(1, self.params.full_test_length.get() * 3 / 2)?);
        domain.require_failed_test = true;
        let found = bounded_search(&domain, &self.params, &self.search_options(usize::MAX))?;
        Ok(match found.iter().find(|w| w.facts == row.facts) {
            Some(w) => check_case(row, &w.outcome),
            None => failed_case(
                &row.label,
                &row.inputs,
                fixture_cells(row),
                format!("not among the {} witnesses found", found.len()),
            ),
        })
    }

    /// Sweeps B's prior-exclusion gap over 1..=36 and compares every cell.
    pub fn run_joint_prior_table(&self) -> Result<(RunnerReport, Vec<SweepRow>)> {
        let file = FixtureSet::file_name(JOINT_PRIOR_TABLE);
        let table = parse_table_fixture(&file, &self.fixtures.joint_prior_table)?;
        let rows = sweep_prior_exclusion(1..=36, &self.params)?;
        let mut cases = Vec::with_capacity(rows.len());
        for row in &rows {
            let p = row.p.get();
            let label = format!("P={p}");
            let inputs = format_inputs(&sweep_facts(p, &self.params));
            let actual: Vec<Cell> = TABLE_COLUMNS
                .iter()
                .zip(sweep_cells(row))
                .map(|(c, v)| Cell::dollars(c, v))
                .collect();
            let case = match table.iter().find(|t| t.p == p) {
                Some(t) => {
                    let expected = TABLE_COLUMNS.iter().zip(t.cells).map(|(c, v)| Cell::dollars(c, v)).collect();
                    CaseResult::compare(&label, &inputs, expected, actual, &format!("row P={p}, "))
                }
                None => CaseResult {
                    label,
                    inputs,
                    expected: Vec::new(),
                    actual,
                    status: Status::Fail,
                    diagnostic: Some(format!("row P={p} missing from {file}")),
                },
            };
            cases.push(case);
        }
        for extra in table.iter().filter(|t| !(1..=36).contains(&t.p)) {
            cases.push(failed_case(
                &format!("P={}", extra.p),
                "",
                Vec::new(),
                format!("row P={} outside the swept range 1..36", extra.p),
            ));
        }
        Ok((RunnerReport::new(JOINT_PRIOR_TABLE, cases), rows))
    }

    /// All four runners in canonical order.
    pub fn run_suite(&self) -> Result<Vec<RunnerReport>> {
        if !self.parallel {
            return Ok(vec![
                self.run_case_no_inconsistency()?,
                self.run_case_with_inconsistency()?,
                self.run_all_validation_tests()?,
                self.run_joint_prior_table()?.0,
            ]);
        }
        let ((a, b), (c, d)) = rayon::join(
            || rayon::join(|| self.run_case_no_inconsistency(), || self.run_case_with_inconsistency()),
            || rayon::join(|| self.run_all_validation_tests(), || self.run_joint_prior_table()),
        );
        Ok(vec![a?, b?, c?, d?.0])
    }

    pub fn suite_serialization(&self) -> Result<Vec<u8>> {
        Ok(suite_bytes(&self.run_suite()?))
    }

    /// Runs the whole suite `n_runs` times; passes iff every serialization is
    /// byte-identical.
    pub fn determinism_check(&self, n_runs: usize) -> Result<bool> {
        let mut failure = None;
        let ok = determinism_check_with(n_runs, |_| match self.suite_serialization() {
            Ok(bytes) => bytes,
            Err(e) => {
                failure.get_or_insert(e);
                Vec::new()
            }
        })?;
        match failure {
            Some(e) => Err(e),
            None => Ok(ok),
        }
    }
}

pub fn sweep_cells(row: &SweepRow) -> [i128; 4] {
    [
        rounded(&row.sum_a),
        rounded(row.joint(NumeratorMode::MinSix)),
        rounded(row.joint(NumeratorMode::MinThreeJoint)),
        rounded(row.joint(NumeratorMode::HeldB2aMonths)),
    ]
}

pub fn suite_bytes(reports: &[RunnerReport]) -> Vec<u8> {
    let mut out = Vec::new();
    for r in reports {
        out.extend(r.canonical_serialization());
        out.push(b'\n');
    }
    out
}

/// `run(i)` produces the serialization of run `i`.
pub fn determinism_check_with<F>(n_runs: usize, mut run: F) -> Result<bool>
where
    F: FnMut(usize) -> Vec<u8>,
{
    if n_runs < 2 {
        return Err(Error::TooFewRuns(n_runs));
    }
    let first = run(0);
    Ok((1..n_runs).all(|i| run(i) == first))
}
