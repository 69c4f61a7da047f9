//! Input documents and machine-readable reports.
//!
//! Inputs are strict JSON (unknown keys rejected, `schema_version` required).
//! Reports render as JSON, CSV or a plain-text table. JSON and CSV carry
//! whole dollars plus exact numerator/denominator pairs; only the table adds
//! thousands separators.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::engine::{AmountRepr, InterpretationOutcome};
use crate::error::{Error, Result};
use crate::money::{with_thousands, ExactAmount};
use crate::search::{DivergenceWitness, GridCell, ReasonChoice, SweepRow};
use crate::statute::{
    CombineRule, CoupleFacts, NumeratorMode, PeriodLength, SpouseTimeline, StatuteParams, TimeUnit,
};
use crate::validation::{RunnerReport, Status};

pub const SCHEMA_VERSION: u32 = 1;

fn check_schema(version: u32) -> Result<(), String> {
    if version == SCHEMA_VERSION {
        Ok(())
    } else {
        Err(format!("unsupported schema_version {version} (expected {SCHEMA_VERSION})"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpouseDoc {
    pub ownership: u64,
    #[serde(rename = "use")]
    pub use_: u64,
    #[serde(default)]
    pub since_prior_exclusion: Option<u64>,
    #[serde(default)]
    pub qualifying_reason: bool,
}

impl From<SpouseDoc> for SpouseTimeline {
    fn from(d: SpouseDoc) -> Self {
        SpouseTimeline::new(d.ownership, d.use_, d.since_prior_exclusion, d.qualifying_reason)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoupleDoc {
    pub spouse_a: SpouseDoc,
    pub spouse_b: SpouseDoc,
}

impl From<CoupleDoc> for CoupleFacts {
    fn from(d: CoupleDoc) -> Self {
        CoupleFacts::new(d.spouse_a.into(), d.spouse_b.into())
    }
}

/// Optional dollar-limit overrides, whole dollars.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LimitOverrides {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_limit: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub joint_limit: Option<u64>,
}

impl LimitOverrides {
    pub fn apply(&self, mut p: StatuteParams) -> StatuteParams {
        if let Some(base) = self.base_limit {
            p.base_limit = dollars_u64(base);
        }
        if let Some(joint) = self.joint_limit {
            p.joint_limit = dollars_u64(joint);
        }
        p
    }
}

fn dollars_u64(d: u64) -> ExactAmount {
    ExactAmount::from_rational(num::BigRational::from_integer(d.into()))
}

/// Facts for one evaluation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactsDocument {
    pub schema_version: u32,
    pub unit: TimeUnit,
    pub spouse_a: SpouseDoc,
    pub spouse_b: SpouseDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_limit: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub joint_limit: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub numerator_mode: Option<NumeratorMode>,
}

impl FactsDocument {
    pub fn parse(text: &str) -> Result<Self, String> {
        let doc: Self = serde_json::from_str(text).map_err(|e| e.to_string())?;
        check_schema(doc.schema_version)?;
        Ok(doc)
    }

    pub fn facts(&self) -> CoupleFacts {
        CoupleFacts::new(self.spouse_a.into(), self.spouse_b.into())
    }

    pub fn params(&self) -> StatuteParams {
        let limits = LimitOverrides { base_limit: self.base_limit, joint_limit: self.joint_limit };
        limits
            .apply(StatuteParams::new(self.unit))
            .with_mode(self.numerator_mode.unwrap_or_default())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpouseDomainDoc {
    pub ownership: [u64; 2],
    #[serde(rename = "use")]
    pub use_: [u64; 2],
    #[serde(default)]
    pub prior: Option<[u64; 2]>,
    #[serde(default)]
    pub prior_never: bool,
    #[serde(default = "default_reason")]
    pub reason: ReasonChoice,
}

fn default_reason() -> ReasonChoice {
    ReasonChoice::No
}

/// A search domain: inclusive `[lo, hi]` ranges per period.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainDocument {
    pub schema_version: u32,
    pub unit: TimeUnit,
    pub spouse_a: SpouseDomainDoc,
    pub spouse_b: SpouseDomainDoc,
    #[serde(default)]
    pub require_failed_test: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_limit: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub joint_limit: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub numerator_mode: Option<NumeratorMode>,
}

impl DomainDocument {
    pub fn parse(text: &str) -> Result<Self, String> {
        let doc: Self = serde_json::from_str(text).map_err(|e| e.to_string())?;
        check_schema(doc.schema_version)?;
        Ok(doc)
    }

    pub fn params(&self) -> StatuteParams {
        let limits = LimitOverrides { base_limit: self.base_limit, joint_limit: self.joint_limit };
        limits
            .apply(StatuteParams::new(self.unit))
            .with_mode(self.numerator_mode.unwrap_or_default())
    }

    pub fn domain(&self) -> Result<crate::search::SearchDomain> {
        use crate::search::{PeriodRange, PriorDomain, SearchDomain, SpouseDomain};
        let spouse = |d: &SpouseDomainDoc| -> Result<SpouseDomain> {
            Ok(SpouseDomain {
                ownership: PeriodRange::new(d.ownership[0], d.ownership[1])?,
                use_: PeriodRange::new(d.use_[0], d.use_[1])?,
                prior: PriorDomain {
                    range: d.prior.map(|[lo, hi]| PeriodRange::new(lo, hi)).transpose()?,
                    never: d.prior_never,
                },
                reason: d.reason,
            })
        };
        let domain = SearchDomain {
            spouse_a: spouse(&self.spouse_a)?,
            spouse_b: spouse(&self.spouse_b)?,
            require_failed_test: self.require_failed_test,
        };
        domain.validate()?;
        Ok(domain)
    }
}

/// Facts per time unit for the cross-validation grid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridDocument {
    pub schema_version: u32,
    pub facts: BTreeMap<TimeUnit, CoupleDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_limit: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub joint_limit: Option<u64>,
}

impl GridDocument {
    pub fn parse(text: &str) -> Result<Self, String> {
        let doc: Self = serde_json::from_str(text).map_err(|e| e.to_string())?;
        check_schema(doc.schema_version)?;
        Ok(doc)
    }

    pub fn facts(&self) -> BTreeMap<TimeUnit, CoupleFacts> {
        self.facts.iter().map(|(u, c)| (*u, (*c).into())).collect()
    }

    pub fn limits(&self) -> StatuteParams {
        LimitOverrides { base_limit: self.base_limit, joint_limit: self.joint_limit }.apply(StatuteParams::months())
    }
}

// ---------------------------------------------------------------------------
// Reports

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportKind {
    Evaluate,
    Sweep,
    Search,
    Grid,
    Validate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutcomeRepr {
    pub sum_reading: AmountRepr,
    pub joint_reading: AmountRepr,
    pub delta: AmountRepr,
    pub diverges: bool,
}

impl OutcomeRepr {
    pub fn from_outcome(o: &InterpretationOutcome) -> Result<Self> {
        Ok(Self {
            sum_reading: AmountRepr::from_amount(&o.sum_reading)?,
            joint_reading: AmountRepr::from_amount(&o.joint_reading)?,
            delta: AmountRepr::from_amount(&o.delta)?,
            diverges: o.diverges,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvaluateReport {
    pub unit: TimeUnit,
    pub numerator_mode: NumeratorMode,
    pub facts: CoupleFacts,
    pub outcome: OutcomeRepr,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRowRepr {
    #[serde(rename = "P")]
    pub p: PeriodLength,
    #[serde(rename = "SumA")]
    pub sum_a: AmountRepr,
    pub min_six: AmountRepr,
    pub min_three_joint: AmountRepr,
    #[serde(rename = "held_b2A_months")]
    pub held_b2a_months: AmountRepr,
    pub diverges: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub unit: TimeUnit,
    pub range: [u64; 2],
    pub rows: Vec<SweepRowRepr>,
    pub inconsistency_zones: Vec<[u64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRepr {
    pub pattern: String,
    pub facts: CoupleFacts,
    pub outcome: OutcomeRepr,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub unit: TimeUnit,
    pub numerator_mode: NumeratorMode,
    pub domain_size: u64,
    pub limit: u64,
    pub witnesses: Vec<WitnessRepr>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridCellRepr {
    pub unit: TimeUnit,
    pub rule: CombineRule,
    pub converged: bool,
    pub sum_reading: AmountRepr,
    pub joint_reading: AmountRepr,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeterminismStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidateReport {
    pub runs: u64,
    pub runners: Vec<RunnerReport>,
    pub determinism: DeterminismStatus,
    pub overall: Status,
}

/// Every report carries `schema_version` and `kind`; exactly one body is set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub kind: ReportKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub evaluate: Option<EvaluateReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<Vec<GridCellRepr>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub validate: Option<ValidateReport>,
}

impl ReportDocument {
    fn empty(kind: ReportKind) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            kind,
            evaluate: None,
            sweep: None,
            search: None,
            grid: None,
            validate: None,
        }
    }

    pub fn evaluate(facts: &CoupleFacts, p: &StatuteParams, outcome: &InterpretationOutcome) -> Result<Self> {
        Ok(Self {
            evaluate: Some(EvaluateReport {
                unit: p.time_unit,
                numerator_mode: p.numerator_mode,
                facts: *facts,
                outcome: OutcomeRepr::from_outcome(outcome)?,
            }),
            ..Self::empty(ReportKind::Evaluate)
        })
    }

    pub fn sweep(
        unit: TimeUnit,
        range: RangeInclusive<u64>,
        rows: &[SweepRow],
        zones: &[RangeInclusive<u64>],
    ) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| {
                Ok(SweepRowRepr {
                    p: r.p,
                    sum_a: AmountRepr::from_amount(&r.sum_a)?,
                    min_six: AmountRepr::from_amount(&r.min_six)?,
                    min_three_joint: AmountRepr::from_amount(&r.min_three_joint)?,
                    held_b2a_months: AmountRepr::from_amount(&r.held_b2a)?,
                    diverges: r.diverges(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            sweep: Some(SweepReport {
                unit,
                range: [*range.start(), *range.end()],
                rows,
                inconsistency_zones: zones.iter().map(|z| [*z.start(), *z.end()]).collect(),
            }),
            ..Self::empty(ReportKind::Sweep)
        })
    }

    pub fn search(p: &StatuteParams, domain_size: u128, limit: usize, witnesses: &[DivergenceWitness]) -> Result<Self> {
        let witnesses = witnesses
            .iter()
            .map(|w| {
                Ok(WitnessRepr {
                    pattern: fact_pattern(&w.facts),
                    facts: w.facts,
                    outcome: OutcomeRepr::from_outcome(&w.outcome)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            search: Some(SearchReport {
                unit: p.time_unit,
                numerator_mode: p.numerator_mode,
                domain_size: u64::try_from(domain_size).unwrap_or(u64::MAX),
                limit: u64::try_from(limit).unwrap_or(u64::MAX),
                witnesses,
            }),
            ..Self::empty(ReportKind::Search)
        })
    }

    pub fn grid(cells: &[GridCell]) -> Result<Self> {
        let cells = cells
            .iter()
            .map(|c| {
                Ok(GridCellRepr {
                    unit: c.unit,
                    rule: c.rule,
                    converged: c.converged,
                    sum_reading: AmountRepr::from_amount(&c.sum_reading)?,
                    joint_reading: AmountRepr::from_amount(&c.joint_reading)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { grid: Some(cells), ..Self::empty(ReportKind::Grid) })
    }

    pub fn validate(runs: usize, runners: Vec<RunnerReport>, determinism: DeterminismStatus) -> Self {
        let ok = runners.iter().all(RunnerReport::passed) && determinism != DeterminismStatus::Fail;
        Self {
            validate: Some(ValidateReport {
                runs: runs as u64,
                runners,
                determinism,
                overall: Status::from_bool(ok),
            }),
            ..Self::empty(ReportKind::Validate)
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let exact = |a: &AmountRepr| format!("{}/{}", a.numerator, a.denominator);
        if let Some(r) = &self.evaluate {
            let o = &r.outcome;
            w.write_record(["sum_reading", "joint_reading", "delta", "diverges", "sum_exact", "joint_exact", "delta_exact"])?;
            w.write_record([
                o.sum_reading.dollars.to_string(),
                o.joint_reading.dollars.to_string(),
                o.delta.dollars.to_string(),
                o.diverges.to_string(),
                exact(&o.sum_reading),
                exact(&o.joint_reading),
                exact(&o.delta),
            ])?;
        }
        if let Some(r) = &self.sweep {
            w.write_record(["P", "SumA", "min_six", "min_three_joint", "held_b2A_months", "diverges"])?;
            for row in &r.rows {
                w.write_record([
                    row.p.to_string(),
                    row.sum_a.dollars.to_string(),
                    row.min_six.dollars.to_string(),
                    row.min_three_joint.dollars.to_string(),
                    row.held_b2a_months.dollars.to_string(),
                    row.diverges.to_string(),
                ])?;
            }
        }
        if let Some(r) = &self.search {
            w.write_record([
                "own_a", "use_a", "prior_a", "reason_a", "own_b", "use_b", "prior_b", "reason_b", "sum_reading",
                "joint_reading", "delta", "sum_exact", "joint_exact",
            ])?;
            for wit in &r.witnesses {
                let mut rec = Vec::with_capacity(13);
                for s in [&wit.facts.spouse_a, &wit.facts.spouse_b] {
                    rec.push(s.ownership.to_string());
                    rec.push(s.use_.to_string());
                    rec.push(s.since_prior_exclusion.map_or("never".to_owned(), |p| p.to_string()));
                    rec.push(s.qualifying_reason.to_string());
                }
                let o = &wit.outcome;
                rec.push(o.sum_reading.dollars.to_string());
                rec.push(o.joint_reading.dollars.to_string());
                rec.push(o.delta.dollars.to_string());
                rec.push(exact(&o.sum_reading));
                rec.push(exact(&o.joint_reading));
                w.write_record(rec)?;
            }
        }
        if let Some(cells) = &self.grid {
            w.write_record(["unit", "rule", "converged", "sum_reading", "joint_reading", "sum_exact", "joint_exact"])?;
            for c in cells {
                w.write_record([
                    c.unit.to_string(),
                    c.rule.to_string(),
                    c.converged.to_string(),
                    c.sum_reading.dollars.to_string(),
                    c.joint_reading.dollars.to_string(),
                    exact(&c.sum_reading),
                    exact(&c.joint_reading),
                ])?;
            }
        }
        if let Some(r) = &self.validate {
            w.write_record(["runner", "case", "status", "diagnostic"])?;
            for runner in &r.runners {
                for case in &runner.cases {
                    w.write_record([
                        runner.runner_name.as_str(),
                        case.label.as_str(),
                        status_str(case.status),
                        case.diagnostic.as_deref().unwrap_or(""),
                    ])?;
                }
            }
            w.write_record(["determinism", "", determinism_str(r.determinism), ""])?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        if let Some(r) = &self.evaluate {
            let o = &r.outcome;
            let _ = writeln!(out, "Facts ({}): {}", r.unit, fact_pattern_with_reasons(&r.facts));
            let _ = writeln!(out, "Numerator mode: {}", r.numerator_mode);
            let _ = writeln!(out, "Sum of limitations: {}", usd(o.sum_reading.dollars));
            let _ = writeln!(out, "Joint cap:          {}", usd(o.joint_reading.dollars));
            let _ = writeln!(out, "Delta:              {}", usd(o.delta.dollars));
            let _ = writeln!(out, "Verdict: {}", verdict(o.diverges));
        }
        if let Some(r) = &self.sweep {
            let header = ["P", "SumA", "min_six", "min_three_joint", "held_b2A_months"];
            let rows: Vec<Vec<String>> = r
                .rows
                .iter()
                .map(|row| {
                    vec![
                        row.p.to_string(),
                        usd(row.sum_a.dollars),
                        usd(row.min_six.dollars),
                        usd(row.min_three_joint.dollars),
                        usd(row.held_b2a_months.dollars),
                    ]
                })
                .collect();
            out.push_str(&aligned(&header, &rows));
            let zones: Vec<String> = r.inconsistency_zones.iter().map(|[lo, hi]| format!("[{lo}, {hi}]")).collect();
            let _ = writeln!(
                out,
                "Inconsistency zones ({}): {}",
                r.unit,
                if zones.is_empty() { "none".to_owned() } else { zones.join(", ") }
            );
        }
        if let Some(r) = &self.search {
            for w in &r.witnesses {
                let o = &w.outcome;
                let _ = writeln!(
                    out,
                    "{} -> Sum of limitations = {}; Joint cap = {} -> {}",
                    fact_pattern_with_reasons(&w.facts),
                    usd(o.sum_reading.dollars),
                    usd(o.joint_reading.dollars),
                    verdict(o.diverges)
                );
            }
            let _ = writeln!(out, "{} witness(es) in a domain of {} pattern(s)", r.witnesses.len(), r.domain_size);
        }
        if let Some(cells) = &self.grid {
            let header = ["unit", "rule", "verdict", "sum", "joint"];
            let rows: Vec<Vec<String>> = cells
                .iter()
                .map(|c| {
                    vec![
                        c.unit.to_string(),
                        c.rule.to_string(),
                        if c.converged { "converge" } else { "diverge" }.to_owned(),
                        usd(c.sum_reading.dollars),
                        usd(c.joint_reading.dollars),
                    ]
                })
                .collect();
            out.push_str(&aligned(&header, &rows));
        }
        if let Some(r) = &self.validate {
            for runner in &r.runners {
                let _ = writeln!(out, "{}: {}", runner.runner_name, status_str(runner.overall));
                for case in runner.failures() {
                    let _ = writeln!(
                        out,
                        "  {} FAILED: {}",
                        case.label,
                        case.diagnostic.as_deref().unwrap_or("mismatch")
                    );
                }
            }
            let _ = writeln!(out, "determinism ({} run(s)): {}", r.runs, determinism_str(r.determinism));
            let _ = writeln!(out, "overall: {}", status_str(r.overall));
        }
        out
    }
}

fn status_str(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
    }
}

fn determinism_str(s: DeterminismStatus) -> &'static str {
    match s {
        DeterminismStatus::Pass => "pass",
        DeterminismStatus::Fail => "fail",
        DeterminismStatus::Skipped => "skipped (needs --runs >= 2)",
    }
}

fn verdict(diverges: bool) -> &'static str {
    if diverges {
        "inconsistency detected"
    } else {
        "no divergence"
    }
}

fn usd(dollars: i128) -> String {
    let grouped = with_thousands(&dollars.unsigned_abs().into());
    if dollars < 0 {
        format!("-${grouped}")
    } else {
        format!("${grouped}")
    }
}

/// `H: 120/120/120, W: 120/120/23`
pub fn fact_pattern(c: &CoupleFacts) -> String {
    format!("H: {}, W: {}", c.spouse_a.short_label(), c.spouse_b.short_label())
}

fn fact_pattern_with_reasons(c: &CoupleFacts) -> String {
    let reason = |t: &SpouseTimeline| if t.qualifying_reason { "reason" } else { "no reason" };
    format!(
        "H: {} ({}), W: {} ({})",
        c.spouse_a.short_label(),
        reason(&c.spouse_a),
        c.spouse_b.short_label(),
        reason(&c.spouse_b)
    )
}

fn aligned(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let line = |cells: Vec<&str>, out: &mut String| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .enumerate()
            .map(|(i, (c, w))| if i == 0 { format!("{c:<w$}") } else { format!("{c:>w$}") })
            .collect();
        let _ = writeln!(out, "{}", padded.join(" | ").trim_end());
    };
    line(header.to_vec(), &mut out);
    let _ = writeln!(out, "{}", widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("-|-"));
    for row in rows {
        line(row.iter().map(String::as_str).collect(), &mut out);
    }
    out
}
