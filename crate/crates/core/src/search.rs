//! Automated divergence discovery over fact patterns.
//!
//! Everything here is plain enumeration over small integer domains. The
//! bounded search skips subtrees whose outcome is pinned by monotonicity of
//! both readings, so its output always equals a naive filter over the full
//! enumeration, in the same order.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::engine::{evaluate, InterpretationOutcome};
use crate::error::{Error, Result};
use crate::money::ExactAmount;
use crate::statute::{
    meets_time_test, shortest_of_three, CombineRule, CoupleFacts, NumeratorMode, PeriodLength,
    SpouseTimeline, StatuteParams, TimeUnit,
};

/// One of the six period variables, in canonical enumeration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PeriodVar {
    OwnA,
    UseA,
    PriorA,
    OwnB,
    UseB,
    PriorB,
}

impl PeriodVar {
    pub const ALL: [PeriodVar; 6] = [
        PeriodVar::OwnA,
        PeriodVar::UseA,
        PeriodVar::PriorA,
        PeriodVar::OwnB,
        PeriodVar::UseB,
        PeriodVar::PriorB,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PeriodVar::OwnA => "own_a",
            PeriodVar::UseA => "use_a",
            PeriodVar::PriorA => "prior_a",
            PeriodVar::OwnB => "own_b",
            PeriodVar::UseB => "use_b",
            PeriodVar::PriorB => "prior_b",
        }
    }

    pub fn set(self, facts: &mut CoupleFacts, value: u64) {
        let v = PeriodLength(value);
        match self {
            PeriodVar::OwnA => facts.spouse_a.ownership = v,
            PeriodVar::UseA => facts.spouse_a.use_ = v,
            PeriodVar::PriorA => facts.spouse_a.since_prior_exclusion = Some(v),
            PeriodVar::OwnB => facts.spouse_b.ownership = v,
            PeriodVar::UseB => facts.spouse_b.use_ = v,
            PeriodVar::PriorB => facts.spouse_b.since_prior_exclusion = Some(v),
        }
    }
}

impl fmt::Display for PeriodVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PeriodVar {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        PeriodVar::ALL
            .into_iter()
            .find(|v| v.as_str() == s)
            .ok_or_else(|| format!("unknown period variable `{s}`"))
    }
}

fn check_range(range: &RangeInclusive<u64>) -> Result<()> {
    if range.is_empty() {
        return Err(Error::EmptyRange {
            lo: *range.start(),
            hi: *range.end(),
        });
    }
    Ok(())
}

/// One row of the prior-exclusion sweep: the sum reading next to the joint
/// reading under each numerator mode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepRow {
    pub p: PeriodLength,
    pub sum_a: ExactAmount,
    pub min_six: ExactAmount,
    pub min_three_joint: ExactAmount,
    pub held_b2a: ExactAmount,
}

impl SweepRow {
    pub fn joint(&self, mode: NumeratorMode) -> &ExactAmount {
        match mode {
            NumeratorMode::MinSix => &self.min_six,
            NumeratorMode::MinThreeJoint => &self.min_three_joint,
            NumeratorMode::HeldB2aMonths => &self.held_b2a,
        }
    }

    pub fn diverges(&self) -> bool {
        NumeratorMode::ALL.iter().any(|&m| self.joint(m) != &self.sum_a)
    }
}

/// The sweep configuration: spouse A holds every period at five test lengths
/// (120 months), spouse B likewise except for a prior-exclusion gap of
/// `prior`, and only B has a qualifying reason.
pub fn sweep_facts(prior: u64, p: &StatuteParams) -> CoupleFacts {
    let background = p.full_test_length.get() * 5;
    CoupleFacts::new(
        SpouseTimeline::new(background, background, Some(background), false),
        SpouseTimeline::new(background, background, Some(prior), true),
    )
}

/// Varies spouse B's prior-exclusion gap over `range`; `p.numerator_mode` is
/// ignored since every mode gets its own column.
pub fn sweep_prior_exclusion(range: RangeInclusive<u64>, p: &StatuteParams) -> Result<Vec<SweepRow>> {
    check_range(&range)?;
    let base = p.clone().with_combine_rule(None);
    Ok(range
        .map(|prior| {
            let facts = sweep_facts(prior, p);
            let joint = |mode| evaluate(&facts, &base.clone().with_mode(mode)).joint_reading;
            SweepRow {
                p: PeriodLength(prior),
                sum_a: evaluate(&facts, &base).sum_reading,
                min_six: joint(NumeratorMode::MinSix),
                min_three_joint: joint(NumeratorMode::MinThreeJoint),
                held_b2a: joint(NumeratorMode::HeldB2aMonths),
            }
        })
        .collect())
}

/// Scans `vary` over `range` with everything else taken from `template`, and
/// returns the maximal runs of divergent values.
pub fn find_inconsistency_zone(
    vary: PeriodVar,
    range: RangeInclusive<u64>,
    template: &CoupleFacts,
    p: &StatuteParams,
) -> Result<Vec<RangeInclusive<u64>>> {
    check_range(&range)?;
    let mut zones = Vec::new();
    let mut open: Option<(u64, u64)> = None;
    for value in range {
        let mut facts = *template;
        vary.set(&mut facts, value);
        if evaluate(&facts, p).diverges {
            open = Some(match open {
                Some((lo, _)) => (lo, value),
                None => (value, value),
            });
        } else if let Some((lo, hi)) = open.take() {
            zones.push(lo..=hi);
        }
    }
    if let Some((lo, hi)) = open {
        zones.push(lo..=hi);
    }
    Ok(zones)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PeriodRange {
    lo: u64,
    hi: u64,
}

impl PeriodRange {
    pub fn new(lo: u64, hi: u64) -> Result<Self> {
        if lo > hi {
            return Err(Error::EmptyRange { lo, hi });
        }
        Ok(Self { lo, hi })
    }

    pub fn single(value: u64) -> Self {
        Self { lo: value, hi: value }
    }

    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }

    pub fn len(&self) -> u128 {
        u128::from(self.hi - self.lo) + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn values(&self) -> RangeInclusive<u64> {
        self.lo..=self.hi
    }
}

/// Candidate prior-exclusion gaps. "Never" sorts after every integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PriorDomain {
    pub range: Option<PeriodRange>,
    pub never: bool,
}

impl PriorDomain {
    pub fn range(range: PeriodRange) -> Self {
        Self { range: Some(range), never: false }
    }

    pub fn never() -> Self {
        Self { range: None, never: true }
    }

    pub fn len(&self) -> u128 {
        self.range.map_or(0, |r| r.len()) + u128::from(self.never)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReasonChoice {
    No,
    Yes,
    Either,
}

impl ReasonChoice {
    fn values(self) -> &'static [bool] {
        match self {
            ReasonChoice::No => &[false],
            ReasonChoice::Yes => &[true],
            ReasonChoice::Either => &[false, true],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpouseDomain {
    pub ownership: PeriodRange,
    pub use_: PeriodRange,
    pub prior: PriorDomain,
    pub reason: ReasonChoice,
}

impl SpouseDomain {
    pub fn fixed(t: &SpouseTimeline) -> Self {
        Self {
            ownership: PeriodRange::single(t.ownership.get()),
            use_: PeriodRange::single(t.use_.get()),
            prior: match t.since_prior_exclusion {
                Some(v) => PriorDomain::range(PeriodRange::single(v.get())),
                None => PriorDomain::never(),
            },
            reason: if t.qualifying_reason { ReasonChoice::Yes } else { ReasonChoice::No },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchDomain {
    pub spouse_a: SpouseDomain,
    pub spouse_b: SpouseDomain,
    /// Only keep patterns where at least one spouse fails a time test.
    pub require_failed_test: bool,
}

impl SearchDomain {
    /// The single point `facts`.
    pub fn singleton(facts: &CoupleFacts) -> Self {
        Self {
            spouse_a: SpouseDomain::fixed(&facts.spouse_a),
            spouse_b: SpouseDomain::fixed(&facts.spouse_b),
            require_failed_test: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, spouse) in [("spouse_a", &self.spouse_a), ("spouse_b", &self.spouse_b)] {
            if spouse.prior.is_empty() {
                return Err(Error::InvalidDomain(format!(
                    "{name}: prior-exclusion domain needs a range or `never`"
                )));
            }
        }
        Ok(())
    }

    /// Number of fact patterns before pruning, reason flags included.
    pub fn size(&self) -> u128 {
        [&self.spouse_a, &self.spouse_b]
            .iter()
            .map(|s| s.ownership.len() * s.use_.len() * s.prior.len() * s.reason.values().len() as u128)
            .product()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub limit: usize,
    pub safety_bound: u128,
    pub override_bound: bool,
    pub parallel: bool,
}

impl SearchOptions {
    pub const DEFAULT_SAFETY_BOUND: u128 = 10_000_000;

    pub fn with_limit(limit: usize) -> Self {
        Self { limit, ..Self::default() }
    }
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            limit: 100,
            safety_bound: Self::DEFAULT_SAFETY_BOUND,
            override_bound: false,
            parallel: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivergenceWitness {
    pub facts: CoupleFacts,
    pub params: StatuteParams,
    pub outcome: InterpretationOutcome,
}

/// True when at least one spouse misses one of its own three time tests.
pub fn fails_some_test(c: &CoupleFacts, p: &StatuteParams) -> bool {
    !(meets_time_test(shortest_of_three(&c.spouse_a, p), p)
        && meets_time_test(shortest_of_three(&c.spouse_b, p), p))
}

type Slot = Option<u64>;

struct Enumerator<'a> {
    params: &'a StatuteParams,
    candidates: [Vec<Slot>; 6],
    reasons: [&'static [bool]; 2],
    require_failed_test: bool,
    limit: usize,
}

fn prior_slots(prior: &PriorDomain) -> Vec<Slot> {
    let mut slots: Vec<Slot> = prior.range.iter().flat_map(|r| r.values().map(Some)).collect();
    if prior.never {
        slots.push(None);
    }
    slots
}

fn period_slots(range: &PeriodRange) -> Vec<Slot> {
    range.values().map(Some).collect()
}

fn build_facts(slots: &[Slot; 6], reason_a: bool, reason_b: bool) -> CoupleFacts {
    let period = |i: usize| slots[i].expect("ownership and use are always integers");
    CoupleFacts::new(
        SpouseTimeline::new(period(0), period(1), slots[2], reason_a),
        SpouseTimeline::new(period(3), period(4), slots[5], reason_b),
    )
}

impl<'a> Enumerator<'a> {
    fn new(d: &SearchDomain, params: &'a StatuteParams, limit: usize) -> Self {
        Self {
            params,
            candidates: [
                period_slots(&d.spouse_a.ownership),
                period_slots(&d.spouse_a.use_),
                prior_slots(&d.spouse_a.prior),
                period_slots(&d.spouse_b.ownership),
                period_slots(&d.spouse_b.use_),
                prior_slots(&d.spouse_b.prior),
            ],
            reasons: [d.spouse_a.reason.values(), d.spouse_b.reason.values()],
            require_failed_test: d.require_failed_test,
            limit,
        }
    }

    fn corner(&self, assigned: &[Slot; 6], depth: usize, upper: bool) -> [Slot; 6] {
        let mut slots = *assigned;
        for (i, slot) in slots.iter_mut().enumerate().skip(depth) {
            let cands = &self.candidates[i];
            *slot = if upper { *cands.last().expect("non-empty") } else { cands[0] };
        }
        slots
    }

    /// Whether no completion of `assigned[..depth]` can be a witness.
    ///
    /// Both readings are nondecreasing in every period and in the reason
    /// flags ("never" being the largest prior gap). So if the lower corner
    /// already has both spouses meeting every test, all completions have the
    /// same outcome; and if the upper corner yields zero under both readings,
    /// so does every completion.
    fn subtree_is_quiet(&self, assigned: &[Slot; 6], depth: usize) -> bool {
        let p = self.params;
        let lower = build_facts(&self.corner(assigned, depth, false), self.reasons[0][0], self.reasons[1][0]);
        if !fails_some_test(&lower, p) {
            return self.require_failed_test || !evaluate(&lower, p).diverges;
        }
        let top = |i: usize| *self.reasons[i].last().expect("non-empty");
        let upper = build_facts(&self.corner(assigned, depth, true), top(0), top(1));
        let out = evaluate(&upper, p);
        out.sum_reading.is_zero() && out.joint_reading.is_zero()
    }

    fn descend(&self, assigned: &mut [Slot; 6], depth: usize, out: &mut Vec<DivergenceWitness>) {
        if out.len() >= self.limit || self.subtree_is_quiet(assigned, depth) {
            return;
        }
        if depth == 6 {
            self.leaf(assigned, out);
            return;
        }
        for &value in &self.candidates[depth] {
            assigned[depth] = value;
            self.descend(assigned, depth + 1, out);
            if out.len() >= self.limit {
                return;
            }
        }
    }

    fn leaf(&self, assigned: &[Slot; 6], out: &mut Vec<DivergenceWitness>) {
        for &reason_a in self.reasons[0] {
            for &reason_b in self.reasons[1] {
                let facts = build_facts(assigned, reason_a, reason_b);
                if self.require_failed_test && !fails_some_test(&facts, self.params) {
                    continue;
                }
                let outcome = evaluate(&facts, self.params);
                if outcome.diverges {
                    out.push(DivergenceWitness {
                        facts,
                        params: self.params.clone(),
                        outcome,
                    });
                    if out.len() >= self.limit {
                        return;
                    }
                }
            }
        }
    }
}

/// First `limit` divergent fact patterns in lexicographic order over
/// (own A, use A, prior A, own B, use B, prior B), reason flags innermost.
pub fn bounded_search(d: &SearchDomain, p: &StatuteParams, opts: &SearchOptions) -> Result<Vec<DivergenceWitness>> {
    if opts.limit == 0 {
        return Err(Error::ZeroLimit);
    }
    d.validate()?;
    let size = d.size();
    if size > opts.safety_bound && !opts.override_bound {
        return Err(Error::DomainTooLarge {
            size,
            bound: opts.safety_bound,
        });
    }

    let walker = Enumerator::new(d, p, opts.limit);
    let mut root = [None; 6];
    if !opts.parallel {
        let mut out = Vec::new();
        walker.descend(&mut root, 0, &mut out);
        return Ok(out);
    }

    if walker.subtree_is_quiet(&root, 0) {
        return Ok(Vec::new());
    }
    // Each top-level branch is searched on its own and the results are
    // concatenated in branch order, which is the sequential order.
    let branches: Vec<Vec<DivergenceWitness>> = walker.candidates[0]
        .par_iter()
        .map(|&first| {
            let mut assigned = root;
            assigned[0] = first;
            let mut out = Vec::new();
            walker.descend(&mut assigned, 1, &mut out);
            out
        })
        .collect();
    let mut merged: Vec<DivergenceWitness> = branches.into_iter().flatten().collect();
    merged.truncate(opts.limit);
    Ok(merged)
}

/// The sweep configuration as a search domain, prior gap of B over `prior`.
pub fn sweep_domain(prior: PeriodRange, p: &StatuteParams) -> SearchDomain {
    let mut domain = SearchDomain::singleton(&sweep_facts(prior.lo(), p));
    domain.spouse_b.prior = PriorDomain::range(prior);
    domain
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridCell {
    pub unit: TimeUnit,
    pub rule: CombineRule,
    pub sum_reading: ExactAmount,
    pub joint_reading: ExactAmount,
    pub converged: bool,
}

/// Evaluates every (unit, rule) pair on the facts supplied for that unit.
/// Dollar limits come from `limits`; each unit uses its canonical test length.
pub fn cross_validation_grid(
    facts: &BTreeMap<TimeUnit, CoupleFacts>,
    units: &[TimeUnit],
    rules: &[CombineRule],
    limits: &StatuteParams,
) -> Result<Vec<GridCell>> {
    let mut cells = Vec::with_capacity(units.len() * rules.len());
    for &unit in units {
        let unit_facts = facts.get(&unit).ok_or(Error::MissingUnitFacts(unit))?;
        for &rule in rules {
            let p = StatuteParams::new(unit)
                .with_limits(limits.base_limit.clone(), limits.joint_limit.clone())
                .with_combine_rule(Some(rule));
            let out = evaluate(unit_facts, &p);
            cells.push(GridCell {
                unit,
                rule,
                converged: !out.diverges,
                sum_reading: out.sum_reading,
                joint_reading: out.joint_reading,
            });
        }
    }
    Ok(cells)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn usd(d: i64) -> ExactAmount {
        ExactAmount::dollars(d)
    }

    fn rounded(a: &ExactAmount) -> i64 {
        a.rounded_i128().unwrap() as i64
    }

    fn range(lo: u64, hi: u64) -> PeriodRange {
        PeriodRange::new(lo, hi).unwrap()
    }

    /// Nested loops over the domain, in declared order, filtered by `evaluate`.
    fn naive(d: &SearchDomain, p: &StatuteParams, limit: usize) -> Vec<CoupleFacts> {
        let priors = |pd: &PriorDomain| {
            let mut v: Vec<Option<u64>> = pd.range.map(|r| (r.lo()..=r.hi()).map(Some).collect()).unwrap_or_default();
            if pd.never {
                v.push(None);
            }
            v
        };
        let (a, b) = (&d.spouse_a, &d.spouse_b);
        let mut out = Vec::new();
        for oa in a.ownership.values() {
            for ua in a.use_.values() {
                for pa in priors(&a.prior) {
                    for ob in b.ownership.values() {
                        for ub in b.use_.values() {
                            for pb in priors(&b.prior) {
                                for &ra in a.reason.values() {
                                    for &rb in b.reason.values() {
                                        let c = CoupleFacts::new(
                                            SpouseTimeline::new(oa, ua, pa, ra),
                                            SpouseTimeline::new(ob, ub, pb, rb),
                                        );
                                        if d.require_failed_test && !fails_some_test(&c, p) {
                                            continue;
                                        }
                                        if evaluate(&c, p).diverges && out.len() < limit {
                                            out.push(c);
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn sweep_examples() {
        let rows = sweep_prior_exclusion(1..=36, &StatuteParams::months()).unwrap();
        assert_eq!(rows.len(), 36);
        let cells = |r: &SweepRow| [rounded(&r.sum_a), rounded(&r.min_six), rounded(&r.min_three_joint), rounded(&r.held_b2a)];
        assert_eq!(cells(&rows[0]), [260_417, 20_833, 20_833, 20_833]);
        assert_eq!(cells(&rows[11]), [375_000, 250_000, 250_000, 250_000]);
        assert_eq!(cells(&rows[23]), [500_000; 4]);
        assert!(rows.windows(2).all(|w| w[0].p < w[1].p));
    }

    #[test]
    fn sweep_at_zero() {
        let rows = sweep_prior_exclusion(0..=0, &StatuteParams::months()).unwrap();
        assert_eq!(rows[0].sum_a, usd(250_000));
        for mode in NumeratorMode::ALL {
            assert_eq!(rows[0].joint(mode), &usd(0));
        }
        assert!(rows[0].diverges());
    }

    #[test]
    fn sweep_rejects_empty_range() {
        #[allow(clippy::reversed_empty_ranges)]
        let err = sweep_prior_exclusion(5..=3, &StatuteParams::months()).unwrap_err();
        assert!(matches!(err, Error::EmptyRange { lo: 5, hi: 3 }));
    }

    #[test]
    fn zone_examples() {
        let p = StatuteParams::months();
        let template = sweep_facts(0, &p);
        assert_eq!(find_inconsistency_zone(PeriodVar::PriorB, 1..=36, &template, &p).unwrap(), vec![1..=23]);
        assert!(find_inconsistency_zone(PeriodVar::PriorB, 24..=36, &template, &p).unwrap().is_empty());
        assert_eq!(find_inconsistency_zone(PeriodVar::PriorB, 1..=1, &template, &p).unwrap(), vec![1..=1]);
    }

    #[test]
    fn zone_without_any_reason() {
        let p = StatuteParams::months();
        let template = CoupleFacts::new(SpouseTimeline::new(30, 30, None, false), SpouseTimeline::new(30, 30, None, false));
        // No reason anywhere: under 24 months of use the couple gets 250,000 vs 0.
        assert_eq!(find_inconsistency_zone(PeriodVar::UseA, 0..=30, &template, &p).unwrap(), vec![0..=23]);
    }

    #[test]
    fn bounded_search_sweep_domain() {
        let p = StatuteParams::months();
        let d = sweep_domain(range(1, 120), &p);
        let found = bounded_search(&d, &p, &SearchOptions::with_limit(1000)).unwrap();
        assert_eq!(found.len(), 23);
        assert_eq!(found[0].facts.spouse_b.since_prior_exclusion, Some(PeriodLength(1)));
        let w23 = &found[22];
        assert_eq!(w23.facts.spouse_b.since_prior_exclusion, Some(PeriodLength(23)));
        assert_eq!(rounded(&w23.outcome.sum_reading), 489_583);
        assert_eq!(rounded(&w23.outcome.joint_reading), 479_167);
        for w in &found {
            assert!(w.outcome.diverges);
            assert_eq!(evaluate(&w.facts, &w.params), w.outcome);
        }
    }

    #[test]
    fn bounded_search_all_qualified_is_empty() {
        let p = StatuteParams::months();
        let s = SpouseDomain {
            ownership: range(24, 27),
            use_: range(24, 27),
            prior: PriorDomain { range: Some(range(24, 26)), never: true },
            reason: ReasonChoice::Either,
        };
        let d = SearchDomain { spouse_a: s, spouse_b: s, require_failed_test: false };
        assert!(bounded_search(&d, &p, &SearchOptions::with_limit(10)).unwrap().is_empty());
        assert!(naive(&d, &p, usize::MAX).is_empty());
    }

    #[test]
    fn bounded_search_singleton_full_case_is_empty() {
        let p = StatuteParams::months();
        let facts = CoupleFacts::new(SpouseTimeline::new(30, 30, None, false), SpouseTimeline::new(24, 24, None, false));
        assert!(bounded_search(&SearchDomain::singleton(&facts), &p, &SearchOptions::default()).unwrap().is_empty());
    }

    #[test]
    fn bounded_search_limit_and_errors() {
        let p = StatuteParams::months();
        let d = sweep_domain(range(1, 36), &p);
        assert_eq!(bounded_search(&d, &p, &SearchOptions::with_limit(1)).unwrap().len(), 1);
        assert!(matches!(bounded_search(&d, &p, &SearchOptions::with_limit(0)), Err(Error::ZeroLimit)));
        let tight = SearchOptions { safety_bound: 10, ..SearchOptions::default() };
        assert!(matches!(bounded_search(&d, &p, &tight), Err(Error::DomainTooLarge { size: 36, bound: 10 })));
        let forced = SearchOptions { override_bound: true, ..tight };
        assert_eq!(bounded_search(&d, &p, &forced).unwrap().len(), 23);
    }

    #[test]
    fn bounded_search_matches_naive_on_mixed_domain() {
        let s = SpouseDomain {
            ownership: range(20, 25),
            use_: range(22, 25),
            prior: PriorDomain { range: Some(range(23, 24)), never: true },
            reason: ReasonChoice::Either,
        };
        for mode in NumeratorMode::ALL {
            let p = StatuteParams::months().with_mode(mode);
            for require_failed_test in [false, true] {
                let d = SearchDomain { spouse_a: s, spouse_b: SpouseDomain { reason: ReasonChoice::Yes, ..s }, require_failed_test };
                for limit in [1, 17, usize::MAX] {
                    let fast: Vec<_> = bounded_search(&d, &p, &SearchOptions { limit, safety_bound: u128::MAX, ..Default::default() })
                        .unwrap()
                        .into_iter()
                        .map(|w| w.facts)
                        .collect();
                    assert_eq!(fast, naive(&d, &p, limit), "{mode} {require_failed_test} {limit}");
                }
            }
        }
    }

    #[test]
    fn parallel_search_is_identical() {
        let s = SpouseDomain {
            ownership: range(20, 25),
            use_: range(20, 25),
            prior: PriorDomain { range: Some(range(23, 24)), never: true },
            reason: ReasonChoice::Either,
        };
        let d = SearchDomain { spouse_a: s, spouse_b: s, require_failed_test: false };
        let p = StatuteParams::months();
        for limit in [1, 50, 100_000] {
            let seq = bounded_search(&d, &p, &SearchOptions { limit, ..Default::default() }).unwrap();
            let par = bounded_search(&d, &p, &SearchOptions { limit, parallel: true, ..Default::default() }).unwrap();
            assert_eq!(seq, par);
        }
    }

    #[test]
    fn grid_examples() {
        let mut facts = BTreeMap::new();
        facts.insert(
            TimeUnit::Years,
            CoupleFacts::new(SpouseTimeline::new(2, 2, None, false), SpouseTimeline::new(1, 1, None, true)),
        );
        facts.insert(
            TimeUnit::Months,
            CoupleFacts::new(SpouseTimeline::new(30, 30, None, false), SpouseTimeline::new(12, 12, None, true)),
        );
        let cells = cross_validation_grid(&facts, &[TimeUnit::Months, TimeUnit::Years], &CombineRule::ALL, &StatuteParams::months()).unwrap();
        let cell = |u, r| cells.iter().find(|c| c.unit == u && c.rule == r).unwrap();
        let years_max = cell(TimeUnit::Years, CombineRule::Maximum);
        assert!(!years_max.converged);
        assert_eq!((years_max.sum_reading.clone(), years_max.joint_reading.clone()), (usd(375_000), usd(500_000)));
        let years_avg = cell(TimeUnit::Years, CombineRule::Average);
        assert!(years_avg.converged);
        assert_eq!(years_avg.joint_reading, usd(375_000));
        let months_min = cell(TimeUnit::Months, CombineRule::Minimum);
        assert!(!months_min.converged);
        assert_eq!((months_min.sum_reading.clone(), months_min.joint_reading.clone()), (usd(375_000), usd(250_000)));

        let err = cross_validation_grid(&facts, &[TimeUnit::Days], &CombineRule::ALL, &StatuteParams::months()).unwrap_err();
        assert!(matches!(err, Error::MissingUnitFacts(TimeUnit::Days)));
    }
}
