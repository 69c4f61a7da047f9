//! Fact types and the time tests shared by both readings of the limitation.
//!
//! Periods are already-aggregated counts in a single time unit. Calendar
//! arithmetic over the five-year lookback happens upstream of this crate.

use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::money::ExactAmount;

/// A non-negative count of days, months or years.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct PeriodLength(pub u64);

impl PeriodLength {
    pub fn get(self) -> u64 {
        self.0
    }

    pub fn capped(self, cap: PeriodLength) -> PeriodLength {
        self.min(cap)
    }
}

impl From<u64> for PeriodLength {
    fn from(value: u64) -> Self {
        PeriodLength(value)
    }
}

impl fmt::Display for PeriodLength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TimeUnit {
    Days,
    Months,
    Years,
}

impl TimeUnit {
    pub const ALL: [TimeUnit; 3] = [TimeUnit::Days, TimeUnit::Months, TimeUnit::Years];

    /// The two-year test in this unit.
    pub fn full_test_length(self) -> PeriodLength {
        match self {
            TimeUnit::Days => PeriodLength(730),
            TimeUnit::Months => PeriodLength(24),
            TimeUnit::Years => PeriodLength(2),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            TimeUnit::Days => "days",
            TimeUnit::Months => "months",
            TimeUnit::Years => "years",
        }
    }
}

impl fmt::Display for TimeUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TimeUnit {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "days" => Ok(TimeUnit::Days),
            "months" => Ok(TimeUnit::Months),
            "years" => Ok(TimeUnit::Years),
            other => Err(format!(
                "unknown time unit `{other}` (expected days, months or years)"
            )),
        }
    }
}

/// How the two spouses' periods become the single numerator of the joint-cap
/// reduction.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum NumeratorMode {
    /// Smallest of all six periods.
    #[default]
    #[serde(rename = "min_six")]
    MinSix,
    /// Longer ownership, shorter use, shorter prior-exclusion gap; then the minimum.
    #[serde(rename = "min_three_joint")]
    MinThreeJoint,
    /// Gated on either spouse meeting the ownership test, then the shorter
    /// of the use and prior-exclusion periods.
    #[serde(rename = "held_b2A_months")]
    HeldB2aMonths,
}

impl NumeratorMode {
    pub const ALL: [NumeratorMode; 3] = [
        NumeratorMode::MinSix,
        NumeratorMode::MinThreeJoint,
        NumeratorMode::HeldB2aMonths,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            NumeratorMode::MinSix => "min_six",
            NumeratorMode::MinThreeJoint => "min_three_joint",
            NumeratorMode::HeldB2aMonths => "held_b2A_months",
        }
    }
}

impl fmt::Display for NumeratorMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for NumeratorMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "min_six" => Ok(NumeratorMode::MinSix),
            "min_three_joint" => Ok(NumeratorMode::MinThreeJoint),
            "held_b2A_months" => Ok(NumeratorMode::HeldB2aMonths),
            other => Err(format!(
                "unknown numerator mode `{other}` (expected min_six, min_three_joint or held_b2A_months)"
            )),
        }
    }
}

/// Per-period combination of the spouses' capped periods, used by the
/// cross-validation grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CombineRule {
    Minimum,
    Maximum,
    Average,
}

impl CombineRule {
    pub const ALL: [CombineRule; 3] = [CombineRule::Minimum, CombineRule::Maximum, CombineRule::Average];

    pub fn as_str(self) -> &'static str {
        match self {
            CombineRule::Minimum => "minimum",
            CombineRule::Maximum => "maximum",
            CombineRule::Average => "average",
        }
    }

    pub fn combine(self, a: PeriodLength, b: PeriodLength) -> BigRational {
        let (a, b) = (BigInt::from(a.0), BigInt::from(b.0));
        match self {
            CombineRule::Minimum => BigRational::from_integer(a.min(b)),
            CombineRule::Maximum => BigRational::from_integer(a.max(b)),
            CombineRule::Average => BigRational::new(a + b, BigInt::from(2)),
        }
    }
}

impl fmt::Display for CombineRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CombineRule {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "minimum" | "min" => Ok(CombineRule::Minimum),
            "maximum" | "max" => Ok(CombineRule::Maximum),
            "average" | "avg" => Ok(CombineRule::Average),
            other => Err(format!(
                "unknown combine rule `{other}` (expected minimum, maximum or average)"
            )),
        }
    }
}

/// One spouse's qualifying periods.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpouseTimeline {
    pub ownership: PeriodLength,
    #[serde(rename = "use")]
    pub use_: PeriodLength,
    /// `None` means this spouse never claimed an exclusion.
    pub since_prior_exclusion: Option<PeriodLength>,
    /// Employment change, health, or unforeseen circumstances.
    pub qualifying_reason: bool,
}

impl SpouseTimeline {
    pub fn new(ownership: u64, use_: u64, since_prior_exclusion: Option<u64>, qualifying_reason: bool) -> Self {
        Self {
            ownership: PeriodLength(ownership),
            use_: PeriodLength(use_),
            since_prior_exclusion: since_prior_exclusion.map(PeriodLength),
            qualifying_reason,
        }
    }

    /// The prior-exclusion gap as it enters every computation: "never"
    /// counts as a full test length.
    pub fn effective_prior(&self, p: &StatuteParams) -> PeriodLength {
        self.since_prior_exclusion.unwrap_or(p.full_test_length)
    }

    /// `own/use/prior` with `never` for an absent prior exclusion.
    pub fn short_label(&self) -> String {
        match self.since_prior_exclusion {
            Some(prior) => format!("{}/{}/{}", self.ownership, self.use_, prior),
            None => format!("{}/{}/never", self.ownership, self.use_),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoupleFacts {
    pub spouse_a: SpouseTimeline,
    pub spouse_b: SpouseTimeline,
}

impl CoupleFacts {
    pub fn new(spouse_a: SpouseTimeline, spouse_b: SpouseTimeline) -> Self {
        Self { spouse_a, spouse_b }
    }

    pub fn swapped(&self) -> Self {
        Self {
            spouse_a: self.spouse_b,
            spouse_b: self.spouse_a,
        }
    }

    pub fn any_reason(&self) -> bool {
        self.spouse_a.qualifying_reason || self.spouse_b.qualifying_reason
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StatuteParams {
    pub time_unit: TimeUnit,
    pub full_test_length: PeriodLength,
    pub base_limit: ExactAmount,
    pub joint_limit: ExactAmount,
    pub numerator_mode: NumeratorMode,
    pub combine_rule: Option<CombineRule>,
}

impl StatuteParams {
    pub const DEFAULT_BASE_LIMIT: i64 = 250_000;
    pub const DEFAULT_JOINT_LIMIT: i64 = 500_000;

    /// Canonical test length for `unit`, default dollar limits, `min_six`.
    pub fn new(time_unit: TimeUnit) -> Self {
        Self {
            time_unit,
            full_test_length: time_unit.full_test_length(),
            base_limit: ExactAmount::dollars(Self::DEFAULT_BASE_LIMIT),
            joint_limit: ExactAmount::dollars(Self::DEFAULT_JOINT_LIMIT),
            numerator_mode: NumeratorMode::MinSix,
            combine_rule: None,
        }
    }

    pub fn months() -> Self {
        Self::new(TimeUnit::Months)
    }

    pub fn with_mode(mut self, mode: NumeratorMode) -> Self {
        self.numerator_mode = mode;
        self
    }

    pub fn with_combine_rule(mut self, rule: Option<CombineRule>) -> Self {
        self.combine_rule = rule;
        self
    }

    pub fn with_limits(mut self, base_limit: ExactAmount, joint_limit: ExactAmount) -> Self {
        self.base_limit = base_limit;
        self.joint_limit = joint_limit;
        self
    }

    pub fn with_full_test_length(mut self, length: u64) -> Result<Self> {
        if length == 0 {
            return Err(Error::ZeroTestLength);
        }
        self.full_test_length = PeriodLength(length);
        Ok(self)
    }
}

impl Default for StatuteParams {
    fn default() -> Self {
        Self::months()
    }
}

/// Shortest of ownership, use and time since the last exclusion. Not capped.
pub fn shortest_of_three(t: &SpouseTimeline, p: &StatuteParams) -> PeriodLength {
    t.ownership.min(t.use_).min(t.effective_prior(p))
}

pub fn meets_time_test(period: PeriodLength, p: &StatuteParams) -> bool {
    period >= p.full_test_length
}

/// `min(shortest_of_three, T) / T`, always within `[0, 1]`.
pub fn proration_ratio(t: &SpouseTimeline, p: &StatuteParams) -> BigRational {
    let capped = shortest_of_three(t, p).capped(p.full_test_length);
    BigRational::new(BigInt::from(capped.0), BigInt::from(p.full_test_length.0))
}
