//! The two couple-level readings of the limitation.
//!
//! The sum reading gives each spouse a full, prorated, or zero limitation and
//! adds them. The joint reading starts from the joint limit and applies one
//! couple-level reduction whose numerator comes from a [`NumeratorMode`] (or,
//! for the cross-validation grid, a [`CombineRule`]).

use num::{BigInt, BigRational};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::money::ExactAmount;
use crate::statute::{
    meets_time_test, proration_ratio, shortest_of_three, CombineRule, CoupleFacts, NumeratorMode,
    PeriodLength, SpouseTimeline, StatuteParams,
};

/// Both readings evaluated on the same facts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InterpretationOutcome {
    pub sum_reading: ExactAmount,
    pub joint_reading: ExactAmount,
    pub diverges: bool,
    /// `sum_reading - joint_reading`.
    pub delta: ExactAmount,
}

impl InterpretationOutcome {
    pub fn new(sum_reading: ExactAmount, joint_reading: ExactAmount) -> Self {
        let delta = &sum_reading - &joint_reading;
        Self {
            diverges: !delta.is_zero(),
            sum_reading,
            joint_reading,
            delta,
        }
    }
}

/// Full base limit when every time test is met; otherwise prorated when a
/// qualifying reason exists; otherwise nothing.
pub fn individual_limitation(t: &SpouseTimeline, p: &StatuteParams) -> ExactAmount {
    if meets_time_test(shortest_of_three(t, p), p) {
        p.base_limit.clone()
    } else if t.qualifying_reason {
        p.base_limit.scale(&proration_ratio(t, p))
    } else {
        ExactAmount::zero()
    }
}

pub fn sum_of_limitations(c: &CoupleFacts, p: &StatuteParams) -> ExactAmount {
    individual_limitation(&c.spouse_a, p) + individual_limitation(&c.spouse_b, p)
}

/// Joint-return full qualification: either spouse meets ownership, both meet
/// use, both pass the prior-exclusion gap.
pub fn couple_fully_qualifies(c: &CoupleFacts, p: &StatuteParams) -> bool {
    let (a, b) = (&c.spouse_a, &c.spouse_b);
    let ownership = meets_time_test(a.ownership, p) || meets_time_test(b.ownership, p);
    let use_ = meets_time_test(a.use_, p) && meets_time_test(b.use_, p);
    let prior = meets_time_test(a.effective_prior(p), p) && meets_time_test(b.effective_prior(p), p);
    ownership && use_ && prior
}

/// Joint numerator under `p.numerator_mode`, capped at the full test length.
pub fn joint_numerator(c: &CoupleFacts, p: &StatuteParams) -> PeriodLength {
    let (a, b) = (&c.spouse_a, &c.spouse_b);
    let (prior_a, prior_b) = (a.effective_prior(p), b.effective_prior(p));
    let raw = match p.numerator_mode {
        NumeratorMode::MinSix => [a.ownership, b.ownership, a.use_, b.use_, prior_a, prior_b]
            .into_iter()
            .min()
            .expect("six periods"),
        NumeratorMode::MinThreeJoint => a
            .ownership
            .max(b.ownership)
            .min(a.use_.min(b.use_))
            .min(prior_a.min(prior_b)),
        NumeratorMode::HeldB2aMonths => {
            if meets_time_test(a.ownership, p) || meets_time_test(b.ownership, p) {
                a.use_.min(b.use_).min(prior_a.min(prior_b))
            } else {
                PeriodLength(0)
            }
        }
    };
    raw.capped(p.full_test_length)
}

/// Per-period combination: each spouse's period is capped first, the pair is
/// combined under `rule`, and the smallest of the three combined periods wins.
/// May be fractional under [`CombineRule::Average`].
pub fn combined_numerator(c: &CoupleFacts, p: &StatuteParams, rule: CombineRule) -> BigRational {
    let cap = p.full_test_length;
    let (a, b) = (&c.spouse_a, &c.spouse_b);
    let pairs = [
        (a.ownership, b.ownership),
        (a.use_, b.use_),
        (a.effective_prior(p), b.effective_prior(p)),
    ];
    pairs
        .into_iter()
        .map(|(x, y)| rule.combine(x.capped(cap), y.capped(cap)))
        .min()
        .expect("three periods")
}

fn joint_reduction_ratio(c: &CoupleFacts, p: &StatuteParams) -> BigRational {
    let full = BigInt::from(p.full_test_length.get());
    let numerator = match p.combine_rule {
        Some(rule) => combined_numerator(c, p, rule),
        None => BigRational::from_integer(BigInt::from(joint_numerator(c, p).get())),
    };
    numerator / BigRational::from_integer(full)
}

pub fn joint_cap_exclusion(c: &CoupleFacts, p: &StatuteParams) -> ExactAmount {
    if couple_fully_qualifies(c, p) {
        p.joint_limit.clone()
    } else if c.any_reason() {
        p.joint_limit.scale(&joint_reduction_ratio(c, p))
    } else {
        ExactAmount::zero()
    }
}

pub fn evaluate(c: &CoupleFacts, p: &StatuteParams) -> InterpretationOutcome {
    InterpretationOutcome::new(sum_of_limitations(c, p), joint_cap_exclusion(c, p))
}

/// The excluded amount never exceeds the realized gain.
pub fn apply_gain_cap(limit: &ExactAmount, realized_gain: &ExactAmount) -> Result<ExactAmount> {
    if realized_gain.is_negative() {
        return Err(Error::NegativeGain(realized_gain.to_string()));
    }
    Ok(limit.clone().min(realized_gain.clone()))
}

/// Serializable view of an outcome with both rounded and exact amounts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmountRepr {
    pub dollars: i128,
    pub numerator: i128,
    pub denominator: i128,
}

impl AmountRepr {
    pub fn from_amount(amount: &ExactAmount) -> Result<Self> {
        Ok(Self {
            dollars: amount.rounded_i128()?,
            numerator: amount.numerator_i128()?,
            denominator: amount.denominator_i128()?,
        })
    }
}
