//! Rule engine for the married-couple home-sale exclusion limitation.
//!
//! Evaluates the sum-of-limitations and joint-cap readings on identical
//! facts, searches fact spaces for patterns where they disagree, and
//! reproduces the published validation runs against golden fixtures.

pub mod cli;
pub mod engine;
pub mod error;
pub mod money;
pub mod report;
pub mod search;
pub mod statute;
pub mod validation;

pub use engine::{
    apply_gain_cap, couple_fully_qualifies, evaluate, individual_limitation, joint_cap_exclusion, joint_numerator,
    sum_of_limitations, InterpretationOutcome,
};
pub use error::{Error, Result};
pub use money::ExactAmount;
pub use search::{
    bounded_search, cross_validation_grid, find_inconsistency_zone, sweep_prior_exclusion, DivergenceWitness,
    PeriodVar, SearchDomain, SearchOptions, SweepRow,
};
pub use statute::{
    meets_time_test, proration_ratio, shortest_of_three, CombineRule, CoupleFacts, NumeratorMode, PeriodLength,
    SpouseTimeline, StatuteParams, TimeUnit,
};
pub use validation::{RunnerReport, Validator};
