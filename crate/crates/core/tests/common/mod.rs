#![allow(dead_code)]

use sec121::search::{fails_some_test, PriorDomain, SearchDomain};
use sec121::{evaluate, CoupleFacts, SpouseTimeline, StatuteParams};

/// Published prior-exclusion sweep: (P, SumA, min_six, min_three_joint, held_b2A_months).
pub const PRIOR_SWEEP: [(u64, i128, i128, i128, i128); 36] = [
    (1, 260_417, 20_833, 20_833, 20_833),
    (2, 270_833, 41_667, 41_667, 41_667),
    (3, 281_250, 62_500, 62_500, 62_500),
    (4, 291_667, 83_333, 83_333, 83_333),
    (5, 302_083, 104_167, 104_167, 104_167),
    (6, 312_500, 125_000, 125_000, 125_000),
    (7, 322_917, 145_833, 145_833, 145_833),
    (8, 333_333, 166_667, 166_667, 166_667),
    (9, 343_750, 187_500, 187_500, 187_500),
    (10, 354_167, 208_333, 208_333, 208_333),
    (11, 364_583, 229_167, 229_167, 229_167),
    (12, 375_000, 250_000, 250_000, 250_000),
    (13, 385_417, 270_833, 270_833, 270_833),
    (14, 395_833, 291_667, 291_667, 291_667),
    (15, 406_250, 312_500, 312_500, 312_500),
    (16, 416_667, 333_333, 333_333, 333_333),
    (17, 427_083, 354_167, 354_167, 354_167),
    (18, 437_500, 375_000, 375_000, 375_000),
    (19, 447_917, 395_833, 395_833, 395_833),
    (20, 458_333, 416_667, 416_667, 416_667),
    (21, 468_750, 437_500, 437_500, 437_500),
    (22, 479_167, 458_333, 458_333, 458_333),
    (23, 489_583, 479_167, 479_167, 479_167),
    (24, 500_000, 500_000, 500_000, 500_000),
    (25, 500_000, 500_000, 500_000, 500_000),
    (26, 500_000, 500_000, 500_000, 500_000),
    (27, 500_000, 500_000, 500_000, 500_000),
    (28, 500_000, 500_000, 500_000, 500_000),
    (29, 500_000, 500_000, 500_000, 500_000),
    (30, 500_000, 500_000, 500_000, 500_000),
    (31, 500_000, 500_000, 500_000, 500_000),
    (32, 500_000, 500_000, 500_000, 500_000),
    (33, 500_000, 500_000, 500_000, 500_000),
    (34, 500_000, 500_000, 500_000, 500_000),
    (35, 500_000, 500_000, 500_000, 500_000),
    (36, 500_000, 500_000, 500_000, 500_000),
];

pub fn spouse(own: u64, use_: u64, prior: Option<u64>, reason: bool) -> SpouseTimeline {
    SpouseTimeline::new(own, use_, prior, reason)
}

fn prior_values(d: &PriorDomain) -> Vec<Option<u64>> {
    let mut v: Vec<Option<u64>> = match d.range {
        Some(r) => (r.lo()..=r.hi()).map(Some).collect(),
        None => Vec::new(),
    };
    if d.never {
        v.push(None);
    }
    v
}

fn reason_values(choice: sec121::search::ReasonChoice) -> Vec<bool> {
    use sec121::search::ReasonChoice::*;
    match choice {
        No => vec![false],
        Yes => vec![true],
        Either => vec![false, true],
    }
}

/// Every fact pattern of `d`, in declared variable order with reasons
/// innermost, filtered by `evaluate(..).diverges` and the domain constraint.
/// No pruning of any kind.
pub fn naive_search(d: &SearchDomain, p: &StatuteParams, limit: usize) -> Vec<CoupleFacts> {
    let (a, b) = (&d.spouse_a, &d.spouse_b);
    let mut out = Vec::new();
    for oa in a.ownership.values() {
        for ua in a.use_.values() {
            for pa in prior_values(&a.prior) {
                for ob in b.ownership.values() {
                    for ub in b.use_.values() {
                        for pb in prior_values(&b.prior) {
                            for ra in reason_values(a.reason) {
                                for rb in reason_values(b.reason) {
                                    if out.len() >= limit {
                                        return out;
                                    }
                                    let c = CoupleFacts::new(spouse(oa, ua, pa, ra), spouse(ob, ub, pb, rb));
                                    if d.require_failed_test && !fails_some_test(&c, p) {
                                        continue;
                                    }
                                    if evaluate(&c, p).diverges {
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
