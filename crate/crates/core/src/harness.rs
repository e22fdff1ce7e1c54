//! Exhaustive harness over all consistent metacyclic presentations up to an
//! order cap: every noncyclic group with all order-3p subgroups cyclic and a
//! normal cyclic subgroup of index 3 must be a spherical 5-space-form group
//! whose witness presentation has B-order divisible by 9.

use alloc::vec::Vec;
use serde::Serialize;

use crate::group::{pow_mod, MetacyclicPresentation};

#[derive(Debug, Clone, Serialize)]
pub struct HarnessReport {
    pub order_cap: u64,
    /// Consistent presentations (m, n, r) with m*n <= cap.
    pub presentations: u64,
    pub noncyclic: u64,
    /// Noncyclic presentations satisfying both hypotheses.
    pub hypothesis_satisfied: u64,
    pub spherical_confirmed: u64,
    /// Hypothesis-satisfying presentations that fail the spherical predicate.
    pub counterexamples: Vec<(u64, u64, u64)>,
    /// A deduplicated sample of (m, n, r) that passed, for reporting.
    pub passing: Vec<(u64, u64, u64)>,
}

impl HarnessReport {
    pub fn ok(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Run the harness over all presentations with `m * n <= order_cap`.
pub fn run_harness(order_cap: u64) -> HarnessReport {
    let mut report = HarnessReport {
        order_cap,
        presentations: 0,
        noncyclic: 0,
        hypothesis_satisfied: 0,
        spherical_confirmed: 0,
        counterexamples: Vec::new(),
        passing: Vec::new(),
    };
    for m in 1..=order_cap {
        for n in 1..=(order_cap / m) {
            for r in 0..m.max(1) {
                if pow_mod(r, n, m) != 1 % m {
                    continue;
                }
                report.presentations += 1;
                let group = MetacyclicPresentation::validate(m, n, r)
                    .expect("congruence pre-checked");
                if group.is_cyclic() {
                    continue;
                }
                report.noncyclic += 1;
                // Cheap necessary condition first: an index-3 subgroup needs
                // 3 | |G|.
                if group.order() % 3 != 0 || !group.has_index3_normal_cyclic() {
                    continue;
                }
                if !group.condition_3p() {
                    continue;
                }
                report.hypothesis_satisfied += 1;
                let verdict = group.is_spherical_5_space_group();
                let witness_ok = match verdict.witness {
                    Some((_, wn, _)) => wn % 9 == 0,
                    None => false,
                };
                if verdict.verdict && witness_ok {
                    report.spherical_confirmed += 1;
                    if report.passing.len() < 64 {
                        report.passing.push((m, n, r));
                    }
                } else {
                    report.counterexamples.push((m, n, r));
                }
            }
        }
    }
    report
}
