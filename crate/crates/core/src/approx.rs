//! The in-degree ordering 3-approximation and cheap degreewidth bounds.

use serde::Serialize;

use crate::oracles::{cutwidth_tournament, exact_fas, in_degree_ordering, Caps};
use crate::tournament::{Ordering, Tournament};

/// Sorts by nondecreasing in-degree (ties by ascending id). The width of the
/// result is at most three times the degreewidth.
pub fn approx_degreewidth(t: &Tournament) -> (usize, Ordering) {
    let sigma = in_degree_ordering(t);
    let width = t.backward_profile(&sigma).expect("same size").width;
    (width, sigma)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub lower_min_indegree: usize,
    pub upper_indegree_ordering: usize,
    pub upper_2ctw: usize,
    /// Minimum feedback arc set size; only when the exact solver fits the cap.
    pub upper_fas: Option<usize>,
}

impl BoundsReport {
    pub fn best_upper(&self) -> usize {
        let mut best = self.upper_indegree_ordering.min(self.upper_2ctw);
        if let Some(f) = self.upper_fas {
            best = best.min(f);
        }
        best
    }
}

pub fn degreewidth_bounds(t: &Tournament, caps: &Caps) -> BoundsReport {
    let (approx, _) = approx_degreewidth(t);
    let (ctw, _) = cutwidth_tournament(t);
    let upper_fas = exact_fas(t, caps).ok().map(|r| r.value);
    let report = BoundsReport {
        lower_min_indegree: t.min_in_degree(),
        upper_indegree_ordering: approx,
        upper_2ctw: 2 * ctw,
        upper_fas,
    };
    assert!(
        report.lower_min_indegree <= report.best_upper(),
        "bounds inconsistent: {report:?}"
    );
    report
}
