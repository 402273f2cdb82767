//! Dominating sets parameterized by degreewidth.
//!
//! A set `S` dominates when every vertex outside `S` has an out-neighbour in
//! `S`.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;
use serde::Serialize;

use crate::approx::approx_degreewidth;
use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::oracles::for_each_combination;
use crate::tournament::{Ordering, Tournament};

/// Largest universe for which the exhaustive family (all `2^n` subsets) is allowed.
pub const EXHAUSTIVE_LIMIT: usize = 20;
/// Refuse randomized families larger than this.
pub const RANDOMIZED_LIMIT: u64 = 50_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum FamilyMode {
    Exhaustive,
    /// `factor` is the constant `c` in the member count
    /// `⌈c · C(p+q, p) · (p+q) · ln n⌉ + 1`.
    Randomized {
        seed: u64,
        factor: f64,
    },
}

impl FamilyMode {
    pub fn randomized(seed: u64) -> Self {
        FamilyMode::Randomized { seed, factor: 4.0 }
    }
}

/// An `n`-`p`-`q` lopsided universal family: for every disjoint `A` (`|A| = p`)
/// and `B` (`|B| = q`) some member contains `A` and avoids `B`. Members are
/// produced lazily.
///
/// Randomized members include each element independently with probability
/// `p / (p+q)`; a fixed `(A, B)` is missed by all members with probability at
/// most `1/n^c`, so the property holds with high probability but is not
/// certified.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UniversalFamily {
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub mode: FamilyMode,
    pub count: u64,
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

pub fn lopsided_universal_family(
    n: usize,
    p: usize,
    q: usize,
    mode: FamilyMode,
) -> Result<UniversalFamily> {
    if p + q > n {
        return Err(Error::InvalidParameters(format!(
            "p + q = {} exceeds n = {n}",
            p + q
        )));
    }
    let count = match mode {
        FamilyMode::Exhaustive => {
            if n > EXHAUSTIVE_LIMIT {
                return Err(Error::CapExceeded {
                    what: "exhaustive universal family",
                    n,
                    cap: EXHAUSTIVE_LIMIT,
                });
            }
            1u64 << n
        }
        FamilyMode::Randomized { factor, .. } => {
            if !(factor > 0.0 && factor.is_finite()) {
                return Err(Error::InvalidParameters(format!(
                    "family factor {factor} must be positive"
                )));
            }
            let raw = factor * binomial(p + q, p) * (p + q) as f64 * (n as f64).ln();
            let count = raw.ceil() + 1.0;
            if count > RANDOMIZED_LIMIT as f64 {
                return Err(Error::InvalidParameters(format!(
                    "randomized family would need {count:.0} members"
                )));
            }
            count as u64
        }
    };
    Ok(UniversalFamily {
        n,
        p,
        q,
        mode,
        count,
    })
}

impl UniversalFamily {
    pub fn members(&self) -> Box<dyn Iterator<Item = VertexSet> + '_> {
        let n = self.n;
        match self.mode {
            FamilyMode::Exhaustive => Box::new((0..self.count).map(move |mask| {
                VertexSet::from_iter_with_capacity(n, (0..n).filter(|&v| mask >> v & 1 == 1))
            })),
            FamilyMode::Randomized { seed, .. } => {
                let mut rng = Xoshiro256StarStar::seed_from_u64(seed);
                // include an element iff the draw falls below p/(p+q) of the range
                let threshold = if self.q == 0 {
                    None
                } else {
                    Some(((self.p as u128) << 64) / (self.p + self.q) as u128)
                };
                Box::new((0..self.count).map(move |_| {
                    let mut set = VertexSet::new(n);
                    for v in 0..n {
                        let draw = rng.next_u64() as u128;
                        if threshold.is_none_or(|t| draw < t) {
                            set.insert(v);
                        }
                    }
                    set
                }))
            }
        }
    }

    /// Checks the covering property over every `(A, B)` pair. Exponential; for
    /// tiny parameters only.
    pub fn verify(&self) -> bool {
        let members: Vec<VertexSet> = self.members().collect();
        let n = self.n;
        !for_each_combination(n, self.p, |a| {
            let a_set = VertexSet::from_iter_with_capacity(n, a.iter().copied());
            let rest: Vec<usize> = (0..n).filter(|v| !a_set.contains(*v)).collect();
            for_each_combination(rest.len(), self.q, |b| {
                let b_set = VertexSet::from_iter_with_capacity(n, b.iter().map(|&i| rest[i]));
                !members
                    .iter()
                    .any(|f| a_set.is_subset(f) && !f.intersects(&b_set))
            })
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FptOutcome {
    pub set: Option<Vec<usize>>,
    /// Width of the in-degree ordering that parameterizes the families.
    pub approx_width: usize,
    pub members_examined: u64,
}

/// Searches for a dominating set of size at most `s`.
///
/// For each `p ≤ s` a lopsided family with `q = min(w·p, n−p)` is scanned,
/// where `w` is the width of the in-degree ordering `σ`. Each member `F` is
/// split into the strongly connected components of `T[F]`; the first
/// component and the last `p` vertices of `F` along `σ` are tried as
/// candidates. Every returned set is verified. With the exhaustive family the
/// search is complete, since `F = S` occurs for every solution `S`.
pub fn fpt_dominating_set(t: &Tournament, s: usize, mode: FamilyMode) -> Result<FptOutcome> {
    if s == 0 {
        return Err(Error::InvalidParameters(
            "target size must be at least 1".into(),
        ));
    }
    let n = t.n();
    let (w, sigma) = approx_degreewidth(t);
    let mut examined = 0;
    for p in 1..=s.min(n) {
        let q = (w * p).min(n - p);
        let family = lopsided_universal_family(n, p, q, mode)?;
        for f in family.members() {
            examined += 1;
            if let Some(found) = try_member(t, &sigma, &f, p, s) {
                return Ok(FptOutcome {
                    set: Some(found),
                    approx_width: w,
                    members_examined: examined,
                });
            }
        }
    }
    Ok(FptOutcome {
        set: None,
        approx_width: w,
        members_examined: examined,
    })
}

fn try_member(
    t: &Tournament,
    sigma: &Ordering,
    f: &VertexSet,
    p: usize,
    s: usize,
) -> Option<Vec<usize>> {
    if f.is_empty() {
        return None;
    }
    let components = t.scc_in_order(sigma, f).expect("sizes match");
    debug_assert!(components_are_ordered(t, &components));
    let mut in_order: Vec<usize> = f.to_vec();
    in_order.sort_unstable_by_key(|&v| sigma.pos(v));
    let suffix = &in_order[in_order.len().saturating_sub(p)..];
    let found = [components[0].as_slice(), suffix]
        .into_iter()
        .filter(|c| c.len() <= s)
        .find_map(|c| {
            let set = VertexSet::from_iter_with_capacity(t.n(), c.iter().copied());
            t.is_dominating_set(&set).then(|| set.to_vec())
        });
    found
}

/// No arc from a later component back to an earlier one.
pub fn components_are_ordered(t: &Tournament, components: &[Vec<usize>]) -> bool {
    components.iter().enumerate().all(|(i, earlier)| {
        components[i + 1..].iter().all(|later| {
            later
                .iter()
                .all(|&y| earlier.iter().all(|&x| t.has_arc(x, y)))
        })
    })
}

/// The last vertex of `sigma` together with its out-neighbours. Every other
/// vertex either beats the last vertex or is one of its out-neighbours, and
/// the out-neighbours of the last vertex are exactly its backward arcs, so the
/// size is at most `width(σ) + 1`.
pub fn greedy_dominating_set(t: &Tournament, sigma: &Ordering) -> Result<Vec<usize>> {
    if sigma.len() != t.n() {
        return Err(Error::SizeMismatch {
            expected: t.n(),
            found: sigma.len(),
        });
    }
    let last = sigma.last().expect("tournaments are non-empty");
    let mut set = t.out_set(last).clone();
    set.insert(last);
    debug_assert!(t.is_dominating_set(&set));
    Ok(set.to_vec())
}
