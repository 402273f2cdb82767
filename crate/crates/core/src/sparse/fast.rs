//! Minimum feedback arc sets on sparse tournaments.
//!
//! A sparse ordering's backward arcs form a feedback arc set; it is minimum
//! once no contiguous window is laid out as `Π(U_2k)` or `Π′(U_4)`. Such
//! windows are rewritten to `Π_{1,2k}(U_2k)` (resp. `Π_{1,4}(U_4)`), each
//! rewrite saving one backward arc.

use std::collections::HashSet;

use serde::Serialize;

use super::canonical::{canonical_u_ordering, CanonicalKind};
use super::recognition::sparse_certificate;
use crate::error::{Error, Result};
use crate::tournament::{Ordering, Tournament};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PatternKind {
    /// `Π(U_2k)`, including the adjacent backward pair `Π(U_2)`.
    PiU2k,
    /// `Π′(U_4)`.
    PiPrimeU4,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ForbiddenPattern {
    pub start: usize,
    pub len: usize,
    pub kind: PatternKind,
}

/// For each position, the position at the other end of its backward arc.
fn partners(t: &Tournament, sigma: &Ordering) -> Result<Vec<Option<usize>>> {
    let profile = t.backward_profile(sigma)?;
    if profile.width > 1 {
        return Err(Error::NotSparseOrdering(profile.width));
    }
    let mut partner = vec![None; sigma.len()];
    for (tail, head) in t.backward_arcs(sigma) {
        let (pt, ph) = (sigma.pos(tail), sigma.pos(head));
        partner[pt] = Some(ph);
        partner[ph] = Some(pt);
    }
    Ok(partner)
}

/// Pattern starting exactly at position `s`, if any.
fn pattern_at(partner: &[Option<usize>], s: usize) -> Option<ForbiddenPattern> {
    let at = |p: usize| partner.get(p).copied().flatten();
    let found = |len, kind| {
        Some(ForbiddenPattern {
            start: s,
            len,
            kind,
        })
    };
    match at(s) {
        Some(q) if q == s + 1 => found(2, PatternKind::PiU2k),
        Some(q) if q == s + 3 && at(s + 1) == Some(s + 2) => found(4, PatternKind::PiPrimeU4),
        Some(q) if q == s + 2 => {
            let mut p = s + 1;
            while at(p) == Some(p + 3) {
                p += 2;
            }
            (at(p) == Some(p + 2)).then(|| ForbiddenPattern {
                start: s,
                len: p + 3 - s,
                kind: PatternKind::PiU2k,
            })
        }
        _ => None,
    }
}

fn find_from(partner: &[Option<usize>], from: usize) -> Option<ForbiddenPattern> {
    (from..partner.len()).find_map(|s| pattern_at(partner, s))
}

/// Leftmost forbidden pattern of the sparse ordering `sigma`.
pub fn find_forbidden_pattern(
    t: &Tournament,
    sigma: &Ordering,
) -> Result<Option<ForbiddenPattern>> {
    Ok(find_from(&partners(t, sigma)?, 0))
}

/// The window's vertices as laid out by the pattern, listed by `U`-label.
fn rewrite(window: &[usize], kind: PatternKind) -> Vec<usize> {
    let k = window.len();
    let layout = match kind {
        PatternKind::PiU2k => canonical_u_ordering(CanonicalKind::Pi, k),
        PatternKind::PiPrimeU4 => canonical_u_ordering(CanonicalKind::PiPrimeOfU4, k),
    }
    .expect("pattern length fits its kind");
    let mut by_label = vec![0; k];
    for (offset, &label) in layout.perm().iter().enumerate() {
        by_label[label] = window[offset];
    }
    let target = canonical_u_ordering(CanonicalKind::Pi1n, k).expect("even length");
    target.perm().iter().map(|&label| by_label[label]).collect()
}

/// Rewrites every forbidden pattern of the sparse ordering `sigma`, scanning
/// left to right.
pub fn eliminate_forbidden_patterns(t: &Tournament, sigma: &Ordering) -> Result<Ordering> {
    let mut perm = sigma.perm().to_vec();
    let mut partner = partners(t, sigma)?;
    let mut cursor = 0;
    // A rewritten window stays self-contained and no pattern can straddle its
    // left edge, so scanning resumes at the window start.
    while let Some(pattern) = find_from(&partner, cursor) {
        let range = pattern.start..pattern.start + pattern.len;
        let replaced = rewrite(&perm[range.clone()], pattern.kind);
        perm.splice(range.clone(), replaced);
        for p in range.clone() {
            partner[p] = None;
        }
        for i in range.clone() {
            for j in i + 1..range.end {
                if t.has_arc(perm[j], perm[i]) {
                    partner[i] = Some(j);
                    partner[j] = Some(i);
                }
            }
        }
        cursor = pattern.start;
    }
    let result = Ordering::new(perm).expect("rewrite permutes a window");
    debug_assert_eq!(find_forbidden_pattern(t, &result), Ok(None));
    Ok(result)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseFas {
    /// Backward arcs `(tail, head)` of `ordering`; a minimum feedback arc set.
    pub arcs: Vec<(usize, usize)>,
    pub ordering: Ordering,
}

/// Minimum feedback arc set of a sparse tournament.
pub fn fast_sparse(t: &Tournament) -> Result<SparseFas> {
    let cert = sparse_certificate(t).ok_or(Error::NotSparse)?;
    let ordering = eliminate_forbidden_patterns(t, &cert.ordering)?;
    let arcs = t.backward_arcs(&ordering);
    let flip: HashSet<(usize, usize)> = arcs.iter().copied().collect();
    let reversed = Tournament::from_fn(t.n(), |u, v| {
        t.has_arc(u, v) != (flip.contains(&(u, v)) || flip.contains(&(v, u)))
    })?;
    assert!(
        reversed.is_acyclic(),
        "reversing the returned arcs leaves a cycle"
    );
    Ok(SparseFas { arcs, ordering })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{acyclic, rotational, u_tournament};

    fn ids(labels: &[usize]) -> Vec<usize> {
        labels.iter().map(|l| l - 1).collect()
    }

    #[test]
    fn u8_patterns() {
        let t = u_tournament(8).unwrap();
        let pi = canonical_u_ordering(CanonicalKind::Pi, 8).unwrap();
        assert_eq!(
            find_forbidden_pattern(&t, &pi).unwrap(),
            Some(ForbiddenPattern {
                start: 0,
                len: 8,
                kind: PatternKind::PiU2k
            })
        );
        let pi1n = canonical_u_ordering(CanonicalKind::Pi1n, 8).unwrap();
        assert_eq!(find_forbidden_pattern(&t, &pi1n).unwrap(), None);
        assert_eq!(eliminate_forbidden_patterns(&t, &pi).unwrap(), pi1n);
    }

    #[test]
    fn u4_prime_pattern() {
        let t = u_tournament(4).unwrap();
        let prime = canonical_u_ordering(CanonicalKind::PiPrimeOfU4, 4).unwrap();
        assert_eq!(
            find_forbidden_pattern(&t, &prime).unwrap(),
            Some(ForbiddenPattern {
                start: 0,
                len: 4,
                kind: PatternKind::PiPrimeU4
            })
        );
        assert_eq!(
            eliminate_forbidden_patterns(&t, &prime)
                .unwrap()
                .into_perm(),
            ids(&[2, 1, 4, 3])
        );
    }

    #[test]
    fn adjacent_pair_is_swapped() {
        let t = u_tournament(2).unwrap();
        let sigma = Ordering::identity(2);
        assert_eq!(
            find_forbidden_pattern(&t, &sigma).unwrap().map(|p| p.len),
            Some(2)
        );
        assert_eq!(
            eliminate_forbidden_patterns(&t, &sigma)
                .unwrap()
                .into_perm(),
            vec![1, 0]
        );
    }

    #[test]
    fn acyclic_unchanged() {
        let t = acyclic(6).unwrap();
        let sigma = Ordering::identity(6);
        assert_eq!(eliminate_forbidden_patterns(&t, &sigma).unwrap(), sigma);
        let fas = fast_sparse(&acyclic(7).unwrap()).unwrap();
        assert!(fas.arcs.is_empty());
    }

    #[test]
    fn u8_fas() {
        let fas = fast_sparse(&u_tournament(8).unwrap()).unwrap();
        let mut arcs = fas.arcs.clone();
        arcs.sort_unstable();
        assert_eq!(arcs, vec![(2, 1), (4, 3), (6, 5)]);
    }

    #[test]
    fn rejects_dense_inputs() {
        let t = rotational(2).unwrap();
        assert_eq!(fast_sparse(&t), Err(Error::NotSparse));
        assert!(matches!(
            find_forbidden_pattern(&t, &Ordering::identity(5)),
            Err(Error::NotSparseOrdering(2))
        ));
    }
}
