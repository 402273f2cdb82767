//! Exact exponential-time reference solvers.
//!
//! The subset DPs index vertex sets by `n`-bit masks and keep one byte per
//! subset; witnesses are recovered by rescanning predecessors.

use crate::error::{Error, Result};
use crate::tournament::{Ordering, Tournament};
use crate::VertexSet;

/// Size caps for the exponential solvers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Subset DPs (degreewidth, feedback arc set).
    pub exact: usize,
    /// Dominating-set enumeration.
    pub dominating: usize,
    /// Permutation enumeration of sparse orderings.
    pub brute: usize,
}

pub const CAP_ENV: &str = "DWLAB_EXACT_CAP";

impl Default for Caps {
    fn default() -> Self {
        Self {
            exact: 22,
            dominating: 24,
            brute: 9,
        }
    }
}

impl Caps {
    /// Defaults, with the subset-DP cap overridden by `DWLAB_EXACT_CAP` when set.
    pub fn from_env() -> Result<Self> {
        let mut caps = Self::default();
        if let Ok(raw) = std::env::var(CAP_ENV) {
            let cap: usize = raw.trim().parse().map_err(|_| {
                Error::InvalidParameters(format!("{CAP_ENV}={raw:?} is not a size"))
            })?;
            // masks are u32 and the tables 2^n bytes
            if cap > 30 {
                return Err(Error::InvalidParameters(format!(
                    "{CAP_ENV}={cap} exceeds the hard limit 30"
                )));
            }
            caps.exact = cap;
        }
        Ok(caps)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactResult<W> {
    pub value: usize,
    pub witness: W,
    /// Number of subsets or search nodes visited.
    pub explored: u64,
}

fn check_cap(what: &'static str, n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::CapExceeded { what, n, cap });
    }
    Ok(())
}

fn masks(t: &Tournament) -> (Vec<u32>, Vec<u32>) {
    let to_mask = |s: &VertexSet| s.iter().fold(0u32, |m, v| m | 1 << v);
    let out = (0..t.n()).map(|v| to_mask(t.out_set(v))).collect();
    let inn = (0..t.n()).map(|v| to_mask(t.in_set(v))).collect();
    (out, inn)
}

/// Subset DP over "placed prefix" sets shared by the degreewidth and FAS oracles.
/// `step(v, rest)` prices appending `v` after `rest`; `combine` merges it with
/// the prefix value.
fn subset_dp(
    n: usize,
    step: impl Fn(usize, u32) -> u8,
    combine: impl Fn(u8, u8) -> u8,
) -> (u8, Ordering, u64) {
    let full: u32 = if n == 32 { !0 } else { (1u32 << n) - 1 };
    let size = 1usize << n;
    let mut table = vec![u8::MAX; size];
    table[0] = 0;
    for s in 1..size as u32 {
        let mut best = u8::MAX;
        let mut bits = s;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let rest = s & !(1 << v);
            let value = combine(table[rest as usize], step(v, rest));
            best = best.min(value);
        }
        table[s as usize] = best;
    }
    let mut perm = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let target = table[s as usize];
        let mut bits = s;
        let v = loop {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let rest = s & !(1 << v);
            if combine(table[rest as usize], step(v, rest)) == target {
                break v;
            }
        };
        perm.push(v);
        s &= !(1 << v);
    }
    perm.reverse();
    (
        table[full as usize],
        Ordering::new(perm).expect("DP witness is a permutation"),
        size as u64,
    )
}

/// Degreewidth with an optimal ordering. Appending `v` after the placed set
/// `S` fixes its backward degree at `|N⁺(v) ∩ S| + |N⁻(v) ∖ S ∖ {v}|`.
pub fn exact_degreewidth(t: &Tournament, caps: &Caps) -> Result<ExactResult<Ordering>> {
    let n = t.n();
    check_cap("exact degreewidth", n, caps.exact)?;
    let (out, inn) = masks(t);
    let (value, witness, explored) = subset_dp(
        n,
        |v, rest| ((out[v] & rest).count_ones() + (inn[v] & !rest).count_ones()) as u8,
        |a, b| a.max(b),
    );
    debug_assert_eq!(t.backward_profile(&witness).unwrap().width, value as usize);
    Ok(ExactResult {
        value: value as usize,
        witness,
        explored,
    })
}

/// Minimum feedback arc set size with an ordering whose backward arcs realize it.
pub fn exact_fas(t: &Tournament, caps: &Caps) -> Result<ExactResult<Ordering>> {
    let n = t.n();
    check_cap("exact feedback arc set", n, caps.exact)?;
    let (out, _) = masks(t);
    let (value, witness, explored) = subset_dp(
        n,
        |v, rest| (out[v] & rest).count_ones() as u8,
        |a, b| a.saturating_add(b),
    );
    debug_assert_eq!(
        t.backward_profile(&witness).unwrap().total_backward,
        value as usize
    );
    Ok(ExactResult {
        value: value as usize,
        witness,
        explored,
    })
}

/// A feedback vertex set of size at most `k`, found by branching on the
/// lexicographically least remaining triangle. `None` when no such set exists.
pub fn exact_fvst(t: &Tournament, k: usize) -> ExactResult<Option<Vec<usize>>> {
    fn search(
        t: &Tournament,
        alive: &mut VertexSet,
        k: usize,
        chosen: &mut Vec<usize>,
        explored: &mut u64,
    ) -> bool {
        *explored += 1;
        let Some(tri) = t.triangle_within(alive) else {
            return true;
        };
        if k == 0 {
            return false;
        }
        for x in tri {
            alive.remove(x);
            chosen.push(x);
            if search(t, alive, k - 1, chosen, explored) {
                return true;
            }
            chosen.pop();
            alive.insert(x);
        }
        false
    }

    let mut alive = VertexSet::full(t.n());
    let mut chosen = Vec::new();
    let mut explored = 0;
    let found = search(t, &mut alive, k, &mut chosen, &mut explored);
    let witness = found.then(|| {
        chosen.sort_unstable();
        chosen
    });
    ExactResult {
        value: witness.as_ref().map_or(0, Vec::len),
        witness,
        explored,
    }
}

/// Calls `visit` on each `k`-subset of `0..n` (ascending index tuples, in
/// lexicographic order) until it returns true.
pub(crate) fn for_each_combination(
    n: usize,
    k: usize,
    mut visit: impl FnMut(&[usize]) -> bool,
) -> bool {
    if k > n {
        return false;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if visit(&idx) {
            return true;
        }
        let Some(i) = (0..k).rev().find(|&i| idx[i] < i + n - k) else {
            return false;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Minimum dominating set (every outside vertex has an out-neighbour inside),
/// by enumerating subsets in order of size.
pub fn exact_min_ds(t: &Tournament, caps: &Caps) -> Result<ExactResult<Vec<usize>>> {
    let n = t.n();
    check_cap("exact dominating set", n, caps.dominating)?;
    let out: Vec<u64> = (0..n)
        .map(|v| t.out_set(v).iter().fold(0u64, |m, u| m | 1 << u))
        .collect();
    let mut explored = 0u64;
    for k in 1..=n {
        let mut witness = None;
        for_each_combination(n, k, |combo| {
            explored += 1;
            let s = combo.iter().fold(0u64, |m, &v| m | 1 << v);
            let ok = (0..n).all(|v| s >> v & 1 == 1 || out[v] & s != 0);
            if ok {
                witness = Some(combo.to_vec());
            }
            ok
        });
        if let Some(w) = witness {
            return Ok(ExactResult {
                value: k,
                witness: w,
                explored,
            });
        }
    }
    unreachable!("the full vertex set dominates")
}

/// Every ordering of width at most one, in lexicographic order of the permutation.
pub fn brute_sparse_orderings(t: &Tournament, caps: &Caps) -> Result<Vec<Ordering>> {
    let n = t.n();
    check_cap("sparse ordering enumeration", n, caps.brute)?;
    let mut found = Vec::new();
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    let mut deg = vec![0u8; n];

    fn dfs(
        t: &Tournament,
        perm: &mut Vec<usize>,
        used: &mut [bool],
        deg: &mut [u8],
        found: &mut Vec<Ordering>,
    ) {
        let n = t.n();
        if perm.len() == n {
            found.push(Ordering::new(perm.clone()).unwrap());
            return;
        }
        for v in 0..n {
            if used[v] {
                continue;
            }
            let heads: Vec<usize> = perm.iter().copied().filter(|&u| t.has_arc(v, u)).collect();
            if heads.len() > 1 || heads.iter().any(|&u| deg[u] > 0) {
                continue;
            }
            for &u in &heads {
                deg[u] += 1;
            }
            deg[v] = heads.len() as u8;
            used[v] = true;
            perm.push(v);
            dfs(t, perm, used, deg, found);
            perm.pop();
            used[v] = false;
            deg[v] = 0;
            for &u in &heads {
                deg[u] -= 1;
            }
        }
    }

    dfs(t, &mut perm, &mut used, &mut deg, &mut found);
    Ok(found)
}

/// Cutwidth of a tournament via the in-degree ordering (ties by id), with that ordering.
pub fn cutwidth_tournament(t: &Tournament) -> (usize, Ordering) {
    let sigma = in_degree_ordering(t);
    let value = t.backward_profile(&sigma).expect("same size").max_cut;
    (value, sigma)
}

/// Vertices sorted by nondecreasing in-degree, ties by ascending id.
pub fn in_degree_ordering(t: &Tournament) -> Ordering {
    let mut perm: Vec<usize> = (0..t.n()).collect();
    perm.sort_by_key(|&v| (t.in_degree(v), v));
    Ordering::new(perm).expect("sorted ids form a permutation")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{acyclic, rotational, u_tournament};

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn degreewidth_small() {
        let r = exact_degreewidth(&acyclic(6).unwrap(), &caps()).unwrap();
        assert_eq!(r.value, 0);
        assert_eq!(r.witness, Ordering::identity(6));
        assert_eq!(
            exact_degreewidth(&rotational(3).unwrap(), &caps())
                .unwrap()
                .value,
            3
        );
        assert_eq!(
            exact_degreewidth(&u_tournament(9).unwrap(), &caps())
                .unwrap()
                .value,
            1
        );
        assert_eq!(
            exact_degreewidth(&acyclic(1).unwrap(), &caps())
                .unwrap()
                .value,
            0
        );
    }

    #[test]
    fn cap_is_enforced() {
        let tight = Caps {
            exact: 5,
            ..Caps::default()
        };
        assert!(matches!(
            exact_degreewidth(&acyclic(6).unwrap(), &tight),
            Err(Error::CapExceeded { n: 6, cap: 5, .. })
        ));
        assert!(exact_fas(&acyclic(6).unwrap(), &tight).is_err());
    }

    #[test]
    fn fas_small() {
        assert_eq!(
            exact_fas(&rotational(1).unwrap(), &caps()).unwrap().value,
            1
        );
        assert_eq!(exact_fas(&acyclic(8).unwrap(), &caps()).unwrap().value, 0);
        assert_eq!(
            exact_fas(&u_tournament(8).unwrap(), &caps()).unwrap().value,
            3
        );
    }

    #[test]
    fn fvst_small() {
        let tri = rotational(1).unwrap();
        assert_eq!(exact_fvst(&tri, 1).witness.map(|w| w.len()), Some(1));
        assert_eq!(exact_fvst(&tri, 0).witness, None);
        assert_eq!(exact_fvst(&acyclic(4).unwrap(), 0).witness, Some(vec![]));
    }

    #[test]
    fn min_ds_small() {
        let r = exact_min_ds(&acyclic(5).unwrap(), &caps()).unwrap();
        assert_eq!((r.value, r.witness), (1, vec![4]));
        assert_eq!(
            exact_min_ds(&rotational(1).unwrap(), &caps())
                .unwrap()
                .value,
            2
        );
        assert_eq!(
            exact_min_ds(&rotational(3).unwrap(), &caps())
                .unwrap()
                .value,
            2
        );
    }

    #[test]
    fn combinations_are_lexicographic() {
        let mut seen = Vec::new();
        for_each_combination(4, 2, |c| {
            seen.push(c.to_vec());
            false
        });
        assert_eq!(
            seen,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        let mut count = 0;
        for_each_combination(3, 3, |_| {
            count += 1;
            false
        });
        assert_eq!(count, 1);
    }

    #[test]
    fn cutwidth_small() {
        assert_eq!(cutwidth_tournament(&acyclic(5).unwrap()).0, 0);
        assert_eq!(cutwidth_tournament(&rotational(1).unwrap()).0, 1);
    }
}
