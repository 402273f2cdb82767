//! Naive reference computations shared by the integration tests. Nothing here
//! reuses the library's algorithms beyond `has_arc`.

#![allow(dead_code)]

use dwlab_core::Tournament;
use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;

/// Every tournament on `n` vertices, pairs `(i, j)`, `i < j`, in lexicographic
/// order with bit `k` of the index deciding the `k`-th pair.
pub fn all_tournaments(n: usize) -> impl Iterator<Item = Tournament> {
    let pairs = n * (n - 1) / 2;
    (0u64..1 << pairs).map(move |mask| tournament_from_mask(n, mask))
}

pub fn tournament_from_mask(n: usize, mask: u64) -> Tournament {
    let mut bit = 0;
    let mut beats = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            beats[i][j] = mask >> bit & 1 == 1;
            bit += 1;
        }
    }
    Tournament::from_fn(n, |i, j| beats[i][j]).unwrap()
}

pub fn permutations(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..n).permutations(n)
}

/// Backward degree of every vertex, counted pair by pair.
pub fn naive_degrees(t: &Tournament, perm: &[usize]) -> Vec<usize> {
    let mut deg = vec![0; t.n()];
    for a in 0..perm.len() {
        for b in a + 1..perm.len() {
            if t.has_arc(perm[b], perm[a]) {
                deg[perm[a]] += 1;
                deg[perm[b]] += 1;
            }
        }
    }
    deg
}

pub fn naive_width(t: &Tournament, perm: &[usize]) -> usize {
    naive_degrees(t, perm).into_iter().max().unwrap_or(0)
}

pub fn naive_backward_count(t: &Tournament, perm: &[usize]) -> usize {
    naive_degrees(t, perm).into_iter().sum::<usize>() / 2
}

pub fn naive_max_cut(t: &Tournament, perm: &[usize]) -> usize {
    (1..perm.len())
        .map(|k| {
            perm[..k]
                .iter()
                .map(|&u| perm[k..].iter().filter(|&&v| t.has_arc(v, u)).count())
                .sum::<usize>()
        })
        .max()
        .unwrap_or(0)
}

pub struct Brute {
    pub degreewidth: usize,
    pub fas: usize,
    pub cutwidth: usize,
    pub sparse: Vec<Vec<usize>>,
}

/// Minimum over all `n!` orderings.
pub fn brute(t: &Tournament) -> Brute {
    let mut out = Brute {
        degreewidth: usize::MAX,
        fas: usize::MAX,
        cutwidth: usize::MAX,
        sparse: Vec::new(),
    };
    for perm in permutations(t.n()) {
        let deg = naive_degrees(t, &perm);
        let width = deg.iter().copied().max().unwrap_or(0);
        out.degreewidth = out.degreewidth.min(width);
        out.fas = out.fas.min(deg.iter().sum::<usize>() / 2);
        out.cutwidth = out.cutwidth.min(naive_max_cut(t, &perm));
        if width <= 1 {
            out.sparse.push(perm);
        }
    }
    out
}

/// A tournament is acyclic iff its in-degrees are pairwise distinct.
pub fn acyclic_after_removing(t: &Tournament, removed: &[usize]) -> bool {
    let rest: Vec<usize> = (0..t.n()).filter(|v| !removed.contains(v)).collect();
    let mut degs: Vec<usize> = rest
        .iter()
        .map(|&v| rest.iter().filter(|&&u| t.has_arc(u, v)).count())
        .collect();
    degs.sort_unstable();
    degs.windows(2).all(|w| w[0] != w[1])
}

pub fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..n).combinations(k)
}

pub fn brute_min_fvs(t: &Tournament) -> usize {
    (0..=t.n())
        .find(|&k| subsets_of_size(t.n(), k).any(|s| acyclic_after_removing(t, &s)))
        .unwrap()
}

/// Every vertex outside `s` has an out-neighbour in `s`.
pub fn naive_dominates(t: &Tournament, s: &[usize]) -> bool {
    (0..t.n()).all(|v| s.contains(&v) || s.iter().any(|&u| t.has_arc(v, u)))
}

pub fn brute_min_ds(t: &Tournament) -> usize {
    (1..=t.n())
        .find(|&k| subsets_of_size(t.n(), k).any(|s| naive_dominates(t, &s)))
        .unwrap()
}

pub fn rng(seed: u64) -> Xoshiro256StarStar {
    Xoshiro256StarStar::seed_from_u64(seed)
}

pub fn shuffled(n: usize, rng: &mut impl Rng) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

/// Random composite of `U`-blocks, singletons and small acyclic blocks joined
/// by domination, with a few cross arcs reversed. Not necessarily sparse.
pub fn random_composite(max_n: usize, rng: &mut impl Rng) -> Tournament {
    use dwlab_core::generators::{acyclic, dominate_join, u_tournament};
    let mut blocks = Vec::new();
    let mut starts = Vec::new();
    let mut n = 0;
    while n < max_n {
        let room = max_n - n;
        let size = rng.random_range(1..=room.min(7));
        let block = match (size, rng.random_range(0..4)) {
            (1, _) => acyclic(1).unwrap(),
            (_, 0) => acyclic(size).unwrap(),
            _ => u_tournament(size).unwrap(),
        };
        starts.push(n);
        n += size;
        blocks.push(block);
        if rng.random_bool(0.3) {
            break;
        }
    }
    let mut overrides = Vec::new();
    for w in 1..blocks.len() {
        if rng.random_bool(0.4) {
            let a = rng.random_range(0..starts[w]);
            let b = rng.random_range(starts[w]..n);
            if !overrides.contains(&(b, a)) {
                overrides.push((b, a));
            }
        }
    }
    dominate_join(&blocks, &overrides).unwrap()
}
