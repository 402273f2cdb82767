//! Tournaments, orderings and backward-arc accounting.

use std::collections::HashSet;

use serde::Serialize;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};

/// A complete antisymmetric digraph stored as dense out- and in-neighbour rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tournament {
    n: usize,
    out: Vec<VertexSet>,
    inn: Vec<VertexSet>,
}

impl std::fmt::Debug for Tournament {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Tournament(n={}, arcs=[", self.n)?;
        let mut first = true;
        for (u, v) in self.arcs() {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "{u}->{v}")?;
        }
        write!(f, "])")
    }
}

impl Tournament {
    /// Builds a tournament from a pair oracle: for every `u < v`, `u_beats_v(u, v)`
    /// decides whether the arc is `u -> v` (true) or `v -> u` (false).
    pub fn from_fn(n: usize, mut u_beats_v: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyTournament);
        }
        let mut out = vec![VertexSet::new(n); n];
        let mut inn = vec![VertexSet::new(n); n];
        for u in 0..n {
            for v in u + 1..n {
                let (a, b) = if u_beats_v(u, v) { (u, v) } else { (v, u) };
                out[a].insert(b);
                inn[b].insert(a);
            }
        }
        Ok(Self { n, out, inn })
    }

    /// Validated construction from an explicit arc list covering every pair once.
    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyTournament);
        }
        let mut seen: HashSet<(usize, usize)> = HashSet::with_capacity(arcs.len());
        for &(u, v) in arcs {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if seen.contains(&(u, v)) {
                return Err(Error::DuplicateArc(u, v));
            }
            if seen.contains(&(v, u)) {
                return Err(Error::ConflictingArcs(v, u));
            }
            seen.insert((u, v));
        }
        for u in 0..n {
            for v in u + 1..n {
                if !seen.contains(&(u, v)) && !seen.contains(&(v, u)) {
                    return Err(Error::MissingPair(u, v));
                }
            }
        }
        Self::from_fn(n, |u, v| seen.contains(&(u, v)))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u].contains(v)
    }

    /// Out-neighbourhood N⁺(v).
    #[inline]
    pub fn out_set(&self, v: usize) -> &VertexSet {
        &self.out[v]
    }

    /// In-neighbourhood N⁻(v).
    #[inline]
    pub fn in_set(&self, v: usize) -> &VertexSet {
        &self.inn[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.inn[v].len()
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.in_degree(v)).collect()
    }

    pub fn min_in_degree(&self) -> usize {
        (0..self.n).map(|v| self.in_degree(v)).min().unwrap_or(0)
    }

    /// All arcs in lexicographic order of (tail, head).
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.out[u].iter().map(move |v| (u, v)))
    }

    /// Copy with the arc between `u` and `v` flipped.
    pub fn with_reversed(&self, u: usize, v: usize) -> Result<Self> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        let mut t = self.clone();
        let (a, b) = if t.has_arc(u, v) { (u, v) } else { (v, u) };
        t.out[a].remove(b);
        t.inn[b].remove(a);
        t.out[b].insert(a);
        t.inn[a].insert(b);
        Ok(t)
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            });
        }
        Ok(())
    }

    fn set_from(&self, vertices: &[usize]) -> Result<VertexSet> {
        let mut set = VertexSet::new(self.n);
        for &v in vertices {
            self.check_vertex(v)?;
            if !set.insert(v) {
                return Err(Error::DuplicateVertex(v));
            }
        }
        Ok(set)
    }

    /// Per-vertex backward degrees, width, backward total and maximum prefix cut of `sigma`.
    pub fn backward_profile(&self, sigma: &Ordering) -> Result<BackwardProfile> {
        if sigma.len() != self.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                found: sigma.len(),
            });
        }
        let mut per_vertex = vec![0; self.n];
        let mut before = VertexSet::new(self.n);
        let mut after = VertexSet::full(self.n);
        let mut total = 0;
        let mut cut = 0usize;
        let mut max_cut = 0;
        for (i, &v) in sigma.perm().iter().enumerate() {
            after.remove(v);
            let tail_side = self.out[v].intersection_len(&before);
            let head_side = self.inn[v].intersection_len(&after);
            per_vertex[v] = tail_side + head_side;
            total += head_side;
            cut = cut + head_side - tail_side;
            if i + 1 < self.n {
                max_cut = max_cut.max(cut);
            }
            before.insert(v);
        }
        let width = per_vertex.iter().copied().max().unwrap_or(0);
        Ok(BackwardProfile {
            per_vertex,
            width,
            total_backward: total,
            max_cut,
        })
    }

    /// Backward arcs of `sigma`, sorted by the position of their head.
    pub fn backward_arcs(&self, sigma: &Ordering) -> Vec<(usize, usize)> {
        let mut arcs = Vec::new();
        for (i, &head) in sigma.perm().iter().enumerate() {
            for &tail in &sigma.perm()[i + 1..] {
                if self.has_arc(tail, head) {
                    arcs.push((tail, head));
                }
            }
        }
        arcs
    }

    /// Subtournament induced by `vertices`; new id `i` is `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> Result<Induced> {
        if vertices.is_empty() {
            return Err(Error::EmptySet);
        }
        self.set_from(vertices)?;
        let t = Self::from_fn(vertices.len(), |i, j| {
            self.has_arc(vertices[i], vertices[j])
        })?;
        let mut old_to_new = vec![None; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            old_to_new[v] = Some(i);
        }
        Ok(Induced {
            tournament: t,
            old_to_new,
            new_to_old: vertices.to_vec(),
        })
    }

    /// Classifies how the vertex set `x` sits relative to the rest of the tournament.
    pub fn domination_relation(&self, x: &VertexSet) -> Result<DominationRelation> {
        if x.capacity() != self.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                found: x.capacity(),
            });
        }
        let size = x.len();
        if size == 0 {
            return Err(Error::EmptySet);
        }
        if size == self.n {
            return Err(Error::FullSet);
        }
        let mut entering = None;
        for a in x.iter() {
            let outside_in = self.inn[a].difference(x);
            match outside_in.len() {
                0 => {}
                1 if entering.is_none() => {
                    entering = Some((outside_in.first().unwrap(), a));
                }
                _ => return Ok(DominationRelation::Neither),
            }
        }
        let Some((b, a)) = entering else {
            return Ok(DominationRelation::Dominates);
        };
        if self.in_degree(b) > size && self.out[a].intersects(x) {
            Ok(DominationRelation::QuasiDominates { b, a })
        } else {
            Ok(DominationRelation::Neither)
        }
    }

    /// Strongly connected components of the subtournament induced by `f`, listed
    /// source component first so that no arc goes from a later component to an
    /// earlier one. Vertices inside a component follow `sigma`.
    pub fn scc_in_order(&self, sigma: &Ordering, f: &VertexSet) -> Result<Vec<Vec<usize>>> {
        if sigma.len() != self.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                found: sigma.len(),
            });
        }
        if f.capacity() != self.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                found: f.capacity(),
            });
        }
        // Score sequence split: a prefix of the in-degree sort is a union of
        // source components exactly when its in-degree sum is C(k, 2).
        let mut members: Vec<(usize, usize)> = f
            .iter()
            .map(|v| (self.inn[v].intersection_len(f), v))
            .collect();
        members.sort_unstable();
        let mut components = Vec::new();
        let mut current = Vec::new();
        let mut sum = 0;
        for (k, &(d, v)) in members.iter().enumerate() {
            current.push(v);
            sum += d;
            let placed = k + 1;
            if sum == placed * (placed - 1) / 2 {
                current.sort_unstable_by_key(|&u| sigma.pos(u));
                components.push(std::mem::take(&mut current));
            }
        }
        debug_assert!(current.is_empty());
        Ok(components)
    }

    /// True iff every vertex outside `s` has an out-neighbour in `s`.
    pub fn is_dominating_set(&self, s: &VertexSet) -> bool {
        (0..self.n).all(|v| s.contains(v) || self.out[v].intersects(s))
    }

    pub fn is_acyclic(&self) -> bool {
        let mut seen = vec![false; self.n];
        for v in 0..self.n {
            let d = self.in_degree(v);
            if seen[d] {
                return false;
            }
            seen[d] = true;
        }
        true
    }

    /// Topological order when acyclic.
    pub fn topological_order(&self) -> Option<Ordering> {
        if !self.is_acyclic() {
            return None;
        }
        let mut perm = vec![0; self.n];
        for v in 0..self.n {
            perm[self.in_degree(v)] = v;
        }
        Some(Ordering::from_perm_unchecked(perm))
    }

    /// Directed triangle whose sorted vertex triple is lexicographically least,
    /// rotated to start at its smallest vertex.
    pub fn has_triangle(&self) -> Option<[usize; 3]> {
        self.triangle_within(&VertexSet::full(self.n))
    }

    /// Like [`has_triangle`](Self::has_triangle) but restricted to `alive`.
    pub fn triangle_within(&self, alive: &VertexSet) -> Option<[usize; 3]> {
        for a in alive.iter() {
            for b in alive.iter().filter(|&b| b > a) {
                let (first, second) = if self.has_arc(a, b) { (a, b) } else { (b, a) };
                // closing vertex c with second -> c -> first
                let mut closing = self.out[second].intersection(&self.inn[first]);
                closing.intersect_with(alive);
                if let Some(c) = closing.iter().find(|&c| c > b) {
                    return Some(if first == a { [a, b, c] } else { [a, c, b] });
                }
            }
        }
        None
    }
}

/// Result of [`Tournament::induced`].
#[derive(Debug, Clone)]
pub struct Induced {
    pub tournament: Tournament,
    pub old_to_new: Vec<Option<usize>>,
    pub new_to_old: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DominationRelation {
    Dominates,
    /// The single arc entering the set is `(b, a)`.
    QuasiDominates {
        b: usize,
        a: usize,
    },
    Neither,
}

/// A permutation of the vertices together with its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ordering {
    perm: Vec<usize>,
    pos: Vec<usize>,
}

impl Ordering {
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in perm.iter().enumerate() {
            if v >= n {
                return Err(Error::InvalidOrdering(format!(
                    "vertex {v} out of range for length {n}"
                )));
            }
            if pos[v] != usize::MAX {
                return Err(Error::InvalidOrdering(format!("vertex {v} repeated")));
            }
            pos[v] = i;
        }
        Ok(Self { perm, pos })
    }

    pub(crate) fn from_perm_unchecked(perm: Vec<usize>) -> Self {
        let mut pos = vec![0; perm.len()];
        for (i, &v) in perm.iter().enumerate() {
            pos[v] = i;
        }
        Self { perm, pos }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_perm_unchecked((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    #[inline]
    pub fn pos(&self, v: usize) -> usize {
        self.pos[v]
    }

    pub fn at(&self, i: usize) -> usize {
        self.perm[i]
    }

    pub fn first(&self) -> Option<usize> {
        self.perm.first().copied()
    }

    pub fn last(&self) -> Option<usize> {
        self.perm.last().copied()
    }

    pub fn reversed(&self) -> Self {
        Self::from_perm_unchecked(self.perm.iter().rev().copied().collect())
    }

    pub fn into_perm(self) -> Vec<usize> {
        self.perm
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BackwardProfile {
    pub per_vertex: Vec<usize>,
    pub width: usize,
    pub total_backward: usize,
    pub max_cut: usize,
}
