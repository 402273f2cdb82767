//! Recognition of `M`-sparse tournaments with certificate orderings.
//!
//! The recursion peels blocks off the front of the ordering: an in-degree-0
//! vertex, the unique in-degree-1 vertex, or a `U`-chain that dominates or
//! quasi-dominates what is left. In-degrees always refer to the remaining
//! tournament, which is tracked incrementally so the whole run is quadratic in
//! set operations.

use serde::Serialize;

use super::canonical::{canonical_u_ordering, choose_canonical, is_uk_m_sparse, CanonicalKind};
use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::tournament::{Ordering, Tournament};

/// How a `U`-chain relates to the rest of the (remaining) tournament.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ChainClosure {
    Dominates,
    /// `(b, a)` is the only arc entering the chain, with `a` its last vertex.
    QuasiDominates {
        b: usize,
        a: usize,
    },
}

/// Vertices `v_1..v_k` with the U-property: `d⁻(v_1) = 1`, and for `i ≥ 2`
/// `d⁻(v_i) = i − 1` with arc `(v_i, v_{i−1})`. In the dominating case the
/// final vertex may instead close the chain with `d⁻ = k − 2`; the chain still
/// induces `U_k` with the listed labelling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UChain {
    pub vertices: Vec<usize>,
    pub closure: ChainClosure,
}

/// How a decomposition block attaches to the blocks after it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BlockClosure {
    /// Every arc between the block and the later blocks leaves the block.
    Dominates,
    /// As for [`ChainClosure::QuasiDominates`].
    QuasiDominates { b: usize, a: usize },
    /// Single vertex whose only in-neighbour `tail` lies in a later block; the
    /// arc `(tail, vertex)` is its one backward arc.
    ForcedArc { tail: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionBlock {
    /// Block vertices; for chains, in `v_1..v_k` order.
    pub vertices: Vec<usize>,
    pub closure: BlockClosure,
    /// Canonical ordering used for `U`-chain blocks.
    pub canonical: Option<CanonicalKind>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseCertificate {
    pub ordering: Ordering,
    pub blocks: Vec<DecompositionBlock>,
}

/// Remaining tournament after some blocks have been removed.
struct Residual<'a> {
    t: &'a Tournament,
    alive: VertexSet,
    indeg: Vec<usize>,
    count: usize,
}

impl<'a> Residual<'a> {
    fn new(t: &'a Tournament) -> Self {
        Self {
            t,
            alive: VertexSet::full(t.n()),
            indeg: t.in_degrees(),
            count: t.n(),
        }
    }

    fn remove(&mut self, v: usize) {
        debug_assert!(self.alive.contains(v));
        self.alive.remove(v);
        self.count -= 1;
        for y in self.t.out_set(v).intersection(&self.alive).iter() {
            self.indeg[y] -= 1;
        }
    }

    fn in_neighbours(&self, v: usize) -> VertexSet {
        self.t.in_set(v).intersection(&self.alive)
    }

    /// Extends a U-property seed until it dominates or quasi-dominates.
    fn grow_chain(&self, mut chain: Vec<usize>) -> Result<UChain> {
        let mut members = VertexSet::from_iter_with_capacity(self.t.n(), chain.iter().copied());
        loop {
            let last = *chain.last().expect("non-empty seed");
            let mut outside = self.in_neighbours(last);
            outside.difference_with(&members);
            let Some(w) = outside.first() else {
                // the chain already spans everything that is left
                return Ok(UChain {
                    vertices: chain,
                    closure: ChainClosure::Dominates,
                });
            };
            if outside.len() != 1 {
                return Err(Error::NotUChain(format!(
                    "vertex {last} has {} in-neighbours outside the chain",
                    outside.len()
                )));
            }
            let (dw, dl) = (self.indeg[w], self.indeg[last]);
            if dw == dl {
                chain.push(w);
                return Ok(UChain {
                    vertices: chain,
                    closure: ChainClosure::Dominates,
                });
            } else if dw == dl + 1 {
                chain.push(w);
                members.insert(w);
            } else {
                return Ok(UChain {
                    vertices: chain,
                    closure: ChainClosure::QuasiDominates { b: w, a: last },
                });
            }
        }
    }
}

/// Grows the U-property `seed` in `t` into a `U`-chain that dominates or
/// quasi-dominates `t`.
pub fn get_u_subtournament(t: &Tournament, seed: &[usize]) -> Result<UChain> {
    check_u_property(t, seed)?;
    Residual::new(t).grow_chain(seed.to_vec())
}

fn check_u_property(t: &Tournament, seed: &[usize]) -> Result<()> {
    let Some(&first) = seed.first() else {
        return Err(Error::NotUChain("empty seed".into()));
    };
    let mut seen = VertexSet::new(t.n());
    for &v in seed {
        if v >= t.n() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: t.n(),
            });
        }
        if !seen.insert(v) {
            return Err(Error::NotUChain(format!("vertex {v} repeated")));
        }
    }
    if t.in_degree(first) != 1 {
        return Err(Error::NotUChain(format!(
            "first vertex {first} has in-degree {}",
            t.in_degree(first)
        )));
    }
    for i in 1..seed.len() {
        let (v, prev) = (seed[i], seed[i - 1]);
        if !t.has_arc(v, prev) {
            return Err(Error::NotUChain(format!("missing arc ({v}, {prev})")));
        }
        if t.in_degree(v) != i {
            return Err(Error::NotUChain(format!(
                "vertex {v} at index {i} has in-degree {}",
                t.in_degree(v)
            )));
        }
    }
    Ok(())
}

/// Decides whether `t` has a sparse ordering in which every vertex of `m` is
/// free of backward arcs, returning such an ordering and its block
/// decomposition when it does.
pub fn is_m_sparse(t: &Tournament, m: &VertexSet) -> Option<SparseCertificate> {
    assert_eq!(
        m.capacity(),
        t.n(),
        "M must be over the tournament's vertices"
    );
    let required = m.clone();
    let mut m = m.clone();
    let mut res = Residual::new(t);
    let mut perm = Vec::with_capacity(t.n());
    let mut blocks = Vec::new();

    while res.count > 0 {
        if res.count == 1 {
            let v = res.alive.first().unwrap();
            perm.push(v);
            blocks.push(DecompositionBlock {
                vertices: vec![v],
                closure: BlockClosure::Dominates,
                canonical: None,
            });
            break;
        }
        let mut min = usize::MAX;
        let mut min_vertex = 0;
        let mut ones = Vec::new();
        for v in res.alive.iter() {
            let d = res.indeg[v];
            if d < min {
                min = d;
                min_vertex = v;
            }
            if d == 1 {
                ones.push(v);
            }
        }
        if min >= 2 {
            return None;
        }
        if min == 0 {
            let v = min_vertex;
            perm.push(v);
            blocks.push(DecompositionBlock {
                vertices: vec![v],
                closure: BlockClosure::Dominates,
                canonical: None,
            });
            m.remove(v);
            res.remove(v);
            continue;
        }
        if ones.len() == 1 {
            let v = ones[0];
            let w = res.in_neighbours(v).first().unwrap();
            // (w, v) is backward in every sparse ordering, so neither end may be protected
            if m.contains(v) || m.contains(w) {
                return None;
            }
            m.insert(w);
            perm.push(v);
            blocks.push(DecompositionBlock {
                vertices: vec![v],
                closure: BlockClosure::ForcedArc { tail: w },
                canonical: None,
            });
            res.remove(v);
            continue;
        }
        // Two in-degree-1 vertices always contain such a pair: whichever of
        // them loses the arc between them has the other as its only in-neighbour.
        let (v, w) = ones
            .iter()
            .find_map(|&v| {
                let w = res.in_neighbours(v).first().unwrap();
                (res.indeg[w] == 1).then_some((v, w))
            })
            .expect("two in-degree-1 vertices always include an adjacent pair");
        let chain = res
            .grow_chain(vec![v, w])
            .expect("a U-property seed always grows to a closed chain");
        let k = chain.vertices.len();
        let mut local = VertexSet::new(k);
        for (i, &x) in chain.vertices.iter().enumerate() {
            if m.contains(x) {
                local.insert(i);
            }
        }
        let closure = match chain.closure {
            ChainClosure::Dominates => BlockClosure::Dominates,
            ChainClosure::QuasiDominates { b, a } => {
                // likewise (b, a) is always backward
                if m.contains(a) || m.contains(b) {
                    return None;
                }
                local.insert(k - 1);
                debug_assert_eq!(a, chain.vertices[k - 1]);
                m.insert(b);
                BlockClosure::QuasiDominates { b, a }
            }
        };
        if !is_uk_m_sparse(k, &local) {
            return None;
        }
        let kind = choose_canonical(k, &local).expect("an M-sparse U_k has a canonical ordering");
        let block_order = canonical_u_ordering(kind, k).expect("chosen kind fits k");
        perm.extend(block_order.perm().iter().map(|&i| chain.vertices[i]));
        for &x in &chain.vertices {
            m.remove(x);
            res.remove(x);
        }
        blocks.push(DecompositionBlock {
            vertices: chain.vertices,
            closure,
            canonical: Some(kind),
        });
    }

    let ordering = Ordering::new(perm).expect("blocks partition the vertices");
    let profile = t.backward_profile(&ordering).expect("same size");
    assert!(profile.width <= 1, "certificate width {}", profile.width);
    assert!(
        required.iter().all(|v| profile.per_vertex[v] == 0),
        "certificate leaves a required vertex on a backward arc"
    );
    Some(SparseCertificate { ordering, blocks })
}

/// Shorthand for `is_m_sparse(t, ∅)`.
pub fn sparse_certificate(t: &Tournament) -> Option<SparseCertificate> {
    is_m_sparse(t, &VertexSet::new(t.n()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{acyclic, dominate_join, rotational, u_tournament};
    use crate::tournament::DominationRelation;

    #[test]
    fn u_tournaments_are_sparse() {
        for n in 2..=30 {
            let t = u_tournament(n).unwrap();
            let cert = sparse_certificate(&t).unwrap();
            assert!(t.backward_profile(&cert.ordering).unwrap().width <= 1);
        }
    }

    #[test]
    fn u8_certificate_is_single_block() {
        let t = u_tournament(8).unwrap();
        let cert = sparse_certificate(&t).unwrap();
        assert_eq!(cert.blocks.len(), 1);
        assert_eq!(cert.blocks[0].vertices, (0..8).collect::<Vec<_>>());
        assert_eq!(cert.blocks[0].canonical, Some(CanonicalKind::Pi1n));
    }

    #[test]
    fn regular_is_not_sparse() {
        assert!(sparse_certificate(&rotational(2).unwrap()).is_none());
        assert!(sparse_certificate(&rotational(1).unwrap()).is_some());
    }

    #[test]
    fn u5_with_both_ends_required() {
        let t = u_tournament(5).unwrap();
        let both = VertexSet::from_iter_with_capacity(5, [0, 4]);
        assert!(is_m_sparse(&t, &both).is_none());
        let one = VertexSet::from_iter_with_capacity(5, [4]);
        let cert = is_m_sparse(&t, &one).unwrap();
        assert_eq!(t.backward_profile(&cert.ordering).unwrap().per_vertex[4], 0);
    }

    #[test]
    fn chain_growth_on_joined_blocks() {
        let t = dominate_join(&[u_tournament(5).unwrap(), acyclic(3).unwrap()], &[]).unwrap();
        let chain = get_u_subtournament(&t, &[0, 1]).unwrap();
        assert_eq!(chain.vertices, vec![0, 1, 2, 3, 4]);
        assert_eq!(chain.closure, ChainClosure::Dominates);
        let x = VertexSet::from_iter_with_capacity(8, 0..5);
        assert_eq!(
            t.domination_relation(&x).unwrap(),
            DominationRelation::Dominates
        );

        let whole = get_u_subtournament(&u_tournament(6).unwrap(), &[0, 1]).unwrap();
        assert_eq!(whole.vertices.len(), 6);
        assert_eq!(whole.closure, ChainClosure::Dominates);
    }

    #[test]
    fn chain_growth_quasi() {
        // U_4 followed by a regular block; vertex 6 reverses onto v_4.
        let t = dominate_join(
            &[u_tournament(4).unwrap(), rotational(2).unwrap()],
            &[(6, 3)],
        )
        .unwrap();
        let chain = get_u_subtournament(&t, &[0, 1]).unwrap();
        assert_eq!(chain.closure, ChainClosure::QuasiDominates { b: 6, a: 3 });
        let x = VertexSet::from_iter_with_capacity(t.n(), chain.vertices.iter().copied());
        assert_eq!(
            t.domination_relation(&x).unwrap(),
            DominationRelation::QuasiDominates { b: 6, a: 3 }
        );
    }

    #[test]
    fn seed_validation() {
        let t = u_tournament(5).unwrap();
        assert!(get_u_subtournament(&t, &[2, 1]).is_err());
        assert!(get_u_subtournament(&t, &[0, 0]).is_err());
        assert!(get_u_subtournament(&t, &[]).is_err());
    }
}
