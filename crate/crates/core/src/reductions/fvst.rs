//! Cubic vertex cover to feedback vertex set on a sparse tournament.
//!
//! Graph vertex `i` owns the eight consecutive ids `8i..8i+8`, laid out as
//! `h_i`, the three `u`-vertices (one per neighbour, neighbours ascending),
//! `t_i`, then `x^1_i, x^2_i, x^3_i`. The emitted ordering is the identity.

use serde::Serialize;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::tournament::{Ordering, Tournament};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CubicGraph {
    pub n: usize,
    /// Edges `(u, v)` with `u < v`, sorted.
    pub edges: Vec<(usize, usize)>,
}

impl CubicGraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut normalized = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge {{{u}, {v}}} out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at {u}")));
            }
            normalized.push((u.min(v), u.max(v)));
        }
        normalized.sort_unstable();
        if let Some(w) = normalized.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph(format!(
                "edge {{{}, {}}} repeated",
                w[0].0, w[0].1
            )));
        }
        let g = Self {
            n,
            edges: normalized,
        };
        if n == 0 {
            return Err(Error::InvalidGraph("no vertices".into()));
        }
        for v in 0..n {
            let d = g.neighbours(v).len();
            if d != 3 {
                return Err(Error::InvalidGraph(format!("vertex {v} has degree {d}")));
            }
        }
        Ok(g)
    }

    /// Neighbours of `v`, ascending.
    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn is_vertex_cover(&self, s: &[usize]) -> Result<()> {
        let set = VertexSet::from_iter_with_capacity(self.n, s.iter().copied());
        match self
            .edges
            .iter()
            .find(|&&(u, v)| !set.contains(u) && !set.contains(v))
        {
            Some(&(u, v)) => Err(Error::NotVertexCover(u, v)),
            None => Ok(()),
        }
    }

    pub fn complete4() -> Self {
        let edges: Vec<_> = (0..4)
            .flat_map(|u| (u + 1..4).map(move |v| (u, v)))
            .collect();
        Self::new(4, &edges).expect("K4 is cubic")
    }

    pub fn complete_bipartite33() -> Self {
        let edges: Vec<_> = (0..3).flat_map(|u| (3..6).map(move |v| (u, v))).collect();
        Self::new(6, &edges).expect("K3,3 is cubic")
    }
}

/// The eight gadget vertices of one graph vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Pattern {
    pub h: usize,
    /// `u`-vertices, one per neighbour.
    pub u: [usize; 3],
    /// Graph neighbour matching each entry of `u`.
    pub neighbours: [usize; 3],
    pub t: usize,
    pub x: [usize; 3],
}

impl Pattern {
    /// `u`-vertex of this pattern facing neighbour `j`.
    pub fn u_towards(&self, j: usize) -> Option<usize> {
        self.neighbours
            .iter()
            .position(|&k| k == j)
            .map(|p| self.u[p])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ArcTag {
    /// `(t_i, h_i)`.
    VertexBackward { vertex: usize },
    /// `(u^i_j, u^j_i)` for the edge `{i, j}`, `i < j`.
    EdgeBackward { edge: (usize, usize) },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TaggedArc {
    pub tail: usize,
    pub head: usize,
    pub tag: ArcTag,
}

#[derive(Debug, Clone)]
pub struct FvstReductionInstance {
    pub graph: CubicGraph,
    pub tournament: Tournament,
    pub sparse_ordering: Ordering,
    /// `|E(G)|`: a cover of size `c` corresponds to a solution of size `c + offset`.
    pub offset: usize,
    pub patterns: Vec<Pattern>,
    pub arcs: Vec<TaggedArc>,
}

impl FvstReductionInstance {
    pub fn labels(&self) -> Vec<String> {
        let mut labels = vec![String::new(); self.tournament.n()];
        for (i, p) in self.patterns.iter().enumerate() {
            labels[p.h] = format!("h{i}");
            labels[p.t] = format!("t{i}");
            for (k, &u) in p.u.iter().enumerate() {
                labels[u] = format!("u{i}^{}", p.neighbours[k]);
            }
            for (k, &x) in p.x.iter().enumerate() {
                labels[x] = format!("x{i}^{}", k + 1);
            }
        }
        labels
    }

    fn edge_arc(&self, i: usize, j: usize) -> (usize, usize) {
        let tail = self.patterns[j].u_towards(i).expect("edge");
        let head = self.patterns[i].u_towards(j).expect("edge");
        (tail, head)
    }

    /// Whether every vertex strictly between the endpoints of `(tail, head)`
    /// in the construction ordering lies in `x`.
    pub fn is_saturated(&self, tail: usize, head: usize, x: &VertexSet) -> bool {
        let (lo, hi) = (
            self.sparse_ordering.pos(head),
            self.sparse_ordering.pos(tail),
        );
        self.sparse_ordering.perm()[lo + 1..hi]
            .iter()
            .all(|&v| x.contains(v))
    }
}

pub fn cubic_to_fvst(g: &CubicGraph) -> Result<FvstReductionInstance> {
    let g = CubicGraph::new(g.n, &g.edges)?;
    let patterns: Vec<Pattern> = (0..g.n)
        .map(|i| {
            let nb = g.neighbours(i);
            let base = 8 * i;
            Pattern {
                h: base,
                u: [base + 1, base + 2, base + 3],
                neighbours: [nb[0], nb[1], nb[2]],
                t: base + 4,
                x: [base + 5, base + 6, base + 7],
            }
        })
        .collect();
    let mut arcs: Vec<TaggedArc> = patterns
        .iter()
        .enumerate()
        .map(|(i, p)| TaggedArc {
            tail: p.t,
            head: p.h,
            tag: ArcTag::VertexBackward { vertex: i },
        })
        .collect();
    for &(i, j) in &g.edges {
        arcs.push(TaggedArc {
            tail: patterns[j].u_towards(i).expect("adjacent"),
            head: patterns[i].u_towards(j).expect("adjacent"),
            tag: ArcTag::EdgeBackward { edge: (i, j) },
        });
    }
    let n = 8 * g.n;
    let mut backward = vec![None; n];
    for a in &arcs {
        backward[a.head] = Some(a.tail);
    }
    let tournament = Tournament::from_fn(n, |u, v| backward[u] != Some(v))?;
    let sparse_ordering = Ordering::identity(n);
    let profile = tournament.backward_profile(&sparse_ordering)?;
    assert_eq!(profile.width, 1, "construction ordering must be sparse");
    assert_eq!(profile.total_backward, arcs.len());
    Ok(FvstReductionInstance {
        offset: g.edges.len(),
        graph: g,
        tournament,
        sparse_ordering,
        patterns,
        arcs,
    })
}

fn deletion_is_acyclic(t: &Tournament, x: &VertexSet) -> bool {
    let rest: Vec<usize> = (0..t.n()).filter(|&v| !x.contains(v)).collect();
    rest.is_empty() || t.induced(&rest).expect("in range").tournament.is_acyclic()
}

pub fn is_feedback_vertex_set(t: &Tournament, x: &[usize]) -> bool {
    deletion_is_acyclic(
        t,
        &VertexSet::from_iter_with_capacity(t.n(), x.iter().copied()),
    )
}

/// Feedback vertex set of size `|S| + |E|` built from the vertex cover `S`.
pub fn vc_to_fvst_solution(inst: &FvstReductionInstance, cover: &[usize]) -> Result<Vec<usize>> {
    let g = &inst.graph;
    if let Some(&v) = cover.iter().find(|&&v| v >= g.n) {
        return Err(Error::VertexOutOfRange { vertex: v, n: g.n });
    }
    g.is_vertex_cover(cover)?;
    let s = VertexSet::from_iter_with_capacity(g.n, cover.iter().copied());
    let mut x = VertexSet::new(inst.tournament.n());
    for (i, p) in inst.patterns.iter().enumerate() {
        if s.contains(i) {
            x.insert(p.h);
        } else {
            for u in p.u {
                x.insert(u);
            }
        }
    }
    for &(i, j) in &g.edges {
        if s.contains(i) && s.contains(j) {
            x.insert(inst.edge_arc(i, j).0);
        }
    }
    assert_eq!(x.len(), s.len() + inst.offset);
    assert!(
        deletion_is_acyclic(&inst.tournament, &x),
        "built set leaves a cycle"
    );
    Ok(x.to_vec())
}

/// Rewrites a feedback vertex set without growing it so that every edge
/// backward arc has exactly one endpoint in the set and every member is an
/// endpoint of some backward arc.
pub fn normalize_fvst_solution(inst: &FvstReductionInstance, x: &[usize]) -> Result<Vec<usize>> {
    let t = &inst.tournament;
    if let Some(&v) = x.iter().find(|&&v| v >= t.n()) {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            n: t.n(),
        });
    }
    let mut set = VertexSet::from_iter_with_capacity(t.n(), x.iter().copied());
    let original = set.len();
    if !deletion_is_acyclic(t, &set) {
        return Err(Error::NotFeedbackVertexSet);
    }
    let mut edges: Vec<(usize, usize)> = inst.graph.edges.clone();
    // leftmost by head position
    edges.sort_by_key(|&(i, j)| inst.sparse_ordering.pos(inst.edge_arc(i, j).1));

    while let Some(&(i, j)) = edges.iter().find(|&&(i, j)| {
        let (tail, head) = inst.edge_arc(i, j);
        !set.contains(tail) && !set.contains(head)
    }) {
        let (tail, head) = inst.edge_arc(i, j);
        assert!(
            inst.is_saturated(tail, head, &set),
            "unhit backward arc must be saturated"
        );
        let p = &inst.patterns[i];
        for u in p.u {
            set.insert(u);
        }
        for x in p.x {
            set.remove(x);
        }
    }
    for &(i, j) in &edges {
        let (tail, head) = inst.edge_arc(i, j);
        if set.contains(tail) && set.contains(head) {
            set.remove(head);
            set.insert(inst.patterns[i].h);
        }
    }
    let mut incident = VertexSet::new(t.n());
    for a in &inst.arcs {
        incident.insert(a.tail);
        incident.insert(a.head);
    }
    set.intersect_with(&incident);

    assert!(set.len() <= original);
    assert!(
        deletion_is_acyclic(t, &set),
        "normalization broke the solution"
    );
    Ok(set.to_vec())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverRecovery {
    pub normalized: Vec<usize>,
    pub cover: Vec<usize>,
}

/// Vertex cover of size at most `|X| − |E|` read off the feedback vertex set `X`.
pub fn fvst_solution_to_vc(inst: &FvstReductionInstance, x: &[usize]) -> Result<CoverRecovery> {
    let normalized = normalize_fvst_solution(inst, x)?;
    let set = VertexSet::from_iter_with_capacity(inst.tournament.n(), normalized.iter().copied());
    let cover: Vec<usize> = inst
        .patterns
        .iter()
        .enumerate()
        .filter(|(_, p)| !inst.is_saturated(p.t, p.h, &set))
        .map(|(i, _)| i)
        .collect();
    inst.graph
        .is_vertex_cover(&cover)
        .expect("unsaturated vertex arcs cover every edge");
    assert!(cover.len() + inst.offset <= normalized.len());
    Ok(CoverRecovery { normalized, cover })
}
