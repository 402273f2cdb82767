//! Constructors for the tournament families used throughout the crate.
//!
//! Random tournaments use xoshiro256** seeded through SplitMix64
//! (`rand_xoshiro::Xoshiro256StarStar::seed_from_u64`). Pairs `i < j` are
//! visited in lexicographic order and each consumes one `next_u64()`; the top
//! bit set means `i -> j`. This fixes the stream across platforms.

use std::collections::HashSet;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tournament::{Ordering, Tournament};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorSpec {
    /// Arc `(i, j)` iff `i < j`.
    Acyclic {
        n: usize,
    },
    /// Order `2k + 1`; vertex `i` beats `i+1, ..., i+k` modulo the order.
    Rotational {
        k: usize,
    },
    /// `U_n` with id `i` standing for `v_{i+1}`.
    U {
        n: usize,
    },
    Random {
        n: usize,
        seed: u64,
    },
}

#[derive(Debug, Clone)]
pub struct Generated {
    pub tournament: Tournament,
    /// Display name per vertex id.
    pub labels: Vec<String>,
    /// The family's reference ordering, when it has one: topological for
    /// acyclic, `⟨0, 1, ..., 2k⟩` (width `k`) for rotational.
    pub natural: Option<Ordering>,
}

pub fn generate(spec: GeneratorSpec) -> Result<Generated> {
    let plain = |n: usize| (0..n).map(|i| i.to_string()).collect::<Vec<_>>();
    Ok(match spec {
        GeneratorSpec::Acyclic { n } => Generated {
            tournament: acyclic(n)?,
            labels: plain(n),
            natural: Some(Ordering::identity(n)),
        },
        GeneratorSpec::Rotational { k } => {
            let t = rotational(k)?;
            let n = t.n();
            Generated {
                tournament: t,
                labels: plain(n),
                natural: Some(Ordering::identity(n)),
            }
        }
        GeneratorSpec::U { n } => Generated {
            tournament: u_tournament(n)?,
            labels: (1..=n).map(|i| format!("v{i}")).collect(),
            natural: None,
        },
        GeneratorSpec::Random { n, seed } => Generated {
            tournament: random(n, seed)?,
            labels: plain(n),
            natural: None,
        },
    })
}

pub fn acyclic(n: usize) -> Result<Tournament> {
    if n == 0 {
        return Err(Error::InvalidGenerator("acyclic needs n >= 1".into()));
    }
    Tournament::from_fn(n, |_, _| true)
}

pub fn rotational(k: usize) -> Result<Tournament> {
    if k == 0 {
        return Err(Error::InvalidGenerator("rotational needs k >= 1".into()));
    }
    let n = 2 * k + 1;
    Tournament::from_fn(n, |u, v| v - u <= k)
}

/// `U_n`: the transitive tournament on `v_1..v_n` with its Hamiltonian path
/// reversed. Vertex id `i` is `v_{i+1}`.
pub fn u_tournament(n: usize) -> Result<Tournament> {
    if n < 2 {
        return Err(Error::InvalidGenerator("U_n needs n >= 2".into()));
    }
    Tournament::from_fn(n, |u, v| v > u + 1)
}

pub fn random(n: usize, seed: u64) -> Result<Tournament> {
    if n == 0 {
        return Err(Error::InvalidGenerator("random needs n >= 1".into()));
    }
    let mut rng = Xoshiro256StarStar::seed_from_u64(seed);
    Tournament::from_fn(n, |_, _| rng.next_u64() >> 63 == 1)
}

/// Concatenates `blocks`; each vertex of an earlier block beats each vertex of
/// a later block, except for the listed overrides `(b, a)` (global ids, `b` in
/// the later block) which become arcs `b -> a`.
pub fn dominate_join(blocks: &[Tournament], overrides: &[(usize, usize)]) -> Result<Tournament> {
    if blocks.is_empty() {
        return Err(Error::EmptyTournament);
    }
    let mut block_of = Vec::new();
    let mut offset = Vec::with_capacity(blocks.len());
    for (i, b) in blocks.iter().enumerate() {
        offset.push(block_of.len());
        block_of.extend(std::iter::repeat_n(i, b.n()));
    }
    let n = block_of.len();
    let mut flipped = HashSet::new();
    for &(b, a) in overrides {
        if a >= n || b >= n || block_of[a] >= block_of[b] || !flipped.insert((a, b)) {
            return Err(Error::InvalidOverride(b, a));
        }
    }
    Tournament::from_fn(n, |u, v| {
        let (bu, bv) = (block_of[u], block_of[v]);
        if bu == bv {
            blocks[bu].has_arc(u - offset[bu], v - offset[bu])
        } else {
            !flipped.contains(&(u, v))
        }
    })
}
