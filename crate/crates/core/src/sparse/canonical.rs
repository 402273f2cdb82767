//! The named sparse orderings of `U_n`.
//!
//! Orderings are over `U_n`'s ids, where id `i` stands for `v_{i+1}`. With
//! `P(k) = ⟨v_{k+1}, v_k⟩`:
//!
//! | kind        | n    | sequence                          | free vertices |
//! |-------------|------|-----------------------------------|---------------|
//! | `Pi`        | even | `v_1, P(2), P(4), …, P(n−2), v_n` | none          |
//! | `Pi1n`      | even | `P(1), P(3), …, P(n−1)`           | `v_1, v_n`    |
//! | `Pi1`       | odd  | `P(1), P(3), …, P(n−2), v_n`      | `v_1`         |
//! | `PiN`       | odd  | `v_1, P(2), P(4), …, P(n−1)`      | `v_n`         |
//! | `Pi2OfU3`   | 3    | `v_3, v_2, v_1`                   | `v_2`         |
//! | `PiPrimeOfU4` | 4  | `v_2, v_4, v_1, v_3`              | none          |

use serde::Serialize;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::tournament::Ordering;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CanonicalKind {
    Pi,
    Pi1n,
    Pi1,
    PiN,
    Pi2OfU3,
    PiPrimeOfU4,
}

impl CanonicalKind {
    pub const ALL: [CanonicalKind; 6] = [
        CanonicalKind::Pi,
        CanonicalKind::Pi1n,
        CanonicalKind::Pi1,
        CanonicalKind::PiN,
        CanonicalKind::Pi2OfU3,
        CanonicalKind::PiPrimeOfU4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CanonicalKind::Pi => "Pi",
            CanonicalKind::Pi1n => "Pi_1_n",
            CanonicalKind::Pi1 => "Pi_1",
            CanonicalKind::PiN => "Pi_n",
            CanonicalKind::Pi2OfU3 => "Pi_2_of_U3",
            CanonicalKind::PiPrimeOfU4 => "PiPrime_of_U4",
        }
    }

    pub fn fits(self, n: usize) -> bool {
        match self {
            CanonicalKind::Pi | CanonicalKind::Pi1n => n >= 2 && n.is_multiple_of(2),
            CanonicalKind::Pi1 | CanonicalKind::PiN => n >= 3 && n % 2 == 1,
            CanonicalKind::Pi2OfU3 => n == 3,
            CanonicalKind::PiPrimeOfU4 => n == 4,
        }
    }

    /// Ids of `U_n` with no incident backward arc under this ordering.
    pub fn free_vertices(self, n: usize) -> Vec<usize> {
        match self {
            CanonicalKind::Pi | CanonicalKind::PiPrimeOfU4 => vec![],
            CanonicalKind::Pi1n => vec![0, n - 1],
            CanonicalKind::Pi1 => vec![0],
            CanonicalKind::PiN => vec![n - 1],
            CanonicalKind::Pi2OfU3 => vec![1],
        }
    }
}

/// `P(k)` as ids.
fn pair(k: usize) -> [usize; 2] {
    [k, k - 1]
}

pub fn canonical_u_ordering(kind: CanonicalKind, n: usize) -> Result<Ordering> {
    if !kind.fits(n) {
        return Err(Error::CanonicalParity(kind.name(), n));
    }
    let mut seq = Vec::with_capacity(n);
    match kind {
        CanonicalKind::Pi => {
            seq.push(0);
            (2..n - 1).step_by(2).for_each(|k| seq.extend(pair(k)));
            seq.push(n - 1);
        }
        CanonicalKind::Pi1n => (1..n).step_by(2).for_each(|k| seq.extend(pair(k))),
        CanonicalKind::Pi1 => {
            (1..n - 1).step_by(2).for_each(|k| seq.extend(pair(k)));
            seq.push(n - 1);
        }
        CanonicalKind::PiN => {
            seq.push(0);
            (2..n).step_by(2).for_each(|k| seq.extend(pair(k)));
        }
        CanonicalKind::Pi2OfU3 => seq.extend([2, 1, 0]),
        CanonicalKind::PiPrimeOfU4 => seq.extend([1, 3, 0, 2]),
    }
    Ordering::new(seq)
}

/// Whether `U_k` has a sparse ordering leaving every member of `m` (chain
/// indices, `0` = `v_1`) free of backward arcs.
pub fn is_uk_m_sparse(k: usize, m: &VertexSet) -> bool {
    let ends_only = m.iter().all(|i| i == 0 || i + 1 == k);
    match k {
        0..=2 => true,
        3 => m.len() <= 1,
        _ if k.is_multiple_of(2) => ends_only,
        _ => ends_only && !(m.contains(0) && m.contains(k - 1)),
    }
}

/// The canonical ordering used for a `U_k` block whose free set must contain
/// `m`; `None` exactly when [`is_uk_m_sparse`] is false. Endpoint-freeing
/// kinds are preferred, then `Pi`/`PiN`, then the two specials.
pub fn choose_canonical(k: usize, m: &VertexSet) -> Option<CanonicalKind> {
    if !is_uk_m_sparse(k, m) || k < 2 {
        return None;
    }
    let preference: &[CanonicalKind] = if k.is_multiple_of(2) {
        &[
            CanonicalKind::Pi1n,
            CanonicalKind::Pi,
            CanonicalKind::PiPrimeOfU4,
        ]
    } else {
        &[
            CanonicalKind::Pi1,
            CanonicalKind::PiN,
            CanonicalKind::Pi2OfU3,
        ]
    };
    preference.iter().copied().find(|kind| {
        kind.fits(k) && {
            let free = kind.free_vertices(k);
            m.iter().all(|i| free.contains(&i))
        }
    })
}
