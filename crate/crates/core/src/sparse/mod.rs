//! Sparse tournaments: degreewidth at most one.

pub mod canonical;
pub mod fast;
pub mod recognition;

pub use canonical::{canonical_u_ordering, choose_canonical, is_uk_m_sparse, CanonicalKind};
pub use fast::{
    eliminate_forbidden_patterns, fast_sparse, find_forbidden_pattern, ForbiddenPattern,
    PatternKind, SparseFas,
};
pub use recognition::{
    get_u_subtournament, is_m_sparse, sparse_certificate, BlockClosure, ChainClosure,
    DecompositionBlock, SparseCertificate, UChain,
};
