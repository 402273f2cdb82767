//! Hardness constructions with certificate transformers.

pub mod fvst;
pub mod sat;

pub use fvst::{
    cubic_to_fvst, fvst_solution_to_vc, is_feedback_vertex_set, normalize_fvst_solution,
    vc_to_fvst_solution, ArcTag, CoverRecovery, CubicGraph, FvstReductionInstance, Pattern,
    TaggedArc,
};
pub use sat::{
    assignment_from_nice_ordering, audit_construction, choose_w, nice_ordering_from_assignment,
    normalize_parity, sat_to_degreewidth, Balanced3Sat4, Block, Literal, SatLayout,
    SatReductionInstance,
};
