//! pi-maps, monotone and normalizing elements, automorphisms, filtration
//! and graded-shape checks, adjoint action and semi-invariants.

mod automorphism;
mod color;
mod filtration;
mod monotone;

pub use automorphism::{conjugation_automorphism, AutOrder, Automorphism, SkewDerivation};
pub use color::{adjoint_apply, homogeneous_grade, is_semi_invariant, thm25_shape, SemiInvariantReport, Thm25Outcome};
pub use filtration::{filtration_degree, thm23_check, GeneratorShape, ShapeReport, SHAPE_SAMPLES};
pub use monotone::{
    central_factor, extract_monotone, extract_monotone_trace, is_monotone, is_normalizing, normalizing_by_solve,
    pi_map, torus, ExtractStep, MonotoneReport, PiMap,
};
