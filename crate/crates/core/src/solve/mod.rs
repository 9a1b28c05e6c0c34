//! Inner skew-derivation witnesses and the Ore-extension automorphism
//! tests.

mod derivation;
mod identity;
mod ore;
mod thm32;

pub use derivation::{
    solve_in_view, witness_defect, xinner_derivation_solve, DerivationSolve, InnerWitness, DEFAULT_BOX, MAX_UNKNOWNS,
};
pub use identity::{ore_coefficient, ore_coefficient_formula, weyl_pz_identity, PzIdentity};
pub use ore::{OreView, QSkew};
pub use thm32::{
    case1_in_view, case2_in_view, invariant_polynomial, thm32_case1, thm32_case2, verify_inducing, ClosureCheck,
    Thm32Case, Thm32Report,
};
