//! Generalized Drinfeld–Sokolov hierarchies: the gauge normalization
//! `e^{ad U}(∂ + f + zE + q) = ∂ + f + zE + h(z)` solved degree by degree over
//! `V(p) ⊗ g((z⁻¹))`, and the conserved densities `∫(a|h(z))`.

mod hierarchy;
mod kdv;
mod verify;
mod zgraded;

pub use hierarchy::{
    dual_basis, q_element, residual, solve_hk, solve_recursion, split_piece, Density, DsData, HSplit, HierarchyResult,
    SplitPiece,
};
pub use kdv::{kdv_comparison, KdvComparison, KdvComparisonJson};
pub use verify::{
    center_check, densities, densities_agree, flatness_check, flatness_residual, gauge_perturb, random_kernel_element,
    slice_evaluate, DensityJson, FlatnessReport, HierarchyJson, TermJson, VariableJson,
};
pub use zgraded::{ZGradedElement, ZGrading, ZKey};
