//! Poisson vertex algebras of differential polynomials: λ-brackets from
//! generator tables, local functionals, Poisson structures and the
//! Lenard–Magri scheme.

mod diffpoly;
mod functional;
mod lambda;
mod lenard;
mod operator;
mod syntax;
mod table;

pub use diffpoly::{random_diffpoly, DiffPoly, Gen, Monomial, RandomShape};
pub use functional::{
    antiderivative, evolutionary_derivative, flows_commutator, functional_bracket, functional_eq,
    functionals_independent, generator_flow, ham_flow, reconstruct_density, variational_derivative, LocalFunctional,
};
pub use lambda::LambdaPoly;
pub use lenard::{lenard_run, lenard_run_with, lenard_step, LenardOptions, LenardRun};
pub use operator::{poisson_structure_matrix, MatrixDiffOperator};
pub use syntax::VarSet;
pub use table::{
    affine_bracket, check_axioms, jacobi_holds, lambda_bracket, sanitize_label, skew_holds, AxiomReport,
    GenBracketTable,
};

pub fn d_total(f: &DiffPoly) -> DiffPoly {
    f.d_total()
}
