//! The Lenard–Magri recursion `{∫h_n, u}₀ = {∫h_{n+1}, u}∞`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::diffpoly::{DiffPoly, Gen, Monomial};
use super::functional::{antiderivative, generator_flow, reconstruct_density, LocalFunctional};
use super::table::GenBracketTable;
use crate::error::{Error, Result};
use crate::linalg::RatMatrix;
use crate::rational::{rat, Rational};
use num_traits::Zero;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LenardOptions {
    /// Derivative order bound of the linear ansatz is `order(ρ) + extra`.
    pub ansatz_order_extra: u32,
    /// Ansatz size above which a step is reported as unsolvable.
    pub max_unknowns: usize,
}

impl Default for LenardOptions {
    fn default() -> Self {
        LenardOptions { ansatz_order_extra: 3, max_unknowns: 4000 }
    }
}

/// Functionals produced before the recursion stopped, and why it stopped
/// early (if it did).
#[derive(Clone, Debug)]
pub struct LenardRun {
    pub functionals: Vec<LocalFunctional>,
    pub failure: Option<Error>,
}

/// `steps` functionals starting from the seed `h₀`.
pub fn lenard_run(t0: &GenBracketTable, tinf: &GenBracketTable, seed: &LocalFunctional, steps: usize) -> LenardRun {
    lenard_run_with(t0, tinf, seed, steps, LenardOptions::default())
}

pub fn lenard_run_with(
    t0: &GenBracketTable,
    tinf: &GenBracketTable,
    seed: &LocalFunctional,
    steps: usize,
    opts: LenardOptions,
) -> LenardRun {
    let mut functionals = Vec::new();
    if steps == 0 {
        return LenardRun { functionals, failure: None };
    }
    if t0.nvars() != tinf.nvars() {
        let failure = Some(Error::VariableMismatch("the two tables have different generators".into()));
        return LenardRun { functionals, failure };
    }
    functionals.push(seed.clone());
    for step in 1..steps {
        let prev = functionals.last().expect("seed present");
        match lenard_step(t0, tinf, prev, opts) {
            Ok(h) => functionals.push(h),
            Err(e) => {
                let failure = Some(match e {
                    Error::NotSolvable { reason, .. } => Error::NotSolvable { step, reason },
                    other => other,
                });
                return LenardRun { functionals, failure };
            }
        }
    }
    LenardRun { functionals, failure: None }
}

/// The next functional: solves `H∞(∂)ξ = H₀(∂)δh/δu` and integrates `ξ`.
pub fn lenard_step(
    t0: &GenBracketTable,
    tinf: &GenBracketTable,
    h: &LocalFunctional,
    opts: LenardOptions,
) -> Result<LocalFunctional> {
    let rho = generator_flow(h, t0);
    let xi = solve_for_gradient(tinf, &rho, opts)?;
    Ok(LocalFunctional::new(reconstruct_density(&xi)?))
}

/// `ξ` with `Σ_i {u_i ∂ u_j}∞→ ξ_i = ρ_j`.
fn solve_for_gradient(tinf: &GenBracketTable, rho: &[DiffPoly], opts: LenardOptions) -> Result<Vec<DiffPoly>> {
    if tinf.nvars() == 1 {
        let e = tinf.get(0, 0);
        if e.degree() == Some(1) && e.coeff(0).is_zero() {
            if let Some(a) = e.coeff(1).as_rational().filter(|a| !a.is_zero()) {
                return Ok(vec![antiderivative(&rho[0])?.scale(&(rat(1) / a))]);
            }
        }
    }
    solve_by_ansatz(tinf, rho, opts)
}

/// All monomials in `u_i^(n)` (`n ≤ max_order`) of degree `≤ max_deg`,
/// times parameter monomials from `params`.
fn ansatz_monomials(nvars: usize, max_order: u32, max_deg: u32, params: &BTreeSet<Monomial>) -> Vec<Monomial> {
    let gens: Vec<Gen> = (0..nvars).flat_map(|i| (0..=max_order).map(move |n| Gen::var(i, n))).collect();
    let mut out = vec![Monomial::one()];
    let mut layer = vec![(Monomial::one(), 0usize)];
    for _ in 0..max_deg {
        let mut next = Vec::new();
        for (m, start) in &layer {
            for (k, g) in gens.iter().enumerate().skip(*start) {
                next.push((m.mul(&Monomial::gen(*g)), k));
            }
        }
        out.extend(next.iter().map(|(m, _)| m.clone()));
        layer = next;
    }
    out.iter().flat_map(|m| params.iter().map(move |p| m.mul(p))).collect()
}

fn solve_by_ansatz(tinf: &GenBracketTable, rho: &[DiffPoly], opts: LenardOptions) -> Result<Vec<DiffPoly>> {
    let n = tinf.nvars();
    let fail = |why: String| Error::NotSolvable { step: 0, reason: why };
    let order = rho.iter().filter_map(DiffPoly::order).max().unwrap_or(0);
    let deg = rho.iter().map(DiffPoly::max_u_degree).max().unwrap_or(0);
    let mut params: BTreeSet<Monomial> = BTreeSet::new();
    params.insert(Monomial::one());
    for r in rho {
        for (m, _) in r.terms() {
            params.insert(Monomial::from_factors(m.factors().iter().copied().filter(|(g, _)| g.is_param())));
        }
    }
    let monos = ansatz_monomials(n, order + opts.ansatz_order_extra, deg, &params);
    let unknowns: Vec<(usize, Monomial)> = (0..n).flat_map(|i| monos.iter().map(move |m| (i, m.clone()))).collect();
    if unknowns.len() > opts.max_unknowns {
        return Err(fail(format!("ansatz with {} unknowns exceeds the limit", unknowns.len())));
    }
    // image of every unknown under H∞(∂)
    let images: Vec<Vec<DiffPoly>> = unknowns
        .iter()
        .map(|(i, m)| {
            let x = DiffPoly::term(rat(1), m.clone());
            (0..n).map(|j| tinf.get(*i, j).apply_operator(&x)).collect()
        })
        .collect();
    let mut rows_index: Vec<(usize, Monomial)> = Vec::new();
    for (j, r) in rho.iter().enumerate() {
        rows_index.extend(r.terms().map(|(m, _)| (j, m.clone())));
    }
    for img in &images {
        for (j, p) in img.iter().enumerate() {
            rows_index.extend(p.terms().map(|(m, _)| (j, m.clone())));
        }
    }
    rows_index.sort();
    rows_index.dedup();
    let pos = |j: usize, m: &Monomial| rows_index.binary_search_by(|(a, b)| (a, b).cmp(&(&j, m))).expect("indexed");
    let mut cols = vec![vec![Rational::zero(); rows_index.len()]; unknowns.len()];
    for (c, img) in images.iter().enumerate() {
        for (j, p) in img.iter().enumerate() {
            for (m, v) in p.terms() {
                cols[c][pos(j, m)] = v.clone();
            }
        }
    }
    let mut rhs = vec![Rational::zero(); rows_index.len()];
    for (j, r) in rho.iter().enumerate() {
        for (m, v) in r.terms() {
            rhs[pos(j, m)] = v.clone();
        }
    }
    let a = RatMatrix::from_columns(rows_index.len(), &cols);
    let sol = a.solve_linear(&rhs)?.ok_or_else(|| fail("no solution within the ansatz".into()))?;
    let mut xi = vec![DiffPoly::zero(); n];
    for ((i, m), v) in unknowns.iter().zip(sol) {
        xi[*i].add_term(m.clone(), v);
    }
    Ok(xi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pva::{functional_eq, VarSet};

    fn p(s: &str) -> DiffPoly {
        DiffPoly::parse(s, &VarSet::named(["u"])).unwrap()
    }

    #[test]
    fn kdv_second_functional() {
        let run = lenard_run(
            &GenBracketTable::virasoro(),
            &GenBracketTable::derivation(),
            &LocalFunctional::new(p("1/2*u^2")),
            2,
        );
        assert!(run.failure.is_none());
        assert_eq!(run.functionals.len(), 2);
        assert!(functional_eq(&run.functionals[1], &LocalFunctional::new(p("1/2*u^3 + 1/2*c*u*u[2]"))));
    }

    #[test]
    fn ansatz_agrees_with_antiderivative() {
        let t0 = GenBracketTable::virasoro();
        let tinf = GenBracketTable::derivation();
        let h = LocalFunctional::new(p("1/2*u^2"));
        let direct = lenard_step(&t0, &tinf, &h, LenardOptions::default()).unwrap();
        let rho = generator_flow(&h, &t0);
        let xi = solve_by_ansatz(&tinf, &rho, LenardOptions::default()).unwrap();
        let via_ansatz = LocalFunctional::new(reconstruct_density(&xi).unwrap());
        assert!(functional_eq(&direct, &via_ansatz));
    }

    #[test]
    fn unsolvable_step_is_reported() {
        // H∞ = 0 admits no solution for a nonzero flow
        let tinf = GenBracketTable::new(VarSet::named(["u"]));
        let run = lenard_run(&GenBracketTable::virasoro(), &tinf, &LocalFunctional::new(p("1/2*u^2")), 3);
        assert_eq!(run.functionals.len(), 1);
        assert!(matches!(run.failure, Some(Error::NotSolvable { step: 1, .. })));
    }
}
