//! Local functionals `∫f ∈ V/∂V`, variational derivatives and Hamiltonian
//! flows.

use super::diffpoly::{DiffPoly, Gen, Monomial};
use super::table::{lambda_bracket, GenBracketTable};
use crate::error::{Error, Result};
use crate::rational::rat;

/// `∫f`, stored through a representative density.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocalFunctional {
    density: DiffPoly,
}

impl LocalFunctional {
    pub fn new(density: DiffPoly) -> Self {
        LocalFunctional { density }
    }

    pub fn density(&self) -> &DiffPoly {
        &self.density
    }

    pub fn scale(&self, s: &crate::rational::Rational) -> Self {
        LocalFunctional::new(self.density.scale(s))
    }

    pub fn add(&self, o: &LocalFunctional) -> Self {
        LocalFunctional::new(&self.density + &o.density)
    }

    pub fn sub(&self, o: &LocalFunctional) -> Self {
        LocalFunctional::new(&self.density - &o.density)
    }

    /// Vanishes in `V/∂V`.
    pub fn is_zero(&self) -> bool {
        functional_is_zero(&self.density)
    }

    pub fn gradient(&self, nvars: usize) -> Vec<DiffPoly> {
        (0..nvars).map(|i| variational_derivative(&self.density, i)).collect()
    }
}

impl From<DiffPoly> for LocalFunctional {
    fn from(p: DiffPoly) -> Self {
        LocalFunctional::new(p)
    }
}

/// `δ∫f/δu_i = Σ_n (−∂)^n ∂f/∂u_i^(n)`.
pub fn variational_derivative(f: &DiffPoly, i: usize) -> DiffPoly {
    let Some(top) = f.max_order_of(i) else {
        return DiffPoly::zero();
    };
    // Horner in −∂: p_top, then p_{n} − ∂(acc)
    let mut acc = DiffPoly::zero();
    for n in (0..=top).rev() {
        acc = &f.partial_var(i, n) - &acc.d_total();
    }
    acc
}

fn functional_is_zero(f: &DiffPoly) -> bool {
    f.constant_part().is_zero() && f.variables().into_iter().all(|i| variational_derivative(f, i).is_zero())
}

/// Equality in `V/∂V`: every variational derivative of `F − G` vanishes and
/// `F − G` has no constant term.
pub fn functional_eq(a: &LocalFunctional, b: &LocalFunctional) -> bool {
    functional_is_zero(&(&a.density - &b.density))
}

/// `{∫f, ∫g} = ∫{f λ g}|_{λ=0}`.
pub fn functional_bracket(a: &LocalFunctional, b: &LocalFunctional, t: &GenBracketTable) -> Result<LocalFunctional> {
    Ok(LocalFunctional::new(lambda_bracket(&a.density, &b.density, t)?.at_zero()))
}

/// `{∫h, v} = {h λ v}|_{λ=0}`, computed as `Σ ∂v/∂u_j^(n) ∂^n (H(∂) δh/δu)_j`.
pub fn ham_flow(h: &LocalFunctional, v: &DiffPoly, t: &GenBracketTable) -> Result<DiffPoly> {
    let n = t.nvars();
    if h.density.variables().iter().chain(v.variables().iter()).any(|&i| i >= n) {
        return Err(Error::VariableMismatch("density uses a variable outside the table".into()));
    }
    let flow = generator_flow(h, t);
    Ok(evolutionary_derivative(&flow, v))
}

/// The vector field `du_j/dt = Σ_i {u_i ∂ u_j}→ δh/δu_i`.
pub fn generator_flow(h: &LocalFunctional, t: &GenBracketTable) -> Vec<DiffPoly> {
    let n = t.nvars();
    let grad = h.gradient(n);
    (0..n)
        .map(|j| {
            let mut acc = DiffPoly::zero();
            for (i, g) in grad.iter().enumerate() {
                if !g.is_zero() {
                    acc += &t.get(i, j).apply_operator(g);
                }
            }
            acc
        })
        .collect()
}

/// `D_X(p) = Σ ∂p/∂u_j^(n) ∂^n X_j`.
pub fn evolutionary_derivative(x: &[DiffPoly], p: &DiffPoly) -> DiffPoly {
    let mut out = DiffPoly::zero();
    for g in p.generators() {
        let Gen::Var { var, order } = g else { continue };
        let Some(xj) = x.get(var as usize) else {
            continue;
        };
        if xj.is_zero() {
            continue;
        }
        out += &(&p.partial(g) * &xj.d_total_n(order));
    }
    out
}

/// `[D_X, D_Y]` evaluated on the generators: `D_X Y_i − D_Y X_i`.
pub fn flows_commutator(x: &[DiffPoly], y: &[DiffPoly]) -> Vec<DiffPoly> {
    x.iter().zip(y).map(|(xi, yi)| &evolutionary_derivative(x, yi) - &evolutionary_derivative(y, xi)).collect()
}

/// A density `h` with `δ∫h/δu_i = ξ_i`, by the homotopy formula
/// `h = ∫_0^1 Σ u_i ξ_i(tu) dt`; fails if `ξ` is not a variational gradient.
pub fn reconstruct_density(xi: &[DiffPoly]) -> Result<DiffPoly> {
    let mut h = DiffPoly::zero();
    for (i, x) in xi.iter().enumerate() {
        let ui = Monomial::gen(Gen::var(i, 0));
        for (m, c) in x.terms() {
            let mm = m.mul(&ui);
            h.add_term(mm.clone(), c / rat(mm.u_degree() as i64));
        }
    }
    for (i, x) in xi.iter().enumerate() {
        if variational_derivative(&h, i) != *x {
            return Err(Error::NotSolvable { step: 0, reason: format!("component {i} is not a variational gradient") });
        }
    }
    Ok(h)
}

/// Linear independence in `V/∂V`, tested on variational gradients (whose
/// common kernel is the constants) together with constant terms.
pub fn functionals_independent(fs: &[LocalFunctional], nvars: usize) -> bool {
    use std::collections::BTreeMap;
    let mut rows: BTreeMap<(usize, Monomial), usize> = BTreeMap::new();
    let mut cols: Vec<Vec<(usize, crate::rational::Rational)>> = Vec::new();
    for f in fs {
        let mut col = Vec::new();
        for (i, g) in f.gradient(nvars).iter().enumerate() {
            for (m, c) in g.terms() {
                let n = rows.len();
                let r = *rows.entry((i, m.clone())).or_insert(n);
                col.push((r, c.clone()));
            }
        }
        let n = rows.len();
        let r = *rows.entry((nvars, Monomial::one())).or_insert(n);
        col.push((r, f.density().constant_term()));
        cols.push(col);
    }
    let dense: Vec<crate::linalg::Vector> = cols
        .iter()
        .map(|col| {
            let mut v = vec![crate::rational::Rational::from_integer(0.into()); rows.len()];
            for (r, c) in col {
                v[*r] = c.clone();
            }
            v
        })
        .collect();
    crate::linalg::span_basis(rows.len(), &dense).len() == fs.len()
}

/// `Q` with `∂Q = p`, integration constant `0`; fails unless `p ∈ ∂V`.
pub fn antiderivative(p: &DiffPoly) -> Result<DiffPoly> {
    let not_exact = |why: &str| Error::NotSolvable { step: 0, reason: format!("not a total derivative: {why}") };
    let mut rest = p.clone();
    let mut acc = DiffPoly::zero();
    for _ in 0..10_000 {
        if rest.is_zero() {
            return Ok(acc);
        }
        let Some(top) = rest.order() else {
            return Err(not_exact("nonzero constant part"));
        };
        if top == 0 {
            return Err(not_exact("remainder has no derivatives"));
        }
        let var = rest
            .generators()
            .into_iter()
            .find_map(|g| match g {
                Gen::Var { var, order } if order == top => Some(var as usize),
                _ => None,
            })
            .expect("top order occurs");
        let g = Gen::var(var, top);
        let a = rest.partial(g);
        if a.order().is_some_and(|o| o >= top) {
            return Err(not_exact("not linear in the highest derivative"));
        }
        let q = a.integrate_in(Gen::var(var, top - 1));
        rest -= &q.d_total();
        acc += &q;
    }
    Err(not_exact("integration did not terminate"))
}
