//! λ-brackets on generators and their extension to all differential
//! polynomials.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::diffpoly::{DiffPoly, Gen};
use super::lambda::{binomial, LambdaPoly};
use super::VarSet;
use crate::error::{Error, Result};
use crate::liealg::{LieAlgebraSpec, LieElement};
use crate::rational::{rat, Rational};

/// `{u_i λ u_j}` for every ordered pair of generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenBracketTable {
    vars: VarSet,
    entries: Vec<LambdaPoly>,
}

impl GenBracketTable {
    /// All brackets zero.
    pub fn new(vars: VarSet) -> Self {
        let n = vars.len();
        GenBracketTable { vars, entries: vec![LambdaPoly::zero(); n * n] }
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &LambdaPoly {
        &self.entries[i * self.nvars() + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: LambdaPoly) {
        let n = self.nvars();
        self.entries[i * n + j] = p;
    }

    /// Sets `{u_i λ u_j} = p` and `{u_j λ u_i}` to its skew-symmetric partner.
    pub fn set_skew(&mut self, i: usize, j: usize, p: LambdaPoly) {
        let partner = p.skew_partner();
        self.set(i, j, p);
        self.set(j, i, partner);
    }

    pub fn add(&self, o: &GenBracketTable) -> Result<GenBracketTable> {
        if self.vars.len() != o.vars.len() {
            return Err(Error::VariableMismatch("tables have different generator counts".into()));
        }
        Ok(GenBracketTable {
            vars: self.vars.clone(),
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, s: &Rational) -> GenBracketTable {
        GenBracketTable { vars: self.vars.clone(), entries: self.entries.iter().map(|e| e.scale(s)).collect() }
    }

    /// Substitutes numbers for the symbolic constants.
    pub fn eval_params(&self, values: &std::collections::BTreeMap<u16, Rational>) -> GenBracketTable {
        GenBracketTable {
            vars: self.vars.clone(),
            entries: self.entries.iter().map(|e| e.map_coeffs(|p| p.eval_params(values))).collect(),
        }
    }

    /// `T₀ + zT∞` for a numeric `z`.
    pub fn pencil(t0: &GenBracketTable, tinf: &GenBracketTable, z: &Rational) -> Result<GenBracketTable> {
        t0.add(&tinf.scale(z))
    }

    /// One generator `u` with `{u λ u} = (∂ + 2λ)u + cλ³`.
    pub fn virasoro() -> Self {
        let mut t = GenBracketTable::new(VarSet::named(["u"]));
        let u = DiffPoly::var(0, 0);
        t.set(
            0,
            0,
            LambdaPoly::from_coeffs(vec![DiffPoly::var(0, 1), u.scale(&rat(2)), DiffPoly::zero(), DiffPoly::param(0)]),
        );
        t
    }

    /// One generator `u` with `{u λ u} = λ`.
    pub fn derivation() -> Self {
        let mut t = GenBracketTable::new(VarSet::named(["u"]));
        t.set(0, 0, LambdaPoly::monomial(DiffPoly::one(), 1));
        t
    }

    fn check_vars(&self, ps: &[&DiffPoly]) -> Result<()> {
        for p in ps {
            if let Some(&i) = p.variables().iter().next_back() {
                if i >= self.nvars() {
                    return Err(Error::VariableMismatch(format!(
                        "variable index {i} outside a table with {} generators",
                        self.nvars()
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn lambda_bracket(&self, f: &DiffPoly, g: &DiffPoly) -> Result<LambdaPoly> {
        lambda_bracket(f, g, self)
    }

    pub fn check_axioms(&self) -> AxiomReport {
        check_axioms(self)
    }
}

/// Partial derivatives `(i, n, ∂p/∂u_i^(n))` that are nonzero.
fn partials(p: &DiffPoly) -> Vec<(usize, u32, DiffPoly)> {
    p.generators()
        .into_iter()
        .filter_map(|g| match g {
            Gen::Var { var, order } => Some((var as usize, order, p.partial(g))),
            Gen::Param(_) => None,
        })
        .collect()
}

/// The extension of the generator brackets by sesquilinearity and the
/// Leibniz rules:
/// `{f λ g} = Σ ∂g/∂u_j^(n) (λ+∂)^n {u_i λ+∂ u_j}→ (−λ−∂)^m ∂f/∂u_i^(m)`.
pub fn lambda_bracket(f: &DiffPoly, g: &DiffPoly, t: &GenBracketTable) -> Result<LambdaPoly> {
    t.check_vars(&[f, g])?;
    let pf = partials(f);
    let pg = partials(g);
    if pf.is_empty() || pg.is_empty() {
        return Ok(LambdaPoly::zero());
    }
    let mut inner_by_i: BTreeMap<usize, LambdaPoly> = BTreeMap::new();
    for (i, m, d) in &pf {
        let a = LambdaPoly::constant(d.clone()).neg_shift_pow(*m);
        let e = inner_by_i.entry(*i).or_default();
        *e = &*e + &a;
    }
    let mut out = LambdaPoly::zero();
    let js: std::collections::BTreeSet<usize> = pg.iter().map(|(j, _, _)| *j).collect();
    for j in js {
        let mut b = LambdaPoly::zero();
        for (i, a) in &inner_by_i {
            let entry = t.get(*i, j);
            if !entry.is_zero() {
                b = &b + &entry.apply_shifted(a);
            }
        }
        if b.is_zero() {
            continue;
        }
        for (_, n, dg) in pg.iter().filter(|(jj, _, _)| *jj == j) {
            out = &out + &b.shift_pow(*n).mul_diffpoly(dg);
        }
    }
    Ok(out)
}

/// Violations found by [`check_axioms`]; indices refer to generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub skew_violations: Vec<(usize, usize)>,
    pub jacobi_violations: Vec<(usize, usize, usize)>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.skew_violations.is_empty() && self.jacobi_violations.is_empty()
    }
}

/// Polynomial in `λ, μ` keyed by `(deg_λ, deg_μ)`.
type LambdaMu = BTreeMap<(usize, usize), DiffPoly>;

fn lm_add(acc: &mut LambdaMu, key: (usize, usize), p: &DiffPoly) {
    if p.is_zero() {
        return;
    }
    let e = acc.entry(key).or_default();
    *e += p;
    if e.is_zero() {
        acc.remove(&key);
    }
}

/// Whether `{u_i λ {u_j μ u_k}} − {u_j μ {u_i λ u_k}} = {{u_i λ u_j}_{λ+μ} u_k}`.
pub fn jacobi_holds(t: &GenBracketTable, i: usize, j: usize, k: usize) -> bool {
    let ui = DiffPoly::var(i, 0);
    let uj = DiffPoly::var(j, 0);
    let uk = DiffPoly::var(k, 0);
    let mut acc = LambdaMu::new();
    for (b, d) in t.get(j, k).coeffs().iter().enumerate() {
        let x = lambda_bracket(&ui, d, t).expect("table variables");
        for (a, c) in x.coeffs().iter().enumerate() {
            lm_add(&mut acc, (a, b), c);
        }
    }
    for (a, e) in t.get(i, k).coeffs().iter().enumerate() {
        let y = lambda_bracket(&uj, e, t).expect("table variables");
        for (b, c) in y.coeffs().iter().enumerate() {
            lm_add(&mut acc, (a, b), &-c);
        }
    }
    for (a, p) in t.get(i, j).coeffs().iter().enumerate() {
        let w = lambda_bracket(p, &uk, t).expect("table variables");
        for (r, c) in w.coeffs().iter().enumerate() {
            for s in 0..=r {
                let term = c.scale(&binomial(r as u32, s as u32));
                lm_add(&mut acc, (a + s, r - s), &-&term);
            }
        }
    }
    acc.is_empty()
}

pub fn skew_holds(t: &GenBracketTable, i: usize, j: usize) -> bool {
    *t.get(i, j) == t.get(j, i).skew_partner()
}

/// Skew-symmetry on all generator pairs and the Jacobi identity on all
/// ordered generator triples, exactly.
pub fn check_axioms(t: &GenBracketTable) -> AxiomReport {
    let n = t.nvars();
    let mut report = AxiomReport::default();
    for i in 0..n {
        for j in i..n {
            if !skew_holds(t, i, j) {
                report.skew_violations.push((i, j));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if !jacobi_holds(t, i, j, k) {
                    report.jacobi_violations.push((i, j, k));
                }
            }
        }
    }
    report
}

/// The affine pencil on `V(g)`: variables are the basis of `alg`,
/// `T₀: {a λ b} = [a, b] + (a|b)λ` and `T∞: {a λ b} = (E|[a, b])`.
pub fn affine_bracket(alg: &LieAlgebraSpec, e: &LieElement) -> Result<(GenBracketTable, GenBracketTable)> {
    if e.coords().len() != alg.dim() {
        return Err(Error::Dimension("E does not belong to the algebra".into()));
    }
    let vars = VarSet::named(alg.labels().iter().map(|l| sanitize_label(l)));
    let n = alg.dim();
    let mut t0 = GenBracketTable::new(vars.clone());
    let mut tinf = GenBracketTable::new(vars);
    for a in 0..n {
        for b in 0..n {
            let mut lin = DiffPoly::zero();
            let mut br = vec![Rational::zero(); n];
            for (k, c) in alg.basis_bracket(a, b) {
                lin += &DiffPoly::var(*k, 0).scale(c);
                br[*k] = c.clone();
            }
            let form = alg.gram()[(a, b)].clone();
            t0.set(a, b, LambdaPoly::from_coeffs(vec![lin, DiffPoly::constant(form)]));
            let einf = alg.form_vec(e.coords(), &br);
            tinf.set(a, b, LambdaPoly::constant(DiffPoly::constant(einf)));
        }
    }
    Ok((t0, tinf))
}

/// Turns a basis label into a variable name accepted by the text syntax.
pub fn sanitize_label(l: &str) -> String {
    let mut s: String = l.chars().map(|c| if c.is_ascii_alphanumeric() || c == '_' { c } else { '_' }).collect();
    if s.is_empty() || s.starts_with(|c: char| c.is_ascii_digit()) || super::syntax::is_reserved(&s) {
        s.insert(0, 'x');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(n: u32) -> DiffPoly {
        DiffPoly::var(0, n)
    }

    #[test]
    fn virasoro_on_generators_is_verbatim() {
        let t = GenBracketTable::virasoro();
        assert_eq!(lambda_bracket(&u(0), &u(0), &t).unwrap(), *t.get(0, 0));
    }

    #[test]
    fn bracket_with_constants_vanishes() {
        let t = GenBracketTable::virasoro();
        let g = &u(0) * &u(2);
        assert!(lambda_bracket(&DiffPoly::one(), &g, &t).unwrap().is_zero());
        assert!(lambda_bracket(&g, &DiffPoly::param(0), &t).unwrap().is_zero());
    }

    #[test]
    fn virasoro_passes_axioms() {
        assert!(check_axioms(&GenBracketTable::virasoro()).passed());
        assert!(check_axioms(&GenBracketTable::derivation()).passed());
    }

    #[test]
    fn injected_skew_violation() {
        let mut t = GenBracketTable::new(VarSet::named(["u"]));
        t.set(0, 0, LambdaPoly::constant(u(0)));
        let r = check_axioms(&t);
        assert_eq!(r.skew_violations, vec![(0, 0)]);
    }

    #[test]
    fn variable_mismatch() {
        let t = GenBracketTable::virasoro();
        assert!(matches!(lambda_bracket(&u(0), &DiffPoly::var(1, 0), &t), Err(Error::VariableMismatch(_))));
    }
}

#[cfg(test)]
mod affine_tests {
    use super::*;
    use crate::liealg::build_sl;
    use std::sync::Arc;

    #[test]
    fn sl2_affine_entries() {
        let g = Arc::new(build_sl(2).unwrap());
        let e = LieElement::by_label(&g, "E12").unwrap();
        let (t0, tinf) = affine_bracket(&g, &e).unwrap();
        let (ie, ih, i_f) = (0, 1, 2);
        assert!(t0.get(i_f, i_f).is_zero());
        let h = DiffPoly::var(ih, 0);
        assert_eq!(*t0.get(ie, i_f), LambdaPoly::from_coeffs(vec![h, DiffPoly::one()]));
        assert!(tinf.get(ie, i_f).is_zero());
        assert_eq!(*tinf.get(ih, i_f), LambdaPoly::constant(DiffPoly::constant(rat(-2))));
        assert!(check_axioms(&t0).passed());
        assert!(check_axioms(&tinf).passed());
        assert!(check_axioms(&t0.add(&tinf).unwrap()).passed());
        let (_, zero) = affine_bracket(&g, &LieElement::zero(&g)).unwrap();
        assert!(zero.entries.iter().all(LambdaPoly::is_zero));
    }

    #[test]
    fn injected_jacobi_violation() {
        // sl2 with [h, e] replaced by 3e
        let g = Arc::new(build_sl(2).unwrap());
        let (mut t0, _) = affine_bracket(&g, &LieElement::zero(&g)).unwrap();
        let (ie, ih) = (0, 1);
        t0.set_skew(ih, ie, LambdaPoly::constant(DiffPoly::var(ie, 0).scale(&rat(3))));
        let r = check_axioms(&t0);
        assert!(r.skew_violations.is_empty());
        assert!(!r.jacobi_violations.is_empty());
    }
}
