//! The `sl2` hierarchy against the KdV Lenard chain `∫u, ∫½u², ∫½(u³ + c uu″), …`
//! of the pencil (Virasoro, derivation bracket).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::hierarchy::HierarchyResult;
use super::verify::{densities, slice_evaluate};
use crate::error::{Error, Result};
use crate::pva::{
    functional_bracket, functional_eq, functionals_independent, lenard_run, variational_derivative, Gen,
    GenBracketTable, LocalFunctional, Monomial, VarSet,
};
use crate::rational::{fmt_rational, rat, Rational};

/// Densities restricted to `u_H1 = 0`, written in the variable `u`, with the
/// scale `μ` and central charge `c*` for which `g_n = μ^n h_n(c*)`.
#[derive(Clone, Debug)]
pub struct KdvComparison {
    pub slices: Vec<LocalFunctional>,
    pub mu: Option<Rational>,
    pub c_star: Option<Rational>,
    pub matches_oracle: bool,
    pub independent: bool,
    pub involutive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KdvComparisonJson {
    pub slices: Vec<String>,
    pub mu: Option<String>,
    pub c_star: Option<String>,
    pub matches_oracle: bool,
    pub independent: bool,
    pub involutive: bool,
}

impl KdvComparison {
    pub fn to_json(&self) -> KdvComparisonJson {
        let u = VarSet::named(["u"]);
        KdvComparisonJson {
            slices: self.slices.iter().map(|f| f.density().to_text(&u)).collect(),
            mu: self.mu.as_ref().map(fmt_rational),
            c_star: self.c_star.as_ref().map(fmt_rational),
            matches_oracle: self.matches_oracle,
            independent: self.independent,
            involutive: self.involutive,
        }
    }
}

fn grad_coeff(f: &LocalFunctional, m: &Monomial) -> Rational {
    variational_derivative(f.density(), 0).coefficient(m)
}

fn commute(fs: &[LocalFunctional], t: &GenBracketTable) -> Result<bool> {
    for (i, a) in fs.iter().enumerate() {
        for b in &fs[i + 1..] {
            if !functional_bracket(a, b, t)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Compares the first `count` densities of an `sl2` run with the Lenard chain.
/// `μ` is fitted on `g₁` and `c*` on the `uu″` term of `g₂`.
pub fn kdv_comparison(r: &HierarchyResult, count: usize) -> Result<KdvComparison> {
    let data = r.data();
    if data.zg.algebra().dim() != 3 || data.vars.index_of("u_E21").is_none() {
        return Err(Error::InvalidParameter("the KdV comparison needs the principal sl2 hierarchy".into()));
    }
    let ds = densities(r, &data.semisimple, count)?;
    let slices: Vec<LocalFunctional> =
        ds.iter().map(|d| slice_evaluate(&d.functional, &data.vars, &["u_E21"]).map(|x| x.0)).collect::<Result<_>>()?;
    let oracle = lenard_run(
        &GenBracketTable::virasoro(),
        &GenBracketTable::derivation(),
        &LocalFunctional::new(crate::pva::DiffPoly::var(0, 0)),
        count,
    );
    if let Some(e) = oracle.failure {
        return Err(e);
    }
    let h = oracle.functionals;
    let u = Monomial::gen(Gen::var(0, 0));
    let u2 = u.mul(&u);
    let u_xx = Monomial::gen(Gen::var(0, 2));
    let zero = rat(0);

    let mu = (count >= 2).then(|| grad_coeff(&slices[1], &u) / grad_coeff(&h[1], &u)).filter(|m| *m != zero);
    let c_star = match (&mu, count >= 3) {
        (Some(mu), true) => {
            let c_coeff = variational_derivative(h[2].density(), 0).partial(Gen::Param(0)).coefficient(&u_xx);
            let r2 = grad_coeff(&slices[2], &u2) / grad_coeff(&h[2], &u2);
            (r2 == mu * mu && c_coeff != zero).then(|| grad_coeff(&slices[2], &u_xx) / (&r2 * &c_coeff))
        }
        _ => None,
    };
    let at_c: BTreeMap<u16, Rational> = c_star.iter().map(|c| (0u16, c.clone())).collect();
    let mut matches_oracle =
        functional_eq(&slices[0], &h[0]) && (count < 2 || mu.is_some()) && (count < 3 || c_star.is_some());
    if matches_oracle {
        let mu = mu.clone().unwrap_or_else(|| rat(1));
        let mut scale = rat(1);
        for (g, hn) in slices.iter().zip(&h).skip(1) {
            scale = &scale * &mu;
            let target = LocalFunctional::new(hn.density().eval_params(&at_c)).scale(&scale);
            matches_oracle &= functional_eq(g, &target);
        }
    }
    let independent = functionals_independent(&slices, 1);
    let involutive = commute(&slices, &GenBracketTable::virasoro().eval_params(&at_c))?
        && commute(&slices, &GenBracketTable::derivation())?;
    Ok(KdvComparison { slices, mu, c_star, matches_oracle, independent, involutive })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ds::solve_recursion;
    use crate::grading::sl_principal_triple;
    use crate::rational::{ratio, HalfInt};

    #[test]
    fn sl2_matches_kdv() {
        let r = solve_recursion(&sl_principal_triple(2).unwrap(), HalfInt::from_int(5)).unwrap();
        let k = kdv_comparison(&r, 3).unwrap();
        assert!(k.matches_oracle && k.independent && k.involutive);
        assert_eq!(k.mu, Some(ratio(-1, 2)));
        assert_eq!(k.c_star, Some(ratio(-1, 2)));
        assert!(kdv_comparison(&r, 4).is_err());
    }
}
