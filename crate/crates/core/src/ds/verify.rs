//! Densities `∫(a|h(z))`, membership of `a` in the centre, flatness of the
//! Lax operator, gauge freedom and slices.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::hierarchy::{residual, split_piece, Density, DsData, HierarchyResult};
use super::zgraded::{ZGradedElement, ZGrading};
use crate::error::{Error, Result};
use crate::pva::{functional_eq, random_diffpoly, DiffPoly, LocalFunctional, RandomShape, VarSet};
use crate::rational::{fmt_rational, rat, HalfInt, Rational};

/// For a constant `a`: the map `z`-power ↦ `(a|h)` coefficient, and the
/// smallest power whose coefficient is fully determined by `h` through the
/// window.
fn pairing_window(r: &HierarchyResult, a: &ZGradedElement) -> (BTreeMap<i64, DiffPoly>, Option<i64>) {
    let zg = &r.data.zg;
    let degs = zg.degrees(a);
    let zd = zg.z_degree().twice();
    // (a_δ | h_i) lands on z^p with p·zd = δ + i; complete iff i ≤ max for all δ
    let p_min = degs
        .iter()
        .map(|d| {
            let t = (*d + r.max_degree).twice();
            // smallest p with p·zd ≤ δ + max: ⌈t/zd⌉ = −⌊t/|zd|⌋ as zd < 0
            -t.div_euclid(-zd)
        })
        .max();
    (zg.pairing(a, &r.h), p_min)
}

/// `∫g_{a,n}` for `n = 0..count`, starting at the largest nonzero power.
pub fn densities(r: &HierarchyResult, a: &ZGradedElement, count: usize) -> Result<Vec<Density>> {
    if !a.is_constant() {
        return Err(Error::InvalidParameter("a must have numeric coefficients".into()));
    }
    let lo = -r.max_degree.max(HalfInt::ONE);
    if !center_check(&r.data, a, lo, r.max_degree)? {
        return Err(Error::NotCentral(format!("a fails the centre check on degrees {lo}..{}", r.max_degree)));
    }
    let all = available_densities(r, a)?;
    if all.len() < count {
        return Err(Error::WindowTooSmall(format!(
            "{count} densities requested but max_degree {} determines only {}",
            r.max_degree,
            all.len()
        )));
    }
    Ok(all.into_iter().take(count).collect())
}

/// All densities of `a` the window determines.
pub(crate) fn available_densities(r: &HierarchyResult, a: &ZGradedElement) -> Result<Vec<Density>> {
    let (pair, p_min) = pairing_window(r, a);
    let Some(p_min) = p_min else {
        return Ok(Vec::new());
    };
    let top = pair
        .iter()
        .rev()
        .filter(|(p, _)| **p >= p_min)
        .find(|(_, g)| !LocalFunctional::new((*g).clone()).is_zero())
        .map(|(p, _)| *p);
    let Some(top) = top else {
        return Ok(Vec::new());
    };
    Ok((p_min..=top)
        .rev()
        .enumerate()
        .map(|(n, p)| Density {
            index: n,
            z_power: p,
            functional: LocalFunctional::new(pair.get(&p).cloned().unwrap_or_default()),
        })
        .collect())
}

/// `[a, x] = 0` for every `x` in the bases of `𝔥_i`, `lo ≤ i ≤ hi`, and
/// `[a, f₂] = 0`. A certificate relative to the window only.
pub fn center_check(data: &DsData, a: &ZGradedElement, lo: HalfInt, hi: HalfInt) -> Result<bool> {
    if !a.is_constant() {
        return Err(Error::InvalidParameter("a must have numeric coefficients".into()));
    }
    let zg = &data.zg;
    if !zg.bracket(a, &data.f2, None).is_zero() {
        return Ok(false);
    }
    let mut i = lo;
    while i <= hi {
        for x in split_piece(zg, &data.semisimple, i)?.kernel_elements() {
            if !zg.bracket(a, &x, None).is_zero() {
                return Ok(false);
            }
        }
        i = i + HalfInt::HALF;
    }
    Ok(true)
}

/// Outcome of evaluating `[∂ + Λ + q, e^{−ad U}a]` through `checked_through`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatnessReport {
    pub checked_through: HalfInt,
    pub nonzero_terms: usize,
    #[serde(with = "crate::rational::serde_rational")]
    pub max_abs_coefficient: Rational,
}

impl FlatnessReport {
    pub fn passed(&self) -> bool {
        self.nonzero_terms == 0
    }
}

/// The commutator for an explicit gauge chain; with `e^{−ad U}a` known
/// through degree `window` it is exact through `window − 1`.
pub fn flatness_residual(
    data: &DsData,
    gauges: &[ZGradedElement],
    a: &ZGradedElement,
    window: HalfInt,
) -> FlatnessReport {
    let zg = &data.zg;
    let mut y = zg.truncate(a, window);
    for g in gauges.iter().rev() {
        y = zg.exp_ad(&g.scale(&rat(-1)), &y, window);
    }
    let cap = window - HalfInt::ONE;
    let lax = data.lambda.add(&data.q);
    let res = zg.truncate(&y.d_total(), cap).add(&zg.bracket(&lax, &y, Some(cap)));
    FlatnessReport {
        checked_through: cap,
        nonzero_terms: res.terms().len(),
        max_abs_coefficient: res.max_abs_coefficient(),
    }
}

pub fn flatness_check(r: &HierarchyResult, a: &ZGradedElement, window: HalfInt) -> Result<FlatnessReport> {
    if window > r.max_degree {
        return Err(Error::WindowTooSmall(format!("window {window} exceeds max_degree {}", r.max_degree)));
    }
    Ok(flatness_residual(&r.data, &r.gauges, a, window))
}

/// `e^{ad S}e^{ad U}` with `S ∈ V(p)⊗𝔥_{>0}`: the new `h` is
/// `e^{ad S}(Λ + h) − Σ (ad S)^{n−1}S′/n! − Λ`.
pub fn gauge_perturb(r: &HierarchyResult, s: &ZGradedElement) -> Result<HierarchyResult> {
    let data = &r.data;
    let zg = &data.zg;
    if s.is_zero() {
        return Ok(r.clone());
    }
    if let Some(d) = zg.degrees(s).into_iter().find(|d| *d <= HalfInt::ZERO) {
        return Err(Error::NotInKernel(format!("S has a component of degree {d} ≤ 0")));
    }
    if !zg.bracket(&data.semisimple, s, None).is_zero() {
        return Err(Error::NotInKernel("[f1+zE, S] ≠ 0".into()));
    }
    let cap = r.max_degree;
    let s = zg.truncate(s, cap + HalfInt::ONE);
    let h = zg.gauge_action(&s, &data.lambda.add(&r.h), cap).sub(&data.lambda).with_hi(Some(cap));
    let mut gauges = r.gauges.clone();
    gauges.push(s);
    let res = residual(data, &gauges, &h, cap);
    if !res.is_zero() {
        return Err(Error::Invariant(format!("perturbed residual has {} nonzero terms", res.terms().len())));
    }
    let mut out = HierarchyResult {
        data: data.clone(),
        max_degree: cap,
        split: r.split.clone(),
        gauges,
        h,
        densities: Vec::new(),
    };
    out.densities = available_densities(&out, &data.semisimple)?;
    Ok(out)
}

/// Random `S ∈ V(p)⊗𝔥` on the degrees `1/2..=window`, reproducible from
/// `seed`. Coefficients have no constant term and are redrawn until
/// nonzero, since a constant `S` can commute with everything in sight.
pub fn random_kernel_element(data: &DsData, window: HalfInt, seed: u64, shape: &RandomShape) -> Result<ZGradedElement> {
    if shape.max_degree == 0 || data.nvars() == 0 {
        return Err(Error::InvalidParameter("random coefficients need degree ≥ 1 and at least one variable".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shape = RandomShape { nvars: data.nvars(), ..shape.clone() };
    let mut s = ZGradedElement::zero();
    let mut i = HalfInt::HALF;
    while i <= window {
        for x in split_piece(&data.zg, &data.semisimple, i)?.kernel_elements() {
            let c = loop {
                let c = random_diffpoly(&shape, &mut rng);
                let c = &c - &c.constant_part();
                if !c.is_zero() {
                    break c;
                }
            };
            s = s.add(&x.map_coeffs(|k| k * &c));
        }
        i = i + HalfInt::HALF;
    }
    Ok(s)
}

/// Compares two density lists entry by entry under `functional_eq`.
pub fn densities_agree(a: &[Density], b: &[Density]) -> bool {
    a.len() == b.len()
        && a.iter().zip(b).all(|(x, y)| x.z_power == y.z_power && functional_eq(&x.functional, &y.functional))
}

/// Keeps the named generators (renumbered in the given order) and sets all
/// others to zero.
pub fn slice_evaluate(f: &LocalFunctional, vars: &VarSet, keep: &[&str]) -> Result<(LocalFunctional, VarSet)> {
    let idx: Vec<usize> = keep
        .iter()
        .map(|n| vars.index_of(n).ok_or_else(|| Error::VariableMismatch(format!("unknown variable {n}"))))
        .collect::<Result<_>>()?;
    let g = f.density().map_vars(|i| idx.iter().position(|&j| j == i));
    Ok((LocalFunctional::new(g), vars.subset(&idx)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub basis: String,
    pub z_power: i64,
    pub degree: HalfInt,
    pub coefficient: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityJson {
    pub index: usize,
    pub z_power: i64,
    pub density: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariableJson {
    pub name: String,
    /// Coordinates of the matching basis vector of `p`.
    pub p_element: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HierarchyJson {
    pub algebra: String,
    pub e_degree: HalfInt,
    pub z_degree: HalfInt,
    pub max_degree: HalfInt,
    pub variables: Vec<VariableJson>,
    pub gauges: Vec<Vec<TermJson>>,
    pub h: Vec<TermJson>,
    pub n_top: Option<i64>,
    pub densities: Vec<DensityJson>,
}

fn terms_json(zg: &ZGrading, x: &ZGradedElement, vars: &VarSet) -> Vec<TermJson> {
    let labels = zg.algebra().labels();
    x.terms()
        .iter()
        .map(|(k, p)| TermJson {
            basis: labels[k.0].clone(),
            z_power: k.1,
            degree: zg.degree(*k),
            coefficient: p.to_text(vars),
        })
        .collect()
}

impl HierarchyResult {
    pub fn to_json(&self) -> HierarchyJson {
        let d = &self.data;
        let vars = &d.vars;
        HierarchyJson {
            algebra: d.zg.algebra().name().to_string(),
            e_degree: d.zg.k(),
            z_degree: d.zg.z_degree(),
            max_degree: self.max_degree,
            variables: d
                .triple
                .reduction
                .p
                .iter()
                .enumerate()
                .map(|(i, x)| VariableJson {
                    name: vars.name(i),
                    p_element: x.coords().iter().map(fmt_rational).collect(),
                })
                .collect(),
            gauges: self.gauges.iter().map(|g| terms_json(&d.zg, g, vars)).collect(),
            h: terms_json(&d.zg, &self.h, vars),
            n_top: self.n_top(),
            densities: self
                .densities
                .iter()
                .map(|x| DensityJson {
                    index: x.index,
                    z_power: x.z_power,
                    density: x.functional.density().to_text(vars),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ds::solve_recursion;
    use crate::grading::sl_principal_triple;

    fn run(max: i64) -> HierarchyResult {
        solve_recursion(&sl_principal_triple(2).unwrap(), HalfInt::from_int(max)).unwrap()
    }

    #[test]
    fn center_membership() {
        let r = run(3);
        let d = &r.data;
        let w = HalfInt::from_int(3);
        assert!(center_check(d, &d.semisimple, -w, w).unwrap());
        let za = ZGradedElement::from_terms(d.semisimple.terms().iter().map(|(k, p)| ((k.0, k.1 + 1), p.clone())));
        assert!(center_check(d, &za, -w, w).unwrap());
        let h = ZGradedElement::from_terms([((1, 0), DiffPoly::one())]);
        assert!(!center_check(d, &h, -w, w).unwrap());
    }

    #[test]
    fn flatness_and_fault_injection() {
        let r = run(3);
        let w = HalfInt::from_int(3);
        assert!(flatness_check(&r, &r.data.semisimple, w).unwrap().passed());
        let mut bumped = r.u().clone();
        let key = *bumped.terms().keys().next().unwrap();
        bumped.add_term(key, &DiffPoly::var(0, 0));
        assert!(!flatness_residual(&r.data, &[bumped], &r.data.semisimple, w).passed());
    }

    #[test]
    fn zero_perturbation_is_identity() {
        let r = run(3);
        let p = gauge_perturb(&r, &ZGradedElement::zero()).unwrap();
        assert_eq!(p.h(), r.h());
        assert_eq!(p.gauges(), r.gauges());
    }

    #[test]
    fn perturbation_rejects_image_valued_s() {
        let r = run(3);
        let x = split_piece(&r.data.zg, &r.data.semisimple, HalfInt::ONE).unwrap().image_elements()[0].clone();
        assert!(matches!(gauge_perturb(&r, &x), Err(Error::NotInKernel(_))));
    }

    #[test]
    fn slice_kills_other_variables() {
        let vars = VarSet::named(["u_f", "u_h"]);
        let f = LocalFunctional::new(DiffPoly::parse("u_f^2 + u_h*u_f[2]", &vars).unwrap());
        let (g, sub) = slice_evaluate(&f, &vars, &["u_f"]).unwrap();
        assert_eq!(g.density(), &DiffPoly::parse("u_f^2", &sub).unwrap());
        let (same, _) = slice_evaluate(&f, &vars, &["u_f", "u_h"]).unwrap();
        assert_eq!(same, f);
        assert!(slice_evaluate(&f, &vars, &["w"]).is_err());
    }
}
