//! The splitting `𝔥 ⊕ 𝔥⊥` by `ad(f₁ + zE)`, the current `q` and the
//! degree-by-degree gauge normalization.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use super::zgraded::{ZGradedElement, ZGrading, ZKey};
use crate::error::{Error, Result};
use crate::grading::{IntegrableTriple, ReductionData};
use crate::liealg::{LieAlgebraSpec, LieElement};
use crate::linalg::{span_basis, RatMatrix, Vector};
use crate::pva::{DiffPoly, LocalFunctional, VarSet};
use crate::rational::{HalfInt, Rational};

/// Kernel and image of `ad(f₁ + zE)` inside one graded component, as
/// coordinate vectors over `keys`.
#[derive(Clone, Debug)]
pub struct SplitPiece {
    pub degree: HalfInt,
    pub keys: Vec<ZKey>,
    /// `𝔥_i`
    pub kernel: Vec<Vector>,
    /// `𝔥⊥_i`, the image of the degree `i + 1` component.
    pub image: Vec<Vector>,
}

impl SplitPiece {
    fn element(&self, v: &[Rational]) -> ZGradedElement {
        ZGradedElement::from_terms(self.keys.iter().zip(v).map(|(k, c)| (*k, DiffPoly::constant(c.clone()))))
    }

    pub fn kernel_elements(&self) -> Vec<ZGradedElement> {
        self.kernel.iter().map(|v| self.element(v)).collect()
    }

    pub fn image_elements(&self) -> Vec<ZGradedElement> {
        self.image.iter().map(|v| self.element(v)).collect()
    }
}

/// Split of the degree-`i` component; fails when kernel and image do not
/// span it, i.e. when `f₁ + zE` is not semisimple.
pub fn split_piece(zg: &ZGrading, s: &ZGradedElement, i: HalfInt) -> Result<SplitPiece> {
    let keys = zg.component_keys(i);
    let kernel = zg.ad_matrix(s, i, i - HalfInt::ONE)?.kernel_basis();
    let into = zg.ad_matrix(s, i + HalfInt::ONE, i)?;
    let cols: Vec<Vector> = (0..into.cols()).map(|c| into.column(c)).collect();
    let image = span_basis(keys.len(), &cols);
    let all: Vec<Vector> = kernel.iter().chain(&image).cloned().collect();
    if kernel.len() + image.len() != keys.len() || span_basis(keys.len(), &all).len() != keys.len() {
        return Err(Error::InvalidTriple(format!(
            "kernel ({}) and image ({}) of ad(f1+zE) do not split the degree {i} component ({})",
            kernel.len(),
            image.len(),
            keys.len()
        )));
    }
    Ok(SplitPiece { degree: i, keys, kernel, image })
}

/// Split pieces over a window of degrees.
#[derive(Clone, Debug, Default)]
pub struct HSplit {
    pieces: BTreeMap<HalfInt, SplitPiece>,
}

impl HSplit {
    pub fn build(zg: &ZGrading, s: &ZGradedElement, lo: HalfInt, hi: HalfInt) -> Result<Self> {
        let mut pieces = BTreeMap::new();
        let mut i = lo;
        while i <= hi {
            pieces.insert(i, split_piece(zg, s, i)?);
            i = i + HalfInt::HALF;
        }
        Ok(HSplit { pieces })
    }

    pub fn piece(&self, i: HalfInt) -> Result<&SplitPiece> {
        self.pieces.get(&i).ok_or_else(|| Error::WindowTooSmall(format!("degree {i} is outside the split window")))
    }

    pub fn pieces(&self) -> impl Iterator<Item = &SplitPiece> {
        self.pieces.values()
    }
}

/// Basis `{qⁱ}` of `m⊥` dual to the basis `{q_i}` of `p`: `(qʲ|q_i) = δ_ij`.
pub fn dual_basis(reduction: &ReductionData, alg: &Arc<LieAlgebraSpec>) -> Result<Vec<LieElement>> {
    let gram = alg.gram();
    let rows: Vec<Vec<Rational>> = reduction.m.iter().map(|x| gram.mul_vec(x.coords())).collect();
    let mperp = if rows.is_empty() {
        RatMatrix::identity(alg.dim()).to_rows()
    } else {
        RatMatrix::from_rows(rows)?.kernel_basis()
    };
    let p = &reduction.p;
    if mperp.len() != p.len() {
        return Err(Error::Invariant(format!("dim m⊥ = {} but dim p = {}", mperp.len(), p.len())));
    }
    let n = p.len();
    let mut pairing = RatMatrix::zeros(n, n);
    for (a, w) in mperp.iter().enumerate() {
        for (b, y) in p.iter().enumerate() {
            pairing[(a, b)] = alg.form_vec(w, y.coords());
        }
    }
    let c = pairing.inverse().ok_or_else(|| Error::Invariant("pairing between p and m⊥ is degenerate".into()))?;
    (0..n)
        .map(|i| {
            let mut v = vec![Rational::zero(); alg.dim()];
            for (a, w) in mperp.iter().enumerate() {
                for (vv, wc) in v.iter_mut().zip(w) {
                    *vv += &c[(i, a)] * wc;
                }
            }
            LieElement::new(alg, v)
        })
        .collect()
}

/// `q = Σ u_i ⊗ qⁱ` at `z⁰`, where `u_i` is the coordinate of `q_i ∈ p`.
pub fn q_element(reduction: &ReductionData, alg: &Arc<LieAlgebraSpec>) -> Result<ZGradedElement> {
    let dual = dual_basis(reduction, alg)?;
    let mut q = ZGradedElement::zero();
    for (i, x) in dual.iter().enumerate() {
        let u = DiffPoly::var(i, 0);
        for (b, c) in x.coords().iter().enumerate() {
            q.add_term((b, 0), &u.scale(c));
        }
    }
    Ok(q)
}

/// Names of the `V(p)` generators: `u_<label>` when `q_i` is a basis vector
/// of the algebra, `u<i>` otherwise.
fn p_variables(p: &[LieElement]) -> VarSet {
    let names: Vec<String> = p
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let nz: Vec<usize> = (0..x.coords().len()).filter(|&b| !x.coords()[b].is_zero()).collect();
            match nz.as_slice() {
                [b] if x.coords()[*b] == Rational::from_integer(1.into()) => {
                    let label = crate::pva::sanitize_label(&x.parent().labels()[*b]);
                    let parts: Vec<&str> = label.split('_').filter(|s| !s.is_empty()).collect();
                    format!("u_{}", parts.join("_"))
                }
                _ => format!("u{}", i + 1),
            }
        })
        .collect();
    VarSet::try_named(names.clone()).unwrap_or_else(|_| VarSet::indexed(names.len()))
}

/// Everything fixed by the triple: the graded loop algebra, `Λ = f + zE`,
/// its semisimple part `f₁ + zE`, the current `q` and the variables of
/// `V(p)`.
#[derive(Clone, Debug)]
pub struct DsData {
    pub triple: IntegrableTriple,
    pub zg: ZGrading,
    pub lambda: ZGradedElement,
    pub semisimple: ZGradedElement,
    pub f2: ZGradedElement,
    pub q: ZGradedElement,
    pub vars: VarSet,
}

impl DsData {
    pub fn new(triple: &IntegrableTriple) -> Result<Self> {
        let k = triple.degree().ok_or_else(|| Error::InvalidTriple("E is zero or not homogeneous".into()))?;
        let zg = ZGrading::new(triple.grading.clone(), k)?;
        let e = ZGradedElement::from_lie(&triple.big_e, 1);
        let semisimple = ZGradedElement::from_lie(&triple.f1, 0).add(&e);
        let f2 = ZGradedElement::from_lie(&triple.f2, 0);
        let lambda = semisimple.add(&f2);
        let q = q_element(&triple.reduction, triple.algebra())?;
        let vars = p_variables(&triple.reduction.p);
        Ok(DsData { triple: triple.clone(), zg, lambda, semisimple, f2, q, vars })
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }
}

/// The unique `h_i ∈ V(p)⊗𝔥_i`, `U_{i+1} ∈ V(p)⊗𝔥⊥_{i+1}` with
/// `h_i + [f + zE, U_{i+1}] = A`, for `A` of degree `i`.
pub fn solve_hk(
    data: &DsData,
    split: &HSplit,
    a: &ZGradedElement,
    i: HalfInt,
) -> Result<(ZGradedElement, ZGradedElement)> {
    let zg = &data.zg;
    let here = split.piece(i)?;
    let up = split.piece(i + HalfInt::ONE)?;
    let n = here.keys.len();
    let ad = zg.ad_matrix(&data.lambda, i + HalfInt::ONE, i)?;
    let mut cols: Vec<Vector> = here.kernel.clone();
    cols.extend(up.image.iter().map(|v| ad.mul_vec(v)));
    if cols.len() != n {
        return Err(Error::InvalidTriple(format!(
            "degree {i}: {} columns for a component of dimension {n}",
            cols.len()
        )));
    }
    let m = RatMatrix::from_columns(n, &cols);
    let inv = m.inverse().ok_or_else(|| {
        Error::InvalidTriple(format!("ad(f+zE) is not invertible on the degree {} image", i + HalfInt::ONE))
    })?;
    let rhs = zg.coords_in(a, i)?;
    let x: Vec<DiffPoly> = (0..n)
        .map(|r| {
            let mut acc = DiffPoly::zero();
            for (c, v) in rhs.iter().enumerate() {
                if !inv[(r, c)].is_zero() && !v.is_zero() {
                    acc += &v.scale(&inv[(r, c)]);
                }
            }
            acc
        })
        .collect();
    let nk = here.kernel.len();
    let combine = |basis: &[Vector], coeffs: &[DiffPoly], keys: &[ZKey]| {
        let mut out = ZGradedElement::zero();
        for (v, p) in basis.iter().zip(coeffs) {
            for (key, c) in keys.iter().zip(v) {
                if !c.is_zero() {
                    out.add_term(*key, &p.scale(c));
                }
            }
        }
        out
    };
    Ok((combine(&here.kernel, &x[..nk], &here.keys), combine(&up.image, &x[nk..], &up.keys)))
}

/// One conserved density `∫g_{a,n}`, the coefficient of `z^{N−n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Density {
    pub index: usize,
    pub z_power: i64,
    pub functional: LocalFunctional,
}

/// A solution of `e^{ad U}(∂ + Λ + q) = ∂ + Λ + h` through `max_degree`.
/// The gauge is stored as a chain of exponentials applied in order, so a
/// perturbed solution reads `e^{ad S}e^{ad U}`.
#[derive(Clone, Debug)]
pub struct HierarchyResult {
    pub(crate) data: Arc<DsData>,
    pub(crate) max_degree: HalfInt,
    pub(crate) split: HSplit,
    pub(crate) gauges: Vec<ZGradedElement>,
    pub(crate) h: ZGradedElement,
    pub(crate) densities: Vec<Density>,
}

impl HierarchyResult {
    pub fn data(&self) -> &Arc<DsData> {
        &self.data
    }

    pub fn max_degree(&self) -> HalfInt {
        self.max_degree
    }

    pub fn split(&self) -> &HSplit {
        &self.split
    }

    /// `U` of the unperturbed solution.
    pub fn u(&self) -> &ZGradedElement {
        &self.gauges[0]
    }

    pub fn gauges(&self) -> &[ZGradedElement] {
        &self.gauges
    }

    pub fn h(&self) -> &ZGradedElement {
        &self.h
    }

    /// Densities of `a = f₁ + zE`, as many as the window determines.
    pub fn densities(&self) -> &[Density] {
        &self.densities
    }

    /// Largest power of `z` carrying a nonzero density.
    pub fn n_top(&self) -> Option<i64> {
        self.densities.first().map(|d| d.z_power)
    }
}

/// `e^{ad G_r}⋯e^{ad G_1}(∂ + Λ + q) − ∂ − Λ − h` through degree `cap`.
pub fn residual(data: &DsData, gauges: &[ZGradedElement], h: &ZGradedElement, cap: HalfInt) -> ZGradedElement {
    let zg = &data.zg;
    let mut x = data.lambda.add(&data.q);
    for g in gauges {
        x = zg.gauge_action(g, &x, cap);
    }
    zg.truncate(&x.sub(&data.lambda).sub(h), cap)
}

pub fn solve_recursion(triple: &IntegrableTriple, max_degree: HalfInt) -> Result<HierarchyResult> {
    if max_degree < HalfInt::HALF {
        return Err(Error::InvalidParameter(format!("max_degree must be at least 1/2, got {max_degree}")));
    }
    let data = Arc::new(DsData::new(triple)?);
    let zg = &data.zg;
    let start = -HalfInt::HALF;
    let split = HSplit::build(zg, &data.semisimple, -max_degree.max(HalfInt::ONE), max_degree + HalfInt::ONE)?;
    let x0 = data.lambda.add(&data.q);
    let mut u = ZGradedElement::zero();
    let mut h = ZGradedElement::zero();
    let mut i = start;
    while i <= max_degree {
        let a = zg.component(&zg.gauge_action(&u, &x0, i), i);
        let (hi, ui) = solve_hk(&data, &split, &a, i)?;
        h = h.add(&hi);
        u = u.add(&ui);
        i = i + HalfInt::HALF;
    }
    let u = u.with_hi(Some(max_degree + HalfInt::ONE));
    let h = h.with_hi(Some(max_degree));
    let res = residual(&data, std::slice::from_ref(&u), &h, max_degree);
    if !res.is_zero() {
        return Err(Error::Invariant(format!("gauge equation residual has {} nonzero terms", res.terms().len())));
    }
    let mut out = HierarchyResult { data, max_degree, split, gauges: vec![u], h, densities: Vec::new() };
    out.densities = super::verify::available_densities(&out, &out.data.semisimple)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::sl_principal_triple;
    use crate::rational::{rat, ratio};

    fn sl2() -> DsData {
        DsData::new(&sl_principal_triple(2).unwrap()).unwrap()
    }

    #[test]
    fn sl2_splitting() {
        let d = sl2();
        let h0 = split_piece(&d.zg, &d.semisimple, HalfInt::ZERO).unwrap();
        assert!(h0.kernel.is_empty());
        assert_eq!(h0.image.len(), 1);
        let hm1 = split_piece(&d.zg, &d.semisimple, -HalfInt::ONE).unwrap();
        assert_eq!(hm1.kernel_elements(), vec![d.semisimple.clone()]);
        assert_eq!(hm1.image.len(), 1);
    }

    #[test]
    fn sl2_current() {
        let d = sl2();
        // p = [f, h]; q = u_f ⊗ e + u_h ⊗ h/2
        assert_eq!(d.vars.names(), ["u_E21", "u_H1"]);
        let want = ZGradedElement::from_terms([
            ((0, 0), DiffPoly::var(0, 0)),
            ((1, 0), DiffPoly::var(1, 0).scale(&ratio(1, 2))),
        ]);
        assert_eq!(d.q, want);
        let dual = dual_basis(&d.triple.reduction, d.triple.algebra()).unwrap();
        for (j, x) in dual.iter().enumerate() {
            for (i, y) in d.triple.reduction.p.iter().enumerate() {
                assert_eq!(x.form(y).unwrap(), if i == j { rat(1) } else { rat(0) });
            }
        }
    }

    #[test]
    fn solve_hk_trivial_cases() {
        let d = sl2();
        let split = HSplit::build(&d.zg, &d.semisimple, -HalfInt::ONE, HalfInt::from_int(3)).unwrap();
        let one = HalfInt::ONE;
        let ker = split.piece(one).unwrap().kernel_elements()[0].map_coeffs(|c| c * &DiffPoly::var(0, 2));
        let (h, u) = solve_hk(&d, &split, &ker, one).unwrap();
        assert_eq!(h, ker);
        assert!(u.is_zero());
        let b = split.piece(HalfInt::from_int(2)).unwrap().image_elements()[0].map_coeffs(|c| c * &DiffPoly::var(1, 1));
        let a = d.zg.bracket(&d.lambda, &b, None).with_hi(None);
        let (h, u) = solve_hk(&d, &split, &a, one).unwrap();
        assert!(h.is_zero());
        assert_eq!(u, b);
    }

    #[test]
    fn sl2_degree_zero_step() {
        let d = sl2();
        let split = HSplit::build(&d.zg, &d.semisimple, -HalfInt::ONE, HalfInt::from_int(2)).unwrap();
        let a = d.zg.component(&d.q, HalfInt::ZERO);
        let (h0, u1) = solve_hk(&d, &split, &a, HalfInt::ZERO).unwrap();
        assert!(h0.is_zero());
        assert_eq!(d.zg.bracket(&d.lambda, &u1, None).with_hi(None), a);
    }

    #[test]
    fn sl2_recursion_residual() {
        let r = solve_recursion(&sl_principal_triple(2).unwrap(), HalfInt::from_int(4)).unwrap();
        assert!(residual(&r.data, r.gauges(), r.h(), HalfInt::from_int(4)).is_zero());
        assert!(r.h().terms().keys().all(|k| r.data.zg.degree(*k) > -HalfInt::ONE));
        assert!(r.u().terms().keys().all(|k| r.data.zg.degree(*k) > HalfInt::ZERO));
        assert!(!r.h().is_zero());
    }
}
