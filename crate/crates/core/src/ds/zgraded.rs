//! The graded space `V(p) ⊗ g((z⁻¹))`: `z` has degree `−k − 1` when `E ∈ g_k`,
//! so `f + zE` is homogeneous of degree `−1`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::grading::DynkinGrading;
use crate::liealg::{LieAlgebraSpec, LieElement};
use crate::linalg::RatMatrix;
use crate::pva::DiffPoly;
use crate::rational::{rat, HalfInt, Rational};

/// `(basis index, power of z)`.
pub type ZKey = (usize, i64);

/// `Σ P_{b,m} ⊗ x_b z^m` with differential polynomial coefficients.
/// `hi` is the truncation degree: components above it are not tracked.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ZGradedElement {
    terms: BTreeMap<ZKey, DiffPoly>,
    hi: Option<HalfInt>,
}

impl ZGradedElement {
    pub fn zero() -> Self {
        ZGradedElement::default()
    }

    /// Constant-coefficient element `x z^m`.
    pub fn from_lie(x: &LieElement, m: i64) -> Self {
        let mut out = ZGradedElement::zero();
        for (b, c) in x.coords().iter().enumerate() {
            out.add_term((b, m), &DiffPoly::constant(c.clone()));
        }
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (ZKey, DiffPoly)>) -> Self {
        let mut out = ZGradedElement::zero();
        for (k, p) in terms {
            out.add_term(k, &p);
        }
        out
    }

    pub fn terms(&self) -> &BTreeMap<ZKey, DiffPoly> {
        &self.terms
    }

    pub fn get(&self, key: ZKey) -> DiffPoly {
        self.terms.get(&key).cloned().unwrap_or_default()
    }

    pub fn hi(&self) -> Option<HalfInt> {
        self.hi
    }

    pub fn with_hi(mut self, hi: Option<HalfInt>) -> Self {
        self.hi = hi;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: ZKey, p: &DiffPoly) {
        if p.is_zero() {
            return;
        }
        let e = self.terms.entry(key).or_default();
        *e += p;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, o: &ZGradedElement) -> ZGradedElement {
        let mut out = self.clone();
        for (k, p) in &o.terms {
            out.add_term(*k, p);
        }
        out.hi = min_hi(self.hi, o.hi);
        out
    }

    pub fn sub(&self, o: &ZGradedElement) -> ZGradedElement {
        self.add(&o.scale(&rat(-1)))
    }

    pub fn scale(&self, s: &Rational) -> ZGradedElement {
        if s.is_zero() {
            return ZGradedElement { terms: BTreeMap::new(), hi: self.hi };
        }
        ZGradedElement { terms: self.terms.iter().map(|(k, p)| (*k, p.scale(s))).collect(), hi: self.hi }
    }

    pub fn map_coeffs(&self, f: impl Fn(&DiffPoly) -> DiffPoly) -> ZGradedElement {
        let mut out = ZGradedElement { terms: BTreeMap::new(), hi: self.hi };
        for (k, p) in &self.terms {
            out.add_term(*k, &f(p));
        }
        out
    }

    /// `∂` acting on the coefficients.
    pub fn d_total(&self) -> ZGradedElement {
        self.map_coeffs(DiffPoly::d_total)
    }

    /// All coefficients are numbers.
    pub fn is_constant(&self) -> bool {
        self.terms.values().all(|p| p.as_rational().is_some())
    }

    /// Largest absolute value among the numeric coefficients of all terms.
    pub fn max_abs_coefficient(&self) -> Rational {
        use num_traits::Signed;
        self.terms.values().flat_map(|p| p.terms().map(|(_, c)| c.abs())).fold(Rational::zero(), |a, b| {
            if b > a {
                b
            } else {
                a
            }
        })
    }
}

fn min_hi(a: Option<HalfInt>, b: Option<HalfInt>) -> Option<HalfInt> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// The grading of `g((z⁻¹))` induced by a Dynkin grading and the degree `k`
/// of `E`. Requires every basis vector of the algebra to be homogeneous.
#[derive(Clone, Debug)]
pub struct ZGrading {
    grading: DynkinGrading,
    k: HalfInt,
    z_degree: HalfInt,
    basis_deg: Vec<HalfInt>,
}

impl ZGrading {
    pub fn new(grading: DynkinGrading, k: HalfInt) -> Result<Self> {
        if k < HalfInt::HALF {
            return Err(Error::InvalidParameter(format!("degree of E must be at least 1/2, got {k}")));
        }
        let basis_deg = grading.basis_degrees().ok_or(Error::NotHomogeneous)?;
        Ok(ZGrading { grading, k, z_degree: -k - HalfInt::ONE, basis_deg })
    }

    pub fn grading(&self) -> &DynkinGrading {
        &self.grading
    }

    pub fn algebra(&self) -> &Arc<LieAlgebraSpec> {
        self.grading.algebra()
    }

    pub fn k(&self) -> HalfInt {
        self.k
    }

    pub fn z_degree(&self) -> HalfInt {
        self.z_degree
    }

    pub fn basis_degrees(&self) -> &[HalfInt] {
        &self.basis_deg
    }

    pub fn degree(&self, key: ZKey) -> HalfInt {
        self.basis_deg[key.0] + self.z_degree * key.1
    }

    /// Keys spanning the degree-`i` component, by basis index.
    pub fn component_keys(&self, i: HalfInt) -> Vec<ZKey> {
        let zd = self.z_degree.twice();
        self.basis_deg
            .iter()
            .enumerate()
            .filter_map(|(b, d)| {
                let diff = (i - *d).twice();
                (diff % zd == 0).then_some((b, diff / zd))
            })
            .collect()
    }

    /// Degree-`i` part of `x`.
    pub fn component(&self, x: &ZGradedElement, i: HalfInt) -> ZGradedElement {
        ZGradedElement::from_terms(x.terms.iter().filter(|(k, _)| self.degree(**k) == i).map(|(k, p)| (*k, p.clone())))
    }

    /// Drops the components above `hi` and records the truncation.
    pub fn truncate(&self, x: &ZGradedElement, hi: HalfInt) -> ZGradedElement {
        let mut out = ZGradedElement::from_terms(
            x.terms.iter().filter(|(k, _)| self.degree(**k) <= hi).map(|(k, p)| (*k, p.clone())),
        );
        out.hi = Some(min_hi(x.hi, Some(hi)).expect("some"));
        out
    }

    /// Degrees of the nonzero components.
    pub fn degrees(&self, x: &ZGradedElement) -> Vec<HalfInt> {
        let mut ds: Vec<HalfInt> = x.terms.keys().map(|k| self.degree(*k)).collect();
        ds.sort();
        ds.dedup();
        ds
    }

    /// `[x, y]`, keeping only components of degree `≤ cap`.
    pub fn bracket(&self, x: &ZGradedElement, y: &ZGradedElement, cap: Option<HalfInt>) -> ZGradedElement {
        let g = self.algebra();
        let mut out = ZGradedElement::zero();
        for (&(a, m), p) in &x.terms {
            let da = self.degree((a, m));
            for (&(b, n), q) in &y.terms {
                if cap.is_some_and(|c| da + self.degree((b, n)) > c) {
                    continue;
                }
                let sc = g.basis_bracket(a, b);
                if sc.is_empty() {
                    continue;
                }
                let pq = p * q;
                for (kk, c) in sc {
                    out.add_term((*kk, m + n), &pq.scale(c));
                }
            }
        }
        out.hi = cap;
        out
    }

    /// `e^{ad u} x` truncated at `cap`; `u` must have positive degrees.
    pub fn exp_ad(&self, u: &ZGradedElement, x: &ZGradedElement, cap: HalfInt) -> ZGradedElement {
        let mut acc = self.truncate(x, cap);
        let mut term = acc.clone();
        let mut n = 1;
        while !term.is_zero() {
            term = self.bracket(u, &term, Some(cap)).scale(&(rat(1) / rat(n)));
            acc = acc.add(&term);
            n += 1;
        }
        acc.hi = Some(cap);
        acc
    }

    /// `X̃` with `e^{ad u}(∂ + x) = ∂ + X̃`, truncated at `cap`:
    /// `X̃ = e^{ad u} x − Σ_{n≥1} (ad u)^{n−1}(u′)/n!`.
    pub fn gauge_action(&self, u: &ZGradedElement, x: &ZGradedElement, cap: HalfInt) -> ZGradedElement {
        let mut acc = self.exp_ad(u, x, cap);
        let mut s = self.truncate(&u.d_total(), cap);
        let mut fact = rat(1);
        let mut n = 1;
        while !s.is_zero() {
            acc = acc.sub(&s.scale(&(rat(1) / &fact)));
            n += 1;
            fact *= rat(n);
            s = self.bracket(u, &s, Some(cap));
        }
        acc.hi = Some(cap);
        acc
    }

    /// `(x|y)` as a Laurent polynomial: z-power ↦ coefficient.
    pub fn pairing(&self, x: &ZGradedElement, y: &ZGradedElement) -> BTreeMap<i64, DiffPoly> {
        let gram = self.algebra().gram();
        let mut out: BTreeMap<i64, DiffPoly> = BTreeMap::new();
        for (&(a, m), p) in &x.terms {
            for (&(b, n), q) in &y.terms {
                let c = &gram[(a, b)];
                if c.is_zero() {
                    continue;
                }
                let e = out.entry(m + n).or_default();
                *e += &(p * q).scale(c);
            }
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    /// Matrix of `ad x` from the degree-`i` component to degree `i + deg x`,
    /// for `x` with numeric coefficients.
    pub fn ad_matrix(&self, x: &ZGradedElement, from: HalfInt, to: HalfInt) -> Result<RatMatrix> {
        if !x.is_constant() {
            return Err(Error::InvalidParameter("ad matrix needs numeric coefficients".into()));
        }
        let src = self.component_keys(from);
        let dst = self.component_keys(to);
        let mut m = RatMatrix::zeros(dst.len(), src.len());
        for (c, key) in src.iter().enumerate() {
            let img = self.bracket(x, &ZGradedElement::from_terms([(*key, DiffPoly::one())]), None);
            for (k, p) in img.terms() {
                let r = dst
                    .iter()
                    .position(|d| d == k)
                    .ok_or_else(|| Error::Invariant(format!("ad image leaves degree {to}")))?;
                m[(r, c)] = p.as_rational().expect("numeric");
            }
        }
        Ok(m)
    }

    /// Coefficient vector (over `V(p)`) of a degree-`i` element in the
    /// component basis.
    pub fn coords_in(&self, x: &ZGradedElement, i: HalfInt) -> Result<Vec<DiffPoly>> {
        let keys = self.component_keys(i);
        let mut v = vec![DiffPoly::zero(); keys.len()];
        for (k, p) in x.terms() {
            let pos = keys.iter().position(|q| q == k).ok_or(Error::NotHomogeneous)?;
            v[pos] = p.clone();
        }
        Ok(v)
    }

    pub fn from_coords(&self, i: HalfInt, v: &[DiffPoly]) -> ZGradedElement {
        ZGradedElement::from_terms(self.component_keys(i).into_iter().zip(v.iter().cloned()))
    }
}
