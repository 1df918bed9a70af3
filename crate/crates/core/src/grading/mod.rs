//! sl2-triples, the Dynkin grading by eigenvalues of `ad(h/2)`, the skew
//! form `ω(a, b) = (f|[a, b])` on `g_1/2`, and cyclic / quasi-cyclic
//! perturbations of a nilpotent element.

mod probes;
mod table1;
mod triples;

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

pub use probes::{
    find_integrable_element, nilpotent_type_probe, orthogonal_partitions, random_element, so_depth_probe_sweep,
    DegreeChoice, ProbeVerdict, SearchBudget, SearchOutcome, SweepOutcome, SweepRow,
};
pub use table1::{table1_lookup, table1_rows, Table1Row, Table1Status};
pub use triples::{
    g2_triple, integrable_triple_check, sl2_from_partition, sl_principal_triple, so_integrable_triple,
    IntegrableTriple, ReductionData, TripleJson, TripleReport,
};

use crate::error::{Error, Result};
use crate::liealg::{centralizer, element_span, jordan_decomposition_elem, span_echelon, LieAlgebraSpec, LieElement};
use crate::linalg::{RatMatrix, Vector};
use crate::rational::{rat, HalfInt, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sl2Triple {
    pub e: LieElement,
    pub h: LieElement,
    pub f: LieElement,
}

impl Sl2Triple {
    pub fn new(e: LieElement, h: LieElement, f: LieElement) -> Result<Self> {
        let ok = e.bracket(&f)? == h
            && h.bracket(&e)? == e.scale(&rat(2))
            && h.bracket(&f)? == f.scale(&rat(-2))
            && !f.is_zero();
        if !ok {
            return Err(Error::Invariant("elements do not satisfy the sl2 relations".into()));
        }
        Ok(Sl2Triple { e, h, f })
    }

    /// Completes `(h, f)` by the unique `e` in the `ad h`-eigenspace of
    /// eigenvalue 2 with `[e, f] = h`.
    pub fn from_h_f(h: LieElement, f: LieElement) -> Result<Self> {
        let g = h.parent().clone();
        let dim = g.dim();
        let mut ad_h = h.ad_matrix();
        ad_h.add_diagonal(&rat(-2));
        let space = ad_h.kernel_basis();
        if space.is_empty() {
            return Err(Error::Invariant("ad h has no eigenvalue 2".into()));
        }
        // [x, f] = −ad f (x)
        let ad_f = f.ad_matrix();
        let cols: Vec<Vector> = space.iter().map(|v| ad_f.mul_vec(v).into_iter().map(|x| -x).collect()).collect();
        let sys = RatMatrix::from_columns(dim, &cols);
        let c = sys.solve_linear(h.coords())?.ok_or_else(|| Error::Invariant("no e with [e, f] = h".into()))?;
        let mut e = vec![Rational::zero(); dim];
        for (ci, v) in c.iter().zip(&space) {
            for (x, y) in e.iter_mut().zip(v) {
                *x += ci * y;
            }
        }
        Sl2Triple::new(LieElement::new(&g, e)?, h, f)
    }

    pub fn algebra(&self) -> &Arc<LieAlgebraSpec> {
        self.f.parent()
    }
}

/// Eigenspace decomposition `g = ⊕ g_k`, `g_k = {a : [h, a] = 2ka}`.
#[derive(Clone, Debug)]
pub struct DynkinGrading {
    triple: Sl2Triple,
    pieces: BTreeMap<HalfInt, Vec<LieElement>>,
    depth: HalfInt,
    /// Inverse of the matrix whose columns are the piece bases, in degree
    /// order; maps algebra coordinates to graded coordinates.
    graded_inv: RatMatrix,
}

impl DynkinGrading {
    pub fn from_triple(triple: &Sl2Triple) -> Result<Self> {
        let g = triple.algebra().clone();
        let dim = g.dim();
        let ad_h = triple.h.ad_matrix();
        let mu = ad_h.minimal_polynomial()?;
        let bound: i64 = (0..dim)
            .map(|i| ad_h.row(i).iter().map(|x| x.abs().ceil().to_integer()).sum::<num_bigint::BigInt>())
            .max()
            .and_then(|b| i64::try_from(b).ok())
            .ok_or_else(|| Error::Invariant("ad h entries too large".into()))?;
        let mut pieces = BTreeMap::new();
        let mut total = 0;
        for t in -bound..=bound {
            if !mu.eval(&rat(t)).is_zero() {
                continue;
            }
            let mut m = ad_h.clone();
            m.add_diagonal(&rat(-t));
            let ker = m.kernel_basis();
            total += ker.len();
            let elems: Vec<LieElement> = ker.into_iter().map(|v| LieElement::new(&g, v)).collect::<Result<_>>()?;
            pieces.insert(HalfInt::from_twice(t), elems);
        }
        if total != dim {
            return Err(Error::Invariant("ad h is not diagonalizable with half-integer eigenvalues".into()));
        }
        for (k, b) in &pieces {
            if pieces.get(&-*k).map_or(0, Vec::len) != b.len() {
                return Err(Error::Invariant(format!("dim g_{k} differs from dim g_{}", -*k)));
            }
        }
        let depth = *pieces.keys().next_back().expect("nonempty grading");
        let cols: Vec<Vector> = pieces.values().flatten().map(|x| x.coords().to_vec()).collect();
        let graded_inv = RatMatrix::from_columns(dim, &cols)
            .inverse()
            .ok_or_else(|| Error::Invariant("eigenspaces do not span".into()))?;
        let gr = DynkinGrading { triple: triple.clone(), pieces, depth, graded_inv };
        if gr.depth < HalfInt::ONE {
            return Err(Error::Invariant("depth below 1".into()));
        }
        Ok(gr)
    }

    pub fn triple(&self) -> &Sl2Triple {
        &self.triple
    }

    pub fn algebra(&self) -> &Arc<LieAlgebraSpec> {
        self.triple.algebra()
    }

    pub fn f(&self) -> &LieElement {
        &self.triple.f
    }

    pub fn depth(&self) -> HalfInt {
        self.depth
    }

    pub fn pieces(&self) -> &BTreeMap<HalfInt, Vec<LieElement>> {
        &self.pieces
    }

    pub fn piece(&self, k: HalfInt) -> &[LieElement] {
        self.pieces.get(&k).map_or(&[], Vec::as_slice)
    }

    pub fn piece_dim(&self, k: HalfInt) -> usize {
        self.piece(k).len()
    }

    /// Basis of `⊕_{k : pred(k)} g_k`.
    pub fn sum_of_pieces(&self, pred: impl Fn(HalfInt) -> bool) -> Vec<LieElement> {
        self.pieces.iter().filter(|(k, _)| pred(**k)).flat_map(|(_, b)| b.iter().cloned()).collect()
    }

    /// Homogeneous components of `x`, zero ones omitted.
    pub fn components(&self, x: &LieElement) -> Result<BTreeMap<HalfInt, LieElement>> {
        if !Arc::ptr_eq(x.parent(), self.algebra()) {
            return Err(Error::ParentMismatch);
        }
        let c = self.graded_inv.mul_vec(x.coords());
        let mut out = BTreeMap::new();
        let mut off = 0;
        for (k, basis) in &self.pieces {
            let part = &c[off..off + basis.len()];
            off += basis.len();
            if part.iter().all(Zero::is_zero) {
                continue;
            }
            let mut acc = LieElement::zero(self.algebra());
            for (a, b) in part.iter().zip(basis) {
                acc = acc.add(&b.scale(a))?;
            }
            out.insert(*k, acc);
        }
        Ok(out)
    }

    /// Degree of a homogeneous element; `None` for zero.
    pub fn degree_of(&self, x: &LieElement) -> Result<Option<HalfInt>> {
        let comps = self.components(x)?;
        match comps.len() {
            0 => Ok(None),
            1 => Ok(comps.keys().next().copied()),
            _ => Err(Error::NotHomogeneous),
        }
    }

    pub fn lies_in(&self, x: &LieElement, k: HalfInt) -> Result<bool> {
        Ok(self.components(x)?.keys().all(|d| *d == k))
    }

    /// Degrees of the algebra's own basis vectors, when each is homogeneous.
    pub fn basis_degrees(&self) -> Option<Vec<HalfInt>> {
        let g = self.algebra();
        (0..g.dim()).map(|i| self.degree_of(&LieElement::basis(g, i)).ok().flatten()).collect()
    }

    /// Gram matrix of `ω` on the stored basis of `g_1/2`.
    pub fn omega_form(&self) -> RatMatrix {
        let half = self.piece(HalfInt::HALF);
        let n = half.len();
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = self.omega_unchecked(&half[i], &half[j]);
            }
        }
        m
    }

    fn omega_unchecked(&self, a: &LieElement, b: &LieElement) -> Rational {
        let g = self.algebra();
        g.form_vec(self.f().coords(), &g.bracket_vec(a.coords(), b.coords()))
    }

    pub fn omega(&self, a: &LieElement, b: &LieElement) -> Result<Rational> {
        self.check_half(std::slice::from_ref(a))?;
        self.check_half(std::slice::from_ref(b))?;
        Ok(self.omega_unchecked(a, b))
    }

    fn check_half(&self, xs: &[LieElement]) -> Result<()> {
        for x in xs {
            if !self.lies_in(x, HalfInt::HALF)? {
                return Err(Error::OutsideHalfPiece);
            }
        }
        Ok(())
    }

    /// `{x ∈ g_1/2 : ω(x, s) = 0 for all s}`, in echelon form.
    pub fn omega_orthocomplement(&self, sub: &[LieElement]) -> Result<Vec<LieElement>> {
        self.check_half(sub)?;
        let half = self.piece(HalfInt::HALF);
        let g = self.algebra();
        if half.is_empty() {
            return Ok(vec![]);
        }
        let rows: Vec<Vector> = sub.iter().map(|s| half.iter().map(|b| self.omega_unchecked(b, s)).collect()).collect();
        let ker = if rows.is_empty() {
            (0..half.len()).map(|i| (0..half.len()).map(|j| if i == j { rat(1) } else { rat(0) }).collect()).collect()
        } else {
            RatMatrix::from_rows(rows)?.kernel_basis()
        };
        let elems: Vec<LieElement> = ker
            .iter()
            .map(|c| {
                c.iter()
                    .zip(half)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(LieElement::zero(g), |acc, (a, b)| acc.add(&b.scale(a)).expect("same parent"))
            })
            .collect();
        Ok(element_span(g, &elems))
    }

    pub fn is_isotropic(&self, sub: &[LieElement]) -> Result<bool> {
        self.check_half(sub)?;
        Ok(sub.iter().all(|a| sub.iter().all(|b| self.omega_unchecked(a, b).is_zero())))
    }

    pub fn is_coisotropic(&self, sub: &[LieElement]) -> Result<bool> {
        let perp = self.omega_orthocomplement(sub)?;
        let span = span_echelon(self.algebra(), sub);
        Ok(perp.iter().all(|x| span.contains(x.coords())))
    }

    /// Centralizer of `x` in `g_1/2`.
    pub fn half_centralizer(&self, x: &LieElement) -> Result<Vec<LieElement>> {
        centralizer(x, self.piece(HalfInt::HALF))
    }
}

pub fn grading_from(triple: &Sl2Triple) -> Result<DynkinGrading> {
    DynkinGrading::from_triple(triple)
}

pub fn omega_form(grading: &DynkinGrading) -> RatMatrix {
    grading.omega_form()
}

pub fn is_coisotropic(sub: &[LieElement], grading: &DynkinGrading) -> Result<bool> {
    grading.is_coisotropic(sub)
}

/// Nilpotent type holds exactly when the depth is not an integer.
pub fn nilpotent_type_test(grading: &DynkinGrading) -> bool {
    !grading.depth().is_integer()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PerturbationKind {
    Cyclic,
    Quasicyclic,
    Invalid,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ElementType {
    Semisimple,
    Nilpotent,
    Mixed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub kind: PerturbationKind,
    pub element_type: ElementType,
    pub degree: Option<HalfInt>,
}

pub fn element_type(x: &LieElement) -> Result<ElementType> {
    let (s, n) = jordan_decomposition_elem(x)?;
    Ok(if n.is_zero() {
        ElementType::Semisimple
    } else if s.is_zero() {
        ElementType::Nilpotent
    } else {
        ElementType::Mixed
    })
}

pub fn classify_perturbation(f: &LieElement, e: &LieElement, grading: &DynkinGrading) -> Result<Classification> {
    let degree = grading.degree_of(e)?;
    let d = grading.depth();
    let kind = match degree {
        Some(k) if k == d => PerturbationKind::Cyclic,
        Some(k) if k == d - HalfInt::HALF => {
            if grading.is_coisotropic(&grading.half_centralizer(e)?)? {
                PerturbationKind::Quasicyclic
            } else {
                PerturbationKind::Invalid
            }
        }
        _ => PerturbationKind::Invalid,
    };
    let element_type = element_type(&f.add(e)?)?;
    Ok(Classification { kind, element_type, degree })
}

/// JSON view of a grading: depth and the coordinates of each piece.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GradingJson {
    pub algebra: String,
    pub depth: HalfInt,
    pub e: Vec<String>,
    pub h: Vec<String>,
    pub f: Vec<String>,
    pub pieces: BTreeMap<String, Vec<Vec<String>>>,
}

pub(crate) fn coords_strings(x: &LieElement) -> Vec<String> {
    x.coords().iter().map(crate::rational::fmt_rational).collect()
}

impl GradingJson {
    pub fn from_grading(g: &DynkinGrading) -> Self {
        let t = g.triple();
        GradingJson {
            algebra: g.algebra().name().to_string(),
            depth: g.depth(),
            e: coords_strings(&t.e),
            h: coords_strings(&t.h),
            f: coords_strings(&t.f),
            pieces: g.pieces().iter().map(|(k, b)| (k.to_string(), b.iter().map(coords_strings).collect())).collect(),
        }
    }
}
