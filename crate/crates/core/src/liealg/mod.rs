//! Finite-dimensional Lie algebras given by structure constants in a labeled
//! basis, together with a nondegenerate invariant symmetric form.

mod classical;
mod g2;
mod json;

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

pub use classical::{build_sl, build_so_from_partition, build_sp, so_adjoint, IndexTriple, SoIndexing};
pub use g2::{build_g2, G2Roots};
pub use json::LieAlgebraJson;

use crate::error::{Error, Result};
use crate::linalg::{span_basis, Echelon, RatMatrix, Vector};
use crate::rational::{fmt_rational, Rational};

/// Sparse list of `(k, c)` pairs meaning `Σ c·x_k`.
pub type SparseVec = Vec<(usize, Rational)>;

/// Matrices of the basis elements in a faithful representation, with the
/// data needed to read coordinates back off a matrix.
#[derive(Clone, Debug)]
pub struct DefiningRep {
    n: usize,
    basis: Vec<RatMatrix>,
    positions: Vec<(usize, usize)>,
    coord_inv: RatMatrix,
    /// Whether element-type predicates may be evaluated in this
    /// representation (true for semisimple algebras).
    predicates: bool,
}

impl DefiningRep {
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> &[RatMatrix] {
        &self.basis
    }

    fn coords(&self, m: &RatMatrix) -> Option<Vector> {
        let rhs: Vector = self.positions.iter().map(|&(i, j)| m[(i, j)].clone()).collect();
        let c = self.coord_inv.mul_vec(&rhs);
        let mut back = RatMatrix::zeros(self.n, self.n);
        for (b, x) in self.basis.iter().zip(&c) {
            if !x.is_zero() {
                back = back.add(&b.scale(x));
            }
        }
        (back == *m).then_some(c)
    }
}

#[derive(Clone, Debug)]
pub struct LieAlgebraSpec {
    name: String,
    labels: Vec<String>,
    /// `sc[i][j]` lists `[x_i, x_j]` sparsely, sorted by basis index.
    sc: Vec<Vec<SparseVec>>,
    gram: RatMatrix,
    defining: Option<DefiningRep>,
}

impl LieAlgebraSpec {
    /// Builds and validates an algebra from its brackets on basis pairs.
    /// `brackets` only needs the entries with `i < j`.
    pub fn from_structure_constants(
        name: impl Into<String>,
        labels: Vec<String>,
        brackets: Vec<((usize, usize), SparseVec)>,
        gram: RatMatrix,
    ) -> Result<Self> {
        let dim = labels.len();
        if dim == 0 {
            return Err(Error::InvalidParameter("empty basis".into()));
        }
        if gram.rows() != dim || gram.cols() != dim {
            return Err(Error::Dimension("Gram matrix does not match the basis".into()));
        }
        let mut sc = vec![vec![SparseVec::new(); dim]; dim];
        for ((i, j), v) in brackets {
            if i >= dim || j >= dim || v.iter().any(|(k, _)| *k >= dim) {
                return Err(Error::Dimension("structure constant index out of range".into()));
            }
            if i == j {
                if v.iter().any(|(_, c)| !c.is_zero()) {
                    return Err(Error::Invariant(format!("[x{i}, x{i}] must vanish")));
                }
                continue;
            }
            let v = normalize_sparse(v);
            let neg: SparseVec = v.iter().map(|(k, c)| (*k, -c.clone())).collect();
            let (a, b) = if i < j { (v, neg) } else { (neg, v) };
            let (lo, hi) = (i.min(j), i.max(j));
            if !sc[lo][hi].is_empty() && sc[lo][hi] != a {
                return Err(Error::Invariant(format!("conflicting brackets for ({i}, {j})")));
            }
            sc[lo][hi] = a;
            sc[hi][lo] = b;
        }
        let alg = LieAlgebraSpec { name: name.into(), labels, sc, gram, defining: None };
        alg.validate()?;
        Ok(alg)
    }

    /// Subalgebra of `gl_n` spanned by the given matrices, with the trace form
    /// of that representation.
    pub fn from_matrix_basis(
        name: impl Into<String>,
        labels: Vec<String>,
        basis: Vec<RatMatrix>,
        semisimple: bool,
    ) -> Result<Self> {
        let dim = basis.len();
        if dim == 0 || labels.len() != dim {
            return Err(Error::Dimension("labels and matrices differ in number".into()));
        }
        let n = basis[0].rows();
        if basis.iter().any(|b| b.rows() != n || b.cols() != n) {
            return Err(Error::Dimension("basis matrices must share one square shape".into()));
        }
        // Pick matrix positions on which the basis is already independent.
        let flat: Vec<Vector> = basis.iter().map(|b| b.to_rows().concat()).collect();
        let (_, pivots) = RatMatrix::from_rows(flat.clone())?.rref();
        if pivots.len() != dim {
            return Err(Error::Invariant("basis matrices are linearly dependent".into()));
        }
        let positions: Vec<(usize, usize)> = pivots.iter().map(|p| (p / n, p % n)).collect();
        let square = RatMatrix::from_columns(
            dim,
            &flat.iter().map(|f| pivots.iter().map(|&p| f[p].clone()).collect()).collect::<Vec<_>>(),
        );
        let coord_inv = square.inverse().ok_or_else(|| Error::Invariant("singular coordinate block".into()))?;
        let rep = DefiningRep { n, basis, positions, coord_inv, predicates: semisimple };

        let mut brackets = Vec::new();
        for i in 0..dim {
            for j in (i + 1)..dim {
                let c = rep.basis[i].commutator(&rep.basis[j]);
                let coords = rep
                    .coords(&c)
                    .ok_or_else(|| Error::Invariant(format!("[{}, {}] leaves the span", labels[i], labels[j])))?;
                brackets.push(((i, j), dense_to_sparse(&coords)));
            }
        }
        let mut gram = RatMatrix::zeros(dim, dim);
        for i in 0..dim {
            for j in i..dim {
                let t = rep.basis[i].mul(&rep.basis[j]).trace();
                gram[(i, j)] = t.clone();
                gram[(j, i)] = t;
            }
        }
        let mut alg = LieAlgebraSpec::from_structure_constants(name, labels, brackets, gram)?;
        alg.defining = Some(rep);
        Ok(alg)
    }

    /// Checks antisymmetry, the Jacobi identity and nondegeneracy,
    /// symmetry and invariance of the form on all basis triples.
    pub fn validate(&self) -> Result<()> {
        let dim = self.dim();
        for i in 0..dim {
            if !self.sc[i][i].is_empty() {
                return Err(Error::Invariant(format!("[x{i}, x{i}] ≠ 0")));
            }
            for j in 0..dim {
                let neg: SparseVec = self.sc[j][i].iter().map(|(k, c)| (*k, -c.clone())).collect();
                if self.sc[i][j] != neg {
                    return Err(Error::Invariant(format!("antisymmetry fails on ({i}, {j})")));
                }
            }
        }
        for i in 0..dim {
            for j in (i + 1)..dim {
                for k in (j + 1)..dim {
                    let mut acc = vec![Rational::zero(); dim];
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        for (m, coef) in &self.sc[b][c] {
                            for (r, c2) in &self.sc[a][*m] {
                                acc[*r] += coef * c2;
                            }
                        }
                    }
                    if acc.iter().any(|x| !x.is_zero()) {
                        return Err(Error::Invariant(format!(
                            "Jacobi identity fails on ({}, {}, {})",
                            self.labels[i], self.labels[j], self.labels[k]
                        )));
                    }
                }
            }
        }
        if self.gram != self.gram.transpose() {
            return Err(Error::Invariant("form is not symmetric".into()));
        }
        if self.gram.rank() != dim {
            return Err(Error::Invariant("form is degenerate".into()));
        }
        // ([x,y]|z) + (y|[x,z]) = 0
        for x in 0..dim {
            for y in 0..dim {
                for z in y..dim {
                    let mut s = Rational::zero();
                    for (k, c) in &self.sc[x][y] {
                        s += c * &self.gram[(*k, z)];
                    }
                    for (k, c) in &self.sc[x][z] {
                        s += c * &self.gram[(y, *k)];
                    }
                    if !s.is_zero() {
                        return Err(Error::Invariant(format!(
                            "form is not invariant on ({}, {}, {})",
                            self.labels[x], self.labels[y], self.labels[z]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn gram(&self) -> &RatMatrix {
        &self.gram
    }

    pub fn defining(&self) -> Option<&DefiningRep> {
        self.defining.as_ref()
    }

    /// `[x_i, x_j]` as a sparse combination of basis elements.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &SparseVec {
        &self.sc[i][j]
    }

    /// Bracket of two coordinate vectors.
    pub fn bracket_vec(&self, x: &[Rational], y: &[Rational]) -> Vector {
        let dim = self.dim();
        let mut out = vec![Rational::zero(); dim];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in &self.sc[i][j] {
                    out[*k] += &ab * c;
                }
            }
        }
        out
    }

    pub fn form_vec(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let mut s = Rational::zero();
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if !b.is_zero() {
                    s += a * b * &self.gram[(i, j)];
                }
            }
        }
        s
    }

    pub fn ad_matrix_vec(&self, x: &[Rational]) -> RatMatrix {
        let dim = self.dim();
        let mut m = RatMatrix::zeros(dim, dim);
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for j in 0..dim {
                for (k, c) in &self.sc[i][j] {
                    m[(*k, j)] += a * c;
                }
            }
        }
        m
    }

    /// The algebra re-expressed in a new basis given by coordinate vectors.
    /// The defining representation, if any, is carried along.
    pub fn rebase(&self, name: impl Into<String>, labels: Vec<String>, basis: &[Vector]) -> Result<Self> {
        let dim = self.dim();
        if basis.len() != dim || labels.len() != dim {
            return Err(Error::Dimension("new basis must have the same size".into()));
        }
        let p = RatMatrix::from_columns(dim, basis);
        let pinv = p.inverse().ok_or_else(|| Error::Invariant("new basis is not a basis".into()))?;
        let mut brackets = Vec::new();
        for i in 0..dim {
            for j in (i + 1)..dim {
                let b = self.bracket_vec(&basis[i], &basis[j]);
                brackets.push(((i, j), dense_to_sparse(&pinv.mul_vec(&b))));
            }
        }
        let gram = p.transpose().mul(&self.gram).mul(&p);
        let mut alg = LieAlgebraSpec::from_structure_constants(name, labels, brackets, gram)?;
        if let Some(rep) = &self.defining {
            let mats: Vec<RatMatrix> = basis
                .iter()
                .map(|v| {
                    v.iter()
                        .zip(&rep.basis)
                        .filter(|(c, _)| !c.is_zero())
                        .fold(RatMatrix::zeros(rep.n, rep.n), |acc, (c, m)| acc.add(&m.scale(c)))
                })
                .collect();
            let tmp = LieAlgebraSpec::from_matrix_basis("tmp", alg.labels.clone(), mats, rep.predicates)?;
            alg.defining = tmp.defining;
        }
        Ok(alg)
    }
}

fn normalize_sparse(v: SparseVec) -> SparseVec {
    let mut dense: std::collections::BTreeMap<usize, Rational> = Default::default();
    for (k, c) in v {
        *dense.entry(k).or_insert_with(Rational::zero) += c;
    }
    dense.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

fn dense_to_sparse(v: &[Rational]) -> SparseVec {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone())).collect()
}

/// An element of a specific algebra, as a coordinate vector.
#[derive(Clone, Debug)]
pub struct LieElement {
    parent: Arc<LieAlgebraSpec>,
    coords: Vector,
}

impl PartialEq for LieElement {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.parent, &o.parent) && self.coords == o.coords
    }
}

impl Eq for LieElement {}

impl LieElement {
    pub fn new(parent: &Arc<LieAlgebraSpec>, coords: Vector) -> Result<Self> {
        if coords.len() != parent.dim() {
            return Err(Error::Dimension(format!(
                "{} coordinates for a {}-dimensional algebra",
                coords.len(),
                parent.dim()
            )));
        }
        Ok(LieElement { parent: parent.clone(), coords })
    }

    pub fn zero(parent: &Arc<LieAlgebraSpec>) -> Self {
        LieElement { parent: parent.clone(), coords: vec![Rational::zero(); parent.dim()] }
    }

    pub fn basis(parent: &Arc<LieAlgebraSpec>, i: usize) -> Self {
        let mut e = LieElement::zero(parent);
        e.coords[i] = Rational::one();
        e
    }

    pub fn by_label(parent: &Arc<LieAlgebraSpec>, label: &str) -> Result<Self> {
        parent
            .label_index(label)
            .map(|i| LieElement::basis(parent, i))
            .ok_or_else(|| Error::InvalidParameter(format!("no basis element labeled `{label}`")))
    }

    /// Reads an element off its matrix in the defining representation.
    pub fn from_matrix(parent: &Arc<LieAlgebraSpec>, m: &RatMatrix) -> Result<Self> {
        let rep = parent
            .defining()
            .ok_or_else(|| Error::InvalidParameter("algebra has no defining representation".into()))?;
        if m.rows() != rep.n || m.cols() != rep.n {
            return Err(Error::Dimension("matrix size does not match the representation".into()));
        }
        let c = rep.coords(m).ok_or_else(|| Error::Invariant("matrix is not in the algebra".into()))?;
        LieElement::new(parent, c)
    }

    pub fn parent(&self) -> &Arc<LieAlgebraSpec> {
        &self.parent
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    fn check(&self, o: &LieElement) -> Result<()> {
        if Arc::ptr_eq(&self.parent, &o.parent) {
            Ok(())
        } else {
            Err(Error::ParentMismatch)
        }
    }

    pub fn add(&self, o: &LieElement) -> Result<Self> {
        self.check(o)?;
        Ok(self.with(self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect()))
    }

    pub fn sub(&self, o: &LieElement) -> Result<Self> {
        self.check(o)?;
        Ok(self.with(self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect()))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        self.with(self.coords.iter().map(|a| a * s).collect())
    }

    fn with(&self, coords: Vector) -> Self {
        LieElement { parent: self.parent.clone(), coords }
    }

    pub fn bracket(&self, o: &LieElement) -> Result<Self> {
        self.check(o)?;
        Ok(self.with(self.parent.bracket_vec(&self.coords, &o.coords)))
    }

    pub fn form(&self, o: &LieElement) -> Result<Rational> {
        self.check(o)?;
        Ok(self.parent.form_vec(&self.coords, &o.coords))
    }

    /// Matrix of `y ↦ [x, y]` in the basis.
    pub fn ad_matrix(&self) -> RatMatrix {
        self.parent.ad_matrix_vec(&self.coords)
    }

    /// Matrix in the defining representation, if the algebra has one.
    pub fn to_matrix(&self) -> Option<RatMatrix> {
        let rep = self.parent.defining()?;
        Some(
            self.coords
                .iter()
                .zip(&rep.basis)
                .filter(|(c, _)| !c.is_zero())
                .fold(RatMatrix::zeros(rep.n, rep.n), |acc, (c, m)| acc.add(&m.scale(c))),
        )
    }

    /// Matrix used by the element-type predicates: the defining
    /// representation for semisimple matrix algebras, `ad` otherwise.
    fn predicate_matrix(&self) -> RatMatrix {
        match self.parent.defining() {
            Some(rep) if rep.predicates => self.to_matrix().expect("defining representation"),
            _ => self.ad_matrix(),
        }
    }
}

/// Whether `ad x` is nilpotent (minimal polynomial `λ^k`).
pub fn is_nilpotent_elem(x: &LieElement) -> bool {
    is_nilpotent_matrix(&x.predicate_matrix())
}

/// Whether `ad x` is semisimple (squarefree minimal polynomial).
pub fn is_semisimple_elem(x: &LieElement) -> bool {
    is_semisimple_matrix(&x.predicate_matrix())
}

pub fn is_nilpotent_matrix(m: &RatMatrix) -> bool {
    m.minimal_polynomial().map(|p| p.is_monomial()).unwrap_or(false)
}

pub fn is_semisimple_matrix(m: &RatMatrix) -> bool {
    m.minimal_polynomial().map(|p| p.is_squarefree()).unwrap_or(false)
}

/// Ad-matrix versions of the predicates, independent of any representation.
pub fn is_nilpotent_ad(x: &LieElement) -> bool {
    is_nilpotent_matrix(&x.ad_matrix())
}

pub fn is_semisimple_ad(x: &LieElement) -> bool {
    is_semisimple_matrix(&x.ad_matrix())
}

/// `x = x_s + x_n` with `ad x_s`, `ad x_n` the semisimple and nilpotent
/// parts of `ad x`.
pub fn jordan_decomposition_elem(x: &LieElement) -> Result<(LieElement, LieElement)> {
    let parent = x.parent();
    match parent.defining() {
        Some(rep) if rep.predicates => {
            let (s, _) = x.to_matrix().expect("defining representation").chevalley_decomposition()?;
            let xs = LieElement::from_matrix(parent, &s)?;
            let xn = x.sub(&xs)?;
            Ok((xs, xn))
        }
        _ => jordan_decomposition_ad(x),
    }
}

/// Jordan decomposition computed purely from `ad x`; requires the
/// semisimple part of `ad x` to be an inner derivation.
pub fn jordan_decomposition_ad(x: &LieElement) -> Result<(LieElement, LieElement)> {
    let parent = x.parent();
    let dim = parent.dim();
    let (s, _) = x.ad_matrix().chevalley_decomposition()?;
    // Solve Σ c_i ad(x_i) = S.
    let cols: Vec<Vector> = (0..dim).map(|i| LieElement::basis(parent, i).ad_matrix().to_rows().concat()).collect();
    let system = RatMatrix::from_columns(dim * dim, &cols);
    let target = s.to_rows().concat();
    let c =
        system.solve_linear(&target)?.ok_or_else(|| Error::Invariant("semisimple part of ad x is not inner".into()))?;
    let xs = LieElement::new(parent, c)?;
    let xn = x.sub(&xs)?;
    Ok((xs, xn))
}

/// Basis (reduced echelon form in algebra coordinates) of the elements of
/// `span(subspace)` commuting with `x`.
pub fn centralizer(x: &LieElement, subspace: &[LieElement]) -> Result<Vec<LieElement>> {
    for s in subspace {
        x.check(s)?;
    }
    let parent = x.parent();
    let dim = parent.dim();
    if subspace.is_empty() {
        return Ok(vec![]);
    }
    let images: Vec<Vector> = subspace.iter().map(|s| parent.bracket_vec(&x.coords, &s.coords)).collect();
    let ker = RatMatrix::from_columns(dim, &images).kernel_basis();
    let vecs: Vec<Vector> = ker
        .iter()
        .map(|a| {
            let mut v = vec![Rational::zero(); dim];
            for (ai, s) in a.iter().zip(subspace) {
                if ai.is_zero() {
                    continue;
                }
                for (vi, si) in v.iter_mut().zip(&s.coords) {
                    *vi += ai * si;
                }
            }
            v
        })
        .collect();
    Ok(span_basis(dim, &vecs).into_iter().map(|v| LieElement { parent: parent.clone(), coords: v }).collect())
}

/// Reduced echelon basis of the span of the given elements.
pub fn element_span(parent: &Arc<LieAlgebraSpec>, xs: &[LieElement]) -> Vec<LieElement> {
    let vs: Vec<Vector> = xs.iter().map(|x| x.coords.clone()).collect();
    span_basis(parent.dim(), &vs).into_iter().map(|v| LieElement { parent: parent.clone(), coords: v }).collect()
}

pub fn span_echelon(parent: &LieAlgebraSpec, xs: &[LieElement]) -> Echelon {
    Echelon::from_vectors(parent.dim(), xs.iter().map(|x| &x.coords))
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, l) in self.coords.iter().zip(self.parent.labels()) {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Rational::zero();
            let a = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            if a.is_one() {
                write!(f, "{l}")?;
            } else {
                write!(f, "{}*{l}", fmt_rational(&a))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn sl2() -> Arc<LieAlgebraSpec> {
        Arc::new(build_sl(2).unwrap())
    }

    #[test]
    fn sl2_relations() {
        let g = sl2();
        let e = LieElement::by_label(&g, "E12").unwrap();
        let f = LieElement::by_label(&g, "E21").unwrap();
        let h = LieElement::by_label(&g, "H1").unwrap();
        assert_eq!(e.bracket(&f).unwrap(), h);
        assert_eq!(h.bracket(&e).unwrap(), e.scale(&rat(2)));
        assert!(e.bracket(&e).unwrap().is_zero());
        let x = e.add(&h).unwrap().add(&f.scale(&rat(-3))).unwrap();
        assert!(x.bracket(&x).unwrap().is_zero());
    }

    #[test]
    fn ad_h_is_diagonal() {
        let g = sl2();
        let h = LieElement::by_label(&g, "H1").unwrap();
        // basis order (E12, H1, E21)
        assert_eq!(g.labels(), &["E12", "H1", "E21"]);
        assert_eq!(h.ad_matrix(), RatMatrix::diagonal(&[rat(2), rat(0), rat(-2)]));
    }

    #[test]
    fn predicates_and_jordan() {
        let g = sl2();
        let e = LieElement::by_label(&g, "E12").unwrap();
        let f = LieElement::by_label(&g, "E21").unwrap();
        let h = LieElement::by_label(&g, "H1").unwrap();
        assert!(is_nilpotent_elem(&f) && !is_semisimple_elem(&f));
        assert!(is_semisimple_elem(&h) && !is_nilpotent_elem(&h));
        assert!(is_nilpotent_elem(&LieElement::zero(&g)) && is_semisimple_elem(&LieElement::zero(&g)));
        let fe = f.add(&e).unwrap();
        assert!(is_semisimple_elem(&fe));
        let (s, n) = jordan_decomposition_elem(&fe).unwrap();
        assert_eq!(s, fe);
        assert!(n.is_zero());
        let (s2, n2) = jordan_decomposition_ad(&fe).unwrap();
        assert_eq!((s2, n2.is_zero()), (fe, true));
    }

    #[test]
    fn parent_mismatch() {
        let a = sl2();
        let b = sl2();
        let x = LieElement::basis(&a, 0);
        let y = LieElement::basis(&b, 0);
        assert_eq!(x.bracket(&y), Err(Error::ParentMismatch));
        assert!(centralizer(&x, &[y]).is_err());
    }

    #[test]
    fn centralizer_of_h() {
        let g = sl2();
        let h = LieElement::by_label(&g, "H1").unwrap();
        let all: Vec<_> = (0..3).map(|i| LieElement::basis(&g, i)).collect();
        assert_eq!(centralizer(&h, &all).unwrap(), vec![h]);
    }

    #[test]
    fn rejects_bad_jacobi() {
        // [x0,x1] = x1, [x0,x2] = x2, [x1,x2] = x0 violates Jacobi.
        let labels = vec!["a".into(), "b".into(), "c".into()];
        let br = vec![((0, 1), vec![(1, rat(1))]), ((0, 2), vec![(2, rat(1))]), ((1, 2), vec![(0, rat(1))])];
        let r = LieAlgebraSpec::from_structure_constants("bad", labels, br, RatMatrix::identity(3));
        assert!(matches!(r, Err(Error::Invariant(_))));
    }
}
