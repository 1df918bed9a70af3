use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{coords_strings, DynkinGrading, Sl2Triple};
use crate::error::{Error, Result};
use crate::liealg::{
    build_sl, build_so_from_partition, is_nilpotent_elem, is_semisimple_elem, span_echelon, G2Roots, IndexTriple,
    LieAlgebraSpec, LieElement, SoIndexing,
};
use crate::linalg::RatMatrix;
use crate::rational::{parse_rational, rat, HalfInt};

/// The sl2-triple of a partition in Jordan form:
/// `f = Σ E_{(a,i,j+1),(a,i,j)}`, `h = Σ (p_a+1−2j) E_{(a,i,j),(a,i,j)}`,
/// `e = Σ j(p_a−j) E_{(a,i,j),(a,i,j+1)}`.
///
/// With `idx` the positions come from the `so_N` indexing; without it the
/// index set `(a,i,j)` is laid out lexicographically on `1..=n`, which is the
/// convention used for `sl_n`.
pub fn sl2_from_partition(
    alg: &Arc<LieAlgebraSpec>,
    idx: Option<&SoIndexing>,
    partition: &[usize],
) -> Result<Sl2Triple> {
    let parts = SoIndexing::group_partition(partition)?;
    let index = SoIndexing::index_set(&parts);
    let n = index.len();
    let rep = alg.defining().ok_or_else(|| Error::InvalidParameter("algebra has no defining representation".into()))?;
    if rep.size() != n {
        return Err(Error::Partition(format!(
            "partition of {n} does not match a {}-dimensional representation",
            rep.size()
        )));
    }
    if let Some(idx) = idx {
        if idx.parts != parts {
            return Err(Error::Partition("partition differs from the one the algebra was built from".into()));
        }
    }
    let pos = |t: IndexTriple| -> usize {
        match idx {
            Some(idx) => idx.position(t).expect("index triple"),
            None => index.binary_search(&t).expect("index triple"),
        }
    };
    let (mut e, mut h, mut f) = (RatMatrix::zeros(n, n), RatMatrix::zeros(n, n), RatMatrix::zeros(n, n));
    for &t @ IndexTriple(a, i, j) in &index {
        let p = parts[a - 1].0 as i64;
        let jj = j as i64;
        h[(pos(t), pos(t))] = rat(p + 1 - 2 * jj);
        if (j as i64) < p {
            let next = IndexTriple(a, i, j + 1);
            f[(pos(next), pos(t))] = rat(1);
            e[(pos(t), pos(next))] = rat(jj * (p - jj));
        }
    }
    let lift = |m: &RatMatrix| LieElement::from_matrix(alg, m);
    Sl2Triple::new(lift(&e)?, lift(&h)?, lift(&f)?)
}

/// sl2-triples of `G2` by label: `~A1` (short root), `A1` (long root) and
/// `G2` (principal).
pub fn g2_triple(alg: &Arc<LieAlgebraSpec>, label: &str) -> Result<Sl2Triple> {
    let roots = G2Roots::new();
    let root = |a: i64, b: i64| -> Result<LieElement> {
        let k = roots.root_index(a, b).ok_or_else(|| Error::InvalidParameter("not a G2 root".into()))?;
        if alg.dim() != 14 {
            return Err(Error::InvalidParameter("not the G2 algebra".into()));
        }
        Ok(LieElement::basis(alg, k))
    };
    let (a, b) = match label {
        "~A1" => (1, 2),
        "A1" => (2, 3),
        "G2" => {
            let f = root(-1, 0)?.add(&root(0, -1)?)?;
            let ha = LieElement::by_label(alg, "h_a")?;
            let hb = LieElement::by_label(alg, "h_b")?;
            // h = x h_a + y h_b with α(h) = β(h) = 2
            let ea = root(1, 0)?;
            let eb = root(0, 1)?;
            let ev = |h: &LieElement, e: &LieElement| -> Result<crate::rational::Rational> {
                let img = h.bracket(e)?;
                let k = e.coords().iter().position(|c| !num_traits::Zero::is_zero(c)).expect("nonzero");
                Ok(&img.coords()[k] / &e.coords()[k])
            };
            let m = RatMatrix::from_rows(vec![vec![ev(&ha, &ea)?, ev(&hb, &ea)?], vec![ev(&ha, &eb)?, ev(&hb, &eb)?]])?;
            let xy =
                m.solve_linear(&[rat(2), rat(2)])?.ok_or_else(|| Error::Invariant("no principal coweight".into()))?;
            let h = ha.scale(&xy[0]).add(&hb.scale(&xy[1]))?;
            return Sl2Triple::from_h_f(h, f);
        }
        other => return Err(Error::InvalidParameter(format!("unknown G2 nilpotent label `{other}`"))),
    };
    let e = root(a, b)?;
    let f = root(-a, -b)?;
    let h = e.bracket(&f)?;
    Sl2Triple::new(e, h, f)
}

/// Isotropic `l ⊂ g_1/2` and the subspaces `m = l ⊕ g_≥1`,
/// `n = l^⊥ ⊕ g_≥1` and the complement `p` of `m`.
#[derive(Clone, Debug)]
pub struct ReductionData {
    pub l: Vec<LieElement>,
    pub l_perp: Vec<LieElement>,
    pub m: Vec<LieElement>,
    pub n: Vec<LieElement>,
    /// `g_≤0` followed by an echelon completion of `l` inside `g_1/2`.
    pub p: Vec<LieElement>,
}

impl ReductionData {
    /// With `l = None` the isotropic subspace is the ω-orthocomplement of the
    /// centralizer of `E` in `g_1/2`, so that `l^⊥` is that centralizer
    /// whenever it is coisotropic.
    pub fn build(grading: &DynkinGrading, big_e: &LieElement, l: Option<Vec<LieElement>>) -> Result<Self> {
        let g = grading.algebra();
        let l = match l {
            Some(l) => crate::liealg::element_span(g, &l),
            None => grading.omega_orthocomplement(&grading.half_centralizer(big_e)?)?,
        };
        let l_perp = grading.omega_orthocomplement(&l)?;
        let ge1 = grading.sum_of_pieces(|k| k >= HalfInt::ONE);
        let m: Vec<LieElement> = l.iter().chain(&ge1).cloned().collect();
        let n: Vec<LieElement> = l_perp.iter().chain(&ge1).cloned().collect();
        let mut p = grading.sum_of_pieces(|k| k <= HalfInt::ZERO);
        let mut span = span_echelon(g, &l);
        for x in grading.piece(HalfInt::HALF) {
            if span.insert(x.coords()) {
                p.push(x.clone());
            }
        }
        Ok(ReductionData { l, l_perp, m, n, p })
    }

    /// Checks isotropy of `l`, `l ⊆ l^⊥`, `g_≤0 ⊆ p ⊆ g_≤1/2` and `m ⊕ p = g`.
    pub fn check(&self, grading: &DynkinGrading) -> Result<()> {
        let g = grading.algebra();
        if !grading.is_isotropic(&self.l)? {
            return Err(Error::Invariant("l is not isotropic".into()));
        }
        let perp = span_echelon(g, &self.l_perp);
        if !self.l.iter().all(|x| perp.contains(x.coords())) {
            return Err(Error::Invariant("l is not contained in its orthocomplement".into()));
        }
        for x in &self.p {
            if grading.components(x)?.keys().any(|k| *k > HalfInt::HALF) {
                return Err(Error::Invariant("p leaves g_≤1/2".into()));
            }
        }
        let pspan = span_echelon(g, &self.p);
        if !grading.sum_of_pieces(|k| k <= HalfInt::ZERO).iter().all(|x| pspan.contains(x.coords())) {
            return Err(Error::Invariant("p does not contain g_≤0".into()));
        }
        let mut all = span_echelon(g, &self.m);
        for x in &self.p {
            all.insert(x.coords());
        }
        if all.rank() != g.dim() || self.m.len() + self.p.len() != g.dim() {
            return Err(Error::Invariant("m and p are not complementary".into()));
        }
        Ok(())
    }
}

/// `(f₁, f₂, E)` with the grading of `f = f₁ + f₂` and reduction data.
#[derive(Clone, Debug)]
pub struct IntegrableTriple {
    pub f1: LieElement,
    pub f2: LieElement,
    pub big_e: LieElement,
    pub grading: DynkinGrading,
    pub reduction: ReductionData,
}

impl IntegrableTriple {
    /// Assembles the data without validating it; see
    /// [`integrable_triple_check`].
    pub fn assemble(
        f1: LieElement,
        f2: LieElement,
        big_e: LieElement,
        grading: DynkinGrading,
        l: Option<Vec<LieElement>>,
    ) -> Result<Self> {
        let reduction = ReductionData::build(&grading, &big_e, l)?;
        Ok(IntegrableTriple { f1, f2, big_e, grading, reduction })
    }

    pub fn algebra(&self) -> &Arc<LieAlgebraSpec> {
        self.grading.algebra()
    }

    pub fn f(&self) -> &LieElement {
        self.grading.f()
    }

    /// Degree of `E`, if it is nonzero and homogeneous.
    pub fn degree(&self) -> Option<HalfInt> {
        self.grading.degree_of(&self.big_e).ok().flatten()
    }

    pub fn to_json(&self) -> TripleJson {
        TripleJson {
            algebra: self.algebra().name().to_string(),
            labels: self.algebra().labels().to_vec(),
            depth: self.grading.depth(),
            degree: self.degree(),
            h: coords_strings(&self.grading.triple().h),
            f1: coords_strings(&self.f1),
            f2: coords_strings(&self.f2),
            e: coords_strings(&self.big_e),
            l: self.reduction.l.iter().map(coords_strings).collect(),
            p: self.reduction.p.iter().map(coords_strings).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TripleJson {
    pub algebra: String,
    pub labels: Vec<String>,
    pub depth: HalfInt,
    pub degree: Option<HalfInt>,
    pub h: Vec<String>,
    pub f1: Vec<String>,
    pub f2: Vec<String>,
    pub e: Vec<String>,
    pub l: Vec<Vec<String>>,
    pub p: Vec<Vec<String>>,
}

impl IntegrableTriple {
    /// Rebuilds a triple from its JSON form over `alg`. The grading comes
    /// from `h` and `f = f₁ + f₂`; `p` is recomputed from `l`.
    pub fn from_json(alg: &Arc<LieAlgebraSpec>, j: &TripleJson) -> Result<Self> {
        if j.labels != alg.labels() {
            return Err(Error::ParentMismatch);
        }
        let elem = |v: &[String]| -> Result<LieElement> {
            LieElement::new(alg, v.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?)
        };
        let (f1, f2) = (elem(&j.f1)?, elem(&j.f2)?);
        let triple = Sl2Triple::from_h_f(elem(&j.h)?, f1.add(&f2)?)?;
        let grading = DynkinGrading::from_triple(&triple)?;
        let l = j.l.iter().map(|v| elem(v)).collect::<Result<Vec<_>>>()?;
        IntegrableTriple::assemble(f1, f2, elem(&j.e)?, grading, Some(l))
    }
}

/// Integrable triple for an `so_N` partition `(p+1, p^{r}, …)` with `p` even:
/// `E = F_{(1,1,1),(1,1,p)}`, `f₁` the Jordan block of the largest part and
/// `l = span{F_{(1,1,1),(2,i,1)}}`.
pub fn so_integrable_triple(partition: &[usize]) -> Result<(IntegrableTriple, SoIndexing)> {
    let parts = SoIndexing::group_partition(partition)?;
    let pattern = parts.len() >= 2
        && parts[0].1 == 1
        && parts[0].0 % 2 == 1
        && parts[1].0 + 1 == parts[0].0
        && parts[1].1 % 2 == 0;
    if !pattern {
        return Err(Error::Partition(
            "expected largest part odd with multiplicity 1, next part one less with even multiplicity".into(),
        ));
    }
    let p = parts[1].0;
    let r2 = parts[1].1;
    let (alg, idx) = build_so_from_partition(partition)?;
    let alg = Arc::new(alg);
    let triple = sl2_from_partition(&alg, Some(&idx), partition)?;
    let grading = DynkinGrading::from_triple(&triple)?;
    let big_e = idx.f_element(&alg, IndexTriple(1, 1, 1), IndexTriple(1, 1, p))?;
    let n = idx.n();
    let mut f1m = RatMatrix::zeros(n, n);
    for j in 1..=p {
        f1m[(idx.position(IndexTriple(1, 1, j + 1))?, idx.position(IndexTriple(1, 1, j))?)] = rat(1);
    }
    let f1 = LieElement::from_matrix(&alg, &f1m)?;
    let f2 = triple.f.sub(&f1)?;
    let l = (1..=r2)
        .map(|i| idx.f_element(&alg, IndexTriple(1, 1, 1), IndexTriple(2, i, 1)))
        .collect::<Result<Vec<_>>>()?;
    Ok((IntegrableTriple::assemble(f1, f2, big_e, grading, Some(l))?, idx))
}

/// Principal integrable triple of `sl_n`: `f₁ = f`, `f₂ = 0`, `E = E_1n`.
pub fn sl_principal_triple(n: usize) -> Result<IntegrableTriple> {
    let alg = Arc::new(build_sl(n)?);
    let triple = sl2_from_partition(&alg, None, &[n])?;
    let grading = DynkinGrading::from_triple(&triple)?;
    let big_e = LieElement::by_label(&alg, &format!("E1{n}"))?;
    let f1 = triple.f.clone();
    IntegrableTriple::assemble(f1, LieElement::zero(&alg), big_e, grading, None)
}

/// Outcome of checking the three conditions of an integrable triple, plus
/// non-nilpotency of `f + E`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleReport {
    pub cond_i: bool,
    pub cond_ii: bool,
    pub cond_iii: bool,
    pub f_plus_e_non_nilpotent: bool,
    pub failures: Vec<String>,
}

impl TripleReport {
    pub fn all_pass(&self) -> bool {
        self.cond_i && self.cond_ii && self.cond_iii && self.f_plus_e_non_nilpotent
    }
}

pub fn integrable_triple_check(t: &IntegrableTriple) -> TripleReport {
    let gr = &t.grading;
    let mut failures = Vec::new();
    let mut fail = |cond: &mut bool, msg: String| {
        *cond = false;
        failures.push(msg);
    };
    let minus_one = -HalfInt::ONE;

    let mut cond_i = true;
    for (name, x) in [("f1", &t.f1), ("f2", &t.f2)] {
        if !gr.lies_in(x, minus_one).unwrap_or(false) {
            fail(&mut cond_i, format!("(i) {name} is not in g_-1"));
        }
    }
    match t.f1.add(&t.f2) {
        Ok(s) if s == *t.f() => {}
        _ => fail(&mut cond_i, "(i) f1 + f2 differs from f".into()),
    }
    if !t.f1.bracket(&t.f2).map(|x| x.is_zero()).unwrap_or(false) {
        fail(&mut cond_i, "(i) [f1, f2] is nonzero".into());
    }

    let mut cond_ii = true;
    match gr.degree_of(&t.big_e) {
        Ok(Some(k)) if k >= HalfInt::HALF => {}
        Ok(Some(k)) => fail(&mut cond_ii, format!("(ii) E has degree {k} < 1/2")),
        Ok(None) => fail(&mut cond_ii, "(ii) E is zero".into()),
        Err(_) => fail(&mut cond_ii, "(ii) E is not homogeneous".into()),
    }
    for y in gr.sum_of_pieces(|k| k >= HalfInt::ONE) {
        if !t.big_e.bracket(&y).map(|x| x.is_zero()).unwrap_or(false) {
            fail(&mut cond_ii, "(ii) [E, g_≥1] is nonzero".into());
            break;
        }
    }
    let coiso = gr.half_centralizer(&t.big_e).and_then(|c| gr.is_coisotropic(&c)).unwrap_or(false);
    if !coiso {
        fail(&mut cond_ii, "(ii) centralizer of E in g_1/2 is not coisotropic".into());
    }

    let mut cond_iii = true;
    match t.f1.add(&t.big_e) {
        Ok(s) if is_semisimple_elem(&s) => {}
        _ => fail(&mut cond_iii, "(iii) f1 + E is not semisimple".into()),
    }
    if !t.f2.bracket(&t.big_e).map(|x| x.is_zero()).unwrap_or(false) {
        fail(&mut cond_iii, "(iii) [f2, E] is nonzero".into());
    }

    let non_nil = t.f().add(&t.big_e).map(|s| !is_nilpotent_elem(&s)).unwrap_or(false);
    if !non_nil {
        failures.push("f + E is nilpotent".into());
    }
    TripleReport { cond_i, cond_ii, cond_iii, f_plus_e_non_nilpotent: non_nil, failures }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{build_g2, build_sl};

    #[test]
    fn sl2_triple_is_integrable() {
        let g = Arc::new(build_sl(2).unwrap());
        let s = sl2_from_partition(&g, None, &[2]).unwrap();
        let gr = DynkinGrading::from_triple(&s).unwrap();
        let zero = LieElement::zero(&g);
        let t = IntegrableTriple::assemble(s.f.clone(), zero.clone(), s.e.clone(), gr.clone(), None).unwrap();
        let r = integrable_triple_check(&t);
        assert!(r.all_pass(), "{r:?}");
        t.reduction.check(&gr).unwrap();

        let bad = IntegrableTriple::assemble(s.f.clone(), zero, s.f.clone(), gr, None).unwrap();
        let r = integrable_triple_check(&bad);
        assert!(r.cond_i && !r.cond_ii && !r.cond_iii);
    }

    #[test]
    fn so7_example() {
        let (t, _) = so_integrable_triple(&[3, 2, 2]).unwrap();
        let r = integrable_triple_check(&t);
        assert!(r.all_pass(), "{r:?}");
        t.reduction.check(&t.grading).unwrap();
        assert_eq!(t.grading.depth(), HalfInt::from_twice(3));
        assert_eq!(t.degree(), Some(HalfInt::ONE));
    }

    #[test]
    fn json_roundtrip() {
        let (t, _) = so_integrable_triple(&[3, 2, 2]).unwrap();
        let j = t.to_json();
        let back = IntegrableTriple::from_json(t.algebra(), &j).unwrap();
        assert_eq!(back.to_json().p, j.p);
        assert!(integrable_triple_check(&back).all_pass());
    }

    #[test]
    fn rejects_other_partitions() {
        assert!(matches!(so_integrable_triple(&[3, 3, 1]), Err(Error::Partition(_))));
        assert!(matches!(so_integrable_triple(&[5, 4, 4]), Ok(_)));
    }

    #[test]
    fn g2_short_root_grading() {
        let g = Arc::new(build_g2().unwrap());
        let s = g2_triple(&g, "~A1").unwrap();
        let gr = DynkinGrading::from_triple(&s).unwrap();
        assert_eq!(gr.depth(), HalfInt::from_twice(3));
        assert_eq!(gr.piece_dim(HalfInt::HALF), 2);
        assert_eq!(gr.piece_dim(HalfInt::ONE), 1);
        assert_eq!(gr.piece_dim(HalfInt::from_twice(3)), 2);
        let p = g2_triple(&g, "G2").unwrap();
        assert_eq!(DynkinGrading::from_triple(&p).unwrap().depth(), HalfInt::from_int(5));
    }
}
