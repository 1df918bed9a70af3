use std::fmt;
use std::sync::Arc;

use num_traits::One;
use serde::{Deserialize, Serialize};

use super::{LieAlgebraSpec, LieElement};
use crate::error::{Error, Result};
use crate::linalg::RatMatrix;
use crate::rational::{rat, Rational};

fn unit(n: usize, i: usize, j: usize) -> RatMatrix {
    let mut m = RatMatrix::zeros(n, n);
    m[(i, j)] = Rational::one();
    m
}

/// `sl_n` with basis `E_ij` (i < j), `H_i = E_ii − E_{i+1,i+1}`, `E_ij`
/// (i > j), labels 1-based.
pub fn build_sl(n: usize) -> Result<LieAlgebraSpec> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("sl_n needs n >= 2, got {n}")));
    }
    let mut labels = Vec::new();
    let mut mats = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            labels.push(format!("E{}{}", i + 1, j + 1));
            mats.push(unit(n, i, j));
        }
    }
    for i in 0..n - 1 {
        labels.push(format!("H{}", i + 1));
        mats.push(unit(n, i, i).sub(&unit(n, i + 1, i + 1)));
    }
    for i in 0..n {
        for j in 0..i {
            labels.push(format!("E{}{}", i + 1, j + 1));
            mats.push(unit(n, i, j));
        }
    }
    LieAlgebraSpec::from_matrix_basis(format!("sl({n})"), labels, mats, true)
}

/// `sp_n` (n even) preserving `J = [[0, I], [−I, 0]]`: matrices
/// `[[A, B], [C, −Aᵀ]]` with `B`, `C` symmetric.
pub fn build_sp(n: usize) -> Result<LieAlgebraSpec> {
    if n < 2 || n % 2 != 0 {
        return Err(Error::InvalidParameter(format!("sp_n needs even n >= 2, got {n}")));
    }
    let m = n / 2;
    let mut labels = Vec::new();
    let mut mats = Vec::new();
    for i in 0..m {
        for j in 0..m {
            labels.push(format!("A{}{}", i + 1, j + 1));
            mats.push(unit(n, i, j).sub(&unit(n, m + j, m + i)));
        }
    }
    for i in 0..m {
        for j in i..m {
            labels.push(format!("B{}{}", i + 1, j + 1));
            let b = if i == j { unit(n, i, m + i) } else { unit(n, i, m + j).add(&unit(n, j, m + i)) };
            mats.push(b);
            labels.push(format!("C{}{}", i + 1, j + 1));
            let c = if i == j { unit(n, m + i, i) } else { unit(n, m + i, j).add(&unit(n, m + j, i)) };
            mats.push(c);
        }
    }
    LieAlgebraSpec::from_matrix_basis(format!("sp({n})"), labels, mats, true)
}

/// Index `(a, i, j)`: block `a`, copy `i`, position `j`, all 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct IndexTriple(pub usize, pub usize, pub usize);

impl fmt::Display for IndexTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.0, self.1, self.2)
    }
}

/// Index bookkeeping of `so_N` realized from a partition: the index set, the
/// involution `(a,i,j)' = (a, r_a+1−i, p_a+1−j)` and the signs `ε`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SoIndexing {
    /// `(part, multiplicity)` with strictly decreasing parts.
    pub parts: Vec<(usize, usize)>,
    pub index: Vec<IndexTriple>,
    prime: Vec<usize>,
    eps: Vec<i64>,
    /// Basis pairs `(α, β)` as positions into `index`.
    pairs: Vec<(usize, usize)>,
}

impl SoIndexing {
    /// Groups a partition (any order, with repetitions) into decreasing
    /// `(part, multiplicity)` form.
    pub fn group_partition(partition: &[usize]) -> Result<Vec<(usize, usize)>> {
        if partition.is_empty() || partition.contains(&0) {
            return Err(Error::Partition("parts must be positive and nonempty".into()));
        }
        let mut sorted = partition.to_vec();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        let mut out: Vec<(usize, usize)> = Vec::new();
        for p in sorted {
            match out.last_mut() {
                Some((q, r)) if *q == p => *r += 1,
                _ => out.push((p, 1)),
            }
        }
        Ok(out)
    }

    /// Index set ordered lexicographically, for any partition.
    pub fn index_set(parts: &[(usize, usize)]) -> Vec<IndexTriple> {
        let mut index = Vec::new();
        for (a, &(p, r)) in parts.iter().enumerate() {
            for i in 1..=r {
                for j in 1..=p {
                    index.push(IndexTriple(a + 1, i, j));
                }
            }
        }
        index
    }

    pub fn new(partition: &[usize]) -> Result<Self> {
        let parts = Self::group_partition(partition)?;
        let n: usize = parts.iter().map(|(p, r)| p * r).sum();
        if n < 3 {
            return Err(Error::Partition(format!("so_N needs N >= 3, got {n}")));
        }
        if let Some((p, r)) = parts.iter().find(|(p, r)| p % 2 == 0 && r % 2 == 1) {
            return Err(Error::Partition(format!(
                "even part {p} has odd multiplicity {r}; not an orthogonal partition"
            )));
        }
        let index = Self::index_set(&parts);
        let pos = |t: &IndexTriple| index.binary_search(t).expect("index triple");
        let prime: Vec<usize> = index
            .iter()
            .map(|&IndexTriple(a, i, j)| {
                let (p, r) = parts[a - 1];
                pos(&IndexTriple(a, r + 1 - i, p + 1 - j))
            })
            .collect();
        let eps: Vec<i64> = index
            .iter()
            .map(|&IndexTriple(a, i, j)| {
                let (p, r) = parts[a - 1];
                let sign = |e: usize| if e % 2 == 0 { 1 } else { -1 };
                if i <= r.div_ceil(2) {
                    sign((i - 1) * p + j)
                } else {
                    -sign((i - 1) * p + j + r)
                }
            })
            .collect();
        for (k, &kp) in prime.iter().enumerate() {
            if eps[k] != eps[kp] {
                return Err(Error::Invariant(format!("ε not invariant under the involution at {}", index[k])));
            }
        }
        let mut pairs = Vec::new();
        let size = index.len();
        for a in 0..size {
            for b in 0..size {
                if b == prime[a] {
                    continue;
                }
                if (a, b) < (prime[b], prime[a]) {
                    pairs.push((a, b));
                }
            }
        }
        Ok(SoIndexing { parts, index, prime, eps, pairs })
    }

    pub fn n(&self) -> usize {
        self.index.len()
    }

    pub fn position(&self, t: IndexTriple) -> Result<usize> {
        self.index.binary_search(&t).map_err(|_| Error::InvalidParameter(format!("no index ({t})")))
    }

    pub fn prime(&self, t: IndexTriple) -> Result<IndexTriple> {
        Ok(self.index[self.prime[self.position(t)?]])
    }

    pub fn epsilon(&self, t: IndexTriple) -> Result<i64> {
        Ok(self.eps[self.position(t)?])
    }

    /// Symmetric form `⟨e_α|e_β⟩ = −δ_{α,β'} ε_α` on the defining space.
    pub fn bilinear_form(&self) -> RatMatrix {
        let n = self.n();
        let mut m = RatMatrix::zeros(n, n);
        for a in 0..n {
            m[(a, self.prime[a])] = rat(-self.eps[a]);
        }
        m
    }

    /// Matrix `F_{αβ} = E_{αβ} − ε_α ε_β E_{β'α'}`.
    pub fn f_matrix(&self, alpha: IndexTriple, beta: IndexTriple) -> Result<RatMatrix> {
        let (a, b) = (self.position(alpha)?, self.position(beta)?);
        Ok(self.f_matrix_pos(a, b))
    }

    fn f_matrix_pos(&self, a: usize, b: usize) -> RatMatrix {
        let n = self.n();
        let mut m = unit(n, a, b);
        m[(self.prime[b], self.prime[a])] -= rat(self.eps[a] * self.eps[b]);
        m
    }

    /// `F_{αβ}` as an element of the algebra built by
    /// [`build_so_from_partition`] with this indexing.
    pub fn f_element(&self, alg: &Arc<LieAlgebraSpec>, alpha: IndexTriple, beta: IndexTriple) -> Result<LieElement> {
        let (a, b) = (self.position(alpha)?, self.position(beta)?);
        if b == self.prime[a] {
            return Ok(LieElement::zero(alg));
        }
        if let Ok(k) = self.pairs.binary_search(&(a, b)) {
            return Ok(LieElement::basis(alg, k));
        }
        // F_{αβ} = −ε_α ε_β F_{β'α'}
        let k = self
            .pairs
            .binary_search(&(self.prime[b], self.prime[a]))
            .map_err(|_| Error::Invariant("missing canonical pair".into()))?;
        Ok(LieElement::basis(alg, k).scale(&rat(-self.eps[a] * self.eps[b])))
    }

    /// `E_{αβ}` as a matrix.
    pub fn unit_matrix(&self, alpha: IndexTriple, beta: IndexTriple) -> Result<RatMatrix> {
        Ok(unit(self.n(), self.position(alpha)?, self.position(beta)?))
    }

    pub fn basis_pairs(&self) -> Vec<(IndexTriple, IndexTriple)> {
        self.pairs.iter().map(|&(a, b)| (self.index[a], self.index[b])).collect()
    }
}

/// `so_N = {A : A† = −A}` for the form attached to the partition, with basis
/// the canonical `F_{αβ}` ordered lexicographically by `(α, β)`.
pub fn build_so_from_partition(partition: &[usize]) -> Result<(LieAlgebraSpec, SoIndexing)> {
    let idx = SoIndexing::new(partition)?;
    let mut labels = Vec::new();
    let mut mats = Vec::new();
    for &(a, b) in &idx.pairs {
        labels.push(format!("F({}|{})", idx.index[a], idx.index[b]));
        mats.push(idx.f_matrix_pos(a, b));
    }
    let n = idx.n();
    let name = format!("so({n})[{}]", partition_string(&idx.parts));
    let alg = LieAlgebraSpec::from_matrix_basis(name, labels, mats, n >= 3)?;
    Ok((alg, idx))
}

pub(crate) fn partition_string(parts: &[(usize, usize)]) -> String {
    let mut v = Vec::new();
    for &(p, r) in parts {
        for _ in 0..r {
            v.push(p.to_string());
        }
    }
    v.join(",")
}

/// Adjoint `A†` with respect to the form of `idx`.
pub fn so_adjoint(idx: &SoIndexing, m: &RatMatrix) -> RatMatrix {
    let form = idx.bilinear_form();
    let inv = form.inverse().expect("nondegenerate form");
    inv.mul(&m.transpose()).mul(&form)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        assert_eq!(build_sl(2).unwrap().dim(), 3);
        assert_eq!(build_sl(3).unwrap().dim(), 8);
        assert_eq!(build_sp(4).unwrap().dim(), 10);
        assert_eq!(build_sp(2).unwrap().dim(), 3);
        assert!(build_sp(3).is_err());
        assert!(build_sl(1).is_err());
        assert_eq!(build_so_from_partition(&[3, 2, 2]).unwrap().0.dim(), 21);
        assert_eq!(build_so_from_partition(&[2, 2]).unwrap().0.dim(), 6);
    }

    #[test]
    fn malformed_partitions() {
        assert!(matches!(build_so_from_partition(&[2, 1]), Err(Error::Partition(_))));
        assert!(matches!(build_so_from_partition(&[]), Err(Error::Partition(_))));
        assert!(matches!(build_so_from_partition(&[1, 1]), Err(Error::Partition(_))));
    }

    #[test]
    fn form_symmetric_and_involution() {
        let idx = SoIndexing::new(&[3, 2, 2]).unwrap();
        let form = idx.bilinear_form();
        assert_eq!(form, form.transpose());
        for &t in &idx.index {
            let tp = idx.prime(t).unwrap();
            assert_eq!(idx.prime(tp).unwrap(), t);
            assert_eq!(idx.epsilon(t).unwrap(), idx.epsilon(tp).unwrap());
        }
    }

    #[test]
    fn basis_is_skew_adjoint() {
        let (alg, idx) = build_so_from_partition(&[3, 2, 2]).unwrap();
        for b in alg.defining().unwrap().basis() {
            assert_eq!(so_adjoint(&idx, b), b.scale(&rat(-1)));
        }
    }
}
