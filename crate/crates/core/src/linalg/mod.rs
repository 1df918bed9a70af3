//! Dense exact linear algebra over ℚ.
//!
//! All eliminations use the same deterministic pivoting rule (leftmost pivot
//! column, first row with a nonzero entry in it), so kernels, solutions and
//! echelon bases are reproducible normal forms.

mod poly1;

use std::fmt;

use num_traits::{One, Zero};

pub use poly1::{squarefree_part, Poly1};

use crate::error::{Error, Result};
use crate::rational::{fmt_rational, rat, Rational};

pub type Vector = Vec<Rational>;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(RatMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        RatMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()).expect("ragged rows")
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, cols: &[Vector]) -> Self {
        let mut m = RatMatrix::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn diagonal(d: &[Rational]) -> Self {
        let mut m = RatMatrix::zeros(d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = RatMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn add(&self, o: &RatMatrix) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &RatMatrix) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        RatMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    pub fn add_diagonal(&mut self, c: &Rational) {
        for i in 0..self.rows.min(self.cols) {
            self[(i, i)] += c;
        }
    }

    pub fn mul(&self, o: &RatMatrix) -> Self {
        assert_eq!(self.cols, o.rows, "matrix product shape");
        let mut out = RatMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        out.data[i * o.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vector {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    /// Commutator `[A, B] = AB − BA`.
    pub fn commutator(&self, o: &RatMatrix) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = RatMatrix::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut m = self.to_rows();
        let pivots = rref_rows(&mut m, self.cols);
        (RatMatrix::from_rows_unchecked(m, self.rows, self.cols), pivots)
    }

    fn from_rows_unchecked(rows: Vec<Vec<Rational>>, r: usize, c: usize) -> Self {
        RatMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : Mv = 0}`: one vector per free column, with a 1 in that
    /// column and zeros in the other free columns.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![Rational::zero(); self.cols];
                v[free] = Rational::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(row, free)].clone();
                }
                v
            })
            .collect()
    }

    /// A solution of `Mv = b` with free coordinates set to zero, or `None`
    /// when `b` is not in the image.
    pub fn solve_linear(&self, b: &[Rational]) -> Result<Option<Vector>> {
        if b.len() != self.rows {
            return Err(Error::Dimension(format!("right-hand side has length {}, expected {}", b.len(), self.rows)));
        }
        let mut aug: Vec<Vec<Rational>> = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.push(b[i].clone());
                r
            })
            .collect();
        let pivots = rref_rows(&mut aug, self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut v = vec![Rational::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = aug[row][self.cols].clone();
        }
        Ok(Some(v))
    }

    pub fn inverse(&self) -> Option<RatMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let mut aug: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
                r
            })
            .collect();
        let pivots = rref_rows(&mut aug, 2 * n);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(RatMatrix::from_rows_unchecked(aug.into_iter().map(|r| r[n..].to_vec()).collect(), n, n))
    }

    /// Monic least-degree polynomial annihilating the matrix.
    ///
    /// Krylov sequences `v, Mv, M²v, …` are grown from the standard basis
    /// vectors; the answer is the lcm of their local minimal polynomials.
    /// Basis vectors already inside the union of earlier Krylov spaces are
    /// skipped, since the running lcm annihilates them.
    pub fn minimal_polynomial(&self) -> Result<Poly1> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut global = Echelon::new(n);
        let mut mu = Poly1::one();
        for i in 0..n {
            let mut e = vec![Rational::zero(); n];
            e[i] = Rational::one();
            if global.contains(&e) {
                continue;
            }
            let local = krylov_minpoly(self, e, &mut global);
            mu = mu.lcm(&local);
        }
        Ok(mu)
    }

    /// Additive Jordan–Chevalley decomposition `M = S + N` with `S`
    /// semisimple, `N` nilpotent, `SN = NS`, both polynomials in `M`.
    ///
    /// Newton iteration `S ← S − q(S)·q'(S)⁻¹` on the squarefree part `q` of
    /// the minimal polynomial.
    pub fn chevalley_decomposition(&self) -> Result<(RatMatrix, RatMatrix)> {
        let mu = self.minimal_polynomial()?;
        let q = squarefree_part(&mu)?;
        let dq = q.derivative();
        let mut s = self.clone();
        loop {
            let qs = q.eval_matrix(&s);
            if qs.is_zero() {
                break;
            }
            let inv = dq
                .eval_matrix(&s)
                .inverse()
                .ok_or_else(|| Error::Invariant("q'(S) not invertible in Newton step".into()))?;
            s = s.sub(&qs.mul(&inv));
        }
        let n = self.sub(&s);
        Ok((s, n))
    }
}

/// Local minimal polynomial of `v` under `m`, registering the Krylov vectors
/// in `global`.
fn krylov_minpoly(m: &RatMatrix, v: Vector, global: &mut Echelon) -> Poly1 {
    let n = m.rows();
    // Rows are (reduced vector, combination of powers producing it).
    let mut basis: Vec<(Vector, Vec<Rational>, usize)> = Vec::new();
    let mut w = v;
    for k in 0..=n {
        global.insert(&w);
        let mut red = w.clone();
        let mut combo = vec![Rational::zero(); n + 1];
        combo[k] = Rational::one();
        for (bv, bc, piv) in &basis {
            if red[*piv].is_zero() {
                continue;
            }
            let f = red[*piv].clone();
            for (x, y) in red.iter_mut().zip(bv) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            for (x, y) in combo.iter_mut().zip(bc) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        match red.iter().position(|x| !x.is_zero()) {
            None => return Poly1::new(combo).monic(),
            Some(p) => {
                let inv = red[p].recip();
                for x in red.iter_mut() {
                    *x *= &inv;
                }
                for x in combo.iter_mut() {
                    *x *= &inv;
                }
                for (bv, bc, _) in basis.iter_mut() {
                    if bv[p].is_zero() {
                        continue;
                    }
                    let f = bv[p].clone();
                    for (x, y) in bv.iter_mut().zip(&red) {
                        if !y.is_zero() {
                            *x -= &f * y;
                        }
                    }
                    for (x, y) in bc.iter_mut().zip(&combo) {
                        if !y.is_zero() {
                            *x -= &f * y;
                        }
                    }
                }
                basis.push((red, combo, p));
            }
        }
        w = m.mul_vec(&w);
    }
    unreachable!("Krylov sequence longer than the dimension")
}

/// In-place RREF of the first `cols` columns; returns pivot columns.
pub(crate) fn rref_rows(m: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Incrementally maintained reduced echelon basis of a subspace of ℚⁿ.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    rows: Vec<(usize, Vector)>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon { dim, rows: Vec::new() }
    }

    pub fn from_vectors<'a>(dim: usize, vs: impl IntoIterator<Item = &'a Vector>) -> Self {
        let mut e = Echelon::new(dim);
        for v in vs {
            e.insert(v);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn reduce(&self, v: &[Rational]) -> Vector {
        let mut red = v.to_vec();
        for (p, row) in &self.rows {
            if red[*p].is_zero() {
                continue;
            }
            let f = red[*p].clone();
            for (x, y) in red.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        red
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut red = self.reduce(v);
        let Some(p) = red.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = red[p].recip();
        for x in red.iter_mut() {
            *x *= &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&red) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.rows.push((p, red));
        self.rows.sort_by_key(|(p, _)| *p);
        true
    }

    /// Basis in reduced echelon form, ordered by pivot column.
    pub fn basis(&self) -> Vec<Vector> {
        self.rows.iter().map(|(_, r)| r.clone()).collect()
    }

    pub fn contains_all(&self, other: &Echelon) -> bool {
        other.rows.iter().all(|(_, r)| self.contains(r))
    }
}

/// Canonical reduced echelon basis of the span of `vs`.
pub fn span_basis(dim: usize, vs: &[Vector]) -> Vec<Vector> {
    Echelon::from_vectors(dim, vs).basis()
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(fmt_rational).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn kernel_examples() {
        let m = RatMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.kernel_basis(), vec![v(&[-2, 1])]);
        assert!(RatMatrix::identity(3).kernel_basis().is_empty());
        assert_eq!(RatMatrix::zeros(2, 2).kernel_basis(), vec![v(&[1, 0]), v(&[0, 1])]);
    }

    #[test]
    fn solve_examples() {
        let i2 = RatMatrix::identity(2);
        assert_eq!(i2.solve_linear(&v(&[3, 5])).unwrap(), Some(v(&[3, 5])));
        let row = RatMatrix::from_i64(&[&[1, 1]]);
        assert_eq!(row.solve_linear(&v(&[2])).unwrap(), Some(v(&[2, 0])));
        let col = RatMatrix::from_i64(&[&[1], &[0]]);
        assert_eq!(col.solve_linear(&v(&[0, 1])).unwrap(), None);
        assert!(matches!(col.solve_linear(&v(&[1])), Err(Error::Dimension(_))));
    }

    #[test]
    fn minimal_polynomial_examples() {
        // companion matrix of λ² − 2
        let c = RatMatrix::from_i64(&[&[0, 2], &[1, 0]]);
        assert_eq!(c.minimal_polynomial().unwrap(), Poly1::from_i64(&[-2, 0, 1]));
        assert_eq!(RatMatrix::zeros(3, 3).minimal_polynomial().unwrap(), Poly1::monomial(1));
        assert!(matches!(RatMatrix::zeros(2, 3).minimal_polynomial(), Err(Error::NotSquare { .. })));
        // diag(1,1,2) has minimal polynomial (λ−1)(λ−2)
        let d = RatMatrix::diagonal(&[rat(1), rat(1), rat(2)]);
        assert_eq!(d.minimal_polynomial().unwrap(), Poly1::from_i64(&[2, -3, 1]));
    }

    #[test]
    fn chevalley_examples() {
        let m = RatMatrix::from_i64(&[&[1, 1], &[0, 1]]);
        let (s, n) = m.chevalley_decomposition().unwrap();
        assert_eq!(s, RatMatrix::identity(2));
        assert_eq!(n, RatMatrix::from_i64(&[&[0, 1], &[0, 0]]));
        let d = RatMatrix::diagonal(&[rat(3), ratio(1, 2), rat(-1)]);
        let (s, n) = d.chevalley_decomposition().unwrap();
        assert_eq!(s, d);
        assert!(n.is_zero());
    }

    #[test]
    fn inverse_roundtrip() {
        let m = RatMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), RatMatrix::identity(2));
        assert!(RatMatrix::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn echelon_span() {
        let mut e = Echelon::new(3);
        assert!(e.insert(&v(&[0, 2, 2])));
        assert!(!e.insert(&v(&[0, 1, 1])));
        assert!(e.insert(&v(&[1, 1, 0])));
        assert_eq!(e.basis(), vec![v(&[1, 0, -1]), v(&[0, 1, 1])]);
        assert!(e.contains(&v(&[1, 2, 1])));
    }
}
