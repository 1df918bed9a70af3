//! Matrix differential operators with `∂` written to the right.

use super::diffpoly::DiffPoly;
use super::lambda::LambdaPoly;
use super::syntax::{lambda_text, parse_with_symbol, VarSet};
use super::table::GenBracketTable;
use crate::error::{Error, Result};

/// `ℓ × ℓ` grid of operators `Σ_k a_k ∂^k`; each entry stores the `a_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixDiffOperator {
    entries: Vec<Vec<LambdaPoly>>,
}

impl MatrixDiffOperator {
    pub fn new(entries: Vec<Vec<LambdaPoly>>) -> Result<Self> {
        let n = entries.len();
        if entries.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension("operator matrix must be square".into()));
        }
        Ok(MatrixDiffOperator { entries })
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &LambdaPoly {
        &self.entries[i][j]
    }

    /// `(Hv)_i = Σ_j H_ij(∂) v_j`.
    pub fn apply(&self, v: &[DiffPoly]) -> Result<Vec<DiffPoly>> {
        if v.len() != self.size() {
            return Err(Error::Dimension(format!("vector of length {} for a {0}x{0} operator", self.size())));
        }
        Ok(self
            .entries
            .iter()
            .map(|row| {
                let mut acc = DiffPoly::zero();
                for (h, x) in row.iter().zip(v) {
                    acc += &h.apply_operator(x);
                }
                acc
            })
            .collect())
    }

    /// Entry text with `D` for `∂`, e.g. `u[1] + 2*u[0]*D + c*D^3`.
    pub fn entry_text(&self, i: usize, j: usize, vars: &VarSet) -> String {
        lambda_text(&self.entries[i][j], "D", vars)
    }

    pub fn parse_entry(s: &str, vars: &VarSet) -> Result<LambdaPoly> {
        parse_with_symbol(s, vars, "D")
    }

    /// Rows of entry texts.
    pub fn to_text_rows(&self, vars: &VarSet) -> Vec<Vec<String>> {
        (0..self.size()).map(|i| (0..self.size()).map(|j| self.entry_text(i, j, vars)).collect()).collect()
    }
}

/// `H_ij(∂) = {u_j ∂ u_i}→`.
pub fn poisson_structure_matrix(t: &GenBracketTable) -> MatrixDiffOperator {
    let n = t.nvars();
    MatrixDiffOperator { entries: (0..n).map(|i| (0..n).map(|j| t.get(j, i).clone()).collect()).collect() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn virasoro_structure() {
        let t = GenBracketTable::virasoro();
        let h = poisson_structure_matrix(&t);
        assert_eq!(h.entry_text(0, 0, t.vars()), "u[1] + 2*u[0]*D + c*D^3");
        let d = poisson_structure_matrix(&GenBracketTable::derivation());
        assert_eq!(d.entry_text(0, 0, &VarSet::named(["u"])), "D");
        let back = MatrixDiffOperator::parse_entry("u[1] + 2*u[0]*D + c*D^3", t.vars()).unwrap();
        assert_eq!(&back, h.entry(0, 0));
    }
}
