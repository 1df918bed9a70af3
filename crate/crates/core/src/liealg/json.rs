use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::LieAlgebraSpec;
use crate::error::{Error, Result};
use crate::linalg::RatMatrix;
use crate::rational::{fmt_rational, parse_rational, Rational};
use num_bigint::BigInt;

/// Stable JSON form: `sc` lists `[i, j, k, num, den]` for `i < j`, and
/// `gram` holds the rows of the Gram matrix as rational strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieAlgebraJson {
    pub dim: usize,
    pub labels: Vec<String>,
    pub sc: Vec<(usize, usize, usize, String, String)>,
    pub gram: Vec<Vec<String>>,
    #[serde(default)]
    pub name: String,
}

impl LieAlgebraJson {
    pub fn from_spec(alg: &LieAlgebraSpec) -> Self {
        let dim = alg.dim();
        let mut sc = Vec::new();
        for i in 0..dim {
            for j in (i + 1)..dim {
                for (k, c) in alg.basis_bracket(i, j) {
                    sc.push((i, j, *k, c.numer().to_string(), c.denom().to_string()));
                }
            }
        }
        let gram = alg.gram().to_rows().iter().map(|r| r.iter().map(fmt_rational).collect()).collect();
        LieAlgebraJson { dim, labels: alg.labels().to_vec(), sc, gram, name: alg.name().to_string() }
    }

    pub fn to_spec(&self) -> Result<LieAlgebraSpec> {
        if self.labels.len() != self.dim || self.gram.len() != self.dim {
            return Err(Error::Dimension("labels or gram do not match dim".into()));
        }
        let mut brackets: Vec<((usize, usize), Vec<(usize, Rational)>)> = Vec::new();
        for (i, j, k, num, den) in &self.sc {
            let n: BigInt = num.parse().map_err(|_| Error::Parse(format!("bad numerator `{num}`")))?;
            let d: BigInt = den.parse().map_err(|_| Error::Parse(format!("bad denominator `{den}`")))?;
            if d.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            let c = Rational::new(n, d);
            match brackets.iter_mut().find(|(p, _)| *p == (*i, *j)) {
                Some((_, v)) => v.push((*k, c)),
                None => brackets.push(((*i, *j), vec![(*k, c)])),
            }
        }
        let rows = self
            .gram
            .iter()
            .map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let gram = RatMatrix::from_rows(rows)?;
        LieAlgebraSpec::from_structure_constants(self.name.clone(), self.labels.clone(), brackets, gram)
    }
}
