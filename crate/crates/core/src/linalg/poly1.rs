use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::RatMatrix;
use crate::rational::{fmt_rational, rat, Rational};

/// Univariate polynomial over ℚ, coefficients indexed by degree.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly1 {
    coeffs: Vec<Rational>,
}

impl Poly1 {
    pub fn zero() -> Self {
        Poly1 { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Poly1::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly1::new(vec![c])
    }

    /// The monomial `λ^k`.
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![Rational::zero(); k + 1];
        c[k] = Rational::one();
        Poly1 { coeffs: c }
    }

    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly1 { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly1::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Poly1::zero(),
            Some(l) => {
                let inv = l.recip();
                Poly1::new(self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Poly1::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn add(&self, o: &Poly1) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly1::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &Poly1) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly1::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }

    pub fn mul(&self, o: &Poly1) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly1::zero();
        }
        let mut c = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly1::new(c)
    }

    pub fn derivative(&self) -> Self {
        Poly1::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * rat(k as i64)).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly1) -> (Poly1, Poly1) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1;
            let c = &rem[k] * &lead_inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k - dd + j] -= &c * dc;
                }
                quot[k - dd] = c;
            }
            rem.pop();
        }
        (Poly1::new(quot), Poly1::new(rem))
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, o: &Poly1) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn lcm(&self, o: &Poly1) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly1::zero();
        }
        let g = self.gcd(o);
        self.mul(o).div_rem(&g).0.monic()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_matrix(&self, m: &RatMatrix) -> RatMatrix {
        let n = m.rows();
        let mut acc = RatMatrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m);
            acc.add_diagonal(c);
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Whether the polynomial is `λ^k` up to a scalar.
    pub fn is_monomial(&self) -> bool {
        self.coeffs.iter().filter(|c| !c.is_zero()).count() == 1
    }
}

/// Product of the distinct irreducible factors, monic: `p / gcd(p, p')`.
pub fn squarefree_part(p: &Poly1) -> Result<Poly1> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let g = p.gcd(&p.derivative());
    Ok(p.div_rem(&g).0.monic())
}

impl fmt::Display for Poly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
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
            let mono = match k {
                0 => String::new(),
                1 => "λ".to_string(),
                _ => format!("λ^{k}"),
            };
            if mono.is_empty() {
                write!(f, "{}", fmt_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}{mono}", fmt_rational(&a))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squarefree_examples() {
        // λ³ − λ² → λ² − λ
        let p = Poly1::from_i64(&[0, 0, -1, 1]);
        assert_eq!(squarefree_part(&p).unwrap(), Poly1::from_i64(&[0, -1, 1]));
        let q = Poly1::from_i64(&[-2, 0, 1]);
        assert_eq!(squarefree_part(&q).unwrap(), q);
        // (λ − 1)⁴
        let l1 = Poly1::from_i64(&[-1, 1]);
        let p4 = l1.mul(&l1).mul(&l1).mul(&l1);
        assert_eq!(squarefree_part(&p4).unwrap(), l1);
        assert_eq!(squarefree_part(&Poly1::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn division_and_gcd() {
        let a = Poly1::from_i64(&[-1, 0, 1]); // λ² − 1
        let b = Poly1::from_i64(&[1, 1]); // λ + 1
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, Poly1::from_i64(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&Poly1::from_i64(&[1, 2, 1])), b);
        assert_eq!(a.lcm(&b), a);
        assert_eq!(format!("{}", Poly1::from_i64(&[0, -2, 0, 1])), "λ^3 - 2λ");
    }
}
