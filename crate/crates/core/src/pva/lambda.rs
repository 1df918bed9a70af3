//! Polynomials in `λ` with differential polynomial coefficients.

use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;

use super::diffpoly::DiffPoly;
use crate::rational::Rational;

/// `Σ_k coeffs[k] λ^k`, without trailing zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LambdaPoly {
    coeffs: Vec<DiffPoly>,
}

pub(crate) fn binomial(n: u32, k: u32) -> Rational {
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Rational::from_integer(acc)
}

impl LambdaPoly {
    pub fn zero() -> Self {
        LambdaPoly::default()
    }

    pub fn constant(p: DiffPoly) -> Self {
        LambdaPoly::from_coeffs(vec![p])
    }

    /// `p λ^k`.
    pub fn monomial(p: DiffPoly, k: usize) -> Self {
        let mut coeffs = vec![DiffPoly::zero(); k];
        coeffs.push(p);
        LambdaPoly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<DiffPoly>) -> Self {
        while coeffs.last().is_some_and(DiffPoly::is_zero) {
            coeffs.pop();
        }
        LambdaPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[DiffPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> DiffPoly {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Value at `λ = 0`.
    pub fn at_zero(&self) -> DiffPoly {
        self.coeff(0)
    }

    pub fn add_at(&mut self, k: usize, p: &DiffPoly) {
        if p.is_zero() {
            return;
        }
        if self.coeffs.len() <= k {
            self.coeffs.resize(k + 1, DiffPoly::zero());
        }
        self.coeffs[k] += p;
        while self.coeffs.last().is_some_and(DiffPoly::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn scale(&self, s: &Rational) -> LambdaPoly {
        LambdaPoly::from_coeffs(self.coeffs.iter().map(|c| c.scale(s)).collect())
    }

    /// Left multiplication of every coefficient by `p`.
    pub fn mul_diffpoly(&self, p: &DiffPoly) -> LambdaPoly {
        LambdaPoly::from_coeffs(self.coeffs.iter().map(|c| p * c).collect())
    }

    /// Product as polynomials in `λ` (no `∂` action).
    pub fn mul(&self, o: &LambdaPoly) -> LambdaPoly {
        let mut out = LambdaPoly::zero();
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out.add_at(i + j, &(a * b));
            }
        }
        out
    }

    /// `(λ + ∂)^n` applied to `self`, `∂` acting on the coefficients.
    pub fn shift_pow(&self, n: u32) -> LambdaPoly {
        let mut out = LambdaPoly::zero();
        for (s, a) in self.coeffs.iter().enumerate() {
            let mut d = a.clone();
            for r in 0..=n {
                if d.is_zero() {
                    break;
                }
                out.add_at(s + (n - r) as usize, &d.scale(&binomial(n, r)));
                d = d.d_total();
            }
        }
        out
    }

    /// `(−λ − ∂)^n` applied to `self`.
    pub fn neg_shift_pow(&self, n: u32) -> LambdaPoly {
        let p = self.shift_pow(n);
        if n % 2 == 0 {
            p
        } else {
            -&p
        }
    }

    /// `Σ_k c_k (λ + ∂)^k x` for `self = Σ_k c_k λ^k`, i.e. the operator
    /// obtained by substituting `λ ↦ λ + ∂` acting to the right.
    pub fn apply_shifted(&self, x: &LambdaPoly) -> LambdaPoly {
        let mut out = LambdaPoly::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let t = x.shift_pow(k as u32).mul_diffpoly(c);
            out = &out + &t;
        }
        out
    }

    /// `Σ_k c_k ∂^k x`: the `λ ↦ ∂` operator acting to the right.
    pub fn apply_operator(&self, x: &DiffPoly) -> DiffPoly {
        let mut out = DiffPoly::zero();
        let mut d = x.clone();
        for c in &self.coeffs {
            if !c.is_zero() {
                out += &(c * &d);
            }
            d = d.d_total();
        }
        out
    }

    /// `Σ_k (−λ − ∂)^k c_k`: the λ-polynomial of the skew-symmetric partner.
    pub fn skew_partner(&self) -> LambdaPoly {
        let mut out = LambdaPoly::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            out = &out + &LambdaPoly::constant(c.clone()).neg_shift_pow(k as u32);
        }
        -&out
    }

    pub fn map_coeffs(&self, f: impl Fn(&DiffPoly) -> DiffPoly) -> LambdaPoly {
        LambdaPoly::from_coeffs(self.coeffs.iter().map(f).collect())
    }
}

impl Add<&LambdaPoly> for &LambdaPoly {
    type Output = LambdaPoly;
    fn add(self, o: &LambdaPoly) -> LambdaPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        LambdaPoly::from_coeffs((0..n).map(|k| &self.coeff(k) + &o.coeff(k)).collect())
    }
}

impl Sub<&LambdaPoly> for &LambdaPoly {
    type Output = LambdaPoly;
    fn sub(self, o: &LambdaPoly) -> LambdaPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        LambdaPoly::from_coeffs((0..n).map(|k| &self.coeff(k) - &o.coeff(k)).collect())
    }
}

impl Neg for &LambdaPoly {
    type Output = LambdaPoly;
    fn neg(self) -> LambdaPoly {
        LambdaPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Zero for LambdaPoly {
    fn zero() -> Self {
        LambdaPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl Add for LambdaPoly {
    type Output = LambdaPoly;
    fn add(self, o: LambdaPoly) -> LambdaPoly {
        &self + &o
    }
}
