//! Differential polynomials `F[c_k][u_i^(n)]` with `∂u_i^(n) = u_i^(n+1)`
//! and `∂c_k = 0`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};
use rand::Rng;

use crate::rational::{rat, Rational};

/// A generator of the coefficient ring (`Param`) or of the differential
/// algebra (`Var`). Parameters sort before variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    Param(u16),
    Var { var: u32, order: u32 },
}

impl Gen {
    pub fn var(var: usize, order: u32) -> Gen {
        Gen::Var { var: var as u32, order }
    }

    pub fn is_param(self) -> bool {
        matches!(self, Gen::Param(_))
    }

    pub fn derivative(self) -> Option<Gen> {
        match self {
            Gen::Param(_) => None,
            Gen::Var { var, order } => Some(Gen::Var { var, order: order + 1 }),
        }
    }
}

/// Product of generator powers, factors sorted by generator with positive
/// exponents. Ordered by total degree, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Gen, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn gen(g: Gen) -> Self {
        Monomial(vec![(g, 1)])
    }

    pub fn from_factors(factors: impl IntoIterator<Item = (Gen, u32)>) -> Self {
        let mut m: BTreeMap<Gen, u32> = BTreeMap::new();
        for (g, e) in factors {
            if e > 0 {
                *m.entry(g).or_default() += e;
            }
        }
        Monomial(m.into_iter().collect())
    }

    pub fn factors(&self) -> &[(Gen, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    /// Degree in the differential variables only.
    pub fn u_degree(&self) -> u32 {
        self.0.iter().filter(|(g, _)| !g.is_param()).map(|(_, e)| e).sum()
    }

    pub fn param_degree(&self) -> u32 {
        self.degree() - self.u_degree()
    }

    /// Sum of derivative orders, counted with multiplicity.
    pub fn weight(&self) -> u32 {
        self.0
            .iter()
            .map(|(g, e)| match g {
                Gen::Var { order, .. } => order * e,
                Gen::Param(_) => 0,
            })
            .sum()
    }

    pub fn exponent(&self, g: Gen) -> u32 {
        self.0.iter().find(|(h, _)| *h == g).map_or(0, |(_, e)| *e)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + o.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < o.0.len() {
            match self.0[i].0.cmp(&o.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(o.0[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0, self.0[i].1 + o.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&o.0[j..]);
        Monomial(out)
    }

    /// Changes the exponent of `g` by `delta`; `None` if it would go negative.
    fn shift(&self, g: Gen, delta: i64) -> Option<Monomial> {
        let mut out = self.0.clone();
        match out.binary_search_by(|(h, _)| h.cmp(&g)) {
            Ok(pos) => {
                let e = out[pos].1 as i64 + delta;
                if e < 0 {
                    return None;
                }
                if e == 0 {
                    out.remove(pos);
                } else {
                    out[pos].1 = e as u32;
                }
            }
            Err(pos) => {
                if delta < 0 {
                    return None;
                }
                if delta > 0 {
                    out.insert(pos, (g, delta as u32));
                }
            }
        }
        Some(Monomial(out))
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// A differential polynomial with rational coefficients; zero coefficients
/// are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct DiffPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl DiffPoly {
    pub fn zero() -> Self {
        DiffPoly::default()
    }

    pub fn one() -> Self {
        DiffPoly::constant(rat(1))
    }

    pub fn constant(c: Rational) -> Self {
        DiffPoly::term(c, Monomial::one())
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        DiffPoly { terms }
    }

    /// `u_i^(n)`.
    pub fn var(i: usize, n: u32) -> Self {
        DiffPoly::term(rat(1), Monomial::gen(Gen::var(i, n)))
    }

    /// The `k`-th symbolic constant (`c` for `k = 0`).
    pub fn param(k: u16) -> Self {
        DiffPoly::term(rat(1), Monomial::gen(Gen::Param(k)))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = DiffPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one())
    }

    /// No differential variables occur (parameters may).
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.u_degree() == 0)
    }

    /// Part without differential variables.
    pub fn constant_part(&self) -> DiffPoly {
        DiffPoly {
            terms: self.terms.iter().filter(|(m, _)| m.u_degree() == 0).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Rational value if the polynomial is a bare number.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, s: &Rational) -> DiffPoly {
        if s.is_zero() {
            return DiffPoly::zero();
        }
        DiffPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial, s: &Rational) -> DiffPoly {
        if s.is_zero() {
            return DiffPoly::zero();
        }
        DiffPoly { terms: self.terms.iter().map(|(n, c)| (n.mul(m), c * s)).collect() }
    }

    pub fn pow(&self, k: u32) -> DiffPoly {
        let mut acc = DiffPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Total derivative `∂`.
    pub fn d_total(&self) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            for &(g, e) in m.factors() {
                let Some(dg) = g.derivative() else { continue };
                let nm = m.shift(g, -1).and_then(|x| x.shift(dg, 1)).expect("factor present");
                out.add_term(nm, c * rat(e as i64));
            }
        }
        out
    }

    pub fn d_total_n(&self, n: u32) -> DiffPoly {
        let mut p = self.clone();
        for _ in 0..n {
            p = p.d_total();
        }
        p
    }

    /// Partial derivative with respect to the generator `g`.
    pub fn partial(&self, g: Gen) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(g);
            if e > 0 {
                out.add_term(m.shift(g, -1).expect("factor present"), c * rat(e as i64));
            }
        }
        out
    }

    /// `∂/∂u_i^(n)`.
    pub fn partial_var(&self, i: usize, n: u32) -> DiffPoly {
        self.partial(Gen::var(i, n))
    }

    /// Formal antiderivative in the generator `g`.
    pub fn integrate_in(&self, g: Gen) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(g);
            out.add_term(m.shift(g, 1).expect("raising"), c / rat(e as i64 + 1));
        }
        out
    }

    pub fn generators(&self) -> BTreeSet<Gen> {
        self.terms.keys().flat_map(|m| m.factors().iter().map(|(g, _)| *g)).collect()
    }

    /// Indices of differential variables that occur.
    pub fn variables(&self) -> BTreeSet<usize> {
        self.generators()
            .into_iter()
            .filter_map(|g| match g {
                Gen::Var { var, .. } => Some(var as usize),
                Gen::Param(_) => None,
            })
            .collect()
    }

    /// Highest derivative order of `u_i`, if it occurs.
    pub fn max_order_of(&self, i: usize) -> Option<u32> {
        self.generators()
            .into_iter()
            .filter_map(|g| match g {
                Gen::Var { var, order } if var as usize == i => Some(order),
                _ => None,
            })
            .max()
    }

    /// Highest derivative order over all variables.
    pub fn order(&self) -> Option<u32> {
        self.generators()
            .into_iter()
            .filter_map(|g| match g {
                Gen::Var { order, .. } => Some(order),
                Gen::Param(_) => None,
            })
            .max()
    }

    pub fn max_u_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::u_degree).max().unwrap_or(0)
    }

    /// Substitution of variables: `u_i ↦ map(i)` (a new index) or `0`.
    pub fn map_vars(&self, map: impl Fn(usize) -> Option<usize>) -> DiffPoly {
        let mut out = DiffPoly::zero();
        'terms: for (m, c) in &self.terms {
            let mut fs = Vec::with_capacity(m.factors().len());
            for &(g, e) in m.factors() {
                match g {
                    Gen::Param(_) => fs.push((g, e)),
                    Gen::Var { var, order } => match map(var as usize) {
                        Some(j) => fs.push((Gen::var(j, order), e)),
                        None => continue 'terms,
                    },
                }
            }
            out.add_term(Monomial::from_factors(fs), c.clone());
        }
        out
    }

    /// Replaces the symbolic constants by numbers.
    pub fn eval_params(&self, values: &BTreeMap<u16, Rational>) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            let mut coef = c.clone();
            let mut fs = Vec::new();
            for &(g, e) in m.factors() {
                match g {
                    Gen::Param(k) if values.contains_key(&k) => {
                        let v = &values[&k];
                        for _ in 0..e {
                            coef *= v;
                        }
                    }
                    _ => fs.push((g, e)),
                }
            }
            out.add_term(Monomial::from_factors(fs), coef);
        }
        out
    }
}

impl Add<&DiffPoly> for &DiffPoly {
    type Output = DiffPoly;
    fn add(self, o: &DiffPoly) -> DiffPoly {
        let mut r = self.clone();
        r += o;
        r
    }
}

impl Sub<&DiffPoly> for &DiffPoly {
    type Output = DiffPoly;
    fn sub(self, o: &DiffPoly) -> DiffPoly {
        let mut r = self.clone();
        r -= o;
        r
    }
}

impl AddAssign<&DiffPoly> for DiffPoly {
    fn add_assign(&mut self, o: &DiffPoly) {
        for (m, c) in &o.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&DiffPoly> for DiffPoly {
    fn sub_assign(&mut self, o: &DiffPoly) {
        for (m, c) in &o.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl Neg for &DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        DiffPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Mul<&DiffPoly> for &DiffPoly {
    type Output = DiffPoly;
    fn mul(self, o: &DiffPoly) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr<DiffPoly> for DiffPoly {
            type Output = DiffPoly;
            fn $f(self, o: DiffPoly) -> DiffPoly {
                (&self).$f(&o)
            }
        }
        impl $tr<&DiffPoly> for DiffPoly {
            type Output = DiffPoly;
            fn $f(self, o: &DiffPoly) -> DiffPoly {
                (&self).$f(o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        -&self
    }
}

impl From<Rational> for DiffPoly {
    fn from(c: Rational) -> Self {
        DiffPoly::constant(c)
    }
}

impl One for DiffPoly {
    fn one() -> Self {
        DiffPoly::one()
    }
}

impl Zero for DiffPoly {
    fn zero() -> Self {
        DiffPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Shape of randomly sampled differential polynomials.
#[derive(Clone, Copy, Debug)]
pub struct RandomShape {
    pub nvars: usize,
    pub max_order: u32,
    pub max_degree: u32,
    pub max_terms: usize,
    pub coeff_bound: i64,
    /// Allow the symbolic constant `c` in coefficients.
    pub with_param: bool,
}

impl Default for RandomShape {
    fn default() -> Self {
        RandomShape { nvars: 1, max_order: 3, max_degree: 3, max_terms: 4, coeff_bound: 5, with_param: false }
    }
}

pub fn random_diffpoly(shape: &RandomShape, rng: &mut impl Rng) -> DiffPoly {
    let mut p = DiffPoly::zero();
    let nterms = rng.gen_range(1..=shape.max_terms.max(1));
    for _ in 0..nterms {
        let deg = rng.gen_range(0..=shape.max_degree);
        let mut fs = Vec::new();
        for _ in 0..deg {
            let i = rng.gen_range(0..shape.nvars.max(1));
            let n = rng.gen_range(0..=shape.max_order);
            fs.push((Gen::var(i, n), 1));
        }
        if shape.with_param && rng.gen_bool(0.3) {
            fs.push((Gen::Param(0), 1));
        }
        let c = rng.gen_range(-shape.coeff_bound..=shape.coeff_bound);
        p.add_term(Monomial::from_factors(fs), rat(c));
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(n: u32) -> DiffPoly {
        DiffPoly::var(0, n)
    }

    #[test]
    fn total_derivative() {
        assert_eq!(u(0).d_total(), u(1));
        assert_eq!((&u(0) * &u(0)).d_total(), (&u(0) * &u(1)).scale(&rat(2)));
        assert!(DiffPoly::one().d_total().is_zero());
        assert!(DiffPoly::param(0).d_total().is_zero());
    }

    #[test]
    fn partials_and_integration() {
        let p = &(&u(0) * &u(0)) * &u(2);
        assert_eq!(p.partial_var(0, 0), (&u(0) * &u(2)).scale(&rat(2)));
        assert_eq!(p.partial_var(0, 2), &u(0) * &u(0));
        let g = Gen::var(0, 2);
        assert_eq!(p.partial(g).integrate_in(g), p);
    }

    #[test]
    fn monomial_order_is_degree_first() {
        let a = Monomial::gen(Gen::var(3, 5));
        let b = Monomial::from_factors([(Gen::var(0, 0), 2)]);
        assert!(a < b);
        assert!(Monomial::gen(Gen::Param(0)) < Monomial::gen(Gen::var(0, 0)));
    }

    #[test]
    fn no_zero_coefficients() {
        let p = &u(0) - &u(0);
        assert!(p.is_zero());
        assert_eq!(p.len(), 0);
    }

    #[test]
    fn map_vars_kills() {
        let p = &DiffPoly::var(0, 1) * &DiffPoly::var(1, 0) + DiffPoly::var(1, 2);
        let q = p.map_vars(|i| (i == 1).then_some(0));
        assert_eq!(q, DiffPoly::var(0, 2));
    }
}
