//! Split G2 as the stabilizer in `gl_7` of the 3-form
//! `x1∧x2∧x3 + y1∧y2∧y3 + z∧(x1∧y1 + x2∧y2 + x3∧y3)`.
//!
//! The diagonal torus acts on `x_i` by `ε_i`, on `y_i` by `−ε_i` and on `z`
//! trivially (with `ε_1 + ε_2 + ε_3 = 0`). Simple roots are `α = ε_2 − ε_1`
//! (long) and `β = ε_1` (short). Each positive root vector is the reduced
//! echelon generator of its root space; the negative one is scaled so that
//! `h_γ = [e_γ, e_−γ]` satisfies `[h_γ, e_γ] = 2e_γ`. The invariant form is the
//! trace form of the 7-dimensional representation, which is a quarter of the
//! Killing form.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::LieAlgebraSpec;
use crate::error::{Error, Result};
use crate::linalg::{RatMatrix, Vector};
use crate::rational::{rat, Rational};

/// Positive roots `aα + bβ` as `(a, b)`, in the order used by the basis.
pub const POSITIVE_ROOTS: [(i64, i64); 6] = [(0, 1), (1, 0), (1, 1), (1, 2), (1, 3), (2, 3)];

/// Root data of the G2 basis: basis index `k < 6` is `e_γ` for the k-th
/// positive root, `6, 7` are `h_α, h_β`, and `8 + k` is `e_−γ`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct G2Roots {
    pub positive: Vec<(i64, i64)>,
}

impl G2Roots {
    pub fn new() -> Self {
        G2Roots { positive: POSITIVE_ROOTS.to_vec() }
    }

    /// Basis index of the root vector `e_{aα+bβ}` (negative roots allowed).
    pub fn root_index(&self, a: i64, b: i64) -> Option<usize> {
        if let Some(k) = self.positive.iter().position(|&r| r == (a, b)) {
            return Some(k);
        }
        self.positive.iter().position(|&r| r == (-a, -b)).map(|k| 8 + k)
    }

    pub fn label(a: i64, b: i64) -> String {
        let part = |c: i64, s: &str| match c.abs() {
            0 => String::new(),
            1 => s.to_string(),
            n => format!("{n}{s}"),
        };
        let (a0, b0) = if a < 0 || b < 0 { (-a, -b) } else { (a, b) };
        let mut body = part(a0, "a");
        if b0 != 0 {
            if !body.is_empty() {
                body.push('+');
            }
            body.push_str(&part(b0, "b"));
        }
        if a < 0 || b < 0 {
            format!("e_-({body})")
        } else {
            format!("e_{body}")
        }
    }
}

impl Default for G2Roots {
    fn default() -> Self {
        Self::new()
    }
}

/// Weight of `aα + bβ` in coordinates `(c1 − c3, c2 − c3)` of `Σ c_i ε_i`.
fn root_weight(a: i64, b: i64) -> (i64, i64) {
    // aα + bβ = (b − a)ε_1 + aε_2
    (b - a, a)
}

/// Torus weight of the standard basis vector `k` of the 7-dim space.
fn vector_weight(k: usize) -> [i64; 3] {
    let mut w = [0; 3];
    match k {
        0..=2 => w[k] = 1,
        3..=5 => w[k - 3] = -1,
        _ => {}
    }
    w
}

fn reduce_weight(w: [i64; 3]) -> (i64, i64) {
    (w[0] - w[2], w[1] - w[2])
}

/// Components `φ_{abc}` for `a < b < c`.
fn three_form() -> BTreeMap<(usize, usize, usize), i64> {
    let mut phi = BTreeMap::new();
    let mut put = |i: usize, j: usize, k: usize, s: i64| {
        let mut t = [(i, 1i64), (j, 1), (k, 1)];
        let mut sign = s;
        // bubble sort with sign tracking
        for x in 0..3 {
            for y in 0..2 - x {
                if t[y].0 > t[y + 1].0 {
                    t.swap(y, y + 1);
                    sign = -sign;
                }
            }
        }
        phi.insert((t[0].0, t[1].0, t[2].0), sign);
    };
    put(0, 1, 2, 1);
    put(3, 4, 5, 1);
    for i in 0..3 {
        put(6, i, 3 + i, 1);
    }
    phi
}

fn phi_at(phi: &BTreeMap<(usize, usize, usize), i64>, a: usize, b: usize, c: usize) -> i64 {
    if a == b || b == c || a == c {
        return 0;
    }
    let mut t = [a, b, c];
    let mut sign = 1;
    for x in 0..3 {
        for y in 0..2 - x {
            if t[y] > t[y + 1] {
                t.swap(y, y + 1);
                sign = -sign;
            }
        }
    }
    sign * phi.get(&(t[0], t[1], t[2])).copied().unwrap_or(0)
}

/// Basis of `{X ∈ gl_7 : X·φ = 0}` restricted to entries `X_{rs}` with the
/// given reduced weight.
fn stabilizer_weight_space(weight: (i64, i64)) -> Vec<RatMatrix> {
    let phi = three_form();
    let entries: Vec<(usize, usize)> = (0..7)
        .flat_map(|r| (0..7).map(move |s| (r, s)))
        .filter(|&(r, s)| {
            let (wr, ws) = (vector_weight(r), vector_weight(s));
            reduce_weight([wr[0] - ws[0], wr[1] - ws[1], wr[2] - ws[2]]) == weight
        })
        .collect();
    // (X·φ)_{abc} = Σ_d X_{da} φ_{dbc} + X_{db} φ_{adc} + X_{dc} φ_{abd}
    let mut rows: Vec<Vector> = Vec::new();
    for a in 0..7 {
        for b in (a + 1)..7 {
            for c in (b + 1)..7 {
                let row: Vector = entries
                    .iter()
                    .map(|&(d, s)| {
                        let mut v = 0;
                        if s == a {
                            v += phi_at(&phi, d, b, c);
                        }
                        if s == b {
                            v += phi_at(&phi, a, d, c);
                        }
                        if s == c {
                            v += phi_at(&phi, a, b, d);
                        }
                        rat(v)
                    })
                    .collect();
                rows.push(row);
            }
        }
    }
    let m = RatMatrix::from_rows(rows).expect("rectangular");
    m.kernel_basis()
        .into_iter()
        .map(|v| {
            let mut x = RatMatrix::zeros(7, 7);
            for (c, &(r, s)) in v.iter().zip(&entries) {
                x[(r, s)] = c.clone();
            }
            x
        })
        .collect()
}

fn scalar_multiple(x: &RatMatrix, y: &RatMatrix) -> Option<Rational> {
    // x = s·y
    let (r, c) = (0..7).flat_map(|i| (0..7).map(move |j| (i, j))).find(|&(i, j)| !y[(i, j)].is_zero())?;
    let s = &x[(r, c)] / &y[(r, c)];
    (y.scale(&s) == *x).then_some(s)
}

pub fn build_g2() -> Result<LieAlgebraSpec> {
    let roots = G2Roots::new();
    let mut pos = Vec::new();
    for &(a, b) in &roots.positive {
        let space = stabilizer_weight_space(root_weight(a, b));
        if space.len() != 1 {
            return Err(Error::Invariant(format!(
                "root space of {} has dimension {}",
                G2Roots::label(a, b),
                space.len()
            )));
        }
        pos.push(space.into_iter().next().unwrap());
    }
    let mut neg = Vec::new();
    let mut coroots = Vec::new();
    for (&(a, b), e) in roots.positive.iter().zip(&pos) {
        let space = stabilizer_weight_space(root_weight(-a, -b));
        if space.len() != 1 {
            return Err(Error::Invariant("negative root space is not a line".into()));
        }
        let f = space.into_iter().next().unwrap();
        let h = e.commutator(&f);
        let he = h.commutator(e);
        let s = scalar_multiple(&he, e)
            .filter(|s| !s.is_zero())
            .ok_or_else(|| Error::Invariant("degenerate root pair".into()))?;
        // rescale f so that [[e, f], e] = 2e
        let f = f.scale(&(rat(2) / s));
        coroots.push(e.commutator(&f));
        neg.push(f);
    }
    let cartan = stabilizer_weight_space((0, 0));
    if cartan.len() != 2 {
        return Err(Error::Invariant("Cartan subalgebra is not two-dimensional".into()));
    }
    let mut labels = Vec::new();
    let mut mats = Vec::new();
    for (&(a, b), e) in roots.positive.iter().zip(&pos) {
        labels.push(G2Roots::label(a, b));
        mats.push(e.clone());
    }
    labels.push("h_a".into());
    mats.push(coroots[1].clone());
    labels.push("h_b".into());
    mats.push(coroots[0].clone());
    for (&(a, b), f) in roots.positive.iter().zip(&neg) {
        labels.push(G2Roots::label(-a, -b));
        mats.push(f.clone());
    }
    LieAlgebraSpec::from_matrix_basis("g2", labels, mats, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::LieElement;
    use std::sync::Arc;

    #[test]
    fn dimension_and_roots() {
        let g = build_g2().unwrap();
        assert_eq!(g.dim(), 14);
        let r = G2Roots::new();
        assert_eq!(r.positive, vec![(0, 1), (1, 0), (1, 1), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(g.labels()[3], "e_a+2b");
        assert_eq!(g.labels()[11], "e_-(a+2b)");
        assert_eq!(r.root_index(-1, -2), Some(11));
    }

    #[test]
    fn killing_is_four_times_trace_form() {
        let g = Arc::new(build_g2().unwrap());
        for i in 0..14 {
            for j in 0..14 {
                let k = LieElement::basis(&g, i).ad_matrix().mul(&LieElement::basis(&g, j).ad_matrix()).trace();
                assert_eq!(k, &g.gram()[(i, j)] * rat(4));
            }
        }
    }

    #[test]
    fn coroots_act_by_two() {
        let g = Arc::new(build_g2().unwrap());
        let r = G2Roots::new();
        for &(a, b) in &r.positive {
            let e = LieElement::basis(&g, r.root_index(a, b).unwrap());
            let f = LieElement::basis(&g, r.root_index(-a, -b).unwrap());
            let h = e.bracket(&f).unwrap();
            assert_eq!(h.bracket(&e).unwrap(), e.scale(&rat(2)));
        }
    }
}
