//! Randomized and exhaustive searches over perturbations `f + E`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use std::sync::Arc;

use super::{
    classify_perturbation, integrable_triple_check, nilpotent_type_test, sl2_from_partition, DynkinGrading,
    IntegrableTriple, PerturbationKind,
};
use crate::error::Result;
use crate::liealg::{build_so_from_partition, is_nilpotent_elem, jordan_decomposition_elem, LieElement};
use crate::rational::{rat, HalfInt};

/// Random combination of `basis` with coefficients uniform in
/// `{−bound, …, bound} \ {0}`.
pub fn random_element(basis: &[LieElement], bound: i64, rng: &mut impl Rng) -> Option<LieElement> {
    let first = basis.first()?;
    let mut acc = LieElement::zero(first.parent());
    for b in basis {
        let mut c = rng.gen_range(-bound..bound);
        if c >= 0 {
            c += 1;
        }
        acc = acc.add(&b.scale(&rat(c))).expect("shared parent");
    }
    Some(acc)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ProbeVerdict {
    /// Sample number `trial` (0-based) gave a non-nilpotent `f + E`.
    NotNilpotentType {
        trial: usize,
    },
    AllNilpotent {
        trials: usize,
    },
}

/// Samples random `E ∈ g_d` and stops at the first non-nilpotent `f + E`.
pub fn nilpotent_type_probe(f: &LieElement, grading: &DynkinGrading, trials: usize, seed: u64) -> Result<ProbeVerdict> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let top = grading.piece(grading.depth());
    for trial in 0..trials.max(1) {
        let e = random_element(top, 5, &mut rng).expect("g_d is nonzero");
        if !is_nilpotent_elem(&f.add(&e)?) {
            return Ok(ProbeVerdict::NotNilpotentType { trial });
        }
    }
    Ok(ProbeVerdict::AllNilpotent { trials: trials.max(1) })
}

/// Partitions of `n` in which every even part has even multiplicity, in
/// decreasing lexicographic order, without `(1, …, 1)`.
pub fn orthogonal_partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=max.min(rest)).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut all = Vec::new();
    rec(n, n, &mut Vec::new(), &mut all);
    all.retain(|q| q[0] > 1 && q.iter().all(|&p| p % 2 == 1 || q.iter().filter(|&&x| x == p).count() % 2 == 0));
    all
}

/// Agreement between the depth test and the random probe. A probe that
/// finds a non-nilpotent `f + E` for a non-integral depth is a
/// contradiction; a probe that finds none for an integral depth is only a
/// warning, since it may be bad luck.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepOutcome {
    Agree,
    SoftWarning,
    Contradiction,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub partition: Vec<usize>,
    pub depth: HalfInt,
    pub nilpotent_type: bool,
    /// Verdicts for each seed tried, in order.
    pub probes: Vec<ProbeVerdict>,
    pub outcome: SweepOutcome,
}

/// Depth test against the probe for every orthogonal partition of `n`.
/// For integral depth the seeds are tried until one finds a non-nilpotent
/// sample.
pub fn so_depth_probe_sweep(n: usize, trials: usize, seeds: &[u64]) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::new();
    for partition in orthogonal_partitions(n) {
        let (alg, idx) = build_so_from_partition(&partition)?;
        let alg = Arc::new(alg);
        let triple = sl2_from_partition(&alg, Some(&idx), &partition)?;
        let grading = DynkinGrading::from_triple(&triple)?;
        let nilpotent_type = nilpotent_type_test(&grading);
        let mut probes = Vec::new();
        let mut found = false;
        for &seed in seeds {
            let v = nilpotent_type_probe(&triple.f, &grading, trials, seed)?;
            found = matches!(v, ProbeVerdict::NotNilpotentType { .. });
            probes.push(v);
            if found {
                break;
            }
        }
        let outcome = match (nilpotent_type, found) {
            (true, true) => SweepOutcome::Contradiction,
            (false, false) => SweepOutcome::SoftWarning,
            _ => SweepOutcome::Agree,
        };
        rows.push(SweepRow { partition, depth: grading.depth(), nilpotent_type, probes, outcome });
    }
    Ok(rows)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DegreeChoice {
    Depth,
    DepthMinusHalf,
}

impl DegreeChoice {
    pub fn degree(self, grading: &DynkinGrading) -> HalfInt {
        match self {
            DegreeChoice::Depth => grading.depth(),
            DegreeChoice::DepthMinusHalf => grading.depth() - HalfInt::HALF,
        }
    }
}

/// Candidate budget: basis vectors, then combinations with `max_nonzero`
/// coefficients in `{±1}` (first nonzero coefficient `+1`), then
/// `random_samples` random elements with coefficients bounded by `bound`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_nonzero: usize,
    pub random_samples: usize,
    pub bound: i64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_nonzero: 2, random_samples: 200, bound: 5 }
    }
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub found: Option<IntegrableTriple>,
    pub candidates_tried: usize,
}

fn sign_patterns(n: usize, k: usize) -> Vec<Vec<(usize, i64)>> {
    // index subsets of size k in lexicographic order, signs with first = +1
    let mut out = Vec::new();
    let mut subset: Vec<usize> = (0..k).collect();
    if k == 0 || k > n {
        return out;
    }
    loop {
        for mask in 0..(1u64 << (k - 1)) {
            let mut v = vec![(subset[0], 1)];
            for (t, &i) in subset.iter().enumerate().skip(1) {
                v.push((i, if mask >> (t - 1) & 1 == 1 { -1 } else { 1 }));
            }
            out.push(v);
        }
        let Some(pos) = (0..k).rev().find(|&i| subset[i] < n - k + i) else {
            break;
        };
        subset[pos] += 1;
        for i in pos + 1..k {
            subset[i] = subset[i - 1] + 1;
        }
    }
    out
}

/// Deterministic search for `E` in the chosen degree such that `f + E` is a
/// valid cyclic or quasi-cyclic element whose Jordan decomposition
/// `(s, n)` has `n ∈ g_−1` and `(f − n, n, E)` is an integrable triple.
///
/// `None` only means that nothing was found within the budget.
pub fn find_integrable_element(
    grading: &DynkinGrading,
    choice: DegreeChoice,
    budget: SearchBudget,
    seed: u64,
) -> Result<SearchOutcome> {
    let f = grading.f().clone();
    let basis = grading.piece(choice.degree(grading)).to_vec();
    let mut tried = 0;
    let mut try_candidate = |e: LieElement| -> Result<Option<IntegrableTriple>> {
        tried += 1;
        let c = classify_perturbation(&f, &e, grading)?;
        if c.kind == PerturbationKind::Invalid {
            return Ok(None);
        }
        let (_, n) = jordan_decomposition_elem(&f.add(&e)?)?;
        if !grading.lies_in(&n, -HalfInt::ONE)? {
            return Ok(None);
        }
        let t = IntegrableTriple::assemble(f.sub(&n)?, n, e, grading.clone(), None)?;
        Ok(integrable_triple_check(&t).all_pass().then_some(t))
    };
    let done = |found, tried| Ok(SearchOutcome { found, candidates_tried: tried });

    for k in 1..=budget.max_nonzero.max(1) {
        for pattern in sign_patterns(basis.len(), k) {
            let mut e = LieElement::zero(grading.algebra());
            for (i, s) in pattern {
                e = e.add(&basis[i].scale(&rat(s)))?;
            }
            if let Some(t) = try_candidate(e)? {
                return done(Some(t), tried);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..budget.random_samples {
        let Some(e) = random_element(&basis, budget.bound, &mut rng) else {
            break;
        };
        if let Some(t) = try_candidate(e)? {
            return done(Some(t), tried);
        }
    }
    done(None, tried)
}
