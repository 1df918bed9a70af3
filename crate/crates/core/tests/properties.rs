use dshier::ds::{solve_hk, split_piece, DsData, HSplit, ZGradedElement};
use dshier::grading::{sl_principal_triple, so_integrable_triple};
use dshier::liealg::{is_nilpotent_matrix, is_semisimple_matrix};
use dshier::linalg::RatMatrix;
use dshier::pva::*;
use dshier::rational::rat;
use dshier::HalfInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn matrix(n: usize, entries: &[i64]) -> RatMatrix {
    let rows: Vec<Vec<_>> = (0..n).map(|i| (0..n).map(|j| rat(entries[i * n + j])).collect()).collect();
    RatMatrix::from_rows(rows).unwrap()
}

fn square() -> impl Strategy<Value = RatMatrix> {
    (1usize..=4).prop_flat_map(|n| proptest::collection::vec(-3i64..=3, n * n).prop_map(move |e| matrix(n, &e)))
}

fn three_polys(seed: u64, nvars: usize, with_param: bool) -> [DiffPoly; 3] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shape = RandomShape { nvars, max_order: 2, max_degree: 2, max_terms: 3, coeff_bound: 4, with_param };
    [random_diffpoly(&shape, &mut rng), random_diffpoly(&shape, &mut rng), random_diffpoly(&shape, &mut rng)]
}

fn sl2_affine() -> GenBracketTable {
    let g = dshier::liealg::build_sl(2).unwrap();
    let e = dshier::liealg::LieElement::by_label(&std::sync::Arc::new(g.clone()), "E12").unwrap();
    let (t0, tinf) = affine_bracket(&g, &e).unwrap();
    t0.add(&tinf).unwrap()
}

fn lam() -> LambdaPoly {
    LambdaPoly::monomial(DiffPoly::one(), 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_nullity(m in square()) {
        let k = m.kernel_basis();
        prop_assert_eq!(m.rank() + k.len(), m.cols());
        for v in &k {
            prop_assert!(m.mul_vec(v).iter().all(|x| *x == rat(0)));
        }
    }

    #[test]
    fn inverse_is_two_sided(m in square()) {
        if let Some(inv) = m.inverse() {
            prop_assert_eq!(m.mul(&inv), RatMatrix::identity(m.rows()));
            prop_assert_eq!(inv.mul(&m), RatMatrix::identity(m.rows()));
        } else {
            prop_assert!(m.rank() < m.rows());
        }
    }

    #[test]
    fn minimal_polynomial_annihilates(m in square()) {
        let mu = m.minimal_polynomial().unwrap();
        prop_assert!(mu.eval_matrix(&m).is_zero());
        prop_assert_eq!(mu.leading().cloned(), Some(rat(1)));
    }

    #[test]
    fn chevalley_decomposition(m in square()) {
        let (s, n) = m.chevalley_decomposition().unwrap();
        prop_assert_eq!(s.add(&n), m.clone());
        prop_assert!(s.commutator(&n).is_zero());
        prop_assert!(is_nilpotent_matrix(&n));
        prop_assert!(is_semisimple_matrix(&s));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn leibniz_and_sesquilinearity(seed in any::<u64>()) {
        let t = GenBracketTable::virasoro();
        let [a, b, c] = three_polys(seed, 1, true);
        let br = |x: &DiffPoly, y: &DiffPoly| lambda_bracket(x, y, &t).unwrap();
        // {a λ bc} = {a λ b}c + {a λ c}b
        prop_assert_eq!(br(&a, &(&b * &c)), &br(&a, &b).mul_diffpoly(&c) + &br(&a, &c).mul_diffpoly(&b));
        // {∂a λ b} = −λ{a λ b}
        prop_assert_eq!(br(&a.d_total(), &b), lam().mul(&br(&a, &b)).scale(&rat(-1)));
        // {a λ ∂b} = (λ + ∂){a λ b}
        let x = br(&a, &b);
        prop_assert_eq!(br(&a, &b.d_total()), &lam().mul(&x) + &x.map_coeffs(DiffPoly::d_total));
    }

    #[test]
    fn left_leibniz_on_affine_table(seed in any::<u64>()) {
        let t = sl2_affine();
        let [a, b, c] = three_polys(seed, 3, false);
        let br = |x: &DiffPoly, y: &DiffPoly| lambda_bracket(x, y, &t).unwrap();
        // {ab λ c} = {a λ+∂ c}→ b + {b λ+∂ c}→ a
        let lhs = br(&(&a * &b), &c);
        let shifted = |x: &LambdaPoly, m: &DiffPoly| {
            let mut out = LambdaPoly::zero();
            for (k, coeff) in x.coeffs().iter().enumerate() {
                let mut term = LambdaPoly::constant(m.clone());
                for _ in 0..k {
                    term = &lam().mul(&term) + &term.map_coeffs(DiffPoly::d_total);
                }
                out = &out + &term.mul_diffpoly(coeff);
            }
            out
        };
        prop_assert_eq!(lhs, &shifted(&br(&a, &c), &b) + &shifted(&br(&b, &c), &a));
    }

    #[test]
    fn variational_derivative_kills_total_derivatives(seed in any::<u64>()) {
        let [a, _, _] = three_polys(seed, 2, true);
        let d = a.d_total();
        prop_assert!(variational_derivative(&d, 0).is_zero());
        prop_assert!(variational_derivative(&d, 1).is_zero());
    }

    #[test]
    fn functional_bracket_is_skew(seed in any::<u64>()) {
        let t = GenBracketTable::virasoro();
        let [a, b, _] = three_polys(seed, 1, true);
        let (fa, fb) = (LocalFunctional::new(a), LocalFunctional::new(b));
        let ab = functional_bracket(&fa, &fb, &t).unwrap();
        let ba = functional_bracket(&fb, &fa, &t).unwrap();
        prop_assert!(functional_eq(&ab, &ba.scale(&rat(-1))));
    }
}

fn random_component(data: &DsData, i: HalfInt, seed: u64) -> ZGradedElement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shape = RandomShape {
        nvars: data.nvars(),
        max_order: 2,
        max_degree: 2,
        max_terms: 2,
        coeff_bound: 3,
        with_param: false,
    };
    ZGradedElement::from_terms(data.zg.component_keys(i).into_iter().map(|k| (k, random_diffpoly(&shape, &mut rng))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn homogeneous_solve_is_unique(seed in any::<u64>(), twice in -1i64..=4, use_so7 in any::<bool>()) {
        let triple = if use_so7 { so_integrable_triple(&[3, 2, 2]).unwrap().0 } else { sl_principal_triple(2).unwrap() };
        let data = DsData::new(&triple).unwrap();
        let i = HalfInt::from_twice(twice);
        let split = HSplit::build(&data.zg, &data.semisimple, i, i + HalfInt::ONE).unwrap();
        let a = random_component(&data, i, seed);
        let (h1, u1) = solve_hk(&data, &split, &a, i).unwrap();
        let (h2, u2) = solve_hk(&data, &split, &a, i).unwrap();
        prop_assert_eq!(&h1, &h2);
        prop_assert_eq!(&u1, &u2);
        let back = h1.add(&data.zg.bracket(&data.lambda, &u1, None)).with_hi(None);
        prop_assert_eq!(back, a.with_hi(None));
        prop_assert!(data.zg.bracket(&data.semisimple, &h1, None).is_zero());
    }
}

#[test]
fn kernel_is_a_graded_subalgebra() {
    for triple in [sl_principal_triple(2).unwrap(), so_integrable_triple(&[3, 2, 2]).unwrap().0] {
        let data = DsData::new(&triple).unwrap();
        let zg = &data.zg;
        let degs: Vec<HalfInt> = (-4..=4).map(HalfInt::from_twice).collect();
        for &i in &degs {
            for &j in &degs {
                let target = split_piece(zg, &data.semisimple, i + j).unwrap();
                for x in split_piece(zg, &data.semisimple, i).unwrap().kernel_elements() {
                    for y in split_piece(zg, &data.semisimple, j).unwrap().kernel_elements() {
                        let b = zg.bracket(&x, &y, None);
                        assert!(zg.bracket(&data.semisimple, &b, None).is_zero());
                        assert!(b.terms().keys().all(|k| target.keys.contains(k)));
                    }
                }
            }
        }
    }
}
