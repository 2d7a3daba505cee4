mod common;

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use macvv::coeffs::{t_series_expand, PolynomialQT, Scalar};
use macvv::linalg::{express_in_family, SparseVec};
use macvv::pieri::{candidates, e_r_principal};
use macvv::series::{omega, verify_identity};
use macvv::tableaux::{enumerate_fillings, enumerate_psyt, min_top, psi, psi_inv, reachable_by_moves, FillingKind};

use common::small_shapes;

fn poly() -> impl Strategy<Value = PolynomialQT> {
    prop::collection::vec(((0u32..3, 0u32..3), -3i64..=3), 0..5).prop_map(PolynomialQT::from_terms)
}

fn nonzero_poly() -> impl Strategy<Value = PolynomialQT> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfun() -> impl Strategy<Value = Scalar> {
    (poly(), nonzero_poly()).prop_map(|(n, d)| Scalar::new(n, d).unwrap())
}

fn point() -> (BigRational, BigRational) {
    (BigRational::new(BigInt::from(7), BigInt::from(3)), BigRational::new(BigInt::from(-5), BigInt::from(11)))
}

/// A reverse Young filling of a shape with at most four boxes, by index.
fn small_filling() -> impl Strategy<Value = macvv::tableaux::Filling> {
    (0usize..100, 0u32..=2, 0usize..1000).prop_map(|(s, d, k)| {
        let shapes = small_shapes(4);
        let shape = &shapes[s % shapes.len()];
        let all = enumerate_fillings(shape, d, FillingKind::Ryt);
        all[k % all.len()].clone()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_laws(a in ratfun(), b in ratfun(), c in ratfun()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Scalar::zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), Scalar::one());
        }
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in ratfun(), b in ratfun()) {
        let (q, t) = point();
        if let (Some(x), Some(y)) = (a.eval(&q, &t), b.eval(&q, &t)) {
            prop_assert_eq!((&a * &b).eval(&q, &t), Some(&x * &y));
            prop_assert_eq!((&a + &b).eval(&q, &t), Some(x + y));
        }
    }

    #[test]
    fn canonical_form_round_trips(a in ratfun()) {
        let parsed: Scalar = a.to_string().parse().unwrap();
        prop_assert_eq!(parsed, a);
    }

    #[test]
    fn gcd_divides_both(a in nonzero_poly(), b in nonzero_poly(), c in nonzero_poly()) {
        let (x, y) = (a.mul(&c), b.mul(&c));
        let g = x.gcd(&y);
        prop_assert!(x.div_exact(&g).is_some());
        prop_assert!(y.div_exact(&g).is_some());
        prop_assert!(g.div_exact(&c.gcd(&c)).is_some());
    }

    #[test]
    fn series_expansion_is_multiplicative(a in ratfun(), b in ratfun(), order in 0i64..6) {
        let prod = t_series_expand(&(&a * &b), order);
        let split = t_series_expand(&a, order + 8).mul(&t_series_expand(&b, order + 8));
        prop_assert!(prod.agrees_through(&split, order));
    }

    #[test]
    fn psyt_carry_their_powers(t in small_filling()) {
        let all = enumerate_psyt(&t).unwrap();
        prop_assert!(!all.is_empty());
        for tau in &all {
            prop_assert_eq!(tau.filling(), t.clone());
            prop_assert_eq!(psi_inv(&psi(tau)).unwrap(), tau.clone());
        }
    }

    #[test]
    fn min_and_top_bound_every_psyt(t in small_filling()) {
        let all: HashSet<_> = enumerate_psyt(&t).unwrap().into_iter().collect();
        let (min, top) = min_top(&t).unwrap();
        prop_assert_eq!(&reachable_by_moves(&min, true), &all);
        prop_assert_eq!(&reachable_by_moves(&top, false), &all);
    }

    #[test]
    fn pieri_candidates_are_rssyt(t in small_filling(), r in 1usize..=3) {
        prop_assume!(t.is_rssyt() && r <= t.shape().size());
        for s in candidates(&t, r) {
            prop_assert!(s.is_rssyt());
            prop_assert_eq!(s.degree(), t.degree() + r as u32);
        }
    }

    #[test]
    fn principal_elementary(n in 1usize..6, r in 0usize..7) {
        let mut expected = Scalar::zero();
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize == r {
                let e: i64 = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| i as i64).sum();
                expected = &expected + &Scalar::t_pow(e);
            }
        }
        prop_assert_eq!(e_r_principal(r, n), expected);
    }

    #[test]
    fn express_recovers_combinations(
        raw in prop::collection::vec(prop::collection::btree_map(0u8..6, -4i64..=4, 1..4), 1..4),
        coeffs in prop::collection::vec(ratfun(), 4),
    ) {
        let vectors: Vec<SparseVec<u8>> = raw
            .iter()
            .map(|v| v.iter().filter(|(_, &c)| c != 0).map(|(&k, &c)| (k, Scalar::from_int(c))).collect())
            .collect();
        let refs: Vec<&SparseVec<u8>> = vectors.iter().collect();
        let combine = |cs: &[Scalar]| {
            let mut out: SparseVec<u8> = BTreeMap::new();
            for (v, c) in vectors.iter().zip(cs) {
                macvv::linalg::axpy(&mut out, c, v);
            }
            out
        };
        let target = combine(&coeffs);
        let found = express_in_family(&refs, &target);
        prop_assert!(found.is_some());
        prop_assert_eq!(combine(&found.unwrap()), target);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn identity_verdict_is_monotone(order in 0i64..8) {
        let t = omega(&[], vec![vec![1]]).unwrap();
        let high = verify_identity(&t, order + 1, 40).unwrap();
        let low = verify_identity(&t, order, 40).unwrap();
        prop_assert!(!high.verdict || low.verdict);
        prop_assert!(high.verdict);
    }
}
