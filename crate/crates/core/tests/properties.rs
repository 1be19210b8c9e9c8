use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use igusa::arith::zeta::factor_poly;
use igusa::arith::{q, qi};
use igusa::count::{count_hensel, count_naive, poincare_truncation};
use igusa::divisibility::{check_divisibility, min_shift};
use igusa::families::{combine_sum_poles, theorem_membership, PoleSet};
use igusa::poly::{parse_poly, tangent_cone_decomposition, MultiPoly};
use igusa::resolve::{lemma_check, relations_check, resolve_germ, DEFAULT_MAX_STEPS};
use igusa::{PadicContext, QPoly, RadicalScalar, ZetaRational, Q};

fn small_q() -> impl Strategy<Value = Q> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| q(n, d))
}

fn qpoly(max_len: usize) -> impl Strategy<Value = QPoly> {
    prop::collection::vec(small_q(), 1..=max_len).prop_map(QPoly::from_coeffs)
}

fn factors() -> impl Strategy<Value = Vec<(u32, u32)>> {
    prop::collection::vec((1u32..=4, 0u32..=4), 0..=3)
}

fn zeta(p: u64) -> impl Strategy<Value = ZetaRational> {
    (qpoly(5), factors()).prop_map(move |(num, f)| ZetaRational::new(p, num, f).unwrap())
}

fn poly2() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(((0u32..=3, 0u32..=3), -4i64..=4), 1..=4).prop_filter_map("zero", |terms| {
        let f = MultiPoly::from_terms(
            vec!["x".into(), "y".into()],
            terms.into_iter().map(|((a, b), c)| (vec![a, b], BigInt::from(c))),
        );
        (!f.is_zero()).then_some(f)
    })
}

fn add_q(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn convolve(a: &[Q], b: &[Q]) -> Vec<Q> {
    (0..a.len()).map(|k| (0..=k).map(|j| &a[j] * &b[k - j]).sum()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn zeta_series_is_a_ring_map(a in zeta(3), b in zeta(3)) {
        let k = 8;
        prop_assert_eq!((&a + &b).series(k), add_q(&a.series(k), &b.series(k)));
        prop_assert_eq!((&a * &b).series(k), convolve(&a.series(k), &b.series(k)));
    }

    #[test]
    fn cancelled_factor_disappears(num in qpoly(4), n in 1u32..=5, nu in 0u32..=5, p in prop::sample::select(vec![2u64, 3, 5])) {
        prop_assume!(!num.is_zero());
        let z = ZetaRational::new(p, &num * &factor_poly(p, n, nu), [(n, nu)]).unwrap();
        prop_assert_eq!(z.factors().count(), 0);
        prop_assert_eq!(z.numerator(), &num);
    }

    #[test]
    fn zeta_serde_round_trip(z in zeta(5)) {
        let text = serde_json::to_string(&z).unwrap();
        let back: ZetaRational = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, z);
    }

    #[test]
    fn multipoly_display_parses_back(f in poly2()) {
        let g = parse_poly(&f.to_string(), &["x", "y"]).unwrap();
        prop_assert_eq!(g, f);
    }

    #[test]
    fn radical_inverse(c in prop::collection::vec(small_q(), 3), p in prop::sample::select(vec![2u64, 3, 7])) {
        let x = RadicalScalar::from_coeffs(p, 3, c);
        prop_assume!(!x.is_zero());
        let y = x.inv().unwrap();
        prop_assert_eq!(&x * &y, RadicalScalar::one(p));
    }

    #[test]
    fn tangent_cone_degrees_sum_to_multiplicity(f in poly2()) {
        prop_assume!(f.constant_term().is_zero());
        let cone = tangent_cone_decomposition(&f).unwrap();
        let total: u32 = cone.factors.iter().map(|c| c.degree * c.multiplicity).sum();
        prop_assert_eq!(total, cone.mu);
        prop_assert_eq!(cone.mu, f.multiplicity_at_origin().unwrap());
    }

    #[test]
    fn membership_of_inverse_integers(i in 2i64..200) {
        prop_assert!(theorem_membership(&(q(-1, 2) - q(1, i)), 2));
        prop_assert!(theorem_membership(&(q(-1, 1) - q(1, i)), 3));
    }

    #[test]
    fn pole_sum_commutes(a in prop::collection::btree_set(1i64..=8, 1..=3), b in prop::collection::btree_set(1i64..=8, 1..=3)) {
        let mk = |s: &std::collections::BTreeSet<i64>| PoleSet::new(1, s.iter().map(|&d| (q(-1, d), format!("1/{d}")))).unwrap();
        let (x, y) = (mk(&a), mk(&b));
        prop_assert_eq!(combine_sum_poles(&x, &y).real_parts(), combine_sum_poles(&y, &x).real_parts());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hensel_agrees_with_naive(f in poly2(), p in prop::sample::select(vec![2u64, 3]), i in 1u32..=3) {
        let ctx = PadicContext::new(p, 2).unwrap();
        prop_assert_eq!(count_hensel(&f, &ctx, i).unwrap(), count_naive(&f, &ctx, i).unwrap());
    }

    #[test]
    fn min_shift_is_least(f in poly2(), p in prop::sample::select(vec![2u64, 3]), l in prop::sample::select(vec![q(-1, 2), qi(-1), q(-3, 2), q(-5, 6)])) {
        let ctx = PadicContext::new(p, 2).unwrap();
        let m = poincare_truncation(&f, &ctx, 3).unwrap();
        let a = min_shift(&m, &l).unwrap();
        prop_assert!(check_divisibility(&m, &l, a).unwrap().ok());
        if a > 0 {
            prop_assert!(!check_divisibility(&m, &l, a - 1).unwrap().ok());
        }
    }

    #[test]
    fn relations_hold_for_x2_ayl(a in prop::sample::select(vec![1i64, -1, 2, 3, -5, 12]), l in 2u32..=9) {
        let f = parse_poly(&format!("x^2+({a})*y^{l}"), &["x", "y"]).unwrap();
        let t = resolve_germ(&f, DEFAULT_MAX_STEPS).unwrap();
        for r in 1..=t.log.len() {
            let rep = relations_check(&t, r).unwrap();
            prop_assert!(rep.ok(), "{:?}", rep);
        }
        prop_assert!(lemma_check(&t).is_empty());
    }

    #[test]
    fn relations_hold_for_cusps(a in 2u32..=7, b in 2u32..=9) {
        prop_assume!(num_integer::gcd(a, b) == 1);
        let f = parse_poly(&format!("y^{a}-x^{b}"), &["x", "y"]).unwrap();
        let t = resolve_germ(&f, DEFAULT_MAX_STEPS).unwrap();
        for r in 1..=t.log.len() {
            let rep = relations_check(&t, r).unwrap();
            prop_assert!(rep.ok(), "{:?}", rep);
        }
        prop_assert!(lemma_check(&t).is_empty());
    }
}

#[test]
fn zero_and_one_are_fixed() {
    let one = ZetaRational::constant(3, Q::one());
    let z = ZetaRational::new(3, QPoly::from_ints(&[1, 2]), [(2, 1)]).unwrap();
    assert_eq!(&z * &one, z);
    assert_eq!(&z + &ZetaRational::zero(3), z);
    assert!(ZetaRational::new(3, QPoly::constant(Q::zero()), [(1, 1)]).unwrap().factors().count() == 0);
}
