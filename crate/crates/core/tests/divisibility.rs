use igusa::arith::qpoly::QPoly;
use igusa::arith::zeta::factor_poly;
use igusa::arith::{q, qi, Q};
use igusa::count::{count, poincare_truncation, CountMode};
use igusa::divisibility::{
    check_divisibility, constructive_shift, divisibility_property_check, divisibility_report, min_shift,
    smallest_real_pole,
};
use igusa::families::{zeta_sum_squares, zeta_xy_zi};
use igusa::poly::parse_poly;
use igusa::{PadicContext, PoincareSeries};

fn hensel(f: &str, vars: &[&str], p: u64, k: u32) -> PoincareSeries {
    let ctx = PadicContext::new(p, vars.len()).unwrap();
    poincare_truncation(&parse_poly(f, vars).unwrap(), &ctx, k).unwrap()
}

fn series_of(num: &QPoly, den: &QPoly, k: usize) -> Vec<Q> {
    // power series of num/den with den(0) = 1
    let mut out: Vec<Q> = Vec::new();
    for i in 0..=k {
        let mut c = num.coeff(i);
        for j in 1..=i {
            c -= den.coeff(j) * &out[i - j];
        }
        out.push(c);
    }
    out
}

#[test]
fn xy_z2_smallest_pole() {
    for p in [2, 3] {
        let z = zeta_xy_zi(&PadicContext::new(p, 3).unwrap(), 2).unwrap();
        let s = smallest_real_pole(&z).unwrap();
        assert_eq!(s.l, q(-3, 2));
        assert!(!s.possibly_complex_only);
    }
    let ss = zeta_sum_squares(&PadicContext::new(3, 2).unwrap()).unwrap();
    assert_eq!(smallest_real_pole(&ss.z).unwrap().l, qi(-1));
}

#[test]
fn xy_z2_shifts_pass() {
    let vars = ["x", "y", "z"];
    for p in [2, 3] {
        let z = zeta_xy_zi(&PadicContext::new(p, 3).unwrap(), 2).unwrap();
        let m = hensel("x*y+z^2", &vars, p, 6);
        let l = q(-3, 2);
        let r = divisibility_report(Some(&z), &m, &l).unwrap();
        assert!(r.ok(), "{:?}", r);
        let ac = r.a_constructive.unwrap();
        assert!(r.a <= ac);
        assert!(check_divisibility(&m, &l, ac).unwrap().ok());
        if r.a > 0 {
            assert!(!check_divisibility(&m, &l, r.a - 1).unwrap().ok());
        }
        // C is a polynomial and p^a C has the property
        let (c, a) = constructive_shift(&z, 3, &l).unwrap();
        let d = c.scale(&igusa::arith::p_pow(p, a));
        assert!(divisibility_property_check(d.coeffs(), 3, &l, p, 10));
    }
}

#[test]
fn wrong_l_is_caught() {
    let m = hensel("x*y+z^2", &["x", "y", "z"], 2, 6);
    let r = check_divisibility(&m, &qi(-1), 0).unwrap();
    assert!(!r.ok());
    assert!(r.violations[0].i >= 1);
}

#[test]
fn pure_power_closed_form() {
    // f = x^3: M_i = p^(i - ceil(i/3))
    let p = 2u64;
    let counts: Vec<_> = (0..=9u32).map(|i| num_bigint::BigUint::from(p).pow(i - i.div_ceil(3))).collect();
    let m = PoincareSeries::new(PadicContext::new(p, 1).unwrap(), counts.clone()).unwrap();
    assert_eq!(m, hensel("x^3", &["x"], p, 9));
    let a = min_shift(&m, &q(-1, 3)).unwrap();
    assert!(a == 0 || a == 1);
    assert!(check_divisibility(&m, &q(-1, 3), a).unwrap().ok());
}

#[test]
fn naive_and_hensel_agree_on_shift() {
    let f = parse_poly("x*y+z^3", &["x", "y", "z"]).unwrap();
    let ctx = PadicContext::new(2, 3).unwrap();
    let get = |mode| {
        let c = (0..=6).map(|i| count(&f, &ctx, i, mode).unwrap()).collect();
        PoincareSeries::new(ctx, c).unwrap()
    };
    let l = q(-4, 3);
    assert_eq!(min_shift(&get(CountMode::Naive), &l).unwrap(), min_shift(&get(CountMode::Hensel), &l).unwrap());
}

#[test]
fn shift_is_monotone_in_truncation() {
    let m = hensel("x*y+z^2", &["x", "y", "z"], 3, 6);
    let shifts: Vec<i64> = (0..=6).map(|k| min_shift(&m.truncate(k), &q(-3, 2)).unwrap()).collect();
    assert!(shifts.windows(2).all(|w| w[0] <= w[1]), "{shifts:?}");
}

#[test]
fn lemma_checks() {
    let l = q(-3, 2);
    for p in [2, 3] {
        let one = QPoly::one();
        let g1 = series_of(&one, &factor_poly(p, 2, 3), 10);
        let g2 = series_of(&one, &factor_poly(p, 1, 1), 10);
        assert!(divisibility_property_check(&g1, 3, &l, p, 10));
        assert!(divisibility_property_check(&g2, 3, &l, p, 10));
        let both = series_of(&one, &(&factor_poly(p, 2, 3) * &factor_poly(p, 1, 1)), 10);
        assert!(divisibility_property_check(&both, 3, &l, p, 10));
        assert!(divisibility_property_check(&[qi(1)], 3, &l, p, 10));
    }
}

#[test]
fn c_numerator_is_polynomial() {
    let z = zeta_xy_zi(&PadicContext::new(3, 3).unwrap(), 3).unwrap();
    let (c, _) = constructive_shift(&z, 3, &q(-4, 3)).unwrap();
    let p = series_of(&c, &z.denominator(), 5);
    let m = hensel("x*y+z^3", &["x", "y", "z"], 3, 5);
    for (i, x) in p.iter().enumerate() {
        let scaled = x * Q::from_integer(num_bigint::BigInt::from(27u64).pow(i as u32));
        assert_eq!(scaled, Q::from_integer(m.counts()[i].clone().into()));
    }
    assert!(constructive_shift(&z, 3, &qi(-1)).is_err());
}
