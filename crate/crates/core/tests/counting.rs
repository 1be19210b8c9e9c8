use num_bigint::BigUint;

use igusa::charts::plane_zeta;
use igusa::count::{count, count_hensel, count_naive, poincare_truncation, CountMode};
use igusa::poly::parse_poly;
use igusa::{poincare_from_zeta, PadicContext};

fn ctx(p: u64, n: usize) -> PadicContext {
    PadicContext::new(p, n).unwrap()
}

#[test]
fn hand_counts() {
    let xy = parse_poly("x*y", &["x", "y"]).unwrap();
    // solutions of xy = 0 mod p: 2p - 1
    for p in [2u64, 3, 5, 7] {
        assert_eq!(count_naive(&xy, &ctx(p, 2), 1).unwrap(), BigUint::from(2 * p - 1));
    }
    // a linear form has p^((n-1) i) zeros
    let lin = parse_poly("x+2*y+3*z", &["x", "y", "z"]).unwrap();
    for i in 1..=3 {
        assert_eq!(count_hensel(&lin, &ctx(5, 3), i).unwrap(), BigUint::from(5u64.pow(2 * i)));
    }
    // x^2 + y^2 mod 3 has only the trivial zero
    let ss = parse_poly("x^2+y^2", &["x", "y"]).unwrap();
    assert_eq!(count(&ss, &ctx(3, 2), 1, CountMode::Naive).unwrap(), BigUint::from(1u32));
}

#[test]
fn zeta_reproduces_counts() {
    for f in ["y^2-x^3", "x^2+y^4", "x*y*(x-y)"] {
        for p in [2u64, 3, 7] {
            let c = ctx(p, 2);
            let g = parse_poly(f, &["x", "y"]).unwrap();
            let z = plane_zeta(&g, &c).unwrap();
            let expect = poincare_truncation(&g, &c, 3).unwrap();
            assert_eq!(poincare_from_zeta(&z, 2, 3).unwrap().counts(), expect.counts(), "{f} p={p}");
        }
    }
}
