//! Exact arithmetic: rationals, polynomials and rational functions in `t`,
//! scalars in `Q(p^(1/M))`, Laurent expansions and Poincare series.

pub mod laurent;
pub mod poincare;
pub mod qpoly;
pub mod radical;
pub mod zeta;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// `p^e` for any integer `e`.
pub fn p_pow(p: u64, e: i64) -> Q {
    let base = BigInt::from(p).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        Q::from_integer(base)
    } else {
        Q::new(BigInt::one(), base)
    }
}

/// `v_p(x)`, `None` for zero.
pub fn ord_p_int(x: &BigInt, p: u64) -> Option<u32> {
    if x.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut x = x.abs();
    let mut k = 0;
    loop {
        let (d, r) = x.div_rem(&p);
        if !r.is_zero() {
            return Some(k);
        }
        x = d;
        k += 1;
    }
}

pub fn ord_p_uint(x: &BigUint, p: u64) -> Option<u32> {
    ord_p_int(&BigInt::from(x.clone()), p)
}

pub fn ord_p(x: &Q, p: u64) -> Option<i64> {
    let a = ord_p_int(x.numer(), p)? as i64;
    let b = ord_p_int(x.denom(), p).unwrap_or(0) as i64;
    Some(a - b)
}

pub fn ceil_q(x: &Q) -> BigInt {
    x.ceil().to_integer()
}

pub fn floor_q(x: &Q) -> BigInt {
    x.floor().to_integer()
}

/// Fraction as the JSON pair `["num", "den"]`.
pub fn frac_pair(x: &Q) -> [String; 2] {
    [x.numer().to_string(), x.denom().to_string()]
}

pub fn parse_frac_pair(v: &[String; 2]) -> Option<Q> {
    let n: BigInt = v[0].parse().ok()?;
    let d: BigInt = v[1].parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Q::new(n, d))
}

/// Parses `"a"` or `"a/b"`.
pub fn parse_fraction(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let n: BigInt = a.trim().parse().ok()?;
            let d: BigInt = b.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Q::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Q::from_integer),
    }
}

pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
