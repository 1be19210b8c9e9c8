use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::qpoly::QPoly;
use super::{fmt_q, p_pow, Q};

/// An element `sum c_j w^j` of `Q(w)`, `w = p^(1/M)`.
///
/// Values are kept canonical: `M` is the smallest root index that can
/// express the value and zero is stored as `M = 1`, `c = [0]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RadicalScalar {
    p: u64,
    m: u64,
    c: Vec<Q>,
}

impl RadicalScalar {
    pub fn zero(p: u64) -> Self {
        RadicalScalar { p, m: 1, c: vec![Q::zero()] }
    }

    pub fn one(p: u64) -> Self {
        RadicalScalar::from_q(p, Q::one())
    }

    pub fn from_q(p: u64, x: Q) -> Self {
        RadicalScalar { p, m: 1, c: vec![x] }
    }

    /// Builds `sum c_j p^(j/M)` from raw coefficients.
    pub fn from_coeffs(p: u64, m: u64, c: Vec<Q>) -> Self {
        assert!(m >= 1 && c.len() as u64 == m, "need exactly M coefficients");
        RadicalScalar { p, m, c }.canonical()
    }

    /// `p^(num/den)`.
    pub fn p_power(p: u64, num: i64, den: u64) -> Self {
        assert!(den > 0);
        let g = num.unsigned_abs().gcd(&den);
        let (num, den) = (num / g as i64, den / g);
        let whole = Integer::div_floor(&num, &(den as i64));
        let rest = num.mod_floor(&(den as i64)) as usize;
        let mut c = vec![Q::zero(); den as usize];
        c[rest] = p_pow(p, whole);
        RadicalScalar { p, m: den, c }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<Q> {
        (self.m == 1).then(|| self.c[0].clone())
    }

    fn canonical(mut self) -> Self {
        if self.is_zero() {
            return RadicalScalar::zero(self.p);
        }
        let mut g = self.m;
        for (j, x) in self.c.iter().enumerate() {
            if !x.is_zero() {
                g = g.gcd(&(j as u64));
            }
        }
        if g > 1 {
            self.c = self.c.iter().step_by(g as usize).cloned().collect();
            self.m /= g;
        }
        self
    }

    fn lift(&self, m: u64) -> Vec<Q> {
        debug_assert_eq!(m % self.m, 0);
        let step = (m / self.m) as usize;
        let mut v = vec![Q::zero(); m as usize];
        for (j, x) in self.c.iter().enumerate() {
            v[j * step] = x.clone();
        }
        v
    }

    fn common(&self, o: &Self) -> (u64, Vec<Q>, Vec<Q>) {
        assert_eq!(self.p, o.p, "mixing radicals over different primes");
        let m = self.m.lcm(&o.m);
        (m, self.lift(m), o.lift(m))
    }

    pub fn scale(&self, x: &Q) -> Self {
        RadicalScalar {
            p: self.p,
            m: self.m,
            c: self.c.iter().map(|c| c * x).collect(),
        }
        .canonical()
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.m == 1 {
            return Some(RadicalScalar::from_q(self.p, self.c[0].recip()));
        }
        let a = QPoly::from_coeffs(self.c.clone());
        let mut modulus = vec![Q::zero(); self.m as usize + 1];
        modulus[0] = -Q::from_integer(BigInt::from(self.p));
        modulus[self.m as usize] = Q::one();
        let (g, s, _) = QPoly::ext_gcd(&a, &QPoly::from_coeffs(modulus));
        debug_assert!(g.is_constant());
        let mut c: Vec<Q> = s.coeffs().to_vec();
        c.resize(self.m as usize, Q::zero());
        Some(RadicalScalar { p: self.p, m: self.m, c }.canonical())
    }

    pub fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = RadicalScalar::one(self.p);
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Some(acc)
    }

    pub fn to_f64(&self) -> f64 {
        let w = (self.p as f64).powf(1.0 / self.m as f64);
        self.c
            .iter()
            .enumerate()
            .map(|(j, x)| x.to_f64().unwrap_or(f64::NAN) * w.powi(j as i32))
            .sum()
    }

    /// Exact sign. Zero is decided by the coefficients; otherwise the value
    /// is bracketed using rational bounds on `p^(1/M)` until the sign is clear.
    pub fn sign(&self) -> Ordering {
        if self.is_zero() {
            return Ordering::Equal;
        }
        if self.m == 1 {
            return self.c[0].cmp(&Q::zero());
        }
        let p = Q::from_integer(BigInt::from(self.p));
        let m = self.m as usize;
        let below = |x: &Q| num_traits::pow(x.clone(), m) < p;
        let guess = (self.p as f64).powf(1.0 / self.m as f64);
        let mut lo = Q::from_float(guess * (1.0 - 1e-9)).unwrap_or_else(Q::one);
        let mut hi = Q::from_float(guess * (1.0 + 1e-9)).unwrap_or_else(|| p.clone());
        if !below(&lo) || below(&hi) {
            lo = Q::one();
            hi = p.clone();
        }
        loop {
            let (vl, vh) = self.bracket(&lo, &hi);
            if vl.is_positive() {
                return Ordering::Greater;
            }
            if vh.is_negative() {
                return Ordering::Less;
            }
            let mid = (&lo + &hi) / Q::from_integer(BigInt::from(2));
            if below(&mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }

    fn bracket(&self, lo: &Q, hi: &Q) -> (Q, Q) {
        let (mut vl, mut vh) = (Q::zero(), Q::zero());
        let (mut pl, mut ph) = (Q::one(), Q::one());
        for c in &self.c {
            if c.is_positive() {
                vl += c * &pl;
                vh += c * &ph;
            } else {
                vl += c * &ph;
                vh += c * &pl;
            }
            pl *= lo;
            ph *= hi;
        }
        (vl, vh)
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }
}

impl Add for &RadicalScalar {
    type Output = RadicalScalar;
    fn add(self, o: &RadicalScalar) -> RadicalScalar {
        let (m, a, b) = self.common(o);
        let c = a.into_iter().zip(b).map(|(x, y)| x + y).collect();
        RadicalScalar { p: self.p, m, c }.canonical()
    }
}

impl Sub for &RadicalScalar {
    type Output = RadicalScalar;
    fn sub(self, o: &RadicalScalar) -> RadicalScalar {
        let (m, a, b) = self.common(o);
        let c = a.into_iter().zip(b).map(|(x, y)| x - y).collect();
        RadicalScalar { p: self.p, m, c }.canonical()
    }
}

impl Mul for &RadicalScalar {
    type Output = RadicalScalar;
    fn mul(self, o: &RadicalScalar) -> RadicalScalar {
        let (m, a, b) = self.common(o);
        let mu = m as usize;
        let p = Q::from_integer(BigInt::from(self.p));
        let mut c = vec![Q::zero(); mu];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let k = i + j;
                if k >= mu {
                    c[k - mu] += x * y * &p;
                } else {
                    c[k] += x * y;
                }
            }
        }
        RadicalScalar { p: self.p, m, c }.canonical()
    }
}

impl Neg for &RadicalScalar {
    type Output = RadicalScalar;
    fn neg(self) -> RadicalScalar {
        RadicalScalar {
            p: self.p,
            m: self.m,
            c: self.c.iter().map(|x| -x).collect(),
        }
    }
}

impl fmt::Display for RadicalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let a = c.abs();
            if j == 0 {
                write!(f, "{}", fmt_q(&a))?;
            } else {
                let g = (j as u64).gcd(&self.m);
                let (n, d) = (j as u64 / g, self.m / g);
                if !a.is_one() {
                    write!(f, "{}*", fmt_q(&a))?;
                }
                write!(f, "{}^({n}/{d})", self.p)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{q, qi};

    #[test]
    fn root_to_the_m_is_p() {
        for (p, m) in [(2u64, 2u64), (3, 5), (5, 7), (7, 10)] {
            let w = RadicalScalar::p_power(p, 1, m);
            assert_eq!(w.pow(m as i64).unwrap(), RadicalScalar::from_q(p, qi(p as i64)));
        }
    }

    #[test]
    fn inverse_of_one_minus_root() {
        let w = RadicalScalar::p_power(3, 1, 4);
        let x = &RadicalScalar::one(3) - &w;
        let y = x.inv().unwrap();
        assert_eq!(&x * &y, RadicalScalar::one(3));
    }

    #[test]
    fn canonical_form_drops_unused_index() {
        let x = RadicalScalar::from_coeffs(5, 4, vec![qi(1), qi(0), q(1, 2), qi(0)]);
        assert_eq!(x.m(), 2);
        assert_eq!(x.coeffs(), &[qi(1), q(1, 2)]);
    }

    #[test]
    fn signs_near_cancellation() {
        // sqrt(2) - 1414213562/1000000000 is tiny but positive
        let w = RadicalScalar::p_power(2, 1, 2);
        let x = &w - &RadicalScalar::from_q(2, q(1414213562, 1000000000));
        assert_eq!(x.sign(), Ordering::Greater);
        let y = &w - &RadicalScalar::from_q(2, q(1414213563, 1000000000));
        assert_eq!(y.sign(), Ordering::Less);
        assert_eq!(RadicalScalar::zero(2).sign(), Ordering::Equal);
    }
}
