use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{fmt_q, Q};

/// Dense univariate polynomial over `Q`, coefficients by ascending power.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<Q>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        QPoly::from_coeffs(vec![c])
    }

    pub fn monomial(c: Q, k: usize) -> Self {
        let mut v = vec![Q::zero(); k + 1];
        v[k] = c;
        QPoly::from_coeffs(v)
    }

    /// The polynomial `t`.
    pub fn x() -> Self {
        QPoly::monomial(Q::one(), 1)
    }

    pub fn from_coeffs(coeffs: Vec<Q>) -> Self {
        let mut p = QPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_ints(c: &[i64]) -> Self {
        QPoly::from_coeffs(c.iter().map(|&x| Q::from_integer(BigInt::from(x))).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.coeffs.get(i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Q> {
        self.coeffs.last()
    }

    /// Lowest power of `t` with nonzero coefficient.
    pub fn low_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return QPoly::zero();
        }
        let mut v = vec![Q::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        QPoly { coeffs: v }
    }

    /// `p(t^k)`.
    pub fn inflate(&self, k: usize) -> Self {
        if self.is_zero() {
            return QPoly::zero();
        }
        let mut v = vec![Q::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i * k] = c.clone();
        }
        QPoly::from_coeffs(v)
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            Some(l) => self.scale(&l.recip()),
            None => QPoly::zero(),
        }
    }

    pub fn derivative(&self) -> Self {
        QPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Q::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Euclidean division; `None` when dividing by zero.
    pub fn divrem(&self, d: &QPoly) -> Option<(QPoly, QPoly)> {
        let dd = d.degree()?;
        let lc_inv = d.lead()?.recip();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Some((QPoly::zero(), self.clone()));
        }
        let mut quot = vec![Q::zero(); r.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &r[k + dd] * &lc_inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        r.truncate(dd);
        Some((QPoly::from_coeffs(quot), QPoly::from_coeffs(r)))
    }

    /// Exact quotient when `d` divides `self`.
    pub fn div_exact(&self, d: &QPoly) -> Option<QPoly> {
        let (q, r) = self.divrem(d)?;
        r.is_zero().then_some(q)
    }

    pub fn is_divisible_by(&self, d: &QPoly) -> bool {
        self.divrem(d).is_some_and(|(_, r)| r.is_zero())
    }

    /// Monic gcd; the gcd of two zeros is zero.
    pub fn gcd(a: &QPoly, b: &QPoly) -> QPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*a + t*b = g` and `g` monic.
    pub fn ext_gcd(a: &QPoly, b: &QPoly) -> (QPoly, QPoly, QPoly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (QPoly::one(), QPoly::zero());
        let (mut t0, mut t1) = (QPoly::zero(), QPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).expect("nonzero divisor");
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.lead().cloned() {
            Some(l) => {
                let inv = l.recip();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
            None => (r0, s0, t0),
        }
    }

    /// Yun's squarefree decomposition: monic pairwise coprime squarefree
    /// factors `g_i` with `self = c * prod g_i^i`. Constant factors are dropped.
    pub fn squarefree_decomposition(&self) -> Vec<(QPoly, u32)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let a = self.monic();
        let b = a.derivative();
        let c = QPoly::gcd(&a, &b);
        let mut w = a.div_exact(&c).expect("gcd divides");
        let mut y = b.div_exact(&c).expect("gcd divides");
        let mut z = &y - &w.derivative();
        let mut i = 1;
        while !w.is_constant() {
            let g = QPoly::gcd(&w, &z);
            if !g.is_constant() {
                out.push((g.clone(), i));
            }
            w = w.div_exact(&g).expect("gcd divides");
            y = z.div_exact(&g).expect("gcd divides");
            z = &y - &w.derivative();
            i += 1;
        }
        out
    }

    pub fn is_squarefree(&self) -> bool {
        self.squarefree_decomposition().iter().all(|(_, m)| *m == 1)
    }

    /// Resultant over `Q`.
    pub fn resultant(a: &QPoly, b: &QPoly) -> Q {
        let (Some(da), Some(db)) = (a.degree(), b.degree()) else {
            return Q::zero();
        };
        if db == 0 {
            return pow_q(b.lead().unwrap(), da);
        }
        if da == 0 {
            return pow_q(a.lead().unwrap(), db);
        }
        let (_, r) = a.divrem(b).unwrap();
        let Some(dr) = r.degree() else {
            return Q::zero();
        };
        let sign = if (da * db) % 2 == 1 { -Q::one() } else { Q::one() };
        sign * pow_q(b.lead().unwrap(), da - dr) * QPoly::resultant(b, &r)
    }

    pub fn discriminant(&self) -> Q {
        let Some(n) = self.degree() else {
            return Q::zero();
        };
        if n == 0 {
            return Q::one();
        }
        let sign = if (n * (n - 1) / 2) % 2 == 1 { -Q::one() } else { Q::one() };
        sign * QPoly::resultant(self, &self.derivative()) / self.lead().unwrap()
    }

    /// Primitive integer polynomial with the same roots (positive leading coefficient).
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let l = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * &l).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sgn = if ints.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
        ints.into_iter().map(|c| c / &g * &sgn).collect()
    }

    /// Distinct rational roots, sorted.
    pub fn rational_roots(&self) -> Vec<Q> {
        let mut roots = Vec::new();
        let Some(low) = self.low_degree() else {
            return roots;
        };
        if low > 0 {
            roots.push(Q::zero());
        }
        let reduced = QPoly::from_coeffs(self.coeffs[low..].to_vec());
        if reduced.degree().unwrap_or(0) > 0 {
            let sq = reduced
                .div_exact(&QPoly::gcd(&reduced, &reduced.derivative()))
                .expect("gcd divides");
            roots.extend(nonzero_rational_roots(&sq));
        }
        roots.sort();
        roots.dedup();
        roots
    }
}

fn pow_q(x: &Q, e: usize) -> Q {
    num_traits::pow(x.clone(), e)
}

fn eval_int(g: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in g.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// Smallest `d/e` with `d = r*e mod m`, `|d|, e <= sqrt(m/2)`.
fn rational_reconstruction(r: &BigInt, m: &BigInt) -> Option<Q> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    Some(Q::new(r1, t1))
}

/// Rational roots of a squarefree polynomial with nonzero constant term,
/// found by lifting simple roots modulo a small prime and reconstructing.
fn nonzero_rational_roots(f: &QPoly) -> Vec<Q> {
    let g = f.primitive_integer();
    if g.len() == 2 {
        return vec![Q::new(-g[0].clone(), g[1].clone())];
    }
    let gq = QPoly::from_coeffs(g.iter().map(|c| Q::from_integer(c.clone())).collect());
    let disc_num = gq.discriminant().to_integer();
    let lc = g.last().unwrap().clone();
    let c0 = g[0].clone();
    let bound = {
        let m = if lc.abs() > c0.abs() { lc.abs() } else { c0.abs() };
        BigInt::from(2) * &m * &m + BigInt::one()
    };
    let mut ell = 3u64;
    loop {
        let e = BigInt::from(ell);
        if crate::context::is_prime(ell)
            && !(&lc % &e).is_zero()
            && !(&disc_num % &e).is_zero()
        {
            break;
        }
        ell += 2;
    }
    let ell_b = BigInt::from(ell);
    let dg: Vec<BigInt> = g
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();
    let mut out = Vec::new();
    for r0 in 0..ell {
        let mut r = BigInt::from(r0);
        if !(eval_int(&g, &r) % &ell_b).is_zero() {
            continue;
        }
        let mut m = ell_b.clone();
        while m < bound {
            m = &m * &m;
            let inv = mod_inverse(&eval_int(&dg, &r), &m).expect("simple root");
            r = (&r - eval_int(&g, &r) * inv).mod_floor(&m);
        }
        for cand in [Some(r.clone()), Some(&r - &m)].into_iter().flatten() {
            if let Some(x) = rational_reconstruction(&cand, &m) {
                if f.eval(&x).is_zero() {
                    out.push(x);
                    break;
                }
            }
        }
    }
    out
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, o: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        QPoly::from_coeffs((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, o: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        QPoly::from_coeffs((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly::zero();
        }
        let mut v = vec![Q::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(v)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", fmt_q(&a))?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{}*", fmt_q(&a))?;
                    }
                    if i == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{q, qi};

    fn from_roots(roots: &[Q]) -> QPoly {
        roots.iter().fold(QPoly::one(), |acc, r| {
            &acc * &QPoly::from_coeffs(vec![-r.clone(), Q::one()])
        })
    }

    #[test]
    fn divrem_reconstructs() {
        let a = QPoly::from_ints(&[1, -3, 0, 2, 5]);
        let b = QPoly::from_ints(&[2, 0, 3]);
        let (qq, r) = a.divrem(&b).unwrap();
        assert_eq!(&(&qq * &b) + &r, a);
        assert!(r.degree().unwrap() < 2);
    }

    #[test]
    fn yun_recovers_multiplicities() {
        let a = QPoly::from_ints(&[1, 1]);
        let b = QPoly::from_ints(&[1, 0, 1]);
        let f = &(&(&a * &a) * &a) * &b;
        let sq = f.squarefree_decomposition();
        assert_eq!(sq, vec![(b.clone(), 1), (a.clone(), 3)]);
    }

    #[test]
    fn rational_roots_found() {
        let roots = vec![q(-3, 2), q(0, 1), q(2, 7), qi(5)];
        let f = &from_roots(&roots) * &QPoly::from_ints(&[2, 0, 1]);
        assert_eq!(f.rational_roots(), roots);
        assert!(QPoly::from_ints(&[1, 0, 1]).rational_roots().is_empty());
    }

    #[test]
    fn resultant_of_linear_factors() {
        let f = from_roots(&[qi(1), qi(2)]);
        let g = from_roots(&[qi(3)]);
        assert_eq!(QPoly::resultant(&f, &g), qi(2));
        assert_eq!(f.discriminant(), qi(1));
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = QPoly::from_ints(&[-1, 0, 1]);
        let b = QPoly::from_ints(&[1, 1]);
        let (g, s, t) = QPoly::ext_gcd(&a, &b);
        assert_eq!(g, b.monic());
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }
}
