use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::qpoly::QPoly;
use crate::arith::Q;
use crate::error::{Error, Result};

/// Sparse polynomial with integer coefficients in named variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl MultiPoly {
    pub fn zero(vars: &[&str]) -> Self {
        MultiPoly::zero_owned(vars.iter().map(|s| s.to_string()).collect())
    }

    pub fn zero_owned(vars: Vec<String>) -> Self {
        MultiPoly { vars, terms: BTreeMap::new() }
    }

    pub fn constant_like(&self, c: BigInt) -> Self {
        let mut p = MultiPoly::zero_owned(self.vars.clone());
        p.add_term(vec![0; self.vars.len()], c);
        p
    }

    /// The `i`-th variable.
    pub fn var_like(&self, i: usize) -> Self {
        let mut e = vec![0; self.vars.len()];
        e[i] = 1;
        let mut p = MultiPoly::zero_owned(self.vars.clone());
        p.add_term(e, BigInt::one());
        p
    }

    pub fn from_terms(vars: Vec<String>, terms: impl IntoIterator<Item = (Vec<u32>, BigInt)>) -> Self {
        let mut p = MultiPoly::zero_owned(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), p.vars.len(), "exponent length must match the variables");
            p.add_term(e, c);
        }
        p
    }

    /// Convenience constructor from small integer data.
    pub fn from_ints(vars: &[&str], terms: &[(&[u32], i64)]) -> Self {
        MultiPoly::from_terms(
            vars.iter().map(|s| s.to_string()).collect(),
            terms.iter().map(|(e, c)| (e.to_vec(), BigInt::from(*c))),
        )
    }

    pub(crate) fn add_term(&mut self, e: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e.clone()).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u32]) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(&vec![0; self.vars.len()])
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[i]).max()
    }

    /// Variables that actually occur.
    pub fn used_vars(&self) -> Vec<usize> {
        (0..self.vars.len())
            .filter(|&i| self.terms.keys().any(|e| e[i] > 0))
            .collect()
    }

    /// Minimal total degree of a term, `0` iff `f(0) != 0`.
    pub fn multiplicity_at_origin(&self) -> Result<u32> {
        self.terms
            .keys()
            .map(|e| e.iter().sum())
            .min()
            .ok_or(Error::ZeroPolynomial)
    }

    /// Homogeneous part of the given total degree.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return MultiPoly::zero_owned(self.vars.clone());
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Exact division by an integer dividing every coefficient.
    pub fn div_scalar(&self, c: &BigInt) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, x)| {
                    debug_assert!((x % c).is_zero());
                    (e.clone(), x / c)
                })
                .collect(),
        }
    }

    /// Largest `k` with `x_i^k` dividing `self`.
    pub fn var_power(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).min().unwrap_or(0)
    }

    /// Divides by `x_i^k`, which must divide.
    pub fn div_var_power(&self, i: usize, k: u32) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e[i] -= k;
                    (e, c.clone())
                })
                .collect(),
        }
    }

    pub fn partial(&self, i: usize) -> Self {
        let mut p = MultiPoly::zero_owned(self.vars.clone());
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                p.add_term(e2, c * BigInt::from(e[i]));
            }
        }
        p
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = self.constant_like(BigInt::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, x: &[BigInt]) -> BigInt {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(x)
                    .fold(c.clone(), |acc, (k, v)| acc * num_traits::pow(v.clone(), *k as usize))
            })
            .sum()
    }

    pub fn eval_q(&self, x: &[Q]) -> Q {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter().zip(x).fold(Q::from_integer(c.clone()), |acc, (k, v)| {
                    acc * num_traits::pow(v.clone(), *k as usize)
                })
            })
            .sum()
    }

    /// Replaces every variable by a polynomial over a new variable list.
    pub fn compose(&self, images: &[MultiPoly]) -> Self {
        assert_eq!(images.len(), self.vars.len());
        let new_vars = images
            .first()
            .map(|p| p.vars.clone())
            .unwrap_or_default();
        let mut powers: Vec<Vec<MultiPoly>> = Vec::new();
        for (i, img) in images.iter().enumerate() {
            let d = self.degree_in(i).unwrap_or(0);
            let mut v = vec![MultiPoly::from_terms(new_vars.clone(), [(vec![0; new_vars.len()], BigInt::one())])];
            for k in 1..=d as usize {
                let next = &v[k - 1] * img;
                v.push(next);
            }
            powers.push(v);
        }
        let mut out = MultiPoly::zero_owned(new_vars.clone());
        for (e, c) in &self.terms {
            let mut t = MultiPoly::from_terms(new_vars.clone(), [(vec![0; new_vars.len()], c.clone())]);
            for (i, k) in e.iter().enumerate() {
                if *k > 0 {
                    t = &t * &powers[i][*k as usize];
                }
            }
            out = &out + &t;
        }
        out
    }

    /// `f(x + a)` for an integer shift vector.
    pub fn translate(&self, a: &[BigInt]) -> Self {
        let images: Vec<MultiPoly> = (0..self.nvars())
            .map(|i| &self.var_like(i) + &self.constant_like(a[i].clone()))
            .collect();
        self.compose(&images)
    }

    /// `f(a + s * x)` coordinatewise, all integers.
    pub fn affine_substitute(&self, a: &[BigInt], s: &[BigInt]) -> Self {
        let images: Vec<MultiPoly> = (0..self.nvars())
            .map(|i| &self.var_like(i).scale(&s[i]) + &self.constant_like(a[i].clone()))
            .collect();
        self.compose(&images)
    }

    /// `L * f(x + a)` for a rational shift, with `L` the least positive
    /// integer making the result integral. Returns the polynomial and `L`.
    pub fn translate_rational(&self, a: &[Q]) -> (Self, BigInt) {
        if a.iter().all(|x| x.is_integer()) {
            let ints: Vec<BigInt> = a.iter().map(|x| x.to_integer()).collect();
            return (self.translate(&ints), BigInt::one());
        }
        let mut acc: BTreeMap<Vec<u32>, Q> = BTreeMap::new();
        for (e, c) in &self.terms {
            // expand prod (x_i + a_i)^(e_i) one variable at a time
            let mut partial: Vec<(Vec<u32>, Q)> = vec![(vec![0; e.len()], Q::from_integer(c.clone()))];
            for (i, k) in e.iter().enumerate() {
                if *k == 0 {
                    continue;
                }
                let mut next = Vec::new();
                for (pe, pc) in &partial {
                    let mut binom = BigInt::one();
                    for j in 0..=*k {
                        let mut ne = pe.clone();
                        ne[i] += j;
                        let coef = pc * Q::from_integer(binom.clone()) * num_traits::pow(a[i].clone(), (*k - j) as usize);
                        next.push((ne, coef));
                        binom = binom * BigInt::from(*k - j) / BigInt::from(j + 1);
                    }
                }
                partial = next;
            }
            for (pe, pc) in partial {
                *acc.entry(pe).or_insert_with(Q::zero) += pc;
            }
        }
        let l = acc.values().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let lq = Q::from_integer(l.clone());
        let out = MultiPoly::from_terms(
            self.vars.clone(),
            acc.into_iter().map(|(e, c)| (e, (c * &lq).to_integer())),
        );
        (out, l)
    }

    /// Univariate view in variable `i`; `None` if other variables occur.
    pub fn to_qpoly(&self, i: usize) -> Option<QPoly> {
        let d = self.degree_in(i).unwrap_or(0) as usize;
        let mut c = vec![Q::zero(); d + 1];
        for (e, x) in &self.terms {
            if e.iter().enumerate().any(|(j, k)| j != i && *k > 0) {
                return None;
            }
            c[e[i] as usize] = Q::from_integer(x.clone());
        }
        Some(QPoly::from_coeffs(c))
    }

    /// For two variables: coefficients of `y^k` as polynomials in `x`.
    pub fn coeffs_in_second(&self) -> Vec<QPoly> {
        assert_eq!(self.nvars(), 2);
        let dy = self.degree_in(1).unwrap_or(0) as usize;
        let dx = self.degree_in(0).unwrap_or(0) as usize;
        let mut rows = vec![vec![Q::zero(); dx + 1]; dy + 1];
        for (e, c) in &self.terms {
            rows[e[1] as usize][e[0] as usize] = Q::from_integer(c.clone());
        }
        rows.into_iter().map(QPoly::from_coeffs).collect()
    }

    /// Squarefree over `Q`. Supported for at most two variables.
    pub fn is_squarefree(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let used = self.used_vars();
        match used.len() {
            0 => Ok(true),
            1 => Ok(self.to_qpoly(used[0]).unwrap().is_squarefree()),
            2 => {
                let g = if used == [0, 1] || self.nvars() == 2 {
                    self.clone()
                } else {
                    self.restrict(&used)
                };
                Ok(bivariate_squarefree(&g))
            }
            k => Err(Error::Unsupported(format!("squarefree test in {k} variables"))),
        }
    }

    /// Keeps only the listed variables; the others must not occur.
    pub fn restrict(&self, keep: &[usize]) -> Self {
        MultiPoly::from_terms(
            keep.iter().map(|&i| self.vars[i].clone()).collect(),
            self.terms
                .iter()
                .map(|(e, c)| (keep.iter().map(|&i| e[i]).collect(), c.clone())),
        )
    }

    /// Renames the variables, keeping the terms.
    pub fn with_vars(&self, vars: Vec<String>) -> Self {
        assert_eq!(vars.len(), self.vars.len());
        MultiPoly { vars, terms: self.terms.clone() }
    }

    /// Reorders variables: new variable `k` is old variable `perm[k]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        MultiPoly::from_terms(
            perm.iter().map(|&i| self.vars[i].clone()).collect(),
            self.terms
                .iter()
                .map(|(e, c)| (perm.iter().map(|&i| e[i]).collect(), c.clone())),
        )
    }

    /// Terms sorted by graded lex, highest first.
    pub fn sorted_terms(&self) -> Vec<(&Vec<u32>, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| grlex(b.0, a.0));
        v
    }

    /// Coefficients reduced into `[0, m)` as `u128`.
    pub fn coeffs_mod(&self, m: u128) -> Vec<(Vec<u32>, u128)> {
        let mb = BigInt::from(m);
        self.terms
            .iter()
            .map(|(e, c)| (e.clone(), c.mod_floor(&mb).to_u128().expect("reduced")))
            .filter(|(_, c)| *c != 0)
            .collect()
    }
}

pub fn grlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

fn bivariate_squarefree(f: &MultiPoly) -> bool {
    let rows = f.coeffs_in_second();
    let cont = rows
        .iter()
        .fold(QPoly::zero(), |acc, r| QPoly::gcd(&acc, r));
    if !cont.is_squarefree() {
        return false;
    }
    let dy = rows.len() - 1;
    if dy == 0 {
        return true;
    }
    let dx = f.degree_in(0).unwrap_or(0) as i64;
    let lc = rows[dy].clone();
    let needed = (2 * dy as i64 - 1) * dx + 1;
    let mut tried = 0;
    let mut x0 = 0i64;
    while tried < needed {
        let xq = Q::from_integer(BigInt::from(x0));
        x0 = if x0 > 0 { -x0 } else { 1 - x0 };
        if lc.eval(&xq).is_zero() || cont.eval(&xq).is_zero() {
            continue;
        }
        tried += 1;
        let g = QPoly::from_coeffs(rows.iter().map(|r| r.eval(&xq)).collect());
        if g.is_squarefree() {
            return true;
        }
    }
    false
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: &MultiPoly) -> MultiPoly {
        assert_eq!(self.vars, o.vars, "variable lists differ");
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: &MultiPoly) -> MultiPoly {
        assert_eq!(self.vars, o.vars, "variable lists differ");
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(e.clone(), -c);
        }
        p
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: &MultiPoly) -> MultiPoly {
        assert_eq!(self.vars, o.vars, "variable lists differ");
        let mut p = MultiPoly::zero_owned(self.vars.clone());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                p.add_term(e, ca * cb);
            }
        }
        p
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, k)| **k > 0)
                .map(|(i, k)| {
                    if *k == 1 {
                        self.vars[i].clone()
                    } else {
                        format!("{}^{k}", self.vars[i])
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{a}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}
