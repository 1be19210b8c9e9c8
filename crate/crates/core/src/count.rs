//! Solution counts `M_i` of `f = 0 mod p^i`, by enumeration and by Hensel descent.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::json;

use crate::arith::poincare::{poincare_from_zeta, PoincareSeries};
use crate::arith::zeta::ZetaRational;
use crate::context::PadicContext;
use crate::error::{Error, Result};
use crate::poly::MultiPoly;

/// Default cap on the number of evaluations in naive mode.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountMode {
    Naive,
    Hensel,
}

/// A polynomial reduced modulo `m < 2^64`, evaluated in `u128`.
#[derive(Clone, Debug)]
struct ModPoly {
    m: u128,
    terms: Vec<(Vec<u32>, u128)>,
    maxdeg: Vec<u32>,
}

impl ModPoly {
    fn new(f: &MultiPoly, m: u128) -> Self {
        let terms = f.coeffs_mod(m);
        let maxdeg = (0..f.nvars()).map(|i| f.degree_in(i).unwrap_or(0)).collect();
        ModPoly { m, terms, maxdeg }
    }

    fn eval(&self, x: &[u128], pows: &mut Vec<Vec<u128>>) -> u128 {
        pows.resize(x.len(), Vec::new());
        for (k, &v) in x.iter().enumerate() {
            let row = &mut pows[k];
            row.clear();
            let mut acc = 1 % self.m;
            row.push(acc);
            for _ in 0..self.maxdeg[k] {
                acc = acc * v % self.m;
                row.push(acc);
            }
        }
        let mut s = 0u128;
        for (e, c) in &self.terms {
            let mut t = *c;
            for (k, &d) in e.iter().enumerate() {
                if d > 0 {
                    t = t * pows[k][d as usize] % self.m;
                }
            }
            s = (s + t) % self.m;
        }
        s
    }
}

fn modulus(p: u64, i: u32) -> Result<u128> {
    let m = (p as u128).checked_pow(i).filter(|&m| m <= u64::MAX as u128);
    m.ok_or(Error::ModulusTooLarge { exp: i })
}

fn check_arity(f: &MultiPoly, ctx: &PadicContext) -> Result<()> {
    if f.nvars() != ctx.n() {
        return Err(Error::Arity { expected: ctx.n(), got: f.nvars() });
    }
    Ok(())
}

/// Enumerates `(Z/p^i)^n` with the default budget.
pub fn count_naive(f: &MultiPoly, ctx: &PadicContext, i: u32) -> Result<BigUint> {
    count_naive_with_budget(f, ctx, i, DEFAULT_BUDGET)
}

pub fn count_naive_with_budget(f: &MultiPoly, ctx: &PadicContext, i: u32, budget: u64) -> Result<BigUint> {
    check_arity(f, ctx)?;
    let n = ctx.n();
    let size = BigUint::from(ctx.p()).pow(i * n as u32);
    if size > BigUint::from(budget) {
        return Err(Error::BudgetExceeded { needed: size.to_string(), budget });
    }
    if i == 0 {
        return Ok(BigUint::one());
    }
    let m = modulus(ctx.p(), i)?;
    let mp = ModPoly::new(f, m);
    let total: u64 = (0..m)
        .into_par_iter()
        .map(|x0| {
            let mut x = vec![0u128; n];
            x[0] = x0;
            let mut pows = Vec::new();
            let mut hits = 0u64;
            loop {
                if mp.eval(&x, &mut pows) == 0 {
                    hits += 1;
                }
                let mut k = n - 1;
                loop {
                    if k == 0 {
                        return hits;
                    }
                    x[k] += 1;
                    if x[k] < m {
                        break;
                    }
                    x[k] = 0;
                    k -= 1;
                }
            }
        })
        .sum();
    Ok(BigUint::from(total))
}

struct Descent {
    p: u128,
    n: usize,
    i: u32,
    f: ModPoly,
    partials: Vec<ModPoly>,
}

impl Descent {
    /// Solutions mod `p^i` above the class `a mod p^j`, given `f(a) = 0 mod p^j`.
    fn above(&self, a: &mut Vec<u128>, j: u32, pj: u128) -> BigUint {
        if j == self.i {
            return BigUint::one();
        }
        let mut pows = Vec::new();
        if j >= 1 {
            let red: Vec<u128> = a.iter().map(|v| v % self.p).collect();
            if self.partials.iter().any(|d| d.eval(&red, &mut pows) != 0) {
                return BigUint::from(self.p as u64).pow((self.n as u32 - 1) * (self.i - j));
            }
        }
        let next = pj * self.p;
        let mut total = BigUint::zero();
        let mut digits = vec![0u128; self.n];
        loop {
            for k in 0..self.n {
                a[k] += digits[k] * pj;
            }
            if self.f.eval(a, &mut pows).is_multiple_of(next) {
                total += self.above(a, j + 1, next);
            }
            for k in 0..self.n {
                a[k] -= digits[k] * pj;
            }
            let mut k = 0;
            loop {
                if k == self.n {
                    return total;
                }
                digits[k] += 1;
                if digits[k] < self.p {
                    break;
                }
                digits[k] = 0;
                k += 1;
            }
        }
    }
}

/// Depth-first descent over residue classes with the simple-zero shortcut.
pub fn count_hensel(f: &MultiPoly, ctx: &PadicContext, i: u32) -> Result<BigUint> {
    check_arity(f, ctx)?;
    if i == 0 {
        return Ok(BigUint::one());
    }
    let m = modulus(ctx.p(), i)?;
    let p = ctx.p() as u128;
    let n = ctx.n();
    let d = Descent {
        p,
        n,
        i,
        f: ModPoly::new(f, m),
        partials: (0..n).map(|k| ModPoly::new(&f.partial(k), p)).collect(),
    };
    let parts: Vec<BigUint> = (0..p)
        .into_par_iter()
        .map(|x0| {
            let mut total = BigUint::zero();
            let mut pows = Vec::new();
            let rest = p.pow(n as u32 - 1);
            for r in 0..rest {
                let mut a = vec![x0; n];
                let mut r = r;
                for slot in a.iter_mut().skip(1) {
                    *slot = r % p;
                    r /= p;
                }
                if d.f.eval(&a, &mut pows).is_multiple_of(p) {
                    total += d.above(&mut a, 1, p);
                }
            }
            total
        })
        .collect();
    Ok(parts.into_iter().sum())
}

pub fn count(f: &MultiPoly, ctx: &PadicContext, i: u32, mode: CountMode) -> Result<BigUint> {
    match mode {
        CountMode::Naive => count_naive(f, ctx, i),
        CountMode::Hensel => count_hensel(f, ctx, i),
    }
}

/// `M_0, ..., M_k` from Hensel counts.
pub fn poincare_truncation(f: &MultiPoly, ctx: &PadicContext, k: u32) -> Result<PoincareSeries> {
    let counts = (0..=k).map(|i| count_hensel(f, ctx, i)).collect::<Result<Vec<_>>>()?;
    PoincareSeries::new(*ctx, counts)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub k: u32,
    pub expected: Vec<BigUint>,
    pub observed: Vec<BigUint>,
    /// First level where the counts predicted by `Z` disagree with the
    /// observed ones, or where `Z` predicts no integral count.
    pub first_mismatch: Option<usize>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.first_mismatch.is_none()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let s = |v: &[BigUint]| v.iter().map(|m| m.to_string()).collect::<Vec<_>>();
        json!({
            "k": self.k,
            "ok": self.ok(),
            "first_mismatch": self.first_mismatch,
            "expected": s(&self.expected),
            "observed": s(&self.observed),
        })
    }
}

/// Compares the counts predicted by `Z` with counted ones up to level `k`.
pub fn verify_zeta_against_counts(z: &ZetaRational, f: &MultiPoly, ctx: &PadicContext, k: u32) -> Result<VerifyReport> {
    let observed = poincare_truncation(f, ctx, k)?.counts().to_vec();
    let (expected, bad) = match poincare_from_zeta(z, ctx.n(), k as usize) {
        Ok(m) => (m.counts().to_vec(), None),
        Err(Error::NonIntegralCount { index, .. }) => {
            // keep the levels that did come out integral
            let prefix = (0..index)
                .map(|j| poincare_from_zeta(z, ctx.n(), j).map(|m| m.counts()[j].clone()))
                .collect::<Result<Vec<_>>>()?;
            (prefix, Some(index))
        }
        Err(e) => return Err(e),
    };
    let first = expected
        .iter()
        .zip(&observed)
        .position(|(a, b)| a != b)
        .or(bad);
    Ok(VerifyReport { k, expected, observed, first_mismatch: first })
}

/// Counts as `u64`, for tests and small reports.
pub fn counts_u64(s: &PoincareSeries) -> Vec<u64> {
    s.counts().iter().map(|m| m.to_u64().unwrap_or(u64::MAX)).collect()
}
