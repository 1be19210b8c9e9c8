use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::qpoly::QPoly;
use super::{frac_pair, p_pow, parse_frac_pair, Q};
use crate::context::PadicContext;
use crate::error::{Error, Result};

/// A rational function of `t = p^(-s)` whose denominator is a product of
/// labelled factors `1 - p^(-nu) t^N`.
#[derive(Clone, Debug)]
pub struct ZetaRational {
    p: u64,
    numerator: QPoly,
    factors: BTreeMap<(u32, u32), u32>,
}

/// The polynomial `1 - p^(-nu) t^N`.
pub fn factor_poly(p: u64, n: u32, nu: u32) -> QPoly {
    let mut v = vec![Q::zero(); n as usize + 1];
    v[0] = Q::one();
    v[n as usize] -= p_pow(p, -(nu as i64));
    QPoly::from_coeffs(v)
}

impl ZetaRational {
    /// Builds `numerator / prod (1 - p^(-nu) t^N)` and cancels whole factors.
    pub fn new(p: u64, numerator: QPoly, factors: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (n, nu) in factors {
            if n == 0 {
                return Err(Error::Invalid("denominator factor with N = 0".into()));
            }
            *map.entry((n, nu)).or_insert(0) += 1;
        }
        Ok(ZetaRational { p, numerator, factors: map }.reduce())
    }

    pub fn constant(p: u64, c: Q) -> Self {
        ZetaRational { p, numerator: QPoly::constant(c), factors: BTreeMap::new() }
    }

    pub fn zero(p: u64) -> Self {
        ZetaRational::constant(p, Q::zero())
    }

    /// `integral over p^j Z_p of |x|^(N s + nu - 1) |dx|`, that is
    /// `((p-1)/p) p^(-j nu) t^(j N) / (1 - p^(-nu) t^N)`.
    pub fn one_var_integral(j: u32, n: u32, nu: u32, ctx: &PadicContext) -> Self {
        assert!(n >= 1 && nu >= 1, "N and nu must be positive");
        let p = ctx.p();
        let c = Q::new(BigInt::from(p - 1), BigInt::from(p)) * p_pow(p, -(j as i64) * nu as i64);
        let num = QPoly::monomial(c, (j * n) as usize);
        let mut factors = BTreeMap::new();
        factors.insert((n, nu), 1);
        ZetaRational { p, numerator: num, factors }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn numerator(&self) -> &QPoly {
        &self.numerator
    }

    /// Distinct `(N, nu)` labels with their multiplicities.
    pub fn factors(&self) -> impl Iterator<Item = ((u32, u32), u32)> + '_ {
        self.factors.iter().map(|(k, v)| (*k, *v))
    }

    /// Labels with repetition.
    pub fn factor_list(&self) -> Vec<(u32, u32)> {
        self.factors
            .iter()
            .flat_map(|(k, c)| std::iter::repeat_n(*k, *c as usize))
            .collect()
    }

    pub fn denominator(&self) -> QPoly {
        self.factors.iter().fold(QPoly::one(), |acc, ((n, nu), c)| {
            (0..*c).fold(acc, |a, _| &a * &factor_poly(self.p, *n, *nu))
        })
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Cancels denominator factors that divide the numerator exactly,
    /// largest `N` first.
    pub fn reduce(mut self) -> Self {
        if self.numerator.is_zero() {
            self.factors.clear();
            return self;
        }
        let mut keys: Vec<_> = self.factors.keys().cloned().collect();
        keys.sort_by(|a, b| b.cmp(a));
        for key in keys {
            loop {
                let count = self.factors[&key];
                if count == 0 {
                    self.factors.remove(&key);
                    break;
                }
                match div_by_factor(&self.numerator, self.p, key.0, key.1) {
                    Some(q) => {
                        self.numerator = q;
                        *self.factors.get_mut(&key).unwrap() -= 1;
                    }
                    None => break,
                }
            }
        }
        self
    }

    /// Factors sharing a proper common divisor with the numerator: part of
    /// their pole line cancels, but not the whole factor.
    pub fn partial_pole_lines(&self) -> Vec<(u32, u32)> {
        self.factors
            .keys()
            .filter(|(n, nu)| {
                let g = QPoly::gcd(&self.numerator, &factor_poly(self.p, *n, *nu));
                g.degree().unwrap_or(0) > 0
            })
            .cloned()
            .collect()
    }

    pub fn scale(&self, c: &Q) -> Self {
        ZetaRational {
            p: self.p,
            numerator: self.numerator.scale(c),
            factors: self.factors.clone(),
        }
        .reduce()
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: u32) -> Self {
        ZetaRational {
            p: self.p,
            numerator: self.numerator.shift(k as usize),
            factors: self.factors.clone(),
        }
    }

    /// Multiplies by `c t^k`.
    pub fn monomial_times(&self, c: &Q, k: u32) -> Self {
        self.shift(k).scale(c)
    }

    pub fn eval(&self, t: &Q) -> Result<Q> {
        let d = self.denominator().eval(t);
        if d.is_zero() {
            return Err(Error::DivisionByZero(format!("denominator vanishes at t = {t}")));
        }
        Ok(self.numerator.eval(t) / d)
    }

    pub fn eval_at_one(&self) -> Result<Q> {
        self.eval(&Q::one())
    }

    /// Power-series coefficients of `t^0 .. t^k`.
    pub fn series(&self, k: usize) -> Vec<Q> {
        let mut s: Vec<Q> = (0..=k).map(|i| self.numerator.coeff(i)).collect();
        for ((n, nu), c) in &self.factors {
            let a = p_pow(self.p, -(*nu as i64));
            let n = *n as usize;
            for _ in 0..*c {
                for i in n..=k {
                    let add = &a * &s[i - n];
                    s[i] += add;
                }
            }
        }
        s
    }

    /// Distinct candidate real parts `-nu/N` with the number of factors on each.
    pub fn real_parts(&self) -> Vec<(Q, u32)> {
        let mut m: BTreeMap<Q, u32> = BTreeMap::new();
        for ((n, nu), c) in &self.factors {
            *m.entry(Q::new(-BigInt::from(*nu), BigInt::from(*n))).or_insert(0) += c;
        }
        m.into_iter().collect()
    }

    fn combine_factors(a: &BTreeMap<(u32, u32), u32>, b: &BTreeMap<(u32, u32), u32>) -> BTreeMap<(u32, u32), u32> {
        let mut m = a.clone();
        for (k, c) in b {
            let e = m.entry(*k).or_insert(0);
            *e = (*e).max(*c);
        }
        m
    }

    fn cofactor(&self, target: &BTreeMap<(u32, u32), u32>) -> QPoly {
        let mut acc = QPoly::one();
        for ((n, nu), c) in target {
            let have = self.factors.get(&(*n, *nu)).copied().unwrap_or(0);
            for _ in have..*c {
                acc = &acc * &factor_poly(self.p, *n, *nu);
            }
        }
        acc
    }
}

/// Exact quotient of `a` by `1 - p^(-nu) t^N`, by synthetic division
/// against `t^N - p^nu`.
fn div_by_factor(a: &QPoly, p: u64, n: u32, nu: u32) -> Option<QPoly> {
    let n = n as usize;
    let mut r: Vec<Q> = a.coeffs().to_vec();
    if r.len() <= n {
        return None;
    }
    let c = p_pow(p, nu as i64);
    let mut quot = vec![Q::zero(); r.len() - n];
    for i in (n..r.len()).rev() {
        if r[i].is_zero() {
            continue;
        }
        let lead = std::mem::replace(&mut r[i], Q::zero());
        r[i - n] += &c * &lead;
        quot[i - n] = lead;
    }
    if r[..n].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let m = -c;
    Some(QPoly::from_coeffs(quot.into_iter().map(|x| x * &m).collect()))
}

impl PartialEq for ZetaRational {
    fn eq(&self, o: &Self) -> bool {
        self.p == o.p && &self.numerator * &o.denominator() == &o.numerator * &self.denominator()
    }
}

impl Add for &ZetaRational {
    type Output = ZetaRational;
    fn add(self, o: &ZetaRational) -> ZetaRational {
        assert_eq!(self.p, o.p, "adding zeta functions for different primes");
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let target = ZetaRational::combine_factors(&self.factors, &o.factors);
        let num = &(&self.numerator * &self.cofactor(&target)) + &(&o.numerator * &o.cofactor(&target));
        ZetaRational { p: self.p, numerator: num, factors: target }.reduce()
    }
}

impl Mul for &ZetaRational {
    type Output = ZetaRational;
    fn mul(self, o: &ZetaRational) -> ZetaRational {
        assert_eq!(self.p, o.p, "multiplying zeta functions for different primes");
        let mut factors = self.factors.clone();
        for (k, c) in &o.factors {
            *factors.entry(*k).or_insert(0) += c;
        }
        ZetaRational {
            p: self.p,
            numerator: &self.numerator * &o.numerator,
            factors,
        }
        .reduce()
    }
}

impl std::iter::Sum for ZetaRational {
    fn sum<I: Iterator<Item = ZetaRational>>(mut iter: I) -> Self {
        let first = iter.next().expect("sum of an empty list of zeta functions");
        iter.fold(first, |acc, z| &acc + &z)
    }
}

impl fmt::Display for ZetaRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.numerator)?;
        if self.factors.is_empty() {
            return Ok(());
        }
        write!(f, " / (")?;
        let mut first = true;
        for ((n, nu), c) in &self.factors {
            for _ in 0..*c {
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                let t = if *n == 1 { "t".to_string() } else { format!("t^{n}") };
                write!(f, "(1 - {t}/{}^{nu})", self.p)?;
            }
        }
        write!(f, ")")
    }
}

#[derive(Serialize, Deserialize)]
struct FactorJson {
    #[serde(rename = "N")]
    n: u32,
    nu: u32,
}

#[derive(Serialize, Deserialize)]
struct ZetaJson {
    p: u64,
    numerator: Vec<[String; 2]>,
    denominator: Vec<FactorJson>,
}

impl Serialize for ZetaRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ZetaJson {
            p: self.p,
            numerator: self.numerator.coeffs().iter().map(frac_pair).collect(),
            denominator: self
                .factor_list()
                .into_iter()
                .map(|(n, nu)| FactorJson { n, nu })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ZetaRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = ZetaJson::deserialize(d)?;
        if !crate::context::is_prime(j.p) {
            return Err(D::Error::custom(format!("{} is not a prime", j.p)));
        }
        let coeffs = j
            .numerator
            .iter()
            .map(|c| parse_frac_pair(c).ok_or_else(|| D::Error::custom("bad fraction")))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        ZetaRational::new(j.p, QPoly::from_coeffs(coeffs), j.denominator.iter().map(|f| (f.n, f.nu)))
            .map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{q, qi};

    fn ctx(p: u64) -> PadicContext {
        PadicContext::new(p, 1).unwrap()
    }

    #[test]
    fn one_var_examples() {
        let z = ZetaRational::one_var_integral(0, 1, 1, &ctx(5));
        assert_eq!(z.numerator(), &QPoly::constant(q(4, 5)));
        assert_eq!(z.factor_list(), vec![(1, 1)]);
        let z = ZetaRational::one_var_integral(2, 1, 1, &ctx(3));
        assert_eq!(z.numerator(), &QPoly::monomial(q(2, 27), 2));
    }

    #[test]
    fn whole_factor_cancellation_only() {
        // (1 - t/3)/(1 - t^2/9) cancels nothing: (1,1) is not a listed factor
        let z = ZetaRational::new(3, factor_poly(3, 1, 1), [(2, 2)]).unwrap();
        assert_eq!(z.factor_list(), vec![(2, 2)]);
        assert_eq!(z.partial_pole_lines(), vec![(2, 2)]);
        let w = ZetaRational::new(3, factor_poly(3, 2, 2), [(1, 1), (2, 2)]).unwrap();
        assert_eq!(w.factor_list(), vec![(1, 1)]);
        assert_eq!(w.numerator(), &QPoly::one());
    }

    #[test]
    fn series_of_geometric_factor() {
        let z = ZetaRational::new(2, QPoly::one(), [(2, 1)]).unwrap();
        assert_eq!(z.series(4), vec![qi(1), qi(0), q(1, 2), qi(0), q(1, 4)]);
    }

    #[test]
    fn json_round_trip() {
        let z = &ZetaRational::one_var_integral(0, 1, 1, &ctx(3)) * &ZetaRational::one_var_integral(1, 2, 3, &ctx(3));
        let s = serde_json::to_string(&z).unwrap();
        let back: ZetaRational = serde_json::from_str(&s).unwrap();
        assert_eq!(back, z);
        assert_eq!(back.factor_list(), z.factor_list());
    }
}
