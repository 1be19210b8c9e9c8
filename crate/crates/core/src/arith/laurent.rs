use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::json;

use super::radical::RadicalScalar;
use super::zeta::ZetaRational;
use super::{frac_pair, parse_frac_pair, Q};
use crate::error::{Error, Result};

/// `value * (log p)^(-logpow)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ResidueValue {
    pub value: RadicalScalar,
    pub logpow: u32,
}

impl ResidueValue {
    pub fn new(value: RadicalScalar, logpow: u32) -> Self {
        ResidueValue { value, logpow }
    }

    pub fn zero(p: u64, logpow: u32) -> Self {
        ResidueValue { value: RadicalScalar::zero(p), logpow }
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// Sum of two values with the same power of `log p`.
    pub fn checked_add(&self, o: &Self) -> Option<Self> {
        (self.logpow == o.logpow).then(|| ResidueValue::new(&self.value + &o.value, self.logpow))
    }

    pub fn mul(&self, o: &Self) -> Self {
        ResidueValue::new(&self.value * &o.value, self.logpow + o.logpow)
    }

    pub fn scale(&self, x: &RadicalScalar) -> Self {
        ResidueValue::new(&self.value * x, self.logpow)
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64() / (self.value.p() as f64).ln().powi(self.logpow as i32)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "M": self.value.m(),
            "coeffs": self.value.coeffs().iter().map(frac_pair).collect::<Vec<_>>(),
            "logpow": self.logpow,
        })
    }

    pub fn from_json(v: &serde_json::Value, p: u64) -> Result<Self> {
        let bad = || Error::Invalid("malformed residue JSON".into());
        let m = v["M"].as_u64().ok_or_else(bad)?;
        let logpow = v["logpow"].as_u64().ok_or_else(bad)? as u32;
        let pairs: Vec<[String; 2]> = serde_json::from_value(v["coeffs"].clone()).map_err(|_| bad())?;
        let coeffs = pairs.iter().map(parse_frac_pair).collect::<Option<Vec<_>>>().ok_or_else(bad)?;
        if m == 0 || coeffs.len() as u64 != m {
            return Err(bad());
        }
        Ok(ResidueValue::new(RadicalScalar::from_coeffs(p, m, coeffs), logpow))
    }
}

impl fmt::Display for ResidueValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.logpow {
            0 => write!(f, "{}", self.value),
            1 => write!(f, "({}) / log {}", self.value, self.value.p()),
            k => write!(f, "({}) / (log {})^{k}", self.value, self.value.p()),
        }
    }
}

/// `kappa = prod (p-1)/(p N_i log p)`.
pub fn kappa(p: u64, ns: &[u32]) -> ResidueValue {
    let mut x = Q::one();
    for n in ns {
        x *= Q::new(BigInt::from(p - 1), BigInt::from(p) * BigInt::from(*n));
    }
    ResidueValue::new(RadicalScalar::from_q(p, x), ns.len() as u32)
}

/// Number of denominator factors vanishing at `s0`.
pub fn vanishing_count(z: &ZetaRational, s0: &Q) -> u32 {
    z.factors()
        .filter(|((n, nu), _)| is_on_line(*n, *nu, s0))
        .map(|(_, c)| c)
        .sum()
}

fn is_on_line(n: u32, nu: u32, s0: &Q) -> bool {
    s0 * Q::from_integer(BigInt::from(n)) + Q::from_integer(BigInt::from(nu)) == Q::zero()
}

/// `t0 = p^(-s0)`.
fn t_at(p: u64, s0: &Q) -> Result<RadicalScalar> {
    let num = (-s0.numer())
        .to_i64()
        .ok_or_else(|| Error::Unsupported("s0 numerator too large".into()))?;
    let den = s0
        .denom()
        .to_u64()
        .ok_or_else(|| Error::Unsupported("s0 denominator too large".into()))?;
    Ok(RadicalScalar::p_power(p, num, den))
}

type Series = Vec<RadicalScalar>;

fn series_mul(a: &Series, b: &Series, len: usize, p: u64) -> Series {
    let mut out = vec![RadicalScalar::zero(p); len];
    for i in 0..len.min(a.len()) {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..(len - i).min(b.len()) {
            out[i + j] = &out[i + j] + &(&a[i] * &b[j]);
        }
    }
    out
}

fn series_inv(a: &Series, len: usize, p: u64) -> Series {
    let c0 = a[0].inv().expect("invertible constant term");
    let mut out = vec![RadicalScalar::zero(p); len];
    if len == 0 {
        return out;
    }
    out[0] = c0.clone();
    for k in 1..len {
        let mut acc = RadicalScalar::zero(p);
        for j in 1..=k.min(a.len() - 1) {
            acc = &acc + &(&a[j] * &out[k - j]);
        }
        out[k] = -&(&acc * &c0);
    }
    out
}

fn factorial(k: usize) -> Q {
    Q::from_integer((1..=k).fold(BigInt::one(), |a, i| a * BigInt::from(i)))
}

/// `W(U)` with `Z(t0 e^(-U)) = U^(-v) W(U)`, to `len` terms, where `v` is
/// the number of factors vanishing at `s0`.
fn regular_part(z: &ZetaRational, s0: &Q, len: usize) -> Result<(u32, Series)> {
    let p = z.p();
    let t0 = t_at(p, s0)?;
    let v = vanishing_count(z, s0);
    let mut num = vec![RadicalScalar::zero(p); len];
    let mut t0j = RadicalScalar::one(p);
    for (j, c) in z.numerator().coeffs().iter().enumerate() {
        if !c.is_zero() {
            let base = t0j.scale(c);
            for (i, slot) in num.iter_mut().enumerate() {
                let e = Q::from_integer(num_traits::pow(BigInt::from(-(j as i64)), i)) / factorial(i);
                *slot = &*slot + &base.scale(&e);
            }
        }
        t0j = &t0j * &t0;
    }
    let mut den: Series = vec![RadicalScalar::one(p)];
    for ((n, nu), c) in z.factors() {
        let nq = Q::from_integer(BigInt::from(n));
        let f: Series = if is_on_line(n, nu, s0) {
            (0..len)
                .map(|k| {
                    let sign = if k % 2 == 0 { Q::one() } else { -Q::one() };
                    RadicalScalar::from_q(p, sign * num_traits::pow(nq.clone(), k + 1) / factorial(k + 1))
                })
                .collect()
        } else {
            let cst = &RadicalScalar::p_power(p, -(nu as i64), 1) * &t0.pow(n as i64).expect("t0 != 0");
            (0..len)
                .map(|k| {
                    if k == 0 {
                        &RadicalScalar::one(p) - &cst
                    } else {
                        let e = num_traits::pow(-nq.clone(), k) / factorial(k);
                        -&cst.scale(&e)
                    }
                })
                .collect()
        };
        for _ in 0..c {
            den = series_mul(&den, &f, len, p);
        }
    }
    Ok((v, series_mul(&num, &series_inv(&den, len, p), len, p)))
}

/// Laurent coefficients `b_(-depth), ..., b_0` of `Z` around `s = s0`.
///
/// Coefficients beyond the number of vanishing factors are zero.
pub fn laurent_at(z: &ZetaRational, s0: &Q, depth: u32) -> Result<Vec<ResidueValue>> {
    if depth == 0 {
        return Err(Error::Invalid("depth must be at least 1".into()));
    }
    let p = z.p();
    let v = vanishing_count(z, s0);
    let (_, w) = regular_part(z, s0, v as usize + 1)?;
    Ok((0..=depth)
        .rev()
        .map(|k| {
            if k > v {
                ResidueValue::zero(p, k)
            } else {
                ResidueValue::new(w[(v - k) as usize].clone(), k)
            }
        })
        .collect())
}

/// `(expected, actual)` pole order at `s0`, where `expected` counts the
/// vanishing denominator factors and `actual` drops leading zeros.
pub fn pole_order(z: &ZetaRational, s0: &Q) -> Result<(u32, u32)> {
    let v = vanishing_count(z, s0);
    if v == 0 || z.is_zero() {
        return Ok((v, 0));
    }
    let (_, w) = regular_part(z, s0, v as usize)?;
    let lead_zeros = w.iter().take_while(|x| x.is_zero()).count() as u32;
    Ok((v, v - lead_zeros.min(v)))
}

/// Leading coefficient `b_(-m)` at the actual pole order `m`, if `s0` is a pole.
pub fn leading_coefficient(z: &ZetaRational, s0: &Q) -> Result<Option<(u32, ResidueValue)>> {
    let (_, m) = pole_order(z, s0)?;
    if m == 0 {
        return Ok(None);
    }
    let b = laurent_at(z, s0, m)?;
    Ok(Some((m, b[0].clone())))
}

/// `-nu/N` in lowest terms.
pub fn real_part(n: u32, nu: u32) -> Q {
    let g = (n as u64).gcd(&(nu as u64));
    Q::new(-BigInt::from(nu as u64 / g), BigInt::from(n as u64 / g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::qpoly::QPoly;
    use crate::arith::{q, qi};
    use crate::context::PadicContext;

    #[test]
    fn simple_pole_of_one_var() {
        let ctx = PadicContext::new(7, 1).unwrap();
        let z = ZetaRational::one_var_integral(0, 1, 1, &ctx);
        let b = laurent_at(&z, &qi(-1), 1).unwrap();
        assert_eq!(b[0], kappa(7, &[1]));
        assert_eq!(pole_order(&z, &qi(-1)).unwrap(), (1, 1));
        assert_eq!(pole_order(&z, &q(-1, 2)).unwrap(), (0, 0));
    }

    #[test]
    fn regular_point_gives_value() {
        let ctx = PadicContext::new(3, 1).unwrap();
        let z = ZetaRational::one_var_integral(0, 1, 1, &ctx);
        let b = laurent_at(&z, &qi(0), 1).unwrap();
        assert!(b[0].is_zero());
        // Z(s = 0) = (2/3)/(1 - 1/3) = 1
        assert_eq!(b[1].value, RadicalScalar::one(3));
    }

    #[test]
    fn cancelled_real_point_has_zero_residue() {
        // (1 - t/3) / (1 - t^2/9): the factor survives but t = 3 is not a pole
        let z = ZetaRational::new(3, QPoly::from_coeffs(vec![qi(1), q(-1, 3)]), [(2, 2)]).unwrap();
        assert_eq!(pole_order(&z, &qi(-1)).unwrap(), (1, 0));
        let b = laurent_at(&z, &qi(-1), 1).unwrap();
        assert!(b[0].is_zero());
        assert_eq!(b[1].value, RadicalScalar::from_q(3, q(1, 2)));
        let (e, a) = pole_order(&z, &q(-3, 2)).unwrap();
        assert_eq!((e, a), (0, 0));
    }
}
