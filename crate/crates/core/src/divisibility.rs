//! Divisibility of the counts `M_i` by powers of `p` read off from the
//! smallest real part `l` of a pole: `v_p(M_i) >= ceil((n + l) i - a)`.

use num_bigint::BigInt;
use num_traits::One;
use serde_json::json;

use crate::arith::laurent::{pole_order, real_part};
use crate::arith::poincare::PoincareSeries;
use crate::arith::qpoly::QPoly;
use crate::arith::zeta::{factor_poly, ZetaRational};
use crate::arith::{ceil_q, frac_pair, ord_p, ord_p_uint, p_pow, Q};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallestPole {
    pub l: Q,
    /// The real point `t = p^(nu/N)` is not a pole; only the complex
    /// points on that line may be.
    pub possibly_complex_only: bool,
}

/// Smallest `-nu/N` among the denominator factors left after reduction.
pub fn smallest_real_pole(z: &ZetaRational) -> Result<SmallestPole> {
    let z = z.clone().reduce();
    let l = z
        .real_parts()
        .into_iter()
        .map(|(s, _)| s)
        .min()
        .ok_or(Error::NoPoles)?;
    let (_, order) = pole_order(&z, &l)?;
    Ok(SmallestPole { l, possibly_complex_only: order == 0 })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub i: usize,
    pub required: i64,
    pub valuation: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisibilityReport {
    pub l: Q,
    pub n: usize,
    pub a: i64,
    pub a_constructive: Option<i64>,
    pub checked_up_to: usize,
    pub violations: Vec<Violation>,
}

impl DivisibilityReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "l": frac_pair(&self.l),
            "n": self.n,
            "a_min_empirical": self.a,
            "a_min_constructive": self.a_constructive,
            "checked_up_to": self.checked_up_to,
            "violations": self.violations.iter()
                .map(|v| json!({"i": v.i, "required": v.required, "valuation": v.valuation}))
                .collect::<Vec<_>>(),
        })
    }
}

fn int(x: i64) -> Q {
    Q::from_integer(BigInt::from(x))
}

/// `ceil((n + l) i)`.
fn slope_ceil(n: usize, l: &Q, i: usize) -> i64 {
    let x = (int(n as i64) + l) * int(i as i64);
    ceil_q(&x).try_into().expect("small exponent")
}

fn check_range(n: usize, l: &Q) -> Result<()> {
    if l < &int(-(n as i64)) {
        return Err(Error::Invalid(format!("l must be at least -{n}")));
    }
    Ok(())
}

/// Checks `v_p(M_i) >= ceil((n + l) i - a)` for every available `i`.
/// `M_i = 0` passes.
pub fn check_divisibility(m: &PoincareSeries, l: &Q, a: i64) -> Result<DivisibilityReport> {
    let (p, n) = (m.ctx().p(), m.ctx().n());
    check_range(n, l)?;
    let mut violations = Vec::new();
    for (i, c) in m.counts().iter().enumerate() {
        let Some(v) = ord_p_uint(c, p) else { continue };
        let required = slope_ceil(n, l, i) - a;
        if (v as i64) < required {
            violations.push(Violation { i, required, valuation: v });
        }
    }
    Ok(DivisibilityReport {
        l: l.clone(),
        n,
        a,
        a_constructive: None,
        checked_up_to: m.max_index(),
        violations,
    })
}

/// Least `a` for which `check_divisibility` passes on the available counts.
pub fn min_shift(m: &PoincareSeries, l: &Q) -> Result<i64> {
    let (p, n) = (m.ctx().p(), m.ctx().n());
    check_range(n, l)?;
    Ok(m.counts()
        .iter()
        .enumerate()
        .filter_map(|(i, c)| ord_p_uint(c, p).map(|v| slope_ceil(n, l, i) - v as i64))
        .fold(0, i64::max))
}

/// Whether `c_i p^(n i)` is an integer multiple of `p^ceil((n + l) i)` for
/// all `i <= k` (missing coefficients count as zero).
pub fn divisibility_property_check(c: &[Q], n: usize, l: &Q, p: u64, k: usize) -> bool {
    c.iter().take(k + 1).enumerate().all(|(i, x)| match ord_p(x, p) {
        None => true,
        Some(v) => {
            let rest = x / p_pow(p, v);
            rest.denom().is_one() && v + (n * i) as i64 >= slope_ceil(n, l, i)
        }
    })
}

/// `C(t) = (prod_K (1 - p^-nu t^N) - t B(t)) / (1 - t)` with
/// `B = Z prod_K (1 - p^-nu t^N)` and `K` the factors with `-nu/N >= l`,
/// together with the least `a` making `p^a C(t)` have the divisibility
/// property.
pub fn constructive_shift(z: &ZetaRational, n: usize, l: &Q) -> Result<(QPoly, i64)> {
    check_range(n, l)?;
    let p = z.p();
    let mut prod_k = QPoly::one();
    let mut rest = QPoly::one();
    for ((fn_, fnu), c) in z.factors() {
        let f = factor_poly(p, fn_, fnu);
        for _ in 0..c {
            if real_part(fn_, fnu) >= *l {
                prod_k = &prod_k * &f;
            } else {
                rest = &rest * &f;
            }
        }
    }
    let b = z
        .numerator()
        .div_exact(&rest)
        .ok_or_else(|| Error::Invalid("a pole lies left of l".into()))?;
    let one_minus_t = QPoly::from_ints(&[1, -1]);
    let c = (&prod_k - &b.shift(1))
        .div_exact(&one_minus_t)
        .ok_or_else(|| Error::NotNormalized("Z(1) != 1".into()))?;
    let a = c
        .coeffs()
        .iter()
        .enumerate()
        .filter_map(|(i, x)| ord_p(x, p).map(|v| slope_ceil(n, l, i) - (n * i) as i64 - v))
        .max()
        .unwrap_or(0);
    Ok((c, a))
}

/// Full report: empirical `a` from the counts and, given `Z`, the
/// constructive `a`; violations are those of the empirical shift.
pub fn divisibility_report(z: Option<&ZetaRational>, m: &PoincareSeries, l: &Q) -> Result<DivisibilityReport> {
    let a = min_shift(m, l)?;
    let mut report = check_divisibility(m, l, a)?;
    if let Some(z) = z {
        report.a_constructive = Some(constructive_shift(z, m.ctx().n(), l)?.1);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{q, qi};
    use crate::context::PadicContext;
    use num_bigint::BigUint;

    fn series(p: u64, n: usize, xs: &[u64]) -> PoincareSeries {
        PoincareSeries::new(PadicContext::new(p, n).unwrap(), xs.iter().map(|&x| BigUint::from(x)).collect()).unwrap()
    }

    #[test]
    fn linear_form() {
        let m = series(3, 1, &[1, 1, 1, 1]);
        assert!(check_divisibility(&m, &qi(-1), 0).unwrap().ok());
        assert_eq!(min_shift(&m, &qi(-1)).unwrap(), 0);
        assert_eq!(min_shift(&series(3, 1, &[1]), &q(-1, 2)).unwrap(), 0);
    }

    #[test]
    fn smallest_pole_simple() {
        let ctx = PadicContext::new(5, 1).unwrap();
        let z = ZetaRational::one_var_integral(0, 1, 1, &ctx);
        assert_eq!(smallest_real_pole(&z).unwrap(), SmallestPole { l: qi(-1), possibly_complex_only: false });
        assert_eq!(smallest_real_pole(&ZetaRational::constant(5, qi(1))), Err(Error::NoPoles));
    }

    #[test]
    fn property_basics() {
        assert!(divisibility_property_check(&[qi(1)], 3, &q(-3, 2), 2, 5));
        // 1/(1 - t^2/8): coefficients 8^-j at t^(2j)
        let c: Vec<Q> = (0..=8).map(|i| if i % 2 == 0 { Q::new(BigInt::one(), BigInt::from(8).pow(i / 2)) } else { qi(0) }).collect();
        assert!(divisibility_property_check(&c, 3, &q(-3, 2), 2, 8));
        assert!(!divisibility_property_check(&c, 3, &qi(-1), 2, 8));
    }
}
