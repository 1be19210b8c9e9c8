use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde_json::json;

use super::zeta::ZetaRational;
use super::{fmt_q, Q};
use crate::context::PadicContext;
use crate::error::{Error, Result};

/// Solution counts `M_0, ..., M_k` of `f = 0 mod p^i` in `(Z/p^i)^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoincareSeries {
    ctx: PadicContext,
    counts: Vec<BigUint>,
}

impl PoincareSeries {
    /// Checks `M_0 = 1` and `M_(i+1) <= p^n M_i`.
    pub fn new(ctx: PadicContext, counts: Vec<BigUint>) -> Result<Self> {
        if counts.first().is_some_and(|m| !m.is_one()) {
            return Err(Error::Invalid("M_0 must be 1".into()));
        }
        let pn = BigUint::from(ctx.p()).pow(ctx.n() as u32);
        for (i, w) in counts.windows(2).enumerate() {
            if w[1] > &pn * &w[0] {
                return Err(Error::Invalid(format!("M_{} > p^n M_{}", i + 1, i)));
            }
        }
        Ok(PoincareSeries { ctx, counts })
    }

    pub fn ctx(&self) -> &PadicContext {
        &self.ctx
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    /// Index of the last available count.
    pub fn max_index(&self) -> usize {
        self.counts.len().saturating_sub(1)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "p": self.ctx.p(),
            "n": self.ctx.n(),
            "counts": self.counts.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
        })
    }

    pub fn truncate(&self, k: usize) -> Self {
        PoincareSeries {
            ctx: self.ctx,
            counts: self.counts.iter().take(k + 1).cloned().collect(),
        }
    }
}

/// Expands `P(t) = (1 - t Z(t)) / (1 - t)` to order `k` and rescales the
/// coefficients by `p^(n i)`.
pub fn poincare_from_zeta(z: &ZetaRational, n: usize, k: usize) -> Result<PoincareSeries> {
    let ctx = PadicContext::new(z.p(), n)?;
    let at_one = z.eval_at_one()?;
    if !at_one.is_one() {
        return Err(Error::NotNormalized(fmt_q(&at_one)));
    }
    let zs = z.series(k);
    let mut counts = Vec::with_capacity(k + 1);
    let mut partial = Q::zero();
    let pn = BigInt::from(z.p()).pow(n as u32);
    let mut scale = BigInt::one();
    for i in 0..=k {
        if i > 0 {
            partial += &zs[i - 1];
        }
        let m = (Q::one() - &partial) * Q::from_integer(scale.clone());
        if !m.is_integer() || m.is_negative() {
            return Err(Error::NonIntegralCount { index: i, value: fmt_q(&m) });
        }
        counts.push(m.to_integer().to_biguint().expect("non-negative"));
        scale *= &pn;
    }
    PoincareSeries::new(ctx, counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;

    fn u(xs: &[u64]) -> Vec<BigUint> {
        xs.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn linear_form_counts() {
        let ctx = PadicContext::new(3, 1).unwrap();
        let z = ZetaRational::one_var_integral(0, 1, 1, &ctx);
        let m = poincare_from_zeta(&z, 1, 2).unwrap();
        assert_eq!(m.counts(), u(&[1, 1, 1]).as_slice());
    }

    #[test]
    fn unit_constant_has_no_solutions() {
        let z = ZetaRational::constant(5, Q::one());
        let m = poincare_from_zeta(&z, 2, 3).unwrap();
        assert_eq!(m.counts(), u(&[1, 0, 0, 0]).as_slice());
    }

    #[test]
    fn rejects_unnormalized() {
        let z = ZetaRational::constant(5, q(1, 2));
        assert!(matches!(poincare_from_zeta(&z, 1, 2), Err(Error::NotNormalized(_))));
    }

    #[test]
    fn wrong_dimension_is_non_integral() {
        let ctx = PadicContext::new(2, 1).unwrap();
        let z = ZetaRational::one_var_integral(0, 1, 1, &ctx);
        assert!(matches!(poincare_from_zeta(&z, 0, 2), Err(Error::BadDimension)));
    }
}
