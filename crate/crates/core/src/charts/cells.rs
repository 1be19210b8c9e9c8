use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{monomial_integral, term};
use crate::arith::zeta::ZetaRational;
use crate::arith::{p_pow, Q};
use crate::context::PadicContext;
use crate::error::{Error, Result};

/// One chart of a normal-crossings model: on `P^(j_1) x ... x P^(j_n)` the
/// pulled-back integrand is `|eps|^s |eta| prod_(i<=k) |y_i|^(N_i s + nu_i - 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartCell {
    pub k: usize,
    pub monomials: Vec<(u32, u32)>,
    #[serde(rename = "box")]
    pub box_: Vec<u32>,
    pub ord_eps: i64,
    pub ord_eta: i64,
}

impl ChartCell {
    pub fn n(&self) -> usize {
        self.box_.len()
    }

    fn validate(&self) -> Result<()> {
        if self.monomials.len() != self.k || self.k > self.n() {
            return Err(Error::Invalid(format!(
                "cell has k = {} with {} monomials in dimension {}",
                self.k,
                self.monomials.len(),
                self.n()
            )));
        }
        if self.monomials.iter().any(|&(n, nu)| n == 0 || nu == 0) {
            return Err(Error::Invalid("monomial data must be positive".into()));
        }
        if self.ord_eps < 0 {
            return Err(Error::Invalid("negative ord_eps gives a non-polynomial numerator".into()));
        }
        Ok(())
    }

    pub fn measure(&self, p: u64) -> Q {
        p_pow(p, -(self.box_.iter().map(|&j| j as i64).sum::<i64>()))
    }

    pub fn zeta(&self, p: u64) -> Result<ZetaRational> {
        self.validate()?;
        let free: i64 = self.box_[self.k..].iter().map(|&j| j as i64).sum();
        let mut z = term(p, Q::one(), -self.ord_eta - free, self.ord_eps as u32);
        for (i, &(n, nu)) in self.monomials.iter().enumerate() {
            z = &z * &monomial_integral(p, self.box_[i], n, nu);
        }
        Ok(z)
    }
}

/// Total measure of the boxes; `1` when the cells partition `Z_p^n`.
pub fn partition_measure(cells: &[ChartCell], p: u64) -> Q {
    cells.iter().map(|c| c.measure(p)).fold(Q::zero(), |a, b| a + b)
}

/// Sums the chart contributions. Only the trivial character is supported.
pub fn zeta_from_charts(cells: &[ChartCell], ctx: &PadicContext) -> Result<ZetaRational> {
    if cells.is_empty() {
        return Err(Error::EmptyCells);
    }
    if let Some(c) = cells.iter().find(|c| c.n() != ctx.n()) {
        return Err(Error::Arity { expected: ctx.n(), got: c.n() });
    }
    cells
        .iter()
        .map(|c| c.zeta(ctx.p()))
        .try_fold(ZetaRational::zero(ctx.p()), |acc, z| Ok(&acc + &z?))
}
