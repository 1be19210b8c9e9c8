//! Zeta functions from normal-crossings data and by residue-class descent.

pub mod cells;
pub mod plane;
pub mod poles;
pub mod univariate;

use num_traits::One;

use crate::arith::zeta::ZetaRational;
use crate::arith::{p_pow, Q};
use crate::context::PadicContext;

pub use cells::{partition_measure, zeta_from_charts, ChartCell};
pub use plane::{plane_integral, plane_zeta, AxisData};
pub use poles::{candidate_poles_filtered, CandidatePole, CharacterSpec};
pub use univariate::{integrate_factors, integrate_univariate};

/// `integral over p^j Z_p of |x|^(N s + nu - 1)`, allowing `N = 0`.
pub(crate) fn monomial_integral(p: u64, j: u32, n: u32, nu: u32) -> ZetaRational {
    if n == 0 {
        let c = (Q::one() - p_pow(p, -1)) / (Q::one() - p_pow(p, -(nu as i64)))
            * p_pow(p, -(j as i64) * nu as i64);
        return ZetaRational::constant(p, c);
    }
    let ctx = PadicContext::new(p, 1).expect("prime");
    ZetaRational::one_var_integral(j, n, nu, &ctx)
}

/// `c p^e t^k` as a zeta function.
pub(crate) fn term(p: u64, c: Q, e: i64, k: u32) -> ZetaRational {
    ZetaRational::constant(p, c * p_pow(p, e)).shift(k)
}
