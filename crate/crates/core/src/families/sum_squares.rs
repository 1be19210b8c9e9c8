use num_traits::One;

use crate::arith::laurent::{laurent_at, vanishing_count, ResidueValue};
use crate::arith::qpoly::QPoly;
use crate::arith::zeta::ZetaRational;
use crate::arith::{p_pow, qi, Q};
use crate::charts::integrate_univariate;
use crate::context::PadicContext;
use crate::error::{Error, Result};
use crate::poly::parse_poly;

#[derive(Clone, Debug, PartialEq)]
pub struct SumSquares {
    pub z: ZetaRational,
    /// Laurent coefficients `b_(-m), ..., b_0` at each real candidate pole.
    pub laurent: Vec<(Q, Vec<ResidueValue>)>,
}

/// `Z` of `x^2 + y^2`, split by `p mod 4`.
pub fn zeta_sum_squares(ctx: &PadicContext) -> Result<SumSquares> {
    if ctx.n() != 2 {
        return Err(Error::Arity { expected: 2, got: ctx.n() });
    }
    let p = ctx.p();
    let one_minus = |e: i64| Q::one() - p_pow(p, e);
    let z = match p % 4 {
        // x^2 + y^2 = (x + i y)(x - i y) with i in Z_p
        1 => {
            let lin = ZetaRational::new(p, QPoly::constant(one_minus(-1)), [(1, 1)])?;
            &lin * &lin
        }
        3 => ZetaRational::new(p, QPoly::constant(one_minus(-2)), [(2, 2)])?,
        _ => {
            // one blowup: |x|^(2s+1) |1+u^2|^s over u in Z_2 and over u in 2 Z_2
            let c1 = PadicContext::new(p, 1)?;
            let h = parse_poly("u^2+1", &["u"])?;
            let pieces = &integrate_univariate(&h, 1, 1, 0, &c1)? + &integrate_univariate(&h, 1, 1, 1, &c1)?;
            &ZetaRational::one_var_integral(0, 2, 2, &c1) * &pieces
        }
    };
    let s0 = qi(-1);
    let depth = vanishing_count(&z, &s0).max(1);
    let laurent = vec![(s0.clone(), laurent_at(&z, &s0, depth)?)];
    Ok(SumSquares { z, laurent })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;
    use crate::arith::radical::RadicalScalar;

    fn run(p: u64) -> SumSquares {
        zeta_sum_squares(&PadicContext::new(p, 2).unwrap()).unwrap()
    }

    #[test]
    fn split_prime_double_pole() {
        let b = &run(5).laurent[0].1;
        assert_eq!(b[0], ResidueValue::new(RadicalScalar::from_q(5, q(16, 25)), 2));
    }

    #[test]
    fn inert_prime_simple_pole() {
        let s = run(3);
        assert_eq!(s.laurent[0].1[0], ResidueValue::new(RadicalScalar::from_q(3, q(8, 18)), 1));
        assert_eq!(s.z.series(2), vec![qi(1) - q(1, 9), qi(0), q(8, 81)]);
    }

    #[test]
    fn two() {
        let s = run(2);
        assert_eq!(s.laurent[0].1[0], ResidueValue::new(RadicalScalar::from_q(2, q(1, 2)), 1));
        assert_eq!(s.z.eval_at_one().unwrap(), qi(1));
    }
}
