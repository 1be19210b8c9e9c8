use num_bigint::BigInt;
use num_traits::One;

use crate::arith::qpoly::QPoly;
use crate::arith::zeta::ZetaRational;
use crate::arith::{p_pow, Q};
use crate::context::PadicContext;
use crate::error::{Error, Result};

/// `Z` of `xy + z^i` on `Z_p^3`:
///
/// `(q-1)/q (1 - q^-3 t + (q-1) sum_{k=2}^{i-1} q^-(k+2) t^k) / ((1 - t/q)(1 - q^-(i+1) t^i))`.
pub fn zeta_xy_zi(ctx: &PadicContext, i: u32) -> Result<ZetaRational> {
    if i < 2 {
        return Err(Error::Invalid(format!("xy+z^i needs i >= 2, got {i}")));
    }
    if ctx.n() != 3 {
        return Err(Error::Arity { expected: 3, got: ctx.n() });
    }
    let p = ctx.p();
    let qm1 = Q::from_integer(BigInt::from(p - 1));
    let mut c = vec![Q::one(), -p_pow(p, -3)];
    for k in 2..i {
        c.push(&qm1 * p_pow(p, -(k as i64 + 2)));
    }
    let num = QPoly::from_coeffs(c).scale(&(qm1 * p_pow(p, -1)));
    ZetaRational::new(p, num, [(1, 1), (i, i + 1)])
}
