use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::laurent::{kappa, pole_order, ResidueValue};
use crate::arith::radical::RadicalScalar;
use crate::arith::zeta::ZetaRational;
use crate::arith::{ord_p_int, q, Q};
use crate::charts::{plane_zeta, CharacterSpec};
use crate::context::PadicContext;
use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::resolve::{resolution_candidate_poles, resolve_germ, DEFAULT_MAX_STEPS};

#[derive(Clone, Debug, PartialEq)]
pub struct X2Ayl {
    pub a: BigInt,
    pub l: u32,
    /// Numerical data `(N, nu)` of the exceptional curves.
    pub data: Vec<(u32, u32)>,
    /// Candidate real parts from the resolution, ascending.
    pub candidates: Vec<Q>,
    /// Candidates at which `Z` really has a pole, or all candidates when
    /// `Z` could not be assembled.
    pub real_parts: Vec<Q>,
    /// `-1/2 - 1/l`.
    pub smallest: Q,
    /// `b_(-1)` at `smallest` from the closed formula, where one applies.
    pub residue: Option<ResidueValue>,
    pub z: Option<ZetaRational>,
}

/// Whether the nonzero integer `x` is a square in `Q_p`.
pub fn is_square_qp(x: &BigInt, p: u64) -> bool {
    if x.is_zero() {
        return true;
    }
    let v = ord_p_int(x, p).unwrap_or(0);
    if v % 2 == 1 {
        return false;
    }
    let pb = BigInt::from(p);
    let u = x / pb.pow(v);
    if p == 2 {
        return u.mod_floor(&BigInt::from(8)) == BigInt::one();
    }
    u.mod_floor(&pb).modpow(&BigInt::from((p - 1) / 2), &pb).is_one()
}

fn rq(p: u64, x: Q) -> RadicalScalar {
    RadicalScalar::from_q(p, x)
}

/// `1 / (p^(num/den) - 1)`.
fn geometric(p: u64, num: i64, den: u64) -> RadicalScalar {
    (&RadicalScalar::p_power(p, num, den) - &RadicalScalar::one(p))
        .inv()
        .expect("p^x != 1 for x != 0")
}

fn closed_residue(p: u64, a: &BigInt, l: u32) -> Option<ResidueValue> {
    let pq = Q::from_integer(BigInt::from(p));
    let w = rq(p, (&pq - Q::one()) / &pq);
    if l % 2 == 1 {
        let l = l as u64;
        let v = ord_p_int(a, p).unwrap_or(0) as i64;
        let mut sum = rq(p, (&pq - Q::from_integer(BigInt::from(2))) / &pq);
        for g in [geometric(p, 1, 2), geometric(p, l as i64 - 2, 2 * l), geometric(p, 1, l)] {
            sum = &sum + &(&w * &g);
        }
        let abs_a = RadicalScalar::p_power(p, v, l);
        return Some(kappa(p, &[2 * l as u32]).scale(&(&abs_a * &sum)));
    }
    if l < 4 {
        return None;
    }
    let r = (l / 2) as u64;
    let lead = &w * &geometric(p, 1, r);
    let four = BigInt::from(4);
    let rest = if p != 2 && ord_p_int(a, p) == Some(0) && !is_square_qp(&-a, p) {
        RadicalScalar::one(p)
    } else if p == 2 && a.mod_floor(&four) == BigInt::one() {
        // |a + x^2| = 1/2 on every odd x
        &w + &RadicalScalar::p_power(p, 1 - r as i64, 2 * r)
    } else {
        return None;
    };
    Some(kappa(p, &[l]).scale(&(&lead + &rest)))
}

/// Pole data and `Z` of `x^2 + a y^l` on `Z_p^2`.
pub fn zeta_x2_ayl(ctx: &PadicContext, a: &BigInt, l: u32) -> Result<X2Ayl> {
    if l < 2 {
        return Err(Error::Unsupported(format!("x^2 + a y^l needs l >= 2, got {l}")));
    }
    if a.is_zero() {
        return Err(Error::Invalid("a must be nonzero".into()));
    }
    if ctx.n() != 2 {
        return Err(Error::Arity { expected: 2, got: ctx.n() });
    }
    let p = ctx.p();
    let f = MultiPoly::from_terms(
        vec!["x".into(), "y".into()],
        [(vec![2, 0], BigInt::one()), (vec![0, l], a.clone())],
    );
    let tree = resolve_germ(&f, DEFAULT_MAX_STEPS)?;
    let candidates: Vec<Q> = resolution_candidate_poles(&tree, CharacterSpec::TRIVIAL)
        .into_iter()
        .map(|c| c.real_part)
        .collect();
    let z = match plane_zeta(&f, ctx) {
        Ok(z) => Some(z),
        Err(Error::Unsupported(_)) => None,
        Err(e) => return Err(e),
    };
    let real_parts = match &z {
        Some(z) => {
            let mut out = Vec::new();
            for s in &candidates {
                if pole_order(z, s)?.1 > 0 {
                    out.push(s.clone());
                }
            }
            out
        }
        None => candidates.clone(),
    };
    let smallest = q(-1, 2) - Q::new(BigInt::one(), BigInt::from(l));
    debug_assert!(!smallest.is_positive());
    Ok(X2Ayl {
        a: a.clone(),
        l,
        data: tree.numerical_data(),
        candidates,
        real_parts,
        smallest,
        residue: closed_residue(p, a, l),
        z,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::laurent::laurent_at;

    fn run(p: u64, a: i64, l: u32) -> X2Ayl {
        zeta_x2_ayl(&PadicContext::new(p, 2).unwrap(), &BigInt::from(a), l).unwrap()
    }

    #[test]
    fn squares() {
        assert!(is_square_qp(&BigInt::from(-1), 5));
        assert!(!is_square_qp(&BigInt::from(-1), 3));
        assert!(is_square_qp(&BigInt::from(17), 2));
        assert!(!is_square_qp(&BigInt::from(-1), 2));
        assert!(!is_square_qp(&BigInt::from(3), 3));
        assert!(is_square_qp(&BigInt::from(9 * 7), 3));
    }

    #[test]
    fn cubic_at_five() {
        let x = run(5, 1, 3);
        assert_eq!(x.smallest, q(-5, 6));
        assert_eq!(x.data, vec![(2, 2), (3, 3), (6, 5)]);
        let res = x.residue.clone().unwrap();
        assert!(res.value.is_positive());
        let b = laurent_at(x.z.as_ref().unwrap(), &x.smallest, 1).unwrap();
        assert_eq!(b[0], res);
    }

    #[test]
    fn rejects() {
        let ctx = PadicContext::new(3, 2).unwrap();
        assert!(matches!(zeta_x2_ayl(&ctx, &BigInt::from(1), 1), Err(Error::Unsupported(_))));
        assert!(zeta_x2_ayl(&ctx, &BigInt::from(0), 3).is_err());
    }
}
