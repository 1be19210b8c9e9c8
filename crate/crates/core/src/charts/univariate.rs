use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{monomial_integral, term};
use crate::arith::qpoly::QPoly;
use crate::arith::zeta::ZetaRational;
use crate::arith::{ord_p_int, Q};
use crate::context::PadicContext;
use crate::error::{Error, Result};
use crate::poly::MultiPoly;

/// Integer polynomial, ascending coefficients.
type IPoly = Vec<BigInt>;

fn eval_mod(g: &IPoly, x: &BigInt, m: &BigInt) -> BigInt {
    g.iter().rev().fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
}

fn derivative(g: &IPoly) -> IPoly {
    g.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * BigInt::from(k))
        .collect()
}

/// `g(c + s w)`.
fn affine(g: &IPoly, c: &BigInt, s: &BigInt) -> IPoly {
    let mut out = vec![BigInt::zero(); g.len()];
    // Horner in the polynomial ring
    for coef in g.iter().rev() {
        let mut next = vec![BigInt::zero(); g.len()];
        for (k, x) in out.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            next[k] += x * c;
            if k + 1 < next.len() {
                next[k + 1] += x * s;
            }
        }
        next[0] += coef;
        out = next;
    }
    out
}

fn content_ord(g: &IPoly, p: u64) -> u32 {
    g.iter().filter_map(|c| ord_p_int(c, p)).min().unwrap_or(0)
}

fn to_qpoly(g: &IPoly) -> QPoly {
    QPoly::from_coeffs(g.iter().map(|c| Q::from_integer(c.clone())).collect())
}

/// One factor `|g(w)|^(a s + b - 1)` of an integrand over `Z_p`.
#[derive(Clone, Debug)]
struct Factor {
    g: IPoly,
    a: u32,
    b: i64,
}

struct Engine {
    p: u64,
    cap: u32,
}

impl Engine {
    fn run(&self, mut fs: Vec<Factor>, depth: u32) -> Result<ZetaRational> {
        if depth > self.cap {
            return Err(Error::DepthExceeded(self.cap));
        }
        let p = self.p;
        let pb = BigInt::from(p);
        let (mut e, mut k) = (0i64, 0u32);
        for f in fs.iter_mut() {
            let v = content_ord(&f.g, p);
            if v > 0 {
                let d = pb.pow(v);
                f.g.iter_mut().for_each(|c| *c /= &d);
                e -= v as i64 * (f.b - 1);
                k += v * f.a;
            }
        }
        let mut total = ZetaRational::zero(p);
        let mut units = 0i64;
        for c in 0..p {
            let cb = BigInt::from(c);
            let vanish: Vec<usize> = (0..fs.len())
                .filter(|&i| eval_mod(&fs[i].g, &cb, &pb).is_zero())
                .collect();
            match vanish.as_slice() {
                [] => units += 1,
                [i] if !eval_mod(&derivative(&fs[*i].g), &cb, &pb).is_zero() => {
                    total = &total + &monomial_integral(p, 1, fs[*i].a, fs[*i].b as u32);
                }
                _ => {
                    let sub: Vec<Factor> = vanish
                        .iter()
                        .map(|&i| Factor { g: affine(&fs[i].g, &cb, &pb), ..fs[i].clone() })
                        .collect();
                    let inner = self.run(sub, depth + 1)?;
                    total = &total + &inner.scale(&Q::new(BigInt::one(), pb.clone()));
                }
            }
        }
        total = &total + &ZetaRational::constant(p, Q::new(BigInt::from(units), pb.clone()));
        Ok(&total * &term(p, Q::one(), e, k))
    }
}

fn depth_cap(gs: &[&IPoly], p: u64) -> Result<u32> {
    let prod = gs.iter().fold(QPoly::one(), |acc, g| &acc * &to_qpoly(g));
    if prod.degree().unwrap_or(0) == 0 {
        return Ok(2);
    }
    let ints: IPoly = prod.primitive_integer();
    let d = to_qpoly(&ints).discriminant();
    if d.is_zero() {
        return Err(Error::NotSquarefree);
    }
    let v = ord_p_int(&d.to_integer(), p).unwrap_or(0);
    Ok(v + 2)
}

/// `integral over Z_p of prod_k |g_k(u)|^(a_k s + b_k - 1) |du|` for
/// univariate integer polynomials whose product is squarefree.
pub fn integrate_factors(factors: &[(MultiPoly, u32, i64)], p: u64) -> Result<ZetaRational> {
    let mut fs = Vec::new();
    for (h, a, b) in factors {
        if h.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if h.nvars() != 1 {
            return Err(Error::Arity { expected: 1, got: h.nvars() });
        }
        if *a == 0 || *b < 1 {
            return Err(Error::Invalid("exponent data must satisfy a >= 1, b >= 1".into()));
        }
        let q = h.to_qpoly(0).expect("univariate");
        fs.push(Factor { g: q.coeffs().iter().map(|c| c.to_integer()).collect(), a: *a, b: *b });
    }
    let gs: Vec<&IPoly> = fs.iter().map(|f| &f.g).collect();
    let cap = depth_cap(&gs, p)?;
    Engine { p, cap }.run(fs, 0)
}

/// `integral over p^j Z_p of |h(u)|^(a s + b - 1) |du|` for squarefree `h`.
pub fn integrate_univariate(h: &MultiPoly, a: u32, b: i64, box_j: u32, ctx: &PadicContext) -> Result<ZetaRational> {
    if h.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if h.nvars() != 1 {
        return Err(Error::Arity { expected: 1, got: h.nvars() });
    }
    if !h.is_squarefree()? {
        return Err(Error::NotSquarefree);
    }
    let p = ctx.p();
    let scale = BigInt::from(p).pow(box_j);
    let g: IPoly = h.to_qpoly(0).unwrap().coeffs().iter().map(|c| c.to_integer()).collect();
    let g = affine(&g, &BigInt::zero(), &scale);
    let hv = MultiPoly::from_terms(
        h.vars().to_vec(),
        g.into_iter().enumerate().map(|(k, c)| (vec![k as u32], c)),
    );
    let z = integrate_factors(&[(hv, a, b)], p)?;
    Ok(z.scale(&Q::new(BigInt::one(), scale)))
}

/// Smallest nonnegative integer `m` with `m = x mod p`, for a `p`-integral rational.
pub(crate) fn residue_of(x: &Q, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let d = x.denom().mod_floor(&pb);
    if d.is_zero() {
        return None;
    }
    let inv = d.modpow(&BigInt::from(p - 2), &pb);
    let r = (x.numer().mod_floor(&pb) * inv).mod_floor(&pb);
    let r = if r.is_negative() { r + &pb } else { r };
    r.to_u64()
}
