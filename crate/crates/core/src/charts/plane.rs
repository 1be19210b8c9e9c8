use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::univariate::residue_of;
use super::{monomial_integral, term};
use crate::arith::qpoly::QPoly;
use crate::arith::zeta::ZetaRational;
use crate::arith::{ord_p, ord_p_int, Q};
use crate::context::PadicContext;
use crate::error::{Error, Result};
use crate::poly::blowup::{blowup_chart_substitute, Chart};
use crate::poly::MultiPoly;

/// Exponent data `(N, nu)` of a coordinate factor `|x|^(N s + nu - 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AxisData {
    pub n: u32,
    pub nu: u32,
}

impl AxisData {
    pub const TRIVIAL: AxisData = AxisData { n: 0, nu: 1 };

    pub fn new(n: u32, nu: u32) -> Self {
        AxisData { n, nu }
    }

    fn active(self) -> bool {
        self != AxisData::TRIVIAL
    }
}

const MAX_DEPTH: u32 = 40;

struct Plane {
    p: u64,
}

/// `p`-adic unit test for a `p`-integral rational.
fn is_unit(x: &Q, p: u64) -> bool {
    ord_p(x, p) == Some(0)
}

fn vanishes_mod_p(x: &Q, p: u64) -> bool {
    ord_p(x, p).is_none_or(|v| v > 0)
}

/// Multiplies the coefficient of `u^i v^j` by `p^(a i + b j)`.
fn scale_vars(g: &MultiPoly, p: u64, a: u32, b: u32) -> MultiPoly {
    let pb = BigInt::from(p);
    MultiPoly::from_terms(
        g.vars().to_vec(),
        g.terms()
            .iter()
            .map(|(e, c)| (e.clone(), c * pb.pow(a * e[0] + b * e[1]))),
    )
}

/// Rational roots of `g` restricted to the axis `x_k = 0`, as points of the
/// other coordinate, keyed by residue mod `p`.
fn axis_roots(g: &MultiPoly, k: usize, p: u64) -> Vec<(u64, Q)> {
    let o = 1 - k;
    let d = g.degree_in(o).unwrap_or(0) as usize;
    let mut c = vec![Q::zero(); d + 1];
    for (e, x) in g.terms() {
        if e[k] == 0 {
            c[e[o] as usize] = Q::from_integer(x.clone());
        }
    }
    let h = QPoly::from_coeffs(c);
    if h.is_zero() {
        return Vec::new();
    }
    h.rational_roots()
        .into_iter()
        .filter_map(|r| residue_of(&r, p).map(|m| (m, r)))
        .collect()
}

impl Plane {
    fn axis_factor(&self, a: AxisData) -> ZetaRational {
        monomial_integral(self.p, 0, a.n, a.nu)
    }

    /// Weight of the class `x = p x1` for an axis with data `a`.
    fn on_axis(&self, a: AxisData) -> ZetaRational {
        term(self.p, Q::one(), -(a.nu as i64), a.n)
    }

    fn weight(&self, on_axis: bool, a: AxisData) -> ZetaRational {
        if on_axis {
            self.on_axis(a)
        } else {
            term(self.p, Q::one(), -1, 0)
        }
    }

    fn jacobian(&self, on_axis: bool, a: AxisData) -> ZetaRational {
        if on_axis {
            self.axis_factor(a)
        } else {
            ZetaRational::constant(self.p, Q::one())
        }
    }

    fn run(&self, g: MultiPoly, mut au: AxisData, mut av: AxisData, depth: u32) -> Result<ZetaRational> {
        if depth > MAX_DEPTH {
            return Err(Error::DepthExceeded(MAX_DEPTH));
        }
        let p = self.p;
        let pb = BigInt::from(p);
        let c = ord_p_int(&g.content(), p).unwrap_or(0);
        let mut g = g.div_scalar(&pb.pow(c));
        let ku = g.var_power(0);
        let kv = g.var_power(1);
        if ku > 0 || kv > 0 {
            g = g.div_var_power(0, ku).div_var_power(1, kv);
            au.n += ku;
            av.n += kv;
        }
        let scale = term(p, Q::one(), 0, c);
        if g.total_degree() == Some(0) {
            return Ok(&(&scale * &self.axis_factor(au)) * &self.axis_factor(av));
        }
        let du = g.partial(0);
        let dv = g.partial(1);
        let origin = [Q::zero(), Q::zero()];
        let origin_closes = (!au.active() && is_unit(&du.eval_q(&origin), p))
            || (!av.active() && is_unit(&dv.eval_q(&origin), p));
        if g.constant_term().is_zero() && !origin_closes {
            return Ok(&scale * &self.blowup(&g, au, av, depth)?);
        }
        let roots_u_axis = axis_roots(&g, 0, p);
        let roots_v_axis = axis_roots(&g, 1, p);
        let mut total = ZetaRational::zero(p);
        // closed classes only depend on which axes they meet and how they close
        let mut closed: BTreeMap<(bool, bool, u8), u64> = BTreeMap::new();
        for a in 0..p {
            for b in 0..p {
                let on_u = a == 0;
                let on_v = b == 0;
                let mut ru = Q::from_integer(BigInt::from(a));
                let mut rv = Q::from_integer(BigInt::from(b));
                if on_u {
                    if let Some((_, r)) = roots_u_axis.iter().find(|(m, r)| *m == b && !(on_v && av.active() && !r.is_zero())) {
                        rv = r.clone();
                    }
                }
                if on_v {
                    if let Some((_, r)) = roots_v_axis.iter().find(|(m, r)| *m == a && !(on_u && au.active() && !r.is_zero())) {
                        ru = r.clone();
                    }
                }
                let pt = [ru, rv];
                let cu = if on_u { au } else { AxisData::TRIVIAL };
                let cv = if on_v { av } else { AxisData::TRIVIAL };
                let kind = if !vanishes_mod_p(&g.eval_q(&pt), p) {
                    0
                } else if !cv.active() && is_unit(&dv.eval_q(&pt), p) {
                    1
                } else if !cu.active() && is_unit(&du.eval_q(&pt), p) {
                    2
                } else {
                    let (h, _) = g.translate_rational(&pt);
                    let h = scale_vars(&h, p, 1, 1);
                    let w = &self.weight(on_u, au) * &self.weight(on_v, av);
                    total = &total + &(&w * &self.run(h, cu, cv, depth + 1)?);
                    continue;
                };
                *closed.entry((on_u, on_v, kind)).or_insert(0) += 1;
            }
        }
        for ((on_u, on_v, kind), count) in closed {
            let (wu, ju) = (self.weight(on_u, au), self.jacobian(on_u, au));
            let (wv, jv) = (self.weight(on_v, av), self.jacobian(on_v, av));
            let class = match kind {
                0 => &(&wu * &ju) * &(&wv * &jv),
                1 => &(&wu * &ju) * &monomial_integral(p, 1, 1, 1),
                _ => &(&wv * &jv) * &monomial_integral(p, 1, 1, 1),
            };
            total = &total + &class.scale(&Q::from_integer(BigInt::from(count)));
        }
        Ok(&scale * &total)
    }

    /// Splits `Z_p^2` into `|u| >= |v|` and `|v| > |u|` and pulls back.
    fn blowup(&self, g: &MultiPoly, au: AxisData, av: AxisData, depth: u32) -> Result<ZetaRational> {
        let origin = [Q::zero(), Q::zero()];
        let (g1, mu) = blowup_chart_substitute(g, Chart::X, &origin)?;
        let e = AxisData::new(au.n + av.n + mu, au.nu + av.nu);
        let z1 = self.run(g1, e, av, depth + 1)?;
        let (g2, _) = blowup_chart_substitute(g, Chart::Y, &origin)?;
        let g2 = scale_vars(&g2, self.p, 1, 0);
        let z2 = self.run(g2, au, e, depth + 1)?;
        Ok(&z1 + &(&self.on_axis(au) * &z2))
    }
}

/// `integral over Z_p^2 of |u|^(N_u s + nu_u - 1) |v|^(N_v s + nu_v - 1) |g(u,v)|^s`.
///
/// Descends over residue classes. A class is closed when `g` is a unit on
/// it or has a simple zero in a coordinate free of monomial weight; an
/// exact zero at the origin that cannot be closed is blown up.
pub fn plane_integral(g: &MultiPoly, au: AxisData, av: AxisData, p: u64) -> Result<ZetaRational> {
    if g.nvars() != 2 {
        return Err(Error::Arity { expected: 2, got: g.nvars() });
    }
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let reduced = g.div_var_power(0, g.var_power(0)).div_var_power(1, g.var_power(1));
    if !reduced.is_squarefree()? {
        return Err(Error::NotSquarefree);
    }
    Plane { p }.run(g.clone(), au, av, 0).map_err(|e| match e {
        Error::DepthExceeded(d) => Error::Unsupported(format!(
            "residue-class descent did not close within depth {d} (singular point off the rational grid?)"
        )),
        e => e,
    })
}

/// Igusa's zeta function of a bivariate integer polynomial on `Z_p^2`.
pub fn plane_zeta(f: &MultiPoly, ctx: &PadicContext) -> Result<ZetaRational> {
    if ctx.n() != 2 {
        return Err(Error::Arity { expected: 2, got: ctx.n() });
    }
    plane_integral(f, AxisData::TRIVIAL, AxisData::TRIVIAL, ctx.p())
}
