use num_bigint::BigInt;

use super::multipoly::MultiPoly;
use crate::arith::Q;
use crate::error::{Error, Result};

/// The two affine charts of a point blowup of the plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Chart {
    /// `(x, y) -> (x, x y)`, exceptional line `x = 0`.
    X,
    /// `(x, y) -> (x y, y)`, exceptional line `y = 0`.
    Y,
}

impl Chart {
    /// Index of the coordinate cutting out the exceptional line.
    pub fn exceptional_var(self) -> usize {
        match self {
            Chart::X => 0,
            Chart::Y => 1,
        }
    }
}

/// Pulls `f` back along one chart of the blowup at `center`. Returns the
/// strict transform and the power of the exceptional coordinate that was
/// factored out. A non-integral center is handled by clearing denominators
/// after translation, which rescales the strict transform by a constant.
pub fn blowup_chart_substitute(f: &MultiPoly, chart: Chart, center: &[Q; 2]) -> Result<(MultiPoly, u32)> {
    if f.nvars() != 2 {
        return Err(Error::Arity { expected: 2, got: f.nvars() });
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (g, _) = f.translate_rational(center);
    let e = chart.exceptional_var();
    let o = 1 - e;
    let mut images = [g.var_like(0), g.var_like(1)];
    images[o] = &g.var_like(0) * &g.var_like(1);
    let pulled = g.compose(&images);
    let k = pulled.var_power(e);
    Ok((pulled.div_var_power(e, k), k))
}

/// `f(u, u v)` or `f(u v, v)`, without dividing out the exceptional factor.
pub fn total_transform(f: &MultiPoly, chart: Chart) -> MultiPoly {
    let e = chart.exceptional_var();
    let mut images = [f.var_like(0), f.var_like(1)];
    images[1 - e] = &f.var_like(0) * &f.var_like(1);
    f.compose(&images)
}

/// `f(x, y + c)`, the translation used to move a finite point of the
/// exceptional line to the origin; returns the cleared polynomial.
pub fn translate_second(f: &MultiPoly, c: &Q) -> MultiPoly {
    if c.is_integer() {
        return f.translate(&[BigInt::from(0), c.to_integer()]);
    }
    f.translate_rational(&[Q::from_integer(BigInt::from(0)), c.clone()]).0
}
