use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::multipoly::MultiPoly;
use crate::arith::qpoly::QPoly;
use crate::arith::{fmt_q, Q};
use crate::error::{Error, Result};

/// A point of the exceptional line of a blowup at the origin, written as
/// the slope `c` of the direction `y = c x`, or the vertical direction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConePoint {
    Finite(Q),
    Infinity,
}

impl fmt::Display for ConePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConePoint::Finite(c) => write!(f, "{}", fmt_q(c)),
            ConePoint::Infinity => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeFactor {
    /// Homogeneous form in the two variables, primitive.
    pub form: MultiPoly,
    pub multiplicity: u32,
    pub degree: u32,
    pub rational_root: Option<ConePoint>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentCone {
    pub mu: u32,
    pub factors: Vec<ConeFactor>,
}

impl TangentCone {
    /// Rational points on the exceptional line with their multiplicities.
    pub fn rational_points(&self) -> Vec<(ConePoint, u32)> {
        self.factors
            .iter()
            .filter_map(|f| f.rational_root.clone().map(|r| (r, f.multiplicity)))
            .collect()
    }

    pub fn all_rational(&self) -> bool {
        self.factors.iter().all(|f| f.rational_root.is_some())
    }

    pub fn summary(&self) -> String {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|f| match &f.rational_root {
                Some(r) => format!("{}@{}^{}", f.form, r, f.multiplicity),
                None => format!("({})^{}", f.form, f.multiplicity),
            })
            .collect();
        format!("mu={} [{}]", self.mu, parts.join(", "))
    }
}

/// `sum c_j y^j x^(d-j)` from `sum c_j v^j`, made primitive.
fn homogenize(g: &QPoly, d: u32, vars: &[String]) -> MultiPoly {
    let ints = g.primitive_integer();
    MultiPoly::from_terms(
        vars.to_vec(),
        ints.into_iter()
            .enumerate()
            .map(|(j, c)| (vec![d - j as u32, j as u32], c)),
    )
}

/// Decomposes the lowest homogeneous part of a bivariate polynomial into
/// coprime squarefree factors, one per rational direction plus grouped
/// factors without rational roots.
pub fn tangent_cone_decomposition(f: &MultiPoly) -> Result<TangentCone> {
    if f.nvars() != 2 {
        return Err(Error::Arity { expected: 2, got: f.nvars() });
    }
    let mu = f.multiplicity_at_origin()?;
    let h = f.homogeneous_part(mu);
    let vars = f.vars().to_vec();
    let mut dh = vec![Q::zero(); mu as usize + 1];
    for (e, c) in h.terms() {
        dh[e[1] as usize] = Q::from_integer(c.clone());
    }
    let h1 = QPoly::from_coeffs(dh);
    let finite_deg = h1.degree().unwrap_or(0) as u32;
    let mut factors = Vec::new();
    for (g, k) in h1.squarefree_decomposition() {
        if g.degree().unwrap_or(0) == 0 {
            continue;
        }
        let mut rest = g.monic();
        let mut roots = rest.rational_roots();
        roots.sort();
        for r in roots {
            let lin = QPoly::from_coeffs(vec![-r.clone(), Q::one()]);
            rest = rest.div_exact(&lin).expect("root divides");
            factors.push(ConeFactor {
                form: homogenize(&lin, 1, &vars),
                multiplicity: k,
                degree: 1,
                rational_root: Some(ConePoint::Finite(r)),
            });
        }
        if let Some(d) = rest.degree().filter(|&d| d > 0) {
            factors.push(ConeFactor {
                form: homogenize(&rest, d as u32, &vars),
                multiplicity: k,
                degree: d as u32,
                rational_root: None,
            });
        }
    }
    if mu > finite_deg {
        factors.push(ConeFactor {
            form: MultiPoly::from_terms(vars, [(vec![1, 0], BigInt::one())]),
            multiplicity: mu - finite_deg,
            degree: 1,
            rational_root: Some(ConePoint::Infinity),
        });
    }
    Ok(TangentCone { mu, factors })
}
