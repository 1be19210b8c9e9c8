use std::collections::BTreeSet;

use num_traits::Zero;

use super::tree::{BlowupRecord, ExceptionalCurve, Node, PointRecord, ResolutionTree, StrictComponent};
use crate::arith::Q;
use crate::error::{Error, Result};
use crate::poly::blowup::{blowup_chart_substitute, translate_second, Chart};
use crate::poly::tangent::{tangent_cone_decomposition, ConePoint};
use crate::poly::MultiPoly;

pub const DEFAULT_MAX_STEPS: usize = 64;

/// An exceptional curve through a pending point, with the index of that
/// point in the curve's blowup record.
#[derive(Clone, Copy, Debug)]
struct AxisRef {
    curve: usize,
    point: usize,
}

/// A point still to be examined, in local coordinates `(u, v)` where the
/// curves `{u = 0}` and `{v = 0}` are the given axes when present.
struct Pending {
    s: MultiPoly,
    axis_u: Option<AxisRef>,
    axis_v: Option<AxisRef>,
    path: String,
}

struct Resolver {
    tree: ResolutionTree,
    max_steps: usize,
}

fn origin() -> [Q; 2] {
    [Q::zero(), Q::zero()]
}

fn edge(a: Node, b: Node) -> (Node, Node) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

impl Resolver {
    fn add_strict(&mut self, degree: u32) -> Node {
        let id = self.tree.strict_components.len() + 1;
        self.tree.strict_components.push(StrictComponent { id, n: 1, nu: 1, degree });
        Node::Strict(id)
    }

    fn set_neighbor(&mut self, a: AxisRef, node: Node) {
        self.tree.log[a.curve - 1].points[a.point].neighbor = Some(node);
    }

    fn inspect(&mut self, s: &MultiPoly) {
        let d = s.total_degree().unwrap_or(0);
        self.tree.inspected_degree = self.tree.inspected_degree.max(d);
    }

    fn process(&mut self, pt: Pending) -> Result<Vec<Pending>> {
        self.inspect(&pt.s);
        let mu = if pt.s.constant_term().is_zero() { pt.s.multiplicity_at_origin()? } else { 0 };
        let axes: Vec<AxisRef> = pt.axis_u.iter().chain(pt.axis_v.iter()).copied().collect();
        let k = axes.len() as u32;
        if mu == 0 {
            if let [a, b] = axes.as_slice() {
                self.set_neighbor(*a, Node::Exc(b.curve));
                self.set_neighbor(*b, Node::Exc(a.curve));
            }
            return Ok(Vec::new());
        }
        let cone = tangent_cone_decomposition(&pt.s)?;
        let nc = match (mu, k) {
            (1, 0) => true,
            (1, 1) => {
                // transverse to the axis
                let lin = pt.s.homogeneous_part(1);
                if pt.axis_u.is_some() {
                    !lin.coeff(&[0, 1]).is_zero()
                } else {
                    !lin.coeff(&[1, 0]).is_zero()
                }
            }
            (2, 0) => cone.factors.len() == 2 && cone.all_rational() && cone.factors.iter().all(|f| f.multiplicity == 1),
            _ => false,
        };
        if nc {
            let branches = if mu == 2 { 2 } else { 1 };
            for _ in 0..branches {
                let s = self.add_strict(1);
                for a in &axes {
                    self.tree.adjacency.insert(edge(Node::Exc(a.curve), s));
                    self.set_neighbor(*a, s);
                }
            }
            return Ok(Vec::new());
        }
        if self.tree.curves.len() >= self.max_steps {
            return Err(Error::MaxStepsExceeded(self.max_steps));
        }
        self.blowup(pt, mu, cone)
    }

    fn blowup(&mut self, pt: Pending, mu: u32, cone: crate::poly::TangentCone) -> Result<Vec<Pending>> {
        let id = self.tree.curves.len() + 1;
        let parents: Vec<usize> = pt.axis_u.iter().chain(pt.axis_v.iter()).map(|a| a.curve).collect();
        let (n, nu) = match parents.as_slice() {
            [] => (mu, 2),
            [i] => {
                let c = &self.tree.curves[i - 1];
                (c.n + mu, c.nu + 1)
            }
            [i, j] => {
                let (a, b) = (&self.tree.curves[i - 1], &self.tree.curves[j - 1]);
                (a.n + b.n + mu, a.nu + b.nu)
            }
            _ => unreachable!("at most two axes"),
        };
        for f in &cone.factors {
            if f.rational_root.is_none() && f.multiplicity > 1 {
                return Err(Error::NonRationalCenter(format!(
                    "tangent direction ({}) of multiplicity {} at {}",
                    f.form, f.multiplicity, pt.path
                )));
            }
        }
        self.tree.curves.push(ExceptionalCurve { id, n, nu, created_at_step: id, parent_ids: parents.clone() });
        let me = Node::Exc(id);
        if let [i, j] = parents.as_slice() {
            self.tree.adjacency.remove(&edge(Node::Exc(*i), Node::Exc(*j)));
        }
        for &p in &parents {
            self.tree.adjacency.insert(edge(Node::Exc(p), me));
        }
        for a in pt.axis_u.iter().chain(pt.axis_v.iter()) {
            self.set_neighbor(*a, me);
        }

        // rational directions on the new curve
        let mut dirs: BTreeSet<ConePoint> = cone.rational_points().into_iter().map(|(d, _)| d).collect();
        if pt.axis_u.is_some() {
            dirs.insert(ConePoint::Infinity);
        }
        if pt.axis_v.is_some() {
            dirs.insert(ConePoint::Finite(Q::zero()));
        }
        let cone_mult = |d: &ConePoint| {
            cone.factors
                .iter()
                .find(|f| f.rational_root.as_ref() == Some(d))
                .map_or(0, |f| f.multiplicity)
        };
        let mut points = Vec::new();
        let mut next = Vec::new();
        let (sx, _) = blowup_chart_substitute(&pt.s, Chart::X, &origin())?;
        let (sy, _) = blowup_chart_substitute(&pt.s, Chart::Y, &origin())?;
        for d in dirs {
            let m = cone_mult(&d);
            let axis = match &d {
                ConePoint::Infinity => pt.axis_u,
                ConePoint::Finite(c) if c.is_zero() => pt.axis_v,
                _ => None,
            };
            let (an, anu) = axis.map_or((0, 1), |a| {
                let c = &self.tree.curves[a.curve - 1];
                (c.n, c.nu)
            });
            let here = AxisRef { curve: id, point: points.len() };
            points.push(PointRecord { direction: d.to_string(), degree: 1, n: an + m, nu: anu, neighbor: None });
            let path = format!("{}/{}", pt.path, d);
            next.push(match d {
                ConePoint::Infinity => Pending { s: sy.clone(), axis_u: pt.axis_u, axis_v: Some(here), path },
                ConePoint::Finite(c) => Pending {
                    s: translate_second(&sx, &c),
                    axis_u: Some(here),
                    axis_v: if c.is_zero() { pt.axis_v } else { None },
                    path,
                },
            });
        }
        for f in cone.factors.iter().filter(|f| f.rational_root.is_none()) {
            let s = self.add_strict(f.degree);
            self.tree.adjacency.insert(edge(me, s));
            points.push(PointRecord {
                direction: format!("{}", f.form),
                degree: f.degree,
                n: 1,
                nu: 1,
                neighbor: Some(s),
            });
        }
        self.tree.log.push(BlowupRecord {
            step: id,
            center: pt.path.clone(),
            mu,
            cone: cone.summary(),
            created: id,
            parents,
            points,
        });
        Ok(next)
    }
}

/// Embedded resolution of the germ of `f` at the origin by point blowups
/// at rational centers.
pub fn resolve_germ(f: &MultiPoly, max_steps: usize) -> Result<ResolutionTree> {
    if f.nvars() != 2 {
        return Err(Error::Arity { expected: 2, got: f.nvars() });
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.constant_term().is_zero() {
        return Err(Error::NotThroughOrigin);
    }
    if !f.is_squarefree()? {
        return Err(Error::NotSquarefree);
    }
    let s = f.with_vars(vec!["u".into(), "v".into()]);
    let mut r = Resolver { tree: ResolutionTree::default(), max_steps };
    let mut stack = vec![Pending { s, axis_u: None, axis_v: None, path: "origin".into() }];
    while let Some(pt) = stack.pop() {
        let mut more = r.process(pt)?;
        more.reverse();
        stack.extend(more);
    }
    Ok(r.tree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn resolve(s: &str) -> ResolutionTree {
        resolve_germ(&parse_poly(s, &["x", "y"]).unwrap(), DEFAULT_MAX_STEPS).unwrap()
    }

    #[test]
    fn cusp() {
        let t = resolve("y^2-x^3");
        assert_eq!(t.numerical_data(), vec![(2, 2), (3, 3), (6, 5)]);
        let e3 = Node::Exc(3);
        let mut nb = t.neighbors(e3);
        nb.sort();
        assert_eq!(nb, vec![Node::Exc(1), Node::Exc(2), Node::Strict(1)]);
        assert!(!t.adjacency.contains(&(Node::Exc(1), Node::Exc(2))));
    }

    #[test]
    fn x2_plus_y5() {
        let t = resolve("x^2+y^5");
        assert_eq!(t.numerical_data(), vec![(2, 2), (4, 3), (5, 4), (10, 7)]);
    }

    #[test]
    fn node_needs_nothing() {
        assert!(resolve("x*y").is_empty());
        assert_eq!(resolve("x*y").strict_components.len(), 2);
    }

    #[test]
    fn errors() {
        let f = |s: &str| parse_poly(s, &["x", "y"]).unwrap();
        assert_eq!(resolve_germ(&f("x^2+y^2+1"), 64), Err(Error::NotThroughOrigin));
        assert_eq!(resolve_germ(&f("x^2*y"), 64), Err(Error::NotSquarefree));
        assert!(matches!(resolve_germ(&f("(x^2+y^2)^2 + x^5"), 64), Err(Error::NonRationalCenter(_))));
        assert_eq!(resolve_germ(&f("y^2-x^9"), 2), Err(Error::MaxStepsExceeded(2)));
    }
}
