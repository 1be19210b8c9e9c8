use num_bigint::BigInt;
use num_traits::One;
use serde_json::json;

use super::tree::ResolutionTree;
use crate::arith::laurent::real_part;
use crate::arith::{frac_pair, Q};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationsReport {
    pub step: usize,
    pub n_r: u32,
    pub nu_r: u32,
    pub s0: Q,
    /// `sum deg N_(j,r)`, to be compared with `N_r`.
    pub relation1: u32,
    /// `sum deg (alpha_(j,r) - 1)`, to be compared with `-2`.
    pub relation2: Q,
    pub failures: Vec<String>,
}

impl RelationsReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "step": self.step,
            "N": self.n_r,
            "nu": self.nu_r,
            "s0": frac_pair(&self.s0),
            "relation1": self.relation1,
            "relation2": frac_pair(&self.relation2),
            "ok": self.ok(),
            "failures": self.failures,
        })
    }
}

fn alpha(n: u32, nu: u32, s0: &Q) -> Q {
    Q::from_integer(BigInt::from(n)) * s0 + Q::from_integer(BigInt::from(nu))
}

/// Checks both relations at blowup step `r` against the logged points of
/// `E_r`, and that each point's data agree with the component meeting `E_r`
/// there in the final model (same `alpha`, `N` congruent mod `N_r`).
pub fn relations_check(tree: &ResolutionTree, r: usize) -> Result<RelationsReport> {
    let rec = tree
        .log
        .get(r.wrapping_sub(1))
        .ok_or_else(|| Error::Invalid(format!("no blowup step {r}")))?;
    let e = tree.curve(rec.created).expect("logged curve exists");
    let s0 = real_part(e.n, e.nu);
    let mut rel1 = 0u32;
    let mut rel2 = Q::from_integer(BigInt::from(0));
    let mut failures = Vec::new();
    for pt in &rec.points {
        rel1 += pt.degree * pt.n;
        let a = alpha(pt.n, pt.nu, &s0);
        rel2 += Q::from_integer(BigInt::from(pt.degree)) * (&a - Q::one());
        match pt.neighbor {
            Some(node) => {
                let (nj, nuj) = tree.data_of(node);
                if alpha(nj, nuj, &s0) != a {
                    failures.push(format!("alpha at {} differs from {node}", pt.direction));
                }
                if (nj as i64 - pt.n as i64) % e.n as i64 != 0 {
                    failures.push(format!("N at {} not congruent to N of {node} mod {}", pt.direction, e.n));
                }
            }
            None => failures.push(format!("no final component recorded at {}", pt.direction)),
        }
    }
    if rel1 != e.n {
        failures.push(format!("relation 1: {rel1} != {}", e.n));
    }
    if rel2 != Q::from_integer(BigInt::from(-2)) {
        failures.push(format!("relation 2: {rel2} != -2"));
    }
    Ok(RelationsReport { step: r, n_r: e.n, nu_r: e.nu, s0, relation1: rel1, relation2: rel2, failures })
}

/// Recomputes every curve's data from its parents and the logged
/// multiplicity, and checks that a curve created at a crossing has a larger
/// `-nu/N` than the smaller of its parents.
pub fn lemma_check(tree: &ResolutionTree) -> Vec<String> {
    let mut bad = Vec::new();
    for rec in &tree.log {
        let c = tree.curve(rec.created).expect("logged curve exists");
        let d = |i: usize| tree.curve(i).map(|x| (x.n, x.nu)).expect("parent exists");
        let expect = match rec.parents.as_slice() {
            [] => (rec.mu, 2),
            [i] => (d(*i).0 + rec.mu, d(*i).1 + 1),
            [i, j] => (d(*i).0 + d(*j).0 + rec.mu, d(*i).1 + d(*j).1),
            _ => {
                bad.push(format!("E{} has more than two parents", c.id));
                continue;
            }
        };
        if expect != (c.n, c.nu) {
            bad.push(format!("E{} has ({},{}), recursion gives {:?}", c.id, c.n, c.nu, expect));
        }
        if let [i, j] = rec.parents.as_slice() {
            let lo = real_part(d(*i).0, d(*i).1).min(real_part(d(*j).0, d(*j).1));
            if real_part(c.n, c.nu) <= lo {
                bad.push(format!("E{} does not exceed its parents' minimum", c.id));
            }
        }
    }
    bad
}
