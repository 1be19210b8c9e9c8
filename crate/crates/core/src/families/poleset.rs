use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::json;

use crate::arith::{fmt_q, frac_pair, q, qi, Q};
use crate::error::{Error, Result};

/// Real parts of poles of a zeta function in `n` variables, each with a
/// note on where it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoleSet {
    n: usize,
    provenance: BTreeMap<Q, String>,
}

impl PoleSet {
    pub fn new(n: usize, parts: impl IntoIterator<Item = (Q, String)>) -> Result<Self> {
        let lo = -Q::from_integer(BigInt::from(n));
        let mut provenance = BTreeMap::new();
        for (s, why) in parts {
            if s >= Q::zero() || s < lo {
                return Err(Error::Invalid(format!("real part {} outside [-{n}, 0)", fmt_q(&s))));
            }
            provenance.entry(s).or_insert(why);
        }
        Ok(PoleSet { n, provenance })
    }

    pub fn empty(n: usize) -> Self {
        PoleSet { n, provenance: BTreeMap::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn real_parts(&self) -> BTreeSet<Q> {
        self.provenance.keys().cloned().collect()
    }

    pub fn provenance(&self, s: &Q) -> Option<&str> {
        self.provenance.get(s).map(String::as_str)
    }

    pub fn is_empty(&self) -> bool {
        self.provenance.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "n": self.n,
            "real_parts": self.provenance.iter()
                .map(|(s, w)| json!({"s0": frac_pair(s), "from": w}))
                .collect::<Vec<_>>(),
        })
    }
}

/// Real parts `s1 + s2` for poles of `f(x) + g(y)` in separate variables.
pub fn combine_sum_poles(f: &PoleSet, g: &PoleSet) -> PoleSet {
    let mut provenance = BTreeMap::new();
    for a in f.provenance.keys() {
        for b in g.provenance.keys() {
            provenance
                .entry(a + b)
                .or_insert_with(|| format!("{} + {}", fmt_q(a), fmt_q(b)));
        }
    }
    PoleSet { n: f.n + g.n, provenance }
}

/// Whether `s0` is allowed as the real part of a pole in `n` variables by
/// the known descriptions of the pole sets.
pub fn theorem_membership(s0: &Q, n: usize) -> bool {
    let reciprocal_of_int = |x: Q| x.is_positive() && x.numer().is_one() && x.denom() > &BigInt::one();
    match n {
        0 => false,
        1 => s0 >= &qi(-1),
        2 => s0 >= &q(-1, 2) || reciprocal_of_int(-s0 - q(1, 2)),
        3 => s0 >= &qi(-1) || reciprocal_of_int(-s0 - qi(1)),
        _ => s0 >= &qi(1 - n as i64),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, v: &[Q]) -> PoleSet {
        PoleSet::new(n, v.iter().map(|s| (s.clone(), String::new()))).unwrap()
    }

    #[test]
    fn sums() {
        let f = set(1, &[q(-1, 2)]);
        let g = set(2, &[q(-1, 2), q(-1, 2) - q(1, 3)]);
        let h = combine_sum_poles(&f, &g);
        assert_eq!(h.real_parts().into_iter().collect::<Vec<_>>(), vec![q(-4, 3), qi(-1)]);
        assert_eq!(h.n(), 3);
        assert_eq!(h.provenance(&qi(-1)), Some("-1/2 + -1/2"));
        assert!(combine_sum_poles(&set(1, &[qi(-1)]), &PoleSet::empty(2)).is_empty());
        assert_eq!(combine_sum_poles(&f, &f).real_parts().into_iter().collect::<Vec<_>>(), vec![qi(-1)]);
    }

    #[test]
    fn range_checked() {
        assert!(PoleSet::new(2, [(qi(-3), String::new())]).is_err());
        assert!(PoleSet::new(2, [(qi(0), String::new())]).is_err());
    }

    #[test]
    fn membership() {
        assert!(theorem_membership(&q(-5, 6), 2));
        assert!(!theorem_membership(&q(-9, 10), 2));
        assert!(theorem_membership(&q(-3, 2), 3));
        assert!(theorem_membership(&qi(-1), 2));
        assert!(!theorem_membership(&q(-7, 6), 2));
        assert!(!theorem_membership(&q(-8, 5), 3));
        assert!(theorem_membership(&q(-4, 3), 3));
    }
}
