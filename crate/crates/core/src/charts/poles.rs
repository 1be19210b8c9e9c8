use std::collections::BTreeMap;

use serde_json::json;

use crate::arith::laurent::real_part;
use crate::arith::{frac_pair, Q};
use crate::error::{Error, Result};

/// A character of `Z_p^x` known only through its order `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CharacterSpec {
    order: u32,
}

impl CharacterSpec {
    pub const TRIVIAL: CharacterSpec = CharacterSpec { order: 1 };

    pub fn new(order: u32) -> Result<Self> {
        if order == 0 {
            return Err(Error::Invalid("character order must be positive".into()));
        }
        Ok(CharacterSpec { order })
    }

    pub fn order(self) -> u32 {
        self.order
    }

    /// `chi^N = 1`.
    pub fn admits(self, n: u32) -> bool {
        n.is_multiple_of(self.order)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidatePole {
    pub real_part: Q,
    pub n: u32,
    pub expected_order: u32,
    /// Indices into the input data, or component ids for resolution poles.
    pub sources: Vec<usize>,
}

impl CandidatePole {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "real_part": frac_pair(&self.real_part),
            "N": self.n,
            "expected_order": self.expected_order,
            "sources": self.sources,
        })
    }
}

/// Candidate real parts `-nu/N` for the pairs with `d | N`, one entry per
/// real part, sorted increasingly. Expected orders default to `1`.
pub fn candidate_poles_filtered(data: &[(u32, u32)], chi: CharacterSpec) -> Vec<CandidatePole> {
    let mut by_real: BTreeMap<Q, CandidatePole> = BTreeMap::new();
    for (i, &(n, nu)) in data.iter().enumerate() {
        if n == 0 || !chi.admits(n) {
            continue;
        }
        let s = real_part(n, nu);
        by_real
            .entry(s.clone())
            .and_modify(|c| c.sources.push(i))
            .or_insert(CandidatePole { real_part: s, n, expected_order: 1, sources: vec![i] });
    }
    by_real.into_values().collect()
}
