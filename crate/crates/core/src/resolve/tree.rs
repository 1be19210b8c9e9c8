use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::arith::laurent::real_part;
use crate::arith::Q;
use crate::charts::poles::{CandidatePole, CharacterSpec};

/// A component of the total transform: exceptional curve `E_i` or strict
/// component `S_i`, both numbered from 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Node {
    Exc(usize),
    Strict(usize),
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Exc(i) => write!(f, "E{i}"),
            Node::Strict(i) => write!(f, "S{i}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExceptionalCurve {
    pub id: usize,
    #[serde(rename = "N")]
    pub n: u32,
    pub nu: u32,
    pub created_at_step: usize,
    pub parent_ids: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrictComponent {
    pub id: usize,
    #[serde(rename = "N")]
    pub n: u32,
    pub nu: u32,
    /// Number of geometric branches grouped in this component.
    pub degree: u32,
}

/// A point of a new exceptional curve, with the data the rest of the total
/// transform carries there at the moment of the blowup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointRecord {
    pub direction: String,
    pub degree: u32,
    #[serde(rename = "N")]
    pub n: u32,
    pub nu: u32,
    /// Component meeting the curve at this point in the final model.
    pub neighbor: Option<Node>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlowupRecord {
    pub step: usize,
    /// Chart path from the origin, e.g. `origin/inf/0`.
    pub center: String,
    pub mu: u32,
    pub cone: String,
    pub created: usize,
    pub parents: Vec<usize>,
    pub points: Vec<PointRecord>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ResolutionTree {
    pub curves: Vec<ExceptionalCurve>,
    pub strict_components: Vec<StrictComponent>,
    pub adjacency: BTreeSet<(Node, Node)>,
    pub log: Vec<BlowupRecord>,
    pub inspected_degree: u32,
}

impl ResolutionTree {
    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    pub fn curve(&self, id: usize) -> Option<&ExceptionalCurve> {
        self.curves.get(id.checked_sub(1)?)
    }

    /// `(N, nu)` of every exceptional curve in creation order.
    pub fn numerical_data(&self) -> Vec<(u32, u32)> {
        self.curves.iter().map(|c| (c.n, c.nu)).collect()
    }

    pub fn data_of(&self, node: Node) -> (u32, u32) {
        match node {
            Node::Exc(i) => {
                let c = &self.curves[i - 1];
                (c.n, c.nu)
            }
            Node::Strict(i) => {
                let s = &self.strict_components[i - 1];
                (s.n, s.nu)
            }
        }
    }

    pub fn neighbors(&self, node: Node) -> Vec<Node> {
        self.adjacency
            .iter()
            .filter_map(|&(a, b)| {
                if a == node {
                    Some(b)
                } else if b == node {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    /// Dual graph in DOT, exceptional curves labelled `E{id}(N,nu)` and strict
    /// components drawn as circles.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph resolution {\n");
        for c in &self.curves {
            out += &format!("  E{} [shape=box, label=\"E{}({},{})\"];\n", c.id, c.id, c.n, c.nu);
        }
        for s in &self.strict_components {
            let label = if s.degree > 1 { format!("deg {}", s.degree) } else { String::new() };
            out += &format!("  S{} [shape=circle, label=\"{}\"];\n", s.id, label);
        }
        for (a, b) in &self.adjacency {
            out += &format!("  {a} -- {b};\n");
        }
        out += "}\n";
        out
    }
}

/// Candidate poles of a resolved germ: one per real part, with the
/// expected order `2` when two adjacent components share it.
pub fn resolution_candidate_poles(tree: &ResolutionTree, chi: CharacterSpec) -> Vec<CandidatePole> {
    let mut nodes: Vec<Node> = tree.curves.iter().map(|c| Node::Exc(c.id)).collect();
    nodes.extend(tree.strict_components.iter().map(|s| Node::Strict(s.id)));
    let real = |n: Node| {
        let (a, b) = tree.data_of(n);
        real_part(a, b)
    };
    let mut by_real: BTreeMap<Q, CandidatePole> = BTreeMap::new();
    for &node in &nodes {
        let (n, _) = tree.data_of(node);
        if !chi.admits(n) {
            continue;
        }
        let s = real(node);
        let entry = by_real.entry(s.clone()).or_insert(CandidatePole {
            real_part: s,
            n,
            expected_order: 1,
            sources: Vec::new(),
        });
        if let Node::Exc(i) = node {
            entry.sources.push(i);
        }
    }
    for &(a, b) in &tree.adjacency {
        let (na, _) = tree.data_of(a);
        let (nb, _) = tree.data_of(b);
        if chi.admits(na) && chi.admits(nb) && real(a) == real(b) {
            if let Some(c) = by_real.get_mut(&real(a)) {
                c.expected_order = 2;
            }
        }
    }
    by_real.into_values().collect()
}
