//! Coxeter diagrams, node subsets and the diagram file format.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::Error;

/// Order `m_ij` of `s_i s_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bond {
    Finite(u32),
    Infinite,
}

impl Bond {
    pub fn is_finite(self) -> bool {
        matches!(self, Bond::Finite(_))
    }

    /// Bonds drawn as edges of the diagram (`m ≥ 3`).
    pub fn is_edge(self) -> bool {
        !matches!(self, Bond::Finite(1) | Bond::Finite(2))
    }
}

impl fmt::Display for Bond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bond::Finite(m) => write!(f, "{m}"),
            Bond::Infinite => write!(f, "inf"),
        }
    }
}

/// A subset of the diagram's nodes, as a bitmask over node indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct NodeSet(u64);

impl NodeSet {
    pub const EMPTY: NodeSet = NodeSet(0);

    pub fn from_bits(bits: u64) -> Self {
        NodeSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn full(rank: usize) -> Self {
        if rank == 64 {
            NodeSet(u64::MAX)
        } else {
            NodeSet((1u64 << rank) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        NodeSet(1 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Self {
        NodeSet(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> Self {
        NodeSet(self.0 & !(1 << i))
    }

    pub fn union(self, other: NodeSet) -> Self {
        NodeSet(self.0 | other.0)
    }

    pub fn intersection(self, other: NodeSet) -> Self {
        NodeSet(self.0 & other.0)
    }

    pub fn difference(self, other: NodeSet) -> Self {
        NodeSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: NodeSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Members in increasing index order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// All subsets of `self`, in increasing bitmask order.
    pub fn subsets(self) -> impl Iterator<Item = NodeSet> {
        let mask = self.0;
        let mut sub: Option<u64> = Some(0);
        std::iter::from_fn(move || {
            let cur = sub?;
            sub = if cur == mask {
                None
            } else {
                Some(((cur | !mask).wrapping_add(1)) & mask)
            };
            Some(NodeSet(cur))
        })
    }
}

impl FromIterator<usize> for NodeSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        iter.into_iter().fold(NodeSet::EMPTY, NodeSet::with)
    }
}

/// A Coxeter diagram: named nodes and a symmetric bond matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterDiagram {
    names: Vec<String>,
    bonds: Vec<Vec<Bond>>,
}

#[derive(Serialize, Deserialize)]
struct DiagramFile {
    nodes: Vec<String>,
    #[serde(default)]
    edges: Vec<(String, String, Value)>,
}

impl CoxeterDiagram {
    /// Builds a diagram from node names and bonds `(i, j, m)`; unlisted
    /// pairs commute.
    pub fn new<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
        bonds: &[(usize, usize, Bond)],
    ) -> Result<Self, Error> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let n = names.len();
        if n == 0 {
            return Err(Error::InvalidDiagram("diagram has no nodes".into()));
        }
        if n > 64 {
            return Err(Error::InvalidDiagram("at most 64 nodes are supported".into()));
        }
        let mut seen = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if seen.insert(name.clone(), i).is_some() {
                return Err(Error::InvalidDiagram(format!("duplicate node {name:?}")));
            }
        }
        let mut matrix = vec![vec![Bond::Finite(2); n]; n];
        let mut given: BTreeMap<(usize, usize), Bond> = BTreeMap::new();
        for i in 0..n {
            matrix[i][i] = Bond::Finite(1);
        }
        for &(i, j, m) in bonds {
            if i >= n || j >= n {
                return Err(Error::InvalidDiagram(format!("bond ({i}, {j}) out of range")));
            }
            if i == j {
                return Err(Error::InvalidDiagram(format!(
                    "self-bond on node {:?}",
                    names[i]
                )));
            }
            if let Bond::Finite(k) = m {
                if k < 2 {
                    return Err(Error::InvalidDiagram(format!(
                        "bond {:?}-{:?} has m = {k} < 2",
                        names[i], names[j]
                    )));
                }
            }
            let key = (i.min(j), i.max(j));
            if let Some(prev) = given.insert(key, m) {
                if prev != m {
                    return Err(Error::InvalidDiagram(format!(
                        "conflicting bonds {prev} and {m} between {:?} and {:?}",
                        names[key.0], names[key.1]
                    )));
                }
            }
            matrix[i][j] = m;
            matrix[j][i] = m;
        }
        Ok(CoxeterDiagram {
            names,
            bonds: matrix,
        })
    }

    /// Parses the JSON diagram format
    /// `{"nodes": [..], "edges": [[a, b, m | "inf"], ..]}`.
    pub fn from_json(text: &str) -> Result<Self, Error> {
        let file: DiagramFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let index: HashMap<&str, usize> = file
            .nodes
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        let mut bonds = Vec::with_capacity(file.edges.len());
        for (a, b, m) in &file.edges {
            let lookup = |s: &str| {
                index
                    .get(s)
                    .copied()
                    .ok_or_else(|| Error::InvalidDiagram(format!("edge mentions unknown node {s:?}")))
            };
            let bond = match m {
                Value::String(s) if s == "inf" || s == "∞" => Bond::Infinite,
                Value::Number(k) => match k.as_u64() {
                    Some(k) if k <= u32::MAX as u64 => Bond::Finite(k as u32),
                    _ => {
                        return Err(Error::InvalidDiagram(format!(
                            "bond label {k} is not a valid order"
                        )))
                    }
                },
                other => {
                    return Err(Error::Parse(format!(
                        "bond label must be an integer or \"inf\", got {other}"
                    )))
                }
            };
            bonds.push((lookup(a)?, lookup(b)?, bond));
        }
        CoxeterDiagram::new(file.nodes, &bonds)
    }

    /// Serializes back to the diagram file format, listing non-commuting
    /// pairs only.
    pub fn to_json(&self) -> String {
        let mut edges = Vec::new();
        for i in 0..self.rank() {
            for j in i + 1..self.rank() {
                let m = self.bond(i, j);
                if m != Bond::Finite(2) {
                    let label = match m {
                        Bond::Finite(k) => Value::from(k),
                        Bond::Infinite => Value::from("inf"),
                    };
                    edges.push((self.names[i].clone(), self.names[j].clone(), label));
                }
            }
        }
        serde_json::to_string(&DiagramFile {
            nodes: self.names.clone(),
            edges,
        })
        .expect("diagram serialization")
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn bond(&self, i: usize, j: usize) -> Bond {
        self.bonds[i][j]
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn all_nodes(&self) -> NodeSet {
        NodeSet::full(self.rank())
    }

    /// Parses a node list such as `"1,3"`; the empty string is `∅`.
    pub fn parse_node_set(&self, text: &str) -> Result<NodeSet, Error> {
        let mut set = NodeSet::EMPTY;
        for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let i = self
                .index_of(part)
                .ok_or_else(|| Error::InvalidNodes(format!("unknown node {part:?}")))?;
            set = set.with(i);
        }
        Ok(set)
    }

    pub fn node_names(&self, set: NodeSet) -> Vec<String> {
        set.iter().map(|i| self.names[i].clone()).collect()
    }

    pub fn format_set(&self, set: NodeSet) -> String {
        format!("{{{}}}", self.node_names(set).join(","))
    }

    pub fn format_word(&self, word: &[usize]) -> String {
        if word.is_empty() {
            return "e".into();
        }
        word.iter()
            .map(|&i| format!("s{}", self.names[i]))
            .collect::<Vec<_>>()
            .join("")
    }

    /// `L` for the scalar field `Q(2cos(π/L))`: the lcm of the finite bonds
    /// whose cosine is irrational, or 3 when every cosine is rational.
    pub fn field_lcm(&self) -> u64 {
        let mut l = 1u64;
        for i in 0..self.rank() {
            for j in i + 1..self.rank() {
                if let Bond::Finite(m) = self.bond(i, j) {
                    if m >= 4 {
                        l = l.lcm(&(m as u64));
                    }
                }
            }
        }
        if l == 1 {
            3
        } else {
            l
        }
    }

    /// Vertex set of the connected component of the subdiagram on `set`
    /// containing `start`; edges are bonds with `m ≥ 3`.
    pub fn component_of(&self, set: NodeSet, start: usize) -> NodeSet {
        let mut comp = NodeSet::singleton(start);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for v in set.iter() {
                if !comp.contains(v) && self.bond(u, v).is_edge() {
                    comp = comp.with(v);
                    stack.push(v);
                }
            }
        }
        comp
    }

    /// Connected components of the subdiagram on `set`, in order of their
    /// smallest node.
    pub fn components(&self, set: NodeSet) -> Vec<NodeSet> {
        let mut rest = set;
        let mut out = Vec::new();
        while let Some(i) = rest.iter().next() {
            let c = self.component_of(set, i);
            rest = rest.difference(c);
            out.push(c);
        }
        out
    }
}

/// Named diagrams used by tests, the CLI and the verification suites.
pub mod catalogue {
    use super::{Bond, CoxeterDiagram};

    fn numbered(n: usize) -> Vec<String> {
        (1..=n).map(|i| i.to_string()).collect()
    }

    fn build(n: usize, bonds: &[(usize, usize, Bond)]) -> CoxeterDiagram {
        CoxeterDiagram::new(numbered(n), bonds).expect("catalogue diagram")
    }

    fn path(n: usize, labels: &[u32]) -> CoxeterDiagram {
        let bonds: Vec<_> = labels
            .iter()
            .enumerate()
            .map(|(i, &m)| (i, i + 1, Bond::Finite(m)))
            .collect();
        build(n, &bonds)
    }

    pub fn a(n: usize) -> CoxeterDiagram {
        path(n, &vec![3; n.saturating_sub(1)])
    }

    /// `B_n` with the 4-bond between nodes 1 and 2.
    pub fn b(n: usize) -> CoxeterDiagram {
        let mut labels = vec![3; n - 1];
        labels[0] = 4;
        path(n, &labels)
    }

    pub fn d4() -> CoxeterDiagram {
        let m = Bond::Finite(3);
        build(4, &[(0, 1, m), (1, 2, m), (1, 3, m)])
    }

    pub fn f4() -> CoxeterDiagram {
        path(4, &[3, 4, 3])
    }

    pub fn h3() -> CoxeterDiagram {
        path(3, &[5, 3])
    }

    pub fn h4() -> CoxeterDiagram {
        path(4, &[5, 3, 3])
    }

    pub fn dihedral(m: u32) -> CoxeterDiagram {
        path(2, &[m])
    }

    pub fn infinite_dihedral() -> CoxeterDiagram {
        build(2, &[(0, 1, Bond::Infinite)])
    }

    /// Affine `Ã_2`: a triangle of 3-bonds.
    pub fn affine_a2() -> CoxeterDiagram {
        let m = Bond::Finite(3);
        build(3, &[(0, 1, m), (1, 2, m), (0, 2, m)])
    }

    /// Affine `C̃_2`: `4 — 4` path.
    pub fn affine_c2() -> CoxeterDiagram {
        path(3, &[4, 4])
    }

    /// Affine `G̃_2`: `6 — 3` path.
    pub fn affine_g2() -> CoxeterDiagram {
        path(3, &[6, 3])
    }

    /// Disjoint union, nodes renumbered consecutively.
    pub fn product(parts: &[CoxeterDiagram]) -> CoxeterDiagram {
        let mut bonds = Vec::new();
        let mut offset = 0;
        for p in parts {
            for i in 0..p.rank() {
                for j in i + 1..p.rank() {
                    let m = p.bond(i, j);
                    if m != Bond::Finite(2) {
                        bonds.push((offset + i, offset + j, m));
                    }
                }
            }
            offset += p.rank();
        }
        build(offset, &bonds)
    }

    /// Looks up a diagram by a short name such as `A3`, `B4`, `I2(5)`,
    /// `H4`, `~A2` or `A1xB2`.
    pub fn by_name(name: &str) -> Option<CoxeterDiagram> {
        if name.contains('x') {
            let parts: Option<Vec<_>> = name.split('x').map(by_name).collect();
            return parts.map(|p| product(&p));
        }
        let lower = name.to_ascii_uppercase();
        let rank = |s: &str| s.parse::<usize>().ok().filter(|&n| (1..=16).contains(&n));
        match lower.as_str() {
            "D4" => Some(d4()),
            "F4" => Some(f4()),
            "H3" => Some(h3()),
            "H4" => Some(h4()),
            "G2" => Some(dihedral(6)),
            "~A1" => Some(infinite_dihedral()),
            "~A2" => Some(affine_a2()),
            "~C2" | "~B2" => Some(affine_c2()),
            "~G2" => Some(affine_g2()),
            _ => {
                if let Some(m) = lower.strip_prefix("I2(").and_then(|s| s.strip_suffix(')')) {
                    return match m {
                        "INF" => Some(infinite_dihedral()),
                        _ => m.parse().ok().filter(|&m| m >= 2).map(dihedral),
                    };
                }
                if let Some(n) = lower.strip_prefix('A').and_then(rank) {
                    return Some(a(n));
                }
                if let Some(n) = lower.strip_prefix('B').and_then(rank) {
                    return (n >= 2).then(|| b(n));
                }
                None
            }
        }
    }

    /// Finite-type diagrams of rank at most 4 exercised by the exhaustive
    /// suites: every connected type (dihedral `I2(m)` for `m ≤ 8`) and every
    /// product of those with total rank at most 4.
    pub fn finite_rank_at_most_4() -> Vec<(String, CoxeterDiagram)> {
        let irreducible: Vec<(&str, usize)> = vec![
            ("A1", 1),
            ("A2", 2),
            ("B2", 2),
            ("I2(5)", 2),
            ("G2", 2),
            ("I2(7)", 2),
            ("I2(8)", 2),
            ("A3", 3),
            ("B3", 3),
            ("H3", 3),
            ("A4", 4),
            ("B4", 4),
            ("D4", 4),
            ("F4", 4),
            ("H4", 4),
        ];
        let mut out = Vec::new();
        // Multisets of irreducible types, as non-decreasing index sequences.
        fn extend(
            start: usize,
            rank_left: usize,
            current: &mut Vec<usize>,
            irr: &[(&str, usize)],
            out: &mut Vec<Vec<usize>>,
        ) {
            if !current.is_empty() {
                out.push(current.clone());
            }
            for k in start..irr.len() {
                if irr[k].1 <= rank_left {
                    current.push(k);
                    extend(k, rank_left - irr[k].1, current, irr, out);
                    current.pop();
                }
            }
        }
        let mut combos = Vec::new();
        extend(0, 4, &mut Vec::new(), &irreducible, &mut combos);
        for combo in combos {
            let name = combo
                .iter()
                .map(|&k| irreducible[k].0)
                .collect::<Vec<_>>()
                .join("x");
            let diagram = by_name(&name).expect("catalogue name");
            out.push((name, diagram));
        }
        out
    }

    /// The rank ≤ 3 part of [`finite_rank_at_most_4`].
    pub fn finite_rank_at_most_3() -> Vec<(String, CoxeterDiagram)> {
        finite_rank_at_most_4()
            .into_iter()
            .filter(|(_, d)| d.rank() <= 3)
            .collect()
    }
}
