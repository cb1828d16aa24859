//! The arrangement cut out on `Θ_J` by the J-roots, its chambers `(x, I)`
//! and the simple wall crossings between them.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Mutex;

use rayon::prelude::*;

use crate::coxeter::{CoxeterSystem, GroupElement, Root, ThetaPoint};
use crate::diagram::NodeSet;
use crate::scalar::AlgebraicScalar;
use crate::{Error, Result};

/// A chamber `x·C_I` of the Tits cone intersection.
#[derive(Clone)]
pub struct ChamberLabel {
    pub x: GroupElement,
    pub i: NodeSet,
}

impl ChamberLabel {
    pub fn new(x: GroupElement, i: NodeSet) -> Self {
        ChamberLabel { x, i }
    }
}

impl PartialEq for ChamberLabel {
    fn eq(&self, other: &Self) -> bool {
        self.i == other.i && self.x == other.x
    }
}

impl Eq for ChamberLabel {}

impl Hash for ChamberLabel {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.x.hash(state);
        self.i.hash(state);
    }
}

/// Canonical chamber order: shortlex on the word of `x`, then `I`.
impl Ord for ChamberLabel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.x
            .cmp(&other.x)
            .then_with(|| self.i.bits().cmp(&other.i.bits()))
    }
}

impl PartialOrd for ChamberLabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ChamberLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nodes: Vec<String> = self.i.iter().map(|k| (k + 1).to_string()).collect();
        write!(f, "({:?}, {{{}}})", self.x, nodes.join(","))
    }
}

/// `H_α ∩ Θ_J`, stored as the root with its J-coordinates removed and the
/// first nonzero coordinate scaled to 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RestrictedHyperplane {
    functional: Root,
}

impl RestrictedHyperplane {
    pub fn functional(&self) -> &Root {
        &self.functional
    }

    /// Sign of `φ` against the normalised functional.
    pub fn side(&self, phi: &ThetaPoint) -> Ordering {
        phi.pair(&self.functional).signum()
    }
}

impl fmt::Debug for RestrictedHyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H{:?}", self.functional)
    }
}

/// A simple wall crossing between two enumerated chambers.
#[derive(Clone, Debug)]
pub struct Edge {
    pub from: usize,
    pub node: usize,
    pub to: usize,
    /// The crossing element `v_{a,I}`.
    pub element: GroupElement,
}

/// Enumerated chambers and crossings, in canonical order.
#[derive(Clone, Debug)]
pub struct ArrangementGraph {
    pub j: NodeSet,
    pub chambers: Vec<ChamberLabel>,
    /// Sorted by `(from, node)`.
    pub edges: Vec<Edge>,
    /// Walls `(chamber, a)` with `W_{[I,a]}` infinite.
    pub boundary: Vec<(usize, usize)>,
    /// Wall-crossing distance from the base chamber.
    pub distance: Vec<usize>,
    pub radius: Option<usize>,
    /// Whether no chamber lies outside the enumerated ball.
    pub saturated: bool,
    index: HashMap<ChamberLabel, usize>,
    out: Vec<BTreeMap<usize, usize>>,
}

impl ArrangementGraph {
    /// Assembles a graph from chambers and edges given in any order.
    pub fn from_parts(
        j: NodeSet,
        chambers: Vec<ChamberLabel>,
        edges: Vec<Edge>,
        boundary: Vec<(usize, usize)>,
        radius: Option<usize>,
        saturated: bool,
    ) -> Result<Self> {
        let mut order: Vec<usize> = (0..chambers.len()).collect();
        order.sort_by(|&a, &b| chambers[a].cmp(&chambers[b]));
        let mut rank = vec![0; chambers.len()];
        for (new, &old) in order.iter().enumerate() {
            rank[old] = new;
        }
        let sorted: Vec<ChamberLabel> = order.iter().map(|&k| chambers[k].clone()).collect();
        let mut index = HashMap::new();
        for (k, c) in sorted.iter().enumerate() {
            if index.insert(c.clone(), k).is_some() {
                return Err(Error::Parse(format!("duplicate chamber {c:?}")));
            }
        }
        let mut edges: Vec<Edge> = edges
            .into_iter()
            .map(|e| Edge {
                from: rank[e.from],
                to: rank[e.to],
                ..e
            })
            .collect();
        edges.sort_by_key(|e| (e.from, e.node));
        let mut out = vec![BTreeMap::new(); sorted.len()];
        for (k, e) in edges.iter().enumerate() {
            if out[e.from].insert(e.node, k).is_some() {
                return Err(Error::Parse(format!(
                    "two crossings at node {} from chamber {}",
                    e.node, e.from
                )));
            }
        }
        let mut boundary: Vec<(usize, usize)> =
            boundary.into_iter().map(|(c, a)| (rank[c], a)).collect();
        boundary.sort_unstable();
        let has_base = sorted.first().is_some_and(|c| c.x.is_identity() && c.i == j);
        let distance = if has_base {
            bfs_distances(&out, &edges, 0)
        } else {
            vec![usize::MAX; sorted.len()]
        };
        Ok(ArrangementGraph {
            j,
            chambers: sorted,
            edges,
            boundary,
            distance,
            radius,
            saturated,
            index,
            out,
        })
    }

    pub fn len(&self) -> usize {
        self.chambers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chambers.is_empty()
    }

    pub fn index_of(&self, label: &ChamberLabel) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// The edge leaving `chamber` through the wall at `node`, if enumerated.
    pub fn edge_at(&self, chamber: usize, node: usize) -> Option<&Edge> {
        self.out[chamber].get(&node).map(|&k| &self.edges[k])
    }

    /// Edges leaving `chamber`, by node.
    pub fn edges_from(&self, chamber: usize) -> impl Iterator<Item = &Edge> {
        self.out[chamber].values().map(move |&k| &self.edges[k])
    }

    /// The base chamber `(e, J)`.
    pub fn base(&self) -> usize {
        0
    }

    /// Breadth-first distances from `start`.
    pub fn distances_from(&self, start: usize) -> Vec<usize> {
        bfs_distances(&self.out, &self.edges, start)
    }

    /// Distinct second labels, in order of first appearance.
    pub fn associates(&self) -> Vec<NodeSet> {
        let mut seen = HashSet::new();
        let mut out = vec![self.j];
        seen.insert(self.j);
        for c in &self.chambers {
            if seen.insert(c.i) {
                out.push(c.i);
            }
        }
        out
    }
}

fn bfs_distances(out: &[BTreeMap<usize, usize>], edges: &[Edge], start: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; out.len()];
    dist[start] = 0;
    let mut queue = std::collections::VecDeque::from([start]);
    while let Some(c) = queue.pop_front() {
        for &k in out[c].values() {
            let t = edges[k].to;
            if dist[t] == usize::MAX {
                dist[t] = dist[c] + 1;
                queue.push_back(t);
            }
        }
    }
    dist
}

type Crossing = Option<(NodeSet, GroupElement)>;

/// The arrangement of restricted hyperplanes on `Θ_J`.
pub struct Arrangement<'a> {
    system: &'a CoxeterSystem,
    j: NodeSet,
    crossings: Mutex<HashMap<(NodeSet, usize), Crossing>>,
}

impl fmt::Debug for Arrangement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Arrangement")
            .field("system", self.system)
            .field("j", &self.j)
            .finish()
    }
}

impl<'a> Arrangement<'a> {
    pub fn new(system: &'a CoxeterSystem, j: NodeSet) -> Result<Self> {
        if !j.is_subset(system.all_nodes()) {
            return Err(Error::InvalidNodes(format!(
                "J = {:?} is not a subset of the diagram's nodes",
                j
            )));
        }
        Ok(Arrangement {
            system,
            j,
            crossings: Mutex::new(HashMap::new()),
        })
    }

    pub fn system(&self) -> &'a CoxeterSystem {
        self.system
    }

    pub fn j(&self) -> NodeSet {
        self.j
    }

    /// Dimension of `Θ_J`.
    pub fn dimension(&self) -> usize {
        self.system.rank() - self.j.len()
    }

    pub fn base(&self) -> ChamberLabel {
        ChamberLabel::new(self.system.identity(), self.j)
    }

    /// Whether `Θ_J ⊄ H_α`, i.e. `α` has a nonzero coordinate outside `J`.
    pub fn is_j_root(&self, alpha: &Root) -> bool {
        !alpha.support().is_subset(self.j)
    }

    pub fn restricted_hyperplane(&self, alpha: &Root) -> Result<RestrictedHyperplane> {
        if !self.is_j_root(alpha) {
            return Err(Error::Precondition(format!("{alpha:?} is not a J-root")));
        }
        let field = self.system.field();
        let mut coords: Vec<AlgebraicScalar> = alpha
            .coords()
            .iter()
            .enumerate()
            .map(|(k, c)| {
                if self.j.contains(k) {
                    AlgebraicScalar::zero(field)
                } else {
                    c.clone()
                }
            })
            .collect();
        let lead = coords
            .iter()
            .find(|c| !c.is_zero())
            .cloned()
            .expect("J-root has a coordinate outside J");
        let inv = lead.inverse().expect("nonzero lead");
        for c in coords.iter_mut() {
            if !c.is_zero() {
                *c = &*c * &inv;
            }
        }
        Ok(RestrictedHyperplane {
            functional: Root::new(coords),
        })
    }

    /// `(K, v_{a,I})` when `W_{[I,a]}` is finite, `None` for a boundary wall.
    pub fn crossing(&self, i: NodeSet, a: usize) -> Result<Crossing> {
        if i.contains(a) {
            return Err(Error::Precondition(format!(
                "node {} lies in I",
                self.system.diagram().name(a)
            )));
        }
        if let Some(c) = self
            .crossings
            .lock()
            .unwrap_or_else(|e| e.into_inner())
            .get(&(i, a))
        {
            return Ok(c.clone());
        }
        let w = self.system;
        let comp = w.component(i, a);
        let result = if w.is_finite_parabolic(comp) {
            let v = w.mul(&w.longest_element(comp.without(a))?, &w.longest_element(comp)?);
            let iota = w.iota(comp)?;
            Some((i.with(a).without(iota[a]), v))
        } else {
            None
        };
        self.crossings
            .lock()
            .unwrap_or_else(|e| e.into_inner())
            .insert((i, a), result.clone());
        Ok(result)
    }

    /// `ω_{a,I}(x, I) = (x·v_{a,I}, K)`.
    pub fn simple_wall_crossing(
        &self,
        c: &ChamberLabel,
        a: usize,
    ) -> Result<Option<(ChamberLabel, GroupElement)>> {
        let Some((k, v)) = self.crossing(c.i, a)? else {
            return Ok(None);
        };
        let next = ChamberLabel::new(self.system.mul(&c.x, &v), k);
        if !self.is_minimal(&next) {
            return Err(Error::Internal(format!(
                "crossing {c:?} at {a} produced a non-minimal label {next:?}"
            )));
        }
        Ok(Some((next, v)))
    }

    fn is_minimal(&self, c: &ChamberLabel) -> bool {
        c.i.iter().all(|k| !c.x.has_right_descent(k))
    }

    /// All three label conditions: `|I| = |J|`, `x` minimal in `xW_I`, and
    /// `x⁻¹ s_j x ∈ W_I` for every `j ∈ J`.
    pub fn is_valid_label(&self, c: &ChamberLabel) -> bool {
        if c.i.len() != self.j.len() || !self.is_minimal(c) {
            return false;
        }
        let w = self.system;
        let inv = w.inverse(&c.x);
        self.j.iter().all(|j| {
            let conj = w.mul(&w.mul(&inv, &w.simple(j)), &c.x);
            w.in_parabolic(&conj, c.i)
        })
    }

    /// Breadth-first enumeration from `(e, J)`. A radius is required unless
    /// the diagram is of finite type.
    pub fn enumerate(&self, radius: Option<usize>) -> Result<ArrangementGraph> {
        let finite = self.system.is_finite_type();
        if !finite && radius.is_none() {
            return Err(Error::RadiusRequired);
        }
        let n = self.system.rank();
        let mut chambers = vec![self.base()];
        let mut index: HashMap<ChamberLabel, usize> = HashMap::new();
        index.insert(self.base(), 0);
        let mut edges = Vec::new();
        let mut boundary = Vec::new();
        let mut frontier = vec![0usize];
        let mut depth = 0;
        let mut saturated = true;
        while !frontier.is_empty() {
            let expanded: Vec<Vec<(usize, Option<(ChamberLabel, GroupElement)>)>> = frontier
                .par_iter()
                .map(|&c| {
                    let label = &chambers[c];
                    (0..n)
                        .filter(|&a| !label.i.contains(a))
                        .map(|a| self.simple_wall_crossing(label, a).map(|r| (a, r)))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            let at_edge = radius.is_some_and(|r| depth >= r);
            let mut next = Vec::new();
            for (&c, results) in frontier.iter().zip(expanded) {
                for (a, result) in results {
                    let Some((label, v)) = result else {
                        boundary.push((c, a));
                        continue;
                    };
                    let target = match index.get(&label) {
                        Some(&t) => t,
                        None if at_edge => {
                            saturated = false;
                            continue;
                        }
                        None => {
                            let t = chambers.len();
                            index.insert(label.clone(), t);
                            chambers.push(label);
                            next.push(t);
                            t
                        }
                    };
                    edges.push(Edge {
                        from: c,
                        node: a,
                        to: target,
                        element: v,
                    });
                }
            }
            frontier = next;
            depth += 1;
        }
        ArrangementGraph::from_parts(
            self.j,
            chambers,
            edges,
            boundary,
            if finite { None } else { radius },
            saturated,
        )
    }

    /// `x·Σ_{k ∉ I} ω_k^∨`, an interior point of the chamber.
    pub fn sample_point(&self, c: &ChamberLabel) -> Result<ThetaPoint> {
        let w = self.system;
        let complement = w.all_nodes().difference(c.i);
        let phi = w.contragredient_act(&c.x, &w.coweight_sum(complement));
        for j in self.j.iter() {
            if !phi.pair(&w.simple_root(j)).is_zero() {
                return Err(Error::Internal(format!(
                    "sample point of {c:?} is not in Θ_J"
                )));
            }
        }
        for k in 0..w.rank() {
            let value = phi.pair(&c.x.image_of_simple(k));
            let ok = if c.i.contains(k) {
                value.is_zero()
            } else {
                value.is_positive()
            };
            if !ok {
                return Err(Error::Internal(format!(
                    "sample point of {c:?} fails the interior test at node {k}"
                )));
            }
        }
        Ok(phi)
    }

    /// The restricted hyperplane of the wall of `c` at node `a`: `H_{x·α_a}`.
    pub fn wall(&self, c: &ChamberLabel, a: usize) -> Result<RestrictedHyperplane> {
        self.restricted_hyperplane(&c.x.image_of_simple(a))
    }

    /// Distinct restricted hyperplanes of the positive J-roots of a finite
    /// type diagram, with the number of positive roots cutting each.
    pub fn hyperplanes(&self) -> Result<Vec<(RestrictedHyperplane, usize)>> {
        let roots = self.system.positive_roots(self.system.all_nodes())?;
        let mut order: Vec<RestrictedHyperplane> = Vec::new();
        let mut count: HashMap<RestrictedHyperplane, usize> = HashMap::new();
        for r in roots.iter().filter(|r| self.is_j_root(r)) {
            let h = self.restricted_hyperplane(r)?;
            let e = count.entry(h.clone()).or_insert(0);
            if *e == 0 {
                order.push(h);
            }
            *e += 1;
        }
        Ok(order.into_iter().map(|h| {
            let m = count[&h];
            (h, m)
        }).collect())
    }

    /// Restricted hyperplanes of the walls met by the enumerated chambers,
    /// including boundary walls.
    pub fn hyperplanes_of_graph(&self, graph: &ArrangementGraph) -> Result<Vec<RestrictedHyperplane>> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for (k, c) in graph.chambers.iter().enumerate() {
            let walls = graph
                .edges_from(k)
                .map(|e| e.node)
                .chain(graph.boundary.iter().filter(|b| b.0 == k).map(|b| b.1));
            for a in walls {
                let h = self.wall(c, a)?;
                if seen.insert(h.clone()) {
                    out.push(h);
                }
            }
        }
        Ok(out)
    }

    /// Sign vector of the chamber's sample point against `hyperplanes`.
    pub fn sign_vector(
        &self,
        c: &ChamberLabel,
        hyperplanes: &[RestrictedHyperplane],
    ) -> Result<Vec<Ordering>> {
        let phi = self.sample_point(c)?;
        Ok(hyperplanes.iter().map(|h| h.side(&phi)).collect())
    }

    /// Lemma check: `x·v_{a,I}` is length additive exactly when the base
    /// chamber and `c` lie on the same side of `H_{x·α_a}`.
    pub fn halfspace_crosscheck(&self, c: &ChamberLabel, a: usize) -> Result<bool> {
        let Some((_, v)) = self.crossing(c.i, a)? else {
            return Err(Error::Precondition("wall is not crossable".into()));
        };
        let w = self.system;
        let additive = w.mul(&c.x, &v).length() == c.x.length() + v.length();
        let root = c.x.image_of_simple(a);
        let base_side = self.sample_point(&self.base())?.pair(&root).signum();
        let own_side = self.sample_point(c)?.pair(&root).signum();
        if base_side == Ordering::Equal || own_side == Ordering::Equal {
            return Ok(false);
        }
        Ok(additive == (base_side == own_side))
    }

    /// Whether `g W_J g⁻¹ = W_J`.
    pub fn in_normaliser(&self, g: &GroupElement) -> bool {
        let w = self.system;
        let inv = w.inverse(g);
        self.j.iter().all(|j| {
            let conj = w.mul(&w.mul(g, &w.simple(j)), &inv);
            w.in_parabolic(&conj, self.j)
        })
    }

    /// `g·(x, I) = (min_coset_rep(g·x, I), I)` for `g` normalising `W_J`.
    pub fn normaliser_act(&self, g: &GroupElement, c: &ChamberLabel) -> Result<ChamberLabel> {
        if !self.in_normaliser(g) {
            return Err(Error::Precondition(format!("{g:?} does not normalise W_J")));
        }
        let w = self.system;
        Ok(ChamberLabel::new(w.min_coset_rep(&w.mul(g, &c.x), c.i), c.i))
    }

    /// Whether `x` permutes the simple roots `{α_j : j ∈ J}`.
    pub fn permutes_j(&self, x: &GroupElement) -> bool {
        let images: Option<NodeSet> = self
            .j
            .iter()
            .map(|j| match x.image_of_simple(j).as_signed_simple() {
                Some((k, Ordering::Greater)) => Some(k),
                _ => None,
            })
            .collect();
        images == Some(self.j)
    }

    /// `N_J`, a transversal of `Norm_W(W_J)/W_J`, in shortlex order.
    pub fn normaliser_quotient(&self, limit: usize) -> Result<Vec<GroupElement>> {
        let mut all: Vec<GroupElement> = self
            .system
            .enumerate_group(limit)?
            .into_iter()
            .filter(|x| self.permutes_j(x))
            .collect();
        all.sort();
        Ok(all)
    }

    /// Chamber labels found by running over the whole group: pairs `(x, I)`
    /// with `x` minimal in `xW_I` and `x⁻¹Φ_J = Φ_I`.
    ///
    /// For such a pair `I` is forced to be `{k : x·α_k ∈ Φ_J⁺}`. Conversely,
    /// when that set has `|J|` elements, `x·span(Δ_I) = span(Δ_J)` and
    /// `Φ ∩ span(Δ_I) = Φ_I` give `x⁻¹Φ_J = Φ_I`.
    pub fn labels_by_enumeration(&self, limit: usize) -> Result<Vec<ChamberLabel>> {
        let w = self.system;
        let elements = w.enumerate_group(limit)?;
        let mut out: Vec<ChamberLabel> = elements
            .par_iter()
            .filter_map(|x| {
                let i: NodeSet = (0..w.rank())
                    .filter(|&k| {
                        let r = x.image_of_simple(k);
                        r.support().is_subset(self.j) && r.is_positive()
                    })
                    .collect();
                (i.len() == self.j.len()).then(|| ChamberLabel::new(x.clone(), i))
            })
            .collect();
        out.sort();
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::catalogue;

    fn set(v: &[usize]) -> NodeSet {
        v.iter().copied().collect()
    }

    #[test]
    fn j_roots_of_a2() {
        let w = CoxeterSystem::new(catalogue::a(2));
        let arr = Arrangement::new(&w, set(&[0])).unwrap();
        assert!(!arr.is_j_root(&w.simple_root(0)));
        let sum = Root::new(vec![w.scalar(1), w.scalar(1)]);
        assert!(arr.is_j_root(&sum));
        let free = Arrangement::new(&w, NodeSet::EMPTY).unwrap();
        assert!(w.positive_roots(w.all_nodes()).unwrap().iter().all(|r| free.is_j_root(r)));
    }

    #[test]
    fn restricted_hyperplanes_of_a3_mod_2() {
        let w = CoxeterSystem::new(catalogue::a(3));
        let arr = Arrangement::new(&w, set(&[1])).unwrap();
        let a1 = w.simple_root(0);
        let a12 = Root::new(vec![w.scalar(1), w.scalar(1), w.scalar(0)]);
        assert_eq!(
            arr.restricted_hyperplane(&a1).unwrap(),
            arr.restricted_hyperplane(&a12).unwrap()
        );
        assert!(arr.restricted_hyperplane(&w.simple_root(1)).is_err());
        let hs = arr.hyperplanes().unwrap();
        assert_eq!(hs.len(), 3);
        // α₁ and α₁+α₂ share a hyperplane; so do α₃, α₂+α₃; α₁+α₃ class has
        // α₁+α₂+α₃ only.
        let mut mult: Vec<usize> = hs.iter().map(|h| h.1).collect();
        mult.sort();
        assert_eq!(mult, vec![1, 2, 2]);
    }

    #[test]
    fn crossing_in_a2() {
        let w = CoxeterSystem::new(catalogue::a(2));
        let arr = Arrangement::new(&w, set(&[0])).unwrap();
        let (next, v) = arr.simple_wall_crossing(&arr.base(), 1).unwrap().unwrap();
        assert_eq!(v, w.from_word(&[1, 0]));
        assert_eq!(next, ChamberLabel::new(w.from_word(&[1, 0]), set(&[1])));
        assert!(arr.simple_wall_crossing(&arr.base(), 0).is_err());
    }

    #[test]
    fn crossing_disconnected_component() {
        let w = CoxeterSystem::new(catalogue::a(3));
        let arr = Arrangement::new(&w, set(&[1])).unwrap();
        let (k, v) = arr.crossing(set(&[0]), 2).unwrap().unwrap();
        assert_eq!(k, set(&[0]));
        assert_eq!(v, w.simple(2));
    }

    #[test]
    fn crossing_with_empty_j_is_a_simple_reflection() {
        let w = CoxeterSystem::new(catalogue::b(3));
        let arr = Arrangement::new(&w, NodeSet::EMPTY).unwrap();
        let x = w.from_word(&[0, 1, 2]);
        for a in 0..3 {
            let (next, v) = arr
                .simple_wall_crossing(&ChamberLabel::new(x.clone(), NodeSet::EMPTY), a)
                .unwrap()
                .unwrap();
            assert_eq!(v, w.simple(a));
            assert_eq!(next.x, w.mul_simple(&x, a));
        }
    }

    #[test]
    fn chamber_counts() {
        let a2 = CoxeterSystem::new(catalogue::a(2));
        let g = Arrangement::new(&a2, set(&[0])).unwrap().enumerate(None).unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!(g.chambers[1], ChamberLabel::new(a2.from_word(&[1, 0]), set(&[1])));
        let a3 = CoxeterSystem::new(catalogue::a(3));
        let g = Arrangement::new(&a3, set(&[1])).unwrap().enumerate(None).unwrap();
        assert_eq!(g.len(), 6);
        for i in 0..3 {
            assert_eq!(g.chambers.iter().filter(|c| c.i == set(&[i])).count(), 2);
        }
        let inf = CoxeterSystem::new(catalogue::infinite_dihedral());
        let arr = Arrangement::new(&inf, NodeSet::EMPTY).unwrap();
        assert!(matches!(arr.enumerate(None), Err(Error::RadiusRequired)));
        for r in 0..6 {
            let g = arr.enumerate(Some(r)).unwrap();
            assert_eq!(g.len(), 2 * r + 1);
            assert!(!g.saturated);
        }
    }

    #[test]
    fn sample_points_in_a2() {
        let w = CoxeterSystem::new(catalogue::a(2));
        let arr = Arrangement::new(&w, set(&[0])).unwrap();
        let g = arr.enumerate(None).unwrap();
        let p0 = arr.sample_point(&g.chambers[0]).unwrap();
        let p1 = arr.sample_point(&g.chambers[1]).unwrap();
        assert_eq!(p0.pair(&w.simple_root(1)), w.scalar(1));
        // Θ_J is the line spanned by ω₂^∨ − ω₁^∨/2... both points pair to 0
        // with α₁, and they are negatives of each other up to scale.
        let probe = w.simple_root(1);
        assert!(p0.pair(&probe).is_positive());
        assert!(p1.pair(&probe).is_negative());
        let ratio = p1.coords()[1].checked_div(&p0.coords()[1]).unwrap();
        assert_eq!(p1.coords()[0], &p0.coords()[0] * &ratio);
    }

    #[test]
    fn normaliser_in_a3() {
        let w = CoxeterSystem::new(catalogue::a(3));
        let arr = Arrangement::new(&w, set(&[1])).unwrap();
        let nj = arr.normaliser_quotient(100).unwrap();
        assert_eq!(nj.len(), 2);
        let g = &nj[1];
        let graph = arr.enumerate(None).unwrap();
        let twos: Vec<&ChamberLabel> =
            graph.chambers.iter().filter(|c| c.i == set(&[1])).collect();
        assert_eq!(&arr.normaliser_act(g, twos[0]).unwrap(), twos[1]);
        assert_eq!(&arr.normaliser_act(g, twos[1]).unwrap(), twos[0]);
        let s2 = w.simple(1);
        for c in &graph.chambers {
            assert_eq!(&arr.normaliser_act(&s2, c).unwrap(), c);
        }
        assert!(arr.normaliser_act(&w.simple(0), &graph.chambers[0]).is_err());
    }

    #[test]
    fn small_normaliser_quotients() {
        let a2 = CoxeterSystem::new(catalogue::a(2));
        let arr = Arrangement::new(&a2, set(&[0])).unwrap();
        assert_eq!(arr.normaliser_quotient(100).unwrap(), vec![a2.identity()]);
        let arr = Arrangement::new(&a2, NodeSet::EMPTY).unwrap();
        assert_eq!(arr.normaliser_quotient(100).unwrap().len(), 6);
    }

    #[test]
    fn halfspace_matches_length_on_affine_ball() {
        let w = CoxeterSystem::new(catalogue::affine_a2());
        let arr = Arrangement::new(&w, set(&[0])).unwrap();
        let g = arr.enumerate(Some(4)).unwrap();
        for e in &g.edges {
            assert!(arr.halfspace_crosscheck(&g.chambers[e.from], e.node).unwrap());
        }
    }

    #[test]
    fn enumeration_is_independent_of_thread_count() {
        let w = CoxeterSystem::new(catalogue::b(3));
        let run = |threads| {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            pool.install(|| {
                let g = Arrangement::new(&w, set(&[0])).unwrap().enumerate(None).unwrap();
                g.edges.iter().map(|e| (e.from, e.node, e.to)).collect::<Vec<_>>()
            })
        };
        assert_eq!(run(1), run(4));
    }
}
