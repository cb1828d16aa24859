//! Edge paths in the chamber graph: geodesics, positive-path equality and
//! the atomic Matsumoto check.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::arrangement::{Arrangement, ArrangementGraph};
use crate::coxeter::{GroupElement, ThetaPoint};
use crate::groupoid::RankTwoLcm;
use crate::diagram::NodeSet;
use crate::{Error, Result};

/// A path given by its start chamber and the wall nodes crossed in turn.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub start: usize,
    pub nodes: Vec<usize>,
}

impl Path {
    pub fn new(start: usize, nodes: Vec<usize>) -> Self {
        Path { start, nodes }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Chambers visited by a path, including both ends.
pub fn chambers_along(graph: &ArrangementGraph, path: &Path) -> Result<Vec<usize>> {
    let mut at = path.start;
    let mut out = vec![at];
    for &a in &path.nodes {
        at = graph
            .edge_at(at, a)
            .ok_or_else(|| {
                Error::Precondition(format!("no enumerated crossing at node {a} from chamber {at}"))
            })?
            .to;
        out.push(at);
    }
    Ok(out)
}

pub fn end_of(graph: &ArrangementGraph, path: &Path) -> Result<usize> {
    Ok(*chambers_along(graph, path)?.last().expect("nonempty"))
}

/// `v_p`, the product of the crossing elements along the path.
pub fn path_element(arr: &Arrangement<'_>, graph: &ArrangementGraph, path: &Path) -> Result<GroupElement> {
    let w = arr.system();
    let mut at = path.start;
    let mut acc = w.identity();
    for &a in &path.nodes {
        let e = graph.edge_at(at, a).ok_or_else(|| {
            Error::Precondition(format!("no enumerated crossing at node {a} from chamber {at}"))
        })?;
        acc = w.mul(&acc, &e.element);
        at = e.to;
    }
    Ok(acc)
}

/// Sum of the lengths of the crossing elements along the path.
fn total_length(graph: &ArrangementGraph, path: &Path) -> Result<usize> {
    let mut at = path.start;
    let mut total = 0;
    for &a in &path.nodes {
        let e = graph.edge_at(at, a).ok_or_else(|| {
            Error::Precondition(format!("no enumerated crossing at node {a} from chamber {at}"))
        })?;
        total += e.element.length();
        at = e.to;
    }
    Ok(total)
}

/// Length additivity: `ℓ(v_p) = Σ ℓ(v_{a_i,I_i})`.
pub fn is_geodesic(arr: &Arrangement<'_>, graph: &ArrangementGraph, path: &Path) -> Result<bool> {
    Ok(path_element(arr, graph, path)?.length() == total_length(graph, path)?)
}

/// Interior points of every chamber, computed once.
pub struct SamplePoints {
    points: Vec<ThetaPoint>,
}

impl SamplePoints {
    pub fn new(arr: &Arrangement<'_>, graph: &ArrangementGraph) -> Result<Self> {
        let points = graph
            .chambers
            .iter()
            .map(|c| arr.sample_point(c))
            .collect::<Result<_>>()?;
        Ok(SamplePoints { points })
    }

    pub fn get(&self, chamber: usize) -> &ThetaPoint {
        &self.points[chamber]
    }
}

/// All geodesics from `from` to `to`: depth-first search crossing only walls
/// that separate the current chamber from the target, so each hyperplane
/// is crossed at most once. Fails if more than `limit` geodesics exist or
/// a needed crossing lies outside the enumerated graph.
pub fn geodesics(
    graph: &ArrangementGraph,
    samples: &SamplePoints,
    from: usize,
    to: usize,
    limit: usize,
) -> Result<Vec<Path>> {
    let target = samples.get(to);
    let mut out = Vec::new();
    let mut stack: Vec<(usize, Vec<usize>)> = vec![(from, Vec::new())];
    while let Some((at, nodes)) = stack.pop() {
        if at == to {
            out.push(Path::new(from, nodes));
            if out.len() > limit {
                return Err(Error::LimitExceeded(format!("more than {limit} geodesics")));
            }
            continue;
        }
        let label = &graph.chambers[at];
        let mut moves = Vec::new();
        for a in 0..graph.chambers[at].x.matrix().dim() {
            if label.i.contains(a) {
                continue;
            }
            let root = label.x.image_of_simple(a);
            if !target.pair(&root).is_negative() {
                continue;
            }
            let edge = graph.edge_at(at, a).ok_or_else(|| {
                Error::LimitExceeded(format!(
                    "a geodesic from chamber {from} to {to} leaves the enumerated graph"
                ))
            })?;
            moves.push((a, edge.to));
        }
        // Reverse so that the depth-first order explores smaller nodes first.
        for (a, next) in moves.into_iter().rev() {
            let mut n = nodes.clone();
            n.push(a);
            stack.push((next, n));
        }
    }
    out.sort();
    Ok(out)
}

/// Outcome of the positive-path equality search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathEquality {
    Equal,
    NotEqual,
    /// The rewriting closure grew past the configured bound.
    Indeterminate,
}

/// Decides whether two positive paths are related by replacing geodesic
/// subpaths with other geodesics between the same chambers.
pub fn positive_path_equal(
    arr: &Arrangement<'_>,
    graph: &ArrangementGraph,
    samples: &SamplePoints,
    p: &Path,
    q: &Path,
    bound: usize,
) -> Result<PathEquality> {
    let (pe, qe) = (chambers_along(graph, p)?, chambers_along(graph, q)?);
    if p.start != q.start || pe.last() != qe.last() || p.len() != q.len() {
        return Ok(PathEquality::NotEqual);
    }
    if p == q || (is_geodesic(arr, graph, p)? && is_geodesic(arr, graph, q)?) {
        return Ok(PathEquality::Equal);
    }
    let mut seen: HashSet<Path> = HashSet::from([p.clone()]);
    let mut queue = VecDeque::from([p.clone()]);
    while let Some(cur) = queue.pop_front() {
        let along = chambers_along(graph, &cur)?;
        for s in 0..cur.len() {
            for e in s + 2..=cur.len() {
                let sub = Path::new(along[s], cur.nodes[s..e].to_vec());
                if !is_geodesic(arr, graph, &sub)? {
                    continue;
                }
                for alt in geodesics(graph, samples, along[s], along[e], bound)? {
                    if alt.nodes == sub.nodes {
                        continue;
                    }
                    let mut nodes = cur.nodes[..s].to_vec();
                    nodes.extend(&alt.nodes);
                    nodes.extend(&cur.nodes[e..]);
                    let next = Path::new(cur.start, nodes);
                    if next == *q {
                        return Ok(PathEquality::Equal);
                    }
                    if seen.insert(next.clone()) {
                        if seen.len() > bound {
                            return Ok(PathEquality::Indeterminate);
                        }
                        queue.push_back(next);
                    }
                }
            }
        }
    }
    Ok(PathEquality::NotEqual)
}

/// Counts for one chamber pair of the atomic Matsumoto check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MatsumotoCount {
    pub geodesics: usize,
    /// Classes under rank-two swaps; 1 means all geodesics are connected.
    pub classes: usize,
}

fn find(parent: &mut [usize], k: usize) -> usize {
    let mut r = k;
    while parent[r] != r {
        r = parent[r];
    }
    let mut m = k;
    while parent[m] != r {
        let next = parent[m];
        parent[m] = r;
        m = next;
    }
    r
}

/// Rank-two swaps available at each object, as pairs of node sequences.
pub fn swaps_by_object(lcms: &[RankTwoLcm]) -> HashMap<NodeSet, Vec<(Vec<usize>, Vec<usize>)>> {
    let mut out: HashMap<NodeSet, Vec<(Vec<usize>, Vec<usize>)>> = HashMap::new();
    for l in lcms {
        out.entry(l.source)
            .or_default()
            .push((l.first_nodes(), l.second_nodes()));
    }
    out
}

/// Connects the geodesics between two chambers by replacing one standard
/// expression of a rank-two lcm with the other.
pub fn matsumoto_classes(
    graph: &ArrangementGraph,
    samples: &SamplePoints,
    swaps: &HashMap<NodeSet, Vec<(Vec<usize>, Vec<usize>)>>,
    from: usize,
    to: usize,
    limit: usize,
) -> Result<MatsumotoCount> {
    let all = geodesics(graph, samples, from, to, limit)?;
    let index: HashMap<&[usize], usize> = all
        .iter()
        .enumerate()
        .map(|(k, p)| (p.nodes.as_slice(), k))
        .collect();
    let mut parent: Vec<usize> = (0..all.len()).collect();
    for (k, p) in all.iter().enumerate() {
        let along = chambers_along(graph, p)?;
        for s in 0..p.len() {
            let object = graph.chambers[along[s]].i;
            let Some(list) = swaps.get(&object) else {
                continue;
            };
            for (x, y) in list {
                for (from_side, to_side) in [(x, y), (y, x)] {
                    let e = s + from_side.len();
                    if e > p.len() || &p.nodes[s..e] != from_side.as_slice() {
                        continue;
                    }
                    let mut nodes = p.nodes[..s].to_vec();
                    nodes.extend(to_side);
                    nodes.extend(&p.nodes[e..]);
                    if let Some(&t) = index.get(nodes.as_slice()) {
                        let (ra, rb) = (find(&mut parent, k), find(&mut parent, t));
                        if ra != rb {
                            parent[ra.max(rb)] = ra.min(rb);
                        }
                    }
                }
            }
        }
    }
    let classes = (0..all.len()).filter(|&k| find(&mut parent, k) == k).count();
    Ok(MatsumotoCount {
        geodesics: all.len(),
        classes,
    })
}

/// Chamber pairs whose geodesics stay inside the enumerated graph: all pairs
/// for a complete graph, otherwise pairs with `d(b,c) + d(b,d) ≤ radius`.
pub fn safe_pairs(graph: &ArrangementGraph) -> Vec<(usize, usize)> {
    let n = graph.len();
    let mut out = Vec::new();
    for c in 0..n {
        for d in 0..n {
            let ok = match graph.radius {
                None => true,
                Some(r) => graph.distance[c] + graph.distance[d] <= r,
            };
            if ok {
                out.push((c, d));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterSystem;
    use crate::diagram::catalogue;
    use crate::groupoid::all_rank_two_lcms;

    fn set(v: &[usize]) -> NodeSet {
        v.iter().copied().collect()
    }

    #[test]
    fn single_edges_and_bounces() {
        let w = CoxeterSystem::new(catalogue::a(3));
        let arr = Arrangement::new(&w, set(&[1])).unwrap();
        let g = arr.enumerate(None).unwrap();
        for e in &g.edges {
            let p = Path::new(e.from, vec![e.node]);
            assert!(is_geodesic(&arr, &g, &p).unwrap());
            let back = g.edges_from(e.to).find(|f| f.to == e.from).unwrap();
            let bounce = Path::new(e.from, vec![e.node, back.node]);
            assert!(path_element(&arr, &g, &bounce).unwrap().is_identity());
            assert!(!is_geodesic(&arr, &g, &bounce).unwrap());
        }
        assert!(path_element(&arr, &g, &Path::new(0, vec![1])).is_err());
    }

    #[test]
    fn geodesic_lengths_are_distances() {
        let w = CoxeterSystem::new(catalogue::a(3));
        let arr = Arrangement::new(&w, set(&[1])).unwrap();
        let g = arr.enumerate(None).unwrap();
        let samples = SamplePoints::new(&arr, &g).unwrap();
        for c in 0..g.len() {
            let dist = g.distances_from(c);
            for d in 0..g.len() {
                let all = geodesics(&g, &samples, c, d, 1000).unwrap();
                assert!(!all.is_empty());
                for p in &all {
                    assert_eq!(p.len(), dist[d]);
                    assert!(is_geodesic(&arr, &g, p).unwrap());
                }
            }
        }
    }

    #[test]
    fn reduced_words_of_w0_in_a2_are_equal() {
        let w = CoxeterSystem::new(catalogue::a(2));
        let arr = Arrangement::new(&w, NodeSet::EMPTY).unwrap();
        let g = arr.enumerate(None).unwrap();
        let samples = SamplePoints::new(&arr, &g).unwrap();
        let p = Path::new(0, vec![0, 1, 0]);
        let q = Path::new(0, vec![1, 0, 1]);
        assert_eq!(
            positive_path_equal(&arr, &g, &samples, &p, &q, 100).unwrap(),
            PathEquality::Equal
        );
        let longer = Path::new(0, vec![0, 1, 0, 0, 0]);
        assert_eq!(
            positive_path_equal(&arr, &g, &samples, &p, &longer, 100).unwrap(),
            PathEquality::NotEqual
        );
    }

    #[test]
    fn non_geodesic_paths_rewrite() {
        let w = CoxeterSystem::new(catalogue::a(2));
        let arr = Arrangement::new(&w, NodeSet::EMPTY).unwrap();
        let g = arr.enumerate(None).unwrap();
        let samples = SamplePoints::new(&arr, &g).unwrap();
        // s1 s1 s2 s1 s2 vs s1 s1 s1 s2 s1: the tails are the two words of w0.
        let p = Path::new(0, vec![0, 0, 1, 0, 1]);
        let q = Path::new(0, vec![0, 0, 0, 1, 0]);
        assert_eq!(
            positive_path_equal(&arr, &g, &samples, &p, &q, 1000).unwrap(),
            PathEquality::Equal
        );
        // s1 s1 vs s2 s2: both loops at the base, not related.
        let p = Path::new(0, vec![0, 0]);
        let q = Path::new(0, vec![1, 1]);
        assert_eq!(
            positive_path_equal(&arr, &g, &samples, &p, &q, 1000).unwrap(),
            PathEquality::NotEqual
        );
    }

    #[test]
    fn matsumoto_in_a3_mod_2() {
        let w = CoxeterSystem::new(catalogue::a(3));
        let arr = Arrangement::new(&w, set(&[1])).unwrap();
        let g = arr.enumerate(None).unwrap();
        let samples = SamplePoints::new(&arr, &g).unwrap();
        let lcms = all_rank_two_lcms(&arr, &g.associates()).unwrap();
        let swaps = swaps_by_object(&lcms);
        for (c, d) in safe_pairs(&g) {
            let count = matsumoto_classes(&g, &samples, &swaps, c, d, 1000).unwrap();
            assert_eq!(count.classes, 1);
        }
    }

    #[test]
    fn safe_pairs_respect_the_margin() {
        let w = CoxeterSystem::new(catalogue::affine_a2());
        let arr = Arrangement::new(&w, set(&[0])).unwrap();
        let g = arr.enumerate(Some(4)).unwrap();
        let samples = SamplePoints::new(&arr, &g).unwrap();
        for (c, d) in safe_pairs(&g) {
            assert!(!geodesics(&g, &samples, c, d, 10_000).unwrap().is_empty());
        }
    }
}
