//! The Brink–Howlett groupoid: associates of `J`, morphisms permuting
//! simple roots, rank-two lcms and the presentation of `N(W,J)`.

use std::cmp::Ordering;

use crate::arrangement::{Arrangement, ArrangementGraph};
use crate::coxeter::{CoxeterSystem, GroupElement};
use crate::diagram::NodeSet;
use crate::presentation::{GroupoidGenerator, GroupoidPresentation, PresentationKind};
use crate::{Error, Result};

/// Whether `{α_i : i ∈ I} = {x·α_k : k ∈ K}`.
pub fn is_bh_morphism(x: &GroupElement, i: NodeSet, k: NodeSet) -> bool {
    if i.len() != k.len() {
        return false;
    }
    let images: Option<NodeSet> = k
        .iter()
        .map(|k| match x.image_of_simple(k).as_signed_simple() {
            Some((t, Ordering::Greater)) => Some(t),
            _ => None,
        })
        .collect();
    images == Some(i)
}

/// A morphism `K → I` of the groupoid, written as in the arrangement: the
/// element carries the target's simple roots onto the source's.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BHMorphism {
    pub source: NodeSet,
    pub target: NodeSet,
    pub element: GroupElement,
}

impl BHMorphism {
    pub fn new(source: NodeSet, target: NodeSet, element: GroupElement) -> Result<Self> {
        if !is_bh_morphism(&element, source, target) {
            return Err(Error::Precondition(format!(
                "{element:?} does not carry {target:?} onto {source:?}"
            )));
        }
        Ok(BHMorphism {
            source,
            target,
            element,
        })
    }
}

/// One step `v_{a,I}` of a standard expression.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Step {
    pub object: NodeSet,
    pub node: usize,
}

/// `v_{a,b,I}` with its two standard expressions.
#[derive(Clone, Debug)]
pub struct RankTwoLcm {
    pub source: NodeSet,
    pub a: usize,
    pub b: usize,
    pub target: NodeSet,
    pub element: GroupElement,
    /// Begins with `v_{a,I}`.
    pub first: Vec<Step>,
    /// Begins with `v_{b,I}`.
    pub second: Vec<Step>,
}

impl RankTwoLcm {
    pub fn first_nodes(&self) -> Vec<usize> {
        self.first.iter().map(|s| s.node).collect()
    }

    pub fn second_nodes(&self) -> Vec<usize> {
        self.second.iter().map(|s| s.node).collect()
    }
}

/// Product of the crossing elements along a standard expression.
pub fn evaluate_steps(arr: &Arrangement<'_>, steps: &[Step]) -> Result<GroupElement> {
    let w = arr.system();
    let mut acc = w.identity();
    for s in steps {
        let (_, v) = arr
            .crossing(s.object, s.node)?
            .ok_or_else(|| Error::Internal("standard expression crosses a boundary wall".into()))?;
        acc = w.mul(&acc, &v);
    }
    Ok(acc)
}

/// Whether `u` left-divides `r` in the weak order, returning `u⁻¹r`.
fn left_quotient(w: &CoxeterSystem, u: &GroupElement, r: &GroupElement) -> Option<GroupElement> {
    if u.length() > r.length() {
        return None;
    }
    let q = w.mul(&w.inverse(u), r);
    (q.length() + u.length() == r.length()).then_some(q)
}

/// Peels a standard expression off `r` starting at `object`, the first
/// step being forced to `first`.
fn peel(
    arr: &Arrangement<'_>,
    object: NodeSet,
    first: usize,
    r: &GroupElement,
) -> Result<(Vec<Step>, NodeSet)> {
    let w = arr.system();
    let (mut at, mut rest) = {
        let (k, v) = arr
            .crossing(object, first)?
            .ok_or_else(|| Error::Internal("first wall of an lcm is not crossable".into()))?;
        let q = left_quotient(w, &v, r)
            .ok_or_else(|| Error::Internal("v_{a,I} does not left-divide v_{a,b,I}".into()))?;
        (k, q)
    };
    let mut steps = vec![Step {
        object,
        node: first,
    }];
    while !rest.is_identity() {
        let mut found: Option<(usize, NodeSet, GroupElement)> = None;
        for a in w.all_nodes().difference(at).iter() {
            let Some((k, v)) = arr.crossing(at, a)? else {
                continue;
            };
            if let Some(q) = left_quotient(w, &v, &rest) {
                if found.is_some() {
                    return Err(Error::Internal(format!(
                        "standard expression of a rank-two lcm is not unique at {at:?}"
                    )));
                }
                found = Some((a, k, q));
            }
        }
        let (a, k, q) = found.ok_or_else(|| {
            Error::Internal(format!("no generator left-divides the remainder at {at:?}"))
        })?;
        steps.push(Step {
            object: at,
            node: a,
        });
        at = k;
        rest = q;
    }
    Ok((steps, at))
}

/// `v_{a,b,I}` and its two standard expressions, or `None` when the
/// components of `Γ(I+a+b)` containing `a` and `b` are not both finite
/// (then `Φ_{I+a+b} − Φ_I` is infinite).
pub fn rank_two_lcm(
    arr: &Arrangement<'_>,
    i: NodeSet,
    a: usize,
    b: usize,
) -> Result<Option<RankTwoLcm>> {
    if a == b || i.contains(a) || i.contains(b) {
        return Err(Error::Precondition(
            "rank-two lcm needs distinct nodes outside I".into(),
        ));
    }
    let w = arr.system();
    let whole = i.with(a).with(b);
    let ca = w.diagram().component_of(whole, a);
    let cb = w.diagram().component_of(whole, b);
    if !w.is_finite_parabolic(ca) || !w.is_finite_parabolic(cb) {
        return Ok(None);
    }
    let c = ca.union(cb);
    let element = w.mul(&w.longest_element(i.intersection(c))?, &w.longest_element(c)?);
    let (first, t1) = peel(arr, i, a, &element)?;
    let (second, t2) = peel(arr, i, b, &element)?;
    if t1 != t2 {
        return Err(Error::Internal("standard expressions end at different objects".into()));
    }
    Ok(Some(RankTwoLcm {
        source: i,
        a,
        b,
        target: t1,
        element,
        first,
        second,
    }))
}

/// Every rank-two lcm at the given objects, in the order `(object, a, b)`
/// with `a < b`.
pub fn all_rank_two_lcms(arr: &Arrangement<'_>, objects: &[NodeSet]) -> Result<Vec<RankTwoLcm>> {
    let w = arr.system();
    let mut out = Vec::new();
    for &i in objects {
        let outside: Vec<usize> = w.all_nodes().difference(i).iter().collect();
        for (x, &a) in outside.iter().enumerate() {
            for &b in &outside[x + 1..] {
                if let Some(l) = rank_two_lcm(arr, i, a, b)? {
                    out.push(l);
                }
            }
        }
    }
    Ok(out)
}

/// Label of the generator `v_{a,I}` (or `μ_{a,I}`), e.g. `v(3|1,2)`.
pub fn generator_label(w: &CoxeterSystem, prefix: &str, i: NodeSet, a: usize) -> String {
    format!(
        "{prefix}({}|{})",
        w.diagram().name(a),
        w.diagram().node_names(i).join(",")
    )
}

/// Generators over the objects of an enumerated graph: every crossable
/// `v_{a,I}` whose target is also an object.
pub(crate) fn groupoid_generators(
    arr: &Arrangement<'_>,
    objects: &[NodeSet],
    prefix: &str,
) -> Result<Vec<(GroupoidGenerator, GroupElement)>> {
    let w = arr.system();
    let mut out = Vec::new();
    for (s, &i) in objects.iter().enumerate() {
        for a in w.all_nodes().difference(i).iter() {
            let Some((k, v)) = arr.crossing(i, a)? else {
                continue;
            };
            let Some(t) = objects.iter().position(|&o| o == k) else {
                continue;
            };
            out.push((
                GroupoidGenerator {
                    label: generator_label(w, prefix, i, a),
                    source: s,
                    target: t,
                    node: a,
                    payload: vec![v.word().to_vec()],
                },
                v,
            ));
        }
    }
    Ok(out)
}

pub(crate) fn generator_index(
    gens: &[GroupoidGenerator],
    objects: &[NodeSet],
    step: &Step,
) -> Result<usize> {
    gens.iter()
        .position(|g| objects[g.source] == step.object && g.node == step.node)
        .ok_or_else(|| Error::Internal(format!("no generator for step {step:?}")))
}

/// Objects of the groupoid: the base `J` followed by the other second labels
/// of the graph in increasing bit order.
pub fn objects_of(graph: &ArrangementGraph) -> Vec<NodeSet> {
    let mut rest: Vec<NodeSet> = graph
        .associates()
        .into_iter()
        .filter(|&i| i != graph.j)
        .collect();
    rest.sort_by_key(|i| i.bits());
    let mut out = vec![graph.j];
    out.extend(rest);
    out
}

/// Generators `v_{a,I}`, involution relations `v_{a,I}·v_{a′,K} = id` and the
/// two standard expressions of every rank-two lcm.
pub fn bh_presentation(
    arr: &Arrangement<'_>,
    graph: &ArrangementGraph,
) -> Result<GroupoidPresentation> {
    let objects = objects_of(graph);
    let with_elements = groupoid_generators(arr, &objects, "v")?;
    let generators: Vec<GroupoidGenerator> =
        with_elements.iter().map(|(g, _)| g.clone()).collect();
    let w = arr.system();
    let mut relations = Vec::new();
    for (k, g) in generators.iter().enumerate() {
        // The reverse crossing leaves K through the node of [I,a] not in K.
        let i = objects[g.source];
        let comp = w.component(i, g.node);
        let back = w.iota(comp)?[g.node];
        let Some(r) = generators
            .iter()
            .position(|h| h.source == g.target && h.node == back)
        else {
            continue;
        };
        if r < k {
            continue;
        }
        if r != k && generators[r].target != g.source {
            return Err(Error::Internal("reverse crossing does not return".into()));
        }
        relations.push((vec![k, r], Vec::new()));
    }
    for l in all_rank_two_lcms(arr, &objects)? {
        let side = |steps: &[Step]| -> Result<Option<Vec<usize>>> {
            let mut out = Vec::new();
            for s in steps {
                match generator_index(&generators, &objects, s) {
                    Ok(k) => out.push(k),
                    // Leaves the enumerated objects (only in a ball).
                    Err(_) => return Ok(None),
                }
            }
            Ok(Some(out))
        };
        if let (Some(lhs), Some(rhs)) = (side(&l.first)?, side(&l.second)?) {
            relations.push((lhs, rhs));
        }
    }
    let p = GroupoidPresentation {
        kind: PresentationKind::Coxeter,
        base: 0,
        objects,
        generators,
        relations,
    };
    p.validate()?;
    Ok(p)
}
