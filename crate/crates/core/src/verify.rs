//! Named invariant checks over an enumerated (or ingested) chamber graph,
//! grouped into the `arrangement`, `groupoid` and `garside` suites.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::str::FromStr;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arrangement::{Arrangement, ArrangementGraph};
use crate::coxeter::GroupElement;
use crate::diagram::NodeSet;
use crate::garside::Garside;
use crate::groupoid::{all_rank_two_lcms, bh_presentation, evaluate_steps, is_bh_morphism, objects_of};
use crate::paths::{
    chambers_along, geodesics, matsumoto_classes, path_element, positive_path_equal, safe_pairs,
    swaps_by_object, Path, PathEquality, SamplePoints,
};
use crate::ribbon::{functor_g, kernel_presentation, mu, pi_bar_check, ribbon_presentation};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Arrangement,
    Groupoid,
    Garside,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Suite::All),
            "arrangement" => Ok(Suite::Arrangement),
            "groupoid" => Ok(Suite::Groupoid),
            "garside" => Ok(Suite::Garside),
            other => Err(Error::Parse(format!("unknown suite {other:?}"))),
        }
    }
}

impl Suite {
    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub nodes: Vec<String>,
    #[serde(rename = "J")]
    pub j: Vec<String>,
    pub radius: Option<usize>,
    pub chambers: usize,
    pub suite: Suite,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub passed: bool,
}

/// Limits that keep every check bounded.
#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub suite: Suite,
    pub seed: u64,
    /// Largest group enumerated for `N_J` and brute-force label checks.
    pub group_limit: usize,
    /// Coset limit for Todd–Coxeter.
    pub coset_limit: usize,
    /// Geodesics enumerated per chamber pair before the pair is set aside.
    pub geodesic_limit: usize,
    /// Above this many chamber pairs only pairs leaving the base are used.
    pub pair_limit: usize,
    /// Largest `|N(W,J)|` for which the kernel presentation is built.
    pub kernel_index_limit: usize,
    /// Random words in the normal-form check.
    pub samples: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            suite: Suite::All,
            seed: 0,
            group_limit: 200_000,
            coset_limit: 4_000_000,
            geodesic_limit: 2_000,
            pair_limit: 20_000,
            kernel_index_limit: 2_000,
            samples: 200,
        }
    }
}

enum Outcome {
    Pass(String),
    Fail(String),
    Skipped(String),
}

struct Ctx<'c, 'a> {
    arr: &'c Arrangement<'a>,
    graph: &'c ArrangementGraph,
    config: &'c VerifyConfig,
    finite: bool,
    normaliser: OnceLock<std::result::Result<Vec<GroupElement>, String>>,
    samples: OnceLock<std::result::Result<SamplePoints, String>>,
}

impl Ctx<'_, '_> {
    fn normaliser(&self) -> Result<&[GroupElement]> {
        self.normaliser
            .get_or_init(|| {
                self.arr
                    .normaliser_quotient(self.config.group_limit)
                    .map_err(|e| e.to_string())
            })
            .as_deref()
            .map_err(|e| Error::Internal(e.clone()))
    }

    fn samples(&self) -> Result<&SamplePoints> {
        self.samples
            .get_or_init(|| SamplePoints::new(self.arr, self.graph).map_err(|e| e.to_string()))
            .as_ref()
            .map_err(|e| Error::Internal(e.clone()))
    }

    fn label(&self, k: usize) -> String {
        let d = self.arr.system().diagram();
        let c = &self.graph.chambers[k];
        format!("({}, {})", d.format_word(c.x.word()), d.format_set(c.i))
    }

    fn node(&self, a: usize) -> &str {
        self.arr.system().diagram().name(a)
    }

    /// Whether every crossing out of the chamber was explored.
    fn interior(&self, k: usize) -> bool {
        match self.graph.radius {
            None => true,
            Some(r) => self.graph.distance[k] < r,
        }
    }

    /// Chamber pairs for path checks, with a note when the pair guard
    /// restricted them to pairs leaving the base.
    fn pairs(&self) -> (Vec<(usize, usize)>, &'static str) {
        let all = safe_pairs(self.graph);
        if all.len() <= self.config.pair_limit {
            (all, "")
        } else {
            let base = self.graph.base();
            (
                all.into_iter().filter(|&(c, _)| c == base).collect(),
                " (pair guard: only pairs leaving the base chamber)",
            )
        }
    }
}

fn first_failure<T: Send>(
    items: &[T],
    f: impl Fn(&T) -> Result<Option<String>> + Sync,
) -> Result<Option<String>>
where
    T: Sync,
{
    items
        .par_iter()
        .map(&f)
        .find_map_first(|r| match r {
            Ok(None) => None,
            other => Some(other),
        })
        .unwrap_or(Ok(None))
}

/// Runs the selected suites. Checks are listed in a fixed order; each is
/// internally parallel but its result does not depend on scheduling.
pub fn verify(arr: &Arrangement<'_>, graph: &ArrangementGraph, config: &VerifyConfig) -> Report {
    let ctx = Ctx {
        arr,
        graph,
        config,
        finite: arr.system().is_finite_type(),
        normaliser: OnceLock::new(),
        samples: OnceLock::new(),
    };
    type CheckFn = fn(&Ctx<'_, '_>) -> Result<Outcome>;
    let table: &[(Suite, &str, CheckFn)] = &[
        (Suite::Arrangement, "labels_valid", labels_valid),
        (Suite::Arrangement, "edges_recomputed", edges_recomputed),
        (Suite::Arrangement, "wall_crossing_involution", involution),
        (Suite::Arrangement, "halfspace_length_criterion", halfspace),
        (Suite::Arrangement, "wall_count", wall_count),
        (Suite::Arrangement, "sign_vectors", sign_vectors),
        (Suite::Arrangement, "labelling_bijection", labelling_bijection),
        (Suite::Arrangement, "chamber_count", chamber_count),
        (Suite::Arrangement, "normaliser_action", normaliser_action),
        (Suite::Groupoid, "bh_morphisms", bh_morphisms),
        (Suite::Groupoid, "cover_unique_lifting", unique_lifting),
        (Suite::Groupoid, "cover_singleton_morphisms", singleton_morphisms),
        (Suite::Groupoid, "cover_deck_action", deck_action),
        (Suite::Groupoid, "standard_expressions", standard_expressions),
        (Suite::Groupoid, "weak_order_join", weak_order_join),
        (Suite::Groupoid, "vertex_group_order", vertex_group_order),
        (Suite::Groupoid, "atomic_matsumoto", atomic_matsumoto),
        (Suite::Garside, "mu_generators", mu_generators),
        (Suite::Garside, "normal_form", normal_form),
        (Suite::Garside, "lcm_factorizations", lcm_factorizations),
        (Suite::Garside, "ribbon_relations", ribbon_relations),
        (Suite::Garside, "exact_sequence", exact_sequence),
        (Suite::Garside, "functor_g_geodesics", functor_g_geodesics),
        (Suite::Garside, "positive_path_equality", positive_path_equality),
    ];
    let mut checks = Vec::new();
    for &(suite, name, f) in table {
        if !config.suite.includes(suite) {
            continue;
        }
        let (status, detail) = match f(&ctx) {
            Ok(Outcome::Pass(d)) => (Status::Pass, d),
            Ok(Outcome::Fail(d)) => (Status::Fail, d),
            Ok(Outcome::Skipped(d)) => (Status::Skipped, d),
            Err(e) => (Status::Fail, format!("error: {e}")),
        };
        checks.push(Check {
            suite,
            name: name.to_string(),
            status,
            detail,
        });
    }
    let d = arr.system().diagram();
    Report {
        nodes: d.names().to_vec(),
        j: d.node_names(graph.j),
        radius: graph.radius,
        chambers: graph.len(),
        suite: config.suite,
        seed: config.seed,
        passed: checks.iter().all(|c| c.status != Status::Fail),
        checks,
    }
}

fn from_failure(failure: Option<String>, pass: String) -> Outcome {
    match failure {
        Some(w) => Outcome::Fail(w),
        None => Outcome::Pass(pass),
    }
}

fn labels_valid(ctx: &Ctx<'_, '_>) -> Result<Outcome> {
    let idx: Vec<usize> = (0..ctx.graph.len()).collect();
    let bad = first_failure(&idx, |&k| {
        let c = &ctx.graph.chambers[k];
        Ok((!ctx.arr.is_valid_label(c)).then(|| format!("invalid label {}", ctx.label(k))))
    })?;
    let base_ok = ctx.graph.chambers.first() == Some(&ctx.arr.base());
    if bad.is_none() && !base_ok {
        return Ok(Outcome::Fail("the first chamber is not (e, J)".into()));
    }
    Ok(from_failure(bad, format!("{} labels", ctx.graph.len())))
}

fn edges_recomputed(ctx: &Ctx<'_, '_>) -> Result<Outcome> {
    let g = ctx.graph;
    let boundary: HashSet<(usize, usize)> = g.boundary.iter().copied().collect();
    let n = ctx.arr.system().rank();
    let idx: Vec<usize> = (0..g.len()).collect();
    let bad = first_failure(&idx, |&k| {
        let c = &g.chambers[k];
        for a in (0..n).filter(|&a| !c.i.contains(a)) {
            let edge = g.edge_at(k, a);
            match ctx.arr.simple_wall_crossing(c, a)? {
                None => {
                    if edge.is_some() || !boundary.contains(&(k, a)) {
                        return Ok(Some(format!(
                            "wall {} of {} is uncrossable but not recorded as boundary",
                            ctx.node(a),
                            ctx.label(k)
                        )));
                    }
                }
                Some((label, v)) => {
                    if boundary.contains(&(k, a)) {
                        return Ok(Some(format!(
                            "wall {} of {} is crossable but marked as boundary",
                            ctx.node(a),
                            ctx.label(k)
                        )));
                    }
                    match edge {
                        Some(e) => {
                            if g.chambers[e.to] != label || e.element != v {
                                return Ok(Some(format!(
                                    "edge {} --{}--> {} should reach {:?} via {:?}",
                                    ctx.label(k),
                                    ctx.node(a),
                                    ctx.label(e.to),
                                    label,
                                    v
                                )));
                            }
                        }
                        None => {
                            let missing = g.index_of(&label).is_some() || ctx.interior(k);
                            if missing {
                                return Ok(Some(format!(
                                    "crossing {} at {} is missing",
                                    ctx.label(k),
                                    ctx.node(a)
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(None)
    })?;
    if bad.is_none() {
        // Every stored edge corresponds to some (chamber, node) above, but a
        // stored edge at a node in I would escape that loop.
        if let Some(e) = g.edges.iter().find(|e| g.chambers[e.from].i.contains(e.node)) {
            return Ok(Outcome::Fail(format!(
                "edge from {} at node {} in I",
                ctx.label(e.from),
                ctx.node(e.node)
            )));
        }
    }
    Ok(from_failure(
        bad,
        format!("{} edges, {} boundary walls", g.edges.len(), g.boundary.len()),
    ))
}

fn involution(ctx: &Ctx<'_, '_>) -> Result<Outcome> {
    let g = ctx.graph;
    let w = ctx.arr.system();
    let bad = first_failure(&g.edges, |e| {
        let back = g
            .edges_from(e.to)
            .find(|f| f.to == e.from && w.mul(&e.element, &f.element).is_identity());
        if back.is_some() {
            return Ok(None);
        }
        Ok(Some(format!(
            "no inverse crossing for {} --{}--> {}",
            ctx.label(e.from),
            ctx.node(e.node),
            ctx.label(e.to)
        )))
    })?;
    Ok(from_failure(bad, format!("{} edges", g.edges.len())))
}

fn halfspace(ctx: &Ctx<'_, '_>) -> Result<Outcome> {
    let g = ctx.graph;
    let bad = first_failure(&g.edges, |e| {
        let ok = ctx.arr.halfspace_crosscheck(&g.chambers[e.from], e.node)?;
        Ok((!ok).then(|| format!("criterion fails at {} wall {}", ctx.label(e.from), ctx.node(e.node))))
    })?;
    Ok(from_failure(bad, format!("{} crossable walls", g.edges.len())))
}

fn wall_count(ctx: &Ctx<'_, '_>) -> Result<Outcome> {
    let g = ctx.graph;
    let expected = ctx.arr.dimension();
    let mut walls = vec![0usize; g.len()];
    for e in &g.edges {
        walls[e.from] += 1;
    }
    for &(c, _) in &g.boundary {
        walls[c] += 1;
    }
    for (k, &m) in walls.iter().enumerate() {
        let bad = if ctx.interior(k) { m != expected } else { m > expected };
        if bad {
            return Ok(Outcome::Fail(format!(
                "{} has {m} walls, expected {expected}",
                ctx.label(k)
            )));
        }
    }
    Ok(Outcome::Pass(format!("{expected} walls per explored chamber")))
}

fn sign_vectors(ctx: &Ctx<'_, '_>) -> Result<Outcome> {
    let g = ctx.graph;
    let hyperplanes: Vec<_> = if ctx.finite {
        ctx.arr.hyperplanes()?.into_iter().map(|(h, _)| h).collect()
    } else {
        ctx.arr.hyperplanes_of_graph(g)?
    };
    let samples = ctx.samples()?;
    let vectors: Vec<Vec<Ordering>> = (0..g.len())
        .into_par_iter()
        .map(|k| hyperplanes.iter().map(|h| h.side(samples.get(k))).collect())
        .collect();
    if let Some(k) = vectors.iter().position(|v| v.contains(&Ordering::Equal)) {
        return Ok(Outcome::Fail(format!("sample point of {} lies on a hyperplane", ctx.label(k))));
    }
    let mut seen: HashMap<&[Ordering], usize> = HashMap::new();
    for (k, v) in vectors.iter().enumerate() {
        if let Some(&other) = seen.get(v.as_slice()) {
            return Ok(Outcome::Fail(format!(
                "{} and {} have the same sign vector",
                ctx.label(other),
                ctx.label(k)
            )));
        }
        seen.insert(v, k);
    }
    // Crossing a wall flips exactly the sign of that wall's hyperplane.
    let position: HashMap<_, usize> = hyperplanes.iter().enumerate().map(|(k, h)| (h.clone(), k)).collect();
    let bad = first_failure(&g.edges, |e| {
        let h = ctx.arr.wall(&g.chambers[e.from], e.node)?;
        let (u, v) = (&vectors[e.from], &vectors[e.to]);
        let flipped: Vec<usize> = (0..u.len()).filter(|&k| u[k] != v[k]).collect();
        Ok((flipped.len() != 1 || position.get(&h) != Some(&flipped[0])).then(|| {
            format!(
                "crossing {} at {} changes {} signs",
                ctx.label(e.from),
                ctx.node(e.node),
                flipped.len()
            )
        }))
    })?;
    Ok(from_failure(
        bad,
        format!("{} chambers, {} hyperplanes, sign vectors distinct", g.len(), hyperplanes.len()),
    ))
}

fn labelling_bijection(ctx: &Ctx<'_, '_>) -> Result<Outcome> {
    if !ctx.finite {
        return Ok(Outcome::Skipped("needs a finite-type diagram".into()));
    }
    let algebraic = ctx.arr.labels_by_enumeration(ctx.config.group_limit)?;
    if algebraic == ctx.graph.chambers {
        return Ok(Outcome::Pass(format!("{} labels", algebraic.len())));
    }
    let bfs: HashSet<_> = ctx.graph.chambers.iter().collect();
    let alg: HashSet<_> = algebraic.iter().collect();
    let witness = algebraic
        .iter()
        .find(|c| !bfs.contains(c))
        .map(|c| format!("{c:?} is a label not reached by wall crossings"))
        .or_else(|| {
            ctx.graph
                .chambers
                .iter()
                .find(|c| !alg.contains(c))
                .map(|c| format!("{c:?} was reached but is not a label"))
        })
        .unwrap_or_else(|| "label lists differ".into());
    Ok(Outcome::Fail(witness))
}

fn chamber_count(ctx: &Ctx<'_, '_>) -> Result<Outcome> {
    if !ctx.finite || !ctx.graph.j.is_empty() {
        return Ok(Outcome::Skipped("needs J empty and finite type".into()));
    }
    let w = ctx.arr.system();
    let order = w
        .parabolic_order(w.all_nodes(), ctx.config.group_limit)
        .ok_or_else(|| Error::LimitExceeded("group order".into()))?;
    if order != ctx.graph.len() {
        return Ok(Outcome::Fail(format!("{} chambers but |W| = {order}", ctx.graph.len())));
    }
    Ok(Outcome::Pass(format!("{order} chambers = |W|")))
}

/// Fibres of the second label, in chamber order.
fn fibres(graph: &ArrangementGraph) -> Vec<(NodeSet, Vec<usize>)> {
    let mut out: Vec<(NodeSet, Vec<usize>)> = Vec::new();
    for (k, c) in graph.chambers.iter().enumerate() {
        match out.iter_mut().find(|(i, _)| *i == c.i) {
            Some((_, v)) => v.push(k),
            None => out.push((c.i, vec![k])),
        }
    }
    out
}

const COMMUTE_BUDGET: usize = 200_000;

fn normaliser_action(ctx: &Ctx<'_, '_>) -> Result<Outcome> {
    if !ctx.finite {
        return Ok(Outcome::Skipped("needs a finite-type diagram".into()));
    }
    let g = ctx.graph;
    let nj = ctx.normaliser()?;
    for (i, fibre) in fibres(g) {
        let c0 = &g.chambers[fibre[0]];
        let mut images = HashSet::new();
        for x in nj {
            let y = ctx.arr.normaliser_act(x, c0)?;
            if y.i != i || g.index_of(&y).is_none() {
                return Ok(Outcome::Fail(format!("{x:?} moves {c0:?} outside its fibre")));
            }
            if !images.insert(y) {
                return Ok(Outcome::Fail(format!("the action on {c0:?} is not free")));
            }
        }
        if images.len() != fibre.len() {
            return Ok(Outcome::Fail(format!(
                "fibre over {:?} has {} chambers but {} are reached",
                i,
                fibre.len(),
                images.len()
            )));
        }
    }
    // The action commutes with wall crossings.
    let per_element = g.edges.len().max(1);
    let count = (COMMUTE_BUDGET / per_element).clamp(1, nj.len());
    let bad = first_failure(&nj[..count], |x| {
        for e in &g.edges {
            let from = ctx.arr.normaliser_act(x, &g.chambers[e.from])?;
            let to = ctx.arr.normaliser_act(x, &g.chambers[e.to])?;
            let moved = g.index_of(&from).and_then(|k| g.edge_at(k, e.node));
            if moved.map(|m| &g.chambers[m.to]) != Some(&to) {
                return Ok(Some(format!("{x:?} does not commute with crossing {:?} at {}", e.from, e.node)));
            }
        }
        Ok(None)
    })?;
    let scope = if count == nj.len() {
        String::new()
    } else {
        format!(", commutation checked for the first {count}")
    };
    Ok(from_failure(
        bad,
        format!("|N(W,J)| = {}, free and transitive on fibres{scope}", nj.len()),
    ))
}

fn bh_morphisms(ctx: &Ctx<'_, '_>) -> Result<Outcome> {
    let g = ctx.graph;
    let bad = first_failure(&g.edges, |e| {
        let (i, k) = (g.chambers[e.from].i, g.chambers[e.to].i);
        Ok((!is_bh_morphism(&e.element, i, k)).then(|| {
            format!("{:?} does not map the simple roots of {i:?} onto those of {k:?}", e.element)
        }))
    })?;
    Ok(from_failure(bad, format!("{} edges", g.edges.len())))
}

fn unique_lifting(ctx: &Ctx<'_, '_>) -> Result<Outcome> {
    let g = ctx.graph;
    let n = ctx.arr.system().rank();
    let idx: Vec<usize> = (0..g.len()).filter(|&k| ctx.interior(k)).collect();
    let bad = first_failure(&idx, |&k| {
        let c = &g.chambers[k];
        for a in (0..n).filter(|&a| !c.i.contains(a)) {
            let Some((target, v)) = ctx.arr.crossing(c.i, a)? else {
                continue;
            };
            let realizing: Vec<_> = g
                .edges_from(k)
                .filter(|e| e.element == v && g.chambers[e.to].i == target)
                .collect();
            if realizing.len() != 1 {
                return Ok(Some(format!(
                    "{} has {} crossings realizing v({}|{:?})",
                    ctx.label(k),
                    realizing.len(),
                    ctx.node(a),
                    c.i
                )));
            }
        }
        Ok(None)
    })?;
    Ok(from_failure(bad, format!("{} explored chambers", idx.len())))
}

fn singleton_morphisms(ctx: &Ctx<'_, '_>) -> Result<Outcome> {
    let g = ctx.graph;
    let w = ctx.arr.system();
    let bad = first_failure(&g.edges, |e| {
        let ok = w.mul(&g.chambers[e.from].x, &e.element) == g.chambers[e.to].x;
        Ok((!ok).then(|| {
            format!("x·v differs from the target label along edge {} at {}", ctx.label(e.from), ctx.node(e.node))
        }))
    })?;
    if bad.is_some() {
        return Ok(from_failure(bad, String::new()));
    }
    // Walk a breadth-first tree from the base: the path element must be x.
    let mut element: Vec<Option<GroupElement>> = vec![None; g.len()];
    element[g.base()] = Some(w.identity());
    let mut queue = std::collections::VecDeque::from([g.base()]);
    while let Some(c) = queue.pop_front() {
        let here = element[c].clone().expect("visited");
        for e in g.edges_from(c) {
            if element[e.to].is_none() {
                element[e.to] = Some(w.mul(&here, &e.element));
                queue.push_back(e.to);
            }
        }
    }
    for (k, x) in element.iter().enumerate() {
        match x {
            None => return Ok(Outcome::Fail(format!("{} is not connected to the base", ctx.label(k)))),
            Some(x) if *x != g.chambers[k].x => {
                return Ok(Outcome::Fail(format!(
                    "path element to {} is {x:?}",
                    ctx.label(k)
                )))
            }
            _ => {}
        }
    }
    Ok(Outcome::Pass(format!(
        "every path from (x,I) to (y,K) evaluates to x⁻¹y over {} chambers",
        g.len()
    )))
}

fn deck_action(ctx: &Ctx<'_, '_>) -> Result<Outcome> {
    if !ctx.finite {
        return Ok(Outcome::Skipped("needs a finite-type diagram".into()));
    }
    let nj = ctx.normaliser()?.len();
    for (i, fibre) in fibres(ctx.graph) {
        if fibre.len() != nj {
            return Ok(Outcome::Fail(format!(
                "fibre over {i:?} has {} chambers, |N(W,J)| = {nj}",
                fibre.len()
            )));
        }
    }
    Ok(Outcome::Pass(format!("every fibre has |N(W,J)| = {nj} chambers")))
}

fn standard_expressions(ctx: &Ctx<'_, '_>) -> Result<Outcome> {
    let w = ctx.arr.system();
    let objects = objects_of(ctx.graph);
    let lcms = all_rank_two_lcms(ctx.arr, &objects)?;
    let total = |steps: &[crate::groupoid::Step]| -> Result<usize> {
        steps
            .iter()
            .map(|s| {
                Ok(ctx
                    .arr
                    .crossing(s.object, s.node)?
                    .map(|(_, v)| v.length())
                    .unwrap_or(0))
            })
            .sum()
    };
    for l in &lcms {
        let (x, y) = (evaluate_steps(ctx.arr, &l.first)?, evaluate_steps(ctx.arr, &l.second)?);
        let (lx, ly) = (total(&l.first)?, total(&l.second)?);
        let witness = format!("({:?}, {}, {})", l.source, ctx.node(l.a), ctx.node(l.b));
        if x != l.element || y != l.element {
            return Ok(Outcome::Fail(format!("expressions of {witness} evaluate differently")));
        }
        if l.first.len() != l.second.len() || lx != l.element.length() || ly != l.element.length() {
            return Ok(Outcome::Fail(format!("expressions of {witness} have different lengths")));
        }
        let va = ctx.arr.crossing(l.source, l.a)?.map(|c| c.1);
        let vb = ctx.arr.crossing(l.source, l.b)?.map(|c| c.1);
        let divides = |v: Option<GroupElement>| v.is_some_and(|v| w.left_divides(&v, &l.element));
        if !divides(va) || !divides(vb) {
            return Ok(Outcome::Fail(format!("v_a or v_b does not left-divide the lcm at {witness}")));
        }
    }
    Ok(Outcome::Pass(format!("{} rank-two lcms", lcms.len())))
}

fn weak_order_join(ctx: &Ctx<'_, '_>) -> Result<Outcome> {
    let g = ctx.graph;
    let w = ctx.arr.system();
    let objects = objects_of(g);
    let lcms = all_rank_two_lcms(ctx.arr, &objects)?;
    let fibres = fibres(g);
    let mut tested = 0usize;
    for l in &lcms {
        let Some((_, fibre)) = fibres.iter().find(|(i, _)| *i == l.source) else {
            continue;
        };
        let x0 = w.inverse(&g.chambers[fibre[0]].x);
        let va = ctx.arr.crossing(l.source, l.a)?.map(|c| c.1);
        let vb = ctx.arr.crossing(l.source, l.b)?.map(|c| c.1);
        let (Some(va), Some(vb)) = (va, vb) else {
            continue;
        };
        let homs: Vec<GroupElement> = g.chambers.par_iter().map(|c| w.mul(&x0, &c.x)).collect();
        for h in homs {
            if w.left_divides(&va, &h) && w.left_divides(&vb, &h) {
                tested += 1;
                if !w.left_divides(&l.element, &h) {
                    return Ok(Outcome::Fail(format!(
                        "{h:?} is a common multiple of v_a, v_b at {:?} not divisible by {:?}",
                        l.source, l.element
                    )));
                }
            }
        }
    }
    Ok(Outcome::Pass(format!(
        "{} lcms, {tested} common multiples in the Hom-sets",
        lcms.len()
    )))
}

fn vertex_group_order(ctx: &Ctx<'_, '_>) -> Result<Outcome> {
    if !ctx.finite {
        return Ok(Outcome::Skipped("needs a finite-type diagram".into()));
    }
    let p = bh_presentation(ctx.arr, ctx.graph)?;
    let vg = p.vertex_group()?;
    let order = vg.presentation.order(ctx.config.coset_limit)?;
    let nj = ctx.normaliser()?.len();
    if order != nj {
        return Ok(Outcome::Fail(format!("presented order {order}, |N(W,J)| = {nj}")));
    }
    Ok(Outcome::Pass(format!(
        "{} generators, {} relators, order {order} = |N(W,J)|",
        vg.presentation.rank(),
        vg.presentation.relators.len()
    )))
}

fn atomic_matsumoto(ctx: &Ctx<'_, '_>) -> Result<Outcome> {
    let samples = ctx.samples()?;
    let objects = objects_of(ctx.graph);
    let swaps = swaps_by_object(&all_rank_two_lcms(ctx.arr, &objects)?);
    let (pairs, note) = ctx.pairs();
    let results: Vec<Result<Option<(usize, usize)>>> = pairs
        .par_iter()
        .map(|&(c, d)| {
            match matsumoto_classes(ctx.graph, samples, &swaps, c, d, ctx.config.geodesic_limit) {
                Ok(m) => Ok(Some((m.geodesics, m.classes))),
                Err(Error::LimitExceeded(_)) => Ok(None),
                Err(e) => Err(e),
            }
        })
        .collect();
    let (mut total, mut over) = (0usize, 0usize);
    for (r, &(c, d)) in results.into_iter().zip(&pairs) {
        match r? {
            None => over += 1,
            Some((n, classes)) => {
                total += n;
                if classes != 1 {
                    return Ok(Outcome::Fail(format!(
                        "{n} geodesics from {} to {} fall into {classes} classes",
                        ctx.label(c),
                        ctx.label(d)
                    )));
                }
            }
        }
    }
    let skipped = if over > 0 {
        format!(", {over} pairs over the geodesic limit not checked")
    } else {
        String::new()
    };
    Ok(Outcome::Pass(format!(
        "{} chamber pairs, {total} geodesics connected{skipped}{note}",
        pairs.len() - over
    )))
}

fn needs_garside<'s>(ctx: &Ctx<'_, 's>) -> Option<Garside<'s>> {
    ctx.finite.then(|| Garside::new(ctx.arr.system()).ok()).flatten()
}

fn mu_generators(ctx: &Ctx<'_, '_>) -> Result<Outcome> {
    let Some(garside) = needs_garside(ctx) else {
        return Ok(Outcome::Skipped("needs a finite-type diagram".into()));
    };
    let objects = objects_of(ctx.graph);
    let mut count = 0;
    for &i in &objects {
        for a in ctx.arr.system().all_nodes().difference(i).iter() {
            let Some((_, v)) = ctx.arr.crossing(i, a)? else {
                continue;
            };
            let m = mu(ctx.arr, &garside, i, a)?;
            if garside.pi(&m) != v || m.length() != v.length() {
                return Ok(Outcome::Fail(format!("μ({}|{i:?}) does not lift v", ctx.node(a))));
            }
            count += 1;
        }
    }
    Ok(Outcome::Pass(format!("{count} generators equal Δ_I⁻¹Δ_(I+a) and lift v")))
}

fn normal_form(ctx: &Ctx<'_, '_>) -> Result<Outcome> {
    let Some(garside) = needs_garside(ctx) else {
        return Ok(Outcome::Skipped("needs a finite-type diagram".into()));
    };
    let w = ctx.arr.system();
    let n = w.rank();
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.config.seed);
    let word = |rng: &mut ChaCha8Rng| -> Vec<usize> {
        let len = rng.gen_range(0..=12);
        (0..len).map(|_| rng.gen_range(0..n)).collect()
    };
    for _ in 0..ctx.config.samples {
        let (u, v, t) = (word(&mut rng), word(&mut rng), word(&mut rng));
        let (a, b, c) = (garside.from_word(&u), garside.from_word(&v), garside.from_word(&t));
        if garside.from_word(&a.word()) != a {
            return Ok(Outcome::Fail(format!("normal form of {u:?} is not idempotent")));
        }
        if garside.mul(&garside.mul(&a, &b), &c) != garside.mul(&a, &garside.mul(&b, &c)) {
            return Ok(Outcome::Fail(format!("product of {u:?}, {v:?}, {t:?} is not associative")));
        }
        if garside.pi(&a) != w.from_word(&u) {
            return Ok(Outcome::Fail(format!("π of {u:?} is wrong")));
        }
    }
    Ok(Outcome::Pass(format!(
        "{} random triples of words up to 12 letters",
        ctx.config.samples
    )))
}

fn lcm_factorizations(ctx: &Ctx<'_, '_>) -> Result<Outcome> {
    let Some(garside) = needs_garside(ctx) else {
        return Ok(Outcome::Skipped("needs a finite-type diagram".into()));
    };
    let objects = objects_of(ctx.graph);
    let lcms = all_rank_two_lcms(ctx.arr, &objects)?;
    for l in &lcms {
        let witness = format!("({:?}, {}, {})", l.source, ctx.node(l.a), ctx.node(l.b));
        let lift = |steps: &[crate::groupoid::Step]| -> Result<_> {
            let ms = steps
                .iter()
                .map(|s| mu(ctx.arr, &garside, s.object, s.node))
                .collect::<Result<Vec<_>>>()?;
            Ok(garside.product(ms.iter()))
        };
        let join = garside.left_lcm(
            &mu(ctx.arr, &garside, l.source, l.a)?,
            &mu(ctx.arr, &garside, l.source, l.b)?,
        )?;
        if garside.pi(&join) != l.element {
            return Ok(Outcome::Fail(format!("π of the μ-lcm differs from v at {witness}")));
        }
        if lift(&l.first)? != join || lift(&l.second)? != join {
            return Ok(Outcome::Fail(format!("a μ-factorization differs from the lcm at {witness}")));
        }
        if join.length() != l.element.length() || l.first.len() != l.second.len() {
            return Ok(Outcome::Fail(format!("lengths disagree at {witness}")));
        }
    }
    Ok(Outcome::Pass(format!("{} lcms", lcms.len())))
}

fn ribbon_relations(ctx: &Ctx<'_, '_>) -> Result<Outcome> {
    let Some(garside) = needs_garside(ctx) else {
        return Ok(Outcome::Skipped("needs a finite-type diagram".into()));
    };
    let ribbon = ribbon_presentation(ctx.arr, &garside, ctx.graph)?;
    pi_bar_check(ctx.arr, &ribbon)?;
    Ok(Outcome::Pass(format!(
        "{} generators, {} relations hold in the monoid and map to W",
        ribbon.groupoid.generators.len(),
        ribbon.groupoid.relations.len()
    )))
}

fn exact_sequence(ctx: &Ctx<'_, '_>) -> Result<Outcome> {
    let Some(garside) = needs_garside(ctx) else {
        return Ok(Outcome::Skipped("needs a finite-type diagram".into()));
    };
    let nj = ctx.normaliser()?;
    if nj.len() > ctx.config.kernel_index_limit {
        return Ok(Outcome::Skipped(format!(
            "|N(W,J)| = {} exceeds the index limit {}",
            nj.len(),
            ctx.config.kernel_index_limit
        )));
    }
    let ribbon = ribbon_presentation(ctx.arr, &garside, ctx.graph)?;
    let k = kernel_presentation(ctx.arr, &garside, &ribbon, ctx.config.group_limit)?;
    // π̄ kills the vertex-group relators.
    let images = &k.generator_images;
    let w = ctx.arr.system();
    for r in &k.vertex_group.presentation.relators {
        let value = r.iter().fold(w.identity(), |acc, &l| {
            let (g, inv) = crate::presentation::decode(l);
            let x = if inv { w.inverse(&images[g]) } else { images[g].clone() };
            w.mul(&acc, &x)
        });
        if !value.is_identity() {
            return Ok(Outcome::Fail("a vertex-group relator survives in N(W,J)".into()));
        }
    }
    // Surjectivity: each element of N_J is the image of its transversal word.
    let reached: HashSet<GroupElement> = k
        .transversal
        .iter()
        .map(|t| {
            t.iter().fold(w.identity(), |acc, &l| {
                let (g, inv) = crate::presentation::decode(l);
                let x = if inv { w.inverse(&images[g]) } else { images[g].clone() };
                w.mul(&acc, &x)
            })
        })
        .collect();
    let target: HashSet<GroupElement> = nj.iter().cloned().collect();
    if reached != target {
        return Ok(Outcome::Fail(format!(
            "π̄ reaches {} of {} elements of N_J",
            reached.intersection(&target).count(),
            target.len()
        )));
    }
    // Kernel generators are pure (asserted during construction) and their
    // loop words lie in the kernel.
    for word in &k.generators {
        if !garside.group_pi(word).is_identity() {
            return Ok(Outcome::Fail(format!("{word:?} is not pure")));
        }
    }
    Ok(Outcome::Pass(format!(
        "|image π̄| = {} = |N(W,J)|, kernel has {} generators and {} relators, all pure",
        reached.len(),
        k.presentation.rank(),
        k.presentation.relators.len()
    )))
}

fn functor_g_geodesics(ctx: &Ctx<'_, '_>) -> Result<Outcome> {
    let Some(garside) = needs_garside(ctx) else {
        return Ok(Outcome::Skipped("needs a finite-type diagram".into()));
    };
    let samples = ctx.samples()?;
    let (pairs, note) = ctx.pairs();
    let results: Vec<Result<Option<(usize, Option<String>)>>> = pairs
        .par_iter()
        .map(|&(c, d)| {
            let paths = match geodesics(ctx.graph, samples, c, d, ctx.config.geodesic_limit) {
                Ok(p) => p,
                Err(Error::LimitExceeded(_)) => return Ok(None),
                Err(e) => return Err(e),
            };
            for p in &paths {
                let g = functor_g(ctx.arr, &garside, ctx.graph, p)?;
                let lift = garside.positive_lift(&path_element(ctx.arr, ctx.graph, p)?);
                if g != lift {
                    return Ok(Some((paths.len(), Some(format!("G differs from the lift on {p:?}")))));
                }
            }
            Ok(Some((paths.len(), None)))
        })
        .collect();
    let (mut total, mut over) = (0usize, 0usize);
    for r in results {
        match r? {
            None => over += 1,
            Some((_, Some(w))) => return Ok(Outcome::Fail(w)),
            Some((n, None)) => total += n,
        }
    }
    let skipped = if over > 0 {
        format!(", {over} pairs over the geodesic limit not checked")
    } else {
        String::new()
    };
    Ok(Outcome::Pass(format!("{total} geodesics{skipped}{note}")))
}

/// Positive paths from the base of length at most 4, sampled with the seed.
fn sample_paths(ctx: &Ctx<'_, '_>, rng: &mut ChaCha8Rng) -> Result<Vec<Path>> {
    let g = ctx.graph;
    let mut out = Vec::new();
    let mut layer = vec![Path::new(g.base(), Vec::new())];
    for _ in 0..4 {
        let mut next = Vec::new();
        for p in &layer {
            let end = *chambers_along(g, p)?.last().expect("nonempty");
            for e in g.edges_from(end) {
                let mut nodes = p.nodes.clone();
                nodes.push(e.node);
                next.push(Path::new(p.start, nodes));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    const KEEP: usize = 300;
    while out.len() > KEEP {
        let k = rng.gen_range(0..out.len());
        out.swap_remove(k);
    }
    out.sort();
    Ok(out)
}

fn positive_path_equality(ctx: &Ctx<'_, '_>) -> Result<Outcome> {
    let Some(garside) = needs_garside(ctx) else {
        return Ok(Outcome::Skipped("needs a finite-type diagram".into()));
    };
    let samples = ctx.samples()?;
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.config.seed);
    let paths = sample_paths(ctx, &mut rng)?;
    let mut groups: HashMap<(usize, usize), Vec<&Path>> = HashMap::new();
    for p in &paths {
        let end = *chambers_along(ctx.graph, p)?.last().expect("nonempty");
        groups.entry((end, p.len())).or_default().push(p);
    }
    let mut keys: Vec<_> = groups.keys().copied().collect();
    keys.sort_unstable();
    const BOUND: usize = 5_000;
    let (mut compared, mut equal) = (0usize, 0usize);
    for key in keys {
        let group = &groups[&key];
        let n = group.len();
        let mut rel = vec![vec![PathEquality::NotEqual; n]; n];
        for a in 0..n {
            for b in 0..n {
                rel[a][b] = positive_path_equal(ctx.arr, ctx.graph, samples, group[a], group[b], BOUND)?;
            }
        }
        let images: Vec<_> = group
            .iter()
            .map(|p| functor_g(ctx.arr, &garside, ctx.graph, p))
            .collect::<Result<_>>()?;
        for a in 0..n {
            if rel[a][a] != PathEquality::Equal {
                return Ok(Outcome::Fail(format!("{:?} is not equal to itself", group[a])));
            }
            for b in 0..n {
                compared += 1;
                if rel[a][b] != rel[b][a] {
                    return Ok(Outcome::Fail(format!(
                        "equality of {:?} and {:?} is not symmetric",
                        group[a], group[b]
                    )));
                }
                if rel[a][b] == PathEquality::Equal {
                    equal += 1;
                    if images[a] != images[b] {
                        return Ok(Outcome::Fail(format!(
                            "{:?} and {:?} are equal but have different images under G",
                            group[a], group[b]
                        )));
                    }
                    for c in 0..n {
                        if rel[b][c] == PathEquality::Equal && rel[a][c] == PathEquality::NotEqual {
                            return Ok(Outcome::Fail(format!(
                                "equality is not transitive through {:?}",
                                group[b]
                            )));
                        }
                    }
                }
            }
        }
    }
    Ok(Outcome::Pass(format!(
        "{} sampled paths, {compared} ordered pairs, {equal} equal pairs with equal images",
        paths.len()
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterSystem;
    use crate::diagram::catalogue;

    fn run(d: crate::diagram::CoxeterDiagram, j: &[usize], radius: Option<usize>) -> Report {
        let w = CoxeterSystem::new(d);
        let arr = Arrangement::new(&w, j.iter().copied().collect()).unwrap();
        let g = arr.enumerate(radius).unwrap();
        verify(&arr, &g, &VerifyConfig::default())
    }

    fn assert_passes(r: &Report) {
        for c in &r.checks {
            assert_ne!(c.status, Status::Fail, "{}: {}", c.name, c.detail);
        }
    }

    #[test]
    fn a3_mod_2_passes_every_suite() {
        let r = run(catalogue::a(3), &[1], None);
        assert_passes(&r);
        assert!(r.checks.iter().all(|c| c.status != Status::Skipped || c.name == "chamber_count"));
    }

    #[test]
    fn b3_passes_groupoid_suite() {
        assert_passes(&run(catalogue::b(3), &[], None));
    }

    #[test]
    fn affine_ball_passes() {
        let r = run(catalogue::affine_a2(), &[0], Some(4));
        assert_passes(&r);
    }

    #[test]
    fn corrupted_edge_is_reported() {
        let w = CoxeterSystem::new(catalogue::a(3));
        let arr = Arrangement::new(&w, NodeSet::singleton(1)).unwrap();
        let g = arr.enumerate(None).unwrap();
        let mut edges = g.edges.clone();
        edges[0].element = w.simple(0);
        let bad = ArrangementGraph::from_parts(
            g.j,
            g.chambers.clone(),
            edges,
            g.boundary.clone(),
            g.radius,
            g.saturated,
        )
        .unwrap();
        let config = VerifyConfig {
            suite: Suite::Arrangement,
            ..VerifyConfig::default()
        };
        let r = verify(&arr, &bad, &config);
        assert!(!r.passed);
        let check = r.checks.iter().find(|c| c.name == "edges_recomputed").unwrap();
        assert_eq!(check.status, Status::Fail);
    }
}
