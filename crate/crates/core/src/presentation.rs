//! Groupoid and group presentations: spanning-tree contraction, Tietze
//! simplification, coset enumeration and Reidemeister–Schreier rewriting.
//!
//! Group words are sequences of signed letters: `k + 1` stands for generator
//! `k` and `-(k + 1)` for its inverse.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::diagram::NodeSet;
use crate::{Error, Result};

pub type Letter = i32;

pub fn letter(generator: usize) -> Letter {
    generator as Letter + 1
}

pub fn inverse_letter(generator: usize) -> Letter {
    -(generator as Letter + 1)
}

/// Generator index and whether the letter is inverted.
pub fn decode(l: Letter) -> (usize, bool) {
    ((l.unsigned_abs() - 1) as usize, l < 0)
}

pub fn invert_word(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().map(|&l| -l).collect()
}

pub fn free_reduce(w: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Free and cyclic reduction.
pub fn cyclic_reduce(w: &[Letter]) -> Vec<Letter> {
    let mut out = free_reduce(w);
    while out.len() >= 2 && out[0] == -out[out.len() - 1] {
        out.pop();
        out.remove(0);
    }
    out
}

/// Least rotation of the word or of its inverse, used to deduplicate
/// relators.
fn canonical_relator(w: &[Letter]) -> Vec<Letter> {
    let mut best: Option<Vec<Letter>> = None;
    for cand in [w.to_vec(), invert_word(w)] {
        for k in 0..cand.len().max(1) {
            let mut r = cand[k..].to_vec();
            r.extend_from_slice(&cand[..k]);
            let key = |v: &Vec<Letter>| v.iter().map(|&l| (l.abs(), l < 0)).collect::<Vec<_>>();
            if best.as_ref().map_or(true, |b| key(&r) < key(b)) {
                best = Some(r);
            }
        }
    }
    best.unwrap_or_default()
}

/// What the payloads of a groupoid presentation mean.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PresentationKind {
    /// Payloads are elements of `W` (one canonical word each).
    Coxeter,
    /// Payloads are positive Artin elements (a list of Garside factors).
    Artin,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupoidGenerator {
    pub label: String,
    pub source: usize,
    pub target: usize,
    /// The wall node `a` of the crossing.
    pub node: usize,
    /// Canonical words of the payload's factors.
    pub payload: Vec<Vec<usize>>,
}

/// Objects, generator arrows and relations between composable generator
/// paths. Generator words here are plain index lists (positive arrows).
#[derive(Clone, Debug)]
pub struct GroupoidPresentation {
    pub kind: PresentationKind,
    pub objects: Vec<NodeSet>,
    pub base: usize,
    pub generators: Vec<GroupoidGenerator>,
    pub relations: Vec<(Vec<usize>, Vec<usize>)>,
}

/// A group word in groupoid generators, with the presentation it was
/// expressed in.
pub type GroupoidWord = Vec<Letter>;

impl GroupoidPresentation {
    /// Source and target of a composable generator path, or `None` for the
    /// empty path.
    pub fn endpoints(&self, path: &[usize]) -> Result<Option<(usize, usize)>> {
        let Some(&first) = path.first() else {
            return Ok(None);
        };
        let mut at = self.generators[first].target;
        for &g in &path[1..] {
            if self.generators[g].source != at {
                return Err(Error::Internal(format!(
                    "generator {} does not compose",
                    self.generators[g].label
                )));
            }
            at = self.generators[g].target;
        }
        Ok(Some((self.generators[first].source, at)))
    }

    /// Checks that every relation has composable sides with common ends.
    pub fn validate(&self) -> Result<()> {
        for (lhs, rhs) in &self.relations {
            let (l, r) = (self.endpoints(lhs)?, self.endpoints(rhs)?);
            let ok = match (l, r) {
                (Some(a), Some(b)) => a == b,
                (Some((s, t)), None) | (None, Some((s, t))) => s == t,
                (None, None) => true,
            };
            if !ok {
                return Err(Error::Internal("relation sides have different ends".into()));
            }
        }
        Ok(())
    }

    /// Contracts a breadth-first spanning tree rooted at the base object.
    /// Each non-tree generator `g: I → K` becomes the loop
    /// `tree(I)·g·tree(K)⁻¹` at the base.
    pub fn vertex_group(&self) -> Result<VertexGroup> {
        let n = self.objects.len();
        let mut tree_path: Vec<Option<GroupoidWord>> = vec![None; n];
        let mut tree_edge = vec![false; self.generators.len()];
        tree_path[self.base] = Some(Vec::new());
        let mut queue = VecDeque::from([self.base]);
        while let Some(o) = queue.pop_front() {
            let here = tree_path[o].clone().unwrap_or_default();
            for (k, g) in self.generators.iter().enumerate() {
                let (next, step) = if g.source == o {
                    (g.target, letter(k))
                } else if g.target == o {
                    (g.source, inverse_letter(k))
                } else {
                    continue;
                };
                if tree_path[next].is_none() {
                    let mut p = here.clone();
                    p.push(step);
                    tree_path[next] = Some(p);
                    tree_edge[k] = true;
                    queue.push_back(next);
                }
            }
        }
        if tree_path.iter().any(Option::is_none) {
            return Err(Error::Precondition("groupoid presentation is disconnected".into()));
        }
        let mut group_index = vec![usize::MAX; self.generators.len()];
        let mut names = Vec::new();
        let mut loops = Vec::new();
        for (k, g) in self.generators.iter().enumerate() {
            if tree_edge[k] {
                continue;
            }
            group_index[k] = names.len();
            names.push(g.label.clone());
            let mut w = tree_path[g.source].clone().unwrap_or_default();
            w.push(letter(k));
            w.extend(invert_word(tree_path[g.target].as_deref().unwrap_or_default()));
            loops.push(free_reduce(&w));
        }
        let translate = |path: &[usize]| -> Vec<Letter> {
            path.iter()
                .filter(|&&g| !tree_edge[g])
                .map(|&g| letter(group_index[g]))
                .collect()
        };
        let relators = self
            .relations
            .iter()
            .map(|(lhs, rhs)| {
                let mut w = translate(lhs);
                w.extend(invert_word(&translate(rhs)));
                w
            })
            .collect();
        let mut group = VertexGroup {
            presentation: GroupPresentation {
                generators: names,
                relators,
            },
            loops,
        };
        group.simplify();
        Ok(group)
    }
}

/// A finitely presented group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<Vec<Letter>>,
}

impl GroupPresentation {
    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// Whether there are no relators, so the group is free on the generators.
    pub fn is_free(&self) -> bool {
        self.relators.is_empty()
    }

    /// Tietze simplification: reduce relators, drop trivial and repeated
    /// ones, and eliminate generators occurring exactly once in a relator.
    /// Returns, for each surviving generator, its original index.
    pub fn simplify(&mut self) -> Vec<usize> {
        let mut kept: Vec<usize> = (0..self.generators.len()).collect();
        loop {
            self.tidy();
            let mut choice: Option<(usize, usize)> = None;
            for (ri, r) in self.relators.iter().enumerate() {
                let mut counts: HashMap<usize, usize> = HashMap::new();
                for &l in r {
                    *counts.entry(decode(l).0).or_insert(0) += 1;
                }
                let mut once: Vec<usize> =
                    counts.into_iter().filter(|&(_, c)| c == 1).map(|(g, _)| g).collect();
                once.sort_unstable();
                if let Some(&g) = once.last() {
                    let better = choice.map_or(true, |(cr, _)| r.len() < self.relators[cr].len());
                    if better {
                        choice = Some((ri, g));
                    }
                }
            }
            let Some((ri, g)) = choice else { break };
            let r = self.relators.remove(ri);
            let pos = r.iter().position(|&l| decode(l).0 == g).expect("occurs once");
            let mut rotated = r[pos..].to_vec();
            rotated.extend_from_slice(&r[..pos]);
            let rest = rotated[1..].to_vec();
            // g^ε·rest = 1
            let value = if rotated[0] > 0 { invert_word(&rest) } else { rest };
            for rel in self.relators.iter_mut() {
                let mut out = Vec::with_capacity(rel.len());
                for &l in rel.iter() {
                    let (h, inv) = decode(l);
                    if h == g {
                        if inv {
                            out.extend(invert_word(&value));
                        } else {
                            out.extend(value.iter().copied());
                        }
                    } else {
                        out.push(l);
                    }
                }
                *rel = out;
            }
            // Renumber generators above g.
            for rel in self.relators.iter_mut() {
                for l in rel.iter_mut() {
                    let (h, inv) = decode(*l);
                    if h > g {
                        *l = if inv { inverse_letter(h - 1) } else { letter(h - 1) };
                    }
                }
            }
            self.generators.remove(g);
            kept.remove(g);
        }
        kept
    }

    fn tidy(&mut self) {
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        for r in &self.relators {
            let r = cyclic_reduce(r);
            if r.is_empty() {
                continue;
            }
            if seen.insert(canonical_relator(&r)) {
                out.push(r);
            }
        }
        self.relators = out;
    }

    /// Todd–Coxeter enumeration of the cosets of the trivial subgroup.
    pub fn order(&self, coset_limit: usize) -> Result<usize> {
        CosetTable::enumerate(self, coset_limit)
    }

    /// GAP input defining the group as `G`.
    pub fn to_gap(&self) -> String {
        let mut s = String::new();
        let names: Vec<String> = (0..self.rank()).map(|k| format!("f{}", k + 1)).collect();
        if self.rank() == 0 {
            let _ = writeln!(s, "F := FreeGroup(0);;");
        } else {
            let quoted: Vec<String> = names.iter().map(|n| format!("\"{n}\"")).collect();
            let _ = writeln!(s, "F := FreeGroup({});;", quoted.join(", "));
            for (k, n) in names.iter().enumerate() {
                let _ = writeln!(s, "{n} := F.{};;", k + 1);
            }
        }
        for (k, g) in self.generators.iter().enumerate() {
            let _ = writeln!(s, "# f{} = {}", k + 1, g);
        }
        let rels: Vec<String> = self
            .relators
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&l| {
                        let (g, inv) = decode(l);
                        if inv {
                            format!("{}^-1", names[g])
                        } else {
                            names[g].clone()
                        }
                    })
                    .collect::<Vec<_>>()
                    .join("*")
            })
            .collect();
        let _ = writeln!(s, "G := F / [{}];;", rels.join(", "));
        s
    }

    /// Relators written with generator names, `x^-1` for inverses.
    pub fn relator_strings(&self) -> Vec<String> {
        self.relators
            .iter()
            .map(|r| self.word_string(r))
            .collect()
    }

    pub fn word_string(&self, w: &[Letter]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter()
            .map(|&l| {
                let (g, inv) = decode(l);
                if inv {
                    format!("{}^-1", self.generators[g])
                } else {
                    self.generators[g].clone()
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// The vertex group at the base object, with each generator recorded as a
/// loop of groupoid generators.
#[derive(Clone, Debug)]
pub struct VertexGroup {
    pub presentation: GroupPresentation,
    /// Groupoid words (signed letters over groupoid generators).
    pub loops: Vec<GroupoidWord>,
}

impl VertexGroup {
    fn simplify(&mut self) {
        let kept = self.presentation.simplify();
        self.loops = kept.into_iter().map(|k| self.loops[k].clone()).collect();
    }
}

const UNDEFINED: u32 = u32::MAX;

/// Hasselgrove–Leech–Trotter coset enumeration over the trivial subgroup.
struct CosetTable {
    columns: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    limit: usize,
}

impl CosetTable {
    fn enumerate(p: &GroupPresentation, limit: usize) -> Result<usize> {
        let columns = 2 * p.rank();
        if columns == 0 {
            return Ok(1);
        }
        let relators: Vec<Vec<usize>> = p
            .relators
            .iter()
            .map(|r| r.iter().map(|&l| Self::column(l)).collect())
            .collect();
        let mut t = CosetTable {
            columns,
            table: vec![UNDEFINED; columns],
            parent: vec![0],
            limit,
        };
        let mut alpha = 0usize;
        while alpha < t.parent.len() {
            for r in &relators {
                if !t.live(alpha) {
                    break;
                }
                t.scan_and_fill(alpha, r)?;
            }
            if t.live(alpha) {
                for x in 0..columns {
                    if t.get(alpha, x) == UNDEFINED {
                        t.define(alpha, x)?;
                    }
                }
            }
            alpha += 1;
        }
        Ok((0..t.parent.len()).filter(|&k| t.live(k)).count())
    }

    fn column(l: Letter) -> usize {
        let (g, inv) = decode(l);
        2 * g + inv as usize
    }

    fn inv(x: usize) -> usize {
        x ^ 1
    }

    fn live(&self, k: usize) -> bool {
        self.parent[k] as usize == k
    }

    fn get(&self, k: usize, x: usize) -> u32 {
        self.table[k * self.columns + x]
    }

    fn set(&mut self, k: usize, x: usize, v: u32) {
        self.table[k * self.columns + x] = v;
    }

    fn define(&mut self, k: usize, x: usize) -> Result<()> {
        let n = self.parent.len();
        if n >= self.limit {
            return Err(Error::LimitExceeded(format!(
                "coset enumeration exceeded {} cosets",
                self.limit
            )));
        }
        self.parent.push(n as u32);
        self.table.extend(std::iter::repeat(UNDEFINED).take(self.columns));
        self.set(k, x, n as u32);
        self.set(n, Self::inv(x), k as u32);
        Ok(())
    }

    fn scan_and_fill(&mut self, alpha: usize, w: &[usize]) -> Result<()> {
        let mut f = alpha;
        let mut b = alpha;
        let mut i: isize = 0;
        let mut j: isize = w.len() as isize - 1;
        loop {
            while i <= j && self.get(f, w[i as usize]) != UNDEFINED {
                f = self.get(f, w[i as usize]) as usize;
                i += 1;
            }
            if i > j {
                if f != alpha {
                    self.coincidence(f, alpha);
                }
                return Ok(());
            }
            while j >= i && self.get(b, Self::inv(w[j as usize])) != UNDEFINED {
                b = self.get(b, Self::inv(w[j as usize])) as usize;
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                let x = w[i as usize];
                self.set(f, x, b as u32);
                self.set(b, Self::inv(x), f as u32);
                return Ok(());
            }
            self.define(f, w[i as usize])?;
        }
    }

    fn rep(&mut self, k: usize) -> usize {
        let mut l = k;
        while self.parent[l] as usize != l {
            l = self.parent[l] as usize;
        }
        let mut m = k;
        while self.parent[m] as usize != l {
            let next = self.parent[m] as usize;
            self.parent[m] = l as u32;
            m = next;
        }
        l
    }

    fn merge(&mut self, k: usize, l: usize, queue: &mut Vec<usize>) {
        let (a, b) = (self.rep(k), self.rep(l));
        if a == b {
            return;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.parent[hi] = lo as u32;
        queue.push(hi);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut q = 0;
        while q < queue.len() {
            let g = queue[q];
            q += 1;
            for x in 0..self.columns {
                let d = self.get(g, x);
                if d == UNDEFINED {
                    continue;
                }
                let d = d as usize;
                if self.get(d, Self::inv(x)) == g as u32 {
                    self.set(d, Self::inv(x), UNDEFINED);
                }
                let mu = self.rep(g);
                let nu = self.rep(d);
                if self.get(mu, x) != UNDEFINED {
                    let t = self.get(mu, x) as usize;
                    self.merge(nu, t, &mut queue);
                } else if self.get(nu, Self::inv(x)) != UNDEFINED {
                    let t = self.get(nu, Self::inv(x)) as usize;
                    self.merge(mu, t, &mut queue);
                } else {
                    self.set(mu, x, nu as u32);
                    self.set(nu, Self::inv(x), mu as u32);
                }
            }
        }
    }
}

/// The result of Reidemeister–Schreier rewriting: a presentation of the
/// subgroup together with each generator as a word in the parent group.
#[derive(Clone, Debug)]
pub struct SubgroupPresentation {
    pub presentation: GroupPresentation,
    /// Each subgroup generator as a word in the parent's generators.
    pub words: Vec<Vec<Letter>>,
    /// Schreier transversal word of each coset.
    pub transversal: Vec<Vec<Letter>>,
}

/// Reidemeister–Schreier for a finite-index subgroup given by a transitive
/// right action of the generators on cosets `0..n`, coset 0 being the
/// subgroup. `action[c][g]` is the coset `c·g`.
pub fn reidemeister_schreier(
    parent: &GroupPresentation,
    action: &[Vec<usize>],
) -> Result<SubgroupPresentation> {
    let n = action.len();
    let rank = parent.rank();
    // Inverse action.
    let mut inverse = vec![vec![usize::MAX; rank]; n];
    for (c, row) in action.iter().enumerate() {
        for (g, &d) in row.iter().enumerate() {
            inverse[d][g] = c;
        }
    }
    if inverse.iter().any(|row| row.contains(&usize::MAX)) {
        return Err(Error::Internal("coset action is not a permutation".into()));
    }
    // Schreier transversal by breadth-first search, letters in the order
    // g1, g1⁻¹, g2, g2⁻¹, … (shortlex).
    let mut transversal: Vec<Option<Vec<Letter>>> = vec![None; n];
    let mut tree: HashMap<(usize, usize), ()> = HashMap::new();
    transversal[0] = Some(Vec::new());
    let mut queue = VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        for g in 0..rank {
            for inv in [false, true] {
                let d = if inv { inverse[c][g] } else { action[c][g] };
                if transversal[d].is_none() {
                    let mut w = transversal[c].clone().unwrap_or_default();
                    w.push(if inv { inverse_letter(g) } else { letter(g) });
                    transversal[d] = Some(w);
                    // Record the positive edge (coset, generator) that is in the tree.
                    if inv {
                        tree.insert((d, g), ());
                    } else {
                        tree.insert((c, g), ());
                    }
                    queue.push_back(d);
                }
            }
        }
    }
    let transversal: Vec<Vec<Letter>> = transversal
        .into_iter()
        .map(|t| t.ok_or_else(|| Error::Internal("coset action is not transitive".into())))
        .collect::<Result<_>>()?;
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut names = Vec::new();
    let mut words = Vec::new();
    for c in 0..n {
        for g in 0..rank {
            if tree.contains_key(&(c, g)) {
                continue;
            }
            index.insert((c, g), names.len());
            names.push(format!("{}[{}]", parent.generators[g], c));
            let mut w = transversal[c].clone();
            w.push(letter(g));
            w.extend(invert_word(&transversal[action[c][g]]));
            words.push(free_reduce(&w));
        }
    }
    let mut relators = Vec::new();
    for c in 0..n {
        for r in &parent.relators {
            let mut at = c;
            let mut out = Vec::new();
            for &l in r {
                let (g, inv) = decode(l);
                if inv {
                    let prev = inverse[at][g];
                    if let Some(&k) = index.get(&(prev, g)) {
                        out.push(inverse_letter(k));
                    }
                    at = prev;
                } else {
                    if let Some(&k) = index.get(&(at, g)) {
                        out.push(letter(k));
                    }
                    at = action[at][g];
                }
            }
            if at != c {
                return Err(Error::Internal("relator does not act trivially on cosets".into()));
            }
            relators.push(out);
        }
    }
    let mut presentation = GroupPresentation {
        generators: names,
        relators,
    };
    let kept = presentation.simplify();
    let words = kept.into_iter().map(|k| words[k].clone()).collect();
    Ok(SubgroupPresentation {
        presentation,
        words,
        transversal,
    })
}
