//! Garside structure of a finite-type Artin monoid and group.
//!
//! Positive elements are stored in left-greedy normal form as a sequence of
//! simple elements, each an element of `W` with cached descent sets.
//! Divisibility and lcms use subword reversing on atoms.

use std::fmt;

use crate::coxeter::{CoxeterSystem, GroupElement};
use crate::diagram::{Bond, NodeSet};
use crate::{Error, Result};

/// A simple element of the Artin monoid: the positive lift of some `w ∈ W`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Simple {
    element: GroupElement,
    left: NodeSet,
    right: NodeSet,
}

impl Simple {
    pub fn element(&self) -> &GroupElement {
        &self.element
    }

    /// `{s : ℓ(s·w) < ℓ(w)}`.
    pub fn left_descents(&self) -> NodeSet {
        self.left
    }

    pub fn right_descents(&self) -> NodeSet {
        self.right
    }
}

impl fmt::Debug for Simple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.element)
    }
}

/// A positive Artin element in left-greedy normal form. Identity factors
/// never appear.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GarsideElement {
    factors: Vec<Simple>,
}

impl GarsideElement {
    pub fn factors(&self) -> &[Simple] {
        &self.factors
    }

    pub fn is_identity(&self) -> bool {
        self.factors.is_empty()
    }

    /// Number of atoms.
    pub fn length(&self) -> usize {
        self.factors.iter().map(|f| f.element.length()).sum()
    }

    /// Concatenated canonical words of the factors.
    pub fn word(&self) -> Vec<usize> {
        self.factors
            .iter()
            .flat_map(|f| f.element.word().iter().copied())
            .collect()
    }

    /// Canonical words of the factors.
    pub fn factor_words(&self) -> Vec<Vec<usize>> {
        self.factors.iter().map(|f| f.element.word().to_vec()).collect()
    }
}

impl fmt::Debug for GarsideElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.factors.iter().map(|s| format!("{s:?}")).collect();
        write!(f, "{}", parts.join("|"))
    }
}

/// An element `Δ^k·P` of the Artin group, `P` positive and not left-divisible
/// by `Δ`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ArtinElement {
    delta_power: i64,
    positive: GarsideElement,
}

impl ArtinElement {
    pub fn delta_power(&self) -> i64 {
        self.delta_power
    }

    pub fn positive_part(&self) -> &GarsideElement {
        &self.positive
    }

    pub fn is_identity(&self) -> bool {
        self.delta_power == 0 && self.positive.is_identity()
    }

    /// The element as a positive monoid element, when `k ≥ 0`.
    pub fn is_positive(&self) -> bool {
        self.delta_power >= 0
    }
}

impl fmt::Debug for ArtinElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Δ^{}·{:?}", self.delta_power, self.positive)
    }
}

/// Garside operations for a finite-type Coxeter system.
pub struct Garside<'a> {
    system: &'a CoxeterSystem,
    w0: GroupElement,
    /// Conjugation by `w0` on nodes.
    iota: Vec<usize>,
}

impl fmt::Debug for Garside<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Garside").field("w0", &self.w0).finish()
    }
}

/// A signed atom for subword reversing.
#[derive(Clone, Copy, PartialEq, Eq)]
struct Signed {
    atom: usize,
    negative: bool,
}

impl<'a> Garside<'a> {
    pub fn new(system: &'a CoxeterSystem) -> Result<Self> {
        if !system.is_finite_type() {
            return Err(Error::NotFiniteType);
        }
        let all = system.all_nodes();
        Ok(Garside {
            system,
            w0: system.longest_element(all)?,
            iota: system.iota(all)?,
        })
    }

    pub fn system(&self) -> &'a CoxeterSystem {
        self.system
    }

    fn simple(&self, element: GroupElement) -> Simple {
        let right = element.right_descents();
        let left = self.system.inverse(&element).right_descents();
        Simple {
            element,
            left,
            right,
        }
    }

    pub fn identity(&self) -> GarsideElement {
        GarsideElement { factors: Vec::new() }
    }

    pub fn atom(&self, i: usize) -> GarsideElement {
        self.positive_lift(&self.system.simple(i))
    }

    /// The lift of `w` along any reduced word.
    pub fn positive_lift(&self, w: &GroupElement) -> GarsideElement {
        if w.is_identity() {
            return self.identity();
        }
        GarsideElement {
            factors: vec![self.simple(w.clone())],
        }
    }

    /// `Δ_I`.
    pub fn delta(&self, set: NodeSet) -> Result<GarsideElement> {
        Ok(self.positive_lift(&self.system.longest_element(set)?))
    }

    /// The positive element spelled by a word of atoms.
    pub fn from_word(&self, word: &[usize]) -> GarsideElement {
        let factors = word
            .iter()
            .map(|&i| self.simple(self.system.simple(i)))
            .collect();
        self.normalize(factors)
    }

    pub fn mul(&self, a: &GarsideElement, b: &GarsideElement) -> GarsideElement {
        if a.is_identity() {
            return b.clone();
        }
        if b.is_identity() {
            return a.clone();
        }
        let mut factors = a.factors.clone();
        factors.extend(b.factors.iter().cloned());
        self.normalize(factors)
    }

    pub fn product<'b>(&self, items: impl IntoIterator<Item = &'b GarsideElement>) -> GarsideElement {
        items
            .into_iter()
            .fold(self.identity(), |acc, x| self.mul(&acc, x))
    }

    /// Makes every adjacent pair `(u, v)` left-weighted, i.e. `L(v) ⊆ R(u)`,
    /// by moving single atoms from the head of `v` to the tail of `u`.
    fn normalize(&self, mut factors: Vec<Simple>) -> GarsideElement {
        let w = self.system;
        factors.retain(|f| !f.element.is_identity());
        loop {
            let mut changed = false;
            let mut k = 0;
            while k + 1 < factors.len() {
                let movable = factors[k + 1].left.difference(factors[k].right);
                if let Some(s) = movable.iter().next() {
                    let u = w.mul_simple(&factors[k].element, s);
                    let v = w.simple_mul(s, &factors[k + 1].element);
                    factors[k] = self.simple(u);
                    factors[k + 1] = self.simple(v);
                    changed = true;
                    if factors[k + 1].element.is_identity() {
                        factors.remove(k + 1);
                    }
                    k = k.saturating_sub(1);
                } else {
                    k += 1;
                }
            }
            if !changed {
                break;
            }
        }
        GarsideElement { factors }
    }

    /// `π`, the image in `W`.
    pub fn pi(&self, x: &GarsideElement) -> GroupElement {
        self.system.product(x.factors.iter().map(|f| &f.element))
    }

    /// `θ(a, b)`: the alternating word `b a b …` of length `m_ab − 1`, so
    /// that `a·θ(a,b) = b·θ(b,a)` is the lcm of the atoms.
    fn theta(&self, a: usize, b: usize) -> Vec<usize> {
        let m = match self.system.diagram().bond(a, b) {
            Bond::Finite(m) => m as usize,
            Bond::Infinite => unreachable!("finite type has no infinite bonds"),
        };
        (0..m - 1).map(|k| if k % 2 == 0 { b } else { a }).collect()
    }

    /// Right reversing of `x⁻¹y` to `p·q⁻¹` with `x·p = y·q` the lcm.
    fn reverse(&self, x: &[usize], y: &[usize]) -> Result<(Vec<usize>, Vec<usize>)> {
        let mut word: Vec<Signed> = x
            .iter()
            .rev()
            .map(|&a| Signed {
                atom: a,
                negative: true,
            })
            .chain(y.iter().map(|&a| Signed {
                atom: a,
                negative: false,
            }))
            .collect();
        let cap = 1_000_000usize;
        let mut steps = 0usize;
        while let Some(k) = (0..word.len().saturating_sub(1))
            .find(|&k| word[k].negative && !word[k + 1].negative)
        {
            steps += 1;
            if steps > cap {
                return Err(Error::Internal("subword reversing did not terminate".into()));
            }
            let (a, b) = (word[k].atom, word[k + 1].atom);
            let replacement: Vec<Signed> = if a == b {
                Vec::new()
            } else {
                self.theta(a, b)
                    .into_iter()
                    .map(|t| Signed {
                        atom: t,
                        negative: false,
                    })
                    .chain(self.theta(b, a).into_iter().rev().map(|t| Signed {
                        atom: t,
                        negative: true,
                    }))
                    .collect()
            };
            word.splice(k..k + 2, replacement);
        }
        let split = word.iter().position(|s| s.negative).unwrap_or(word.len());
        let p = word[..split].iter().map(|s| s.atom).collect();
        let q = word[split..].iter().rev().map(|s| s.atom).collect();
        Ok((p, q))
    }

    /// `u⁻¹w` when `u ≼ w`.
    pub fn left_quotient(&self, u: &GarsideElement, w: &GarsideElement) -> Result<Option<GarsideElement>> {
        let (p, q) = self.reverse(&u.word(), &w.word())?;
        Ok(q.is_empty().then(|| self.from_word(&p)))
    }

    pub fn left_divides(&self, u: &GarsideElement, w: &GarsideElement) -> Result<bool> {
        Ok(self.left_quotient(u, w)?.is_some())
    }

    /// The least common multiple for left divisibility.
    pub fn left_lcm(&self, u: &GarsideElement, v: &GarsideElement) -> Result<GarsideElement> {
        let (p, _) = self.reverse(&u.word(), &v.word())?;
        Ok(self.mul(u, &self.from_word(&p)))
    }

    fn conjugate_by_w0(&self, x: &GarsideElement) -> GarsideElement {
        let factors = x
            .factors
            .iter()
            .map(|f| {
                let word: Vec<usize> = f.element.word().iter().map(|&i| self.iota[i]).collect();
                self.simple(self.system.from_word(&word))
            })
            .collect();
        // Conjugation by Δ is a monoid automorphism, so normal forms map to
        // normal forms.
        GarsideElement { factors }
    }

    /// `τ^k(x) = Δ^{-k} x Δ^k`.
    fn tau(&self, x: &GarsideElement, k: i64) -> GarsideElement {
        if k.rem_euclid(2) == 0 {
            x.clone()
        } else {
            self.conjugate_by_w0(x)
        }
    }

    pub fn group_identity(&self) -> ArtinElement {
        self.artin(0, self.identity())
    }

    pub fn artin_delta(&self, k: i64) -> ArtinElement {
        self.artin(k, self.identity())
    }

    pub fn from_positive(&self, x: &GarsideElement) -> ArtinElement {
        self.artin(0, x.clone())
    }

    /// Normalises `Δ^k·x`, absorbing leading `Δ` factors.
    fn artin(&self, mut k: i64, mut x: GarsideElement) -> ArtinElement {
        let leading = x
            .factors
            .iter()
            .take_while(|f| f.element == self.w0)
            .count();
        if leading > 0 {
            k += leading as i64;
            x.factors.drain(..leading);
        }
        ArtinElement {
            delta_power: k,
            positive: x,
        }
    }

    pub fn group_mul(&self, a: &ArtinElement, b: &ArtinElement) -> ArtinElement {
        // Δ^a P Δ^b Q = Δ^{a+b} τ^b(P) Q
        let p = self.tau(&a.positive, b.delta_power);
        self.artin(a.delta_power + b.delta_power, self.mul(&p, &b.positive))
    }

    pub fn group_inverse(&self, a: &ArtinElement) -> ArtinElement {
        let w = self.system;
        let mut acc = self.group_identity();
        let delta_inv = self.artin_delta(-1);
        for f in a.positive.factors.iter().rev() {
            // p⁻¹ = ∂(p)·Δ⁻¹ with ∂(p) = p⁻¹w0.
            let d = w.mul(&w.inverse(&f.element), &self.w0);
            let step = self.group_mul(&self.from_positive(&self.positive_lift(&d)), &delta_inv);
            acc = self.group_mul(&acc, &step);
        }
        self.group_mul(&acc, &self.artin_delta(-a.delta_power))
    }

    /// `π(Δ^k P) = w0^k·π(P)`.
    pub fn group_pi(&self, a: &ArtinElement) -> GroupElement {
        let w = self.system;
        let head = if a.delta_power.rem_euclid(2) == 0 {
            w.identity()
        } else {
            self.w0.clone()
        };
        w.mul(&head, &self.pi(&a.positive))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::catalogue;
    use proptest::prelude::*;

    fn set(v: &[usize]) -> NodeSet {
        v.iter().copied().collect()
    }

    #[test]
    fn lifts_and_deltas() {
        let w = CoxeterSystem::new(catalogue::a(2));
        let g = Garside::new(&w).unwrap();
        assert!(g.positive_lift(&w.identity()).is_identity());
        let delta = g.delta(w.all_nodes()).unwrap();
        assert_eq!(delta.factors().len(), 1);
        assert_eq!(g.from_word(&[0, 1, 0]), delta);
        assert_eq!(g.from_word(&[1, 0, 1]), delta);
        assert_eq!(g.delta(NodeSet::EMPTY).unwrap(), g.identity());
        assert_eq!(g.delta(set(&[1])).unwrap(), g.atom(1));
    }

    #[test]
    fn normal_form_of_squares() {
        let w = CoxeterSystem::new(catalogue::a(2));
        let g = Garside::new(&w).unwrap();
        let x = g.from_word(&[0, 0]);
        assert_eq!(x.factors().len(), 2);
        // σ2 σ1 σ1 σ2 has normal form s2s1 | s1s2.
        let y = g.from_word(&[1, 0, 0, 1]);
        let words = y.factor_words();
        assert_eq!(words, vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn lcms_of_atoms() {
        let w = CoxeterSystem::new(catalogue::a(2));
        let g = Garside::new(&w).unwrap();
        let l = g.left_lcm(&g.atom(0), &g.atom(1)).unwrap();
        assert_eq!(l, g.delta(w.all_nodes()).unwrap());
        let u = g.from_word(&[0, 1]);
        assert_eq!(g.left_lcm(&u, &u).unwrap(), u);
        let b3 = CoxeterSystem::new(catalogue::b(3));
        let g = Garside::new(&b3).unwrap();
        assert_eq!(
            g.left_lcm(&g.atom(0), &g.atom(1)).unwrap(),
            g.delta(set(&[0, 1])).unwrap()
        );
        assert_eq!(g.left_lcm(&g.atom(0), &g.atom(2)).unwrap(), g.from_word(&[0, 2]));
    }

    #[test]
    fn division_in_a3() {
        let w = CoxeterSystem::new(catalogue::a(3));
        let g = Garside::new(&w).unwrap();
        let d12 = g.delta(set(&[0, 1])).unwrap();
        let q = g.left_quotient(&g.atom(1), &d12).unwrap().unwrap();
        assert_eq!(q, g.from_word(&[0, 1]));
        assert!(g.left_quotient(&g.atom(2), &d12).unwrap().is_none());
    }

    #[test]
    fn group_arithmetic() {
        let w = CoxeterSystem::new(catalogue::a(3));
        let g = Garside::new(&w).unwrap();
        let x = g.from_positive(&g.from_word(&[0, 2, 1, 1, 0]));
        let inv = g.group_inverse(&x);
        assert!(g.group_mul(&x, &inv).is_identity());
        assert!(g.group_mul(&inv, &x).is_identity());
        assert_eq!(g.group_pi(&inv), w.inverse(&g.group_pi(&x)));
        let d = g.artin_delta(1);
        assert_eq!(g.group_mul(&d, &g.artin_delta(-1)), g.group_identity());
        // Δ σ1 Δ⁻¹ = σ3 in A3.
        let conj = g.group_mul(
            &g.group_mul(&d, &g.from_positive(&g.atom(0))),
            &g.artin_delta(-1),
        );
        assert_eq!(conj, g.from_positive(&g.atom(2)));
    }

    #[test]
    fn rejects_infinite_type() {
        let w = CoxeterSystem::new(catalogue::affine_a2());
        assert!(matches!(Garside::new(&w), Err(Error::NotFiniteType)));
    }

    fn words() -> impl Strategy<Value = Vec<usize>> {
        proptest::collection::vec(0usize..3, 0..=12)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn normal_form_is_idempotent_and_associative(a in words(), b in words(), c in words()) {
            for d in [catalogue::a(3), catalogue::b(3), catalogue::h3()] {
                let w = CoxeterSystem::new(d);
                let g = Garside::new(&w).unwrap();
                let (x, y, z) = (g.from_word(&a), g.from_word(&b), g.from_word(&c));
                prop_assert_eq!(g.from_word(&x.word()), x.clone());
                prop_assert_eq!(g.mul(&g.mul(&x, &y), &z), g.mul(&x, &g.mul(&y, &z)));
                prop_assert_eq!(x.length(), a.len());
                let mut ab = a.clone();
                ab.extend(&b);
                prop_assert_eq!(g.mul(&x, &y), g.from_word(&ab));
                // left-weighting holds between consecutive factors
                for pair in x.factors().windows(2) {
                    prop_assert!(pair[1].left_descents().is_subset(pair[0].right_descents()));
                }
                prop_assert_eq!(g.pi(&x), w.from_word(&a));
            }
        }

        #[test]
        fn lcm_is_a_common_multiple(a in words(), b in words()) {
            let w = CoxeterSystem::new(catalogue::a(3));
            let g = Garside::new(&w).unwrap();
            let (x, y) = (g.from_word(&a), g.from_word(&b));
            let l = g.left_lcm(&x, &y).unwrap();
            prop_assert!(g.left_divides(&x, &l).unwrap());
            prop_assert!(g.left_divides(&y, &l).unwrap());
            prop_assert_eq!(g.left_lcm(&y, &x).unwrap(), l.clone());
            // Any common multiple found by multiplying is divisible by l.
            let m = g.mul(&x, &y);
            if g.left_divides(&y, &m).unwrap() {
                prop_assert!(g.left_divides(&l, &m).unwrap());
            }
        }
    }
}
