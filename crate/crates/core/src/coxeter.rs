//! The reflection representation of a Coxeter group over an exact field.
//!
//! Group elements are stored as their matrices on `V` in the simple-root
//! basis: column `j` of the matrix of `x` is the root `x·α_j`. That makes the
//! descent test (`x·α_i` negative) a sign test on one column and makes right
//! multiplication by a simple reflection a cheap column update.

use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock};

use crate::diagram::{Bond, CoxeterDiagram, NodeSet};
use crate::field::NumberField;
use crate::scalar::AlgebraicScalar;
use crate::{Error, Result};

/// Square matrix over the diagram's field, column-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    n: usize,
    entries: Vec<AlgebraicScalar>,
}

impl Matrix {
    pub fn identity(field: &'static NumberField, n: usize) -> Self {
        let mut entries = vec![AlgebraicScalar::zero(field); n * n];
        for i in 0..n {
            entries[i * n + i] = AlgebraicScalar::from_int(field, 1);
        }
        Matrix { n, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(k, e)| {
            if k % (self.n + 1) == 0 {
                e.is_one()
            } else {
                e.is_zero()
            }
        })
    }

    /// Entry in row `i`, column `j`.
    pub fn get(&self, i: usize, j: usize) -> &AlgebraicScalar {
        &self.entries[j * self.n + i]
    }

    pub fn column(&self, j: usize) -> &[AlgebraicScalar] {
        &self.entries[j * self.n..(j + 1) * self.n]
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let n = self.n;
        let field = self.entries[0].field();
        let mut entries = Vec::with_capacity(n * n);
        for j in 0..n {
            let col = other.column(j);
            for i in 0..n {
                let mut acc = AlgebraicScalar::zero(field);
                for (k, ck) in col.iter().enumerate() {
                    if !ck.is_zero() {
                        let a = self.get(i, k);
                        if !a.is_zero() {
                            acc = &acc + &(a * ck);
                        }
                    }
                }
                entries.push(acc);
            }
        }
        Matrix { n, entries }
    }

    pub fn apply(&self, v: &[AlgebraicScalar]) -> Vec<AlgebraicScalar> {
        let field = self.entries[0].field();
        (0..self.n)
            .map(|i| {
                v.iter().enumerate().fold(AlgebraicScalar::zero(field), |acc, (k, vk)| {
                    if vk.is_zero() {
                        acc
                    } else {
                        &acc + &(self.get(i, k) * vk)
                    }
                })
            })
            .collect()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).to_string()).collect())
            .collect();
        write!(f, "{rows:?}")
    }
}

/// Sign of a vector known to be a root: the sign of its first nonzero
/// coordinate.
fn root_sign(coords: &[AlgebraicScalar]) -> Ordering {
    coords
        .iter()
        .find(|c| !c.is_zero())
        .map_or(Ordering::Equal, AlgebraicScalar::signum)
}

/// In-place right multiplication `M ← M·s_i` on a column-major matrix.
fn right_mul_simple(form: &Form, m: &mut Matrix, i: usize) {
    let n = m.n;
    let col_i: Vec<AlgebraicScalar> = m.column(i).to_vec();
    for j in 0..n {
        let f = &form[i][j];
        if f.is_zero() {
            continue;
        }
        for r in 0..n {
            if !col_i[r].is_zero() {
                let idx = j * n + r;
                m.entries[idx] = &m.entries[idx] - &(f * &col_i[r]);
            }
        }
    }
}

/// The descent walk: repeatedly pick the smallest `i` with `x·α_i` negative
/// and replace `x ← x·s_i`. The reversed selections form a reduced word.
/// Exceeding `bound` steps, or ending away from the identity, means the
/// matrix is not an element of `W` of that length.
fn descent_walk(form: &Form, matrix: &Matrix, bound: Option<usize>) -> Result<Vec<usize>> {
    let n = matrix.n;
    let mut m = matrix.clone();
    let mut picks = Vec::new();
    loop {
        let next = (0..n).find(|&i| root_sign(m.column(i)) == Ordering::Less);
        let Some(i) = next else { break };
        if bound.is_some_and(|b| picks.len() >= b) {
            return Err(Error::NotInGroup(format!(
                "descent walk exceeded {} steps",
                bound.unwrap_or_default()
            )));
        }
        right_mul_simple(form, &mut m, i);
        picks.push(i);
    }
    if !m.is_identity() {
        return Err(Error::NotInGroup(
            "descent walk ended at a non-identity matrix".into(),
        ));
    }
    picks.reverse();
    Ok(picks)
}

/// The descent walk for a matrix known to lie in `W`, run on the single
/// functional `φ = x⁻¹·ρ` with `ρ(α_i) = 1`: since `x·α_i` is a root,
/// `φ(α_i) = ρ(x·α_i)` has the sign of `x·α_i`. Returns the selections in
/// order.
fn trusted_descent_walk(form: &Form, matrix: &Matrix) -> Vec<usize> {
    let n = matrix.n;
    let mut phi: Vec<AlgebraicScalar> = (0..n)
        .map(|j| {
            matrix.column(j)[1..]
                .iter()
                .fold(matrix.column(j)[0].clone(), |acc, e| &acc + e)
        })
        .collect();
    let mut picks = Vec::new();
    while let Some(i) = (0..n).find(|&i| phi[i].is_negative()) {
        let pi = phi[i].clone();
        for (j, f) in form[i].iter().enumerate() {
            if !f.is_zero() {
                phi[j] = &phi[j] - &(f * &pi);
            }
        }
        picks.push(i);
    }
    picks
}

/// The lexicographically least reduced word of `x`, given any reduced word.
///
/// Its first letter is the smallest left descent of `x`, which is the
/// smallest right descent of `x⁻¹`; so the walk on `x⁻¹` selects the letters
/// in order.
fn lex_min_word(form: &Form, reduced: &[usize]) -> Vec<usize> {
    let n = form.len();
    let field = form[0][0].field();
    let mut inverse = Matrix::identity(field, n);
    for &i in reduced.iter().rev() {
        right_mul_simple(form, &mut inverse, i);
    }
    trusted_descent_walk(form, &inverse)
}

/// A vector of `V` in the simple-root basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Root {
    coords: Vec<AlgebraicScalar>,
}

impl Root {
    pub fn new(coords: Vec<AlgebraicScalar>) -> Self {
        Root { coords }
    }

    pub fn coords(&self) -> &[AlgebraicScalar] {
        &self.coords
    }

    /// Nonnegative coordinates, not all zero.
    pub fn is_positive(&self) -> bool {
        self.coords.iter().all(|c| !c.is_negative()) && self.coords.iter().any(|c| !c.is_zero())
    }

    pub fn is_negative(&self) -> bool {
        (-self).is_positive()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(AlgebraicScalar::is_zero)
    }

    /// Nodes with a nonzero coordinate.
    pub fn support(&self) -> NodeSet {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    /// Index of the simple root `±α_i` this vector equals, with its sign.
    pub fn as_signed_simple(&self) -> Option<(usize, Ordering)> {
        let support = self.support();
        if support.len() != 1 {
            return None;
        }
        let i = support.iter().next()?;
        let c = &self.coords[i];
        if c.is_one() {
            Some((i, Ordering::Greater))
        } else if (-c).is_one() {
            Some((i, Ordering::Less))
        } else {
            None
        }
    }
}

impl std::ops::Neg for &Root {
    type Output = Root;

    fn neg(self) -> Root {
        Root {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Debug for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "Root[{}]", parts.join(", "))
    }
}

/// A point of `Θ = V*` in the basis of fundamental coweights, i.e. the tuple
/// of values `φ(α_i)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ThetaPoint {
    coords: Vec<AlgebraicScalar>,
}

impl ThetaPoint {
    pub fn new(coords: Vec<AlgebraicScalar>) -> Self {
        ThetaPoint { coords }
    }

    pub fn coords(&self) -> &[AlgebraicScalar] {
        &self.coords
    }

    /// `φ(α)`.
    pub fn pair(&self, root: &Root) -> AlgebraicScalar {
        let field = self.coords[0].field();
        self.coords
            .iter()
            .zip(root.coords())
            .fold(AlgebraicScalar::zero(field), |acc, (p, r)| {
                if p.is_zero() || r.is_zero() {
                    acc
                } else {
                    &acc + &(p * r)
                }
            })
    }
}

impl fmt::Debug for ThetaPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "Theta[{}]", parts.join(", "))
    }
}

type Form = Vec<Vec<AlgebraicScalar>>;

struct ElementData {
    matrix: Matrix,
    /// Filled on first use when the element came from a trusted product.
    word: OnceLock<Vec<usize>>,
    form: Option<Arc<Form>>,
    hash: u64,
}

/// An element of `W`: its exact matrix plus the canonical reduced word.
///
/// Equality and hashing use the matrix only.
#[derive(Clone)]
pub struct GroupElement(Arc<ElementData>);

impl GroupElement {
    fn from_parts(matrix: Matrix, word: Vec<usize>) -> Self {
        let mut h = DefaultHasher::new();
        matrix.hash(&mut h);
        GroupElement(Arc::new(ElementData {
            matrix,
            word: OnceLock::from(word),
            form: None,
            hash: h.finish(),
        }))
    }

    /// A matrix known to lie in `W`; the word is computed when first asked.
    fn deferred(matrix: Matrix, form: Arc<Form>) -> Self {
        let mut h = DefaultHasher::new();
        matrix.hash(&mut h);
        GroupElement(Arc::new(ElementData {
            matrix,
            word: OnceLock::new(),
            form: Some(form),
            hash: h.finish(),
        }))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0.matrix
    }

    /// Canonical reduced word: the lexicographically least one.
    pub fn word(&self) -> &[usize] {
        self.0.word.get_or_init(|| {
            let form = self.0.form.as_ref().expect("deferred elements carry the form");
            let mut walk = trusted_descent_walk(form, &self.0.matrix);
            walk.reverse();
            lex_min_word(form, &walk)
        })
    }

    pub fn length(&self) -> usize {
        self.word().len()
    }

    pub fn is_identity(&self) -> bool {
        match self.0.word.get() {
            Some(w) => w.is_empty(),
            None => self.0.matrix.is_identity(),
        }
    }

    /// The root `self·α_i`.
    pub fn image_of_simple(&self, i: usize) -> Root {
        Root::new(self.0.matrix.column(i).to_vec())
    }

    /// Whether `ℓ(x s_i) < ℓ(x)`, i.e. `x·α_i` is negative.
    pub fn has_right_descent(&self, i: usize) -> bool {
        root_sign(self.0.matrix.column(i)) == Ordering::Less
    }

    pub fn right_descents(&self) -> NodeSet {
        (0..self.0.matrix.dim())
            .filter(|&i| self.has_right_descent(i))
            .collect()
    }
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.hash == other.0.hash && self.0.matrix == other.0.matrix)
    }
}

impl Eq for GroupElement {}

impl Hash for GroupElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

/// Shortlex on canonical words.
impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.length()
            .cmp(&other.length())
            .then_with(|| self.word().cmp(other.word()))
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            write!(f, "e")
        } else {
            let w: Vec<String> = self.word().iter().map(|i| format!("s{}", i + 1)).collect();
            write!(f, "{}", w.join(""))
        }
    }
}

/// A Coxeter diagram together with its reflection representation.
pub struct CoxeterSystem {
    diagram: CoxeterDiagram,
    field: &'static NumberField,
    /// `2B(α_i, α_j) = -2cos(π/m_ij)`, with `-2` for `m = ∞`.
    form2: Arc<Form>,
    longest: Mutex<HashMap<NodeSet, Option<GroupElement>>>,
    finite: Mutex<HashMap<NodeSet, bool>>,
    group: Mutex<Option<Vec<GroupElement>>>,
}

impl fmt::Debug for CoxeterSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoxeterSystem")
            .field("nodes", &self.diagram.names())
            .field("field_lcm", &self.field.lcm())
            .finish()
    }
}

/// `2cos(π/m)` as a polynomial in `c = 2cos(π/L)` for `m | L`.
fn two_cos_pi_over(field: &'static NumberField, m: u32) -> AlgebraicScalar {
    match m {
        1 => AlgebraicScalar::from_int(field, -2),
        2 => AlgebraicScalar::zero(field),
        3 => AlgebraicScalar::from_int(field, 1),
        _ => {
            let k = field.lcm() / m as u64;
            assert_eq!(field.lcm() % m as u64, 0, "bond order must divide L");
            // C_k(c) = 2cos(kπ/L) via C_{n+1} = c·C_n − C_{n−1}.
            let c = AlgebraicScalar::generator(field);
            let mut prev = AlgebraicScalar::from_int(field, 2);
            let mut cur = c.clone();
            for _ in 1..k {
                let next = &(&c * &cur) - &prev;
                prev = cur;
                cur = next;
            }
            if k == 0 {
                prev
            } else {
                cur
            }
        }
    }
}

impl CoxeterSystem {
    pub fn new(diagram: CoxeterDiagram) -> Self {
        let field = NumberField::for_lcm(diagram.field_lcm());
        let n = diagram.rank();
        let form2 = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match diagram.bond(i, j) {
                        Bond::Finite(1) => AlgebraicScalar::from_int(field, 2),
                        Bond::Finite(m) => -two_cos_pi_over(field, m),
                        Bond::Infinite => AlgebraicScalar::from_int(field, -2),
                    })
                    .collect()
            })
            .collect();
        let form2 = Arc::new(form2);
        CoxeterSystem {
            diagram,
            field,
            form2,
            longest: Mutex::new(HashMap::new()),
            finite: Mutex::new(HashMap::new()),
            group: Mutex::new(None),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(Self::new(CoxeterDiagram::from_json(text)?))
    }

    pub fn diagram(&self) -> &CoxeterDiagram {
        &self.diagram
    }

    pub fn field(&self) -> &'static NumberField {
        self.field
    }

    pub fn rank(&self) -> usize {
        self.diagram.rank()
    }

    pub fn all_nodes(&self) -> NodeSet {
        self.diagram.all_nodes()
    }

    /// The bilinear form `B(α_i, α_j) = -cos(π/m_ij)`.
    pub fn bilinear_form(&self) -> Vec<Vec<AlgebraicScalar>> {
        let half = AlgebraicScalar::from_ratio(self.field, 1, 2);
        self.form2
            .iter()
            .map(|row| row.iter().map(|x| x * &half).collect())
            .collect()
    }

    /// `2B(α_i, α_j)`.
    pub fn form2(&self, i: usize, j: usize) -> &AlgebraicScalar {
        &self.form2[i][j]
    }

    pub fn scalar(&self, k: i128) -> AlgebraicScalar {
        AlgebraicScalar::from_int(self.field, k)
    }

    pub fn simple_root(&self, i: usize) -> Root {
        let mut coords = vec![AlgebraicScalar::zero(self.field); self.rank()];
        coords[i] = self.scalar(1);
        Root::new(coords)
    }

    /// The point `Σ_{j ∈ set} ω_j^∨` of `Θ`.
    pub fn coweight_sum(&self, set: NodeSet) -> ThetaPoint {
        ThetaPoint::new(
            (0..self.rank())
                .map(|j| self.scalar(set.contains(j) as i128))
                .collect(),
        )
    }

    /// `s_i·v = v − 2B(α_i, v)α_i`.
    pub fn reflect(&self, i: usize, v: &Root) -> Root {
        let mut coords = v.coords.clone();
        coords[i] = self.reflected_coordinate(i, &v.coords);
        Root::new(coords)
    }

    fn reflected_coordinate(&self, i: usize, v: &[AlgebraicScalar]) -> AlgebraicScalar {
        let mut t = AlgebraicScalar::zero(self.field);
        for (k, vk) in v.iter().enumerate() {
            if !vk.is_zero() && !self.form2[i][k].is_zero() {
                t = &t + &(&self.form2[i][k] * vk);
            }
        }
        &v[i] - &t
    }

    /// In-place right multiplication `M ← M·s_i` on a column-major matrix.
    fn right_mul_simple(&self, m: &mut Matrix, i: usize) {
        right_mul_simple(&self.form2, m, i);
    }

    /// In-place left multiplication `M ← s_i·M`.
    fn left_mul_simple(&self, m: &mut Matrix, i: usize) {
        let n = m.n;
        for j in 0..n {
            let col = &m.entries[j * n..(j + 1) * n];
            let v = self.reflected_coordinate(i, col);
            m.entries[j * n + i] = v;
        }
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::from_parts(Matrix::identity(self.field, self.rank()), Vec::new())
    }

    pub fn simple(&self, i: usize) -> GroupElement {
        self.from_word(&[i])
    }

    pub fn matrix_of_word(&self, word: &[usize]) -> Matrix {
        let mut m = Matrix::identity(self.field, self.rank());
        for &i in word {
            self.right_mul_simple(&mut m, i);
        }
        m
    }

    /// Element represented by an arbitrary (not necessarily reduced) word.
    pub fn from_word(&self, word: &[usize]) -> GroupElement {
        let m = self.matrix_of_word(word);
        self.element_from_matrix(m, word.len())
            .expect("a product of simple reflections lies in W")
    }

    /// Wraps a matrix known to lie in `W` with length at most `bound`.
    pub fn element_from_matrix(&self, matrix: Matrix, bound: usize) -> Result<GroupElement> {
        let (_, word) = self.length_and_canonical_word(&matrix, bound)?;
        Ok(GroupElement::from_parts(matrix, word))
    }

    /// Length and canonical word of a matrix claimed to be an element of
    /// length at most `bound`.
    pub fn length_and_canonical_word(
        &self,
        matrix: &Matrix,
        bound: usize,
    ) -> Result<(usize, Vec<usize>)> {
        let reduced = descent_walk(&self.form2, matrix, Some(bound))?;
        let word = lex_min_word(&self.form2, &reduced);
        Ok((word.len(), word))
    }

    /// Wraps a matrix that is a product of elements of `W`.
    fn trusted(&self, matrix: Matrix) -> GroupElement {
        GroupElement::deferred(matrix, self.form2.clone())
    }

    pub fn mul(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        if y.is_identity() {
            return x.clone();
        }
        if x.is_identity() {
            return y.clone();
        }
        if y.0.word.get().is_some_and(|w| w.len() <= self.rank()) {
            let mut m = x.matrix().clone();
            for &i in y.word() {
                self.right_mul_simple(&mut m, i);
            }
            return self.trusted(m);
        }
        self.trusted(x.matrix().mul(y.matrix()))
    }

    /// Product of several elements, left to right.
    pub fn product<'a>(&self, items: impl IntoIterator<Item = &'a GroupElement>) -> GroupElement {
        items
            .into_iter()
            .fold(self.identity(), |acc, g| self.mul(&acc, g))
    }

    /// `x·s_i`.
    pub fn mul_simple(&self, x: &GroupElement, i: usize) -> GroupElement {
        let mut m = x.matrix().clone();
        self.right_mul_simple(&mut m, i);
        self.trusted(m)
    }

    /// `s_i·x`.
    pub fn simple_mul(&self, i: usize, x: &GroupElement) -> GroupElement {
        let mut m = x.matrix().clone();
        self.left_mul_simple(&mut m, i);
        self.trusted(m)
    }

    pub fn inverse(&self, x: &GroupElement) -> GroupElement {
        let word: Vec<usize> = x.word().iter().rev().copied().collect();
        self.trusted(self.matrix_of_word(&word))
    }

    pub fn act(&self, g: &GroupElement, v: &Root) -> Root {
        Root::new(g.matrix().apply(v.coords()))
    }

    /// `(g·φ)(v) = φ(g⁻¹·v)`.
    pub fn contragredient_act(&self, g: &GroupElement, phi: &ThetaPoint) -> ThetaPoint {
        let mut coords = phi.coords.clone();
        for &i in g.word().iter().rev() {
            // (s_i φ)(α_j) = φ(α_j) − 2B(α_i, α_j)·φ(α_i)
            let pi = coords[i].clone();
            if pi.is_zero() {
                continue;
            }
            for (j, cj) in coords.iter_mut().enumerate() {
                let f = &self.form2[i][j];
                if !f.is_zero() {
                    *cj = &*cj - &(f * &pi);
                }
            }
        }
        ThetaPoint::new(coords)
    }

    /// Whether `x` lies in `W_I`: the descent walk restricted to `I` reaches
    /// the identity.
    pub fn in_parabolic(&self, x: &GroupElement, set: NodeSet) -> bool {
        let reduced = self.min_coset_rep(x, set);
        reduced.is_identity()
    }

    /// The minimal-length representative of `x·W_I`.
    pub fn min_coset_rep(&self, x: &GroupElement, set: NodeSet) -> GroupElement {
        let mut m = x.matrix().clone();
        let mut steps = 0;
        loop {
            let next = set.iter().find(|&i| root_sign(m.column(i)) == Ordering::Less);
            let Some(i) = next else { break };
            self.right_mul_simple(&mut m, i);
            steps += 1;
        }
        if steps == 0 {
            return x.clone();
        }
        self.trusted(m)
    }

    /// Positive definiteness of `B` restricted to `span{α_i : i ∈ I}`, by
    /// exact leading principal minors.
    pub fn is_finite_parabolic(&self, set: NodeSet) -> bool {
        if let Some(&v) = self.finite.lock().unwrap_or_else(|e| e.into_inner()).get(&set) {
            return v;
        }
        let nodes: Vec<usize> = set.iter().collect();
        let mut ok = true;
        for k in 1..=nodes.len() {
            let minor: Vec<Vec<AlgebraicScalar>> = nodes[..k]
                .iter()
                .map(|&i| nodes[..k].iter().map(|&j| self.form2[i][j].clone()).collect())
                .collect();
            if determinant(minor).signum() != Ordering::Greater {
                ok = false;
                break;
            }
        }
        self.finite
            .lock()
            .unwrap_or_else(|e| e.into_inner())
            .insert(set, ok);
        ok
    }

    pub fn is_finite_type(&self) -> bool {
        self.is_finite_parabolic(self.all_nodes())
    }

    /// The longest element `w_I` of a finite parabolic subgroup.
    pub fn longest_element(&self, set: NodeSet) -> Result<GroupElement> {
        if let Some(cached) = self
            .longest
            .lock()
            .unwrap_or_else(|e| e.into_inner())
            .get(&set)
        {
            return cached
                .clone()
                .ok_or_else(|| Error::InfiniteParabolic(self.diagram.format_set(set)));
        }
        let result = if self.is_finite_parabolic(set) {
            let mut m = Matrix::identity(self.field, self.rank());
            let mut word = Vec::new();
            loop {
                let next = set.iter().find(|&i| root_sign(m.column(i)) == Ordering::Greater);
                let Some(i) = next else { break };
                self.right_mul_simple(&mut m, i);
                word.push(i);
            }
            let len = word.len();
            Some(self.element_from_matrix(m, len)?)
        } else {
            None
        };
        self.longest
            .lock()
            .unwrap_or_else(|e| e.into_inner())
            .insert(set, result.clone());
        result.ok_or_else(|| Error::InfiniteParabolic(self.diagram.format_set(set)))
    }

    /// The involution `ι_I` with `w_I·α_j = −α_{ι(j)}`, as a node map that is
    /// the identity outside `I`.
    pub fn iota(&self, set: NodeSet) -> Result<Vec<usize>> {
        let w = self.longest_element(set)?;
        let mut map: Vec<usize> = (0..self.rank()).collect();
        for j in set.iter() {
            match w.image_of_simple(j).as_signed_simple() {
                Some((k, Ordering::Less)) if set.contains(k) => map[j] = k,
                _ => {
                    return Err(Error::Internal(format!(
                        "w_I·α_{} is not a negative simple root of I",
                        self.diagram.name(j)
                    )))
                }
            }
        }
        Ok(map)
    }

    /// Applies `ι_I` to a node subset.
    pub fn iota_set(&self, set: NodeSet, sub: NodeSet) -> Result<NodeSet> {
        let map = self.iota(set)?;
        Ok(sub.iter().map(|i| map[i]).collect())
    }

    /// `[I, a]`: the component of `Γ(I + a)` containing `a`.
    pub fn component(&self, set: NodeSet, a: usize) -> NodeSet {
        self.diagram.component_of(set.with(a), a)
    }

    /// All elements of `W_I` when the subgroup has at most `limit` elements,
    /// in order of discovery by length.
    pub fn enumerate_parabolic(&self, set: NodeSet, limit: usize) -> Option<Vec<GroupElement>> {
        let mut seen: HashSet<GroupElement> = HashSet::new();
        let mut layer = vec![self.identity()];
        let mut out = Vec::new();
        seen.insert(self.identity());
        while !layer.is_empty() {
            let mut next = Vec::new();
            for x in &layer {
                for i in set.iter() {
                    if x.has_right_descent(i) {
                        continue;
                    }
                    let mut m = x.matrix().clone();
                    self.right_mul_simple(&mut m, i);
                    let mut word = x.word().to_vec();
                    word.push(i);
                    // Canonical word is recomputed only for new elements.
                    let probe = GroupElement::from_parts(m, word);
                    if seen.contains(&probe) {
                        continue;
                    }
                    let elem = self.trusted(probe.matrix().clone());
                    seen.insert(elem.clone());
                    next.push(elem);
                    if seen.len() > limit {
                        return None;
                    }
                }
            }
            out.append(&mut layer);
            layer = next;
        }
        Some(out)
    }

    /// Order of `W_I` when it is at most `limit`, by matrix-only breadth-first
    /// search.
    pub fn parabolic_order(&self, set: NodeSet, limit: usize) -> Option<usize> {
        let start = Matrix::identity(self.field, self.rank());
        let mut seen: HashSet<Matrix> = HashSet::new();
        seen.insert(start.clone());
        let mut layer = vec![start];
        while !layer.is_empty() {
            let mut next = Vec::new();
            for m in &layer {
                for i in set.iter() {
                    if root_sign(m.column(i)) == Ordering::Less {
                        continue;
                    }
                    let mut t = m.clone();
                    self.right_mul_simple(&mut t, i);
                    if seen.insert(t.clone()) {
                        if seen.len() > limit {
                            return None;
                        }
                        next.push(t);
                    }
                }
            }
            layer = next;
        }
        Some(seen.len())
    }

    /// All elements of `W` for finite-type diagrams.
    pub fn enumerate_group(&self, limit: usize) -> Result<Vec<GroupElement>> {
        if !self.is_finite_type() {
            return Err(Error::NotFiniteType);
        }
        let too_big = || Error::LimitExceeded(format!("group has more than {limit} elements"));
        if let Some(all) = self.group.lock().unwrap_or_else(|e| e.into_inner()).as_ref() {
            return if all.len() <= limit { Ok(all.clone()) } else { Err(too_big()) };
        }
        let all = self.enumerate_parabolic(self.all_nodes(), limit).ok_or_else(too_big)?;
        *self.group.lock().unwrap_or_else(|e| e.into_inner()) = Some(all.clone());
        Ok(all)
    }

    /// Positive roots of a finite parabolic `W_I`.
    pub fn positive_roots(&self, set: NodeSet) -> Result<Vec<Root>> {
        if !self.is_finite_parabolic(set) {
            return Err(Error::InfiniteParabolic(self.diagram.format_set(set)));
        }
        let mut seen: HashSet<Root> = HashSet::new();
        let mut order = Vec::new();
        let mut stack: Vec<Root> = set.iter().map(|i| self.simple_root(i)).collect();
        while let Some(r) = stack.pop() {
            if !seen.insert(r.clone()) {
                continue;
            }
            for i in set.iter() {
                let t = self.reflect(i, &r);
                if t.is_positive() && !seen.contains(&t) {
                    stack.push(t);
                }
            }
            order.push(r);
        }
        order.sort_by(|a, b| root_height_order(a, b));
        Ok(order)
    }

    /// Roots `w·α_i` for `ℓ(w) ≤ max_len`, deduplicated.
    pub fn roots_up_to_length(&self, max_len: usize) -> Vec<Root> {
        let mut seen: HashSet<Root> = HashSet::new();
        let mut layer: Vec<Root> = (0..self.rank()).map(|i| self.simple_root(i)).collect();
        for r in &layer {
            seen.insert(r.clone());
        }
        for _ in 0..max_len {
            let mut next = Vec::new();
            for r in &layer {
                for i in 0..self.rank() {
                    let t = self.reflect(i, r);
                    if seen.insert(t.clone()) {
                        next.push(t);
                    }
                }
            }
            layer = next;
        }
        let mut out: Vec<Root> = seen.into_iter().collect();
        out.sort_by(root_height_order);
        out
    }

    /// `u` left-divides `w` in the weak order: `ℓ(u⁻¹w) = ℓ(w) − ℓ(u)`.
    pub fn left_divides(&self, u: &GroupElement, w: &GroupElement) -> bool {
        if u.length() > w.length() {
            return false;
        }
        let q = self.mul(&self.inverse(u), w);
        q.length() + u.length() == w.length()
    }

    /// `{β ∈ Φ⁺ : x·β ∈ Φ⁻}` size, by brute force over a list of positive
    /// roots.
    pub fn count_inversions(&self, x: &GroupElement, positive: &[Root]) -> usize {
        positive
            .iter()
            .filter(|b| self.act(x, b).is_negative())
            .count()
    }
}

fn root_height_order(a: &Root, b: &Root) -> Ordering {
    let height = |r: &Root| {
        r.coords()
            .iter()
            .fold(AlgebraicScalar::zero(r.coords()[0].field()), |acc, c| &acc + c)
    };
    height(a).cmp(&height(b)).then_with(|| {
        for (x, y) in a.coords().iter().zip(b.coords()) {
            let o = y.cmp(x);
            if o != Ordering::Equal {
                return o;
            }
        }
        Ordering::Equal
    })
}

/// Exact determinant by Gaussian elimination over the field.
pub fn determinant(mut m: Vec<Vec<AlgebraicScalar>>) -> AlgebraicScalar {
    let n = m.len();
    let field = m[0][0].field();
    let mut det = AlgebraicScalar::from_int(field, 1);
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return AlgebraicScalar::zero(field);
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det = &det * &pivot;
        let inv = pivot.inverse().expect("nonzero pivot");
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] * &inv;
            for c in col..n {
                let t = &f * &m[col][c];
                m[r][c] = &m[r][c] - &t;
            }
        }
    }
    det
}

/// Rank of a list of vectors over the field.
pub fn rank_of(rows: &[Vec<AlgebraicScalar>]) -> usize {
    let mut m: Vec<Vec<AlgebraicScalar>> = rows.to_vec();
    if m.is_empty() {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(p, rank);
        let inv = m[rank][col].inverse().expect("nonzero pivot");
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let f = &m[r][col] * &inv;
                for c in col..cols {
                    let t = &f * &m[rank][c];
                    m[r][c] = &m[r][c] - &t;
                }
            }
        }
        rank += 1;
    }
    rank
}
