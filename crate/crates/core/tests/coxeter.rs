use std::collections::HashMap;

use proptest::prelude::*;
use titscone_core::diagram::catalogue;
use titscone_core::{CoxeterDiagram, CoxeterSystem, GroupElement, NodeSet};

/// `s_i` as the transposition of positions `i` and `i + 1`.
fn permutation(n: usize, word: &[usize]) -> Vec<usize> {
    let mut p: Vec<usize> = (0..=n).collect();
    for &i in word {
        p.swap(i, i + 1);
    }
    p
}

fn inversions(p: &[usize]) -> usize {
    (0..p.len())
        .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count()
}

fn words(letters: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut all = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<usize>| {
                (0..letters).map(move |i| {
                    let mut v = w.clone();
                    v.push(i);
                    v
                })
            })
            .collect();
        all.extend(layer.iter().cloned());
    }
    all
}

#[test]
fn lengths_in_a3_match_permutation_inversions() {
    let w = CoxeterSystem::new(catalogue::a(3));
    let mut by_perm: HashMap<Vec<usize>, GroupElement> = HashMap::new();
    for word in words(3, 6) {
        let x = w.from_word(&word);
        let p = permutation(3, &word);
        assert_eq!(x.length(), inversions(&p), "word {word:?}");
        assert_eq!(permutation(3, x.word()), p, "canonical word of {word:?}");
        if let Some(y) = by_perm.get(&p) {
            assert_eq!(*y, x);
        } else {
            by_perm.insert(p, x);
        }
    }
    assert_eq!(by_perm.len(), 24);
}

#[test]
fn a2_canonical_word_of_the_longest_element() {
    let w = CoxeterSystem::new(catalogue::a(2));
    assert_eq!(w.from_word(&[0, 1, 0]).word(), &[0, 1, 0]);
    assert_eq!(w.from_word(&[1, 0, 1]).word(), &[0, 1, 0]);
    assert_eq!(w.longest_element(w.all_nodes()).unwrap().length(), 3);
}

#[test]
fn min_coset_reps_against_brute_force() {
    let w = CoxeterSystem::new(catalogue::b(3));
    let elements = w.enumerate_group(100).unwrap();
    for bits in 0u64..8 {
        let i = NodeSet::from_bits(bits);
        let parabolic = w.enumerate_parabolic(i, 100).unwrap();
        for x in &elements {
            let coset: Vec<GroupElement> = parabolic.iter().map(|u| w.mul(x, u)).collect();
            let shortest = coset.iter().map(GroupElement::length).min().unwrap();
            let minimal: Vec<&GroupElement> = coset.iter().filter(|y| y.length() == shortest).collect();
            assert_eq!(minimal.len(), 1);
            assert_eq!(w.min_coset_rep(x, i), *minimal[0]);
        }
    }
}

#[test]
fn longest_elements_have_one_inversion_per_positive_root() {
    for (name, d) in catalogue::finite_rank_at_most_4() {
        let w = CoxeterSystem::new(d);
        let w0 = w.longest_element(w.all_nodes()).unwrap();
        let roots = w.positive_roots(w.all_nodes()).unwrap();
        assert_eq!(w0.length(), roots.len(), "{name}");
        assert!(roots.iter().all(|r| w.act(&w0, r).is_negative()), "{name}");
    }
}

#[test]
fn affine_a2_is_infinite() {
    let w = CoxeterSystem::new(catalogue::affine_a2());
    assert!(!w.is_finite_type());
    assert!(w.is_finite_parabolic(NodeSet::from_bits(0b011)));
    assert!(w.enumerate_group(1000).is_err());
}

fn systems() -> Vec<CoxeterDiagram> {
    vec![
        catalogue::b(3),
        catalogue::h3(),
        catalogue::affine_a2(),
        catalogue::infinite_dihedral(),
        catalogue::dihedral(7),
    ]
}

fn system_and_words() -> impl Strategy<Value = (usize, Vec<usize>, Vec<usize>)> {
    (0..systems().len()).prop_flat_map(|k| {
        let n = systems()[k].rank();
        (
            Just(k),
            prop::collection::vec(0..n, 0..14),
            prop::collection::vec(0..n, 0..14),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_words_are_reduced((k, u, _) in system_and_words()) {
        let w = CoxeterSystem::new(systems()[k].clone());
        let x = w.from_word(&u);
        prop_assert!(x.length() <= u.len());
        prop_assert_eq!(x.length() % 2, u.len() % 2);
        prop_assert_eq!(x.word().len(), x.length());
        prop_assert_eq!(w.from_word(x.word()), x.clone());
        let (len, word) = w.length_and_canonical_word(x.matrix(), u.len()).unwrap();
        prop_assert_eq!(len, x.length());
        prop_assert_eq!(word.as_slice(), x.word());
    }

    #[test]
    fn products_and_inverses((k, u, v) in system_and_words()) {
        let w = CoxeterSystem::new(systems()[k].clone());
        let (x, y) = (w.from_word(&u), w.from_word(&v));
        let mut uv = u.clone();
        uv.extend(&v);
        let (xy, direct) = (w.mul(&x, &y), w.from_word(&uv));
        prop_assert_eq!(&xy, &direct);
        prop_assert_eq!(xy.word(), direct.word());
        prop_assert!(w.mul(&x, &w.inverse(&x)).is_identity());
        prop_assert_eq!(w.inverse(&x).length(), x.length());
        prop_assert_eq!(w.mul(&w.mul(&x, &y), &x), w.mul(&x, &w.mul(&y, &x)));
    }

    #[test]
    fn the_form_is_invariant((k, u, _) in system_and_words()) {
        let w = CoxeterSystem::new(systems()[k].clone());
        let x = w.from_word(&u);
        let n = w.rank();
        for i in 0..n {
            for j in 0..n {
                let (xi, xj) = (w.act(&x, &w.simple_root(i)), w.act(&x, &w.simple_root(j)));
                let mut b = w.scalar(0);
                for p in 0..n {
                    for q in 0..n {
                        b = &b + &(&(w.form2(p, q) * &xi.coords()[p]) * &xj.coords()[q]);
                    }
                }
                prop_assert_eq!(&b, w.form2(i, j));
            }
        }
    }

    #[test]
    fn descents_shorten((k, u, _) in system_and_words()) {
        let w = CoxeterSystem::new(systems()[k].clone());
        let x = w.from_word(&u);
        for i in 0..w.rank() {
            let shorter = w.mul_simple(&x, i).length() < x.length();
            prop_assert_eq!(shorter, x.has_right_descent(i));
        }
    }
}

/// All reduced words of `x`, by peeling left descents.
fn reduced_words(w: &CoxeterSystem, x: &GroupElement) -> Vec<Vec<usize>> {
    if x.is_identity() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for i in 0..w.rank() {
        let shorter = w.simple_mul(i, x);
        if shorter.length() < x.length() {
            for mut rest in reduced_words(w, &shorter) {
                rest.insert(0, i);
                out.push(rest);
            }
        }
    }
    out
}

#[test]
fn canonical_words_are_lexicographically_least() {
    for d in [catalogue::a(3), catalogue::b(3), catalogue::dihedral(5)] {
        let w = CoxeterSystem::new(d);
        for x in w.enumerate_group(100).unwrap() {
            let words = reduced_words(&w, &x);
            assert!(words.iter().all(|u| w.from_word(u) == x));
            assert_eq!(x.word(), words.iter().min().unwrap().as_slice());
        }
    }
}
