use std::collections::{HashMap, HashSet, VecDeque};

use proptest::prelude::*;
use titscone_core::diagram::catalogue;
use titscone_core::garside::Garside;
use titscone_core::{Bond, CoxeterDiagram, CoxeterSystem};

/// All positive words equal to `word` in the monoid, by closing under the
/// braid relations `aba… = bab…` (`m_ab` letters each side).
fn braid_class(d: &CoxeterDiagram, word: &[usize]) -> HashSet<Vec<usize>> {
    let n = d.rank();
    let mut seen = HashSet::from([word.to_vec()]);
    let mut queue = VecDeque::from([word.to_vec()]);
    while let Some(w) = queue.pop_front() {
        for a in 0..n {
            for b in 0..n {
                let Bond::Finite(m) = d.bond(a, b) else { continue };
                if a == b {
                    continue;
                }
                let m = m as usize;
                if m > w.len() {
                    continue;
                }
                let side = |x: usize, y: usize| -> Vec<usize> {
                    (0..m).map(|k| if k % 2 == 0 { x } else { y }).collect()
                };
                let (from, to) = (side(a, b), side(b, a));
                for start in 0..=w.len() - m {
                    if w[start..start + m] == from[..] {
                        let mut v = w.clone();
                        v.splice(start..start + m, to.iter().copied());
                        if seen.insert(v.clone()) {
                            queue.push_back(v);
                        }
                    }
                }
            }
        }
    }
    seen
}

fn all_words(letters: usize, len: usize) -> Vec<Vec<usize>> {
    (0..letters.pow(len as u32))
        .map(|mut code| {
            (0..len)
                .map(|_| {
                    let l = code % letters;
                    code /= letters;
                    l
                })
                .collect()
        })
        .collect()
}

fn check_monoid_equality(d: CoxeterDiagram, len: usize) {
    let w = CoxeterSystem::new(d.clone());
    let g = Garside::new(&w).unwrap();
    let mut class_of: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut classes = 0;
    for word in all_words(d.rank(), len) {
        if class_of.contains_key(&word) {
            continue;
        }
        for v in braid_class(&d, &word) {
            class_of.insert(v, classes);
        }
        classes += 1;
    }
    let mut normal_forms: HashMap<Vec<Vec<usize>>, usize> = HashMap::new();
    for (word, &class) in &class_of {
        let nf = g.from_word(word).factor_words();
        if let Some(&other) = normal_forms.get(&nf) {
            assert_eq!(other, class, "{word:?} shares a normal form with another class");
        } else {
            normal_forms.insert(nf, class);
        }
    }
    assert_eq!(normal_forms.len(), classes);
}

#[test]
fn normal_forms_separate_braid_classes_in_a3() {
    check_monoid_equality(catalogue::a(3), 6);
}

#[test]
fn normal_forms_separate_braid_classes_in_b3() {
    check_monoid_equality(catalogue::b(3), 6);
}

#[test]
fn normal_forms_separate_braid_classes_in_i2_5() {
    check_monoid_equality(catalogue::dihedral(5), 9);
}

#[test]
fn delta_is_the_lift_of_the_longest_element() {
    for d in [catalogue::a(3), catalogue::h3(), catalogue::d4()] {
        let w = CoxeterSystem::new(d);
        let g = Garside::new(&w).unwrap();
        let w0 = w.longest_element(w.all_nodes()).unwrap();
        let delta = g.delta(w.all_nodes()).unwrap();
        assert_eq!(delta, g.positive_lift(&w0));
        assert_eq!(delta.factors().len(), 1);
        assert_eq!(delta.length(), w0.length());
        for i in 0..w.rank() {
            assert!(g.left_divides(&g.atom(i), &delta).unwrap());
        }
    }
}

#[test]
fn infinite_type_has_no_garside_structure() {
    let w = CoxeterSystem::new(catalogue::affine_a2());
    assert!(Garside::new(&w).is_err());
}

fn diagrams() -> Vec<CoxeterDiagram> {
    vec![catalogue::a(3), catalogue::b(3), catalogue::h3(), catalogue::dihedral(6)]
}

fn diagram_and_words() -> impl Strategy<Value = (usize, Vec<usize>, Vec<usize>)> {
    (0..diagrams().len()).prop_flat_map(|k| {
        let n = diagrams()[k].rank();
        (
            Just(k),
            prop::collection::vec(0..n, 0..10),
            prop::collection::vec(0..n, 0..10),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn normal_forms_are_left_weighted((k, u, _) in diagram_and_words()) {
        let w = CoxeterSystem::new(diagrams()[k].clone());
        let g = Garside::new(&w).unwrap();
        let x = g.from_word(&u);
        prop_assert_eq!(x.length(), u.len());
        for pair in x.factors().windows(2) {
            prop_assert!(pair[1].left_descents().is_subset(pair[0].right_descents()));
        }
        prop_assert_eq!(g.pi(&x), w.from_word(&u));
    }

    #[test]
    fn lcm_is_a_least_common_multiple((k, u, v) in diagram_and_words()) {
        let w = CoxeterSystem::new(diagrams()[k].clone());
        let g = Garside::new(&w).unwrap();
        let (x, y) = (g.from_word(&u), g.from_word(&v));
        let l = g.left_lcm(&x, &y).unwrap();
        prop_assert!(g.left_divides(&x, &l).unwrap());
        prop_assert!(g.left_divides(&y, &l).unwrap());
        prop_assert_eq!(&l, &g.left_lcm(&y, &x).unwrap());
        // Any common multiple, for instance x·y·x·y…, is divisible by the lcm
        // once it is a multiple of both.
        let xy = g.mul(&x, &y);
        if g.left_divides(&y, &xy).unwrap() {
            prop_assert!(g.left_divides(&l, &xy).unwrap());
        }
        let q = g.left_quotient(&x, &l).unwrap().unwrap();
        prop_assert_eq!(g.mul(&x, &q), l);
    }

    #[test]
    fn artin_group_arithmetic((k, u, v) in diagram_and_words()) {
        let w = CoxeterSystem::new(diagrams()[k].clone());
        let g = Garside::new(&w).unwrap();
        let (x, y) = (g.from_positive(&g.from_word(&u)), g.from_positive(&g.from_word(&v)));
        let quotient = g.group_mul(&x, &g.group_inverse(&y));
        prop_assert!(g.group_mul(&quotient, &y) == x);
        prop_assert!(g.group_mul(&g.group_inverse(&x), &x).is_identity());
        let pi = g.group_pi(&quotient);
        prop_assert_eq!(pi, w.mul(&w.from_word(&u), &w.inverse(&w.from_word(&v))));
    }
}
