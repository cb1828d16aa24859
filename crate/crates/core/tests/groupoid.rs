use std::collections::BTreeSet;

use titscone_core::diagram::catalogue;
use titscone_core::groupoid::{bh_presentation, is_bh_morphism, objects_of, rank_two_lcm};
use titscone_core::{Arrangement, CoxeterSystem, GroupElement, NodeSet};

fn set(v: &[usize]) -> NodeSet {
    v.iter().copied().collect()
}

/// Whether `x·α_k` is a positive simple root in `target` for each `k`.
fn maps_simples(x: &GroupElement, from: NodeSet, target: NodeSet) -> bool {
    let w_images: Vec<Option<usize>> = from
        .iter()
        .map(|k| {
            let r = x.image_of_simple(k);
            let c = r.coords();
            let nonzero: Vec<usize> = (0..c.len()).filter(|&t| !c[t].is_zero()).collect();
            (nonzero.len() == 1 && c[nonzero[0]].is_one()).then(|| nonzero[0])
        })
        .collect();
    w_images.iter().all(|t| t.is_some_and(|t| target.contains(t)))
        && w_images.iter().collect::<BTreeSet<_>>().len() == from.len()
}

#[test]
fn morphism_examples_in_a2() {
    let w = CoxeterSystem::new(catalogue::a(2));
    assert!(is_bh_morphism(&w.from_word(&[1, 0]), set(&[0]), set(&[1])));
    assert!(is_bh_morphism(&w.identity(), set(&[0]), set(&[0])));
    assert!(!is_bh_morphism(&w.simple(0), set(&[0]), set(&[0])));
}

#[test]
fn hom_set_from_1_to_2_in_a2_is_a_singleton() {
    let w = CoxeterSystem::new(catalogue::a(2));
    let homs: Vec<GroupElement> = w
        .enumerate_group(10)
        .unwrap()
        .into_iter()
        .filter(|x| maps_simples(x, set(&[1]), set(&[0])))
        .collect();
    assert_eq!(homs, vec![w.from_word(&[1, 0])]);
}

#[test]
fn objects_are_the_associates_of_j() {
    for (name, d) in catalogue::finite_rank_at_most_3() {
        let w = CoxeterSystem::new(d.clone());
        let elements = w.enumerate_group(10_000).unwrap();
        for bits in 0..(1u64 << d.rank()) {
            let j = NodeSet::from_bits(bits);
            let arr = Arrangement::new(&w, j).unwrap();
            let g = arr.enumerate(None).unwrap();
            let objects: BTreeSet<u64> = objects_of(&g).iter().map(|i| i.bits()).collect();
            let brute: BTreeSet<u64> = (0..(1u64 << d.rank()))
                .map(NodeSet::from_bits)
                .filter(|i| i.len() == j.len())
                .filter(|&i| elements.iter().any(|x| maps_simples(x, i, j)))
                .map(|i| i.bits())
                .collect();
            assert_eq!(objects, brute, "{name}, J = {j:?}");
            assert_eq!(objects_of(&g)[0], j);
        }
    }
}

#[test]
fn braid_relations_are_the_lcms_with_empty_j() {
    for d in [catalogue::h3(), catalogue::b(3), catalogue::dihedral(7)] {
        let w = CoxeterSystem::new(d.clone());
        let arr = Arrangement::new(&w, NodeSet::EMPTY).unwrap();
        for a in 0..d.rank() {
            for b in a + 1..d.rank() {
                let l = rank_two_lcm(&arr, NodeSet::EMPTY, a, b).unwrap().unwrap();
                let m = match d.bond(a, b) {
                    titscone_core::Bond::Finite(m) => m as usize,
                    titscone_core::Bond::Infinite => unreachable!(),
                };
                let alternating = |x: usize, y: usize| -> Vec<usize> {
                    (0..m).map(|k| if k % 2 == 0 { x } else { y }).collect()
                };
                assert_eq!(l.first_nodes(), alternating(a, b));
                assert_eq!(l.second_nodes(), alternating(b, a));
                assert_eq!(l.element, w.longest_element(set(&[a, b])).unwrap());
            }
        }
    }
}

#[test]
fn a3_lcm_at_2_for_1_and_3() {
    let w = CoxeterSystem::new(catalogue::a(3));
    let arr = Arrangement::new(&w, set(&[1])).unwrap();
    let l = rank_two_lcm(&arr, set(&[1]), 0, 2).unwrap().unwrap();
    let w0 = w.longest_element(w.all_nodes()).unwrap();
    assert_eq!(l.element, w.mul_simple(&w0, 1));
    assert_eq!(l.element.length(), 5);
}

#[test]
fn no_lcm_across_an_infinite_bond() {
    let w = CoxeterSystem::new(catalogue::infinite_dihedral());
    let arr = Arrangement::new(&w, NodeSet::EMPTY).unwrap();
    assert!(rank_two_lcm(&arr, NodeSet::EMPTY, 0, 1).unwrap().is_none());
}

#[test]
fn vertex_group_of_a3_mod_2_is_cyclic_of_order_two() {
    let w = CoxeterSystem::new(catalogue::a(3));
    let arr = Arrangement::new(&w, set(&[1])).unwrap();
    let g = arr.enumerate(None).unwrap();
    let p = bh_presentation(&arr, &g).unwrap();
    assert_eq!(p.objects.len(), 3);
    let vg = p.vertex_group().unwrap();
    assert_eq!(vg.presentation.rank(), 1);
    assert_eq!(vg.presentation.relators.len(), 1);
    assert_eq!(vg.presentation.relators[0].len(), 2);
    assert_eq!(vg.presentation.order(100).unwrap(), 2);
}

#[test]
fn vertex_group_of_a2_mod_1_is_trivial() {
    let w = CoxeterSystem::new(catalogue::a(2));
    let arr = Arrangement::new(&w, set(&[0])).unwrap();
    let g = arr.enumerate(None).unwrap();
    let p = bh_presentation(&arr, &g).unwrap();
    assert_eq!(p.generators.len(), 2);
    assert_eq!(p.relations.len(), 1);
    assert_eq!(p.vertex_group().unwrap().presentation.order(10).unwrap(), 1);
}

#[test]
fn relations_hold_in_w() {
    for (d, j) in [(catalogue::b(3), vec![1]), (catalogue::h3(), vec![0]), (catalogue::d4(), vec![0, 2])] {
        let w = CoxeterSystem::new(d);
        let arr = Arrangement::new(&w, set(&j)).unwrap();
        let g = arr.enumerate(None).unwrap();
        let p = bh_presentation(&arr, &g).unwrap();
        let eval = |path: &[usize]| {
            w.product(
                path.iter()
                    .map(|&k| w.from_word(&p.generators[k].payload.concat()))
                    .collect::<Vec<_>>()
                    .iter(),
            )
        };
        for (lhs, rhs) in &p.relations {
            assert_eq!(eval(lhs), eval(rhs));
        }
    }
}

#[test]
fn coxeter_presentation_when_j_is_empty() {
    let w = CoxeterSystem::new(catalogue::b(3));
    let arr = Arrangement::new(&w, NodeSet::EMPTY).unwrap();
    let g = arr.enumerate(None).unwrap();
    let vg = bh_presentation(&arr, &g).unwrap().vertex_group().unwrap();
    assert_eq!(vg.presentation.rank(), 3);
    assert_eq!(vg.presentation.order(1000).unwrap(), 48);
}
