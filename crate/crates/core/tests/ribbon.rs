use titscone_core::diagram::catalogue;
use titscone_core::garside::Garside;
use titscone_core::paths::{positive_path_equal, Path, PathEquality, SamplePoints};
use titscone_core::ribbon::{functor_g, kernel_presentation, mu, pi_bar_check, ribbon_presentation};
use titscone_core::{Arrangement, CoxeterSystem, NodeSet};

fn set(v: &[usize]) -> NodeSet {
    v.iter().copied().collect()
}

#[test]
fn mu_in_a2() {
    let w = CoxeterSystem::new(catalogue::a(2));
    let g = Garside::new(&w).unwrap();
    let arr = Arrangement::new(&w, set(&[0])).unwrap();
    assert_eq!(mu(&arr, &g, set(&[0]), 1).unwrap(), g.from_word(&[1, 0]));
    assert_eq!(mu(&arr, &g, set(&[1]), 0).unwrap(), g.from_word(&[0, 1]));
}

#[test]
fn delta_i_times_mu_is_delta_of_the_union() {
    for d in [catalogue::a(3), catalogue::b(3), catalogue::h3(), catalogue::d4()] {
        let w = CoxeterSystem::new(d.clone());
        let g = Garside::new(&w).unwrap();
        for bits in 0..(1u64 << d.rank()) {
            let i = NodeSet::from_bits(bits);
            let arr = Arrangement::new(&w, i).unwrap();
            for a in w.all_nodes().difference(i).iter() {
                let m = mu(&arr, &g, i, a).unwrap();
                let whole = g.delta(i.with(a)).unwrap();
                assert_eq!(g.mul(&g.delta(i).unwrap(), &m), whole);
            }
        }
    }
}

#[test]
fn ribbon_groupoid_of_a2_mod_1() {
    let w = CoxeterSystem::new(catalogue::a(2));
    let g = Garside::new(&w).unwrap();
    let arr = Arrangement::new(&w, set(&[0])).unwrap();
    let graph = arr.enumerate(None).unwrap();
    let r = ribbon_presentation(&arr, &g, &graph).unwrap();
    assert_eq!(r.groupoid.generators.len(), 2);
    assert!(r.groupoid.relations.is_empty());
    let vg = r.groupoid.vertex_group().unwrap();
    assert_eq!(vg.presentation.rank(), 1);
    assert!(vg.presentation.is_free());
    pi_bar_check(&arr, &r).unwrap();
    let k = kernel_presentation(&arr, &g, &r, 1000).unwrap();
    assert_eq!(k.quotient.len(), 1);
    assert_eq!(k.generators.len(), 1);
    assert!(k.presentation.is_free());
}

#[test]
fn empty_j_recovers_the_braid_presentation() {
    let w = CoxeterSystem::new(catalogue::a(3));
    let g = Garside::new(&w).unwrap();
    let arr = Arrangement::new(&w, NodeSet::EMPTY).unwrap();
    let graph = arr.enumerate(None).unwrap();
    let r = ribbon_presentation(&arr, &g, &graph).unwrap();
    let vg = r.groupoid.vertex_group().unwrap();
    assert_eq!(vg.presentation.rank(), 3);
    let mut lengths: Vec<usize> = vg.presentation.relators.iter().map(Vec::len).collect();
    lengths.sort_unstable();
    assert_eq!(lengths, vec![4, 6, 6]);
}

#[test]
fn single_crossings_map_to_mu() {
    let w = CoxeterSystem::new(catalogue::b(3));
    let g = Garside::new(&w).unwrap();
    let arr = Arrangement::new(&w, set(&[0])).unwrap();
    let graph = arr.enumerate(None).unwrap();
    for e in &graph.edges {
        let p = Path::new(e.from, vec![e.node]);
        let expected = mu(&arr, &g, graph.chambers[e.from].i, e.node).unwrap();
        assert_eq!(functor_g(&arr, &g, &graph, &p).unwrap(), expected);
    }
}

#[test]
fn positive_path_equality_in_a2() {
    let w = CoxeterSystem::new(catalogue::a(2));
    let arr = Arrangement::new(&w, NodeSet::EMPTY).unwrap();
    let graph = arr.enumerate(None).unwrap();
    let samples = SamplePoints::new(&arr, &graph).unwrap();
    let (p, q) = (Path::new(0, vec![0, 1, 0]), Path::new(0, vec![1, 0, 1]));
    assert_eq!(positive_path_equal(&arr, &graph, &samples, &p, &q, 100).unwrap(), PathEquality::Equal);
    let bounce = Path::new(0, vec![0, 0, 0]);
    let straight = Path::new(0, vec![0]);
    assert_eq!(
        positive_path_equal(&arr, &graph, &samples, &bounce, &straight, 100).unwrap(),
        PathEquality::NotEqual
    );
}
