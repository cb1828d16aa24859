use std::collections::HashSet;

use titscone_core::diagram::catalogue;
use titscone_core::{Arrangement, ArrangementGraph, ChamberLabel, CoxeterSystem, NodeSet};

fn set(v: &[usize]) -> NodeSet {
    v.iter().copied().collect()
}

fn graph<'a>(w: &'a CoxeterSystem, j: &[usize], radius: Option<usize>) -> (Arrangement<'a>, ArrangementGraph) {
    let arr = Arrangement::new(w, set(j)).unwrap();
    let g = arr.enumerate(radius).unwrap();
    (arr, g)
}

#[test]
fn a2_mod_1_has_two_chambers() {
    let w = CoxeterSystem::new(catalogue::a(2));
    let (_, g) = graph(&w, &[0], None);
    let expected = vec![
        ChamberLabel::new(w.identity(), set(&[0])),
        ChamberLabel::new(w.from_word(&[1, 0]), set(&[1])),
    ];
    assert_eq!(g.chambers, expected);
    let e = g.edge_at(0, 1).unwrap();
    assert_eq!((e.to, e.element.word()), (1, &[1usize, 0][..]));
}

#[test]
fn a3_mod_2_has_two_chambers_per_associate() {
    let w = CoxeterSystem::new(catalogue::a(3));
    let (_, g) = graph(&w, &[1], None);
    assert_eq!(g.len(), 6);
    for k in 0..3 {
        assert_eq!(g.chambers.iter().filter(|c| c.i == set(&[k])).count(), 2);
    }
}

#[test]
fn infinite_dihedral_balls_are_segments() {
    let w = CoxeterSystem::new(catalogue::infinite_dihedral());
    for r in 1..=5 {
        let (_, g) = graph(&w, &[], Some(r));
        assert_eq!(g.len(), 2 * r + 1);
        assert!(!g.saturated);
        assert_eq!(g.distance.iter().max(), Some(&r));
    }
}

#[test]
fn radius_is_required_outside_finite_type() {
    let w = CoxeterSystem::new(catalogue::affine_a2());
    let arr = Arrangement::new(&w, set(&[0])).unwrap();
    assert!(matches!(arr.enumerate(None), Err(titscone_core::Error::RadiusRequired)));
}

/// `|Norm(W_J)| / |W_J|` in `S_4`, with `W_J` generated by adjacent
/// transpositions and conjugation done on permutations.
fn s4_normaliser_index(j: NodeSet) -> usize {
    fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
        q.iter().map(|&k| p[k]).collect()
    }
    fn inverse(p: &[usize]) -> Vec<usize> {
        let mut out = vec![0; p.len()];
        for (i, &k) in p.iter().enumerate() {
            out[k] = i;
        }
        out
    }
    let mut all = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = vec![a, b, c, d];
                    if p.iter().collect::<HashSet<_>>().len() == 4 {
                        all.push(p);
                    }
                }
            }
        }
    }
    let generators: Vec<Vec<usize>> = j
        .iter()
        .map(|i| {
            let mut t = vec![0, 1, 2, 3];
            t.swap(i, i + 1);
            t
        })
        .collect();
    let mut subgroup: HashSet<Vec<usize>> = HashSet::from([vec![0, 1, 2, 3]]);
    loop {
        let grown: HashSet<Vec<usize>> = subgroup
            .iter()
            .flat_map(|p| generators.iter().map(move |t| compose(p, t)))
            .chain(subgroup.iter().cloned())
            .collect();
        if grown.len() == subgroup.len() {
            break;
        }
        subgroup = grown;
    }
    let normaliser = all
        .iter()
        .filter(|g| {
            generators
                .iter()
                .all(|t| subgroup.contains(&compose(&compose(g, t), &inverse(g))))
        })
        .count();
    normaliser / subgroup.len()
}

#[test]
fn normaliser_quotients_of_a3() {
    let w = CoxeterSystem::new(catalogue::a(3));
    for bits in 0u64..8 {
        let j = NodeSet::from_bits(bits);
        let arr = Arrangement::new(&w, j).unwrap();
        let n = arr.normaliser_quotient(1000).unwrap();
        assert_eq!(n.len(), s4_normaliser_index(j), "J = {j:?}");
        assert!(n[0].is_identity());
    }
    let a2 = CoxeterSystem::new(catalogue::a(2));
    assert_eq!(Arrangement::new(&a2, set(&[0])).unwrap().normaliser_quotient(100).unwrap().len(), 1);
}

/// Adjacent chambers are separated by exactly one hyperplane of the
/// restricted arrangement, and distinct chambers never share a sign vector.
fn check_adjacency(arr: &Arrangement<'_>, g: &ArrangementGraph) {
    let hyperplanes = arr.hyperplanes_of_graph(g).unwrap();
    let signs: Vec<_> = g
        .chambers
        .iter()
        .map(|c| arr.sign_vector(c, &hyperplanes).unwrap())
        .collect();
    assert_eq!(signs.iter().collect::<HashSet<_>>().len(), g.len());
    for e in &g.edges {
        let differing = signs[e.from]
            .iter()
            .zip(&signs[e.to])
            .filter(|(a, b)| a != b)
            .count();
        assert_eq!(differing, 1, "edge {:?} -> {:?}", g.chambers[e.from], g.chambers[e.to]);
        assert!(arr.halfspace_crosscheck(&g.chambers[e.from], e.node).unwrap());
    }
}

#[test]
fn walls_separate_exactly_one_hyperplane() {
    for (_, d) in catalogue::finite_rank_at_most_3() {
        let w = CoxeterSystem::new(d.clone());
        for bits in 0..(1u64 << d.rank()) {
            let arr = Arrangement::new(&w, NodeSet::from_bits(bits)).unwrap();
            let g = arr.enumerate(None).unwrap();
            check_adjacency(&arr, &g);
        }
    }
    let w = CoxeterSystem::new(catalogue::affine_a2());
    let (arr, g) = graph(&w, &[0], Some(4));
    check_adjacency(&arr, &g);
}

#[test]
fn normaliser_action_commutes_with_wall_crossing() {
    for (d, j) in [(catalogue::a(3), vec![1]), (catalogue::b(3), vec![0]), (catalogue::d4(), vec![1])] {
        let w = CoxeterSystem::new(d);
        let (arr, g) = graph(&w, &j, None);
        let quotient = arr.normaliser_quotient(1000).unwrap();
        for n in &quotient {
            let image: HashSet<ChamberLabel> = g
                .chambers
                .iter()
                .map(|c| arr.normaliser_act(n, c).unwrap())
                .collect();
            assert_eq!(image.len(), g.len());
            for e in &g.edges {
                let moved = arr.normaliser_act(n, &g.chambers[e.from]).unwrap();
                let (crossed, v) = arr.simple_wall_crossing(&moved, e.node).unwrap().unwrap();
                assert_eq!(crossed, arr.normaliser_act(n, &g.chambers[e.to]).unwrap());
                assert_eq!(v, e.element);
            }
        }
    }
}

#[test]
fn every_root_misses_the_chamber_interiors() {
    let w = CoxeterSystem::new(catalogue::h3());
    let (arr, g) = graph(&w, &[2], None);
    let roots = w.positive_roots(w.all_nodes()).unwrap();
    for c in &g.chambers {
        let phi = arr.sample_point(c).unwrap();
        for r in &roots {
            let value = phi.pair(r);
            assert_eq!(value.is_zero(), !arr.is_j_root(r), "{c:?}");
        }
    }
}
