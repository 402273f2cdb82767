mod common;

use common::*;
use dwlab_core::approx::{approx_degreewidth, degreewidth_bounds};
use dwlab_core::domset::{
    components_are_ordered, fpt_dominating_set, greedy_dominating_set, lopsided_universal_family,
    FamilyMode,
};
use dwlab_core::generators::{acyclic, random, rotational};
use dwlab_core::oracles::{cutwidth_tournament, exact_degreewidth, exact_min_ds, Caps};
use dwlab_core::{Ordering, VertexSet};
use rand::Rng;

#[test]
fn approximation_ratio_exhaustive_small() {
    let mut tight = false;
    for n in 1..=6 {
        for t in all_tournaments(n) {
            let exact = exact_degreewidth(&t, &Caps::default()).unwrap().value;
            let (w, sigma) = approx_degreewidth(&t);
            assert_eq!(naive_width(&t, sigma.perm()), w);
            assert!(w <= 3 * exact, "{t:?}");
            tight |= exact > 0 && w == 3 * exact;
        }
    }
    assert!(tight, "no instance with ratio exactly 3");
}

#[test]
fn approximation_ordering_minimizes_cutwidth() {
    let mut rng = rng(31);
    for _ in 0..300 {
        let t = random(rng.random_range(2..=12), rng.random()).unwrap();
        let (_, sigma) = approx_degreewidth(&t);
        assert_eq!(naive_max_cut(&t, sigma.perm()), cutwidth_tournament(&t).0);
        assert_eq!(approx_degreewidth(&t), approx_degreewidth(&t));
    }
}

#[test]
fn bounds_report_is_consistent() {
    let r2 = degreewidth_bounds(&rotational(2).unwrap(), &Caps::default());
    assert_eq!(r2.lower_min_indegree, 2);
    let t = random(12, 7).unwrap();
    let report = degreewidth_bounds(&t, &Caps::default());
    let exact = exact_degreewidth(&t, &Caps::default()).unwrap().value;
    assert!(report.lower_min_indegree <= exact && exact <= report.best_upper());
    assert!(report.upper_fas.is_some());
    let big = degreewidth_bounds(&random(40, 1).unwrap(), &Caps::default());
    assert_eq!(big.upper_fas, None);
}

#[test]
fn greedy_dominating_set_size() {
    let mut rng = rng(32);
    for _ in 0..500 {
        let n = rng.random_range(1..=14);
        let t = random(n, rng.random()).unwrap();
        let sigma = Ordering::new(shuffled(n, &mut rng)).unwrap();
        let set = greedy_dominating_set(&t, &sigma).unwrap();
        assert!(naive_dominates(&t, &set));
        assert!(set.len() <= naive_width(&t, sigma.perm()) + 1);
    }
}

#[test]
fn fpt_matches_exact_feasibility() {
    let mut rng = rng(33);
    for _ in 0..60 {
        let n = rng.random_range(2..=10);
        let t = random(n, rng.random()).unwrap();
        let gamma = exact_min_ds(&t, &Caps::default()).unwrap().value;
        for s in 1..=3 {
            let out = fpt_dominating_set(&t, s, FamilyMode::Exhaustive).unwrap();
            assert_eq!(out.set.is_some(), gamma <= s, "{t:?} s={s}");
            if let Some(set) = out.set {
                assert!(set.len() <= s && naive_dominates(&t, &set));
            }
        }
    }
}

#[test]
fn randomized_family_answers_are_sound() {
    let mut rng = rng(34);
    for _ in 0..40 {
        let n = rng.random_range(4..=16);
        let t = random(n, rng.random()).unwrap();
        let out = fpt_dominating_set(&t, 3, FamilyMode::randomized(rng.random())).unwrap();
        if let Some(set) = out.set {
            assert!(set.len() <= 3 && naive_dominates(&t, &set));
        }
    }
}

#[test]
fn components_never_point_back() {
    let mut rng = rng(35);
    for _ in 0..500 {
        let n = rng.random_range(1..=10);
        let t = random(n, rng.random()).unwrap();
        let sigma = Ordering::new(shuffled(n, &mut rng)).unwrap();
        let f = VertexSet::from_iter_with_capacity(n, (0..n).filter(|_| rng.random_bool(0.6)));
        let comps = t.scc_in_order(&sigma, &f).unwrap();
        assert!(components_are_ordered(&t, &comps));
        let mut all: Vec<usize> = comps.concat();
        all.sort_unstable();
        assert_eq!(all, f.to_vec());
        for c in &comps {
            assert!(c.windows(2).all(|w| sigma.pos(w[0]) < sigma.pos(w[1])));
        }
    }
    let acyc = acyclic(5).unwrap();
    let comps = acyc
        .scc_in_order(&Ordering::identity(5), &VertexSet::full(5))
        .unwrap();
    assert_eq!(comps, (0..5).map(|v| vec![v]).collect::<Vec<_>>());
}

#[test]
fn small_families_verify() {
    for (n, p, q) in [(5, 1, 2), (6, 2, 2), (7, 2, 3)] {
        assert!(lopsided_universal_family(n, p, q, FamilyMode::Exhaustive)
            .unwrap()
            .verify());
        assert!(
            lopsided_universal_family(n, p, q, FamilyMode::randomized(9))
                .unwrap()
                .verify()
        );
    }
}
