mod common;

use std::time::Instant;

use common::*;
use dwlab_core::generators::{dominate_join, random, u_tournament};
use dwlab_core::oracles::{brute_sparse_orderings, exact_degreewidth, exact_fas, Caps};
use dwlab_core::reductions::{cubic_to_fvst, CubicGraph};
use dwlab_core::sparse::{
    canonical_u_ordering, eliminate_forbidden_patterns, fast_sparse, find_forbidden_pattern,
    is_m_sparse, sparse_certificate, CanonicalKind, SparseCertificate,
};
use dwlab_core::{Ordering, Tournament, VertexSet};
use rand::Rng;

fn caps() -> Caps {
    Caps::default()
}

fn check_certificate(t: &Tournament, m: &VertexSet, cert: &SparseCertificate) {
    let deg = naive_degrees(t, cert.ordering.perm());
    assert!(deg.iter().all(|&d| d <= 1), "certificate is not sparse");
    assert!(
        m.iter().all(|v| deg[v] == 0),
        "certificate uses a protected vertex"
    );
    let mut seen: Vec<usize> = cert
        .blocks
        .iter()
        .flat_map(|b| b.vertices.clone())
        .collect();
    seen.sort_unstable();
    assert_eq!(
        seen,
        (0..t.n()).collect::<Vec<_>>(),
        "blocks do not partition"
    );
}

#[test]
fn u_tournaments_have_the_canonical_sparse_orderings() {
    for n in 3..=9 {
        let t = u_tournament(n).unwrap();
        let mut found = brute_sparse_orderings(&t, &caps()).unwrap();
        found.sort_by(|a, b| a.perm().cmp(b.perm()));
        let mut expected: Vec<Ordering> = CanonicalKind::ALL
            .iter()
            .filter(|k| k.fits(n))
            .map(|&k| canonical_u_ordering(k, n).unwrap())
            .collect();
        expected.sort_by(|a, b| a.perm().cmp(b.perm()));
        expected.dedup();
        assert_eq!(found, expected, "U_{n}");
        assert_eq!(found.len(), if n <= 4 { 3 } else { 2 }, "U_{n}");
    }
}

#[test]
fn sparse_positions_follow_in_degrees() {
    let mut rng = rng(21);
    let mut checked = 0;
    for _ in 0..400 {
        let n = rng.random_range(3..=9);
        let t = random_composite(n, &mut rng);
        for sigma in brute_sparse_orderings(&t, &caps()).unwrap() {
            for (p, &v) in sigma.perm().iter().enumerate() {
                let d = t.in_degree(v);
                let pos = p + 1;
                assert!(
                    pos >= d && pos <= d + 2,
                    "vertex {v} with in-degree {d} at {pos}"
                );
            }
            checked += 1;
        }
    }
    assert!(checked > 100);
}

#[test]
fn u_tournament_endpoints_and_no_increasing_pair() {
    for n in 3..=9 {
        let t = u_tournament(n).unwrap();
        for sigma in brute_sparse_orderings(&t, &caps()).unwrap() {
            // Π₂(U₃) and Π′(U₄) are the exceptions
            if n >= 5 {
                assert!(sigma.pos(0) <= 1, "v1 placement in U_{n}");
                assert!(sigma.pos(n - 1) >= n - 2, "vn placement in U_{n}");
            }
            assert!(sigma.perm().windows(2).all(|w| w[1] != w[0] + 1));
        }
    }
}

#[test]
fn recognition_matches_degreewidth_exhaustively() {
    for n in 1..=6 {
        for t in all_tournaments(n) {
            let sparse = exact_degreewidth(&t, &caps()).unwrap().value <= 1;
            let cert = is_m_sparse(&t, &VertexSet::new(n));
            assert_eq!(cert.is_some(), sparse, "{t:?}");
            if let Some(cert) = cert {
                check_certificate(&t, &VertexSet::new(n), &cert);
            }
        }
    }
}

#[test]
fn recognition_matches_degreewidth_on_random_inputs() {
    let mut rng = rng(22);
    let mut positives = 0;
    for i in 0..10_000 {
        let size = rng.random_range(7..=9);
        let t = if i % 2 == 0 {
            random(size, rng.random()).unwrap()
        } else {
            random_composite(size, &mut rng)
        };
        let n = t.n();
        let sparse = exact_degreewidth(&t, &caps()).unwrap().value <= 1;
        let cert = sparse_certificate(&t);
        assert_eq!(cert.is_some(), sparse, "{t:?}");
        if let Some(cert) = cert {
            check_certificate(&t, &VertexSet::new(n), &cert);
            positives += 1;
        }
    }
    assert!(positives > 1000);
}

#[test]
fn protected_sets_match_brute_force() {
    let mut rng = rng(23);
    for _ in 0..1500 {
        let t = random_composite(rng.random_range(2..=8), &mut rng);
        let n = t.n();
        let m = VertexSet::from_iter_with_capacity(n, (0..n).filter(|_| rng.random_bool(0.25)));
        let brute = brute_sparse_orderings(&t, &caps())
            .unwrap()
            .into_iter()
            .any(|sigma| {
                let deg = naive_degrees(&t, sigma.perm());
                m.iter().all(|v| deg[v] == 0)
            });
        let cert = is_m_sparse(&t, &m);
        assert_eq!(cert.is_some(), brute, "{t:?} M={m:?}");
        if let Some(cert) = cert {
            check_certificate(&t, &m, &cert);
        }
    }
}

#[test]
fn restriction_preserves_sparseness() {
    let mut rng = rng(24);
    let mut checked = 0;
    for _ in 0..1500 {
        let t = random_composite(rng.random_range(3..=9), &mut rng);
        let n = t.n();
        let m = VertexSet::from_iter_with_capacity(n, (0..n).filter(|_| rng.random_bool(0.2)));
        if is_m_sparse(&t, &m).is_none() {
            continue;
        }
        let keep: Vec<usize> = (0..n).filter(|_| rng.random_bool(0.6)).collect();
        if keep.is_empty() {
            continue;
        }
        let sub = t.induced(&keep).unwrap();
        let sub_m = VertexSet::from_iter_with_capacity(
            keep.len(),
            (0..keep.len()).filter(|&i| m.contains(keep[i])),
        );
        assert!(is_m_sparse(&sub.tournament, &sub_m).is_some());
        checked += 1;
    }
    assert!(checked > 300);
}

#[test]
fn fast_sparse_is_minimum_on_composites() {
    let mut rng = rng(25);
    let mut checked = 0;
    while checked < 60 {
        let n = rng.random_range(4..=16);
        let t = random_composite(n, &mut rng);
        let Ok(fas) = fast_sparse(&t) else {
            continue;
        };
        assert_eq!(
            fas.arcs.len(),
            exact_fas(&t, &caps()).unwrap().value,
            "{t:?}"
        );
        assert_eq!(find_forbidden_pattern(&t, &fas.ordering).unwrap(), None);
        let mut removed = fas.arcs.clone();
        removed.sort_unstable();
        let flipped = Tournament::from_fn(t.n(), |u, v| {
            let rev =
                removed.binary_search(&(u, v)).is_ok() || removed.binary_search(&(v, u)).is_ok();
            t.has_arc(u, v) != rev
        })
        .unwrap();
        assert!(acyclic_after_removing(&flipped, &[]));
        checked += 1;
    }
}

#[test]
fn pattern_elimination_on_long_u_tournaments() {
    for k in 1..=12 {
        let n = 2 * k;
        let t = u_tournament(n).unwrap();
        let pi = canonical_u_ordering(CanonicalKind::Pi, n).unwrap();
        let fixed = eliminate_forbidden_patterns(&t, &pi).unwrap();
        assert_eq!(fixed, canonical_u_ordering(CanonicalKind::Pi1n, n).unwrap());
        assert_eq!(naive_backward_count(&t, pi.perm()), k);
        assert_eq!(naive_backward_count(&t, fixed.perm()), k - 1);
    }
}

/// Greedy packing of arc-disjoint triangles; every feedback arc set hits each.
fn triangle_packing(t: &Tournament) -> usize {
    let n = t.n();
    let mut used = std::collections::HashSet::new();
    let mut count = 0;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if a < b && a < c && t.has_arc(a, b) && t.has_arc(b, c) && t.has_arc(c, a) {
                    let arcs = [(a, b), (b, c), (c, a)];
                    if arcs.iter().all(|e| !used.contains(e)) {
                        used.extend(arcs);
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

#[test]
fn construction_two_fas_meets_packing_bound() {
    for g in [CubicGraph::complete4(), CubicGraph::complete_bipartite33()] {
        let inst = cubic_to_fvst(&g).unwrap();
        let fas = fast_sparse(&inst.tournament).unwrap();
        let packing = triangle_packing(&inst.tournament);
        assert!(fas.arcs.len() >= packing);
        assert_eq!(
            fas.arcs.len(),
            packing,
            "tagged backward arcs are pairwise far apart"
        );
        assert!(is_m_sparse(&inst.tournament, &VertexSet::new(inst.tournament.n())).is_some());
    }
}

fn chain_composite(n: usize) -> Tournament {
    let mut blocks = Vec::new();
    let mut left = n;
    let mut size = 2;
    while left > 0 {
        let s = size.min(left);
        blocks.push(u_tournament(s.max(2)).unwrap());
        if s == 1 {
            blocks.pop();
            blocks.push(dwlab_core::generators::acyclic(1).unwrap());
        }
        left -= s;
        size = size % 9 + 2;
    }
    dominate_join(&blocks, &[]).unwrap()
}

#[test]
fn recognition_scales_polynomially() {
    let time = |n: usize| {
        let t = chain_composite(n);
        let start = Instant::now();
        let cert = sparse_certificate(&t).expect("composite of U-blocks is sparse");
        let elapsed = start.elapsed().as_secs_f64();
        assert_eq!(cert.ordering.len(), n);
        elapsed
    };
    let small = time(500).max(1e-3);
    let large = time(1000);
    // cubic growth would give a factor of 8
    assert!(
        large / small < 24.0,
        "500 -> {small:.3}s, 1000 -> {large:.3}s"
    );
    assert!(time(2000) < 120.0);
}
