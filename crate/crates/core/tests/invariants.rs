//! Cross-module invariants on random and exhaustive inputs.

use std::collections::HashSet;

use num_integer::Integer;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cyclotope::arith::NatSet;
use cyclotope::facets3::{
    canonical_triples, checkerboard_count, checkerboard_face_spec, checkerboard_vertex_set, face_criterion_holds,
    face_criterion_functional, nonessential_facets, AbcSpec, CertStatus, CheckerboardTriple,
};
use cyclotope::group::vertex_degree;
use cyclotope::hull::{edge_count, HRepresentation, HullBudget, PointConfiguration};
use cyclotope::structure::{classify, dimension_roots_of_unity};
use cyclotope::CycleType;

fn check_triple(spec: &AbcSpec, t: &CheckerboardTriple) {
    let fs = checkerboard_face_spec(spec, t);
    assert!(face_criterion_holds(spec, &fs));
    let cert = face_criterion_functional(spec, &fs).unwrap();
    assert_eq!(cert.status, CertStatus::VerifiedFacet, "{t:?}");
    let vertices = checkerboard_vertex_set(spec, t);
    assert_eq!(cert.tight, vertices);
    let (i, j, k) = (t.i().len() as u64, t.j().len() as u64, t.k().len() as u64);
    let expected = spec.vertex_count() - i * j * k - (spec.a() - i) * (spec.b() - j) * (spec.c() - k);
    assert_eq!(vertices.len() as u64, expected);
    let c = t.complement(spec);
    assert_eq!(face_criterion_functional(spec, &checkerboard_face_spec(spec, &c)).unwrap().tight, cert.tight);
}

#[test]
fn checkerboard_certificates_exhaustive_for_small_families() {
    for (a, b, c) in [(2, 3, 5), (2, 3, 7), (3, 4, 5)] {
        let spec = AbcSpec::new(a, b, c).unwrap();
        assert!(checkerboard_count(&spec).unwrap() <= 2000);
        let triples = canonical_triples(&spec, 2000).unwrap();
        let mut seen = HashSet::new();
        for t in &triples {
            check_triple(&spec, t);
            assert!(seen.insert(checkerboard_vertex_set(&spec, t)));
        }
        for cert in nonessential_facets(&spec) {
            assert!(seen.insert(cert.tight), "nonessential facet repeats a checkerboard facet");
        }
        assert_eq!(seen.len() as u128, cyclotope::facets3::facet_lower_bound(&spec).unwrap());
    }
}

#[test]
fn checkerboard_certificates_sampled_for_larger_families() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (a, b, c) in [(2, 5, 7), (2, 5, 9)] {
        let spec = AbcSpec::new(a, b, c).unwrap();
        assert!(checkerboard_count(&spec).unwrap() > 2000);
        for _ in 0..200 {
            let mut pick = |size: u64| -> NatSet {
                loop {
                    let set: NatSet = (0..size).filter(|_| rng.gen_bool(0.5)).collect();
                    if !set.is_empty() && (set.len() as u64) < size {
                        return set;
                    }
                }
            };
            let t = CheckerboardTriple::new(&spec, pick(a), pick(b), pick(c)).unwrap();
            check_triple(&spec, &t);
            assert_eq!(checkerboard_vertex_set(&spec, &t.canonical(&spec)), checkerboard_vertex_set(&spec, &t));
        }
    }
}

fn small_cycle_type() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(1u64..9, 1..4).prop_filter("few vertices", |ls| {
        ls.iter().fold(1u64, |acc, &l| acc.lcm(&l)) <= 60
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hull_agrees_with_closed_forms(lengths in small_cycle_type()) {
        let ct = CycleType::new(lengths).unwrap();
        let config = PointConfiguration::from_cycle_type(&ct).unwrap();
        let h = config.facets(&HullBudget::default()).unwrap();
        prop_assert_eq!(h.dim() as u64, dimension_roots_of_unity(&ct));
        prop_assert!(h.verify(&config).is_ok());
        if let Some(facts) = classify(&ct).facts {
            prop_assert_eq!(h.inequalities.len() as u64, facts.facet_count);
        }
        let round_trip = HRepresentation::from_text(&h.to_text()).unwrap();
        prop_assert_eq!(&round_trip, &h);
        prop_assert_eq!(HRepresentation::from_json(&h.to_json()).unwrap(), h);
    }

    #[test]
    fn edges_match_degree(lengths in small_cycle_type()) {
        let ct = CycleType::new(lengths).unwrap();
        let points = cyclotope::embed::all_vertices(&ct).unwrap();
        let edges = edge_count(&points, 10_000).unwrap();
        prop_assert_eq!(2 * edges, points.len() as u64 * vertex_degree(&ct).unwrap());
    }
}
