use std::sync::Arc;

use partspec_core::commlattice::{enumerate_commutative_subrings, LatticeCache};
use partspec_core::finring::{make_gf, make_matrix_ring, make_product, make_triangular_ring, make_zmod, RingBuilder, RingMap, RingTable};
use partspec_core::ks::{coloring_violation, RaySystem};
use partspec_core::obstruction::{build_report, ReportTargets};
use partspec_core::partial::partition_idempotents;
use partspec_core::primespec::{enumerate_partial_morphisms, part_spec, part_spec_map, ring_homs};
use partspec_core::{Budget, ExecMode};

fn arc(r: RingTable) -> Arc<RingTable> {
    Arc::new(r)
}

#[test]
fn sequential_and_parallel_agree() {
    let r = arc(make_matrix_ring(&arc(make_gf(3, 1).unwrap()), 2).unwrap());
    let seq = enumerate_commutative_subrings(&r, &Budget::unlimited(), ExecMode::Sequential).unwrap();
    let par = enumerate_commutative_subrings(&r, &Budget::unlimited(), ExecMode::Parallel).unwrap();
    assert_eq!(seq.subrings(), par.subrings());
    let a = part_spec(&seq, &Budget::unlimited(), ExecMode::Sequential).unwrap();
    let b = part_spec(&par, &Budget::unlimited(), ExecMode::Parallel).unwrap();
    assert_eq!(a.to_json(), b.to_json());
}

#[test]
fn cache_roundtrip_through_pipeline() {
    let r = arc(make_matrix_ring(&arc(make_gf(2, 1).unwrap()), 2).unwrap());
    let lat = enumerate_commutative_subrings(&r, &Budget::unlimited(), ExecMode::default()).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let cache = LatticeCache::new(dir.path());
    cache.store(&lat).unwrap();
    let back = cache.load(&r).unwrap();
    assert_eq!(back.subrings(), lat.subrings());
    assert_eq!(back.maximal(), lat.maximal());
}

#[test]
fn commutative_morphism_count_matches_homs() {
    let f2 = arc(make_gf(2, 1).unwrap());
    for c in [arc(make_zmod(12).unwrap()), arc(make_product(&f2, &f2).unwrap()), arc(make_gf(2, 2).unwrap())] {
        let lat = enumerate_commutative_subrings(&c, &Budget::unlimited(), ExecMode::default()).unwrap();
        let pm = enumerate_partial_morphisms(&lat, &f2, &Budget::unlimited(), ExecMode::default()).unwrap();
        let homs = ring_homs(&c, &f2, &Budget::unlimited()).unwrap();
        assert_eq!(pm.morphisms.len(), homs.len(), "{}", c.label());
    }
}

#[test]
fn morphism_kernels_lie_in_part_spec() {
    let f2 = arc(make_gf(2, 1).unwrap());
    let t = arc(make_triangular_ring(&f2, 2).unwrap());
    let lat = enumerate_commutative_subrings(&t, &Budget::unlimited(), ExecMode::default()).unwrap();
    let ps = part_spec(&lat, &Budget::unlimited(), ExecMode::default()).unwrap();
    let pm = enumerate_partial_morphisms(&lat, &f2, &Budget::unlimited(), ExecMode::default()).unwrap();
    assert!(pm.morphisms.len() >= 2);
    for f in &pm.morphisms {
        assert!(ps.index_of(&f.kernel()).is_some());
    }
    // on this split ring, a morphism is determined by its values on idempotents
    let parts = partition_idempotents(&t).unwrap();
    let idem: Vec<usize> = parts.trivial.iter().chain(&parts.chosen).copied().collect();
    for (i, f) in pm.morphisms.iter().enumerate() {
        for g in &pm.morphisms[i + 1..] {
            assert!(idem.iter().any(|&e| f.apply(e) != g.apply(e)));
        }
    }
}

#[test]
fn diagonal_inclusion_pulls_back_to_two_primes() {
    let f2 = arc(make_gf(2, 1).unwrap());
    let d = arc(make_product(&f2, &f2).unwrap());
    let m = arc(make_matrix_ring(&f2, 2).unwrap());
    let g = RingMap::from_fn(&d, &m, |x| m.matrix_element(&[x / 2, 0, 0, x % 2]).unwrap()).unwrap();
    let pd = part_spec(&enumerate_commutative_subrings(&d, &Budget::unlimited(), ExecMode::default()).unwrap(), &Budget::unlimited(), ExecMode::default()).unwrap();
    let pm = part_spec(&enumerate_commutative_subrings(&m, &Budget::unlimited(), ExecMode::default()).unwrap(), &Budget::unlimited(), ExecMode::default()).unwrap();
    let map = part_spec_map(&g, &pd, &pm).unwrap();
    assert_eq!(map.len(), 8);
    assert!(map.iter().all(|&i| i < 2));
}

#[test]
fn ring_homs_realize_the_axes_coloring() {
    // a hom F2^3 -> F2 restricted to the coordinate idempotents colors the
    // three axes, the commutative shadow of the bridge to ray colorings
    let f2 = arc(make_gf(2, 1).unwrap());
    let cube = arc(RingBuilder::default().power(&f2, 3).unwrap());
    let axes = RaySystem::axes(3).unwrap();
    let homs = ring_homs(&cube, &f2, &Budget::unlimited()).unwrap();
    assert_eq!(homs.len(), 3);
    for h in &homs {
        // coordinate idempotent e_i has digit 1 in position i, most significant first
        let witness: Vec<u8> = (0..3).map(|i| h.apply(1 << (2 - i)) as u8).collect();
        // axes are sorted descending by coordinate position
        let by_ray: Vec<u8> = axes
            .rays()
            .iter()
            .map(|r| witness[r.coords().iter().position(|c| !c.is_zero()).unwrap()])
            .collect();
        assert_eq!(coloring_violation(&axes, &by_ray).unwrap(), None);
    }
}

#[test]
fn default_report_is_verified() {
    let targets = ReportTargets::paper_default().unwrap();
    let report = build_report(&targets, Budget::default, ExecMode::default()).unwrap();
    for c in &report.claims {
        assert_eq!(c.status, partspec_core::obstruction::ClaimStatus::Verified, "{} {}", c.id, c.detail);
    }
    assert_eq!(report.verdict, Some(true));
    assert!(report.claim("ks.peres.unsat").is_some());
    assert!(report.claim("morita.corner.F2.n2").is_some());
    assert_eq!(report.claim("partspec.M2(F2)").unwrap().detail["count"], 8);
    assert_eq!(report.claim("morphisms.M2(F2).F2").unwrap().detail["count"], 0);
}

#[test]
fn verdict_is_withheld_without_peres_or_with_truncation() {
    let mut targets = ReportTargets::paper_default().unwrap();
    targets.rings.truncate(1);
    targets.morita.truncate(1);
    let mut no_ks = targets.clone();
    no_ks.ray_systems.clear();
    no_ks.lifts.clear();
    assert_eq!(build_report(&no_ks, Budget::default, ExecMode::default()).unwrap().verdict, None);
    let truncated = build_report(&targets, || Budget::new(3, None), ExecMode::default()).unwrap();
    assert_eq!(truncated.verdict, None);
}
