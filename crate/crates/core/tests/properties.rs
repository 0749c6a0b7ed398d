use std::sync::Arc;

use partspec_core::finring::{
    centralizer, classify_elements, closure, make_gf, make_matrix_ring, make_triangular_ring, make_zmod, RingMap, RingTable,
};
use partspec_core::ks::{canonicalize, dot, QuadInt, Ray};
use partspec_core::partial::{is_partial_ideal, is_prime_partial_ideal, preimage_under_hom, PartialStructure};
use partspec_core::primespec::ring_homs;
use partspec_core::{Budget, ElementSet};
use proptest::prelude::*;

fn rings() -> Vec<Arc<RingTable>> {
    let f2 = Arc::new(make_gf(2, 1).unwrap());
    vec![
        Arc::new(make_matrix_ring(&f2, 2).unwrap()),
        Arc::new(make_triangular_ring(&f2, 3).unwrap()),
        Arc::new(make_matrix_ring(&Arc::new(make_gf(3, 1).unwrap()), 2).unwrap()),
        Arc::new(make_zmod(12).unwrap()),
    ]
}

fn subset(ring: &RingTable, picks: &[usize]) -> ElementSet {
    ElementSet::from_indices(ring.size(), picks.iter().map(|&p| p % ring.size()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closure_is_idempotent_and_monotone(which in 0usize..4, a in prop::collection::vec(0usize..1000, 0..3), b in prop::collection::vec(0usize..1000, 0..3)) {
        let r = &rings()[which];
        let s = subset(r, &a);
        let mut t = s.clone();
        t.union_with(&subset(r, &b));
        let cs = closure(r, &s);
        let again = closure(r, cs.members());
        prop_assert_eq!(again.members(), cs.members());
        prop_assert!(cs.members().is_subset(closure(r, &t).members()));
    }

    #[test]
    fn centralizer_laws(which in 0usize..4, a in prop::collection::vec(0usize..1000, 0..3), b in prop::collection::vec(0usize..1000, 0..2)) {
        let r = &rings()[which];
        let s = subset(r, &a);
        let mut t = s.clone();
        t.union_with(&subset(r, &b));
        let cs = centralizer(r, &s);
        prop_assert!(centralizer(r, &t).members().is_subset(cs.members()));
        prop_assert!(s.is_subset(centralizer(r, cs.members()).members()));
    }

    #[test]
    fn canonicalize_is_idempotent_and_scale_invariant(
        coords in prop::collection::vec((-3i64..=3, -3i64..=3), 3),
        scale in (-3i64..=3, -3i64..=3),
        other in prop::collection::vec((-3i64..=3, -3i64..=3), 3),
    ) {
        let v: Vec<QuadInt> = coords.iter().map(|&(a, b)| QuadInt::new(a, b)).collect();
        let k = QuadInt::new(scale.0, scale.1);
        prop_assume!(v.iter().any(|c| !c.is_zero()) && !k.is_zero());
        let r = canonicalize(&v).unwrap();
        prop_assert_eq!(&canonicalize(r.coords()).unwrap(), &r);
        let scaled: Vec<QuadInt> = v.iter().map(|&c| c * k).collect();
        prop_assert_eq!(&canonicalize(&scaled).unwrap(), &r);
        let w: Vec<QuadInt> = other.iter().map(|&(a, b)| QuadInt::new(a, b)).collect();
        prop_assume!(w.iter().any(|c| !c.is_zero()));
        let s = Ray::new(w.clone()).unwrap();
        let raw = v.iter().zip(&w).fold(QuadInt::ZERO, |acc, (&x, &y)| acc + x * y);
        prop_assert_eq!(dot(&r, &s).unwrap().is_zero(), raw.is_zero());
    }
}

#[test]
fn hom_composition_and_preimage_stability() {
    let budget = Budget::unlimited();
    let z12 = Arc::new(make_zmod(12).unwrap());
    let z6 = Arc::new(make_zmod(6).unwrap());
    let z2 = Arc::new(make_zmod(2).unwrap());
    for f in ring_homs(&z12, &z6, &budget).unwrap() {
        for g in ring_homs(&z6, &z2, &budget).unwrap() {
            let h = f.then(&g).unwrap();
            assert!(h.is_ring_hom());
            let p = ElementSet::from_indices(2, [0]);
            let q = preimage_under_hom(&h, &p).unwrap();
            let s = PartialStructure::standard(&z12);
            assert!(is_partial_ideal(&s, &q));
            assert!(is_prime_partial_ideal(&s, &q).unwrap());
        }
    }
}

#[test]
fn idempotent_complements_and_unit_nilpotent_disjointness() {
    for r in rings() {
        let c = classify_elements(&r);
        for e in c.idempotents.iter() {
            assert!(c.idempotents.contains(r.sub(r.one(), e)));
        }
        assert!(c.units.intersection(&c.nilpotents).is_empty());
    }
    let m = &rings()[0];
    let c = classify_elements(m);
    assert_eq!((c.idempotents.len(), c.nilpotents.len(), c.units.len()), (8, 4, 6));
}

#[test]
fn maximal_iff_self_centralizing() {
    use partspec_core::commlattice::enumerate_commutative_subrings;
    use partspec_core::ExecMode;
    for r in rings() {
        let lat = enumerate_commutative_subrings(&r, &Budget::unlimited(), ExecMode::default()).unwrap();
        for (i, c) in lat.subrings().iter().enumerate() {
            let self_centralizing = centralizer(&r, c.members()).members() == c.members();
            assert_eq!(lat.maximal().contains(&i), self_centralizing, "{} subring {i}", r.label());
        }
    }
}

#[test]
fn identity_is_a_hom() {
    for r in rings() {
        assert!(RingMap::identity(&r).is_ring_hom());
    }
}
