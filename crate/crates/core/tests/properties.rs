//! Property suites over randomly built semigroups.

mod common;

use pamona::format::{emit_semigroup, parse_semigroup};
use pamona::isotest::{are_isomorphic, isomorphisms};
use pamona::pam::{pa_monoid, pai_monoid, PaIso, PaOptions};
use pamona::props::{h_class_images_hold, nonisolated_images_exact};
use pamona::sublat::SubLattice;
use proptest::prelude::*;
use std::sync::Arc;

fn config() -> ProptestConfig {
    ProptestConfig { cases: 1000, failure_persistence: None, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn green_powers_and_inverses(s in common::semigroup(common::MAX_GENERATED)) {
        let bad = common::core_failures(&s);
        prop_assert!(bad.is_empty(), "{bad:?}");
    }

    #[test]
    fn lattice_members_and_atoms(s in common::semigroup(10)) {
        let bad = common::sublat_failures(&s, if s.order() <= 4 { 32 } else { 0 });
        prop_assert!(bad.is_empty(), "{bad:?}");
    }

    #[test]
    fn pa_is_inverse_monoid_over_sub(s in common::semigroup(4)) {
        let bad = common::pam_failures(&s, 16);
        prop_assert!(bad.is_empty(), "{bad:?}");
    }

    #[test]
    fn finite_inverse_bypasses(s in common::semigroup(common::MAX_GENERATED)) {
        let bad = common::props_failures(&s);
        prop_assert!(bad.is_empty(), "{bad:?}");
    }

    #[test]
    fn interchange_round_trip(s in common::semigroup(common::MAX_GENERATED)) {
        let back = parse_semigroup(&emit_semigroup(&s)).unwrap();
        prop_assert_eq!(back.table(), s.table());
    }

    #[test]
    fn relabelling_is_an_isomorphism(s in common::semigroup(8), keys in prop::collection::vec(any::<u32>(), 8)) {
        let n = s.order();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.sort_by_key(|&i| (keys[i], i));
        let t = s.permuted(&perm);
        let w = isomorphisms(&s, &t, Some(1));
        prop_assert!(w.first().is_some_and(|w| w.verify(&s, &t)));
        prop_assert!(are_isomorphic(&t, &s));
    }

    #[test]
    fn pa_automorphism_h_images(s in common::inverse_semigroup(5)) {
        let p = Arc::new(pa_monoid(&s, PaOptions::default()).unwrap());
        for phi in pamona::pam::pa_isomorphisms(&p, &p, Some(8)) {
            prop_assert!(h_class_images_hold(&phi).unwrap());
            prop_assert!(nonisolated_images_exact(&phi).unwrap());
        }
    }

    #[test]
    fn pai_restriction_is_a_pa_isomorphism(s in common::inverse_semigroup(5)) {
        let p = Arc::new(pa_monoid(&s, PaOptions::default()).unwrap());
        let restricted = PaIso::identity(&p).restrict_to_pai(PaOptions::default()).unwrap();
        let pai = pai_monoid(&s, PaOptions::default()).unwrap();
        prop_assert_eq!(restricted.from().order(), pai.order());
        prop_assert!(restricted.map().iter().enumerate().all(|(i, &j)| i == j));
    }
}

#[test]
fn generator_reaches_varied_shapes() {
    use proptest::strategy::ValueTree;
    use proptest::test_runner::TestRunner;
    let mut runner = TestRunner::deterministic();
    let strategy = common::semigroup(common::MAX_GENERATED);
    let samples: Vec<_> = (0..300).map(|_| strategy.new_tree(&mut runner).unwrap().current()).collect();
    let inverse = samples.iter().filter(|s| s.is_inverse_semigroup()).count();
    let large = samples.iter().filter(|s| s.order() >= 8).count();
    assert!(inverse >= 30, "only {inverse} inverse samples");
    assert!(large >= 30, "only {large} samples of order >= 8");
    assert!(samples.iter().any(|s| !s.is_regular()));
}

#[test]
fn subi_is_a_sublattice_of_sub() {
    for s in [pamona::construct::brandt5(), pamona::verify::two_atom_semilattice()] {
        let (sub, subi) = (SubLattice::sub(&s), SubLattice::subi(&s).unwrap());
        assert!(subi.members().iter().all(|m| sub.index_of(m).is_some()));
        assert!(subi.len() < sub.len() || s.is_semilattice());
    }
}

#[test]
fn lattice_automorphism_need_not_be_weak() {
    use pamona::sublat::{e_bijection, lattice_isomorphisms, weak_iso_check};
    // 0 is a zero, 1 an idempotent and 2 a left zero; swapping the atoms {1}
    // and {2} preserves Sub but not comparability with 0.
    let s = pamona::Semigroup::from_flat(3, vec![0, 0, 0, 0, 1, 0, 2, 2, 2], None).unwrap();
    let lat = Arc::new(SubLattice::sub(&s));
    let autos = lattice_isomorphisms(&lat, &lat, None);
    assert_eq!(autos.len(), 2);
    assert!(autos.iter().any(|psi| !weak_iso_check(&e_bijection(psi).unwrap(), &s, &s)));
    let p = Arc::new(pa_monoid(&s, PaOptions::default()).unwrap());
    assert_eq!(pamona::pam::pa_isomorphisms(&p, &p, None).len(), 1);
}
