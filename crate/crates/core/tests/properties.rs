use std::sync::OnceLock;

use pds_core::construction::{build_denniston, expected_params};
use pds_core::cyclotomy::{random_subspace, subspace_index_set};
use pds_core::export::SetExport;
use pds_core::gf_tower::DEFAULT_SIZE_CAP;
use pds_core::group::Group;
use pds_core::verify::{char_spectrum, difference_count, verify, Method};
use pds_core::FieldTable;
use proptest::prelude::*;

fn f64_tower() -> &'static FieldTable {
    static T: OnceLock<FieldTable> = OnceLock::new();
    T.get_or_init(|| FieldTable::build(2, 1, 3).unwrap())
}

fn f81_tower() -> &'static FieldTable {
    static T: OnceLock<FieldTable> = OnceLock::new();
    T.get_or_init(|| FieldTable::build(3, 1, 2).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn any_seeded_subspace_gives_a_pds(seed in any::<u64>(), r in 1u32..3) {
        let t = f64_tower();
        let rr = random_subspace(t, r, seed).unwrap();
        prop_assert_eq!(subspace_index_set(t, &rr).len() as u64, (1 << r) - 1);
        let set = build_denniston(t, &rr).unwrap();
        prop_assert_eq!(*set.claimed(), expected_params(2, 3, r).unwrap());
        prop_assert!(difference_count(t, &set).unwrap().pass);
        prop_assert!(char_spectrum(t, &set, Method::Fast).unwrap().pass);
    }

    #[test]
    fn denniston_sets_are_regular(seed in any::<u64>()) {
        let t = f81_tower();
        let set = build_denniston(t, &random_subspace(t, 1, seed).unwrap()).unwrap();
        let g = Group::new(t, set.group()).unwrap();
        for i in set.indices() {
            let neg = g.index(g.neg(g.elem(i as usize))).unwrap();
            prop_assert!(set.contains(neg));
        }
    }

    #[test]
    fn toggles_fail_both_verifiers(idx in 1usize..729, seed in 0u64..4) {
        let t = f81_tower();
        let set = build_denniston(t, &random_subspace(t, 1, seed).unwrap()).unwrap();
        let bad = set.toggled(idx).unwrap();
        prop_assert!(!difference_count(t, &bad).unwrap().pass);
        prop_assert!(!char_spectrum(t, &bad, Method::Naive).unwrap().pass);
    }

    #[test]
    fn export_round_trip_preserves_report(seed in any::<u64>()) {
        let t = f64_tower();
        let set = build_denniston(t, &random_subspace(t, 2, seed).unwrap()).unwrap();
        let text = SetExport::new(t, &set).to_json();
        let (t2, set2) = SetExport::from_json(&text).unwrap().load(DEFAULT_SIZE_CAP).unwrap();
        prop_assert_eq!(&set2, &set);
        let a = verify(t, &set, Default::default()).unwrap();
        let b = verify(&t2, &set2, Default::default()).unwrap();
        prop_assert_eq!(a.to_json(), b.to_json());
    }
}
