use dihedral_loci::classify::{classify, enumerate, verify_corollary_pairs, verify_nonexistence, verify_tables};
use dihedral_loci::covers::CoverType;
use dihedral_loci::group::GroupType;
use dihedral_loci::hurwitz::DEFAULT_NODE_CAP;

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).unwrap()
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let a = json(&verify_tables(4, DEFAULT_NODE_CAP).unwrap());
    let b = json(&verify_tables(4, DEFAULT_NODE_CAP).unwrap());
    assert_eq!(a, b);
    assert_eq!(json(&verify_nonexistence(6).unwrap()), json(&verify_nonexistence(6).unwrap()));
    assert_eq!(json(&verify_corollary_pairs(4).unwrap()), json(&verify_corollary_pairs(4).unwrap()));
    let c = json(&classify(CoverType::II, GroupType::Type1, 6, DEFAULT_NODE_CAP).unwrap());
    assert_eq!(c, json(&classify(CoverType::II, GroupType::Type1, 6, DEFAULT_NODE_CAP).unwrap()));
}

#[test]
fn enumeration_is_strictly_increasing() {
    for (ct, n) in [(CoverType::I, 4), (CoverType::II, 5), (CoverType::IIIa, 6), (CoverType::IIIb, 3)] {
        let vs = enumerate(ct, GroupType::Type1, n).unwrap();
        assert!(!vs.is_empty());
        assert!(vs.windows(2).all(|w| w[0].branches() < w[1].branches()), "{ct} n={n}");
    }
}

#[test]
fn classes_partition_the_admissible_set() {
    for ct in [CoverType::I, CoverType::II, CoverType::IIIa, CoverType::IIIb] {
        for n in 2..=6 {
            let r = classify(ct, GroupType::Type1, n, DEFAULT_NODE_CAP).unwrap();
            assert!(r.complete);
            assert!(r.partition_is_consistent(), "{ct} n={n}");
            assert!(r.classes.iter().all(|c| c.admissible_members <= c.orbit_size));
            // a normal form names at most one class
            let named: usize = r.classes.iter().map(|c| c.normal_forms.len()).sum();
            assert_eq!(named, r.matched_normal_forms.values().filter(|m| m.class.is_some()).count());
        }
    }
}

#[test]
fn report_schema_is_versioned() {
    let v: serde_json::Value = serde_json::from_str(&json(&verify_tables(7, DEFAULT_NODE_CAP).unwrap())).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["n"], 7);
    assert!(v["tables"].as_array().unwrap().iter().all(|t| t["rows"].is_array()));
}
