use endofix::classify::{classify, enumerate_types, verify_witness, witness, WitnessAvailability};
use endofix::prodgrp::{AmbientSpec, SubgroupCore};

fn ambients() -> Vec<AmbientSpec> {
    vec![
        AmbientSpec::free(2, 1),
        AmbientSpec::free(3, 1),
        AmbientSpec::free(2, 2),
        AmbientSpec::free(3, 2),
        AmbientSpec::surface(2, 1).unwrap(),
        AmbientSpec::surface(2, 2).unwrap(),
        AmbientSpec::surface(3, 1).unwrap(),
    ]
}

#[test]
fn every_emitted_recipe_verifies() {
    let mut verified = 0;
    let mut cited = 0;
    for amb in ambients() {
        for t in enumerate_types(&amb, 7, 7, true) {
            let v = classify(&amb, &t).unwrap();
            if !v.end_fixed {
                assert!(witness(&amb, &t).is_err());
                continue;
            }
            match witness(&amb, &t).unwrap() {
                Some(r) => {
                    assert_eq!(v.witness, WitnessAvailability::Yes);
                    assert_eq!(r.expected, t);
                    assert!(verify_witness(&amb, &r), "{} {}: {}", amb, t, r.provenance);
                    verified += 1;
                }
                None => {
                    assert_eq!(v.witness, WitnessAvailability::Cited, "{} {}", amb, t);
                    cited += 1;
                }
            }
        }
    }
    assert!(verified > 100, "{}", verified);
    assert!(cited > 0);
}

#[test]
fn complement_law_for_free_bases() {
    for n in 2..=4 {
        for m in 2..=3 {
            let amb = AmbientSpec::free(n, m);
            for t in enumerate_types(&amb, 8, 0, true) {
                let excluded = match t.core() {
                    SubgroupCore::FreeInfinite => t.s() == 0,
                    SubgroupCore::Free(r) => t.s() == m && r > n as u64,
                    SubgroupCore::Surface(_) => unreachable!(),
                };
                let v = classify(&amb, &t).unwrap();
                assert_eq!(v.end_fixed, !excluded, "{} {}", amb, t);
                assert_eq!(v.aut_fixed, v.end_fixed, "{} {}", amb, t);
            }
        }
    }
}
