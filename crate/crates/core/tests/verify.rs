use stackable::builtin::{almost_convexity_check, Bs1p, CrsStructure, ShortlexAc};
use stackable::stacking::verify_structure;
use stackable::{Error, RewritingSystem, StackingStructure};

fn load(name: &str) -> RewritingSystem {
    let path = format!("{}/../../data/{name}", env!("CARGO_MANIFEST_DIR"));
    RewritingSystem::parse(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn builtin_structures_pass_flow_checks() {
    let bs = Bs1p::new(2).unwrap();
    let (flow, geo) = verify_structure(&bs, 3, 1_000_000).unwrap();
    assert!(flow.passed(), "{}", flow.summary());
    assert_eq!(flow.inconclusive, 0);
    // BS(1,2) normal forms such as a^4 are not geodesic.
    assert!(!geo.passed());

    let z2 = CrsStructure::new(load("z2.rs"), 5).unwrap();
    let (flow, geo) = verify_structure(&z2, 4, 1_000_000).unwrap();
    assert!(flow.passed(), "{}", flow.summary());
    assert!(geo.passed(), "{}", geo.summary());

    let bs12 = CrsStructure::new(load("bs12.rs"), 5).unwrap();
    let (flow, _) = verify_structure(&bs12, 3, 1_000_000).unwrap();
    assert!(flow.passed(), "{}", flow.summary());
}

#[test]
fn shortlex_structures_are_geodesic() {
    for (name, k) in [("z2.rs", 2), ("free2.rs", 2), ("z.rs", 2)] {
        let s = ShortlexAc::new(Box::new(load(name)), 4, k, 1_000_000).unwrap();
        let (flow, geo) = verify_structure(&s, 4, 1_000_000).unwrap();
        assert!(flow.passed(), "{name}: {}", flow.summary());
        assert!(geo.passed(), "{name}: {}", geo.summary());
        assert!(s.bound() <= k + 1);
    }
}

#[test]
fn shortlex_structure_domain() {
    let s = ShortlexAc::new(Box::new(load("z2.rs")), 3, 2, 1_000_000).unwrap();
    assert!(matches!(verify_structure(&s, 4, 1_000_000), Err(Error::OutsideDomain(_))));
    assert!(matches!(
        ShortlexAc::new(Box::new(load("z2.rs")), 3, 1, 1_000_000),
        Err(Error::AlmostConvexityRefuted { .. })
    ));
}

#[test]
fn almost_convexity_examples() {
    let z2 = load("z2.rs");
    assert!(almost_convexity_check(&z2, 5, 2, 1_000_000).unwrap().passed());
    let fail = almost_convexity_check(&z2, 5, 1, 1_000_000).unwrap();
    assert!(!fail.passed());
    assert!(!fail.failures.is_empty());
    assert!(almost_convexity_check(&z2, 0, 0, 1_000_000).unwrap().passed());
    assert!(almost_convexity_check(&load("free2.rs"), 4, 2, 1_000_000).unwrap().passed());
}
