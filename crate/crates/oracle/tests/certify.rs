use ncg_oracle::{certify, registry, OracleError, FIXTURES};

#[test]
fn every_registered_fixture_recomputes_to_its_frozen_value() {
    let reg = registry();
    assert_eq!(reg.len(), FIXTURES.len());
    for (id, value) in reg {
        let r = certify(id).unwrap_or_else(|e| panic!("{e}"));
        assert_eq!(r.value, value, "fixture {id}");
        assert_eq!(r.inputs_hash.len(), 64);
    }
}

#[test]
fn every_fixture_is_in_the_registry() {
    let reg = registry();
    for f in FIXTURES {
        assert!(reg.iter().any(|(id, _)| *id == f.id), "{} is computed but not registered", f.id);
    }
}

#[test]
fn results_are_reproducible() {
    let a = certify("hh.dual_numbers.q.n4").unwrap();
    let b = certify("hh.dual_numbers.q.n4").unwrap();
    assert_eq!(a, b);
    assert_ne!(a.inputs_hash, certify("hh.mat2.q.n4").unwrap().inputs_hash);
}

#[test]
fn unknown_ids_are_rejected() {
    assert!(matches!(certify("no.such.fixture"), Err(OracleError::Unregistered(_))));
}
