use std::collections::BTreeMap;

use wusq_core::corpus::{evaluate_fixture, golden_suite, FixtureContext};

#[test]
fn every_golden_fixture_reproduces() {
    let mut contexts: BTreeMap<String, FixtureContext> = BTreeMap::new();
    let mut failures = Vec::new();
    for fx in golden_suite() {
        let ctx = contexts
            .entry(fx.entry.clone())
            .or_insert_with(|| FixtureContext::builtin(&fx.entry).unwrap());
        match evaluate_fixture(&fx, ctx) {
            Ok(o) if o.pass => {}
            Ok(o) => failures.push(format!(
                "{}: expected {} got {}",
                o.name, o.expected, o.actual
            )),
            Err(e) => failures.push(format!("{}: {e}", fx.name)),
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn fixture_names_are_unique_and_cited() {
    let suite = golden_suite();
    let mut names: Vec<&str> = suite.iter().map(|f| f.name.as_str()).collect();
    names.sort_unstable();
    let n = names.len();
    names.dedup();
    assert_eq!(names.len(), n);
    assert!(suite.iter().all(|f| !f.citation.is_empty()));
    let top = suite
        .iter()
        .find(|f| f.name == "EVI.deg64.nonzero")
        .unwrap();
    assert_eq!(top.expected.as_array().unwrap().len(), 11);
}

#[test]
fn fixtures_round_trip_through_json() {
    for fx in golden_suite() {
        let text = serde_json::to_string(&fx).unwrap();
        let back: wusq_core::corpus::Fixture = serde_json::from_str(&text).unwrap();
        assert_eq!(back, fx);
    }
}
