mod common;

use common::props;

fn ok(c: props::Check) {
    match c {
        Ok(summary) => eprintln!("{summary}"),
        Err(e) => panic!("{e}"),
    }
}

#[test]
fn steenrod_axioms_on_random_classes() {
    ok(props::steenrod_axioms(1000, 0x5eed));
}

#[test]
fn power_squares_match_composition_sum() {
    ok(props::power_oracle(7));
}

#[test]
fn sq1_derivation_and_nilpotence() {
    ok(props::sq1_checks(40, 11));
}

#[test]
fn rp15_lucas_pattern() {
    ok(props::lucas_rp15());
}

#[test]
fn wu_classes_resubstitute() {
    ok(props::wu_resubstitution());
}

#[test]
fn signature_survives_unimodular_changes() {
    ok(props::signature_invariance(100, 3));
}

#[test]
fn parity_theorem_on_corpus() {
    ok(props::parity_everywhere());
}

#[test]
fn wu_and_sw_verdicts_agree_under_adem() {
    ok(props::wu_sw_agreement());
}

#[test]
fn evi_sides_diverge_without_adem() {
    // Without the Adem constraints the SW side at k = 4 also needs n0 + n1 = 0.
    let a = &props::analyses(false)
        .into_iter()
        .find(|a| a.presentation().name() == "EVI")
        .unwrap();
    let p = a.presentation().params();
    let w = wusq_core::orient::orientability_verdict_w(a.ring(), a.table(), 4, &a.admissible())
        .unwrap();
    let conds: Vec<String> = w.conditions.iter().map(|q| q.render(p)).collect();
    assert_eq!(conds, ["n0+n1", "1+b2+n2"]);
}
