use modlab_verifier::corpus::{generate, manifest_bytes, sha256_hex, REQUIRED_RING_IDS};
use modlab_verifier::{run_suite, Corpus, Status, Suite, SuiteOptions, VerifyError};

fn small() -> Corpus {
    Corpus::from_manifest(generate(16, 16, 3).unwrap()).unwrap()
}

#[test]
fn corpus_has_required_rings_within_bounds() {
    let c = small();
    for id in REQUIRED_RING_IDS {
        assert!(c.ring(id).is_some(), "{} missing", id);
    }
    for cr in &c.rings {
        assert!(cr.ring.order() <= 16.into());
        for e in cr.left.iter().chain(&cr.right) {
            assert!(e.module.additive().order().unwrap() <= 16.into(), "{}", e.id);
        }
    }
    let tiny = generate(3, 4, 0).unwrap();
    let ids: Vec<&str> = tiny.rings.iter().map(|r| r.id.as_str()).collect();
    assert_eq!(ids, ["Z2", "Z3"]);
}

#[test]
fn bounds_below_two_are_rejected() {
    assert!(matches!(generate(1, 16, 0), Err(VerifyError::Input(_))));
    assert!(matches!(generate(16, 0, 0), Err(VerifyError::Input(_))));
}

#[test]
fn sha_tracks_the_manifest_bytes() {
    let a = generate(8, 16, 5).unwrap();
    let c = Corpus::from_manifest(a.clone()).unwrap();
    assert_eq!(c.sha256, sha256_hex(&manifest_bytes(&a)));
    let other = Corpus::from_manifest(generate(8, 16, 6).unwrap()).unwrap();
    assert_ne!(c.sha256, other.sha256);
}

#[test]
fn report_json_has_fixed_shape() {
    let c = small();
    let r = run_suite(Suite::FlatProjective, &c, &SuiteOptions::new(9));
    let text = r.to_json();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let keys = ["schema", "suite", "corpus_sha256", "seed", "tool_version", "summary", "notes", "cases"];
    assert_eq!(v.as_object().unwrap().len(), keys.len());
    let at: Vec<usize> = keys.iter().map(|k| text.find(&format!("\n  \"{}\":", k)).unwrap()).collect();
    assert!(at.windows(2).all(|w| w[0] < w[1]), "top-level keys out of order");
    assert_eq!(v["schema"], "modlab-report/1");
    assert_eq!(v["seed"], "9");
    assert_eq!(v["summary"]["total"].as_u64().unwrap() as usize, r.cases.len());
    for case in v["cases"].as_array().unwrap() {
        assert!(["pass", "fail", "refused", "inconclusive"].contains(&case["status"].as_str().unwrap()));
    }
    assert_eq!(r.exit_code(), 0);
}

#[test]
fn all_concatenates_every_suite_in_order() {
    let c = Corpus::from_manifest(generate(4, 4, 0).unwrap()).unwrap();
    let opts = SuiteOptions::new(0);
    let all = run_suite(Suite::All, &c, &opts);
    let mut ids = Vec::new();
    for s in Suite::EACH {
        ids.extend(run_suite(s, &c, &opts).cases.into_iter().map(|k| k.id));
    }
    let all_ids: Vec<String> = all.cases.iter().map(|k| k.id.clone()).collect();
    assert_eq!(all_ids, ids);
    assert!(all.cases.iter().all(|k| k.status != Status::Fail));
}

#[test]
fn reports_are_reproducible() {
    let c = small();
    let opts = SuiteOptions::new(4);
    let a = run_suite(Suite::Hp2Search, &c, &opts).to_json();
    let b = run_suite(Suite::Hp2Search, &c, &opts).to_json();
    assert_eq!(a, b);
}

#[test]
fn non_iso_outside_regimes_is_inconclusive_with_witness() {
    let c = small();
    let r = run_suite(Suite::Hp2Search, &c, &SuiteOptions::new(0));
    for case in &r.cases {
        if case.detail.contains("not an isomorphism") && case.hypothesis.as_deref() == Some("unknown") {
            assert_eq!(case.status, Status::Inconclusive);
            assert!(case.witness.is_some());
        }
        if case.status == Status::Inconclusive {
            assert_eq!(case.hypothesis.as_deref(), Some("unknown"));
        }
    }
}

#[test]
fn exit_code_precedence() {
    use modlab_verifier::{Case, Report};
    let case = |s| Case::new("x", s, "");
    let code = |cases: Vec<Case>| Report::new("all", "", 0, vec![], cases).exit_code();
    assert_eq!(code(vec![case(Status::Pass), case(Status::Inconclusive)]), 0);
    assert_eq!(code(vec![case(Status::Pass), case(Status::Refused)]), 2);
    assert_eq!(code(vec![case(Status::Refused), case(Status::Fail)]), 1);
}
