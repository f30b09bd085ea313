//! Acceptance criteria 1 to 11, one line each. Runs without the libtest
//! harness so every line prints even when an earlier criterion fails.

use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use modlab_core::functor::{product_embedding, scheme_comparison};
use modlab_core::linalg::{smith_normal_form, IntMatrix};
use modlab_core::module::{hom_module, ModulePres, Side};
use modlab_core::oracle::{brute_force_hom, computed_hom};
use modlab_core::ring::{Algebra, FiniteRing, Ring};
use modlab_verifier::corpus::{generate, write_manifest};
use modlab_verifier::{run_suite, Corpus, Report, Status, Suite, SuiteOptions};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 1;
const CORPUS_SEED: u64 = 42;
const MAX_RING_ORDER: u64 = 16;
const MAX_MODULE_ORDER: u64 = 64;

const SNF_MATRICES: usize = 1000;
const SNF_MAX_DIM: usize = 6;
const SNF_ENTRY_BOUND: i64 = 50;
const SNF_TIME: Duration = Duration::from_secs(10);

const HOM_RINGS: [&str; 4] = ["Z2", "Z4", "Z6", "T2F2"];
const HOM_MAX_ORDER: u64 = 64;
const HOM_TIME: Duration = Duration::from_secs(60);

const EXTENSION_MIN_PAIRS: usize = 100;
const EXTENSION_TIME: Duration = Duration::from_secs(120);

const SYMMETRY_MIN_PAIRS: usize = 100;
const SYMMETRY_TIME: Duration = Duration::from_secs(60);

const COMPARISON_NONCOMMUTATIVE: [&str; 1] = ["T2F2"];

const REFLEXIVITY_MIN_TRIPLES: usize = 50;
const REFLEXIVITY_MAX_RING_ORDER: u64 = 16;
const REFLEXIVITY_MAX_GROUP_ORDER: u64 = 256;
const REFLEXIVITY_TIME: Duration = Duration::from_secs(120);

const TOR_MIN_MODULES: usize = 50;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn corpus() -> Corpus {
    Corpus::from_manifest(generate(MAX_RING_ORDER, MAX_MODULE_ORDER, CORPUS_SEED).expect("corpus")).expect("corpus loads")
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn cases_with<'a>(report: &'a Report, prefix: &'a str) -> impl Iterator<Item = &'a modlab_verifier::Case> + 'a {
    report.cases.iter().filter(move |c| c.id.starts_with(prefix))
}

fn first_bad(report: &Report, ok: impl Fn(Status) -> bool) -> Option<String> {
    report.cases.iter().find(|c| !ok(c.status)).map(|c| format!("{}: {:?}: {}", c.id, c.status, c.detail))
}

fn order(m: &ModulePres) -> BigInt {
    m.additive().order().unwrap_or_default()
}

fn snf() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mats: Vec<IntMatrix> = (0..SNF_MATRICES)
        .map(|_| {
            let r = rng.gen_range(1..=SNF_MAX_DIM);
            let c = rng.gen_range(1..=SNF_MAX_DIM);
            let rows: Vec<Vec<i64>> =
                (0..r).map(|_| (0..c).map(|_| rng.gen_range(-SNF_ENTRY_BOUND..=SNF_ENTRY_BOUND)).collect()).collect();
            IntMatrix::from_rows(&rows).expect("matrix")
        })
        .collect();
    let (bad, t) = timed(|| {
        mats.iter().position(|a| {
            let (u, d, v) = smith_normal_form(a);
            let uav = u.mul(a).and_then(|ua| ua.mul(&v));
            !(uav.is_ok_and(|x| x == d) && u.is_unimodular() && v.is_unimodular() && d.is_smith_form())
        })
    });
    match bad {
        Some(i) => outcome(false, format!("matrix {} fails U·A·V = D, unimodularity or the divisor chain: {:?}", i, mats[i])),
        None => outcome(t < SNF_TIME, format!("{} matrices in {:.2?} (limit {:?})", SNF_MATRICES, t, SNF_TIME)),
    }
}

fn hom_oracle(corpus: &Corpus) -> Outcome {
    let bound = BigInt::from(HOM_MAX_ORDER);
    let (res, t) = timed(|| {
        let mut checked = 0usize;
        for id in HOM_RINGS {
            let cr = corpus.ring(id).expect("hom oracle ring in corpus");
            for list in [&cr.left, &cr.right] {
                let small: Vec<_> = list.iter().filter(|e| order(&e.module) <= bound).collect();
                for m in &small {
                    for n in &small {
                        let brute = brute_force_hom(&m.module, &n.module, HOM_MAX_ORDER as usize).map_err(|e| e.to_string())?;
                        let computed = computed_hom(&m.module, &n.module).map_err(|e| e.to_string())?;
                        let group_order = hom_module(&m.module, &n.module).map_err(|e| e.to_string())?.group().order();
                        if brute != computed || group_order != Some(BigInt::from(brute.len())) {
                            return Err(format!(
                                "Hom({}, {}): brute force {} maps, computed {} maps, group order {:?}",
                                m.id,
                                n.id,
                                brute.len(),
                                computed.len(),
                                group_order
                            ));
                        }
                        checked += 1;
                    }
                }
            }
        }
        Ok(checked)
    });
    match res {
        Ok(n) => outcome(t < HOM_TIME && n > 0, format!("{} pairs over {:?} match in {:.2?} (limit {:?})", n, HOM_RINGS, t, HOM_TIME)),
        Err(e) => outcome(false, e),
    }
}

fn suite_pass_count(corpus: &Corpus, suite: Suite, min: usize, limit: Duration) -> Outcome {
    let (report, t) = timed(|| run_suite(suite, corpus, &SuiteOptions::new(SEED)));
    if let Some(bad) = first_bad(&report, |s| s == Status::Pass) {
        return outcome(false, bad);
    }
    let n = report.cases.len();
    outcome(
        n >= min && t < limit,
        format!("{}: {} cases pass (need {}) in {:.2?} (limit {:?})", suite, n, min, t, limit),
    )
}

fn comparison(corpus: &Corpus) -> Outcome {
    let report = run_suite(Suite::Super, corpus, &SuiteOptions::new(SEED));
    if !report.notes.is_empty() {
        return outcome(false, format!("pairs left out: {:?}", report.notes));
    }
    let rings: Vec<&str> =
        corpus.rings.iter().filter(|cr| cr.ring.is_commutative() || COMPARISON_NONCOMMUTATIVE.contains(&cr.id.as_str())).map(|cr| cr.id.as_str()).collect();
    let mut n = 0;
    for id in &rings {
        for c in cases_with(&report, &format!("super/{}/", id)) {
            if c.status != Status::Pass {
                return outcome(false, format!("{}: {:?}: {}", c.id, c.status, c.detail));
            }
            n += 1;
        }
    }
    let expected: usize = rings.iter().map(|id| corpus.ring(id).map_or(0, |cr| cr.left.len() * cr.right.len())).sum();
    outcome(n == expected, format!("{} of {} pairs over {:?} are isomorphisms", n, expected, rings))
}

fn reflexivity(corpus: &Corpus) -> Outcome {
    let (report, t) = timed(|| run_suite(Suite::Reflexivity, corpus, &SuiteOptions::new(SEED)));
    if let Some(bad) = first_bad(&report, |s| s == Status::Pass) {
        return outcome(false, bad);
    }
    let in_range = corpus
        .rings
        .iter()
        .filter(|cr| cr.ring.order() <= BigInt::from(REFLEXIVITY_MAX_RING_ORDER))
        .flat_map(|cr| {
            cr.left.iter().flat_map(move |m| {
                cr.algebras.objects().iter().enumerate().filter_map(move |(k, s)| {
                    let fits = order(&m.module) <= BigInt::from(REFLEXIVITY_MAX_GROUP_ORDER)
                        && s.ring().order() <= BigInt::from(REFLEXIVITY_MAX_GROUP_ORDER);
                    fits.then(|| format!("reflexivity/{}@{}", m.id, cr.algebra_id(k)))
                })
            })
        })
        .filter(|id| report.cases.iter().any(|c| &c.id == id))
        .count();
    outcome(
        in_range >= REFLEXIVITY_MIN_TRIPLES && t < REFLEXIVITY_TIME,
        format!(
            "{} triples pass, {} with ring order ≤ {} and orders ≤ {} (need {}) in {:.2?} (limit {:?})",
            report.cases.len(),
            in_range,
            REFLEXIVITY_MAX_RING_ORDER,
            REFLEXIVITY_MAX_GROUP_ORDER,
            REFLEXIVITY_MIN_TRIPLES,
            t,
            REFLEXIVITY_TIME
        ),
    )
}

fn naturality(corpus: &Corpus) -> Outcome {
    let report = run_suite(Suite::Naturality, corpus, &SuiteOptions::new(SEED));
    if let Some(bad) = first_bad(&report, |s| s == Status::Pass) {
        return outcome(false, bad);
    }
    let pairs = cases_with(&report, "naturality/").filter(|c| !c.id.starts_with("naturality/roundtrip/")).count();
    let expected: usize = corpus.rings.iter().map(|cr| cr.left.len() * cr.right.len()).sum();
    outcome(pairs == expected, format!("{} of {} pairs certified natural and injective", pairs, expected))
}

/// Every (M, S), with no size envelope.
fn unbounded() -> SuiteOptions {
    SuiteOptions {
        max_triple_size: u64::MAX,
        ..SuiteOptions::new(SEED)
    }
}

fn z4_example() -> Result<(ModulePres, Algebra), String> {
    let r: Ring = Arc::new(FiniteRing::cyclic(4).map_err(|e| e.to_string())?);
    let two = vec![BigInt::from(2)];
    let m = ModulePres::free(r.clone(), 1, Side::Left).quotient(std::slice::from_ref(&two)).0;
    let (_, proj) = r.quotient_ring(&[two]).map_err(|e| e.to_string())?;
    Ok((m, Algebra::new("ℤ/2", proj)))
}

fn scheme(corpus: &Corpus) -> Outcome {
    let report = run_suite(Suite::Scheme, corpus, &unbounded());
    if let Some(bad) = first_bad(&report, |s| s == Status::Pass) {
        return outcome(false, bad);
    }
    let projective = report.cases.iter().filter(|c| c.id.contains('@')).count();
    let example = z4_example().and_then(|(m, s)| scheme_comparison(&m, &s).map_err(|e| e.to_string()));
    match example {
        Ok(psi) => {
            let two = Some(BigInt::from(2));
            let ok = psi.is_zero() && psi.source().order() == two && psi.target().order() == two;
            outcome(
                ok && report.notes.is_empty(),
                format!(
                    "{} projective (M, S) isomorphisms; ℤ/4, M = ℤ/2, S = ℤ/2: {} → {} is {}",
                    projective,
                    psi.source(),
                    psi.target(),
                    if psi.is_zero() { "zero" } else { "nonzero" }
                ),
            )
        }
        Err(e) => outcome(false, e),
    }
}

fn factorization_embedding(corpus: &Corpus) -> Outcome {
    let fact = run_suite(Suite::Factorization, corpus, &SuiteOptions::new(SEED));
    let emb = run_suite(Suite::Embedding, corpus, &unbounded());
    let flat_pairs: Vec<_> = cases_with(&fact, "factorization/").filter(|c| c.id.contains('⊗')).collect();
    if let Some(c) = flat_pairs.iter().find(|c| c.status != Status::Pass) {
        return outcome(false, format!("{}: {:?}: {}", c.id, c.status, c.detail));
    }
    let searches: Vec<_> = cases_with(&fact, "factorization/").filter(|c| !c.id.contains('⊗')).collect();
    if let Some(c) = searches.iter().find(|c| !matches!(c.status, Status::Pass | Status::Inconclusive)) {
        return outcome(false, format!("{}: {:?}: {}", c.id, c.status, c.detail));
    }
    if let Some(bad) = first_bad(&emb, |s| s == Status::Pass) {
        return outcome(false, bad);
    }
    let example = z4_example().and_then(|(m, s)| product_embedding(&m, &s).map_err(|e| e.to_string()));
    match example {
        Ok((ker, _)) => outcome(
            !flat_pairs.is_empty() && !searches.is_empty() && !ker.is_trivial() && emb.notes.is_empty(),
            format!(
                "{} flat pairs factor; {} non-flat searches recorded; {} embedding cases; ℤ/4, M = ℤ/2 at S = ℤ/2 has kernel {}",
                flat_pairs.len(),
                searches.len(),
                emb.cases.len(),
                ker
            ),
        ),
        Err(e) => outcome(false, e),
    }
}

fn flat_projective(corpus: &Corpus) -> Outcome {
    let report = run_suite(Suite::FlatProjective, corpus, &SuiteOptions::new(SEED));
    if let Some(bad) = first_bad(&report, |s| s == Status::Pass) {
        return outcome(false, bad);
    }
    let tor = cases_with(&report, "flat-projective/tor/").count();
    let classified = report.cases.len() - tor;
    let modules: usize = corpus.rings.iter().map(|cr| cr.left.len() + cr.right.len()).sum();
    outcome(
        classified == modules && tor >= TOR_MIN_MODULES,
        format!("{} of {} modules with flat = projective; Tor₁ agrees on {} modules (need {})", classified, modules, tor, TOR_MIN_MODULES),
    )
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().expect("tempdir");
    let manifest = generate(MAX_RING_ORDER, MAX_MODULE_ORDER, CORPUS_SEED).expect("corpus");
    write_manifest(dir.path(), &manifest).expect("manifest");
    let run = |name: &str| -> Result<Vec<u8>, String> {
        let out = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_modlab"))
            .args(["verify", "--suite", "all", "--corpus"])
            .arg(dir.path())
            .arg("--out")
            .arg(&out)
            .args(["--seed", &SEED.to_string()])
            .status()
            .map_err(|e| e.to_string())?;
        if !status.success() {
            return Err(format!("modlab verify exited with {}", status));
        }
        std::fs::read(&out).map_err(|e| e.to_string())
    };
    match (run("a.json"), run("b.json")) {
        (Ok(a), Ok(b)) => outcome(a == b, format!("two reports of {} and {} bytes are {}", a.len(), b.len(), if a == b { "identical" } else { "different" })),
        (Err(e), _) | (_, Err(e)) => outcome(false, e),
    }
}

type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn main() {
    let corpus = corpus();
    let criteria: Vec<(&str, Check)> = vec![
        ("Smith normal form", Box::new(snf)),
        ("Hom oracle", Box::new(|| hom_oracle(&corpus))),
        ("direct extension at D = 2, 3", Box::new(|| suite_pass_count(&corpus, Suite::Extension, EXTENSION_MIN_PAIRS, EXTENSION_TIME))),
        ("kernel symmetry", Box::new(|| suite_pass_count(&corpus, Suite::Symmetry, SYMMETRY_MIN_PAIRS, SYMMETRY_TIME))),
        ("comparison isomorphism", Box::new(|| comparison(&corpus))),
        ("reflexivity", Box::new(|| reflexivity(&corpus))),
        ("naturality and injectivity", Box::new(|| naturality(&corpus))),
        ("scheme comparison", Box::new(|| scheme(&corpus))),
        ("factorization and embedding", Box::new(|| factorization_embedding(&corpus))),
        ("flat = projective, Tor₁", Box::new(|| flat_projective(&corpus))),
        ("determinism", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        failed += usize::from(!o.pass);
        println!("criterion {:>2} {} {}: {}", i + 1, if o.pass { "PASS" } else { "FAIL" }, name, o.detail);
    }
    if failed > 0 {
        println!("{} criteria failed", failed);
        std::process::exit(1);
    }
}
