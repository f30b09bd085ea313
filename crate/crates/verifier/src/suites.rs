//! The theorem suites. Every suite turns a corpus into a list of cases; cases are
//! computed in parallel and collected in a fixed order.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use modlab_core::functor::{
    certified_injectivity, check_naturality, comparison_map, double_dual_eval, factorization_search, product_embedding,
    r_extension, r_extension_direct, scheme_comparison, star_double_dual_eval, symmetric_kernel_agrees, unit_counit_roundtrip,
    FunctorError,
};
use modlab_core::linalg::{AbelianGroup, Elem};
use modlab_core::module::{is_flat, is_projective, tor1, tor1_with_generators, ModuleError, ModulePres, Side};
use modlab_core::ring::{Algebra, FiniteRing, IdealSide, Ring, RingError};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::corpus::{Corpus, CorpusRing, Entry};
use crate::hypothesis::{pair_regime, ring_regime, Regime};
use crate::report::{Case, Report, Status};
use crate::serial::{algebra_data, ints, module_data, ring_data};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Reflexivity,
    Symmetry,
    Super,
    Hp2Search,
    Scheme,
    Factorization,
    Embedding,
    Naturality,
    FlatProjective,
    Extension,
    All,
}

impl Suite {
    pub const EACH: [Suite; 10] = [
        Suite::Reflexivity,
        Suite::Symmetry,
        Suite::Super,
        Suite::Hp2Search,
        Suite::Scheme,
        Suite::Factorization,
        Suite::Embedding,
        Suite::Naturality,
        Suite::FlatProjective,
        Suite::Extension,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Reflexivity => "reflexivity",
            Suite::Symmetry => "symmetry",
            Suite::Super => "super",
            Suite::Hp2Search => "hp2-search",
            Suite::Scheme => "scheme",
            Suite::Factorization => "factorization",
            Suite::Embedding => "embedding",
            Suite::Naturality => "naturality",
            Suite::FlatProjective => "flat-projective",
            Suite::Extension => "extension",
            Suite::All => "all",
        }
    }

    pub fn names() -> Vec<&'static str> {
        Suite::EACH.iter().map(|s| s.name()).chain(["all"]).collect()
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Suite::EACH
            .iter()
            .chain(&[Suite::All])
            .find(|x| x.name() == s)
            .copied()
            .ok_or_else(|| format!("unknown suite {:?}; expected one of: {}", s, Suite::names().join(", ")))
    }
}

/// Size limits for the expensive constructions. Pairs outside them are left
/// out, and the report says how many.
#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Bound on `|N|·|M|·|R|²`, the size of the second ambient group.
    pub max_pair_size: u64,
    /// Bound on `|S|·|M|` for cases over an algebra.
    pub max_triple_size: u64,
    /// Bound on `rank(N)·rank(M)³·rank(R)⁴`, the largest word-space tensor the
    /// degree-three direct extension builds.
    pub max_direct_words: u64,
    /// Bound on `|𝒩^r(M)|` for the factorization search.
    pub max_kernel_elements: usize,
    /// Bound on the ring order in the hypothesis search family.
    pub max_search_ring_order: u64,
    /// Right modules per left module in the Tor comparison.
    pub tor_partners: usize,
}

impl SuiteOptions {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            max_pair_size: 1 << 20,
            max_triple_size: 256,
            max_direct_words: 1 << 12,
            max_kernel_elements: 1 << 12,
            max_search_ring_order: 16,
            tor_partners: 4,
        }
    }
}

type Task<'a> = Box<dyn Fn() -> Vec<Case> + Send + Sync + 'a>;

fn run_tasks(tasks: Vec<Task<'_>>) -> Vec<Case> {
    let parts: Vec<Vec<Case>> = tasks.par_iter().map(|t| t()).collect();
    parts.into_iter().flatten().collect()
}

fn order(g: &AbelianGroup) -> BigInt {
    g.order().unwrap_or_default()
}

fn size(m: &ModulePres) -> BigInt {
    order(m.additive())
}

fn is_refusal(e: &FunctorError) -> bool {
    matches!(
        e,
        FunctorError::Module(ModuleError::Refused(_))
            | FunctorError::Module(ModuleError::Ring(RingError::BoundExceeded { .. }))
            | FunctorError::Ring(RingError::BoundExceeded { .. })
    )
}

/// An error inside a case: refusals are reported as such, anything else is a
/// failure of the implementation.
fn error_case(id: String, e: FunctorError, witness: Value) -> Case {
    if is_refusal(&e) {
        Case::new(id, Status::Refused, e.to_string())
    } else {
        Case::new(id, Status::Fail, format!("error: {}", e)).with_witness(witness)
    }
}

fn module_error(e: ModuleError) -> FunctorError {
    FunctorError::Module(e)
}

fn witness(ring: &FiniteRing, modules: &[(&str, &Entry)], algebra: Option<(&str, &Algebra)>) -> Value {
    let mut mods = serde_json::Map::new();
    for (role, e) in modules {
        mods.insert(role.to_string(), json!({"id": e.id, "name": e.name, "module": module_data(&e.module)}));
    }
    let mut w = json!({"ring": ring_data(ring), "modules": mods});
    if let Some((id, s)) = algebra {
        w["algebra"] = json!({"id": id, "name": s.name(), "algebra": algebra_data(s)});
    }
    w
}

fn pair_size(n: &ModulePres, m: &ModulePres) -> BigInt {
    let r = n.ring().order();
    size(n) * size(m) * &r * &r
}

/// All pairs `(N, M)` of a ring within the pair envelope, plus the number left out.
fn pairs<'a>(cr: &'a CorpusRing, opts: &SuiteOptions) -> (Vec<(&'a Entry, &'a Entry)>, usize) {
    let bound = BigInt::from(opts.max_pair_size);
    let mut out = Vec::new();
    let mut skipped = 0;
    for n in &cr.right {
        for m in &cr.left {
            if pair_size(&n.module, &m.module) <= bound {
                out.push((n, m));
            } else {
                skipped += 1;
            }
        }
    }
    (out, skipped)
}

fn envelope_note(suite: &str, what: &str, skipped: usize, rule: String) -> Option<String> {
    (skipped > 0).then(|| format!("{}: {} {} outside the envelope {} were not run", suite, skipped, what, rule))
}

pub fn run_suite(suite: Suite, corpus: &Corpus, opts: &SuiteOptions) -> Report {
    let (cases, notes) = match suite {
        Suite::All => {
            let mut cases = Vec::new();
            let mut notes = Vec::new();
            for s in Suite::EACH {
                let (c, n) = run_one(s, corpus, opts);
                cases.extend(c);
                notes.extend(n);
            }
            (cases, notes)
        }
        s => run_one(s, corpus, opts),
    };
    Report::new(suite.name(), &corpus.sha256, opts.seed, notes, cases)
}

fn run_one(s: Suite, corpus: &Corpus, opts: &SuiteOptions) -> (Vec<Case>, Vec<String>) {
    match s {
        Suite::Reflexivity => reflexivity(corpus, opts),
        Suite::Symmetry => symmetry(corpus, opts),
        Suite::Super => super_suite(corpus, opts),
        Suite::Hp2Search => hp2_search(corpus, opts),
        Suite::Scheme => scheme(corpus, opts),
        Suite::Factorization => factorization(corpus, opts),
        Suite::Embedding => embedding(corpus, opts),
        Suite::Naturality => naturality(corpus, opts),
        Suite::FlatProjective => flat_projective(corpus, opts),
        Suite::Extension => extension(corpus, opts),
        Suite::All => unreachable!("expanded by run_suite"),
    }
}

/// Triples `(M, S)` within the triple envelope.
fn triples<'a>(cr: &'a CorpusRing, opts: &SuiteOptions) -> (Vec<(&'a Entry, usize)>, usize) {
    let bound = BigInt::from(opts.max_triple_size);
    let mut out = Vec::new();
    let mut skipped = 0;
    for m in &cr.left {
        for (k, s) in cr.algebras.objects().iter().enumerate() {
            if size(&m.module) * s.ring().order() <= bound {
                out.push((m, k));
            } else {
                skipped += 1;
            }
        }
    }
    (out, skipped)
}

fn reflexivity(corpus: &Corpus, opts: &SuiteOptions) -> (Vec<Case>, Vec<String>) {
    let mut tasks: Vec<Task> = Vec::new();
    let mut skipped = 0;
    for cr in &corpus.rings {
        let (list, s) = triples(cr, opts);
        skipped += s;
        for (m, k) in list {
            tasks.push(Box::new(move || {
                let s = &cr.algebras.objects()[k];
                let id = format!("reflexivity/{}@{}", m.id, cr.algebra_id(k));
                let w = || witness(&cr.ring, &[("M", m)], Some((cr.algebra_id(k), s)));
                let run = || -> Result<(bool, bool, String), FunctorError> {
                    let dd = double_dual_eval(&m.module, s)?;
                    let st = star_double_dual_eval(&m.module, s)?;
                    let detail = format!(
                        "S ⊗_R M = {}; 𝓜^∨∨(S) = {} ({}); 𝓜^**(S) = {} ({})",
                        dd.extension.tensor().group(),
                        dd.group(),
                        if dd.canonical.is_isomorphism { "isomorphism" } else { "not an isomorphism" },
                        st.group(),
                        if st.canonical.is_isomorphism { "isomorphism" } else { "not an isomorphism" },
                    );
                    Ok((dd.canonical.is_isomorphism, st.canonical.is_isomorphism, detail))
                };
                // S is an R-bimodule, so the comparison criterion always applies
                let hyp = format!("{}; S is a bimodule", ring_regime(&cr.ring).as_str());
                let case = match run() {
                    Ok((true, true, d)) => Case::new(id, Status::Pass, d),
                    Ok((_, _, d)) => Case::new(id, Status::Fail, d).with_witness(w()),
                    Err(e) => error_case(id, e, w()),
                };
                vec![case.with_hypothesis(&hyp)]
            }));
        }
    }
    let notes = envelope_note("reflexivity", "(M, S) triples", skipped, format!("|S|·|M| ≤ {}", opts.max_triple_size))
        .into_iter()
        .collect();
    (run_tasks(tasks), notes)
}

fn pair_tasks<'a, F>(corpus: &'a Corpus, opts: &SuiteOptions, suite: &'static str, f: F) -> (Vec<Case>, Vec<String>)
where
    F: Fn(&'a CorpusRing, &'a Entry, &'a Entry, String) -> Case + Send + Sync + Copy + 'a,
{
    let mut tasks: Vec<Task> = Vec::new();
    let mut skipped = 0;
    for cr in &corpus.rings {
        let (list, s) = pairs(cr, opts);
        skipped += s;
        for (n, m) in list {
            tasks.push(Box::new(move || vec![f(cr, n, m, format!("{}/{}⊗{}", suite, n.id, m.id))]));
        }
    }
    let notes = envelope_note(suite, "(N, M) pairs", skipped, format!("|N|·|M|·|R|² ≤ {}", opts.max_pair_size))
        .into_iter()
        .collect();
    (run_tasks(tasks), notes)
}

fn symmetry(corpus: &Corpus, opts: &SuiteOptions) -> (Vec<Case>, Vec<String>) {
    pair_tasks(corpus, opts, "symmetry", |cr, n, m, id| {
        let w = || witness(&cr.ring, &[("N", n), ("M", m)], None);
        match r_extension(&n.module, &m.module).and_then(|ext| Ok((symmetric_kernel_agrees(&ext)?, ext.kernel().clone()))) {
            Ok((true, k)) => Case::new(id, Status::Pass, format!("both kernels are the same subgroup {}", k)),
            Ok((false, k)) => Case::new(id, Status::Fail, format!("kernels differ inside the ambient; 𝒩^r(M) = {}", k)).with_witness(w()),
            Err(e) => error_case(id, e, w()),
        }
    })
}

/// Comparison map `N ⊗_R M → 𝒩^r(M)`: `Some(true)` for an isomorphism.
fn comparison_case(ring: &FiniteRing, n: &Entry, m: &Entry, id: String) -> Case {
    let regime = pair_regime(&n.module, &m.module);
    let w = || witness(ring, &[("N", n), ("M", m)], None);
    let case = match r_extension(&n.module, &m.module).and_then(|ext| Ok((comparison_map(&ext)?, ext))) {
        Ok((c, ext)) => {
            let detail = format!(
                "N ⊗_R M = {}, 𝒩^r(M) = {}, comparison map: {}",
                ext.tensor().group(),
                ext.kernel(),
                if c.is_isomorphism { "isomorphism" } else { "not an isomorphism" }
            );
            match (regime.guaranteed(), c.is_isomorphism) {
                (true, true) => Case::new(id, Status::Pass, detail),
                (true, false) => Case::new(id, Status::Fail, detail).with_witness(w()),
                (false, true) => Case::new(id, Status::Inconclusive, format!("{} (outside the guaranteed regimes)", detail)),
                (false, false) => {
                    Case::new(id, Status::Inconclusive, format!("{} (outside the guaranteed regimes)", detail)).with_witness(w())
                }
            }
        }
        Err(e) => error_case(id, e, w()),
    };
    case.with_hypothesis(regime.as_str())
}

fn super_suite(corpus: &Corpus, opts: &SuiteOptions) -> (Vec<Case>, Vec<String>) {
    pair_tasks(corpus, opts, "super", |cr, n, m, id| comparison_case(&cr.ring, n, m, id))
}

fn extension(corpus: &Corpus, opts: &SuiteOptions) -> (Vec<Case>, Vec<String>) {
    let bound = BigInt::from(opts.max_direct_words);
    let mut tasks: Vec<Task> = Vec::new();
    let mut skipped = 0;
    for cr in &corpus.rings {
        let (list, s) = pairs(cr, opts);
        skipped += s;
        let rr = BigInt::from(cr.ring.rank());
        for (n, m) in list {
            let words = BigInt::from(n.module.rank()) * BigInt::from(m.module.rank()).pow(3) * rr.pow(4);
            if words > bound {
                skipped += 1;
                continue;
            }
            tasks.push(Box::new(move || {
                let id = format!("extension/{}⊗{}", n.id, m.id);
                let w = || witness(&cr.ring, &[("N", n), ("M", m)], None);
                let run = || -> Result<(bool, String), FunctorError> {
                    let ext = r_extension(&n.module, &m.module)?;
                    let mut ok = true;
                    let mut parts = vec![format!("Ker(p₁ − p₂) = {}", ext.kernel())];
                    for d in [2, 3] {
                        let direct = r_extension_direct(&n.module, &m.module, d)?;
                        let same = direct.equals_r_extension && direct.confined_to_degree_one && &direct.group == ext.kernel();
                        ok &= same;
                        let orders: Vec<String> = direct.degree_orders.iter().map(|o| o.to_string()).collect();
                        parts.push(format!("D = {}: {} with degree orders [{}]", d, direct.group, orders.join(", ")));
                    }
                    Ok((ok, parts.join("; ")))
                };
                vec![match run() {
                    Ok((true, d)) => Case::new(id, Status::Pass, d),
                    Ok((false, d)) => Case::new(id, Status::Fail, d).with_witness(w()),
                    Err(e) => error_case(id, e, w()),
                }]
            }));
        }
    }
    let notes = envelope_note(
        "extension",
        "(N, M) pairs",
        skipped,
        format!(
            "|N|·|M|·|R|² ≤ {} and rank(N)·rank(M)³·rank(R)⁴ ≤ {}",
            opts.max_pair_size, opts.max_direct_words
        ),
    )
    .into_iter()
    .collect();
    (run_tasks(tasks), notes)
}

fn naturality(corpus: &Corpus, opts: &SuiteOptions) -> (Vec<Case>, Vec<String>) {
    let (mut cases, mut notes) = pair_tasks(corpus, opts, "naturality", |cr, n, m, id| {
        let w = || witness(&cr.ring, &[("N", n), ("M", m)], None);
        let run = || -> Result<(bool, String), FunctorError> {
            let ext = r_extension(&n.module, &m.module)?;
            let cert = check_naturality(&ext, &cr.algebras)?;
            let inj = certified_injectivity(&ext)?;
            let detail = format!(
                "𝒩^r(M) = {}; {} arrow checks, {} linearity checks{}; evaluation at T(M, 2) {}",
                ext.kernel(),
                cert.arrow_checks,
                cert.linearity_checks,
                cert.violation.as_ref().map(|v| format!(", violation: {}", v)).unwrap_or_default(),
                if inj { "injective" } else { "not injective" }
            );
            Ok((cert.holds() && inj, detail))
        };
        match run() {
            Ok((true, d)) => Case::new(id, Status::Pass, d),
            Ok((false, d)) => Case::new(id, Status::Fail, d).with_witness(w()),
            Err(e) => error_case(id, e, w()),
        }
    });
    let bound = BigInt::from(opts.max_triple_size);
    let mut tasks: Vec<Task> = Vec::new();
    let mut skipped = 0;
    for cr in &corpus.rings {
        for n in &cr.right {
            for (k, s) in cr.algebras.objects().iter().enumerate() {
                if size(&n.module) * s.ring().order() > bound {
                    skipped += 1;
                    continue;
                }
                tasks.push(Box::new(move || {
                    let id = format!("naturality/roundtrip/{}@{}", n.id, cr.algebra_id(k));
                    let w = || witness(&cr.ring, &[("N", n)], Some((cr.algebra_id(k), s)));
                    vec![match unit_counit_roundtrip(&n.module, s) {
                        Ok(true) => Case::new(id, Status::Pass, "G(S) → G(T(S, 2)) → G(S) is the identity"),
                        Ok(false) => Case::new(id, Status::Fail, "G(S) → G(T(S, 2)) → G(S) is not the identity").with_witness(w()),
                        Err(e) => error_case(id, e, w()),
                    }]
                }));
            }
        }
    }
    cases.extend(run_tasks(tasks));
    notes.extend(envelope_note("naturality", "(N, S) roundtrips", skipped, format!("|S|·|N| ≤ {}", opts.max_triple_size)));
    (cases, notes)
}

/// Left modules with their projectivity over rings where the hypothesis holds;
/// modules over other rings get a refused case.
fn classified_left<'a>(corpus: &'a Corpus, suite: &str, cases: &mut Vec<Case>) -> Vec<(&'a CorpusRing, &'a Entry, Result<bool, FunctorError>)> {
    let mut out = Vec::new();
    for cr in &corpus.rings {
        let regime = ring_regime(&cr.ring);
        for m in &cr.left {
            if !regime.guaranteed() && !is_flat(&m.module).unwrap_or(false) {
                cases.push(
                    Case::new(format!("{}/{}", suite, m.id), Status::Refused, "the comparison hypothesis is not known to hold here")
                        .with_hypothesis(regime.as_str()),
                );
                continue;
            }
            out.push((cr, m, is_projective(&m.module).map_err(module_error)));
        }
    }
    out
}

fn hyp_of(cr: &CorpusRing, projective: bool) -> &'static str {
    let r = ring_regime(&cr.ring);
    if r.guaranteed() {
        r.as_str()
    } else if projective {
        Regime::FlatModule.as_str()
    } else {
        Regime::Unknown.as_str()
    }
}

fn scheme(corpus: &Corpus, opts: &SuiteOptions) -> (Vec<Case>, Vec<String>) {
    let mut refused = Vec::new();
    let classified = classified_left(corpus, "scheme", &mut refused);
    let bound = BigInt::from(opts.max_triple_size);
    let mut tasks: Vec<Task> = Vec::new();
    let mut skipped = 0;
    for (cr, m, proj) in classified {
        let algs: Vec<usize> = (0..cr.algebras.objects().len())
            .filter(|&k| size(&m.module) * cr.algebras.objects()[k].ring().order() <= bound)
            .collect();
        skipped += cr.algebras.objects().len() - algs.len();
        match proj {
            Err(e) => {
                let id = format!("scheme/{}", m.id);
                refused.push(error_case(id, e, witness(&cr.ring, &[("M", m)], None)));
            }
            Ok(true) => {
                for k in algs {
                    tasks.push(Box::new(move || {
                        let s = &cr.algebras.objects()[k];
                        let id = format!("scheme/{}@{}", m.id, cr.algebra_id(k));
                        let w = || witness(&cr.ring, &[("M", m)], Some((cr.algebra_id(k), s)));
                        let case = match scheme_comparison(&m.module, s) {
                            Ok(psi) if psi.is_isomorphism() => {
                                Case::new(id, Status::Pass, format!("projective M: S ⊗_R M = {} ≅ Hom_R(M*, S)", psi.source()))
                            }
                            Ok(psi) => Case::new(
                                id,
                                Status::Fail,
                                format!("projective M but S ⊗_R M = {} → Hom_R(M*, S) = {} is not an isomorphism", psi.source(), psi.target()),
                            )
                            .with_witness(w()),
                            Err(e) => error_case(id, e, w()),
                        };
                        vec![case.with_hypothesis(hyp_of(cr, true))]
                    }));
                }
            }
            Ok(false) => {
                tasks.push(Box::new(move || {
                    let id = format!("scheme/{}", m.id);
                    let mut errors = Vec::new();
                    for &k in &algs {
                        let s = &cr.algebras.objects()[k];
                        match scheme_comparison(&m.module, s) {
                            Ok(psi) if !psi.is_isomorphism() => {
                                let detail = format!(
                                    "non-projective M; expected-negative witness at {}: S ⊗_R M = {} → Hom_R(M*, S) = {} is {}",
                                    s.name(),
                                    psi.source(),
                                    psi.target(),
                                    if psi.is_zero() { "the zero map" } else { "not an isomorphism" }
                                );
                                let mut wit = witness(&cr.ring, &[("M", m)], Some((cr.algebra_id(k), s)));
                                wit["map"] = json!(psi.matrix().to_rows().iter().map(|r| ints(r)).collect::<Vec<_>>());
                                return vec![Case::new(id, Status::Pass, detail).with_witness(wit).with_hypothesis(hyp_of(cr, false))];
                            }
                            Ok(_) => {}
                            Err(e) => errors.push(e.to_string()),
                        }
                    }
                    let detail = if errors.is_empty() {
                        format!("non-projective M; the map is an isomorphism at all {} corpus algebras tried", algs.len())
                    } else {
                        format!("non-projective M; no witness found, errors: {}", errors.join("; "))
                    };
                    vec![Case::new(id, Status::Inconclusive, detail).with_hypothesis(hyp_of(cr, false))]
                }));
            }
        }
    }
    let mut cases = refused;
    cases.extend(run_tasks(tasks));
    let notes = envelope_note("scheme", "(M, S) triples", skipped, format!("|S|·|M| ≤ {}", opts.max_triple_size))
        .into_iter()
        .collect();
    (cases, notes)
}

fn embedding(corpus: &Corpus, opts: &SuiteOptions) -> (Vec<Case>, Vec<String>) {
    let mut refused = Vec::new();
    let classified = classified_left(corpus, "embedding", &mut refused);
    let bound = BigInt::from(opts.max_triple_size);
    let mut tasks: Vec<Task> = Vec::new();
    let mut skipped = 0;
    for (cr, m, flat) in classified {
        let algs: Vec<usize> = (0..cr.algebras.objects().len())
            .filter(|&k| size(&m.module) * cr.algebras.objects()[k].ring().order() <= bound)
            .collect();
        skipped += cr.algebras.objects().len() - algs.len();
        match flat {
            Err(e) => refused.push(error_case(format!("embedding/{}", m.id), e, witness(&cr.ring, &[("M", m)], None))),
            Ok(true) => {
                for k in algs {
                    tasks.push(Box::new(move || {
                        let s = &cr.algebras.objects()[k];
                        let id = format!("embedding/{}@{}", m.id, cr.algebra_id(k));
                        let w = || witness(&cr.ring, &[("M", m)], Some((cr.algebra_id(k), s)));
                        let case = match product_embedding(&m.module, s) {
                            Ok((ker, maps)) if ker.is_trivial() => Case::new(
                                id,
                                Status::Pass,
                                format!("flat M: S ⊗_R M → ∏ S is injective ({} generators of Hom_R(M, R))", maps.len()),
                            ),
                            Ok((ker, _)) => Case::new(id, Status::Fail, format!("flat M but the kernel is {}", ker)).with_witness(w()),
                            Err(e) => error_case(id, e, w()),
                        };
                        vec![case.with_hypothesis(hyp_of(cr, true))]
                    }));
                }
            }
            Ok(false) => {
                tasks.push(Box::new(move || {
                    let id = format!("embedding/{}", m.id);
                    let mut errors = Vec::new();
                    for &k in &algs {
                        let s = &cr.algebras.objects()[k];
                        match product_embedding(&m.module, s) {
                            Ok((ker, _)) if !ker.is_trivial() => {
                                let detail = format!("non-flat M; expected-negative witness at {}: the kernel is {}", s.name(), ker);
                                let wit = witness(&cr.ring, &[("M", m)], Some((cr.algebra_id(k), s)));
                                return vec![Case::new(id, Status::Pass, detail).with_witness(wit).with_hypothesis(hyp_of(cr, false))];
                            }
                            Ok(_) => {}
                            Err(e) => errors.push(e.to_string()),
                        }
                    }
                    let detail = if errors.is_empty() {
                        format!("non-flat M; injective at all {} corpus algebras tried", algs.len())
                    } else {
                        format!("non-flat M; no witness found, errors: {}", errors.join("; "))
                    };
                    vec![Case::new(id, Status::Inconclusive, detail).with_hypothesis(hyp_of(cr, false))]
                }));
            }
        }
    }
    let mut cases = refused;
    cases.extend(run_tasks(tasks));
    let notes = envelope_note("embedding", "(M, S) triples", skipped, format!("|S|·|M| ≤ {}", opts.max_triple_size))
        .into_iter()
        .collect();
    (cases, notes)
}

fn factorization(corpus: &Corpus, opts: &SuiteOptions) -> (Vec<Case>, Vec<String>) {
    let mut refused = Vec::new();
    let classified = classified_left(corpus, "factorization", &mut refused);
    let pair_bound = BigInt::from(opts.max_pair_size);
    let limit = opts.max_kernel_elements;
    let mut tasks: Vec<Task> = Vec::new();
    let mut skipped = 0;
    for (cr, m, flat) in classified {
        let partners: Vec<&Entry> = cr.right.iter().filter(|n| pair_size(&n.module, &m.module) <= pair_bound).collect();
        skipped += cr.right.len() - partners.len();
        match flat {
            Err(e) => refused.push(error_case(format!("factorization/{}", m.id), e, witness(&cr.ring, &[("M", m)], None))),
            Ok(true) => {
                for n in partners {
                    tasks.push(Box::new(move || {
                        let id = format!("factorization/{}⊗{}", n.id, m.id);
                        let w = || witness(&cr.ring, &[("N", n), ("M", m)], None);
                        let case = match factorization_search(&n.module, &m.module, limit) {
                            Ok(out) if out.violation.is_none() => {
                                Case::new(id, Status::Pass, format!("flat M: all {} elements of 𝒩^r(M) factor", out.checked))
                            }
                            Ok(out) => {
                                let mut wit = w();
                                wit["phi"] = json!(ints(out.violation.as_deref().unwrap_or_default()));
                                Case::new(id, Status::Fail, "flat M but some φ does not factor through 𝒬^r(M)").with_witness(wit)
                            }
                            Err(FunctorError::Input(msg)) => Case::new(id, Status::Inconclusive, format!("not enumerated: {}", msg)),
                            Err(e) => error_case(id, e, w()),
                        };
                        vec![case.with_hypothesis(hyp_of(cr, true))]
                    }));
                }
            }
            Ok(false) => {
                tasks.push(Box::new(move || {
                    let id = format!("factorization/{}", m.id);
                    let mut searched = 0;
                    let mut notes = Vec::new();
                    for n in &partners {
                        match factorization_search(&n.module, &m.module, limit) {
                            Ok(out) => {
                                searched += 1;
                                if let Some(phi) = out.violation {
                                    let mut wit = witness(&cr.ring, &[("N", n), ("M", m)], None);
                                    wit["phi"] = json!(ints(&phi));
                                    let detail = format!("non-flat M; expected-negative: a φ over N = {} does not factor", n.id);
                                    return vec![Case::new(id, Status::Pass, detail).with_witness(wit).with_hypothesis(hyp_of(cr, false))];
                                }
                            }
                            Err(e) => notes.push(format!("{}: {}", n.id, e)),
                        }
                    }
                    let mut detail = format!(
                        "non-flat M; no violation over {} corpus right modules (the theorem guarantees existence over some N, possibly outside the corpus)",
                        searched
                    );
                    if !notes.is_empty() {
                        detail.push_str(&format!("; not searched: {}", notes.join("; ")));
                    }
                    vec![Case::new(id, Status::Inconclusive, detail).with_hypothesis(hyp_of(cr, false))]
                }));
            }
        }
    }
    let mut cases = refused;
    cases.extend(run_tasks(tasks));
    let notes = envelope_note("factorization", "(N, M) pairs", skipped, format!("|N|·|M|·|R|² ≤ {}", opts.max_pair_size))
        .into_iter()
        .chain([format!("factorization: 𝒩^r(M) is enumerated up to {} elements", limit)])
        .collect();
    (cases, notes)
}

/// A generating set of `M` different from the canonical additive generators:
/// the canonical ones in shuffled order, each perturbed by an earlier one, plus a
/// random redundant element.
fn alternative_generators(m: &ModulePres, rng: &mut ChaCha8Rng) -> Vec<Elem> {
    let g = m.additive();
    let mut gens: Vec<Elem> = (0..g.rank()).map(|i| g.generator(i)).collect();
    gens.shuffle(rng);
    for i in 1..gens.len() {
        let j = rng.gen_range(0..i);
        let k = BigInt::from(rng.gen_range(0..3u32));
        gens[i] = g.add(&gens[i], &g.scale(&k, &gens[j]));
    }
    gens.push(random_element(g, rng));
    gens
}

fn flat_projective(corpus: &Corpus, opts: &SuiteOptions) -> (Vec<Case>, Vec<String>) {
    let mut tasks: Vec<Task> = Vec::new();
    for cr in &corpus.rings {
        for m in cr.left.iter().chain(&cr.right) {
            tasks.push(Box::new(move || {
                let id = format!("flat-projective/{}", m.id);
                let w = || witness(&cr.ring, &[("M", m)], None);
                let run = || -> Result<(bool, bool), FunctorError> {
                    Ok((is_flat(&m.module).map_err(module_error)?, is_projective(&m.module).map_err(module_error)?))
                };
                vec![match run() {
                    Ok((f, p)) if f == p => Case::new(id, Status::Pass, format!("flat = projective = {}", f)),
                    Ok((f, p)) => Case::new(id, Status::Fail, format!("flat = {}, projective = {}", f, p)).with_witness(w()),
                    Err(e) => error_case(id, e, w()),
                }]
            }));
        }
    }
    // Tor₁ against cyclic right modules does not depend on the free cover of M
    for (ri, cr) in corpus.rings.iter().enumerate() {
        let cyclic: Vec<&Entry> = cr.right.iter().filter(|e| e.name.starts_with("R/")).take(opts.tor_partners).collect();
        for (mi, m) in cr.left.iter().enumerate() {
            let cyclic = cyclic.clone();
            let seed = opts.seed ^ ((ri as u64) << 32 | mi as u64);
            tasks.push(Box::new(move || {
                let id = format!("flat-projective/tor/{}", m.id);
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let gens = alternative_generators(&m.module, &mut rng);
                let run = || -> Result<Option<(String, AbelianGroup, AbelianGroup)>, FunctorError> {
                    for n in &cyclic {
                        let a = tor1(&n.module, &m.module).map_err(module_error)?;
                        let b = tor1_with_generators(&n.module, &m.module, &gens).map_err(module_error)?;
                        if a != b {
                            return Ok(Some((n.id.clone(), a, b)));
                        }
                    }
                    Ok(None)
                };
                vec![match run() {
                    Ok(None) => Case::new(id, Status::Pass, format!("Tor₁ agrees for two presentations against {} cyclic modules", cyclic.len())),
                    Ok(Some((n, a, b))) => {
                        let mut wit = witness(&cr.ring, &[("M", m)], None);
                        wit["generators"] = json!(gens.iter().map(|g| ints(g)).collect::<Vec<_>>());
                        Case::new(id, Status::Fail, format!("Tor₁({}, M) is {} or {} depending on the presentation", n, a, b)).with_witness(wit)
                    }
                    Err(e) => error_case(id, e, witness(&cr.ring, &[("M", m)], None)),
                }]
            }));
        }
    }
    (run_tasks(tasks), vec![])
}

/// The rings of the hypothesis search: `[[ℤ/a, ℤ/b], [0, ℤ/c]]` for `a, b, c`
/// in `{2, 4}` (including the guaranteed `𝔽₂` case), and `ℤ/4 × ℤ/2`.
pub fn search_family(max_order: u64) -> Vec<(String, FiniteRing)> {
    let mut out = Vec::new();
    for a in [2u64, 4] {
        for b in [2u64, 4] {
            for c in [2u64, 4] {
                if a % b != 0 || c % b != 0 || a * b * c > max_order {
                    continue;
                }
                if let Ok(r) = FiniteRing::generalized_triangular(a, b, c) {
                    out.push((format!("T({},{},{})", a, b, c), r));
                }
            }
        }
    }
    if max_order >= 8 {
        if let (Ok(z4), Ok(z2)) = (FiniteRing::cyclic(4), FiniteRing::cyclic(2)) {
            if let Ok(p) = FiniteRing::product(&z4, &z2) {
                out.push(("Z4xZ2".into(), p));
            }
        }
    }
    out
}

/// Modules of the search: 0, R, every cyclic R/I, and seeded quotients of R² by one element.
fn search_modules(ring: &Ring, side: Side, bound: &BigInt, rng: &mut ChaCha8Rng) -> Vec<Entry> {
    let mut out = vec![Entry {
        id: String::new(),
        name: "0".into(),
        module: ModulePres::zero(ring.clone(), side),
    }];
    let reg = ModulePres::regular(ring.clone(), side);
    if size(&reg) <= *bound {
        out.push(Entry {
            id: String::new(),
            name: "R".into(),
            module: reg,
        });
    }
    let iside = if side == Side::Left { IdealSide::Left } else { IdealSide::Right };
    if let Ok(ideals) = ring.ideals(iside, ring.order_usize()) {
        for (k, i) in ideals.iter().enumerate() {
            if i.is_zero() || i.order() == ring.order_usize() {
                continue;
            }
            out.push(Entry {
                id: String::new(),
                name: format!("R/I{}", k),
                module: ModulePres::cyclic(ring.clone(), i),
            });
        }
    }
    let free2 = ModulePres::free(ring.clone(), 2, side);
    for t in 0..SEARCH_QUOTIENTS {
        let x = random_element(free2.additive(), rng);
        let q = free2.quotient(&[x]).0;
        if size(&q) <= *bound && !q.is_zero() && !out.iter().any(|e| e.module.same_as(&q)) {
            out.push(Entry {
                id: String::new(),
                name: format!("R^2/q{}", t),
                module: q,
            });
        }
    }
    out
}

const SEARCH_QUOTIENTS: usize = 3;

fn random_element(g: &AbelianGroup, rng: &mut ChaCha8Rng) -> Elem {
    g.orders()
        .iter()
        .map(|d| BigInt::from(rng.gen_range(0..=u64::try_from(d - 1u32).unwrap_or(0))))
        .collect()
}

fn hp2_search(corpus: &Corpus, opts: &SuiteOptions) -> (Vec<Case>, Vec<String>) {
    let max_ring = corpus
        .manifest
        .max_ring_order
        .parse::<u64>()
        .unwrap_or(opts.max_search_ring_order)
        .min(opts.max_search_ring_order);
    let module_bound = BigInt::from(corpus.manifest.max_module_order.parse::<u64>().unwrap_or(64));
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let family: Vec<(String, Ring, Vec<Entry>, Vec<Entry>)> = search_family(max_ring)
        .into_iter()
        .map(|(name, r)| {
            let r: Ring = Arc::new(r);
            let tag = |side: &str, mut list: Vec<Entry>| {
                for e in list.iter_mut() {
                    e.id = format!("{}/{}:{}", name, side, e.name);
                }
                list
            };
            let left = tag("L", search_modules(&r, Side::Left, &module_bound, &mut rng));
            let right = tag("R", search_modules(&r, Side::Right, &module_bound, &mut rng));
            (name, r, left, right)
        })
        .collect();
    let bound = BigInt::from(opts.max_pair_size);
    let mut tasks: Vec<Task> = Vec::new();
    let mut skipped = 0;
    for (_, ring, left, right) in &family {
        for n in right {
            for m in left {
                if pair_size(&n.module, &m.module) > bound {
                    skipped += 1;
                    continue;
                }
                tasks.push(Box::new(move || vec![comparison_case(ring, n, m, format!("hp2-search/{}⊗{}", n.id, m.id))]));
            }
        }
    }
    let names: Vec<String> = family
        .iter()
        .map(|(n, r, _, _)| format!("{} ({})", n, ring_regime(r).as_str()))
        .collect();
    let mut notes = vec![format!(
        "hp2-search: envelope is the rings {} with ring order ≤ {}, modules 0, R, every cyclic R/I and {} seeded quotients of R² per side, of order ≤ {}",
        names.join(", "),
        max_ring,
        SEARCH_QUOTIENTS,
        module_bound
    )];
    notes.extend(envelope_note("hp2-search", "(N, M) pairs", skipped, format!("|N|·|M|·|R|² ≤ {}", opts.max_pair_size)));
    (run_tasks(tasks), notes)
}
