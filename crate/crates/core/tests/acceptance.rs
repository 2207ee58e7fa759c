//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use poset_wap::amalgam::{amalgam_exists, jep_join, DEFAULT_MAX_NODES};
use poset_wap::freeness::{claim_check, free_verify_bounded};
use poset_wap::generators::{
    all_partial_automorphisms, all_posets, is_saturated_over, one_point_types, random_pa_extension_capped,
    random_pa_pair, saturate,
};
use poset_wap::lemma1::{lemma1_extend, Lemma1Bounds};
use poset_wap::partial_auto::validate_pa;
use poset_wap::witness::{
    base_pair, build_a0, build_a1, build_a2, build_witness, eval_word, make_certificate, obstruction_words, X, Z,
};
use poset_wap::{extend_by_pair, Error, PaEmbedding, PaPair, PartialAutomorphism, Result};

const LIMIT_FACT1: Duration = Duration::from_secs(60);
const LIMIT_JEP: Duration = Duration::from_secs(30);
const LIMIT_LEMMA1: Duration = Duration::from_secs(600);
const LIMIT_WITNESS: Duration = Duration::from_secs(10);
const LIMIT_REFUTE: Duration = Duration::from_secs(600);
const LIMIT_ORACLE: Duration = Duration::from_secs(900);
const LIMIT_ROBUST: Duration = Duration::from_secs(900);
const LIMIT_SATURATE: Duration = Duration::from_secs(60);

const JEP_CASES: u64 = 200;
const JEP_MAX_POINTS: usize = 6;
const LEMMA1_RANDOM_INPUTS: usize = 50;
const LEMMA1_MAX_POINTS: usize = 5;
const FREE_K_POINTS: usize = 2;
const FREE_L_CHAIN: usize = 2;
const ORACLE_TRIPLES: u64 = 5000;
const ROBUST_INPUTS: u64 = 25;
const ROBUST_MAX_POINTS: usize = 6;
const FACT1_MAX_POINTS: usize = 4;
const SATURATE_MAX_POINTS: usize = 3;
const SATURATE_MAX_K: usize = 2;
const TYPES_MAX_POINTS: usize = 4;

struct Outcome {
    pass: bool,
    detail: String,
}

fn run(n: u32, name: &str, limit: Duration, body: impl FnOnce() -> Outcome) -> bool {
    let t = Instant::now();
    let out = body();
    let took = t.elapsed();
    let pass = out.pass && took <= limit;
    println!(
        "criterion {n} [{name}]: {} ({}; {:.2}s, limit {}s)",
        if pass { "PASS" } else { "FAIL" },
        out.detail,
        took.as_secs_f64(),
        limit.as_secs()
    );
    pass
}

fn fact1() -> Outcome {
    let (mut cases, mut bad) = (0u64, 0u64);
    for size in 0..=FACT1_MAX_POINTS {
        for p in all_posets(size) {
            for h in all_partial_automorphisms(&p) {
                for &c in p.elements().iter().filter(|&&c| !h.map.in_domain(c)) {
                    for &d in p.elements().iter().filter(|&&d| !h.map.in_range(d)) {
                        cases += 1;
                        let fast = extend_by_pair(&h, c, d).is_ok();
                        let direct = validate_pa(&p, h.map.pairs().chain([(c, d)])).is_ok();
                        if fast != direct {
                            bad += 1;
                        }
                    }
                }
            }
        }
    }
    Outcome { pass: bad == 0, detail: format!("{cases} cases, {bad} discrepancies") }
}

fn jep() -> Outcome {
    let mut bad = 0;
    for seed in 0..JEP_CASES {
        let p1 = random_pa_pair(JEP_MAX_POINTS, 2 * seed);
        let p2 = random_pa_pair(JEP_MAX_POINTS, 2 * seed + 1);
        let ok = match jep_join(&p1, &p2) {
            Ok((j, e1, e2)) => j.validate().is_ok() && e1.is_valid(&p1, &j) && e2.is_valid(&p2, &j),
            Err(_) => false,
        };
        if !ok {
            bad += 1;
        }
    }
    Outcome { pass: bad == 0, detail: format!("{JEP_CASES} cases, {bad} failures") }
}

fn lemma1_case(h: &PartialAutomorphism, s: u32) -> Result<bool> {
    let tr = lemma1_extend(h, s, Lemma1Bounds::default())?;
    let p = &tr.result.poset;
    let shape = tr.result.power(s, tr.n) == Some(tr.a) && p.lt(tr.a, tr.b);
    let valid = validate_pa(p, tr.result.map.pairs()).is_ok();
    let mid = p.fresh_id();
    let ext = p.copy_point_above(tr.a, mid)?;
    let claim = ext.lt(mid, tr.b) && claim_check(&tr.result, tr.a, tr.b, &ext, mid)?.holds();
    let free = free_verify_bounded(&tr.result, tr.a, tr.b, FREE_K_POINTS, FREE_L_CHAIN)?.passed();
    Ok(shape && valid && claim && free)
}

fn lemma1() -> Outcome {
    let mut inputs = vec![(base_pair().pa_f(), X)];
    let mut seed = 0u64;
    while inputs.len() < LEMMA1_RANDOM_INPUTS + 1 {
        let h = random_pa_pair(LEMMA1_MAX_POINTS, 1000 + seed).pa_f();
        seed += 1;
        let s = h.map.pairs().find(|&(s, fs)| h.poset.lt(s, fs)).map(|(s, _)| s);
        if let Some(s) = s {
            inputs.push((h, s));
        }
    }
    let mut bad = Vec::new();
    for (i, (h, s)) in inputs.iter().enumerate() {
        match lemma1_case(h, *s) {
            Ok(true) => {}
            Ok(false) => bad.push(format!("#{i}: postcondition")),
            Err(e) => bad.push(format!("#{i}: {e}")),
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!("base + {LEMMA1_RANDOM_INPUTS} random inputs, {} failures {bad:?}", bad.len()),
    }
}

/// The literal pipeline: A0, A1, A2 and a certificate for the literal words.
fn literal_pipeline(atilde: &PaPair) -> Result<()> {
    let (a0, mut meta) = build_a0(atilde, Lemma1Bounds::default())?;
    let fx = |k| (0..k).try_fold(X, |v, _| a0.f.get(v));
    if !a0.poset.lt(meta.b_f, Z) || !fx(meta.n).is_some_and(|v| a0.poset.lt(v, Z)) {
        return Err(Error::InternalInvariantBroken("b_f < z or f^n(x) < z fails".into()));
    }
    let a1 = build_a1(&a0, &meta)?;
    let (a2, e) = build_a2(&a0, &meta)?;
    meta.e = Some(e);
    make_certificate(&base_pair(), &a1, &a2, &meta, obstruction_words(meta.n, meta.m))?;
    Ok(())
}

/// Whether the repaired pipeline certifies and is refuted by complete search.
fn repaired_pipeline(atilde: &PaPair) -> Result<bool> {
    let w = build_witness(atilde, Lemma1Bounds::default())?;
    w.certificate.check()?;
    let base = base_pair();
    let e1 = PaEmbedding::inclusion(&base, &w.a1)?;
    let e2 = PaEmbedding::inclusion(&base, &w.a2)?;
    Ok(amalgam_exists(&base, &w.a1, &w.a2, &e1, &e2, DEFAULT_MAX_NODES)?.is_none())
}

fn witness_literal() -> Outcome {
    let literal = literal_pipeline(&base_pair());
    let repaired = repaired_pipeline(&base_pair());
    let words = build_a0(&base_pair(), Lemma1Bounds::default())
        .map(|(a0, m)| {
            let (w1, w2) = obstruction_words(m.n, m.m);
            format!("{w1} -> {:?}, {w2} -> {:?} in A0", eval_word(&a0, &w1, X), eval_word(&a0, &w2, X))
        })
        .unwrap_or_default();
    Outcome {
        pass: literal.is_ok(),
        detail: match literal {
            Ok(()) => "literal witness certified".into(),
            Err(e) => format!(
                "literal construction: {e}; {words}; repaired witness certified and refuted: {}",
                repaired.map_or_else(|e| e.to_string(), |b| b.to_string())
            ),
        },
    }
}

fn refutation() -> Outcome {
    let base = base_pair();
    let literal = build_a0(&base, Lemma1Bounds::default()).and_then(|(a0, meta)| {
        let a1 = build_a1(&a0, &meta)?;
        let (a2, _) = build_a2(&a0, &meta)?;
        let e1 = PaEmbedding::inclusion(&base, &a1)?;
        let e2 = PaEmbedding::inclusion(&base, &a2)?;
        amalgam_exists(&base, &a1, &a2, &e1, &e2, DEFAULT_MAX_NODES)
    });
    let repaired = repaired_pipeline(&base);
    let repaired_note = repaired.map_or_else(|e| e.to_string(), |b| format!("None = {b}"));
    match literal {
        Ok(None) => Outcome { pass: true, detail: "literal A1, A2: None".into() },
        Ok(Some(_)) => Outcome { pass: false, detail: "literal A1, A2 amalgamate".into() },
        Err(e) => Outcome {
            pass: false,
            detail: format!("literal A1/A2 unavailable: {e}; repaired A1, A2 over A: {repaired_note}"),
        },
    }
}

fn oracle() -> Outcome {
    let (mut bad, mut some, mut none) = (0, 0, 0);
    for seed in 0..ORACLE_TRIPLES {
        let (a, b, c, eb, ec) = common::amalgam_triple(seed);
        let fast = amalgam_exists(&a, &b, &c, &eb, &ec, DEFAULT_MAX_NODES);
        let slow = common::naive_amalgam(&a, &b, &c, &eb, &ec);
        match fast {
            Ok(r) if r.is_some() == slow => {
                if slow {
                    some += 1
                } else {
                    none += 1
                }
            }
            _ => bad += 1,
        }
    }
    Outcome {
        pass: bad == 0,
        detail: format!("{ORACLE_TRIPLES} triples ({some} amalgamate, {none} do not), {bad} discrepancies"),
    }
}

fn robustness() -> Outcome {
    let (mut literal_ok, mut repaired_ok) = (0, 0);
    let mut first_error = None;
    for seed in 0..ROBUST_INPUTS {
        let atilde = random_pa_extension_capped(&base_pair(), 12, 7000 + seed, ROBUST_MAX_POINTS);
        match literal_pipeline(&atilde) {
            Ok(()) => literal_ok += 1,
            Err(e) => {
                first_error.get_or_insert(e.to_string());
            }
        }
        if matches!(repaired_pipeline(&atilde), Ok(true)) {
            repaired_ok += 1;
        }
    }
    Outcome {
        pass: literal_ok == ROBUST_INPUTS,
        detail: format!(
            "literal pipeline {literal_ok}/{ROBUST_INPUTS} (first error: {}); repaired pipeline {repaired_ok}/{ROBUST_INPUTS}",
            first_error.unwrap_or_else(|| "none".into())
        ),
    }
}

fn saturation() -> Outcome {
    let mut bad = 0;
    let mut checked = 0;
    for size in 0..=SATURATE_MAX_POINTS {
        for p in all_posets(size) {
            for k in 1..=SATURATE_MAX_K {
                checked += 1;
                match saturate(&p, k) {
                    Ok(s) if is_saturated_over(&p, &s, k) && poset_wap::is_extension(&p, &s) => {}
                    _ => bad += 1,
                }
            }
        }
    }
    let mut types_checked = 0;
    for size in 0..=TYPES_MAX_POINTS {
        for p in all_posets(size) {
            types_checked += 1;
            let all: BTreeSet<u32> = p.elements().iter().copied().collect();
            let fast: BTreeSet<_> = one_point_types(&p, &all)
                .unwrap()
                .into_iter()
                .map(|t| (t.greater_than, t.less_than))
                .collect();
            if fast != common::brute_one_point_types(&p) {
                bad += 1;
            }
        }
    }
    Outcome {
        pass: bad == 0,
        detail: format!("{checked} saturations, {types_checked} type enumerations, {bad} discrepancies"),
    }
}

fn main() {
    let results = [
        run(1, "Fact-1 oracle", LIMIT_FACT1, fact1),
        run(2, "JEP", LIMIT_JEP, jep),
        run(3, "Lemma-1 postconditions", LIMIT_LEMMA1, lemma1),
        run(4, "WAP witness, literal words", LIMIT_WITNESS, witness_literal),
        run(5, "machine refutation", LIMIT_REFUTE, refutation),
        run(6, "amalgam vs brute force", LIMIT_ORACLE, oracle),
        run(7, "witness robustness", LIMIT_ROBUST, robustness),
        run(8, "saturation and types", LIMIT_SATURATE, saturation),
    ];
    let failed = results.iter().filter(|&&ok| !ok).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
