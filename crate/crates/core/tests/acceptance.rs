//! Acceptance runner: one line per criterion with its outcome and runtime.
//!
//! Runs as a plain binary so the lines show up in `cargo test` output.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hahnsat_core::coeff::{Coeff, CoeffField};
use hahnsat_core::cut::{
    check_separation, classify_cut, encode_group_type_as_field_cut, realize_cut, Ambient,
    CutCase, CutProblem, RealizationReport, SampleConfig, Witness, DEFAULT_K_MAX,
};
use hahnsat_core::gen;
use hahnsat_core::group::{group_value, ExpVec, ValueSetPoint};
use hahnsat_core::harness::{
    component_iso_check, dimension_inequality_suite, eta0_suite, run_suite, Eta0Order,
    SuiteConfig, SUITES,
};
use hahnsat_core::pseudo::check_pseudo_cauchy;
use hahnsat_core::report::{self, ReportWriter};
use hahnsat_core::series::{Precision, Series, Val};
use hahnsat_core::Rat;

type Check = std::result::Result<String, String>;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn val(s: &Series) -> Val {
    s.valuation().expect("exact series have a value")
}

fn valuation_axioms() -> Check {
    let mut r = rng(1);
    for _ in 0..1000 {
        let x = gen::expvec(&mut r, 3, 5);
        let y = gen::expvec(&mut r, 3, 5);
        let mut m = 0;
        while m == 0 {
            m = r.gen_range(-10i64..=10);
        }
        let mx = x.scale(&Rat::from_integer(m.into()));
        ensure(group_value(&mx) == group_value(&x), || format!("v({m}*{x}) != v({x})"))?;
        let (vx, vy, vs) = (group_value(&x), group_value(&y), group_value(&(&x + &y)));
        ensure(vs >= vx.min(vy), || format!("ultrametric fails for {x}, {y}"))?;
        if vx != vy {
            ensure(vs == vx.min(vy), || format!("v({x} + {y}) is not the minimum"))?;
        }
    }
    for _ in 0..500 {
        let f = gen::series(&mut r, 2, 4, 4, CoeffField::QSqrt2);
        let g = gen::series(&mut r, 2, 4, 4, CoeffField::QSqrt2);
        let mut m = 0;
        while m == 0 {
            m = r.gen_range(-10i64..=10);
        }
        ensure(val(&f.scale(&Coeff::from_int(m))) == val(&f), || format!("v({m}*({f})) != v({f})"))?;
        let (vf, vg, vs) = (val(&f), val(&g), val(&(&f + &g)));
        ensure(vs >= vf.clone().min(vg.clone()), || format!("ultrametric fails for {f}, {g}"))?;
        if vf != vg {
            ensure(vs == vf.min(vg), || format!("v({f} + {g}) is not the minimum"))?;
        }
    }
    Ok("1000 vector pairs and 500 series pairs".into())
}

fn multiplicativity() -> Check {
    let mut r = rng(2);
    for _ in 0..500 {
        let f = gen::series(&mut r, 2, 4, 4, CoeffField::QSqrt2);
        let g = gen::series(&mut r, 2, 4, 4, CoeffField::QSqrt2);
        ensure(val(&(&f * &g)) == val(&f).plus(&val(&g)), || {
            format!("v(fg) != v(f) + v(g) for f = {f}, g = {g}")
        })?;
    }
    Ok("500 pairs".into())
}

/// Exact positive series whose leading coefficient is a rational square.
fn square_led_series(r: &mut ChaCha8Rng) -> Series {
    let f = gen::positive_series(r, 2, 4, 3, CoeffField::Rational);
    let (_, c) = f.leading().cloned().expect("nonzero");
    let q = Rat::from_integer(r.gen_range(1i64..=4).into()) / Rat::from_integer(r.gen_range(1i64..=3).into());
    f.scale(&c.inverse().expect("nonzero").scale(&(&q * &q)))
}

fn round_trips() -> Check {
    let mut r = rng(3);
    let p = Precision::order(2, 4);
    let mut inexact = 0;
    for _ in 0..500 {
        let f = square_led_series(&mut r);
        let one = Series::constant(Coeff::one(), 2);
        let inv = f.inverse(&p).map_err(|e| format!("inverse of {f}: {e}"))?;
        let prod = &f * &inv;
        ensure((&prod - &one).terms().is_empty(), || {
            format!("f * f^-1 = {prod} differs from 1 below its truncation, f = {f}")
        })?;
        let half = f
            .power(&Rat::new(1.into(), 2.into()), &p)
            .map_err(|e| format!("sqrt of {f}: {e}"))?;
        let sq = &half * &half;
        ensure((&sq - &f).terms().is_empty(), || {
            format!("(f^(1/2))^2 = {sq} differs from f = {f} below its truncation")
        })?;
        if !prod.is_exact() {
            inexact += 1;
        }
    }
    Ok(format!("500 series, {inexact} with truncated inverses"))
}

fn pseudo_cauchy_fact() -> Check {
    let mut r = rng(4);
    for _ in 0..200 {
        let len = r.gen_range(3..=12);
        let xs = gen::pseudo_cauchy(&mut r, 2, len, 3);
        let seq = check_pseudo_cauchy(&xs).map_err(|e| format!("generated sequence rejected: {e}"))?;
        let a = seq.elems();
        for rho in 0..a.len() {
            for sigma in rho + 1..a.len() {
                ensure(val(&(&a[sigma] - &a[rho])) == val(&(&a[rho + 1] - &a[rho])), || {
                    format!("v(a_{sigma} - a_{rho}) differs from the step value")
                })?;
            }
        }
        let lim = seq.construct_pseudo_limit();
        ensure(seq.is_pseudo_limit(&lim).unwrap_or(false), || {
            format!("{lim} is not a pseudo-limit of the generated sequence")
        })?;
    }
    Ok("200 sequences".into())
}

fn x(e: &[(i64, i64)]) -> Series {
    Series::x_pow(ExpVec::from_fracs(e))
}

fn canonical_problems() -> Vec<(&'static str, CutProblem, CutCase)> {
    let value = CutProblem::new(vec![x(&[(1, 1), (0, 1)])], x(&[(0, 1), (1, 1)]), SampleConfig::new(1, 2));
    let residue = |sign: i64| {
        let c = Coeff::sqrt2().scale(&Rat::from_integer(sign.into()));
        let x0 = &Series::constant(c, 1) + &x(&[(1, 1)]);
        CutProblem::new(
            vec![x(&[(1, 1)])],
            x0,
            SampleConfig::new(1, 1).with_field(CoeffField::Rational),
        )
    };
    let mut imm = Series::zero().pad_to(1);
    for i in 1..=8 {
        imm = &imm + &x(&[(2 * i + 1, i + 1)]);
    }
    vec![
        ("value", value, CutCase::ValueTranscendental),
        ("residue", residue(1), CutCase::ResidueTranscendental),
        ("residue-mirrored", residue(-1), CutCase::ResidueTranscendental),
        (
            "immediate",
            CutProblem::new(vec![x(&[(1, 1)])], imm, SampleConfig::new(1, 1)),
            CutCase::ImmediateTranscendental,
        ),
    ]
}

fn claims_hold(rep: &RealizationReport) -> std::result::Result<(), String> {
    match &rep.witness {
        Witness::Value {
            gamma,
            max_delta1,
            min_delta2,
            ..
        } => ensure(
            max_delta1.as_ref().is_none_or(|m| m < gamma) && min_delta2.as_ref().is_none_or(|m| gamma < m),
            || "case (b) claim fails".into(),
        ),
        Witness::Residue { rho_lo, rho_hi, .. } => {
            ensure(rho_lo < rho_hi, || "residue chain is not strict".into())
        }
        Witness::Immediate { .. } => Ok(()),
    }
}

fn trichotomy() -> Check {
    let mut summary = Vec::new();
    for (name, p, expected) in canonical_problems() {
        let an = classify_cut(&p).map_err(|e| format!("{name}: {e}"))?;
        ensure(an.case == expected, || format!("{name}: classified as {}", an.case))?;
        let mut amb = Ambient::new(p.dim);
        let rep = realize_cut(&p, &mut amb, 1).map_err(|e| format!("{name}: {e}"))?;
        ensure(rep.case == expected, || format!("{name}: realized as {}", rep.case))?;
        claims_hold(&rep).map_err(|e| format!("{name}: {e}"))?;
        let (b, c) = check_separation(&rep.realizer, &an).map_err(|e| format!("{name}: {e}"))?;
        ensure(b > 0 && c > 0, || format!("{name}: empty side"))?;
        summary.push(format!("{name} r = {} (|B| = {b}, |C| = {c})", rep.realizer));
    }
    Ok(summary.join("; "))
}

fn dimension_inequality() -> Check {
    let cfg = SuiteConfig {
        seed: 6,
        trials: 50,
        depth: 3,
        n: 2,
        ..SuiteConfig::default()
    };
    let rep = dimension_inequality_suite(&cfg);
    ensure(rep.ok(), || format!("counterexamples: {:?}", rep.counterexamples))?;
    ensure(rep.tag("needs-precision") == 0, || "precision exhaustion during sampling".into())?;
    Ok(format!("{} generator sets, 0 counterexamples", rep.passed))
}

fn reverse_encodings() -> Check {
    let mut r = rng(7);
    let p = Precision::order(2, 6);
    for trial in 0..50 {
        let reps: Vec<Series> = (0..r.gen_range(1..=2))
            .map(|_| gen::positive_series(&mut r, 2, 2, 3, CoeffField::Rational))
            .collect();
        let values: Vec<ExpVec> = reps.iter().map(|s| s.finite_valuation().unwrap()).collect();
        let mut hs: Vec<ExpVec> = (0..r.gen_range(0..=4))
            .map(|_| {
                values.iter().fold(ExpVec::zero(2), |acc, v| {
                    &acc + &v.scale(&Rat::new(r.gen_range(-4i64..=4).into(), r.gen_range(1i64..=3).into()))
                })
            })
            .collect();
        hs.sort();
        hs.dedup();
        let cut = r.gen_range(0..=hs.len());
        let (h1, h2) = hs.split_at(cut);
        let pred = encode_group_type_as_field_cut(h1, h2, &reps, DEFAULT_K_MAX, &p)
            .map_err(|e| format!("trial {trial}: {e}"))?;
        let g = match (h1.last(), h2.first()) {
            (Some(a), Some(b)) => a.midpoint(b),
            (Some(a), None) => a + &ExpVec::unit(2, 1),
            (None, Some(b)) => b - &ExpVec::unit(2, 1),
            (None, None) => ExpVec::zero(2),
        };
        let unit = &Series::constant(Coeff::from_int(r.gen_range(1i64..=5)), 2) + &x(&[(1, 1), (0, 1)]);
        let sat = &Series::x_pow(g.clone()) * &unit;
        ensure(pred.holds(&sat).unwrap_or(false), || format!("trial {trial}: {sat} does not satisfy"))?;
        let v = pred.extract(&sat).map_err(|e| e.to_string())?;
        ensure(pred.value_between(&v), || format!("trial {trial}: extracted {v} is not between"))?;
        if let Some(h) = h1.last() {
            let off = Series::x_pow(h.clone());
            ensure(!pred.holds(&off).unwrap_or(true), || format!("trial {trial}: x^{h} satisfies"))?;
        }
    }
    // pairs where the perturbation cancels a term down to the truncation
    // are undecidable and redrawn
    let (mut decided, mut redrawn) = (0, 0);
    while decided < 100 {
        ensure(redrawn < 1000, || "too many undecidable pairs".into())?;
        let len = r.gen_range(3..=8);
        let xs = gen::pseudo_cauchy(&mut r, 2, len, 3);
        let seq = check_pseudo_cauchy(&xs).map_err(|e| e.to_string())?;
        let lim = seq.construct_pseudo_limit();
        let delta = if r.gen_bool(0.5) {
            seq.gammas()[r.gen_range(0..seq.gammas().len())].clone()
        } else {
            gen::expvec(&mut r, 2, 3)
        };
        let pert = Series::monomial(Coeff::from_int(r.gen_range(1i64..=5)), delta);
        let cand = if r.gen_bool(0.2) { lim } else { &lim + &pert };
        let frag = seq.limit_type_fragment(DEFAULT_K_MAX);
        match (frag.holds(&cand), frag.valuation_criterion(&cand)) {
            (Ok(a), Ok(b)) => {
                ensure(a == b, || format!("fragment {a}, valuation criterion {b} for {cand}"))?;
                decided += 1;
            }
            (Err(e), _) | (_, Err(e)) if e.is_precision() => redrawn += 1,
            (Err(e), _) | (_, Err(e)) => return Err(e.to_string()),
        }
    }
    Ok(format!("50 encodings at k_max = 100, 100 fragment pairs ({redrawn} undecidable redrawn)"))
}

fn suite_bytes(name: &str, cfg: &SuiteConfig, order: Eta0Order) -> Vec<u8> {
    let rep = run_suite(name, cfg, order).expect("known suite");
    let mut w = ReportWriter::new(Vec::new()).unwrap();
    w.record("suite", report::suite_config(cfg), report::suite(&rep)).unwrap();
    w.into_inner()
}

fn realize_bytes(p: &CutProblem) -> Vec<u8> {
    let mut amb = Ambient::new(p.dim);
    let rep = realize_cut(p, &mut amb, 1).expect("canonical instance");
    let mut w = ReportWriter::new(Vec::new()).unwrap();
    w.record("realize", serde_json::json!({ "depth": p.config.depth }), report::realization(&rep))
        .unwrap();
    w.into_inner()
}

fn determinism() -> Check {
    let cfg = SuiteConfig {
        seed: 8,
        trials: 30,
        ..SuiteConfig::default()
    };
    let mut runs = 0;
    for name in SUITES {
        let orders: &[Eta0Order] = if *name == "eta0" {
            &[Eta0Order::Lex, Eta0Order::Gamma, Eta0Order::Rational]
        } else {
            &[Eta0Order::Lex]
        };
        for &o in orders {
            ensure(suite_bytes(name, &cfg, o) == suite_bytes(name, &cfg, o), || {
                format!("suite {name} differs between runs")
            })?;
            runs += 1;
        }
    }
    for (name, p, _) in canonical_problems() {
        ensure(realize_bytes(&p) == realize_bytes(&p), || format!("realize {name} differs between runs"))?;
        runs += 1;
    }
    let iso = component_iso_check(&cfg);
    ensure(iso.ok(), || format!("component-iso: {:?}", iso.counterexamples))?;
    Ok(format!("{runs} reports reproduced byte for byte"))
}

fn honest_negatives() -> Check {
    let cfg = SuiteConfig {
        seed: 9,
        trials: 100,
        n: 3,
        ..SuiteConfig::default()
    };
    let gamma = eta0_suite(&cfg, Eta0Order::Gamma);
    ensure(gamma.ok(), || format!("gamma: {:?}", gamma.counterexamples))?;
    ensure(gamma.tag("no-witness") > 0, || "no NoWitness over the finite value set".into())?;
    let lex = eta0_suite(&cfg, Eta0Order::Lex);
    ensure(lex.ok() && lex.tag("no-witness") == 0, || format!("lex: {:?}", lex.counterexamples))?;
    let direct = hahnsat_core::harness::eta0_witness(
        &[ValueSetPoint::Index(1)],
        &[ValueSetPoint::Index(2)],
        &hahnsat_core::harness::FiniteGamma(3),
    );
    ensure(matches!(direct, Err(hahnsat_core::Error::NoWitness(_))), || "adjacent classes had a witness".into())?;
    Ok(format!(
        "value set: {} NoWitness of {}; lex: {} midpoints",
        gamma.tag("no-witness"),
        gamma.passed,
        lex.passed
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> Check); 9] = [
        ("valuation axioms", 10, valuation_axioms),
        ("field multiplicativity", 10, multiplicativity),
        ("inverse and power round-trips", 30, round_trips),
        ("pseudo-Cauchy fact and pseudo-limits", 20, pseudo_cauchy_fact),
        ("trichotomy end-to-end", 60, trichotomy),
        ("dimension inequality", 60, dimension_inequality),
        ("reverse encodings", 30, reverse_encodings),
        ("determinism", 120, determinism),
        ("honest negatives", 30, honest_negatives),
    ];
    let mut failures = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let in_time = took < Duration::from_secs(*limit);
        let (tag, detail) = match (&outcome, in_time) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("too slow; {d}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if tag == "FAIL" {
            failures += 1;
        }
        println!(
            "criterion {}: {tag} {name} [{:.2}s, limit {limit}s] {detail}",
            i + 1,
            took.as_secs_f64()
        );
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
