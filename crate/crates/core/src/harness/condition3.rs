//! Pseudo-Cauchy sequences of the substructure have pseudo-limits in the
//! ambient field.
//!
//! Sequences are built inside a sampled substructure as partial sums
//! `a_i = a_0 + e_1 + ... + e_i` of sample elements with strictly increasing
//! values. The ambient pseudo-limit is constructed and checked, and the
//! monomial fragment of its type is compared against the valuation
//! criterion.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::coeff::CoeffField;
use crate::cut::{sample_substructure, SampleConfig};
use crate::error::Result;
use crate::gen;
use crate::group::ExpVec;
use crate::pseudo::{check_pseudo_cauchy, PseudoSeq};
use crate::series::Series;

use super::{run_trials, Outcome, SuiteConfig, SuiteReport};

/// Sample depth used for building sequences; deeper samples only add cost.
const SEQUENCE_DEPTH: usize = 2;

fn render(xs: &[Series]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// Distinct-value sample elements, sorted by value.
fn by_value(elems: &[Series]) -> Vec<(ExpVec, Series)> {
    let mut out: Vec<(ExpVec, Series)> = Vec::new();
    for e in elems {
        if let Ok(v) = e.finite_valuation() {
            if !out.iter().any(|(w, _)| *w == v) {
                out.push((v, e.clone()));
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// Whether `holds` and the valuation criterion disagree only because the
/// fragment bounds `n`: every failing index has equal values and a
/// coefficient ratio of at least `n_max`.
fn explained_by_bound(seq: &PseudoSeq, x: &Series, n_max: u64) -> Result<bool> {
    let a = seq.elems();
    for nu in 0..seq.gammas().len() - 1 {
        let d = x - &a[nu + 1];
        if d.valuation()? == crate::series::Val::Finite(seq.gammas()[nu].clone()) {
            let (_, c) = d.leading().expect("finite value");
            let (_, g) = (&a[nu] - &a[nu + 1]).leading().cloned().expect("nonzero step");
            let ratio = (g.abs() * c.abs().inverse()?).to_f64();
            if ratio <= n_max as f64 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn trial<R: Rng>(rng: &mut R, cfg: &SuiteConfig) -> Result<Outcome> {
    let n = cfg.n.max(1);
    let k = rng.gen_range(1..=2usize);
    let gens: Vec<Series> = (0..k)
        .map(|_| gen::series(rng, n, 2, 2, CoeffField::Rational))
        .collect();
    let mut sc = SampleConfig::new(cfg.depth.min(SEQUENCE_DEPTH), n);
    sc.precision = cfg.precision.pad_to(n);
    sc.cap = 300;
    let sample = sample_substructure(&gens, &sc, n)?;
    let pool = by_value(&sample.elements);
    if pool.len() < 3 {
        return Ok(Outcome::Expected("too-few-values"));
    }
    let len = rng.gen_range(3..=pool.len().min(8));
    let mut idx: Vec<usize> = (0..pool.len()).collect();
    idx.shuffle(rng);
    idx.truncate(len - 1);
    idx.sort_unstable();
    let start = sample.elements.choose(rng).expect("nonempty sample").clone();
    let mut xs = vec![start];
    for &i in &idx {
        let next = xs.last().expect("nonempty") + &pool[i].1;
        xs.push(next);
    }
    let input = format!("sequence {}", render(&xs));
    let seq = match check_pseudo_cauchy(&xs) {
        Ok(s) => s,
        Err(e) if e.is_precision() => return Ok(Outcome::Expected("needs-precision")),
        Err(e) => return Ok(Outcome::Fail(format!("{input}: {e}"))),
    };
    let limit = seq.construct_pseudo_limit();
    if !seq.is_pseudo_limit(&limit)? {
        return Ok(Outcome::Fail(format!("{input}: {limit} is not a pseudo-limit")));
    }
    let frag = seq.limit_type_fragment(cfg.k_max);
    if !frag.holds(&limit)? || !frag.valuation_criterion(&limit)? {
        return Ok(Outcome::Fail(format!("{input}: {limit} fails its type fragment")));
    }
    // the bridge between the monomial fragment and the valuation criterion
    let e = sample.elements.choose(rng).expect("nonempty sample");
    let x = &limit + e;
    let by_frag = frag.holds(&x)?;
    let by_val = frag.valuation_criterion(&x)?;
    if by_val && !by_frag {
        return Ok(Outcome::Fail(format!("{input}: x = {x} meets the valuation criterion but not the fragment")));
    }
    if by_frag && !by_val {
        if explained_by_bound(&seq, &x, cfg.k_max)? {
            return Ok(Outcome::Expected("fragment-bound"));
        }
        return Ok(Outcome::Fail(format!("{input}: x = {x} meets the fragment but not the valuation criterion")));
    }
    Ok(Outcome::Pass)
}

pub fn theorem5_condition3_suite(cfg: &SuiteConfig) -> SuiteReport {
    let notes = vec![
        "sequences are partial sums of sampled elements with increasing values".into(),
        "InsufficientPrecision is counted as needs-precision, not as a failure".into(),
    ];
    run_trials("condition3", cfg, notes, |_, rng| {
        trial(rng, cfg).unwrap_or_else(Outcome::from)
    })
}

/// A sequence whose steps cannot be told apart at the truncation of its
/// last element.
pub fn precision_starved_sequence(dim: usize) -> Vec<Series> {
    let x = |p: i64| Series::x_pow(ExpVec::from_ints(&[p]).pad_to(dim));
    let tail = &(&x(1) + &x(2)) + &Series::big_o(ExpVec::from_ints(&[3]).pad_to(dim));
    vec![Series::zero().pad_to(dim), x(1), &x(1) + &x(2), tail]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(p: i64) -> Series {
        Series::x_pow(ExpVec::from_ints(&[p]))
    }

    #[test]
    fn partial_sums_have_a_limit() {
        let xs = vec![
            Series::zero().pad_to(1),
            x(1),
            &x(1) + &x(2),
            &(&x(1) + &x(2)) + &x(3),
        ];
        let seq = check_pseudo_cauchy(&xs).unwrap();
        let lim = seq.construct_pseudo_limit();
        assert!(seq.is_pseudo_limit(&lim).unwrap());
        assert!(seq.limit_type_fragment(100).holds(&lim).unwrap());
    }

    #[test]
    fn starved_sequence_surfaces_precision() {
        let err = check_pseudo_cauchy(&precision_starved_sequence(1)).unwrap_err();
        assert!(err.is_precision(), "{err}");
        assert_eq!(Outcome::from(err), Outcome::Expected("needs-precision"));
    }

    #[test]
    fn suite_passes() {
        let cfg = SuiteConfig {
            trials: 30,
            ..SuiteConfig::default()
        };
        let r = theorem5_condition3_suite(&cfg);
        assert!(r.ok(), "{:?}", r.counterexamples);
        assert!(r.passed > 0);
    }
}
