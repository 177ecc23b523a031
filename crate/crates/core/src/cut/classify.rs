//! Classifying the cut of an ambient element over a sampled substructure.
//!
//! For `x0` outside the substructure `M'`, the set `Δ = {v(d - x0) : d ∈ M'}`
//! either has no maximum (immediate case) or attains one at some `d0`, and
//! then `γ = v(x0 - d0)` lies outside the value group of `M'` (value
//! transcendental) or inside it (residue transcendental).
//!
//! A finite sample always has a maximum, so the engine watches how the
//! maximum moves along a ladder of three samples at depths `d`, `d + 1`,
//! `d + 2`. Each rung also adds `best ± e` for the previous rung's best
//! approximation `best`, which lets the ladder follow a pseudo-Cauchy
//! sequence one step per rung:
//!
//! - no growth on the first step: a maximum was found;
//! - growth on both steps: immediate;
//! - growth then a plateau: ambiguous at this depth.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::group::{ExpVec, SpanBasis};
use crate::series::{Precision, Series, Val};

use super::sample::{sample_substructure, SampleConfig};

/// The three kinds of cut.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CutCase {
    ImmediateTranscendental,
    ValueTranscendental,
    ResidueTranscendental,
}

impl CutCase {
    pub fn name(&self) -> &'static str {
        match self {
            CutCase::ImmediateTranscendental => "immediate",
            CutCase::ValueTranscendental => "value-transcendental",
            CutCase::ResidueTranscendental => "residue-transcendental",
        }
    }
}

impl std::fmt::Display for CutCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// An ambient element together with generators of the substructure whose
/// cut it determines.
#[derive(Clone, Debug)]
pub struct CutProblem {
    pub gens: Vec<Series>,
    pub x0: Series,
    pub config: SampleConfig,
    pub dim: usize,
}

impl CutProblem {
    pub fn new(gens: Vec<Series>, x0: Series, config: SampleConfig) -> Self {
        let dim = gens
            .iter()
            .map(Series::dim)
            .chain(std::iter::once(x0.dim()))
            .max()
            .unwrap_or(1)
            .max(1);
        CutProblem {
            gens,
            x0,
            config,
            dim,
        }
    }

    pub fn with_depth(&self, depth: usize) -> Self {
        let mut out = self.clone();
        out.config = self.config.with_depth(depth);
        out
    }
}

/// One rung of the ladder.
#[derive(Clone, Debug)]
pub struct LadderStep {
    pub depth: usize,
    pub sample_size: usize,
    pub max_delta: ExpVec,
    pub best: Series,
}

/// Outcome of [`classify_cut`].
#[derive(Clone, Debug)]
pub struct DeltaAnalysis {
    pub case: CutCase,
    pub depth: usize,
    pub dim: usize,
    pub x0: Series,
    pub ladder: Vec<LadderStep>,
    /// Every sampled element with `v(d - x0)`, rung by rung.
    pub delta_samples: Vec<(Series, ExpVec)>,
    /// `delta_samples[..check_len]` is the part realizers are checked against.
    pub check_len: usize,
    /// Best approximation and its distance value.
    pub d0: Series,
    pub gamma: ExpVec,
    /// Basis of the values of sampled elements and of their differences with `d0`.
    pub span: SpanBasis,
    /// Positive element of value `gamma` (residue case only).
    pub value_witness: Option<Series>,
    pub precision: Precision,
    /// One element per distinct distance, increasing (immediate case only).
    pub sequence: Vec<Series>,
}

impl DeltaAnalysis {
    pub fn checks(&self) -> &[(Series, ExpVec)] {
        &self.delta_samples[..self.check_len]
    }
}

fn delta(d: &Series, x0: &Series) -> Result<ExpVec> {
    let diff = d - x0;
    match diff.valuation() {
        Ok(Val::Finite(e)) => Ok(e),
        Ok(Val::Infinity) => Err(Error::EqualityDetected(format!("{d} equals x0"))),
        Err(_) => Err(Error::UndecidableAtPrecision(format!(
            "v({d} - x0) is not determined"
        ))),
    }
}

struct Rungs<'a> {
    problem: &'a CutProblem,
    seen: HashSet<Series>,
    acc: Vec<(Series, ExpVec)>,
}

impl Rungs<'_> {
    fn add(&mut self, d: Series) -> Result<()> {
        if self.seen.contains(&d) {
            return Ok(());
        }
        let dv = delta(&d, &self.problem.x0)?;
        self.seen.insert(d.clone());
        self.acc.push((d, dv));
        Ok(())
    }

    /// Adds the depth-`depth` sample, refined around `best`, and returns the
    /// new maximum with its first witness.
    fn rung(&mut self, depth: usize, best: Option<&Series>) -> Result<LadderStep> {
        let p = self.problem;
        let cfg = p.config.with_depth(depth);
        let sample = sample_substructure(&p.gens, &cfg, p.dim)?;
        for e in &sample.elements {
            self.add(e.clone())?;
        }
        if let Some(b) = best {
            for e in &sample.elements {
                for r in [b + e, b - e] {
                    if !r.is_indistinguishable_from_zero() {
                        self.add(r)?;
                    }
                }
            }
        }
        let (best, max) = self
            .acc
            .iter()
            .fold(None::<&(Series, ExpVec)>, |m, cur| match m {
                Some(m) if m.1 >= cur.1 => Some(m),
                _ => Some(cur),
            })
            .ok_or_else(|| Error::NoWitness("empty sample".into()))?;
        Ok(LadderStep {
            depth,
            sample_size: self.acc.len(),
            max_delta: max.clone(),
            best: best.clone(),
        })
    }
}

/// Classifies the cut of `problem.x0` over the sampled substructure.
///
/// Errors with [`Error::AmbiguousAtDepth`] when the ladder grows and then
/// stalls; [`realize_cut`](super::realize_cut) retries one level deeper.
pub fn classify_cut(problem: &CutProblem) -> Result<DeltaAnalysis> {
    let depth = problem.config.depth;
    let mut rungs = Rungs {
        problem,
        seen: HashSet::new(),
        acc: Vec::new(),
    };
    let s0 = rungs.rung(depth, None)?;
    let s1 = rungs.rung(depth + 1, Some(&s0.best))?;
    let mut ladder = vec![s0, s1];
    let (case, check_len) = if ladder[1].max_delta == ladder[0].max_delta {
        (None, rungs.acc.len())
    } else {
        let check_len = rungs.acc.len();
        let s2 = rungs.rung(depth + 2, Some(&ladder[1].best))?;
        let grew = s2.max_delta > ladder[1].max_delta;
        ladder.push(s2);
        if !grew {
            return Err(Error::AmbiguousAtDepth {
                depth,
                before: ladder[0].max_delta.to_string(),
                after: ladder[1].max_delta.to_string(),
            });
        }
        (Some(CutCase::ImmediateTranscendental), check_len)
    };
    let top = ladder.last().expect("ladder is nonempty");
    let d0 = top.best.clone();
    let gamma = top.max_delta.clone();
    let delta_samples = rungs.acc;

    let mut values = Vec::new();
    let mut carriers = Vec::new();
    let mut seen_values = HashSet::new();
    for (e, _) in &delta_samples[..check_len] {
        for w in [e.clone(), e - &d0] {
            if let Ok(Val::Finite(v)) = w.valuation() {
                if seen_values.insert(v.clone()) {
                    values.push(v);
                    carriers.push(w);
                }
            }
        }
    }
    let span = SpanBasis::from_vectors(&values);

    let mut out = DeltaAnalysis {
        case: CutCase::ValueTranscendental,
        depth,
        dim: problem.dim,
        x0: problem.x0.pad_to(problem.dim),
        ladder,
        delta_samples,
        check_len,
        d0,
        gamma,
        span,
        value_witness: None,
        precision: problem.config.precision.pad_to(problem.dim),
        sequence: Vec::new(),
    };
    match case {
        Some(c) => {
            out.case = c;
            out.sequence = increasing_chain(&out.delta_samples);
        }
        None if out.span.contains(&out.gamma) => {
            out.case = CutCase::ResidueTranscendental;
            out.value_witness = Some(value_witness(&out, &values, &carriers)?);
        }
        None => {}
    }
    Ok(out)
}

/// First element of each distinct distance, sorted by distance.
fn increasing_chain(samples: &[(Series, ExpVec)]) -> Vec<Series> {
    let mut firsts: Vec<&(Series, ExpVec)> = Vec::new();
    let mut seen = HashSet::new();
    for s in samples {
        if seen.insert(&s.1) {
            firsts.push(s);
        }
    }
    firsts.sort_by(|a, b| a.1.cmp(&b.1));
    firsts.into_iter().map(|s| s.0.clone()).collect()
}

fn monic_abs(w: &Series) -> Result<Series> {
    let (_, c) = w.leading().ok_or(Error::ZeroArgument)?;
    w.scale(&c.abs().inverse()?).abs()
}

/// A positive element of value `gamma` built from the sample: a sampled
/// element of that value if there is one, otherwise a product of rational
/// powers of the elements carrying the span basis.
fn value_witness(an: &DeltaAnalysis, values: &[ExpVec], carriers: &[Series]) -> Result<Series> {
    if let Some(i) = values.iter().position(|v| *v == an.gamma) {
        return monic_abs(&carriers[i]);
    }
    let coords = an
        .span
        .coordinates(&an.gamma)
        .ok_or_else(|| Error::NonExpressible(an.gamma.to_string()))?;
    let mut acc = Series::constant(crate::coeff::Coeff::one(), an.dim);
    for (b, q) in an.span.vectors().iter().zip(coords) {
        if num_traits::Zero::is_zero(&q) {
            continue;
        }
        let i = values.iter().position(|v| v == b).expect("basis vector is a value");
        let unit = monic_abs(&carriers[i])?;
        acc = &acc * &unit.power(&q, &an.precision)?;
    }
    Ok(acc)
}
