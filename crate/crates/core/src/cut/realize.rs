//! Realizers for the three kinds of cut.
//!
//! Each realizer is an ambient element `r` placed strictly between the
//! sampled lower part `B = {d < x0}` and upper part `C = {d > x0}`. Every
//! realizer re-checks the separation against the sample and reports what it
//! verified.

use std::cmp::Ordering;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::group::ExpVec;
use crate::pseudo::check_pseudo_cauchy;
use crate::series::{Series, Val};
use crate::Rat;

use super::ambient::Ambient;
use super::classify::{classify_cut, CutCase, CutProblem, DeltaAnalysis};

/// Where the best approximation `d0` sits relative to `x0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Below,
    Above,
}

impl Side {
    pub fn name(&self) -> &'static str {
        match self {
            Side::Below => "below",
            Side::Above => "above",
        }
    }
}

/// Case-specific witnesses.
#[derive(Clone, Debug)]
pub enum Witness {
    Immediate {
        sequence: Vec<Series>,
        gammas: Vec<ExpVec>,
        limit: Series,
        limit_distance: ExpVec,
    },
    Value {
        d0: Series,
        gamma: ExpVec,
        side: Side,
        max_delta1: Option<ExpVec>,
        min_delta2: Option<ExpVec>,
        basis: Vec<ExpVec>,
        reduced_params: usize,
        /// `gamma` minus its projection on the sampled span.
        residual: ExpVec,
        g: ExpVec,
        extended_to: Option<usize>,
    },
    Residue {
        d0: Series,
        gamma: ExpVec,
        side: Side,
        a: Series,
        n: u64,
        b0: Series,
        c0: Series,
        rho_lo: Coeff,
        rho_hi: Coeff,
        target: Option<Coeff>,
        r2: Coeff,
        r1: Series,
    },
}

/// A verified fact with the number of sample elements it was checked on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub count: usize,
}

#[derive(Clone, Debug)]
pub struct RealizationReport {
    pub case: CutCase,
    pub depth: usize,
    pub dim: usize,
    pub realizer: Series,
    pub witness: Witness,
    pub checks: Vec<Check>,
    /// Sizes of the sampled lower and upper parts.
    pub below: usize,
    pub above: usize,
    pub nearest_below: Option<Series>,
    pub nearest_above: Option<Series>,
}

struct Separation {
    below: usize,
    above: usize,
    nearest_below: Option<Series>,
    nearest_above: Option<Series>,
}

fn cmp(a: &Series, b: &Series) -> Result<Ordering> {
    a.compare(b)
}

/// Checks `b < r < c` for every sampled `b < x0 < c`.
fn verify_separation(r: &Series, an: &DeltaAnalysis, dim: usize) -> Result<Separation> {
    let x0 = an.x0.pad_to(dim);
    let r = r.pad_to(dim);
    let mut sep = Separation {
        below: 0,
        above: 0,
        nearest_below: None,
        nearest_above: None,
    };
    for (e, _) in an.checks() {
        let e = e.pad_to(dim);
        if cmp(&e, &x0)? == Ordering::Less {
            if cmp(&e, &r)? != Ordering::Less {
                return Err(Error::SeparationFailure(format!(
                    "{e} is below x0 but not below the realizer {r}"
                )));
            }
            sep.below += 1;
            if sep.nearest_below.as_ref().map_or(Ok(true), |n| Ok::<_, Error>(cmp(&e, n)? == Ordering::Greater))? {
                sep.nearest_below = Some(e);
            }
        } else {
            if cmp(&e, &r)? != Ordering::Greater {
                return Err(Error::SeparationFailure(format!(
                    "{e} is above x0 but not above the realizer {r}"
                )));
            }
            sep.above += 1;
            if sep.nearest_above.as_ref().map_or(Ok(true), |n| Ok::<_, Error>(cmp(&e, n)? == Ordering::Less))? {
                sep.nearest_above = Some(e);
            }
        }
    }
    Ok(sep)
}

/// Checks that `r` separates the sampled lower and upper parts of `an`;
/// returns their sizes.
pub fn check_separation(r: &Series, an: &DeltaAnalysis) -> Result<(usize, usize)> {
    let sep = verify_separation(r, an, r.dim().max(an.dim))?;
    Ok((sep.below, sep.above))
}

fn report(
    an: &DeltaAnalysis,
    dim: usize,
    realizer: Series,
    witness: Witness,
    mut checks: Vec<Check>,
) -> Result<RealizationReport> {
    let sep = verify_separation(&realizer, an, dim)?;
    checks.push(Check {
        name: "b < r < c",
        count: sep.below + sep.above,
    });
    Ok(RealizationReport {
        case: an.case,
        depth: an.depth,
        dim,
        realizer: realizer.pad_to(dim),
        witness,
        checks,
        below: sep.below,
        above: sep.above,
        nearest_below: sep.nearest_below,
        nearest_above: sep.nearest_above,
    })
}

fn expect_case(an: &DeltaAnalysis, case: CutCase) -> Result<()> {
    if an.case != case {
        return Err(Error::WrongCase {
            expected: case.name().into(),
            got: an.case.name().into(),
        });
    }
    Ok(())
}

fn value_of(s: &Series) -> Result<ExpVec> {
    match s.valuation()? {
        Val::Finite(v) => Ok(v),
        Val::Infinity => Err(Error::ZeroArgument),
    }
}

/// Immediate case: a pseudo-limit of the sampled approximating sequence.
pub fn realize_immediate(an: &DeltaAnalysis) -> Result<RealizationReport> {
    expect_case(an, CutCase::ImmediateTranscendental)?;
    let seq = check_pseudo_cauchy(&an.sequence)?;
    let limit = seq.construct_pseudo_limit();
    if !seq.is_pseudo_limit(&limit)? {
        return Err(Error::ClaimViolation(format!(
            "{limit} is not a pseudo-limit of the sampled sequence"
        )));
    }
    let dist = (&limit - &an.x0).valuation().map_err(|_| {
        Error::UndecidableAtPrecision(format!("v({limit} - x0) is not determined"))
    })?;
    let dist = match dist {
        Val::Finite(v) => v,
        Val::Infinity => return Err(Error::EqualityDetected(format!("{limit} equals x0"))),
    };
    for (d, dv) in an.checks() {
        if dist <= *dv {
            return Err(Error::ClaimViolation(format!(
                "v(r - x0) = {dist} does not exceed v({d} - x0) = {dv}"
            )));
        }
    }
    let by_elem: std::collections::HashMap<&Series, &ExpVec> =
        an.delta_samples.iter().map(|(s, v)| (s, v)).collect();
    for d in seq.elems() {
        if dist < *by_elem[d] {
            return Err(Error::ClaimViolation(format!(
                "v(r - x0) = {dist} is below v({d} - x0)"
            )));
        }
    }
    let checks = vec![
        Check {
            name: "pseudo-Cauchy",
            count: seq.len(),
        },
        Check {
            name: "v(r - x0) > v(d - x0)",
            count: an.check_len,
        },
        Check {
            name: "v(r - x0) >= v(a_i - x0)",
            count: seq.len(),
        },
    ];
    let witness = Witness::Immediate {
        sequence: seq.elems().to_vec(),
        gammas: seq.gammas().to_vec(),
        limit: limit.clone(),
        limit_distance: dist,
    };
    report(an, an.dim, limit, witness, checks)
}

fn side_of(an: &DeltaAnalysis) -> Result<Side> {
    Ok(match cmp(&an.d0, &an.x0)? {
        Ordering::Less => Side::Below,
        _ => Side::Above,
    })
}

/// Value-transcendental case: `r = d0 ± x^g` with `g` in the same cut of
/// the sampled value span as `γ`.
///
/// Writing `γ = s + δ` with `s` in the span and `δ` zero on the span's pivot
/// columns, any `g = s + ε` where `ε` has the sign and leading column of `δ`
/// lies in the same cut as `γ`. When `δ` is infinitesimal relative to the
/// whole span, `ε` is taken on a fresh coordinate, which keeps the choice
/// valid for every deeper sample with values in the same span.
pub fn realize_value_transcendental(
    an: &DeltaAnalysis,
    amb: &mut Ambient,
) -> Result<RealizationReport> {
    expect_case(an, CutCase::ValueTranscendental)?;
    let side = side_of(an)?;
    let d0 = &an.d0;
    let gamma = &an.gamma;
    let mut delta1: Vec<ExpVec> = Vec::new();
    let mut delta2: Vec<ExpVec> = Vec::new();
    for (e, _) in an.checks() {
        if e == d0 {
            continue;
        }
        let below_x0 = cmp(e, &an.x0)? == Ordering::Less;
        let v = value_of(&(e - d0))?;
        match (side, below_x0) {
            (Side::Below, false) | (Side::Above, true) => delta1.push(v),
            (Side::Below, true) if cmp(e, d0)? == Ordering::Greater => delta2.push(v),
            (Side::Above, false) if cmp(e, d0)? == Ordering::Less => delta2.push(v),
            _ => {}
        }
    }
    let max1 = delta1.iter().max().cloned();
    let min2 = delta2.iter().min().cloned();
    if max1.as_ref().is_some_and(|m| m >= gamma) || min2.as_ref().is_some_and(|m| m <= gamma) {
        return Err(Error::ClaimViolation(format!(
            "expected max Δ1 < {gamma} < min Δ2, got {} and {}",
            max1.map_or("none".into(), |v| v.to_string()),
            min2.map_or("none".into(), |v| v.to_string()),
        )));
    }
    let mut params: Vec<&ExpVec> = delta1.iter().chain(&delta2).collect();
    params.sort();
    params.dedup();
    for p in &params {
        if an.span.coordinates(p).is_none() {
            return Err(Error::NonExpressible(format!("{p} is outside the sampled span")));
        }
    }

    let (pivots, residual) = an.span.reduce(gamma);
    let lead = residual
        .coords()
        .iter()
        .position(|c| !num_traits::Zero::is_zero(c))
        .ok_or_else(|| Error::ClaimViolation(format!("{gamma} lies in the sampled span")))?;
    let base = gamma - &residual;
    let positive = residual.signum() == Ordering::Greater;
    let mut extended_to = None;
    let g = if pivots.iter().all(|&p| p < lead) {
        let g = if positive {
            amb.fresh_above(&base)
        } else {
            amb.fresh_below(&base)
        };
        extended_to = Some(amb.dim());
        g
    } else {
        let unit = ExpVec::unit(amb.dim(), lead + 1);
        let base = amb.embed(&base);
        if positive {
            &base + &unit
        } else {
            &base - &unit
        }
    };
    if max1.as_ref().is_some_and(|m| *m >= g) || min2.as_ref().is_some_and(|m| *m <= g) {
        return Err(Error::ClaimViolation(format!("{g} misses the sampled cut")));
    }
    let dim = amb.dim();
    let a = Series::x_pow(g.clone());
    let d0p = d0.pad_to(dim);
    let realizer = match side {
        Side::Below => &d0p + &a,
        Side::Above => &d0p - &a,
    };
    let checks = vec![
        Check {
            name: "max Δ1 < γ < min Δ2",
            count: delta1.len() + delta2.len(),
        },
        Check {
            name: "parameters in span",
            count: params.len(),
        },
    ];
    let witness = Witness::Value {
        d0: d0p,
        gamma: gamma.pad_to(dim),
        side,
        max_delta1: max1.map(|v| v.pad_to(dim)),
        min_delta2: min2.map(|v| v.pad_to(dim)),
        basis: an.span.vectors().to_vec(),
        reduced_params: params.len(),
        residual,
        g,
        extended_to,
    };
    report(an, dim, realizer, witness, checks)
}

const MAX_DOUBLINGS: u32 = 40;

/// Residue-transcendental case: `r = d0 + r''·a` where `r''` is a residue
/// strictly between the sampled residues on either side.
pub fn realize_residue_transcendental(an: &DeltaAnalysis) -> Result<RealizationReport> {
    expect_case(an, CutCase::ResidueTranscendental)?;
    let a = an
        .value_witness
        .clone()
        .ok_or_else(|| Error::NoWitness(format!("no element of value {}", an.gamma)))?;
    let side = side_of(an)?;
    let d0 = &an.d0;
    let t = (&an.x0 - d0).abs()?;

    let mut n: u64 = 1;
    loop {
        let nr = Rat::from_integer(n.into());
        let big = a.scale(&Coeff::rational(nr.clone()));
        let small = a.scale(&Coeff::rational(nr.recip()));
        if cmp(&big, &t)? == Ordering::Greater && cmp(&t, &small)? == Ordering::Greater {
            break;
        }
        if n >= 1 << MAX_DOUBLINGS {
            return Err(Error::ClaimViolation(format!(
                "v(x0 - d0) differs from v(a) = {}",
                an.gamma
            )));
        }
        n *= 2;
    }
    let nr = Coeff::rational(Rat::from_integer(n.into()));
    let ninv = nr.inverse()?;
    let (b0, c0, rho_b0, rho_c0) = match side {
        Side::Below => (d0 + &a.scale(&ninv), d0 + &a.scale(&nr), ninv.clone(), nr.clone()),
        Side::Above => (d0 - &a.scale(&nr), d0 - &a.scale(&ninv), -&nr, -&ninv),
    };

    let ainv = a.inverse(&an.precision)?;
    let rho = |e: &Series| (&(e - d0) * &ainv).residue();
    let mut rho_b = Vec::new();
    let mut rho_c = Vec::new();
    let (mut bs, mut cs) = (Vec::new(), Vec::new());
    for (e, _) in an.checks() {
        let below_x0 = cmp(e, &an.x0)? == Ordering::Less;
        if below_x0 && cmp(e, &b0)? != Ordering::Less {
            bs.push(e);
        } else if !below_x0 && cmp(e, &c0)? != Ordering::Greater {
            cs.push(e);
        } else {
            continue;
        }
        if value_of(&(e - d0))? != an.gamma {
            return Err(Error::ClaimViolation(format!(
                "v({e} - d0) differs from {} inside [b0, c0]",
                an.gamma
            )));
        }
        if below_x0 {
            rho_b.push(rho(e)?);
        } else {
            rho_c.push(rho(e)?);
        }
    }
    let lo = rho_b.iter().max().cloned().unwrap_or(rho_b0).max(if side == Side::Below {
        ninv.clone()
    } else {
        -&nr
    });
    let hi = rho_c.iter().min().cloned().unwrap_or(rho_c0).min(if side == Side::Below {
        nr.clone()
    } else {
        -&ninv
    });
    if let Some(c) = rho_b.iter().find(|r| rho_c.contains(r)) {
        return Err(Error::ResidueCollision(format!(
            "residue {c} occurs on both sides"
        )));
    }
    if lo >= hi {
        return Err(Error::ClaimViolation(format!(
            "residues are not separated: {lo} >= {hi}"
        )));
    }
    let target = (&(&an.x0 - d0) * &ainv).residue().ok();
    let r2 = match &target {
        Some(t) if *t > lo && *t < hi => t.clone(),
        _ => (&lo + &hi).scale(&Rat::new(1.into(), 2.into())),
    };
    let r1 = a.scale(&r2);
    for b in &bs {
        if cmp(&(*b - d0), &r1)? != Ordering::Less {
            return Err(Error::SeparationFailure(format!("{b} - d0 is not below r'")));
        }
    }
    for c in &cs {
        if cmp(&(*c - d0), &r1)? != Ordering::Greater {
            return Err(Error::SeparationFailure(format!("{c} - d0 is not above r'")));
        }
    }
    let realizer = d0 + &r1;
    let checks = vec![
        Check {
            name: "v(e - d0) = γ on [b0, c0]",
            count: bs.len() + cs.len(),
        },
        Check {
            name: "residues strictly separated",
            count: rho_b.len() + rho_c.len(),
        },
        Check {
            name: "b - d0 < r' < c - d0",
            count: bs.len() + cs.len(),
        },
    ];
    let witness = Witness::Residue {
        d0: d0.clone(),
        gamma: an.gamma.clone(),
        side,
        a,
        n,
        b0,
        c0,
        rho_lo: lo,
        rho_hi: hi,
        target,
        r2,
        r1,
    };
    report(an, an.dim, realizer, witness, checks)
}

/// Classifies and realizes, deepening up to `retries` times on ambiguity.
pub fn realize_cut(
    problem: &CutProblem,
    amb: &mut Ambient,
    retries: usize,
) -> Result<RealizationReport> {
    let mut p = problem.clone();
    let mut left = retries;
    let an = loop {
        match classify_cut(&p) {
            Err(Error::AmbiguousAtDepth { .. }) if left > 0 => {
                left -= 1;
                p = p.with_depth(p.config.depth + 1);
            }
            other => break other?,
        }
    };
    match an.case {
        CutCase::ImmediateTranscendental => realize_immediate(&an),
        CutCase::ValueTranscendental => realize_value_transcendental(&an, amb),
        CutCase::ResidueTranscendental => realize_residue_transcendental(&an),
    }
}
