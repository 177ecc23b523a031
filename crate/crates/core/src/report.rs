//! Line-delimited JSON reports.
//!
//! The first line is a header naming the format and its version; every
//! further line is one record with `command`, `config` and `result` fields.
//! Series, vectors and rationals are carried as their exact text renderings,
//! never as floats. Wall-clock time is deliberately left out so that equal
//! runs produce byte-identical reports.

use std::io::{self, Write};

use serde_json::{json, Value};

use crate::cut::{CutCase, DeltaAnalysis, RealizationReport, Witness};
use crate::error::{Error, Result};
use crate::group::ExpVec;
use crate::harness::{SuiteConfig, SuiteReport};
use crate::series::{Precision, Series};

pub const FORMAT: &str = "hahnsat-report";
pub const VERSION: u32 = 1;

pub fn header() -> Value {
    json!({ "format": FORMAT, "version": VERSION })
}

/// Writes the header on creation, then one record per call.
pub struct ReportWriter<W: Write> {
    out: W,
}

impl<W: Write> ReportWriter<W> {
    pub fn new(mut out: W) -> io::Result<Self> {
        writeln!(out, "{}", header())?;
        Ok(ReportWriter { out })
    }

    pub fn record(&mut self, command: &str, config: Value, result: Value) -> io::Result<()> {
        let rec = json!({ "command": command, "config": config, "result": result });
        writeln!(self.out, "{rec}")
    }

    pub fn into_inner(self) -> W {
        self.out
    }
}

/// Parses a report, checking the header; returns the records.
pub fn read_records(text: &str) -> Result<Vec<Value>> {
    let mut lines = text.lines().enumerate();
    let bad = |line: usize, msg: String| Error::Parse { pos: line, msg };
    let (_, first) = lines.next().ok_or_else(|| bad(0, "empty report".into()))?;
    let head: Value = serde_json::from_str(first).map_err(|e| bad(0, e.to_string()))?;
    if head != header() {
        return Err(bad(0, format!("unsupported header {head}")));
    }
    lines
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| serde_json::from_str(l).map_err(|e| bad(i, e.to_string())))
        .collect()
}

fn s(x: &Series) -> Value {
    Value::String(x.to_string())
}

fn v(x: &ExpVec) -> Value {
    Value::String(x.to_string())
}

fn opt_v(x: &Option<ExpVec>) -> Value {
    x.as_ref().map_or(Value::Null, v)
}

pub fn precision(p: &Precision) -> Value {
    json!({ "target": v(&p.target), "max_terms": p.max_terms })
}

pub fn suite_config(c: &SuiteConfig) -> Value {
    json!({
        "seed": c.seed,
        "trials": c.trials,
        "depth": c.depth,
        "n": c.n,
        "k_max": c.k_max,
        "precision": precision(&c.precision),
    })
}

pub fn suite(r: &SuiteReport) -> Value {
    let cex: Vec<Value> = r
        .counterexamples
        .iter()
        .map(|(i, m)| json!({ "trial": i, "input": m }))
        .collect();
    json!({
        "suite": r.name,
        "passed": r.passed,
        "failed": r.failed,
        "tagged": r.tagged,
        "counterexamples": cex,
        "notes": r.notes,
        "status": if r.ok() { "pass" } else { "fail" },
    })
}

fn case(c: CutCase) -> Value {
    Value::String(c.name().into())
}

pub fn analysis(an: &DeltaAnalysis) -> Value {
    let ladder: Vec<Value> = an
        .ladder
        .iter()
        .map(|st| {
            json!({
                "depth": st.depth,
                "sample_size": st.sample_size,
                "max_delta": v(&st.max_delta),
                "best": s(&st.best),
            })
        })
        .collect();
    let immediate = an.case == CutCase::ImmediateTranscendental;
    json!({
        "case": case(an.case),
        "depth": an.depth,
        "dim": an.dim,
        "x0": s(&an.x0),
        "ladder": ladder,
        "d0": if immediate { Value::Null } else { s(&an.d0) },
        "gamma": if immediate { Value::Null } else { v(&an.gamma) },
        "delta_samples": an.delta_samples.len(),
        "checked_samples": an.check_len,
        "span_basis": an.span.vectors().iter().map(v).collect::<Vec<_>>(),
        "value_witness": an.value_witness.as_ref().map_or(Value::Null, s),
        "sequence": an.sequence.iter().map(s).collect::<Vec<_>>(),
    })
}

fn witness(w: &Witness) -> Value {
    match w {
        Witness::Immediate {
            sequence,
            gammas,
            limit,
            limit_distance,
        } => json!({
            "sequence": sequence.iter().map(s).collect::<Vec<_>>(),
            "gammas": gammas.iter().map(v).collect::<Vec<_>>(),
            "pseudo_limit": s(limit),
            "v(r - x0)": v(limit_distance),
        }),
        Witness::Value {
            d0,
            gamma,
            side,
            max_delta1,
            min_delta2,
            basis,
            reduced_params,
            residual,
            g,
            extended_to,
        } => json!({
            "d0": s(d0),
            "gamma": v(gamma),
            "d0_side": side.name(),
            "max_delta1": opt_v(max_delta1),
            "min_delta2": opt_v(min_delta2),
            "basis": basis.iter().map(v).collect::<Vec<_>>(),
            "reduced_parameters": reduced_params,
            "residual": v(residual),
            "g": v(g),
            "extended_to": extended_to,
        }),
        Witness::Residue {
            d0,
            gamma,
            side,
            a,
            n,
            b0,
            c0,
            rho_lo,
            rho_hi,
            target,
            r2,
            r1,
        } => json!({
            "d0": s(d0),
            "gamma": v(gamma),
            "d0_side": side.name(),
            "a": s(a),
            "n": n,
            "b0": s(b0),
            "c0": s(c0),
            "residue_low": rho_lo.to_string(),
            "residue_high": rho_hi.to_string(),
            "target_residue": target.as_ref().map(|t| t.to_string()),
            "r''": r2.to_string(),
            "r'": s(r1),
        }),
    }
}

pub fn realization(r: &RealizationReport) -> Value {
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|c| json!({ "check": c.name, "count": c.count }))
        .collect();
    json!({
        "case": case(r.case),
        "depth": r.depth,
        "dim": r.dim,
        "realizer": s(&r.realizer),
        "witness": witness(&r.witness),
        "checks": checks,
        "below": r.below,
        "above": r.above,
        "nearest_below": r.nearest_below.as_ref().map_or(Value::Null, s),
        "nearest_above": r.nearest_above.as_ref().map_or(Value::Null, s),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{eta0_suite, Eta0Order};

    fn render(cfg: &SuiteConfig) -> String {
        let mut w = ReportWriter::new(Vec::new()).unwrap();
        let r = eta0_suite(cfg, Eta0Order::Gamma);
        w.record("suite", suite_config(cfg), suite(&r)).unwrap();
        String::from_utf8(w.into_inner()).unwrap()
    }

    #[test]
    fn header_then_records() {
        let cfg = SuiteConfig {
            trials: 10,
            ..SuiteConfig::default()
        };
        let text = render(&cfg);
        let recs = read_records(&text).unwrap();
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0]["command"], "suite");
        assert_eq!(recs[0]["result"]["suite"], "eta0-gamma");
        assert_eq!(text, render(&cfg));
    }

    #[test]
    fn rejects_foreign_header() {
        assert!(read_records("{\"format\":\"other\"}\n").is_err());
        assert!(read_records("").is_err());
    }
}
