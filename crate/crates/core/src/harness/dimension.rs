//! The rank bound: the values of a substructure generated by `k` elements
//! span a Q-space of dimension at most `k`.

use rand::Rng;

use crate::coeff::CoeffField;
use crate::cut::{sample_substructure, SampleConfig};
use crate::gen;
use crate::group::{rational_rank, ExpVec};
use crate::series::Series;

use super::{run_trials, Outcome, SuiteConfig, SuiteReport};

/// Rank of the values of the nonzero elements of a sample.
pub fn sampled_value_rank(gens: &[Series], depth: usize, cfg: &SuiteConfig) -> crate::Result<(usize, Vec<ExpVec>)> {
    let n = cfg.n.max(1);
    let mut sc = SampleConfig::new(depth, n);
    sc.precision = cfg.precision.pad_to(n);
    let sample = sample_substructure(gens, &sc, n)?;
    let mut values: Vec<ExpVec> = sample
        .elements
        .iter()
        .filter_map(|e| e.finite_valuation().ok())
        .collect();
    values.sort();
    values.dedup();
    let rank = rational_rank(&values)?;
    Ok((rank, values))
}

pub fn dimension_inequality_suite(cfg: &SuiteConfig) -> SuiteReport {
    let n = cfg.n.max(1);
    let notes = vec![format!(
        "terms use field operations and rational powers with denominators <= {}; real exponents are not exercised",
        cfg.depth
    )];
    run_trials("dimension-inequality", cfg, notes, |_, rng| {
        let k = rng.gen_range(0..=4usize);
        let gens: Vec<Series> = (0..k)
            .map(|_| gen::series(rng, n, 2, 3, CoeffField::Rational))
            .collect();
        let shown: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
        let input = format!("gens = [{}]", shown.join("; "));
        match sampled_value_rank(&gens, cfg.depth, cfg) {
            Ok((rank, _)) if rank <= k => Outcome::Pass,
            Ok((rank, values)) => {
                let vs: Vec<String> = values.iter().map(|v| v.to_string()).collect();
                Outcome::Fail(format!("{input}: rank {rank} > {k}; values {}", vs.join(" ")))
            }
            Err(e) if e.is_precision() => Outcome::Expected("needs-precision"),
            Err(e) => Outcome::Fail(format!("{input}: {e}")),
        }
    })
}
