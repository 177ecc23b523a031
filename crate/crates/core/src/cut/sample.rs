//! Finite samples of the definable closure of a set of generators.
//!
//! Level 0 holds the generators followed by small rational constants. Each
//! further level applies the field operations and rational powers to the
//! previous level's new elements (the frontier), pairing binary operations
//! with everything produced so far. The output order is a deterministic
//! function of the configuration.

use std::collections::HashSet;

use num_integer::Integer;

use crate::coeff::{Coeff, CoeffField};
use crate::error::{Error, Result};
use crate::series::{Precision, Series};
use crate::Rat;

/// Knobs for [`sample_substructure`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleConfig {
    /// Number of closure levels above level 0. Also bounds the denominators
    /// of rational exponents.
    pub depth: usize,
    /// Constants are `p/q` with `|p|, q <= height`.
    pub height: i64,
    /// Elements with coefficients outside this field are dropped.
    pub field: CoeffField,
    pub precision: Precision,
    /// Hard cap on the sample size; generation stops once reached.
    pub cap: usize,
}

impl SampleConfig {
    pub const DEFAULT_CAP: usize = 600;

    pub fn new(depth: usize, dim: usize) -> Self {
        SampleConfig {
            depth,
            height: 2,
            field: CoeffField::QSqrt2,
            precision: Precision::order(dim, 6),
            cap: Self::DEFAULT_CAP,
        }
    }

    pub fn with_field(mut self, field: CoeffField) -> Self {
        self.field = field;
        self
    }

    pub fn with_depth(&self, depth: usize) -> Self {
        let mut out = self.clone();
        out.depth = depth;
        out
    }
}

/// A sampled substructure: the generators and the closure elements found.
#[derive(Clone, Debug)]
pub struct SubstructureSample {
    pub gens: Vec<Series>,
    pub config: SampleConfig,
    pub dim: usize,
    pub elements: Vec<Series>,
    /// Candidates dropped as undecidable, outside the field or
    /// not representable.
    pub skipped: usize,
}

impl SubstructureSample {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Rationals `p/q` with `|p| <= height`, `1 <= q <= height`, each once.
pub fn rational_constants(height: i64) -> Vec<Rat> {
    let h = height.max(0);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for q in 1..=h.max(1) {
        for p in 0..=h {
            for s in [p, -p] {
                let r = Rat::new(s.into(), q.into());
                if seen.insert(r.clone()) {
                    out.push(r);
                }
            }
        }
    }
    out
}

/// Exponents `p/s` with `2 <= s <= depth`, `gcd(p, s) = 1`, `0 < |p| < 2s`.
fn power_exponents(depth: usize) -> Vec<Rat> {
    let mut out = Vec::new();
    for s in 2..=depth as i64 {
        for p in 1..2 * s {
            if p.gcd(&s) == 1 {
                out.push(Rat::new(p.into(), s.into()));
                out.push(Rat::new((-p).into(), s.into()));
            }
        }
    }
    out
}

struct Builder {
    field: CoeffField,
    cap: usize,
    seen: HashSet<Series>,
    all: Vec<Series>,
    fresh: Vec<Series>,
    skipped: usize,
}

impl Builder {
    fn full(&self) -> bool {
        self.all.len() >= self.cap
    }

    /// Admits `r` if it is decidable, inside the field and new. Precision
    /// failures other than indistinguishability are passed up.
    fn offer(&mut self, r: Result<Series>) -> Result<()> {
        if self.full() {
            return Ok(());
        }
        let s = match r {
            Ok(s) => s,
            Err(Error::NonRepresentableCoefficientPower { .. })
            | Err(Error::NotPositive(_))
            | Err(Error::ZeroArgument)
            | Err(Error::ZeroDivisor) => {
                self.skipped += 1;
                return Ok(());
            }
            Err(e) => return Err(e),
        };
        if s.is_indistinguishable_from_zero() || !s.in_field(self.field) {
            self.skipped += 1;
            return Ok(());
        }
        if self.seen.insert(s.clone()) {
            self.all.push(s.clone());
            self.fresh.push(s);
        }
        Ok(())
    }
}

/// Samples the definable closure of `gens` to `config.depth` levels, in
/// ambient dimension `dim`.
pub fn sample_substructure(
    gens: &[Series],
    config: &SampleConfig,
    dim: usize,
) -> Result<SubstructureSample> {
    let prec = config.precision.pad_to(dim);
    let mut b = Builder {
        field: config.field,
        cap: config.cap.max(1),
        seen: HashSet::new(),
        all: Vec::new(),
        fresh: Vec::new(),
        skipped: 0,
    };
    for g in gens {
        b.offer(Ok(g.pad_to(dim)))?;
    }
    for c in rational_constants(config.height) {
        b.offer(Ok(Series::constant(Coeff::rational(c), dim)))?;
    }
    let exponents = power_exponents(config.depth);
    let mut frontier = std::mem::take(&mut b.fresh);
    for _ in 0..config.depth {
        if b.full() {
            break;
        }
        let snapshot = b.all.clone();
        for e in &frontier {
            b.offer(Ok(-e))?;
            if !e.is_exact_zero() {
                b.offer(e.inverse(&prec))?;
                if e.is_positive()? {
                    for q in &exponents {
                        b.offer(e.power(q, &prec))?;
                    }
                }
            }
        }
        'outer: for e in &frontier {
            for f in &snapshot {
                if b.full() {
                    break 'outer;
                }
                b.offer(Ok(e + f))?;
                b.offer(Ok(e - f))?;
                b.offer(Ok(f - e))?;
                b.offer(Ok(e * f))?;
            }
        }
        frontier = std::mem::take(&mut b.fresh);
    }
    Ok(SubstructureSample {
        gens: gens.iter().map(|g| g.pad_to(dim)).collect(),
        config: config.clone(),
        dim,
        elements: b.all,
        skipped: b.skipped,
    })
}
