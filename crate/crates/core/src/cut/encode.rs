//! Encoding a cut in the value group as a cut in the field.
//!
//! For value sets `H1 < H2` the condition `H1 < v(x) < H2` is a type in the
//! value group. In the field it is captured by the monomial conditions
//! `k·m2 < x` (for `v(m2) ∈ H2`) and `k·x < m1` (for `v(m1) ∈ H1`) are, and
//! any positive `x` satisfying them for all `k` has `H1 < v(x) < H2`.
//! Larger elements have smaller values, which is why `H2` bounds `x` from
//! below.

use std::cmp::Ordering;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::group::{ExpVec, SpanBasis};
use crate::series::{Precision, Series};

pub const DEFAULT_K_MAX: u64 = 100;

/// A monomial representative: a product of rational powers of the given
/// representatives, normalized to leading coefficient 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub value: ExpVec,
    pub exponents: Vec<crate::Rat>,
    pub series: Series,
}

/// The field-cut predicate built by [`encode_group_type_as_field_cut`].
#[derive(Clone, Debug)]
pub struct FieldCutPredicate {
    /// Values in `H1`: `k·x < m`.
    pub lower: Vec<Monomial>,
    /// Values in `H2`: `k·m < x`.
    pub upper: Vec<Monomial>,
    pub k_max: u64,
    pub dim: usize,
}

impl FieldCutPredicate {
    /// First violated instance, as `(monomial value, k)`.
    pub fn first_failure(&self, x: &Series) -> Result<Option<(ExpVec, u64)>> {
        let x = x.pad_to(self.dim);
        for k in 1..=self.k_max {
            let kc = Coeff::from_int(k as i64);
            let kx = x.scale(&kc);
            for m in &self.lower {
                if kx.compare(&m.series)? != Ordering::Less {
                    return Ok(Some((m.value.clone(), k)));
                }
            }
            for m in &self.upper {
                if m.series.scale(&kc).compare(&x)? != Ordering::Less {
                    return Ok(Some((m.value.clone(), k)));
                }
            }
        }
        Ok(None)
    }

    pub fn holds(&self, x: &Series) -> Result<bool> {
        Ok(self.first_failure(x)?.is_none())
    }

    /// The value extractor `x ↦ v(x)`.
    pub fn extract(&self, x: &Series) -> Result<ExpVec> {
        x.finite_valuation().map(|v| v.pad_to(self.dim))
    }

    /// Whether `v` lies strictly between the encoded sides.
    pub fn value_between(&self, v: &ExpVec) -> bool {
        self.lower.iter().all(|m| m.value < *v) && self.upper.iter().all(|m| *v < m.value)
    }
}

fn monomial(h: &ExpVec, basis: &SpanBasis, units: &[(ExpVec, Series)], p: &Precision, dim: usize) -> Result<Monomial> {
    let coords = basis
        .coordinates(h)
        .ok_or_else(|| Error::NonExpressible(format!("{h} is outside the span of the representatives")))?;
    let mut acc = Series::constant(Coeff::one(), dim);
    let mut exponents = Vec::with_capacity(coords.len());
    for (b, q) in basis.vectors().iter().zip(coords) {
        if !num_traits::Zero::is_zero(&q) {
            let u = &units.iter().find(|(v, _)| v == b).expect("basis vector has a unit").1;
            acc = &acc * &u.power(&q, p)?;
        }
        exponents.push(q);
    }
    Ok(Monomial {
        value: h.pad_to(dim),
        exponents,
        series: acc,
    })
}

/// Builds the monomial predicate for `H1 < v(x) < H2` from representatives
/// whose values span the parameters.
pub fn encode_group_type_as_field_cut(
    h1: &[ExpVec],
    h2: &[ExpVec],
    reps: &[Series],
    k_max: u64,
    precision: &Precision,
) -> Result<FieldCutPredicate> {
    for a in h1 {
        for b in h2 {
            if a >= b {
                return Err(Error::NotSeparated(format!("{a} is not below {b}")));
            }
        }
    }
    let dim = reps
        .iter()
        .map(Series::dim)
        .chain(h1.iter().chain(h2).map(ExpVec::dim))
        .max()
        .unwrap_or(1)
        .max(1);
    let p = precision.pad_to(dim);
    let mut units = Vec::with_capacity(reps.len());
    for r in reps {
        let r = r.pad_to(dim);
        let (v, c) = r.leading().cloned().ok_or(Error::ZeroArgument)?;
        units.push((v, r.scale(&c.abs().inverse()?).abs()?));
    }
    let values: Vec<ExpVec> = units.iter().map(|(v, _)| v.clone()).collect();
    let basis = SpanBasis::from_vectors(&values);
    let build = |hs: &[ExpVec]| -> Result<Vec<Monomial>> {
        hs.iter().map(|h| monomial(h, &basis, &units, &p, dim)).collect()
    };
    Ok(FieldCutPredicate {
        lower: build(h1)?,
        upper: build(h2)?,
        k_max,
        dim,
    })
}
