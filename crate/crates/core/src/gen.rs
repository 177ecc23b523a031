//! Seeded random generators for exponents, coefficients, series and
//! pseudo-Cauchy sequences. Used by the property suites and the tests.

use rand::Rng;

use crate::coeff::{Coeff, CoeffField};
use crate::group::ExpVec;
use crate::series::{Series, Val};
use crate::Rat;

/// `p/q` with `|p| <= height`, `1 <= q <= height`.
pub fn rat<R: Rng>(rng: &mut R, height: i64) -> Rat {
    let p = rng.gen_range(-height..=height);
    let q = rng.gen_range(1..=height.max(1));
    Rat::new(p.into(), q.into())
}

pub fn nonzero_rat<R: Rng>(rng: &mut R, height: i64) -> Rat {
    loop {
        let r = rat(rng, height);
        if r != Rat::from_integer(0.into()) {
            return r;
        }
    }
}

pub fn expvec<R: Rng>(rng: &mut R, dim: usize, height: i64) -> ExpVec {
    ExpVec::new((0..dim).map(|_| rat(rng, height)).collect())
}

pub fn nonzero_expvec<R: Rng>(rng: &mut R, dim: usize, height: i64) -> ExpVec {
    loop {
        let v = expvec(rng, dim, height);
        if !v.is_zero() {
            return v;
        }
    }
}

/// A lexicographically positive vector.
pub fn positive_expvec<R: Rng>(rng: &mut R, dim: usize, height: i64) -> ExpVec {
    let v = nonzero_expvec(rng, dim, height);
    v.abs()
}

pub fn coeff<R: Rng>(rng: &mut R, height: i64, field: CoeffField) -> Coeff {
    match field {
        CoeffField::Rational => Coeff::rational(rat(rng, height)),
        CoeffField::QSqrt2 => {
            let b = if rng.gen_bool(0.3) {
                rat(rng, height)
            } else {
                Rat::from_integer(0.into())
            };
            Coeff::new(rat(rng, height), b)
        }
    }
}

pub fn nonzero_coeff<R: Rng>(rng: &mut R, height: i64, field: CoeffField) -> Coeff {
    loop {
        let c = coeff(rng, height, field);
        if !c.is_zero() {
            return c;
        }
    }
}

/// Exact nonzero series with `1..=max_terms` terms.
pub fn series<R: Rng>(
    rng: &mut R,
    dim: usize,
    max_terms: usize,
    height: i64,
    field: CoeffField,
) -> Series {
    loop {
        let n = rng.gen_range(1..=max_terms.max(1));
        let terms = (0..n)
            .map(|_| (expvec(rng, dim, height), nonzero_coeff(rng, height, field)))
            .collect();
        let s = Series::from_terms(terms, Val::Infinity);
        if !s.is_exact_zero() {
            return s.pad_to(dim);
        }
    }
}

/// Exact positive series.
pub fn positive_series<R: Rng>(
    rng: &mut R,
    dim: usize,
    max_terms: usize,
    height: i64,
    field: CoeffField,
) -> Series {
    let s = series(rng, dim, max_terms, height, field);
    s.abs().expect("exact series have a sign")
}

/// `a_{ρ+1} = a_ρ + c_ρ·x^{γ_ρ}` with strictly increasing `γ_ρ` and integer
/// `c_ρ` in `[-5, 5] \ {0}`.
pub fn pseudo_cauchy<R: Rng>(rng: &mut R, dim: usize, len: usize, height: i64) -> Vec<Series> {
    let start = series(rng, dim, 3, height, CoeffField::Rational);
    let mut gamma = expvec(rng, dim, height);
    let mut out = vec![start];
    for _ in 1..len {
        let mut c = 0;
        while c == 0 {
            c = rng.gen_range(-5i64..=5);
        }
        let step = Series::monomial(Coeff::from_int(c), gamma.clone());
        let next = out.last().expect("nonempty") + &step;
        out.push(next.pad_to(dim));
        gamma = &gamma + &positive_expvec(rng, dim, height);
    }
    out
}
