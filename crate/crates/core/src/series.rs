//! Truncated Hahn series with exponents in Q^n and coefficients in Q(√2).
//!
//! A [`Series`] stores finitely many terms below a truncation order. It
//! stands for every ideal series that agrees with those terms on all
//! exponents below `trunc`; `trunc = Infinity` marks an exact element.
//! Every operation propagates truncation so that this reading stays sound.
//!
//! The natural valuation of an element is its least support exponent, and
//! its sign is the sign of the leading coefficient: with exponents in a
//! lexicographically ordered group, a term with a smaller exponent dominates
//! every term with a larger one.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::coeff::{Coeff, CoeffField};
use crate::error::{Error, Result};
use crate::group::ExpVec;
use crate::Rat;

/// An element of the value group extended by infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Val {
    Finite(ExpVec),
    Infinity,
}

impl Val {
    pub fn finite(&self) -> Option<&ExpVec> {
        match self {
            Val::Finite(e) => Some(e),
            Val::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Val::Infinity)
    }

    /// Infinity-absorbing addition.
    pub fn plus(&self, other: &Val) -> Val {
        match (self, other) {
            (Val::Finite(a), Val::Finite(b)) => Val::Finite(a + b),
            _ => Val::Infinity,
        }
    }

    pub fn shift(&self, by: &ExpVec) -> Val {
        match self {
            Val::Finite(a) => Val::Finite(a + by),
            Val::Infinity => Val::Infinity,
        }
    }

    pub fn pad_to(&self, dim: usize) -> Val {
        match self {
            Val::Finite(a) => Val::Finite(a.pad_to(dim)),
            Val::Infinity => Val::Infinity,
        }
    }
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Finite(e) => write!(f, "{e}"),
            Val::Infinity => write!(f, "inf"),
        }
    }
}

impl From<ExpVec> for Val {
    fn from(e: ExpVec) -> Self {
        Val::Finite(e)
    }
}

/// Requested truncation for operations that cannot be computed exactly.
///
/// `target` is relative to the leading monomial of the operand: inverting or
/// taking powers of `c·x^γ·(1 + ε)` expands the `(1 + ε)` factor until the
/// neglected tail has value at least `target`, or until `max_terms` powers
/// of `ε` have been summed, whichever comes first. The result's `trunc`
/// always records how far the expansion actually got.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Precision {
    pub target: ExpVec,
    pub max_terms: usize,
}

impl Precision {
    pub const DEFAULT_MAX_TERMS: usize = 24;

    pub fn new(target: ExpVec) -> Self {
        Precision {
            target,
            max_terms: Self::DEFAULT_MAX_TERMS,
        }
    }

    /// `target = (order, 0, ..., 0)` in dimension `dim`.
    pub fn order(dim: usize, order: i64) -> Self {
        let mut coords = vec![Rat::zero(); dim.max(1)];
        coords[0] = Rat::from_integer(order.into());
        Precision::new(ExpVec::new(coords))
    }

    pub fn pad_to(&self, dim: usize) -> Precision {
        Precision {
            target: self.target.pad_to(dim),
            max_terms: self.max_terms,
        }
    }
}

/// A truncated Hahn series.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Series {
    terms: Vec<(ExpVec, Coeff)>,
    trunc: Val,
}

impl Series {
    pub fn zero() -> Self {
        Series {
            terms: Vec::new(),
            trunc: Val::Infinity,
        }
    }

    pub fn one() -> Self {
        Series::constant(Coeff::one(), 1)
    }

    pub fn constant(c: Coeff, dim: usize) -> Self {
        Series::monomial(c, ExpVec::zero(dim))
    }

    pub fn from_int(n: i64, dim: usize) -> Self {
        Series::constant(Coeff::from_int(n), dim)
    }

    pub fn from_rat(q: Rat, dim: usize) -> Self {
        Series::constant(Coeff::rational(q), dim)
    }

    pub fn monomial(c: Coeff, exp: ExpVec) -> Self {
        Series::from_terms(vec![(exp, c)], Val::Infinity)
    }

    /// `x^exp` with coefficient 1.
    pub fn x_pow(exp: ExpVec) -> Self {
        Series::monomial(Coeff::one(), exp)
    }

    /// `O(x^trunc)`: no known terms below `trunc`.
    pub fn big_o(trunc: ExpVec) -> Self {
        Series {
            terms: Vec::new(),
            trunc: Val::Finite(trunc),
        }
    }

    /// Normalizes: merges equal exponents, drops zero coefficients and every
    /// term at or above `trunc`.
    pub fn from_terms(terms: Vec<(ExpVec, Coeff)>, trunc: Val) -> Self {
        let mut acc: BTreeMap<ExpVec, Coeff> = BTreeMap::new();
        for (e, c) in terms {
            if Val::Finite(e.clone()) >= trunc {
                continue;
            }
            let slot = acc.entry(e).or_insert_with(Coeff::zero);
            *slot = &*slot + &c;
        }
        Series {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
            trunc,
        }
    }

    pub fn terms(&self) -> &[(ExpVec, Coeff)] {
        &self.terms
    }

    pub fn trunc(&self) -> &Val {
        &self.trunc
    }

    pub fn is_exact(&self) -> bool {
        self.trunc.is_infinite()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.terms.is_empty() && self.is_exact()
    }

    /// No known term and a finite truncation: cannot be told apart from 0.
    pub fn is_indistinguishable_from_zero(&self) -> bool {
        self.terms.is_empty() && !self.is_exact()
    }

    pub fn leading(&self) -> Option<&(ExpVec, Coeff)> {
        self.terms.first()
    }

    /// Largest stored dimension among exponents and truncation.
    pub fn dim(&self) -> usize {
        let t = self.trunc.finite().map_or(0, ExpVec::dim);
        self.terms.iter().map(|(e, _)| e.dim()).max().unwrap_or(0).max(t)
    }

    pub fn pad_to(&self, dim: usize) -> Series {
        Series {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.pad_to(dim), c.clone()))
                .collect(),
            trunc: self.trunc.pad_to(dim),
        }
    }

    pub fn coeff_at(&self, e: &ExpVec) -> Coeff {
        self.terms
            .iter()
            .find(|(x, _)| x == e)
            .map_or_else(Coeff::zero, |(_, c)| c.clone())
    }

    pub fn in_field(&self, field: CoeffField) -> bool {
        self.terms.iter().all(|(_, c)| field.contains(c))
    }

    /// Lower bound for the value: the leading exponent, else the truncation.
    pub fn value_lower_bound(&self) -> Val {
        match self.terms.first() {
            Some((e, _)) => Val::Finite(e.clone()),
            None => self.trunc.clone(),
        }
    }

    /// The natural valuation: least support exponent, infinity for exact 0.
    pub fn valuation(&self) -> Result<Val> {
        match self.terms.first() {
            Some((e, _)) => Ok(Val::Finite(e.clone())),
            None if self.is_exact() => Ok(Val::Infinity),
            None => Err(Error::InsufficientPrecision(format!(
                "value of {self} is not determined"
            ))),
        }
    }

    /// Value of a nonzero element as a group element.
    pub fn finite_valuation(&self) -> Result<ExpVec> {
        match self.valuation()? {
            Val::Finite(e) => Ok(e),
            Val::Infinity => Err(Error::ZeroArgument),
        }
    }

    pub fn signum(&self) -> Result<Ordering> {
        match self.terms.first() {
            Some((_, c)) => Ok(c.signum()),
            None if self.is_exact() => Ok(Ordering::Equal),
            None => Err(Error::UndecidableAtPrecision(format!(
                "sign of {self} is not determined"
            ))),
        }
    }

    pub fn is_positive(&self) -> Result<bool> {
        Ok(self.signum()? == Ordering::Greater)
    }

    pub fn compare(&self, other: &Series) -> Result<Ordering> {
        (self - other).signum().map_err(|_| {
            Error::UndecidableAtPrecision(format!("cannot compare {self} with {other}"))
        })
    }

    pub fn abs(&self) -> Result<Series> {
        Ok(if self.signum()? == Ordering::Less {
            -self
        } else {
            self.clone()
        })
    }

    /// Image in the residue field; defined on the valuation ring.
    pub fn residue(&self) -> Result<Coeff> {
        let zero = ExpVec::zero(self.dim());
        if let Some((e, _)) = self.terms.first() {
            if *e < zero {
                return Err(Error::NegativeValue(self.to_string()));
            }
        }
        if self.trunc <= Val::Finite(zero.clone()) {
            return Err(Error::InsufficientPrecision(format!(
                "residue of {self} needs truncation above 0"
            )));
        }
        Ok(self.coeff_at(&zero))
    }

    /// Drops everything at or above `at`.
    pub fn truncate(&self, at: &ExpVec) -> Series {
        let at = Val::Finite(at.clone());
        if at >= self.trunc || self.is_exact_zero() {
            return self.clone();
        }
        Series {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| Val::Finite(e.clone()) < at)
                .cloned()
                .collect(),
            trunc: at,
        }
    }

    pub fn scale(&self, c: &Coeff) -> Series {
        if c.is_zero() {
            return Series::zero();
        }
        Series {
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
            trunc: self.trunc.clone(),
        }
    }

    /// Multiplies by `x^by`.
    pub fn shift(&self, by: &ExpVec) -> Series {
        Series {
            terms: self.terms.iter().map(|(e, c)| (e + by, c.clone())).collect(),
            trunc: self.trunc.shift(by),
        }
    }

    /// Splits a distinguishable element as `c·x^γ·(1 + ε)` with `v(ε) > 0`.
    fn unit_decomposition(&self) -> Result<(Coeff, ExpVec, Series)> {
        let (gamma, c) = match self.terms.first() {
            Some(t) => t.clone(),
            None if self.is_exact() => return Err(Error::ZeroDivisor),
            None => {
                return Err(Error::InsufficientPrecision(format!(
                    "{self} is indistinguishable from 0"
                )))
            }
        };
        let cinv = c.inverse()?;
        let neg_gamma = -&gamma;
        let eps = Series {
            terms: self.terms[1..]
                .iter()
                .map(|(e, k)| (e + &neg_gamma, k * &cinv))
                .collect(),
            trunc: self.trunc.shift(&neg_gamma),
        };
        Ok((c, gamma, eps))
    }

    /// Sums `Σ coeff(k)·ε^k` for `v(ε) > 0`, truncated per `p`.
    fn expand_unit(eps: &Series, p: &Precision, mut coeff: impl FnMut(usize) -> Rat) -> Series {
        let mut sum = Series::zero();
        let mut power = Series::constant(Coeff::one(), p.target.dim());
        let mut k = 0;
        loop {
            if power.is_exact_zero() {
                return sum;
            }
            if power.value_lower_bound() >= Val::Finite(p.target.clone()) {
                let tail = power.value_lower_bound();
                sum.trunc = sum.trunc.min(tail);
                return sum;
            }
            if k > p.max_terms {
                let tail = power.value_lower_bound();
                return sum.truncate_val(&tail);
            }
            sum = &sum + &power.scale(&Coeff::rational(coeff(k)));
            power = (&power * eps).truncate(&p.target);
            k += 1;
        }
    }

    fn truncate_val(&self, at: &Val) -> Series {
        match at {
            Val::Finite(e) => self.truncate(e),
            Val::Infinity => self.clone(),
        }
    }

    /// Multiplicative inverse, with the `(1 + ε)⁻¹` factor expanded to `p`.
    pub fn inverse(&self, p: &Precision) -> Result<Series> {
        let (c, gamma, eps) = self.unit_decomposition()?;
        let neg_eps = -&eps;
        let unit = Series::expand_unit(&neg_eps, p, |_| Rat::one());
        Ok(unit.scale(&c.inverse()?).shift(&-&gamma))
    }

    /// `self^q` for positive `self`: `c^q · x^{qγ} · (1 + ε)^q`.
    pub fn power(&self, q: &Rat, p: &Precision) -> Result<Series> {
        match self.signum() {
            Ok(Ordering::Greater) => {}
            Ok(_) => return Err(Error::NotPositive(self.to_string())),
            Err(_) => {
                return Err(Error::InsufficientPrecision(format!(
                    "sign of {self} is not determined"
                )))
            }
        }
        if q.is_integer() && !q.is_negative() {
            if let Some(n) = q.to_integer().to_i64() {
                return self.powi(n, p);
            }
        }
        let (c, gamma, eps) = self.unit_decomposition()?;
        let cq = c.pow_rat(q)?;
        // binom(q, k), built incrementally
        let mut binom = Rat::one();
        let unit = Series::expand_unit(&eps, p, |k| {
            if k > 0 {
                let kk = Rat::from_integer((k as i64).into());
                binom = &binom * (q - &kk + Rat::one()) / kk;
            }
            binom.clone()
        });
        Ok(unit.scale(&cq).shift(&gamma.scale(q)))
    }

    /// Integer power by repeated squaring; negative exponents invert first.
    pub fn powi(&self, e: i64, p: &Precision) -> Result<Series> {
        let base = if e < 0 { self.inverse(p)? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Series::constant(Coeff::one(), self.dim());
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &sq;
            }
            k >>= 1;
            if k > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    pub fn div(&self, other: &Series, p: &Precision) -> Result<Series> {
        Ok(self * &other.inverse(p)?)
    }
}

impl<'a> Add<&'a Series> for &'a Series {
    type Output = Series;
    fn add(self, rhs: &'a Series) -> Series {
        let trunc = self.trunc.clone().min(rhs.trunc.clone());
        let terms = self.terms.iter().chain(rhs.terms.iter()).cloned().collect();
        Series::from_terms(terms, trunc)
    }
}

impl<'a> Sub<&'a Series> for &'a Series {
    type Output = Series;
    fn sub(self, rhs: &'a Series) -> Series {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Series> for &'a Series {
    type Output = Series;
    fn mul(self, rhs: &'a Series) -> Series {
        let trunc = self
            .trunc
            .plus(&rhs.value_lower_bound())
            .min(rhs.trunc.plus(&self.value_lower_bound()));
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (e1, c1) in &self.terms {
            // terms are sorted, so the sums only grow along the inner loop
            for (e2, c2) in &rhs.terms {
                let e = e1 + e2;
                if Val::Finite(e.clone()) >= trunc {
                    break;
                }
                terms.push((e, c1 * c2));
            }
        }
        Series::from_terms(terms, trunc)
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
            trunc: self.trunc.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Series {
            type Output = Series;
            fn $m(self, rhs: Series) -> Series {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Series {
    type Output = Series;
    fn neg(self) -> Series {
        -&self
    }
}

fn fmt_monomial(f: &mut fmt::Formatter<'_>, e: &ExpVec) -> fmt::Result {
    let mut first = true;
    for (i, q) in e.coords().iter().enumerate() {
        if q.is_zero() {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        write!(f, "t{}", i + 1)?;
        if q.is_one() {
        } else if q.is_integer() && q.is_positive() {
            write!(f, "^{q}")?;
        } else {
            write!(f, "^({q})")?;
        }
    }
    if first {
        write!(f, "1")?;
    }
    Ok(())
}

impl fmt::Display for Series {
    /// Renders in the expression grammar, so parsing the output gives the
    /// same series back. The truncation shows as a trailing `O(...)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() && self.is_exact() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.signum() == Ordering::Less;
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let c = c.abs();
            if e.is_zero() {
                write!(f, "{c}")?;
            } else {
                if !c.is_one() {
                    write!(f, "{c}*")?;
                }
                fmt_monomial(f, e)?;
            }
        }
        if let Val::Finite(t) = &self.trunc {
            if !self.terms.is_empty() {
                write!(f, " + ")?;
            }
            write!(f, "O(")?;
            fmt_monomial(f, t)?;
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(p: i64, q: i64) -> ExpVec {
        ExpVec::from_fracs(&[(p, q)])
    }

    fn mono(c: i64, p: i64, q: i64) -> Series {
        Series::monomial(Coeff::from_int(c), x(p, q))
    }

    fn one() -> Series {
        Series::from_int(1, 1)
    }

    #[test]
    fn add_examples() {
        let f = &mono(1, 1, 1) + &mono(2, 2, 1);
        assert_eq!(&f + &mono(-1, 1, 1), mono(2, 2, 1));
        assert_eq!(&f + &Series::zero(), f);
        let a = &(&one() + &mono(1, 1, 2)) + &Series::big_o(x(3, 1));
        let b = &mono(1, 1, 2) + &Series::big_o(x(2, 1));
        let s = &a + &b;
        assert_eq!(s, Series::from_terms(
            vec![(x(0, 1), Coeff::one()), (x(1, 2), Coeff::from_int(2))],
            Val::Finite(x(2, 1)),
        ));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&mono(1, 1, 1) * &mono(1, 1, 2), mono(1, 3, 2));
        let f = &one() + &mono(1, 1, 1);
        assert_eq!(&f * &one(), f);
        let g = &one() - &mono(1, 1, 1);
        assert_eq!(&f * &g, &one() - &mono(1, 2, 1));
    }

    #[test]
    fn mul_truncation_rule() {
        // (x + O(x^3)) * (x^2) = x^3 + O(x^5)
        let f = &mono(1, 1, 1) + &Series::big_o(x(3, 1));
        let p = &f * &mono(1, 2, 1);
        assert_eq!(p.trunc(), &Val::Finite(x(5, 1)));
        assert_eq!(p.terms().len(), 1);
    }

    #[test]
    fn inverse_examples() {
        let p = Precision::new(x(4, 1));
        assert_eq!(mono(1, 1, 1).inverse(&p).unwrap(), mono(1, -1, 1));
        let inv = (&one() + &mono(1, 1, 1)).inverse(&p).unwrap();
        let expected = &(&(&(&one() - &mono(1, 1, 1)) + &mono(1, 2, 1)) - &mono(1, 3, 1))
            + &Series::big_o(x(4, 1));
        assert_eq!(inv, expected);
        // multiply back: 1 + O(x^4)
        let back = &inv * &(&one() + &mono(1, 1, 1));
        assert_eq!(back, &one() + &Series::big_o(x(4, 1)));
        assert_eq!(
            Series::from_int(2, 1).inverse(&p).unwrap(),
            Series::from_rat(Rat::new(1.into(), 2.into()), 1)
        );
        assert_eq!(Series::zero().inverse(&p), Err(Error::ZeroDivisor));
        assert!(matches!(
            Series::big_o(x(1, 1)).inverse(&p),
            Err(Error::InsufficientPrecision(_))
        ));
    }

    #[test]
    fn compare_examples() {
        assert_eq!(mono(1, 1, 1).compare(&mono(1, 2, 1)).unwrap(), Ordering::Greater);
        assert_eq!(
            Series::from_int(3, 1).compare(&Series::from_int(3, 1)).unwrap(),
            Ordering::Equal
        );
        assert_eq!(
            (&one() + &mono(1, 1, 1)).compare(&one()).unwrap(),
            Ordering::Greater
        );
        let fuzzy = &one() + &Series::big_o(x(2, 1));
        assert!(matches!(
            fuzzy.compare(&one()),
            Err(Error::UndecidableAtPrecision(_))
        ));
    }

    #[test]
    fn valuation_examples() {
        let f = &Series::monomial(Coeff::from_int(2), ExpVec::from_ints(&[1, 0]))
            + &Series::monomial(Coeff::from_int(3), ExpVec::from_ints(&[2, 0]));
        assert_eq!(f.valuation().unwrap(), Val::Finite(ExpVec::from_ints(&[1, 0])));
        assert_eq!(
            Series::from_int(7, 2).valuation().unwrap(),
            Val::Finite(ExpVec::zero(2))
        );
        assert_eq!(Series::zero().valuation().unwrap(), Val::Infinity);
        assert!(Series::big_o(x(1, 1)).valuation().is_err());
    }

    #[test]
    fn residue_examples() {
        assert_eq!((&Series::from_int(3, 1) + &mono(1, 1, 1)).residue().unwrap(), Coeff::from_int(3));
        assert_eq!(mono(1, 1, 2).residue().unwrap(), Coeff::zero());
        let c = &Coeff::one() + &Coeff::sqrt2();
        let f = &Series::constant(c.clone(), 1) + &mono(5, 1, 1);
        assert_eq!(f.residue().unwrap(), c);
        assert!(matches!(mono(1, -1, 1).residue(), Err(Error::NegativeValue(_))));
        let coarse = &one() + &Series::big_o(x(0, 1));
        assert!(matches!(coarse.residue(), Err(Error::InsufficientPrecision(_))));
    }

    #[test]
    fn power_examples() {
        let p = Precision::new(x(3, 1));
        let half = Rat::new(1.into(), 2.into());
        assert_eq!(mono(1, 2, 1).power(&half, &p).unwrap(), mono(1, 1, 1));
        assert_eq!(mono(4, 2, 1).power(&half, &p).unwrap(), mono(2, 1, 1));
        let f = &mono(1, 1, 1) * &(&one() + &mono(1, 1, 1));
        let r = f.power(&half, &p).unwrap();
        let expected = Series::from_terms(
            vec![
                (x(1, 2), Coeff::one()),
                (x(3, 2), Coeff::frac(1, 2)),
                (x(5, 2), Coeff::frac(-1, 8)),
            ],
            Val::Finite(x(7, 2)),
        );
        assert_eq!(r, expected);
        // squaring back agrees with f below the truncation
        let sq = &r * &r;
        let diff = &sq - &f;
        assert!(diff.is_indistinguishable_from_zero());
        assert!(matches!(
            Series::from_int(2, 1).power(&Rat::new(1.into(), 3.into()), &p),
            Err(Error::NonRepresentableCoefficientPower { .. })
        ));
        assert!(matches!(
            mono(-1, 1, 1).power(&half, &p),
            Err(Error::NotPositive(_))
        ));
        // nonnegative integer powers of exact series stay exact
        let cube = (&one() + &mono(1, 1, 1)).power(&Rat::from_integer(3.into()), &p).unwrap();
        assert!(cube.is_exact());
        assert_eq!(cube.terms().len(), 4);
    }

    #[test]
    fn abs_examples() {
        assert_eq!(mono(-1, 1, 1).abs().unwrap(), mono(1, 1, 1));
        assert_eq!(Series::zero().abs().unwrap(), Series::zero());
        let f = &Series::from_int(2, 1) - &mono(1, 1, 1);
        assert_eq!(f.abs().unwrap(), f);
    }

    #[test]
    fn lex_infinite_descent_is_capped() {
        // 1/(1 + t2) in Q^2 with a first-coordinate target never reaches the
        // target; the expansion stops at max_terms and says so in trunc.
        let p = Precision {
            target: ExpVec::from_ints(&[1, 0]),
            max_terms: 5,
        };
        let f = &Series::from_int(1, 2) + &Series::x_pow(ExpVec::from_ints(&[0, 1]));
        let inv = f.inverse(&p).unwrap();
        assert_eq!(inv.terms().len(), 6);
        assert_eq!(inv.trunc(), &Val::Finite(ExpVec::from_ints(&[0, 6])));
    }

    #[test]
    fn rendering() {
        let f = &(&one() + &mono(1, 1, 2)) + &Series::big_o(x(2, 1));
        assert_eq!(f.to_string(), "1 + t1^(1/2) + O(t1^2)");
        assert_eq!((-&mono(3, -1, 1)).to_string(), "-3*t1^(-1)");
        assert_eq!(Series::zero().to_string(), "0");
        assert_eq!(Series::big_o(x(0, 1)).to_string(), "O(1)");
    }
}
