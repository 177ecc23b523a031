//! Exact arithmetic in Q(√2), the coefficient field of the series.
//!
//! Elements are `a + b√2` with rational `a`, `b`. The order is decided
//! algebraically: when `a` and `b` disagree in sign, the sign of the sum is
//! the sign of whichever of `a²` and `2b²` is larger.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::Rat;

const SQRT2_F64: f64 = std::f64::consts::SQRT_2;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coeff {
    a: Rat,
    b: Rat,
}

/// Which coefficient field a computation is confined to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum CoeffField {
    Rational,
    #[default]
    QSqrt2,
}

impl CoeffField {
    pub fn contains(self, c: &Coeff) -> bool {
        match self {
            CoeffField::Rational => c.is_rational(),
            CoeffField::QSqrt2 => true,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CoeffField::Rational => "q",
            CoeffField::QSqrt2 => "qsqrt2",
        }
    }
}

impl std::str::FromStr for CoeffField {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "q" => Ok(CoeffField::Rational),
            "qsqrt2" => Ok(CoeffField::QSqrt2),
            other => Err(Error::Parse {
                pos: 0,
                msg: format!("unknown coefficient field {other:?} (expected q or qsqrt2)"),
            }),
        }
    }
}

impl Coeff {
    pub fn new(a: Rat, b: Rat) -> Self {
        Coeff { a, b }
    }

    pub fn rational(a: Rat) -> Self {
        Coeff { a, b: Rat::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Coeff::rational(Rat::from_integer(n.into()))
    }

    pub fn frac(p: i64, q: i64) -> Self {
        Coeff::rational(Rat::new(p.into(), q.into()))
    }

    pub fn sqrt2() -> Self {
        Coeff {
            a: Rat::zero(),
            b: Rat::one(),
        }
    }

    pub fn zero() -> Self {
        Coeff::rational(Rat::zero())
    }

    pub fn one() -> Self {
        Coeff::rational(Rat::one())
    }

    /// Rational part.
    pub fn a(&self) -> &Rat {
        &self.a
    }

    /// Coefficient of √2.
    pub fn b(&self) -> &Rat {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&Rat::zero());
        let sb = self.b.cmp(&Rat::zero());
        match (sa, sb) {
            (s, Ordering::Equal) => s,
            (Ordering::Equal, s) => s,
            (x, y) if x == y => x,
            _ => {
                let a2 = &self.a * &self.a;
                let b2 = &self.b * &self.b * Rat::from_integer(2.into());
                // a² = 2b² has no nonzero rational solution
                if a2 > b2 {
                    sa
                } else {
                    sb
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn abs(&self) -> Coeff {
        if self.signum() == Ordering::Less {
            -self
        } else {
            self.clone()
        }
    }

    /// Field norm `a² − 2b²`.
    pub fn norm(&self) -> Rat {
        &self.a * &self.a - &self.b * &self.b * Rat::from_integer(2.into())
    }

    pub fn conjugate(&self) -> Coeff {
        Coeff::new(self.a.clone(), -&self.b)
    }

    pub fn inverse(&self) -> Result<Coeff> {
        if self.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        let n = self.norm();
        Ok(Coeff::new(&self.a / &n, -&self.b / &n))
    }

    pub fn scale(&self, q: &Rat) -> Coeff {
        Coeff::new(&self.a * q, &self.b * q)
    }

    pub fn pow_int(&self, e: i64) -> Result<Coeff> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Coeff::one();
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

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * SQRT2_F64
    }

    /// The positive `s`-th root when it lies in Q(√2).
    pub fn root(&self, s: u32) -> Option<Coeff> {
        if !self.is_positive() || s == 0 {
            return None;
        }
        let mut cur = self.clone();
        for p in prime_factors(s) {
            cur = if p == 2 {
                cur.sqrt_exact()?
            } else {
                cur.odd_prime_root(p)?
            };
        }
        Some(cur)
    }

    /// `self^q` for positive `self`, when representable.
    pub fn pow_rat(&self, q: &Rat) -> Result<Coeff> {
        if !self.is_positive() {
            return Err(Error::NotPositive(self.to_string()));
        }
        let den = q.denom().to_u32().filter(|&d| d > 0);
        let num = q.numer().to_i64();
        let (Some(den), Some(num)) = (den, num) else {
            return Err(self.not_representable(q));
        };
        let root = self.root(den).ok_or_else(|| self.not_representable(q))?;
        root.pow_int(num)
    }

    fn not_representable(&self, q: &Rat) -> Error {
        Error::NonRepresentableCoefficientPower {
            base: self.to_string(),
            exponent: q.to_string(),
        }
    }

    fn sqrt_exact(&self) -> Option<Coeff> {
        let two = Rat::from_integer(2.into());
        if self.b.is_zero() {
            if let Some(r) = rational_root(&self.a, 2) {
                return Some(Coeff::rational(r));
            }
            // (y√2)² = 2y²
            let y = rational_root(&(&self.a / &two), 2)?;
            return Some(Coeff::new(Rat::zero(), y));
        }
        // (x + y√2)² = x² + 2y² + 2xy√2
        let disc = rational_root(&self.norm(), 2)?;
        for cand in [(&self.a + &disc) / &two, (&self.a - &disc) / &two] {
            if let Some(x) = rational_root(&cand, 2) {
                if x.is_zero() {
                    continue;
                }
                let y = &self.b / (&x * &two);
                let r = Coeff::new(x, y);
                let r = if r.is_positive() { r } else { -r };
                if &(&r * &r) == self {
                    return Some(r);
                }
            }
        }
        None
    }

    fn odd_prime_root(&self, p: u32) -> Option<Coeff> {
        if self.b.is_zero() {
            return rational_root(&self.a, p).map(Coeff::rational);
        }
        // guess from the real embedding and its conjugate, then verify exactly
        let r = self.to_f64().powf(1.0 / p as f64);
        let c = self.conjugate().to_f64();
        let rc = c.signum() * c.abs().powf(1.0 / p as f64);
        let x = approximate_rational((r + rc) / 2.0)?;
        let y = approximate_rational((r - rc) / (2.0 * SQRT2_F64))?;
        let cand = Coeff::new(x, y);
        (cand.pow_int(p as i64).ok()? == *self).then_some(cand)
    }
}

fn prime_factors(mut s: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= s {
        while s % p == 0 {
            out.push(p);
            s /= p;
        }
        p += 1;
    }
    if s > 1 {
        out.push(s);
    }
    out
}

/// Exact `p`-th root of a rational, if it is rational. Odd roots of
/// negatives are allowed.
fn rational_root(q: &Rat, p: u32) -> Option<Rat> {
    if q.is_negative() {
        if p % 2 == 0 {
            return None;
        }
        return rational_root(&-q, p).map(|r| -r);
    }
    let root_of = |n: &BigInt| -> Option<BigInt> {
        let r = n.nth_root(p);
        (num_traits::pow(r.clone(), p as usize) == *n).then_some(r)
    };
    Some(Rat::new(root_of(q.numer())?, root_of(q.denom())?))
}

/// Continued-fraction approximation with a bounded denominator.
fn approximate_rational(x: f64) -> Option<Rat> {
    if !x.is_finite() {
        return None;
    }
    const MAX_DEN: i64 = 1_000_000;
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1i64, 0i64);
    let mut v = x;
    for _ in 0..40 {
        let a = v.floor();
        if a.abs() > 1e12 {
            return None;
        }
        let ai = a as i64;
        let h2 = ai.checked_mul(h1)?.checked_add(h0)?;
        let k2 = ai.checked_mul(k1)?.checked_add(k0)?;
        if k2 > MAX_DEN {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = v - a;
        if frac.abs() < 1e-12 {
            break;
        }
        v = 1.0 / frac;
    }
    (k1 != 0).then(|| Rat::new(h1.into(), k1.into()))
}

impl PartialOrd for Coeff {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Coeff {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }
}

impl<'a> Add<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn add(self, rhs: &'a Coeff) -> Coeff {
        Coeff::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl<'a> Sub<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn sub(self, rhs: &'a Coeff) -> Coeff {
        Coeff::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl<'a> Mul<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn mul(self, rhs: &'a Coeff) -> Coeff {
        if self.b.is_zero() && rhs.b.is_zero() {
            return Coeff::rational(&self.a * &rhs.a);
        }
        let two = Rat::from_integer(2.into());
        Coeff::new(
            &self.a * &rhs.a + &self.b * &rhs.b * two,
            &self.a * &rhs.b + &self.b * &rhs.a,
        )
    }
}

impl Add for Coeff {
    type Output = Coeff;
    fn add(self, rhs: Coeff) -> Coeff {
        &self + &rhs
    }
}

impl Sub for Coeff {
    type Output = Coeff;
    fn sub(self, rhs: Coeff) -> Coeff {
        &self - &rhs
    }
}

impl Mul for Coeff {
    type Output = Coeff;
    fn mul(self, rhs: Coeff) -> Coeff {
        &self * &rhs
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        Coeff::new(-&self.a, -&self.b)
    }
}

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        -&self
    }
}

impl From<Rat> for Coeff {
    fn from(a: Rat) -> Self {
        Coeff::rational(a)
    }
}

impl fmt::Display for Coeff {
    /// Renders in the expression grammar: `a`, `b*sqrt2`, or `(a+b*sqrt2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let surd = |f: &mut fmt::Formatter<'_>, b: &Rat| {
            if b.is_one() {
                write!(f, "sqrt2")
            } else {
                write!(f, "{b}*sqrt2")
            }
        };
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            if self.b.is_negative() {
                write!(f, "-")?;
            }
            surd(f, &self.b.abs())
        } else {
            write!(f, "({}", self.a)?;
            write!(f, "{}", if self.b.is_negative() { "-" } else { "+" })?;
            surd(f, &self.b.abs())?;
            write!(f, ")")
        }
    }
}
