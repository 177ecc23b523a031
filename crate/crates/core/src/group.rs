//! The value group: Q^n under the lexicographic order, first coordinate
//! most significant.
//!
//! Besides the group arithmetic this module carries the valuation theory of
//! an ordered abelian group: archimedean equivalence, dominance, the value
//! set (the archimedean classes, ordered reversely to dominance) and the
//! group valuation sending 0 to infinity and `x` to its class.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::{linalg, parse_rational, Rat};

/// An element of Q^n.
///
/// Coordinates past the stored length read as zero, so a vector and its
/// zero-padded embedding into a larger ambient dimension are equal. The
/// checked [`lex_compare`] still insists on equal stored dimensions.
#[derive(Clone, Debug)]
pub struct ExpVec {
    coords: Vec<Rat>,
}

impl ExpVec {
    pub fn zero(dim: usize) -> Self {
        ExpVec {
            coords: vec![Rat::zero(); dim],
        }
    }

    pub fn new(coords: Vec<Rat>) -> Self {
        ExpVec { coords }
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        ExpVec::new(xs.iter().map(|&x| Rat::from_integer(x.into())).collect())
    }

    /// Builds a vector from `(numerator, denominator)` pairs.
    pub fn from_fracs(xs: &[(i64, i64)]) -> Self {
        ExpVec::new(
            xs.iter()
                .map(|&(p, q)| Rat::new(p.into(), q.into()))
                .collect(),
        )
    }

    /// The `index`-th unit vector (1-based).
    pub fn unit(dim: usize, index: usize) -> Self {
        let mut v = ExpVec::zero(dim.max(index));
        v.coords[index - 1] = Rat::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    /// Coordinate `i` (0-based); zero beyond the stored length.
    pub fn coord(&self, i: usize) -> Rat {
        self.coords.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Rational scaling; Q^n is divisible so every scalar is allowed.
    pub fn scale(&self, q: &Rat) -> ExpVec {
        ExpVec::new(self.coords.iter().map(|c| c * q).collect())
    }

    /// Zero-pads (never truncates) to `dim` coordinates.
    pub fn pad_to(&self, dim: usize) -> ExpVec {
        let mut coords = self.coords.clone();
        if coords.len() < dim {
            coords.resize(dim, Rat::zero());
        }
        ExpVec { coords }
    }

    /// Sign in the lexicographic order.
    pub fn signum(&self) -> Ordering {
        self.coords
            .iter()
            .find(|c| !c.is_zero())
            .map_or(Ordering::Equal, |c| {
                if c.is_positive() {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            })
    }

    /// `max(x, -x)`.
    pub fn abs(&self) -> ExpVec {
        if self.signum() == Ordering::Less {
            -self
        } else {
            self.clone()
        }
    }

    pub fn midpoint(&self, other: &ExpVec) -> ExpVec {
        (self + other).scale(&Rat::new(1.into(), 2.into()))
    }

    fn significant_len(&self) -> usize {
        self.coords
            .iter()
            .rposition(|c| !c.is_zero())
            .map_or(0, |i| i + 1)
    }
}

impl PartialEq for ExpVec {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for ExpVec {}

impl PartialOrd for ExpVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExpVec {
    fn cmp(&self, other: &Self) -> Ordering {
        let n = self.dim().max(other.dim());
        for i in 0..n {
            let ord = match (self.coords.get(i), other.coords.get(i)) {
                (Some(a), Some(b)) => a.cmp(b),
                (Some(a), None) => a.cmp(&Rat::zero()),
                (None, Some(b)) => Rat::zero().cmp(b),
                (None, None) => Ordering::Equal,
            };
            if ord != Ordering::Equal {
                return ord;
            }
        }
        Ordering::Equal
    }
}

impl Hash for ExpVec {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coords[..self.significant_len()].hash(state);
    }
}

impl<'a> Add<&'a ExpVec> for &'a ExpVec {
    type Output = ExpVec;
    fn add(self, rhs: &'a ExpVec) -> ExpVec {
        let n = self.dim().max(rhs.dim());
        ExpVec::new((0..n).map(|i| self.coord(i) + rhs.coord(i)).collect())
    }
}

impl Add for ExpVec {
    type Output = ExpVec;
    fn add(self, rhs: ExpVec) -> ExpVec {
        &self + &rhs
    }
}

impl<'a> Sub<&'a ExpVec> for &'a ExpVec {
    type Output = ExpVec;
    fn sub(self, rhs: &'a ExpVec) -> ExpVec {
        let n = self.dim().max(rhs.dim());
        ExpVec::new((0..n).map(|i| self.coord(i) - rhs.coord(i)).collect())
    }
}

impl Sub for ExpVec {
    type Output = ExpVec;
    fn sub(self, rhs: ExpVec) -> ExpVec {
        &self - &rhs
    }
}

impl Neg for &ExpVec {
    type Output = ExpVec;
    fn neg(self) -> ExpVec {
        ExpVec::new(self.coords.iter().map(|c| -c).collect())
    }
}

impl Neg for ExpVec {
    type Output = ExpVec;
    fn neg(self) -> ExpVec {
        -&self
    }
}

impl fmt::Display for ExpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for ExpVec {
    type Err = Error;

    /// Accepts `(q1, ..., qn)` or the bare comma list.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(t);
        if inner.trim().is_empty() {
            return Err(Error::Parse {
                pos: 0,
                msg: "empty vector".into(),
            });
        }
        inner
            .split(',')
            .map(|c| parse_rational(c.trim()))
            .collect::<Result<Vec<_>>>()
            .map(ExpVec::new)
    }
}

/// Lexicographic comparison of two vectors of the same stored dimension.
pub fn lex_compare(u: &ExpVec, v: &ExpVec) -> Result<Ordering> {
    if u.dim() != v.dim() {
        return Err(Error::DimensionMismatch {
            left: u.dim(),
            right: v.dim(),
        });
    }
    Ok(u.cmp(v))
}

/// A point of the value set Γ, plus infinity for the value of 0.
///
/// The class of `x` is the (1-based) position of its leading nonzero
/// coordinate. Smaller index means a larger archimedean class, so the
/// natural integer order on indices is the reversed dominance order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ValueSetPoint {
    Index(usize),
    Infinity,
}

impl fmt::Display for ValueSetPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValueSetPoint::Index(i) => write!(f, "{i}"),
            ValueSetPoint::Infinity => write!(f, "inf"),
        }
    }
}

/// The group valuation: infinity on 0, otherwise the archimedean class.
pub fn group_value(x: &ExpVec) -> ValueSetPoint {
    match x.coords.iter().position(|c| !c.is_zero()) {
        Some(i) => ValueSetPoint::Index(i + 1),
        None => ValueSetPoint::Infinity,
    }
}

fn require_nonzero(x: &ExpVec) -> Result<()> {
    if x.is_zero() {
        Err(Error::ZeroArgument)
    } else {
        Ok(())
    }
}

/// Archimedean equivalence, decided by comparing leading indices.
pub fn arch_equiv(x: &ExpVec, y: &ExpVec) -> Result<bool> {
    require_nonzero(x)?;
    require_nonzero(y)?;
    Ok(group_value(x) == group_value(y))
}

/// Default search bound for [`arch_witness`].
pub const DEFAULT_WITNESS_BOUND: u64 = 64;

/// Searches for the least `n` in `1..=bound` with `n|x| >= |y|` and
/// `n|y| >= |x|`, straight from the definition of equivalence.
pub fn arch_witness(x: &ExpVec, y: &ExpVec, bound: u64) -> Result<Option<u64>> {
    require_nonzero(x)?;
    require_nonzero(y)?;
    let (ax, ay) = (x.abs(), y.abs());
    for n in 1..=bound {
        let q = Rat::from_integer(n.into());
        if ax.scale(&q) >= ay && ay.scale(&q) >= ax {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// `x << y`: every multiple of `|x|` stays below `|y|`.
pub fn dominates(x: &ExpVec, y: &ExpVec) -> Result<bool> {
    require_nonzero(x)?;
    require_nonzero(y)?;
    Ok(group_value(y) < group_value(x))
}

/// Tag of an archimedean component: a finite point of the value set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ArchComponentTag {
    index: usize,
}

impl ArchComponentTag {
    pub fn new(point: ValueSetPoint) -> Result<Self> {
        match point {
            ValueSetPoint::Index(index) => Ok(ArchComponentTag { index }),
            ValueSetPoint::Infinity => Err(Error::ZeroArgument),
        }
    }

    pub fn point(&self) -> ValueSetPoint {
        ValueSetPoint::Index(self.index)
    }

    pub fn index(&self) -> usize {
        self.index
    }
}

/// Order-embedding of Q into the component tagged `t`: `q` at position
/// `t.index`, zero elsewhere.
pub fn component_embed(t: ArchComponentTag, q: &Rat, dim: usize) -> Result<ExpVec> {
    if t.index > dim {
        return Err(Error::DimensionMismatch {
            left: t.index,
            right: dim,
        });
    }
    let mut v = ExpVec::zero(dim);
    v.coords[t.index - 1] = q.clone();
    Ok(v)
}

/// Dimension of the Q-span of `vs`.
pub fn rational_rank(vs: &[ExpVec]) -> Result<usize> {
    if let Some(first) = vs.first() {
        if let Some(bad) = vs.iter().find(|v| v.dim() != first.dim()) {
            return Err(Error::DimensionMismatch {
                left: first.dim(),
                right: bad.dim(),
            });
        }
    }
    let rows: Vec<Vec<Rat>> = vs.iter().map(|v| v.coords.clone()).collect();
    Ok(linalg::rank(&rows))
}

/// A Q-basis of the span of some vectors, with coordinates on demand.
#[derive(Clone, Debug, Default)]
pub struct SpanBasis {
    basis: Vec<ExpVec>,
}

impl SpanBasis {
    /// Greedy basis drawn from `vs` in order.
    pub fn from_vectors(vs: &[ExpVec]) -> Self {
        let dim = vs.iter().map(ExpVec::dim).max().unwrap_or(0);
        let rows: Vec<Vec<Rat>> = vs.iter().map(|v| v.pad_to(dim).coords).collect();
        let basis = linalg::independent_subset(&rows)
            .into_iter()
            .map(|i| vs[i].clone())
            .collect();
        SpanBasis { basis }
    }

    pub fn vectors(&self) -> &[ExpVec] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `v` over the basis, or `None` outside the span.
    pub fn coordinates(&self, v: &ExpVec) -> Option<Vec<Rat>> {
        let dim = self
            .basis
            .iter()
            .map(ExpVec::dim)
            .max()
            .unwrap_or(0)
            .max(v.dim());
        let rows: Vec<Vec<Rat>> = self.basis.iter().map(|b| b.pad_to(dim).coords).collect();
        linalg::solve_combination(&rows, &v.pad_to(dim).coords)
    }

    pub fn contains(&self, v: &ExpVec) -> bool {
        self.coordinates(v).is_some()
    }

    /// Splits `v` as `s + r` with `s` in the span and `r` zero on every
    /// pivot column of the span's reduced echelon form. Returns the pivot
    /// columns (0-based) and `r`.
    ///
    /// Every nonzero span element leads at a pivot column while `r` does
    /// not, so `v` and `s + r'` sit in the same cut of the span whenever
    /// `r'` has the same sign and leading column as `r`.
    pub fn reduce(&self, v: &ExpVec) -> (Vec<usize>, ExpVec) {
        let dim = self.basis.iter().map(ExpVec::dim).max().unwrap_or(0).max(v.dim());
        let rows: Vec<Vec<Rat>> = self.basis.iter().map(|b| b.pad_to(dim).coords).collect();
        let (pivots, residual) = linalg::reduce_against(&rows, &v.pad_to(dim).coords);
        (pivots, ExpVec::new(residual))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rat {
        Rat::new(p.into(), q.into())
    }

    #[test]
    fn lex_compare_examples() {
        let c = |a: &[(i64, i64)], b: &[(i64, i64)]| {
            lex_compare(&ExpVec::from_fracs(a), &ExpVec::from_fracs(b)).unwrap()
        };
        assert_eq!(c(&[(1, 1), (0, 1)], &[(0, 1), (5, 1)]), Ordering::Greater);
        assert_eq!(c(&[(0, 1), (0, 1)], &[(0, 1), (0, 1)]), Ordering::Equal);
        assert_eq!(c(&[(2, 3), (-1, 1)], &[(2, 3), (-2, 1)]), Ordering::Greater);
        assert_eq!(
            lex_compare(&ExpVec::from_ints(&[1]), &ExpVec::from_ints(&[1, 0])),
            Err(Error::DimensionMismatch { left: 1, right: 2 })
        );
    }

    #[test]
    fn group_value_examples() {
        assert_eq!(group_value(&ExpVec::from_ints(&[0, 0, 0])), ValueSetPoint::Infinity);
        assert_eq!(group_value(&ExpVec::from_ints(&[0, 3, -7])), ValueSetPoint::Index(2));
        assert_eq!(
            group_value(&ExpVec::from_fracs(&[(1, 2), (0, 1), (0, 1)])),
            ValueSetPoint::Index(1)
        );
    }

    #[test]
    fn arch_equiv_examples_with_witness() {
        let a = ExpVec::from_ints(&[0, 3]);
        let b = ExpVec::from_ints(&[0, -7]);
        assert!(arch_equiv(&a, &b).unwrap());
        assert_eq!(arch_witness(&a, &b, 10).unwrap(), Some(3));

        let a = ExpVec::from_ints(&[1, 0]);
        let b = ExpVec::from_ints(&[0, 1]);
        assert!(!arch_equiv(&a, &b).unwrap());
        assert_eq!(arch_witness(&a, &b, 10).unwrap(), None);

        let a = ExpVec::from_ints(&[5, 1]);
        let b = ExpVec::from_ints(&[5, 9]);
        assert!(arch_equiv(&a, &b).unwrap());
        assert_eq!(arch_witness(&a, &b, 10).unwrap(), Some(2));

        assert_eq!(arch_equiv(&ExpVec::zero(2), &a), Err(Error::ZeroArgument));
    }

    #[test]
    fn dominates_examples() {
        let d = |a: &[i64], b: &[i64]| {
            dominates(&ExpVec::from_ints(a), &ExpVec::from_ints(b)).unwrap()
        };
        assert!(d(&[0, 1], &[1, 0]));
        assert!(!d(&[1, 0], &[2, 0]));
        assert!(!d(&[1, 0], &[0, 1]));
    }

    #[test]
    fn component_embed_examples() {
        let t1 = ArchComponentTag::new(ValueSetPoint::Index(1)).unwrap();
        let t2 = ArchComponentTag::new(ValueSetPoint::Index(2)).unwrap();
        assert_eq!(component_embed(t1, &r(1, 1), 2).unwrap(), ExpVec::from_ints(&[1, 0]));
        assert_eq!(
            component_embed(t2, &r(-3, 4), 2).unwrap(),
            ExpVec::from_fracs(&[(0, 1), (-3, 4)])
        );
        assert_eq!(component_embed(t1, &r(0, 1), 2).unwrap(), ExpVec::zero(2));
        assert!(ArchComponentTag::new(ValueSetPoint::Infinity).is_err());
        assert!(component_embed(t2, &r(1, 1), 1).is_err());
    }

    #[test]
    fn rational_rank_examples() {
        assert_eq!(rational_rank(&[]).unwrap(), 0);
        let vs = [
            ExpVec::from_ints(&[1, 0]),
            ExpVec::from_ints(&[0, 1]),
            ExpVec::from_ints(&[1, 1]),
        ];
        assert_eq!(rational_rank(&vs).unwrap(), 2);
        assert_eq!(
            rational_rank(&[ExpVec::from_ints(&[2, 4]), ExpVec::from_ints(&[1, 2])]).unwrap(),
            1
        );
        assert!(rational_rank(&[ExpVec::from_ints(&[1]), ExpVec::from_ints(&[1, 0])]).is_err());
    }

    #[test]
    fn padding_is_an_order_embedding() {
        let u = ExpVec::from_ints(&[1, 2]);
        assert_eq!(u.pad_to(3), ExpVec::from_ints(&[1, 2, 0]));
        assert_eq!(u.pad_to(3).dim(), 3);
        assert_eq!(u, u.pad_to(3));
    }

    #[test]
    fn span_basis_coordinates() {
        let b = SpanBasis::from_vectors(&[
            ExpVec::from_ints(&[2, 0]),
            ExpVec::from_ints(&[4, 0]),
        ]);
        assert_eq!(b.rank(), 1);
        assert_eq!(b.coordinates(&ExpVec::from_ints(&[1, 0])), Some(vec![r(1, 2)]));
        assert!(!b.contains(&ExpVec::from_ints(&[0, 1])));
    }

    #[test]
    fn parse_and_display() {
        let v: ExpVec = "(1/2, -3, 0)".parse().unwrap();
        assert_eq!(v, ExpVec::from_fracs(&[(1, 2), (-3, 1), (0, 1)]));
        assert_eq!(v.to_string(), "(1/2, -3, 0)");
        assert_eq!("2,0".parse::<ExpVec>().unwrap(), ExpVec::from_ints(&[2, 0]));
    }
}
