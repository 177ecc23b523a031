//! Exact arithmetic for ordered Hahn series fields with their natural
//! valuation.
//!
//! The value group is Q^n under the lexicographic order ([`group`]), the
//! field is truncated Hahn series over Q(√2) ([`series`], [`coeff`]). On top
//! of that sit pseudo-Cauchy sequences and pseudo-limits ([`pseudo`]), a cut
//! engine that classifies a cut over a finitely generated substructure as
//! immediate, value or residue transcendental and builds a realizer for each
//! case ([`cut`]), and finite property suites for saturation conditions
//! ([`harness`]).

pub mod coeff;
pub mod cut;
pub mod error;
pub mod gen;
pub mod group;
pub mod harness;
pub mod linalg;
pub mod parse;
pub mod pseudo;
pub mod report;
pub mod series;

pub use coeff::{Coeff, CoeffField};
pub use error::{Error, Result};
pub use group::{ExpVec, ValueSetPoint};
pub use series::{Precision, Series, Val};

/// Exact rational numbers.
pub type Rat = num_rational::BigRational;

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<Rat> {
    let bad = || Error::Parse {
        pos: 0,
        msg: format!("invalid rational {s:?}"),
    };
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: num_bigint::BigInt = num.parse().map_err(|_| bad())?;
    let d: num_bigint::BigInt = den.parse().map_err(|_| bad())?;
    if num_traits::Zero::is_zero(&d) {
        return Err(bad());
    }
    Ok(Rat::new(n, d))
}
