//! The ambient value group and its growth on demand.
//!
//! Extending Q^n to Q^{n+k} pads every vector with zeros on the right. The
//! new coordinates are the least significant, so padding is an order
//! embedding, and a vector supported on a new coordinate is infinitesimal
//! with respect to every old nonzero vector.

use crate::error::{Error, Result};
use crate::group::ExpVec;
use crate::series::Series;

/// Workspace-scoped ambient dimension. Extension is the one mutating
/// operation in the engine; callers sharing an `Ambient` must serialize.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ambient {
    dim: usize,
}

impl Ambient {
    pub fn new(dim: usize) -> Self {
        Ambient { dim: dim.max(1) }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Adds `k` fresh coordinates and returns the new dimension.
    pub fn extend(&mut self, k: usize) -> usize {
        self.dim += k;
        self.dim
    }

    pub fn embed(&self, v: &ExpVec) -> ExpVec {
        v.pad_to(self.dim)
    }

    pub fn embed_series(&self, s: &Series) -> Series {
        s.pad_to(self.dim)
    }

    /// A value strictly between two distinct old values: their midpoint.
    pub fn place_between(&self, lo: &ExpVec, hi: &ExpVec) -> Result<ExpVec> {
        if lo >= hi {
            return Err(Error::NotSeparated(format!("{lo} is not below {hi}")));
        }
        Ok(self.embed(&lo.midpoint(hi)))
    }

    /// Extends by one coordinate and returns `v + e_new`, which lies above
    /// `v` but below every old value that exceeds `v`.
    pub fn fresh_above(&mut self, v: &ExpVec) -> ExpVec {
        let n = self.extend(1);
        &self.embed(v) + &ExpVec::unit(n, n)
    }

    /// Mirror of [`Ambient::fresh_above`].
    pub fn fresh_below(&mut self, v: &ExpVec) -> ExpVec {
        let n = self.extend(1);
        &self.embed(v) - &ExpVec::unit(n, n)
    }
}

/// Grows `amb` by `k` coordinates; returns the new dimension.
pub fn extend_ambient(amb: &mut Ambient, k: usize) -> usize {
    amb.extend(k)
}
