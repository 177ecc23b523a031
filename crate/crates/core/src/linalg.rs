//! Exact Gaussian elimination over the rationals.

use num_traits::{One, Zero};

use crate::Rat;

/// Row-reduces `rows` in place to echelon form and returns the rank.
fn echelon(rows: &mut [Vec<Rat>]) -> usize {
    let ncols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut rank = 0;
    for col in 0..ncols {
        if rank == rows.len() {
            break;
        }
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = Rat::one() / &rows[rank][col];
        for x in rows[rank].iter_mut() {
            *x *= &inv;
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in col..ncols {
                    let sub = &factor * &rows[rank][c];
                    rows[r][c] -= sub;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn padded(v: &[Rat], len: usize) -> Vec<Rat> {
    let mut out = v.to_vec();
    out.resize(len, Rat::zero());
    out
}

/// Dimension of the Q-span of the given vectors.
pub fn rank(vectors: &[Vec<Rat>]) -> usize {
    let len = vectors.iter().map(Vec::len).max().unwrap_or(0);
    let mut rows: Vec<Vec<Rat>> = vectors.iter().map(|v| padded(v, len)).collect();
    echelon(&mut rows)
}

/// Picks a maximal independent subfamily, returning the indices into `vectors`
/// in their original order.
pub fn independent_subset(vectors: &[Vec<Rat>]) -> Vec<usize> {
    let mut chosen: Vec<Vec<Rat>> = Vec::new();
    let mut idx = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        let mut trial = chosen.clone();
        trial.push(v.clone());
        if rank(&trial) > chosen.len() {
            chosen.push(v.clone());
            idx.push(i);
        }
    }
    idx
}

/// Solves `sum_i c_i * basis[i] = target` for rational `c_i`.
///
/// Returns `None` when `target` is outside the span. When the basis is
/// dependent, one solution is returned.
pub fn solve_combination(basis: &[Vec<Rat>], target: &[Rat]) -> Option<Vec<Rat>> {
    let len = basis
        .iter()
        .map(Vec::len)
        .chain(std::iter::once(target.len()))
        .max()
        .unwrap_or(0);
    let k = basis.len();
    // one row per coordinate, one column per basis vector, then the target
    let mut rows: Vec<Vec<Rat>> = (0..len)
        .map(|r| {
            let mut row: Vec<Rat> = basis
                .iter()
                .map(|b| b.get(r).cloned().unwrap_or_else(Rat::zero))
                .collect();
            row.push(target.get(r).cloned().unwrap_or_else(Rat::zero));
            row
        })
        .collect();
    let rnk = echelon(&mut rows);
    let mut solution = vec![Rat::zero(); k];
    for row in rows.iter().take(rnk) {
        let lead = row.iter().position(|x| !x.is_zero())?;
        if lead == k {
            return None;
        }
        solution[lead] = row[k].clone();
    }
    // rows past the rank are zero in the basis columns; inconsistent if the target column is not
    if rows.iter().skip(rnk).any(|row| !row[k].is_zero()) {
        return None;
    }
    Some(solution)
}

/// Lexicographic reduction of `target` against the span of `vectors`.
///
/// Returns `(pivots, residual)`: the pivot columns of the reduced echelon
/// form of the span, and `target` minus the unique span element that agrees
/// with it on every pivot column. The residual is zero on all pivots.
pub fn reduce_against(vectors: &[Vec<Rat>], target: &[Rat]) -> (Vec<usize>, Vec<Rat>) {
    let len = vectors
        .iter()
        .map(Vec::len)
        .chain(std::iter::once(target.len()))
        .max()
        .unwrap_or(0);
    let mut rows: Vec<Vec<Rat>> = vectors.iter().map(|v| padded(v, len)).collect();
    let rnk = echelon(&mut rows);
    let mut residual = padded(target, len);
    let mut pivots = Vec::with_capacity(rnk);
    for row in rows.iter().take(rnk) {
        let p = row.iter().position(|x| !x.is_zero()).expect("nonzero echelon row");
        pivots.push(p);
        let factor = residual[p].clone();
        if !factor.is_zero() {
            for (r, x) in residual.iter_mut().zip(row) {
                *r -= &factor * x;
            }
        }
    }
    (pivots, residual)
}
