//! Pseudo-Cauchy sequences and pseudo-limits over truncated series.
//!
//! Sequences are finite prefixes `a_0, ..., a_k` of ω-sequences. A
//! pseudo-limit of the prefix must match `γ_ρ = v(a_{ρ+1} − a_ρ)` at every
//! `ρ < k`; the last index has no successor and is exempt. The stricter
//! reading, which also asks `v(x − a_k) > γ_{k−1}`, is available as
//! [`PseudoSeq::is_pseudo_limit_strict`].

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::group::ExpVec;
use crate::series::{Series, Val};
use crate::Rat;

/// A validated pseudo-Cauchy prefix with its cached consecutive values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoSeq {
    elems: Vec<Series>,
    gammas: Vec<ExpVec>,
}

fn diff_value(a: &Series, b: &Series) -> Result<Val> {
    (a - b).valuation().map_err(|_| {
        Error::UndecidableAtPrecision(format!("value of ({a}) - ({b}) is not determined"))
    })
}

/// Validates `xs` as a pseudo-Cauchy sequence.
///
/// The triple condition `v(a_σ − a_ρ) < v(a_τ − a_σ)` is checked for every
/// `ρ < σ < τ`; independently, the consecutive values must increase and
/// every `v(a_σ − a_ρ)` must equal `v(a_{ρ+1} − a_ρ)`.
pub fn check_pseudo_cauchy(xs: &[Series]) -> Result<PseudoSeq> {
    let len = xs.len();
    if len < 3 {
        return Err(Error::SequenceTooShort { needed: 3, got: len });
    }
    // vals[r][s] = v(a_s - a_r) for r < s
    let mut vals: Vec<Vec<ExpVec>> = vec![Vec::new(); len];
    for r in 0..len {
        for s in (r + 1)..len {
            match diff_value(&xs[s], &xs[r])? {
                Val::Finite(e) => vals[r].push(e),
                Val::Infinity => {
                    return Err(Error::NotPseudoCauchy {
                        rho: r,
                        sigma: s,
                        tau: s,
                        detail: "repeated element: difference has infinite value".into(),
                    })
                }
            }
        }
    }
    let v = |r: usize, s: usize| &vals[r][s - r - 1];
    for r in 0..len {
        for s in (r + 1)..len {
            for t in (s + 1)..len {
                if v(r, s) >= v(s, t) {
                    return Err(Error::NotPseudoCauchy {
                        rho: r,
                        sigma: s,
                        tau: t,
                        detail: format!("v(a_s - a_r) = {} is not below v(a_t - a_s) = {}", v(r, s), v(s, t)),
                    });
                }
            }
        }
    }
    let gammas: Vec<ExpVec> = (0..len - 1).map(|r| v(r, r + 1).clone()).collect();
    for (r, w) in gammas.windows(2).enumerate() {
        if w[0] >= w[1] {
            return Err(Error::NotPseudoCauchy {
                rho: r,
                sigma: r + 1,
                tau: r + 2,
                detail: "consecutive values do not increase".into(),
            });
        }
    }
    for r in 0..len {
        for s in (r + 1)..len {
            if v(r, s) != &gammas[r] {
                return Err(Error::NotPseudoCauchy {
                    rho: r,
                    sigma: s,
                    tau: s,
                    detail: format!("v(a_s - a_r) = {} differs from gamma_r = {}", v(r, s), gammas[r]),
                });
            }
        }
    }
    Ok(PseudoSeq {
        elems: xs.to_vec(),
        gammas,
    })
}

impl PseudoSeq {
    pub fn elems(&self) -> &[Series] {
        &self.elems
    }

    pub fn gammas(&self) -> &[ExpVec] {
        &self.gammas
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    fn last(&self) -> &Series {
        self.elems.last().expect("at least three elements")
    }

    /// `v(x − a_ρ) == γ_ρ`, deciding from a lower bound when possible.
    fn matches_gamma(&self, x: &Series, rho: usize) -> Result<bool> {
        let d = x - &self.elems[rho];
        let gamma = Val::Finite(self.gammas[rho].clone());
        match d.valuation() {
            Ok(v) => Ok(v == gamma),
            Err(_) if d.value_lower_bound() > gamma => Ok(false),
            Err(_) => Err(Error::UndecidableAtPrecision(format!(
                "v(x - a_{rho}) for x = {x}"
            ))),
        }
    }

    /// Pseudo-limit of the prefix: `v(x − a_ρ) = γ_ρ` for every `ρ < k`.
    pub fn is_pseudo_limit(&self, x: &Series) -> Result<bool> {
        for rho in 0..self.gammas.len() {
            if !self.matches_gamma(x, rho)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The inclusive reading: additionally `v(x − a_k) > γ_{k−1}`.
    pub fn is_pseudo_limit_strict(&self, x: &Series) -> Result<bool> {
        if !self.is_pseudo_limit(x)? {
            return Ok(false);
        }
        let top = Val::Finite(self.gammas.last().expect("nonempty").clone());
        let d = x - self.last();
        match d.valuation() {
            Ok(v) => Ok(v > top),
            Err(_) if d.value_lower_bound() > top => Ok(true),
            Err(_) => Err(Error::UndecidableAtPrecision(format!("v(x - a_k) for x = {x}"))),
        }
    }

    /// Appends `b`, keeping the sequence pseudo-Cauchy.
    pub fn push(&self, b: Series) -> Result<PseudoSeq> {
        let mut xs = self.elems.clone();
        xs.push(b);
        check_pseudo_cauchy(&xs)
    }

    /// Builds a pseudo-limit by stitching: on exponents in `(γ_{ρ−1}, γ_ρ]`
    /// it copies `a_{ρ+1}`, which agrees there with every later element.
    ///
    /// The result is exact below the first exponent of `a_k` past `γ_{k−1}`,
    /// capped by `a_k`'s own truncation and by `2γ_{k−1} − γ_{k−2}`.
    pub fn construct_pseudo_limit(&self) -> Series {
        let mut terms = Vec::new();
        let mut lower: Option<&ExpVec> = None;
        for (rho, gamma) in self.gammas.iter().enumerate() {
            let next = &self.elems[rho + 1];
            terms.extend(
                next.terms()
                    .iter()
                    .filter(|(e, _)| lower.is_none_or(|l| e > l) && e <= gamma)
                    .cloned(),
            );
            lower = Some(gamma);
        }
        let k = self.gammas.len();
        let top = &self.gammas[k - 1];
        let step = top + &(top - &self.gammas[k - 2]);
        let mut trunc = Val::Finite(step).min(self.last().trunc().clone());
        if let Some((e, _)) = self.last().terms().iter().find(|(e, _)| e > top) {
            trunc = trunc.min(Val::Finite(e.clone()));
        }
        Series::from_terms(terms, trunc)
    }

    /// The type fragment `{ n|x − a_{ν+1}| < |a_ν − a_{ν+1}| : ν < k−1, n ≤ n_max }`.
    pub fn limit_type_fragment(&self, n_max: u64) -> LimitTypeFragment<'_> {
        LimitTypeFragment { seq: self, n_max }
    }
}

/// A finite, checkable piece of the type of a pseudo-limit.
#[derive(Clone, Copy, Debug)]
pub struct LimitTypeFragment<'a> {
    seq: &'a PseudoSeq,
    n_max: u64,
}

impl LimitTypeFragment<'_> {
    pub fn n_max(&self) -> u64 {
        self.n_max
    }

    fn indices(&self) -> std::ops::Range<usize> {
        0..self.seq.gammas.len() - 1
    }

    /// First `(ν, n)` at which `x` violates the fragment.
    pub fn first_failure(&self, x: &Series) -> Result<Option<(usize, u64)>> {
        let a = &self.seq.elems;
        for nu in self.indices() {
            let lhs = (x - &a[nu + 1]).abs()?;
            let rhs = (&a[nu] - &a[nu + 1]).abs()?;
            for n in 1..=self.n_max {
                let scaled = lhs.scale(&Rat::from_integer(n.into()).into());
                if scaled.compare(&rhs)? != Ordering::Less {
                    return Ok(Some((nu, n)));
                }
            }
        }
        Ok(None)
    }

    pub fn holds(&self, x: &Series) -> Result<bool> {
        Ok(self.first_failure(x)?.is_none())
    }

    /// The valuation side: `v(x − a_{ν+1}) > γ_ν` for every `ν < k−1`.
    pub fn valuation_criterion(&self, x: &Series) -> Result<bool> {
        let a = &self.seq.elems;
        for nu in self.indices() {
            let d = x - &a[nu + 1];
            let gamma = Val::Finite(self.seq.gammas[nu].clone());
            let above = match d.valuation() {
                Ok(v) => v > gamma,
                Err(_) if d.value_lower_bound() > gamma => true,
                Err(e) => return Err(e),
            };
            if !above {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Coeff;

    fn x(p: i64, q: i64) -> Series {
        Series::x_pow(ExpVec::from_fracs(&[(p, q)]))
    }

    fn c(n: i64) -> Series {
        Series::from_int(n, 1)
    }

    fn ladder() -> Vec<Series> {
        vec![
            c(0),
            x(1, 1),
            &x(1, 1) + &x(2, 1),
            &(&x(1, 1) + &x(2, 1)) + &x(3, 1),
        ]
    }

    #[test]
    fn check_examples() {
        let s = check_pseudo_cauchy(&ladder()).unwrap();
        let g: Vec<ExpVec> = (1..=3).map(|i| ExpVec::from_ints(&[i])).collect();
        assert_eq!(s.gammas(), &g[..]);

        assert!(matches!(
            check_pseudo_cauchy(&[c(0), x(1, 1), x(1, 1)]),
            Err(Error::NotPseudoCauchy { .. })
        ));
        assert!(matches!(
            check_pseudo_cauchy(&[c(0), x(2, 1), &x(2, 1) + &x(1, 1)]),
            Err(Error::NotPseudoCauchy { rho: 0, sigma: 1, tau: 2, .. })
        ));
        assert!(matches!(
            check_pseudo_cauchy(&[c(0), x(1, 1)]),
            Err(Error::SequenceTooShort { .. })
        ));
    }

    #[test]
    fn undecidable_difference_is_reported() {
        let fuzzy = &x(1, 1) + &Series::big_o(ExpVec::from_ints(&[2]));
        let r = check_pseudo_cauchy(&[c(0), x(1, 1), fuzzy]);
        assert!(matches!(r, Err(Error::UndecidableAtPrecision(_))));
    }

    #[test]
    fn pseudo_limit_examples() {
        let s = check_pseudo_cauchy(&ladder()).unwrap();
        assert!(s.is_pseudo_limit(s.elems().last().unwrap()).unwrap());
        assert!(!s.is_pseudo_limit(&s.elems()[0]).unwrap());
        let short = check_pseudo_cauchy(&ladder()[..3]).unwrap();
        let cand = &(&x(1, 1) + &x(2, 1)) + &x(5, 1);
        assert!(short.is_pseudo_limit(&cand).unwrap());
    }

    #[test]
    fn strict_reading_is_stronger() {
        let short = check_pseudo_cauchy(&ladder()[..3]).unwrap();
        // x + 2x^2 matches gamma on the prefix but is no closer to a_2 than a_1 is
        let cand = &x(1, 1) + &Series::monomial(Coeff::from_int(2), ExpVec::from_ints(&[2]));
        assert!(short.is_pseudo_limit(&cand).unwrap());
        assert!(!short.is_pseudo_limit_strict(&cand).unwrap());
        assert!(short.is_pseudo_limit_strict(&ladder()[2]).unwrap());
    }

    #[test]
    fn construct_examples() {
        let s = check_pseudo_cauchy(&ladder()).unwrap();
        let lim = s.construct_pseudo_limit();
        let expected = &ladder()[3] + &Series::big_o(ExpVec::from_ints(&[4]));
        assert_eq!(lim, expected);
        assert!(s.is_pseudo_limit(&lim).unwrap());

        let s = check_pseudo_cauchy(&[c(0), c(1), &c(1) + &x(1, 2)]).unwrap();
        let lim = s.construct_pseudo_limit();
        assert_eq!(lim, &(&c(1) + &x(1, 2)) + &Series::big_o(ExpVec::from_ints(&[1])));
        assert!(s.is_pseudo_limit(&lim).unwrap());
    }

    #[test]
    fn fragment_examples() {
        let s = check_pseudo_cauchy(&ladder()).unwrap();
        let lim = s.construct_pseudo_limit();
        let frag = s.limit_type_fragment(50);
        assert!(frag.holds(&lim).unwrap());
        assert_eq!(frag.first_failure(&s.elems()[0]).unwrap(), Some((0, 1)));

        let short = check_pseudo_cauchy(&ladder()[..3]).unwrap();
        let frag = short.limit_type_fragment(100);
        let cand = &x(1, 1) + &x(3, 1);
        assert!(frag.holds(&cand).unwrap());
        assert!(frag.valuation_criterion(&cand).unwrap());
    }

    #[test]
    fn tail_stability() {
        let s = check_pseudo_cauchy(&ladder()).unwrap();
        let b = &ladder()[3] + &x(7, 2);
        assert!(s.push(b).is_ok());
        let bad = &ladder()[3] + &x(5, 2);
        assert!(s.push(bad).is_err());
    }
}
