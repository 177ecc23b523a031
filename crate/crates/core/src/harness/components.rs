//! Archimedean components of the additive group.
//!
//! The component at `γ` is the set of elements of value `γ` modulo those of
//! larger value. Multiplying by `x^{γ'−γ}` maps it onto the component at
//! `γ'` preserving order, and taking the residue of `x^{−γ}·f` identifies it
//! with the coefficient field. The coefficient fields here are proper
//! subfields of R, so the "isomorphic to R" condition is only met by this
//! stand-in.

use std::cmp::Ordering;

use rand::Rng;

use crate::coeff::{Coeff, CoeffField};
use crate::gen;
use crate::group::ExpVec;
use crate::series::{Series, Val};

use super::{run_trials, Outcome, SuiteConfig, SuiteReport};

/// `c·x^γ` plus random terms of larger value.
fn in_component<R: Rng>(rng: &mut R, gamma: &ExpVec, c: Coeff, n: usize) -> Series {
    let tail = gen::series(rng, n, 3, 3, CoeffField::QSqrt2);
    let mut terms: Vec<(ExpVec, Coeff)> = tail
        .terms()
        .iter()
        .map(|(e, k)| (&(e.abs()) + gamma, k.clone()))
        .filter(|(e, _)| e > gamma)
        .collect();
    terms.push((gamma.pad_to(n), c));
    Series::from_terms(terms, Val::Infinity)
}

fn scaled_residue(f: &Series, gamma: &ExpVec) -> Option<Coeff> {
    f.shift(&-gamma).residue().ok()
}

pub fn component_iso_check(cfg: &SuiteConfig) -> SuiteReport {
    let n = cfg.n.max(1);
    let notes = vec![
        "components are compared through monomial scaling f -> x^(g'-g) f and the residue map".into(),
        "coefficients lie in Q(sqrt2), a proper subfield of R: the isomorphism-to-R condition holds only in this stand-in sense".into(),
    ];
    run_trials("component-iso", cfg, notes, |_, rng| {
        let gamma = gen::expvec(rng, n, 3);
        let gamma2 = if rng.gen_bool(0.2) {
            gamma.clone()
        } else {
            gen::expvec(rng, n, 3)
        };
        let shift = &gamma2 - &gamma;
        let c1 = gen::nonzero_coeff(rng, 4, CoeffField::QSqrt2);
        let c2 = gen::nonzero_coeff(rng, 4, CoeffField::QSqrt2);
        let f = in_component(rng, &gamma, c1.clone(), n);
        let g = in_component(rng, &gamma, c2.clone(), n);
        let input = format!("f = {f}, g = {g}, gamma' = {gamma2}");
        let (sf, sg) = (f.shift(&shift), g.shift(&shift));

        if shift.is_zero() && (sf != f || sg != g) {
            return Outcome::Fail(format!("{input}: identity scaling moved an element"));
        }
        let before = f.compare(&g);
        let after = sf.compare(&sg);
        if before != after {
            return Outcome::Fail(format!("{input}: scaling changed the order"));
        }
        if sf.finite_valuation().ok() != Some(gamma2.pad_to(n)) {
            return Outcome::Fail(format!("{input}: scaled element left the target component"));
        }
        if scaled_residue(&f, &gamma) != Some(c1.clone()) || scaled_residue(&sf, &gamma2) != Some(c1.clone()) {
            return Outcome::Fail(format!("{input}: residue of the scaled element is not {c1}"));
        }
        if c1 != c2 {
            let by_residue = c1.cmp(&c2);
            if before.ok() != Some(by_residue) {
                return Outcome::Fail(format!("{input}: residue order disagrees with field order"));
            }
        } else if before == Ok(Ordering::Equal) && f != g {
            return Outcome::Fail(format!("{input}: distinct elements compare equal"));
        }
        Outcome::Pass
    })
}
