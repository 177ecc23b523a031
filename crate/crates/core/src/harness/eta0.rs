//! Finite checks of the η₀ condition: between any two finite sets `A < B`
//! there is an element.
//!
//! Three orders are available. Q^n under the lexicographic order and Q are
//! dense without endpoints, so a witness always exists. The value set Γ of
//! Q^n is a finite chain, so adjacent points have nothing between them and
//! the checker must answer `NoWitness`.

use std::fmt::Display;

use rand::Rng;

use crate::error::{Error, Result};
use crate::gen;
use crate::group::{ExpVec, ValueSetPoint};
use crate::Rat;

use super::{run_trials, Outcome, SuiteConfig, SuiteReport};

/// A total order that can be asked for an element strictly inside an
/// interval. `None` bounds are unbounded ends.
pub trait OrderOracle {
    type Elem: Clone + Ord + Display;
    fn name(&self) -> String;
    fn between(&self, lo: Option<&Self::Elem>, hi: Option<&Self::Elem>) -> Option<Self::Elem>;
}

/// Q^n under the lexicographic order.
#[derive(Clone, Copy, Debug)]
pub struct QnLex(pub usize);

impl OrderOracle for QnLex {
    type Elem = ExpVec;

    fn name(&self) -> String {
        format!("Q^{}-lex", self.0)
    }

    fn between(&self, lo: Option<&ExpVec>, hi: Option<&ExpVec>) -> Option<ExpVec> {
        let one = ExpVec::unit(self.0, 1);
        Some(match (lo, hi) {
            (Some(l), Some(h)) => l.midpoint(h),
            (Some(l), None) => l + &one,
            (None, Some(h)) => h - &one,
            (None, None) => ExpVec::zero(self.0),
        })
    }
}

/// The rationals.
#[derive(Clone, Copy, Debug)]
pub struct RationalLine;

impl OrderOracle for RationalLine {
    type Elem = Rat;

    fn name(&self) -> String {
        "Q".into()
    }

    fn between(&self, lo: Option<&Rat>, hi: Option<&Rat>) -> Option<Rat> {
        let one = Rat::from_integer(1.into());
        Some(match (lo, hi) {
            (Some(l), Some(h)) => (l + h) / Rat::from_integer(2.into()),
            (Some(l), None) => l + one,
            (None, Some(h)) => h - one,
            (None, None) => Rat::from_integer(0.into()),
        })
    }
}

/// The value set of Q^n: the classes `1..=n` and infinity.
#[derive(Clone, Copy, Debug)]
pub struct FiniteGamma(pub usize);

impl FiniteGamma {
    pub fn points(&self) -> Vec<ValueSetPoint> {
        (1..=self.0)
            .map(ValueSetPoint::Index)
            .chain(std::iter::once(ValueSetPoint::Infinity))
            .collect()
    }
}

impl OrderOracle for FiniteGamma {
    type Elem = ValueSetPoint;

    fn name(&self) -> String {
        format!("value set of Q^{}", self.0)
    }

    fn between(&self, lo: Option<&ValueSetPoint>, hi: Option<&ValueSetPoint>) -> Option<ValueSetPoint> {
        self.points()
            .into_iter()
            .find(|p| lo.is_none_or(|l| p > l) && hi.is_none_or(|h| p < h))
    }
}

/// An element strictly above `a` and strictly below `b`.
pub fn eta0_witness<O: OrderOracle>(a: &[O::Elem], b: &[O::Elem], order: &O) -> Result<O::Elem> {
    let lo = a.iter().max();
    let hi = b.iter().min();
    if let (Some(l), Some(h)) = (lo, hi) {
        if l >= h {
            return Err(Error::NotSeparated(format!("{l} is not below {h}")));
        }
    }
    order.between(lo, hi).ok_or_else(|| {
        Error::NoWitness(format!(
            "nothing in {} between {} and {}",
            order.name(),
            lo.map_or("-inf".into(), |l| l.to_string()),
            hi.map_or("+inf".into(), |h| h.to_string())
        ))
    })
}

/// Which order the η₀ suite runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Eta0Order {
    /// The value group Q^n itself.
    Lex,
    /// Its finite value set.
    Gamma,
    Rational,
}

impl std::str::FromStr for Eta0Order {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lex" => Ok(Eta0Order::Lex),
            "gamma" => Ok(Eta0Order::Gamma),
            "rational" | "q" => Ok(Eta0Order::Rational),
            _ => Err(Error::Parse {
                pos: 0,
                msg: format!("unknown order {s:?}, expected lex, gamma or rational"),
            }),
        }
    }
}

impl Eta0Order {
    pub fn name(&self) -> &'static str {
        match self {
            Eta0Order::Lex => "lex",
            Eta0Order::Gamma => "gamma",
            Eta0Order::Rational => "rational",
        }
    }
}

fn render<T: Display>(xs: &[T]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

/// Splits a sorted pool into a random separated pair `(A, B)`.
fn split<T: Clone + Ord, R: Rng>(rng: &mut R, mut pool: Vec<T>) -> (Vec<T>, Vec<T>) {
    pool.sort();
    pool.dedup();
    let cut = rng.gen_range(0..=pool.len());
    let (lo, hi) = pool.split_at(cut);
    let pick = |rng: &mut R, xs: &[T]| xs.iter().filter(|_| rng.gen_bool(0.6)).cloned().collect::<Vec<T>>();
    let mut a = pick(rng, lo);
    let b = pick(rng, hi);
    // keep the top of A so the cut is often tight
    if let Some(top) = lo.last() {
        if !a.contains(top) && rng.gen_bool(0.5) {
            a.push(top.clone());
        }
    }
    (a, b)
}

fn check<O: OrderOracle>(order: &O, a: &[O::Elem], b: &[O::Elem], brute: Option<&[O::Elem]>) -> Outcome {
    let input = format!("A = {}, B = {} in {}", render(a), render(b), order.name());
    match eta0_witness(a, b, order) {
        Ok(w) => {
            if a.iter().all(|x| *x < w) && b.iter().all(|x| w < *x) {
                Outcome::Pass
            } else {
                Outcome::Fail(format!("{input}: witness {w} is not between"))
            }
        }
        Err(Error::NoWitness(_)) => match brute {
            Some(all) => {
                let lo = a.iter().max();
                let hi = b.iter().min();
                match all
                    .iter()
                    .find(|p| lo.is_none_or(|l| *p > l) && hi.is_none_or(|h| *p < h))
                {
                    None => Outcome::Expected("no-witness"),
                    Some(p) => Outcome::Fail(format!("{input}: NoWitness but {p} lies between")),
                }
            }
            None => Outcome::Fail(format!("{input}: NoWitness in a dense order")),
        },
        Err(e) => Outcome::Fail(format!("{input}: {e}")),
    }
}

/// Random separated finite sets in the chosen order. Over Γ the expected
/// outcome includes `NoWitness`, each one confirmed by enumerating Γ.
pub fn eta0_suite(cfg: &SuiteConfig, order: Eta0Order) -> SuiteReport {
    let n = cfg.n.max(1);
    let note = match order {
        Eta0Order::Gamma => format!(
            "order under test: the finite value set of Q^{n}; NoWitness is the expected outcome for adjacent points and shows the ambient is not saturated"
        ),
        Eta0Order::Lex => format!("order under test: the value group Q^{n} under the lexicographic order"),
        Eta0Order::Rational => "order under test: Q".to_string(),
    };
    run_trials(&format!("eta0-{}", order.name()), cfg, vec![note], |_, rng| match order {
        Eta0Order::Lex => {
            let size = rng.gen_range(0..=8);
            let pool = (0..size).map(|_| gen::expvec(rng, n, 4)).collect();
            let (a, b) = split(rng, pool);
            check(&QnLex(n), &a, &b, None)
        }
        Eta0Order::Rational => {
            let size = rng.gen_range(0..=8);
            let pool = (0..size).map(|_| gen::rat(rng, 6)).collect();
            let (a, b) = split(rng, pool);
            check(&RationalLine, &a, &b, None)
        }
        Eta0Order::Gamma => {
            let g = FiniteGamma(n);
            let (a, b) = split(rng, g.points());
            check(&g, &a, &b, Some(&g.points()))
        }
    })
}
