//! Zeta functions: the determinant formula for circular Markov codes, the
//! multiplier-stratified factors built from the excursion generating
//! functions, and the periodic-point census that serves as their oracle.
//!
//! Periodic points are counted as sequences, `p_n = #{x : Sⁿx = x}`, and
//! `ζ(z) = exp Σ p_n zⁿ / n`.

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::genfun::{solve_genfun, GenFunError};
use crate::kernel::{is_periodic_word, MultiplierClass, SignedSymbol, SubshiftSpec};
use crate::series::{RationalSeries, SeriesError, SeriesMatrix};

/// Default bound on the number of search-tree nodes a census may visit.
pub const DEFAULT_CENSUS_BUDGET: u64 = 1_000_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZetaError {
    #[error("census exceeded the budget of {limit} search nodes; lower --nmax or raise the limit")]
    BudgetExceeded { limit: u64 },
    #[error("transfer matrix must have zero constant term")]
    NonZeroConstantTerm,
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    GenFun(#[from] GenFunError),
}

/// Zeta functions of the neutral points, the points with non-positive and
/// with non-negative multiplier, and of all periodic points.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ZetaParts {
    pub neutral: RationalSeries,
    pub non_positive: RationalSeries,
    pub non_negative: RationalSeries,
    pub total: RationalSeries,
}

impl ZetaParts {
    pub fn order(&self) -> usize {
        self.total.order()
    }

    pub fn truncate(&self, order: usize) -> Self {
        ZetaParts {
            neutral: self.neutral.truncate(order),
            non_positive: self.non_positive.truncate(order),
            non_negative: self.non_negative.truncate(order),
            total: self.total.truncate(order),
        }
    }

    /// `total · neutral − non_positive · non_negative`, zero when the parts are consistent.
    pub fn intersection_defect(&self) -> RationalSeries {
        &(&self.total * &self.neutral) - &(&self.non_positive * &self.non_negative)
    }
}

/// Order in which `G` and `A` are multiplied inside the one-sided factors.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum ZetaVariant {
    /// `det(1 − zA⁻ − GA)` and `det(1 − zA⁺ − AG)`.
    #[default]
    Derived,
    /// `det(1 − zA⁻ − AG)` and `det(1 − zA⁺ − GA)`.
    Swapped,
    /// `det(1 − zA⁻ − G)` and `det(1 − zA⁺ − G)`, without the transitions between excursions.
    WithoutTransitions,
}

impl std::str::FromStr for ZetaVariant {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "derived" | "ga-ag" => Ok(ZetaVariant::Derived),
            "swapped" | "ag-ga" => Ok(ZetaVariant::Swapped),
            "bare" | "without-transitions" => Ok(ZetaVariant::WithoutTransitions),
            other => Err(format!("unknown zeta variant {other:?} (expected derived, swapped or bare)")),
        }
    }
}

/// `det(1 − H)⁻¹` for the transfer matrix `H` of a circular Markov code.
pub fn markov_zeta(h: &SeriesMatrix) -> Result<RationalSeries, ZetaError> {
    if !h.constant_term_is_zero() {
        return Err(ZetaError::NonZeroConstantTerm);
    }
    let one = SeriesMatrix::identity(h.dim(), h.order());
    Ok(one.sub(h).det().inverse()?)
}

pub fn zeta_parts(spec: &SubshiftSpec, order: usize) -> Result<ZetaParts, ZetaError> {
    zeta_parts_with(spec, order, ZetaVariant::default())
}

pub fn zeta_parts_with(spec: &SubshiftSpec, order: usize, variant: ZetaVariant) -> Result<ZetaParts, ZetaError> {
    let even = order.max(2).next_multiple_of(2);
    let sol = solve_genfun(spec, even)?;
    let g = sol.big_g.truncate(order);
    let ga = g.mul_int_right(spec.a());
    let ag = g.mul_int_left(spec.a());
    let za_minus = SeriesMatrix::from_int_monomial(spec.a_minus(), 1, order);
    let za_plus = SeriesMatrix::from_int_monomial(spec.a_plus(), 1, order);
    let (minus_link, plus_link) = match variant {
        ZetaVariant::Derived => (ga.clone(), ag),
        ZetaVariant::Swapped => (ag, ga.clone()),
        ZetaVariant::WithoutTransitions => (g.clone(), g.clone()),
    };
    let neutral_det = SeriesMatrix::identity(spec.classes(), order).sub(&ga).det();
    let neutral = neutral_det.inverse()?;
    let non_positive = markov_zeta(&za_minus.add(&minus_link))?;
    let non_negative = markov_zeta(&za_plus.add(&plus_link))?;
    let total = &(&non_positive * &non_negative) * &neutral_det;
    Ok(ZetaParts { neutral, non_positive, non_negative, total })
}

/// Periodic-point counts `p_n` for `1 ≤ n ≤ n_max`, split by multiplier.
///
/// Neutral points are included in both one-sided counts, so
/// `total = non_positive + non_negative − neutral`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PeriodicCensus {
    pub n_max: usize,
    /// Entry `n - 1` holds the count for period `n`.
    pub total: Vec<u64>,
    pub neutral: Vec<u64>,
    pub non_positive: Vec<u64>,
    pub non_negative: Vec<u64>,
}

impl PeriodicCensus {
    fn empty(n_max: usize) -> Self {
        PeriodicCensus {
            n_max,
            total: vec![0; n_max],
            neutral: vec![0; n_max],
            non_positive: vec![0; n_max],
            non_negative: vec![0; n_max],
        }
    }

    fn record(&mut self, n: usize, class: MultiplierClass) {
        let i = n - 1;
        self.total[i] += 1;
        match class {
            MultiplierClass::Neutral => {
                self.neutral[i] += 1;
                self.non_positive[i] += 1;
                self.non_negative[i] += 1;
            }
            MultiplierClass::NonPositive => self.non_positive[i] += 1,
            MultiplierClass::NonNegative => self.non_negative[i] += 1,
            MultiplierClass::Zero | MultiplierClass::Mixed => unreachable!("not a periodic point"),
        }
    }

    /// Exchanges the two one-sided counts (what time reversal does).
    pub fn with_sides_swapped(&self) -> Self {
        PeriodicCensus {
            non_positive: self.non_negative.clone(),
            non_negative: self.non_positive.clone(),
            ..self.clone()
        }
    }

    pub fn to_zeta(&self) -> ZetaParts {
        let z = |c: &[u64]| RationalSeries::exp_from_counts(&c.iter().map(|&v| BigInt::from(v)).collect::<Vec<_>>(), self.n_max);
        ZetaParts {
            neutral: z(&self.neutral),
            non_positive: z(&self.non_positive),
            non_negative: z(&self.non_negative),
            total: z(&self.total),
        }
    }
}

pub fn periodic_census(spec: &SubshiftSpec, n_max: usize) -> Result<PeriodicCensus, ZetaError> {
    periodic_census_with_budget(spec, n_max, DEFAULT_CENSUS_BUDGET)
}

/// Exhaustive census of periodic points by depth-first search over words.
///
/// A word `w` gives a point `w^∞` iff all cyclic adjacencies avoid the
/// excluded words and `w·w` has nonzero product; the sign of the ρ-sum of `w`
/// then decides the multiplier class.
pub fn periodic_census_with_budget(spec: &SubshiftSpec, n_max: usize, budget: u64) -> Result<PeriodicCensus, ZetaError> {
    let alphabet = spec.alphabet();
    let k = alphabet.len();
    let allow: Vec<bool> = alphabet
        .iter()
        .flat_map(|a| alphabet.iter().map(move |b| (a, b)))
        .map(|(a, b)| spec.allows_pair(a, b))
        .collect();
    let mut search = CensusSearch {
        alphabet: &alphabet,
        allow: &allow,
        k,
        n_max,
        budget,
        nodes: 0,
        open: Vec::with_capacity(n_max),
        closed: Vec::with_capacity(n_max),
        census: PeriodicCensus::empty(n_max),
    };
    for first in 0..k {
        search.push(first);
        search.visit(first, first, 1)?;
        search.pop(first);
    }
    Ok(search.census)
}

struct CensusSearch<'a> {
    alphabet: &'a [SignedSymbol],
    allow: &'a [bool],
    k: usize,
    n_max: usize,
    budget: u64,
    nodes: u64,
    /// Classes of unmatched openers, oldest first.
    open: Vec<usize>,
    /// Classes of unmatched closers, oldest first.
    closed: Vec<usize>,
    census: PeriodicCensus,
}

enum Step {
    Opened,
    Matched(usize),
    Unmatched,
}

impl CensusSearch<'_> {
    fn push(&mut self, idx: usize) -> Option<Step> {
        let s = self.alphabet[idx];
        if s.is_minus() {
            self.open.push(s.class);
            return Some(Step::Opened);
        }
        match self.open.last() {
            Some(&c) if c == s.class => {
                self.open.pop();
                Some(Step::Matched(c))
            }
            Some(_) => None,
            None => {
                self.closed.push(s.class);
                Some(Step::Unmatched)
            }
        }
    }

    fn undo(&mut self, step: Step) {
        match step {
            Step::Opened => {
                self.open.pop();
            }
            Step::Matched(c) => self.open.push(c),
            Step::Unmatched => {
                self.closed.pop();
            }
        }
    }

    fn pop(&mut self, first: usize) {
        // undo of the root symbol, which can never have been a match
        if self.alphabet[first].is_minus() {
            self.open.pop();
        } else {
            self.closed.pop();
        }
    }

    fn visit(&mut self, first: usize, last: usize, depth: usize) -> Result<(), ZetaError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(ZetaError::BudgetExceeded { limit: self.budget });
        }
        if self.allow[last * self.k + first] {
            if let Some(class) = self.square_class() {
                self.census.record(depth, class);
            }
        }
        if depth == self.n_max {
            return Ok(());
        }
        for next in 0..self.k {
            if !self.allow[last * self.k + next] {
                continue;
            }
            if let Some(step) = self.push(next) {
                let res = self.visit(first, next, depth + 1);
                self.undo(step);
                res?;
            }
        }
        Ok(())
    }

    /// Multiplier class of the point, if `w·w` has nonzero product.
    fn square_class(&self) -> Option<MultiplierClass> {
        let (open, closed) = (&self.open, &self.closed);
        let pairs = open.len().min(closed.len());
        let consistent = (0..pairs).all(|i| open[open.len() - 1 - i] == closed[i]);
        if !consistent {
            return None;
        }
        Some(match open.len().cmp(&closed.len()) {
            std::cmp::Ordering::Equal => MultiplierClass::Neutral,
            std::cmp::Ordering::Greater => MultiplierClass::NonPositive,
            std::cmp::Ordering::Less => MultiplierClass::NonNegative,
        })
    }
}

/// Census by testing every word with the rotation criterion. Exponential; for cross-checks.
pub fn census_by_rotation(spec: &SubshiftSpec, n_max: usize) -> PeriodicCensus {
    let alphabet = spec.alphabet();
    let mut census = PeriodicCensus::empty(n_max);
    for n in 1..=n_max {
        let mut idx = vec![0usize; n];
        loop {
            let word: Vec<SignedSymbol> = idx.iter().map(|&i| alphabet[i]).collect();
            if let Some(class) = is_periodic_word(spec, &word) {
                census.record(n, class);
            }
            // odometer increment
            let mut pos = n;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < alphabet.len() {
                    break;
                }
                idx[pos] = 0;
                if pos == 0 {
                    pos = usize::MAX;
                    break;
                }
            }
            if pos == usize::MAX {
                break;
            }
        }
    }
    census
}

/// Zeta functions computed from the census.
pub fn zeta_oracle(spec: &SubshiftSpec, n_max: usize) -> Result<ZetaParts, ZetaError> {
    Ok(periodic_census(spec, n_max)?.to_zeta())
}
