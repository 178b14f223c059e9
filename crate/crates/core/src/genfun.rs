//! Generating functions of the excursion codes.
//!
//! An excursion of class `n` starts with `α⁻(n, m)`, returns to ρ-balance
//! exactly at its last symbol and stays strictly positive at every even
//! checkpoint before that. Splitting off the outer bracket, the inside is a
//! (possibly empty) chain of excursions, entered through `A⁻`, linked by `A`
//! and left through `A⁺`, which gives the fixed-point system
//!
//! ```text
//! g_n = z² · ( M_n + (A⁻ (1 − G A)⁻¹ G A⁺)_{n,n} ),   G = diag(g_0, …, g_{N-1})
//! ```
//!
//! solved here degree by degree. [`count_code_words`] is the brute-force
//! enumeration it is checked against.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::kernel::{Adjacency, SignedSymbol, SubshiftSpec};
use crate::matrix::IntMatrix;
use crate::series::{rat, RationalSeries, SeriesError, SeriesMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenFunError {
    #[error("truncation order must be even and at least 2, got {0}")]
    InvalidOrder(usize),
    #[error("invalid constant parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Excursion generating functions `g_n` and the diagonal matrix `G`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GenFunSolution {
    pub g: Vec<RationalSeries>,
    pub big_g: SeriesMatrix,
}

impl GenFunSolution {
    fn new(g: Vec<RationalSeries>) -> Self {
        let big_g = SeriesMatrix::diagonal(&g);
        GenFunSolution { g, big_g }
    }

    pub fn order(&self) -> usize {
        self.big_g.order()
    }
}

/// Where the `A` transitions between consecutive inner excursions enter the system.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum SystemForm {
    /// `A⁻ (1 − G A)⁻¹ G A⁺`, from the first-return decomposition.
    #[default]
    ChainWithTransitions,
    /// `A⁻ (1 − G)⁻¹ G A⁺`, ignoring the links between inner excursions. Kept for comparison only.
    WithoutTransitions,
}

pub fn solve_genfun(spec: &SubshiftSpec, order: usize) -> Result<GenFunSolution, GenFunError> {
    solve_genfun_with(spec, order, SystemForm::default())
}

pub fn solve_genfun_with(spec: &SubshiftSpec, order: usize, form: SystemForm) -> Result<GenFunSolution, GenFunError> {
    check_order(order)?;
    let n = spec.classes();
    let mut g = vec![RationalSeries::zero(order); n];
    // Degree d of the right side only sees degrees < d - 1 of g, so each
    // pass settles two more coefficients; earlier passes run at lower order.
    for step in 1..=order / 2 {
        let cur = 2 * step;
        let trunc: Vec<RationalSeries> = g.iter().map(|s| s.truncate(cur)).collect();
        let rhs = fixed_point_map(spec, &trunc, form)?;
        for (gk, rk) in g.iter_mut().zip(&rhs) {
            for d in 0..=cur {
                gk.set_coeff(d, rk.coeff(d).clone());
            }
        }
    }
    Ok(GenFunSolution::new(g))
}

/// Right side of the system evaluated at `g`; its order is that of `g`.
pub fn fixed_point_map(spec: &SubshiftSpec, g: &[RationalSeries], form: SystemForm) -> Result<Vec<RationalSeries>, GenFunError> {
    let n = spec.classes();
    let big_g = SeriesMatrix::diagonal(g);
    let order = big_g.order();
    let id = SeriesMatrix::identity(n, order);
    let inner = match form {
        SystemForm::ChainWithTransitions => id.sub(&big_g.mul_int_right(spec.a())),
        SystemForm::WithoutTransitions => id.sub(&big_g),
    };
    let chain = inner.mat_inverse()?.mul(&big_g);
    let y = chain.mul_int_left(spec.a_minus()).mul_int_right(spec.a_plus());
    Ok((0..n)
        .map(|k| {
            let inside = &RationalSeries::constant(rat(spec.copies()[k] as i64), order) + y.get(k, k);
            inside.shift(2)
        })
        .collect())
}

fn check_order(order: usize) -> Result<(), GenFunError> {
    if order < 2 || order % 2 != 0 {
        return Err(GenFunError::InvalidOrder(order));
    }
    Ok(())
}

/// Number of excursions of the given even length whose first symbol is `α⁻(class, 1)`.
pub fn count_code_words(spec: &SubshiftSpec, class: usize, length: usize) -> u128 {
    if length < 2 || length % 2 != 0 || class >= spec.classes() {
        return 0;
    }
    let first = SignedSymbol::minus(class, 1);
    let mut stack = vec![class];
    let alphabet = spec.alphabet();
    let mut counter = ExcursionCounter { spec, alphabet: &alphabet, length };
    counter.extend(first, 1, &mut stack)
}

struct ExcursionCounter<'a> {
    spec: &'a SubshiftSpec,
    alphabet: &'a [SignedSymbol],
    length: usize,
}

impl ExcursionCounter<'_> {
    /// `stack` holds the classes of the open brackets; its depth is the ρ-sum.
    fn extend(&mut self, last: SignedSymbol, pos: usize, stack: &mut Vec<usize>) -> u128 {
        if pos == self.length {
            return u128::from(stack.is_empty());
        }
        if stack.is_empty() || stack.len() > self.length - pos {
            return 0;
        }
        let mut total = 0;
        for &s in self.alphabet {
            if !self.spec.allows_copy(Adjacency::of(&last, &s), last.class, s.class, s.copy) {
                continue;
            }
            if s.is_minus() {
                stack.push(s.class);
                total += self.extend(s, pos + 1, stack);
                stack.pop();
            } else {
                let top = *stack.last().expect("nonempty");
                if top != s.class {
                    continue;
                }
                stack.pop();
                // balance may only return to zero at the very end
                let closes_early = stack.is_empty() && pos + 1 < self.length;
                if !closes_early {
                    total += self.extend(s, pos + 1, stack);
                }
                stack.push(top);
            }
        }
        total
    }
}

/// Series of excursion counts for `class`, built by enumeration up to `order`.
pub fn enumerated_series(spec: &SubshiftSpec, class: usize, order: usize) -> RationalSeries {
    let mut s = RationalSeries::zero(order);
    for len in (2..=order).step_by(2) {
        let c = count_code_words(spec, class, len);
        s.set_coeff(len, BigInt::from(c).into());
    }
    s
}

/// Excursion coefficients from the composition sum over chains of inner excursions.
///
/// Entry `[n][h]` is the number of excursions of class `n` and length `2h`
/// (`h = 0` gives 0). Independent of the series solver: it sums, over every
/// chain of classes `δ_1 … δ_q` and every composition `s_1 + … + s_q = h − 1`,
/// the products `A⁻(n,δ_1) g_{δ_1}(2s_1) A(δ_1,δ_2) ⋯ g_{δ_q}(2s_q) A⁺(δ_q,n)`.
pub fn composition_recurrence(spec: &SubshiftSpec, max_half_length: usize) -> Vec<Vec<BigInt>> {
    let n = spec.classes();
    let mut g = vec![vec![BigInt::zero(); max_half_length + 1]; n];
    for h in 1..=max_half_length {
        for class in 0..n {
            g[class][h] = if h == 1 {
                BigInt::from(spec.copies()[class])
            } else {
                chain_sum(spec, &g, class, None, h - 1)
            };
        }
    }
    g
}

fn chain_sum(spec: &SubshiftSpec, g: &[Vec<BigInt>], outer: usize, prev: Option<usize>, remaining: usize) -> BigInt {
    let entry = |m: &IntMatrix, i: usize, j: usize| BigInt::from(m.get(i, j));
    if remaining == 0 {
        return match prev {
            Some(p) => entry(spec.a_plus(), p, outer),
            None => BigInt::zero(),
        };
    }
    let mut total = BigInt::zero();
    for next in 0..spec.classes() {
        let link = match prev {
            None => entry(spec.a_minus(), outer, next),
            Some(p) => entry(spec.a(), p, next),
        };
        if link.is_zero() {
            continue;
        }
        for s in 1..=remaining {
            let inner = &g[next][s];
            if inner.is_zero() {
                continue;
            }
            let rest = chain_sum(spec, g, outer, Some(next), remaining - s);
            total += &link * inner * rest;
        }
    }
    total
}

/// Parameters of the constant case: `M_n = M`, and all entries of `A⁻`, `A`,
/// `A⁺` equal to `K⁻`, `K`, `K⁺`, with `N` classes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ConstantParams {
    pub m: i64,
    pub k_minus: i64,
    pub k: i64,
    pub k_plus: i64,
    pub n: i64,
}

impl ConstantParams {
    pub fn validate(&self) -> Result<(), GenFunError> {
        if self.m < 1 || self.n < 1 {
            return Err(GenFunError::InvalidParams(format!("M = {} and N = {} must be positive", self.m, self.n)));
        }
        for (name, v) in [("K-", self.k_minus), ("K", self.k), ("K+", self.k_plus)] {
            if v < 0 || v > self.m {
                return Err(GenFunError::InvalidParams(format!("{name} = {v} must lie in [0, M = {}]", self.m)));
            }
        }
        Ok(())
    }

    pub fn to_spec(&self) -> Result<SubshiftSpec, GenFunError> {
        self.validate()?;
        let n = self.n as usize;
        SubshiftSpec::new(
            vec![self.m as usize; n],
            IntMatrix::constant(n, self.k_minus),
            IntMatrix::constant(n, self.k),
            IntMatrix::constant(n, self.k_plus),
        )
        .map_err(|e| GenFunError::InvalidParams(e.to_string()))
    }

    /// `(M K − K⁻ K⁺) N`, the coefficient of `z²` in the linear term.
    fn middle(&self) -> i64 {
        (self.m * self.k - self.k_minus * self.k_plus) * self.n
    }
}

/// Common generating function of the constant case in closed form.
///
/// For `K > 0` this is `[1 + (MK − K⁻K⁺)Nz² − √((1 + (MK − K⁻K⁺)Nz²)² − 4MKNz²)] / (2KN)`.
/// For `K = 0` the quadratic degenerates to a linear equation with solution
/// `M z² / (1 − K⁻K⁺N z²)`.
pub fn constant_genfun(p: &ConstantParams, order: usize) -> Result<RationalSeries, GenFunError> {
    p.validate()?;
    let lin = RationalSeries::from_i64s(&[1, 0, p.middle()], order);
    if p.k == 0 {
        let num = RationalSeries::monomial(rat(p.m), 2, order);
        let den = RationalSeries::from_i64s(&[1, 0, -p.k_minus * p.k_plus * p.n], order);
        return Ok(num.div(&den)?);
    }
    let disc = &(&lin * &lin) - &RationalSeries::monomial(rat(4 * p.m * p.k * p.n), 2, order);
    let root = disc.sqrt()?;
    let scale = crate::series::rat_frac(1, 2 * p.k * p.n);
    Ok((&lin - &root).scale(&scale))
}

/// `N K g² − (1 + (MK − K⁻K⁺)N z²) g + M z²`; vanishes at the constant-case solution.
pub fn constant_residual(p: &ConstantParams, g: &RationalSeries) -> RationalSeries {
    let order = g.order();
    let lin = RationalSeries::from_i64s(&[1, 0, p.middle()], order);
    let quad = (g * g).scale_int(p.n * p.k);
    let mz2 = RationalSeries::monomial(rat(p.m), 2, order);
    &(&quad - &(&lin * g)) + &mz2
}
