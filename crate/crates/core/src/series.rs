//! Truncated formal power series in `z` with exact rational coefficients,
//! and small square matrices of them.
//!
//! A series of order `K` knows the coefficients of `z^0 ..= z^K`. Binary
//! operations truncate to the smaller order of the two operands, so every
//! coefficient a result reports is exact.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::matrix::IntMatrix;

pub type Rational = BigRational;

/// Truncation order used when the caller does not pick one.
pub const DEFAULT_ORDER: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("series has zero constant term and cannot be inverted")]
    ZeroConstantTerm,
    #[error("{op} requires constant term 1, found {found}")]
    ConstantTermNotOne { op: &'static str, found: String },
    #[error("exp requires zero constant term")]
    NonZeroConstantTerm,
    #[error("constant-term matrix is singular")]
    SingularConstantTerm,
    #[error("matrix has nonzero constant term; code words of length zero are not allowed")]
    NonZeroConstantMatrix,
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalSeries {
    coeffs: Vec<Rational>,
}

impl RationalSeries {
    pub fn zero(order: usize) -> Self {
        RationalSeries { coeffs: vec![Rational::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c · z^degree`; vanishes entirely when `degree > order`.
    pub fn monomial(c: Rational, degree: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if degree <= order {
            s.coeffs[degree] = c;
        }
        s
    }

    /// The series `z` itself.
    pub fn z(order: usize) -> Self {
        Self::monomial(Rational::one(), 1, order)
    }

    /// Polynomial with integer coefficients, padded or cut to `order`.
    pub fn from_i64s(coeffs: &[i64], order: usize) -> Self {
        let mut s = Self::zero(order);
        for (c, v) in s.coeffs.iter_mut().zip(coeffs) {
            *c = rat(*v);
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least the constant coefficient");
        RationalSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, degree: usize) -> &Rational {
        assert!(degree <= self.order(), "coefficient z^{degree} beyond truncation order {}", self.order());
        &self.coeffs[degree]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, degree: usize, value: Rational) {
        self.coeffs[degree] = value;
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot raise truncation order from {} to {order}", self.order());
        RationalSeries { coeffs: self.coeffs[..=order].to_vec() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Degree of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Coefficients as integers, if they all are.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }

    /// Coefficients rendered as `"p/q"` (or `"p"` for integers).
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RationalSeries { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn scale_int(&self, c: i64) -> Self {
        if c == 1 {
            return self.clone();
        }
        let c = BigInt::from(c);
        RationalSeries { coeffs: self.coeffs.iter().map(|a| a * &c).collect() }
    }

    /// Multiplies by `z^k`, keeping the order.
    pub fn shift(&self, k: usize) -> Self {
        let mut s = Self::zero(self.order());
        for d in 0..=self.order().saturating_sub(k) {
            if d + k <= self.order() {
                s.coeffs[d + k] = self.coeffs[d].clone();
            }
        }
        s
    }

    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        let coeffs = (1..=self.order()).map(|d| &self.coeffs[d] * BigInt::from(d)).collect();
        RationalSeries { coeffs }
    }

    /// Reciprocal of a unit series.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(SeriesError::ZeroConstantTerm);
        }
        let inv0 = a0.recip();
        let order = self.order();
        let mut b: Vec<Rational> = Vec::with_capacity(order + 1);
        b.push(inv0.clone());
        for k in 1..=order {
            let mut acc = Rational::zero();
            for j in 1..=k {
                let aj = &self.coeffs[j];
                if aj.is_zero() || b[k - j].is_zero() {
                    continue;
                }
                acc += aj * &b[k - j];
            }
            b.push(-(acc * &inv0));
        }
        Ok(RationalSeries { coeffs: b })
    }

    pub fn div(&self, other: &Self) -> Result<Self, SeriesError> {
        Ok(self * &other.inverse()?)
    }

    /// Logarithm of a series with constant term 1.
    pub fn log(&self) -> Result<Self, SeriesError> {
        self.expect_unit_constant("log")?;
        let order = self.order();
        if order == 0 {
            return Ok(Self::zero(0));
        }
        let q = &self.derivative() * &self.truncate(order - 1).inverse()?;
        let mut coeffs = vec![Rational::zero(); order + 1];
        for k in 1..=order {
            coeffs[k] = &q.coeffs[k - 1] / BigInt::from(k);
        }
        Ok(RationalSeries { coeffs })
    }

    /// Exponential of a series with zero constant term.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::NonZeroConstantTerm);
        }
        let order = self.order();
        let mut e = vec![Rational::zero(); order + 1];
        e[0] = Rational::one();
        for k in 1..=order {
            let mut acc = Rational::zero();
            for j in 1..=k {
                let lj = &self.coeffs[j];
                if lj.is_zero() || e[k - j].is_zero() {
                    continue;
                }
                acc += lj * &e[k - j] * BigInt::from(j);
            }
            e[k] = acc / BigInt::from(k);
        }
        Ok(RationalSeries { coeffs: e })
    }

    /// `exp Σ_{n ≥ 1} p_n z^n / n`, with `counts[n - 1] = p_n`.
    ///
    /// The order is `min(order, counts.len())`: coefficients past the last
    /// supplied count are unknown.
    pub fn exp_from_counts<T>(counts: &[T], order: usize) -> Self
    where
        T: Clone + Into<BigInt>,
    {
        let order = order.min(counts.len());
        let mut l = Self::zero(order);
        for n in 1..=order {
            l.coeffs[n] = Rational::new(counts[n - 1].clone().into(), BigInt::from(n));
        }
        l.exp().expect("constant term is zero by construction")
    }

    /// Square root of a series with constant term 1 (the branch with constant term 1).
    pub fn sqrt(&self) -> Result<Self, SeriesError> {
        self.expect_unit_constant("sqrt")?;
        let order = self.order();
        let mut r = vec![Rational::zero(); order + 1];
        r[0] = Rational::one();
        let half = rat_frac(1, 2);
        for k in 1..=order {
            let mut acc = self.coeffs[k].clone();
            for j in 1..k {
                if r[j].is_zero() || r[k - j].is_zero() {
                    continue;
                }
                acc -= &r[j] * &r[k - j];
            }
            r[k] = acc * &half;
        }
        Ok(RationalSeries { coeffs: r })
    }

    /// Partial sum `Σ_{d ≤ order} c_d z0^d` in floating point.
    pub fn eval_f64(&self, z0: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * z0 + c.to_f64().unwrap_or(f64::NAN))
    }

    fn expect_unit_constant(&self, op: &'static str) -> Result<(), SeriesError> {
        if self.coeffs[0].is_one() {
            Ok(())
        } else {
            Err(SeriesError::ConstantTermNotOne { op, found: self.coeffs[0].to_string() })
        }
    }
}

impl fmt::Debug for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match d {
                0 => write!(f, "{mag}")?,
                _ if mag.is_one() => {}
                _ => write!(f, "{mag}*")?,
            }
            match d {
                0 => {}
                1 => write!(f, "z")?,
                _ => write!(f, "z^{d}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(z^{})", self.order() + 1)
    }
}

impl<'a> Add<&'a RationalSeries> for &'a RationalSeries {
    type Output = RationalSeries;
    fn add(self, rhs: &RationalSeries) -> RationalSeries {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order).map(|d| &self.coeffs[d] + &rhs.coeffs[d]).collect();
        RationalSeries { coeffs }
    }
}

impl<'a> Sub<&'a RationalSeries> for &'a RationalSeries {
    type Output = RationalSeries;
    fn sub(self, rhs: &RationalSeries) -> RationalSeries {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order).map(|d| &self.coeffs[d] - &rhs.coeffs[d]).collect();
        RationalSeries { coeffs }
    }
}

impl<'a> Mul<&'a RationalSeries> for &'a RationalSeries {
    type Output = RationalSeries;
    fn mul(self, rhs: &RationalSeries) -> RationalSeries {
        let order = self.order().min(rhs.order());
        let mut out = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs[..=order].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=order - i].iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] += a * b;
            }
        }
        RationalSeries { coeffs: out }
    }
}

impl Neg for &RationalSeries {
    type Output = RationalSeries;
    fn neg(self) -> RationalSeries {
        RationalSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RationalSeries> for RationalSeries {
            type Output = RationalSeries;
            fn $m(self, rhs: RationalSeries) -> RationalSeries {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Square matrix of series with a common truncation order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SeriesMatrix {
    dim: usize,
    entries: Vec<RationalSeries>,
}

impl SeriesMatrix {
    pub fn zero(dim: usize, order: usize) -> Self {
        SeriesMatrix { dim, entries: vec![RationalSeries::zero(order); dim * dim] }
    }

    pub fn identity(dim: usize, order: usize) -> Self {
        let mut m = Self::zero(dim, order);
        for i in 0..dim {
            m.set(i, i, RationalSeries::one(order));
        }
        m
    }

    /// Constant matrix from integer entries.
    pub fn from_int(a: &IntMatrix, order: usize) -> Self {
        Self::from_int_monomial(a, 0, order)
    }

    /// `z^degree · a`.
    pub fn from_int_monomial(a: &IntMatrix, degree: usize, order: usize) -> Self {
        let dim = a.dim();
        let mut m = Self::zero(dim, order);
        for i in 0..dim {
            for j in 0..dim {
                let v = a.get(i, j);
                if v != 0 {
                    m.set(i, j, RationalSeries::monomial(rat(v), degree, order));
                }
            }
        }
        m
    }

    pub fn diagonal(diag: &[RationalSeries]) -> Self {
        let order = diag.iter().map(RationalSeries::order).min().unwrap_or(0);
        let mut m = Self::zero(diag.len(), order);
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.truncate(order));
        }
        m
    }

    pub fn from_entries(dim: usize, entries: Vec<RationalSeries>) -> Self {
        assert_eq!(entries.len(), dim * dim);
        let order = entries.iter().map(RationalSeries::order).min().unwrap_or(0);
        let entries = entries.iter().map(|e| e.truncate(order)).collect();
        SeriesMatrix { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.entries.first().map(RationalSeries::order).unwrap_or(0)
    }

    pub fn get(&self, i: usize, j: usize) -> &RationalSeries {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, s: RationalSeries) {
        self.entries[i * self.dim + j] = s;
    }

    pub fn truncate(&self, order: usize) -> Self {
        SeriesMatrix { dim: self.dim, entries: self.entries.iter().map(|e| e.truncate(order)).collect() }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.dim, self.order());
        for i in 0..self.dim {
            for j in 0..self.dim {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let order = self.order().min(other.order());
        let mut out = Self::zero(n, order);
        for i in 0..n {
            for j in 0..n {
                let mut acc = RationalSeries::zero(order);
                for k in 0..n {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = &acc + &(a * b);
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// Product with an integer matrix on the right, `self · a`.
    pub fn mul_int_right(&self, a: &IntMatrix) -> Self {
        self.mul(&Self::from_int(a, self.order()))
    }

    /// Product with an integer matrix on the left, `a · self`.
    pub fn mul_int_left(&self, a: &IntMatrix) -> Self {
        Self::from_int(a, self.order()).mul(self)
    }

    /// Determinant by cofactor expansion along the first row.
    pub fn det(&self) -> RationalSeries {
        let idx: Vec<usize> = (0..self.dim).collect();
        self.minor_det(&idx, &idx)
    }

    fn minor_det(&self, rows: &[usize], cols: &[usize]) -> RationalSeries {
        let order = self.order();
        match rows.len() {
            0 => RationalSeries::one(order),
            1 => self.get(rows[0], cols[0]).clone(),
            2 => {
                let ad = self.get(rows[0], cols[0]) * self.get(rows[1], cols[1]);
                let bc = self.get(rows[0], cols[1]) * self.get(rows[1], cols[0]);
                &ad - &bc
            }
            _ => {
                let mut acc = RationalSeries::zero(order);
                let r0 = rows[0];
                for (k, &c) in cols.iter().enumerate() {
                    let entry = self.get(r0, c);
                    if entry.is_zero() {
                        continue;
                    }
                    let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                    let term = entry * &self.minor_det(&rows[1..], &sub_cols);
                    acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
                }
                acc
            }
        }
    }

    /// Inverse via adjugate over determinant.
    pub fn mat_inverse(&self) -> Result<Self, SeriesError> {
        let n = self.dim;
        let det_inv = self.det().inverse().map_err(|_| SeriesError::SingularConstantTerm)?;
        let mut out = Self::zero(n, self.order());
        for i in 0..n {
            for j in 0..n {
                let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
                let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
                let cof = self.minor_det(&rows, &cols);
                let cof = if (i + j) % 2 == 0 { cof } else { -&cof };
                out.set(i, j, &cof * &det_inv);
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(RationalSeries::is_zero)
    }

    pub fn constant_term_is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.coeff(0).is_zero())
    }

    fn zip(&self, other: &Self, f: impl Fn(&RationalSeries, &RationalSeries) -> RationalSeries) -> Self {
        assert_eq!(self.dim, other.dim);
        SeriesMatrix { dim: self.dim, entries: self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect() }
    }
}
