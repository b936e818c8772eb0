//! Truncated multivariate formal power series over the rationals.
//!
//! A [`Series`] in `n` variables at order `N` stores the coefficients of every
//! monomial of total degree at most `N`; everything above is unknown. Values
//! are immutable and every operation returns a fresh series in canonical form:
//! no zero coefficient and no over-degree monomial is ever stored, so two
//! series are equal exactly when their term maps agree.

mod index;
mod matrix;

pub use index::MultiIndex;
pub use matrix::SeriesMatrix;

use std::collections::BTreeMap;
use std::fmt;
use std::ops;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::rational::{to_f64, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("variable count mismatch: {left} vs {right}")]
    VariableCountMismatch { left: usize, right: usize },
    #[error("variable index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },
    #[error("a variable is not representable at order 0")]
    VariableAtOrderZero,
    #[error("multi-index has {found} exponents, expected {expected}")]
    IndexLength { expected: usize, found: usize },
    #[error("coefficient of degree {degree} is beyond truncation order {order}")]
    BeyondTruncation { degree: u32, order: u32 },
    #[error("series has zero constant term and is not invertible in the power-series ring")]
    NotInvertible,
    #[error("inner series {slot} has a nonzero constant term; composition is undefined")]
    NonzeroConstantTerm { slot: usize },
    #[error("composition arity mismatch: outer has {expected} variables, got {found} inner series")]
    ArityMismatch { expected: usize, found: usize },
    #[error("derivative of an order-0 series carries no information")]
    DerivativeAtOrderZero,
    #[error("matrix is not square or its entries disagree in shape")]
    MatrixShape,
}

pub type Result<T> = std::result::Result<T, SeriesError>;

#[derive(Clone)]
pub struct Series {
    nvars: usize,
    order: u32,
    terms: BTreeMap<MultiIndex, Rational>,
}

impl Series {
    pub fn zero(nvars: usize, order: u32) -> Self {
        Series {
            nvars,
            order,
            terms: BTreeMap::new(),
        }
    }

    /// The constant `c`.
    pub fn constant(c: Rational, nvars: usize, order: u32) -> Self {
        let mut s = Series::zero(nvars, order);
        if !c.is_zero() {
            s.terms.insert(MultiIndex::zero(nvars), c);
        }
        s
    }

    pub fn one(nvars: usize, order: u32) -> Self {
        Series::constant(Rational::one(), nvars, order)
    }

    /// The variable `x_var`, with `var` counted from zero.
    pub fn variable(var: usize, nvars: usize, order: u32) -> Result<Self> {
        if var >= nvars {
            return Err(SeriesError::IndexOutOfRange { index: var, nvars });
        }
        if order == 0 {
            return Err(SeriesError::VariableAtOrderZero);
        }
        let mut s = Series::zero(nvars, order);
        s.terms.insert(MultiIndex::unit(nvars, var), Rational::one());
        Ok(s)
    }

    /// Builds a series from `(index, coefficient)` pairs. Repeated indices are
    /// summed; terms above `order` are dropped.
    pub fn from_terms<I>(nvars: usize, order: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Rational)>,
    {
        let mut map = BTreeMap::new();
        for (k, c) in terms {
            if k.nvars() != nvars {
                return Err(SeriesError::IndexLength {
                    expected: nvars,
                    found: k.nvars(),
                });
            }
            if k.degree() <= order {
                accumulate(&mut map, k, c);
            }
        }
        Ok(Series::from_map(nvars, order, map))
    }

    /// One-variable series `c_0 + c_1 x + c_2 x^2 + ...`.
    pub fn univariate<I>(order: u32, coeffs: I) -> Self
    where
        I: IntoIterator<Item = Rational>,
    {
        let terms = coeffs
            .into_iter()
            .enumerate()
            .map(|(d, c)| (MultiIndex::new(vec![d as u32]), c));
        Series::from_terms(1, order, terms).expect("univariate indices have length 1")
    }

    fn from_map(nvars: usize, order: u32, mut terms: BTreeMap<MultiIndex, Rational>) -> Self {
        terms.retain(|k, c| !c.is_zero() && k.degree() <= order);
        Series {
            nvars,
            order,
            terms,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Truncation order `N`: coefficients of total degree `<= N` are known.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Stored (nonzero) terms in graded-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&MultiIndex::zero(self.nvars))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Lowest total degree of a stored term, `None` for the zero series.
    pub fn valuation(&self) -> Option<u32> {
        self.terms.keys().next().map(MultiIndex::degree)
    }

    /// Highest total degree of a stored term, `None` for the zero series.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(MultiIndex::degree)
    }

    /// `[x^k] self`. Asking below the order always succeeds (possibly with 0);
    /// asking above it is an error since that coefficient is unknown.
    pub fn coefficient(&self, k: &MultiIndex) -> Result<Rational> {
        if k.nvars() != self.nvars {
            return Err(SeriesError::IndexLength {
                expected: self.nvars,
                found: k.nvars(),
            });
        }
        if k.degree() > self.order {
            return Err(SeriesError::BeyondTruncation {
                degree: k.degree(),
                order: self.order,
            });
        }
        Ok(self.terms.get(k).cloned().unwrap_or_else(Rational::zero))
    }

    /// Drops every term above `order`. Asking for a higher order than the
    /// current one leaves the series unchanged.
    pub fn truncate(&self, order: u32) -> Series {
        let order = order.min(self.order);
        let terms = self
            .terms
            .iter()
            .take_while(|(k, _)| k.degree() <= order)
            .map(|(k, c)| (k.clone(), c.clone()))
            .collect();
        Series {
            nvars: self.nvars,
            order,
            terms,
        }
    }

    /// Re-labels the series at a higher order, treating the unknown
    /// coefficients as zero. Only meaningful for polynomials.
    pub fn polynomial_at(&self, order: u32) -> Series {
        if order <= self.order {
            return self.truncate(order);
        }
        Series {
            nvars: self.nvars,
            order,
            terms: self.terms.clone(),
        }
    }

    /// Keeps only the monomials dividing `x^bound`. This is the projection
    /// onto the quotient by the monomials not dividing `x^bound`; it commutes
    /// with sums and products.
    pub fn restrict_to(&self, bound: &MultiIndex) -> Series {
        let order = self.order.min(bound.degree());
        let terms = self
            .terms
            .iter()
            .filter(|(k, _)| k.divides(bound))
            .map(|(k, c)| (k.clone(), c.clone()))
            .collect();
        Series {
            nvars: self.nvars,
            order,
            terms,
        }
    }

    fn check_same_nvars(&self, other: &Series) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(SeriesError::VariableCountMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Series) -> Result<Series> {
        self.check_same_nvars(other)?;
        let order = self.order.min(other.order);
        let mut map = BTreeMap::new();
        for (k, c) in self.terms.iter().chain(other.terms.iter()) {
            if k.degree() > order {
                continue;
            }
            accumulate(&mut map, k.clone(), c.clone());
        }
        Ok(Series::from_map(self.nvars, order, map))
    }

    pub fn checked_sub(&self, other: &Series) -> Result<Series> {
        self.checked_add(&other.neg())
    }

    /// Truncated Cauchy product at `min(self.order, other.order)`.
    pub fn checked_mul(&self, other: &Series) -> Result<Series> {
        self.check_same_nvars(other)?;
        let order = self.order.min(other.order);
        Ok(Series::from_map(
            self.nvars,
            order,
            mul_terms(&self.terms, &other.terms, order),
        ))
    }

    /// Product restricted to monomials dividing `x^bound`.
    pub fn checked_mul_within(&self, other: &Series, bound: &MultiIndex) -> Result<Series> {
        self.check_same_nvars(other)?;
        if bound.nvars() != self.nvars {
            return Err(SeriesError::IndexLength {
                expected: self.nvars,
                found: bound.nvars(),
            });
        }
        let order = self.order.min(other.order).min(bound.degree());
        let mut map = BTreeMap::new();
        for (ka, ca) in &self.terms {
            if !ka.divides(bound) {
                continue;
            }
            for (kb, cb) in &other.terms {
                if ka.degree() + kb.degree() > order {
                    break;
                }
                let k = ka.plus(kb);
                if k.divides(bound) {
                    accumulate(&mut map, k, ca * cb);
                }
            }
        }
        Ok(Series::from_map(self.nvars, order, map))
    }

    pub fn scale(&self, c: &Rational) -> Series {
        if c.is_zero() {
            return Series::zero(self.nvars, self.order);
        }
        Series {
            nvars: self.nvars,
            order: self.order,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn neg(&self) -> Series {
        Series {
            nvars: self.nvars,
            order: self.order,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }

    /// `x_var * self`. Multiplying by a variable raises every degree by one,
    /// so the result is known one order further than `self`.
    pub fn shift(&self, var: usize) -> Result<Series> {
        if var >= self.nvars {
            return Err(SeriesError::IndexOutOfRange {
                index: var,
                nvars: self.nvars,
            });
        }
        Ok(Series {
            nvars: self.nvars,
            order: self.order + 1,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.raised(var), c.clone()))
                .collect(),
        })
    }

    /// `d/dx_var self`. The result is only known to order `N - 1`, since its
    /// degree-`N` layer would need the unknown degree-`N+1` layer of `self`.
    pub fn partial_derivative(&self, var: usize) -> Result<Series> {
        if var >= self.nvars {
            return Err(SeriesError::IndexOutOfRange {
                index: var,
                nvars: self.nvars,
            });
        }
        if self.order == 0 {
            return Err(SeriesError::DerivativeAtOrderZero);
        }
        let mut map = BTreeMap::new();
        for (k, c) in &self.terms {
            if let Some(lower) = k.lowered(var) {
                map.insert(lower, c * Rational::from_integer(k.get(var).into()));
            }
        }
        Ok(Series::from_map(self.nvars, self.order - 1, map))
    }

    /// `self^exponent` by binary exponentiation; `self^0 = 1`.
    pub fn pow(&self, exponent: u32) -> Series {
        binary_pow(self, exponent, |a, b| {
            a.checked_mul(b).expect("operands share nvars")
        })
    }

    /// `self^exponent` restricted to monomials dividing `x^bound`.
    pub fn pow_within(&self, exponent: u32, bound: &MultiIndex) -> Result<Series> {
        if bound.nvars() != self.nvars {
            return Err(SeriesError::IndexLength {
                expected: self.nvars,
                found: bound.nvars(),
            });
        }
        let base = self.restrict_to(bound);
        Ok(binary_pow(&base, exponent, |a, b| {
            a.checked_mul_within(b, bound).expect("operands share nvars")
        }))
    }

    /// `self(inner_1, ..., inner_m)`: substitutes `inner_i` for the `i`-th
    /// variable. Every inner series must have zero constant term, which is
    /// what keeps the substitution finite at each order. The result is known
    /// to the smaller of the outer order and the inner orders.
    pub fn compose(&self, inner: &[Series]) -> Result<Series> {
        if inner.len() != self.nvars {
            return Err(SeriesError::ArityMismatch {
                expected: self.nvars,
                found: inner.len(),
            });
        }
        let Some(first) = inner.first() else {
            return Err(SeriesError::ArityMismatch {
                expected: 0,
                found: 0,
            });
        };
        let nvars = first.nvars;
        for (slot, s) in inner.iter().enumerate() {
            first.check_same_nvars(s)?;
            if !s.constant_term().is_zero() {
                return Err(SeriesError::NonzeroConstantTerm { slot });
            }
        }
        let inner_order = inner.iter().map(|s| s.order).min().unwrap_or(0);
        let order = self.order.min(inner_order);
        let outer: Vec<(&[u32], &Rational)> = self
            .terms
            .iter()
            .take_while(|(k, _)| k.degree() <= order)
            .map(|(k, c)| (k.exponents(), c))
            .collect();
        let terms = horner(&outer, 0, inner, nvars, order);
        Ok(Series::from_map(nvars, order, terms))
    }

    /// Multiplicative inverse, for series with a nonzero constant term.
    ///
    /// Built one graded layer at a time:
    /// `b_0 = 1/a_0`, `b_d = -(1/a_0) * sum_{0<j<=d} a_j b_{d-j}`.
    pub fn reciprocal(&self) -> Result<Series> {
        let a0 = self.constant_term();
        if a0.is_zero() {
            return Err(SeriesError::NotInvertible);
        }
        let inv_a0 = a0.recip();
        let neg_inv_a0 = -inv_a0.clone();
        let a_layers = self.layers();
        let mut b_layers: Vec<Vec<(MultiIndex, Rational)>> =
            vec![vec![(MultiIndex::zero(self.nvars), inv_a0)]];
        for d in 1..=self.order as usize {
            let mut acc = BTreeMap::new();
            for j in 1..=d.min(a_layers.len().saturating_sub(1)) {
                for (ka, ca) in &a_layers[j] {
                    for (kb, cb) in &b_layers[d - j] {
                        accumulate(&mut acc, ka.plus(kb), ca * cb);
                    }
                }
            }
            let layer = acc
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k, c * &neg_inv_a0))
                .collect();
            b_layers.push(layer);
        }
        let terms = b_layers.into_iter().flatten().collect();
        Ok(Series::from_map(self.nvars, self.order, terms))
    }

    /// Terms grouped by total degree, indexed `0..=order`.
    fn layers(&self) -> Vec<Vec<(MultiIndex, Rational)>> {
        let mut layers = vec![Vec::new(); self.order as usize + 1];
        for (k, c) in &self.terms {
            layers[k.degree() as usize].push((k.clone(), c.clone()));
        }
        layers
    }

    /// Value of the stored polynomial part at a float point.
    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        assert_eq!(point.len(), self.nvars, "point dimension");
        let mut acc = 0.0;
        for (k, c) in &self.terms {
            let mut term = to_f64(c);
            for (x, &e) in point.iter().zip(k.exponents()) {
                term *= x.powi(e as i32);
            }
            acc += term;
        }
        acc
    }

    /// Renames variables: `x_i` becomes `x_perm[i]`.
    pub fn permute_variables(&self, perm: &[usize]) -> Series {
        assert_eq!(perm.len(), self.nvars, "permutation length");
        Series {
            nvars: self.nvars,
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.permuted(perm), c.clone()))
                .collect(),
        }
    }

    /// True when no zero coefficient and no over-degree monomial is stored.
    pub fn is_canonical(&self) -> bool {
        self.terms
            .iter()
            .all(|(k, c)| !c.is_zero() && k.degree() <= self.order && k.nvars() == self.nvars)
    }
}

fn accumulate(map: &mut BTreeMap<MultiIndex, Rational>, k: MultiIndex, c: Rational) {
    use std::collections::btree_map::Entry;
    match map.entry(k) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
        }
    }
}

/// Cauchy product of two term maps, keeping total degree `<= order`. Both maps
/// are sorted by degree, so the inner loop stops at the first over-degree
/// partner.
fn mul_terms(
    a: &BTreeMap<MultiIndex, Rational>,
    b: &BTreeMap<MultiIndex, Rational>,
    order: u32,
) -> BTreeMap<MultiIndex, Rational> {
    let mut map = BTreeMap::new();
    for (ka, ca) in a {
        if ka.degree() > order {
            break;
        }
        let budget = order - ka.degree();
        for (kb, cb) in b {
            if kb.degree() > budget {
                break;
            }
            accumulate(&mut map, ka.plus(kb), ca * cb);
        }
    }
    map.retain(|_, c| !c.is_zero());
    map
}

fn binary_pow(base: &Series, mut exponent: u32, mul: impl Fn(&Series, &Series) -> Series) -> Series {
    let mut acc = Series::one(base.nvars, base.order);
    if exponent == 0 {
        return acc;
    }
    let mut square = base.clone();
    loop {
        if exponent & 1 == 1 {
            acc = mul(&acc, &square);
        }
        exponent >>= 1;
        if exponent == 0 {
            return acc;
        }
        square = mul(&square, &square);
    }
}

/// Horner evaluation of the outer polynomial, one variable at a time:
/// `P = sum_e inner_var^e * P_e`, folded as `(.. (P_max * g + P_{max-1}) * g ..)`.
///
/// Because every inner series has valuation at least one, a partial result
/// that still gets multiplied by `g^e` is only needed to degree `budget - e`.
fn horner(
    outer: &[(&[u32], &Rational)],
    var: usize,
    inner: &[Series],
    nvars: usize,
    budget: u32,
) -> BTreeMap<MultiIndex, Rational> {
    let mut out = BTreeMap::new();
    if outer.is_empty() {
        return out;
    }
    if var == inner.len() {
        let c: Rational = outer.iter().map(|(_, c)| (*c).clone()).sum();
        if !c.is_zero() {
            out.insert(MultiIndex::zero(nvars), c);
        }
        return out;
    }
    let mut groups: BTreeMap<u32, Vec<(&[u32], &Rational)>> = BTreeMap::new();
    for &(k, c) in outer {
        if k[var] <= budget {
            groups.entry(k[var]).or_default().push((k, c));
        }
    }
    let Some(&top) = groups.keys().next_back() else {
        return out;
    };
    let g = &inner[var].terms;
    for e in (0..=top).rev() {
        let level = budget - e;
        if !out.is_empty() {
            out = mul_terms(&out, g, level);
        }
        if let Some(group) = groups.get(&e) {
            for (k, c) in horner(group, var + 1, inner, nvars, level) {
                accumulate(&mut out, k, c);
            }
        }
    }
    out.retain(|k, c| !c.is_zero() && k.degree() <= budget);
    out
}

impl PartialEq for Series {
    /// Same variable count and identical terms once both sides are cut to the
    /// smaller order.
    fn eq(&self, other: &Series) -> bool {
        if self.nvars != other.nvars {
            return false;
        }
        let order = self.order.min(other.order);
        let a = self.terms.iter().take_while(|(k, _)| k.degree() <= order);
        let b = other.terms.iter().take_while(|(k, _)| k.degree() <= order);
        a.eq(b)
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series[n={}, N={}](", self.nvars, self.order)?;
        let mut first = true;
        for (k, c) in &self.terms {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "{k}: {c}")?;
        }
        write!(f, ")")
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl ops::$trait<&Series> for &Series {
            type Output = Series;

            /// Panics on a variable-count mismatch; use the `checked_` form to
            /// get an error instead.
            fn $method(self, rhs: &Series) -> Series {
                self.$checked(rhs).expect("variable count mismatch")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl ops::Neg for &Series {
    type Output = Series;

    fn neg(self) -> Series {
        Series::neg(self)
    }
}
