//! Multivariate Lagrange inversion in Good's form.
//!
//! For power series `f_1, ..., f_n` the system `g_i = x_i f_i(g_1, ..., g_n)`
//! has a unique solution with `g_i(0) = 0`. For any `phi`,
//!
//! ```text
//! [x^k] phi(g) / det(delta_ij - x_i (d_j f_i)(g))  ==  [x^k] phi(x) f_1(x)^k_1 ... f_n(x)^k_n
//! ```
//!
//! This module builds both sides independently and compares them. The left
//! side goes through the fixed-point solver, composition, the determinant and
//! a reciprocal; the right side only uses powers, products and coefficient
//! extraction, so the two never share an intermediate result.

use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::rational::Rational;
use crate::series::{MultiIndex, Series, SeriesError, SeriesMatrix};

/// Largest supported number of variables.
pub const MAX_VARIABLES: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InversionError {
    #[error("a system needs at least one variable")]
    NoVariables,
    #[error("{0} variables requested, at most {MAX_VARIABLES} are supported")]
    TooManyVariables(usize),
    #[error("expected {expected} series f_i, got {found}")]
    WrongSeriesCount { expected: usize, found: usize },
    #[error("all members of a system must share variable count {nvars} and order {order}")]
    ShapeMismatch { nvars: usize, order: u32 },
    #[error("the classical form needs a single variable")]
    NotUnivariate,
    #[error("the classical form needs k >= 1")]
    ZeroDegree,
    #[error("the classical form needs f(0) != 0")]
    DegenerateF,
    #[error("series known to order {have}, order {need} required")]
    OrderTooLow { have: u32, need: u32 },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

pub type Result<T> = std::result::Result<T, InversionError>;

/// One instance `(phi, f_1, ..., f_n)`, all in `n` variables at order `N`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesSystem {
    phi: Series,
    f: Vec<Series>,
}

impl SeriesSystem {
    pub fn new(phi: Series, f: Vec<Series>) -> Result<Self> {
        let nvars = phi.nvars();
        let order = phi.order();
        if nvars == 0 {
            return Err(InversionError::NoVariables);
        }
        if nvars > MAX_VARIABLES {
            return Err(InversionError::TooManyVariables(nvars));
        }
        if f.len() != nvars {
            return Err(InversionError::WrongSeriesCount {
                expected: nvars,
                found: f.len(),
            });
        }
        if f.iter().any(|s| s.nvars() != nvars || s.order() != order) {
            return Err(InversionError::ShapeMismatch { nvars, order });
        }
        Ok(SeriesSystem { phi, f })
    }

    pub fn nvars(&self) -> usize {
        self.phi.nvars()
    }

    pub fn order(&self) -> u32 {
        self.phi.order()
    }

    pub fn phi(&self) -> &Series {
        &self.phi
    }

    pub fn f(&self) -> &[Series] {
        &self.f
    }

    /// The same system cut down to `order`.
    pub fn truncated(&self, order: u32) -> SeriesSystem {
        SeriesSystem {
            phi: self.phi.truncate(order),
            f: self.f.iter().map(|s| s.truncate(order)).collect(),
        }
    }

    /// Relabels variable `i` as `perm[i]` everywhere, including the order of
    /// the `f_i`.
    pub fn permuted(&self, perm: &[usize]) -> SeriesSystem {
        let mut f = vec![Series::zero(self.nvars(), self.order()); self.nvars()];
        for (i, fi) in self.f.iter().enumerate() {
            f[perm[i]] = fi.permute_variables(perm);
        }
        SeriesSystem {
            phi: self.phi.permute_variables(perm),
            f,
        }
    }
}

/// The solution `g` of `g_i = x_i f_i(g)` to the system's order.
#[derive(Clone, Debug, PartialEq)]
pub struct FixedPointSolution {
    pub g: Vec<Series>,
    /// `g_i - x_i f_i(g)` vanished identically up to the order.
    pub residual_ok: bool,
}

/// Solves `g_i = x_i f_i(g)` by iterating from `g = 0`.
///
/// Iterate `t` agrees with the true solution through degree `t`, so the
/// loop runs exactly `N` times and iterate `t` is only carried to order `t`.
pub fn solve_fixed_point(sys: &SeriesSystem) -> FixedPointSolution {
    let n = sys.nvars();
    let order = sys.order();
    let mut g = vec![Series::zero(n, 0); n];
    for t in 1..=order {
        g = step(sys, &g, t - 1).expect("iterates have zero constant term");
    }
    let residual_ok = residual_vanishes(sys, &g);
    FixedPointSolution { g, residual_ok }
}

/// One Picard step at working order `order`: returns `x_i f_i(g)` known to
/// `order + 1`.
fn step(sys: &SeriesSystem, g: &[Series], order: u32) -> Result<Vec<Series>> {
    sys.f
        .iter()
        .enumerate()
        .map(|(i, fi)| {
            let inner: Vec<Series> = g.iter().map(|gi| gi.truncate(order)).collect();
            Ok(fi.truncate(order).compose(&inner)?.shift(i)?)
        })
        .collect()
}

/// Checks `g_i - x_i f_i(g) = 0` up to the system order.
pub fn residual_vanishes(sys: &SeriesSystem, g: &[Series]) -> bool {
    let order = sys.order();
    sys.f.iter().enumerate().zip(g).all(|((i, fi), gi)| {
        match fi.compose(g).and_then(|s| s.shift(i)) {
            Ok(image) => (gi - &image.truncate(order)).truncate(order).is_zero(),
            Err(_) => false,
        }
    })
}

/// The matrix `delta_ij - x_i (d_j f_i)(g)`, exact to the system order.
///
/// `d_j f_i` is only known to order `N - 1`, but the factor `x_i` lifts the
/// product back to order `N`.
pub fn jacobian_matrix(sys: &SeriesSystem, solution: &FixedPointSolution) -> Result<SeriesMatrix> {
    let n = sys.nvars();
    let order = sys.order();
    if order == 0 {
        return Ok(SeriesMatrix::identity(n, n, 0));
    }
    let mut rows = Vec::with_capacity(n);
    for (i, fi) in sys.f.iter().enumerate() {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let partial = fi.partial_derivative(j)?;
            let entry = partial.compose(&solution.g)?.shift(i)?.truncate(order);
            let entry = if i == j {
                &Series::one(n, order) - &entry
            } else {
                entry.neg()
            };
            row.push(entry);
        }
        rows.push(row);
    }
    Ok(SeriesMatrix::from_rows(rows)?)
}

/// Every intermediate of the left-hand side.
#[derive(Clone, Debug)]
pub struct LhsParts {
    pub solution: FixedPointSolution,
    pub matrix: SeriesMatrix,
    pub determinant: Series,
    pub phi_of_g: Series,
    pub lhs: Series,
}

pub fn lhs_parts(sys: &SeriesSystem) -> Result<LhsParts> {
    let solution = solve_fixed_point(sys);
    let matrix = jacobian_matrix(sys, &solution)?;
    let determinant = matrix.determinant();
    let phi_of_g = sys.phi.compose(&solution.g)?;
    let lhs = phi_of_g.checked_mul(&determinant.reciprocal()?)?;
    Ok(LhsParts {
        solution,
        matrix,
        determinant,
        phi_of_g,
        lhs,
    })
}

/// `phi(g) / det(delta_ij - x_i (d_j f_i)(g))` to the system order.
pub fn lhs_series(sys: &SeriesSystem) -> Series {
    lhs_parts(sys)
        .expect("the determinant has constant term 1 and g has zero constant term")
        .lhs
}

/// `[x^k] phi * f_1^k_1 * ... * f_n^k_n`.
///
/// Only monomials dividing `x^k` can reach `x^k` in a product, so every
/// factor and partial product is restricted to that box.
pub fn rhs_coefficient(sys: &SeriesSystem, k: &MultiIndex) -> Result<Rational> {
    if k.nvars() != sys.nvars() {
        return Err(SeriesError::IndexLength {
            expected: sys.nvars(),
            found: k.nvars(),
        }
        .into());
    }
    if k.degree() > sys.order() {
        return Err(SeriesError::BeyondTruncation {
            degree: k.degree(),
            order: sys.order(),
        }
        .into());
    }
    let mut product = sys.phi.restrict_to(k);
    for (i, fi) in sys.f.iter().enumerate() {
        if product.is_zero() {
            break;
        }
        let power = fi.pow_within(k.get(i), k)?;
        product = product.checked_mul_within(&power, k)?;
    }
    Ok(product.coefficient(k)?)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Mismatch {
    pub k: MultiIndex,
    pub lhs: Rational,
    pub rhs: Rational,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub nvars: usize,
    pub order: u32,
    /// Number of compared multi-indices, `C(N + n, n)`.
    pub checked: u64,
    /// Sorted graded-lexicographically.
    pub mismatches: Vec<Mismatch>,
    pub lhs: Series,
}

impl VerificationReport {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares every coefficient of total degree `<= N` on both sides.
pub fn verify_identity(sys: &SeriesSystem) -> VerificationReport {
    verify_identity_against(sys, |k| {
        rhs_coefficient(sys, k).expect("k is within the system order")
    })
}

/// Like [`verify_identity`] with a caller-supplied right-hand side. The
/// comparisons run in parallel; the report order does not depend on it.
pub fn verify_identity_against<F>(sys: &SeriesSystem, rhs: F) -> VerificationReport
where
    F: Fn(&MultiIndex) -> Rational + Sync,
{
    let lhs = lhs_series(sys);
    let indices = MultiIndex::all_up_to(sys.nvars(), sys.order());
    let mismatches: Vec<Mismatch> = indices
        .par_iter()
        .filter_map(|k| {
            let left = lhs.coefficient(k).expect("k is within the lhs order");
            let right = rhs(k);
            (left != right).then(|| Mismatch {
                k: k.clone(),
                lhs: left,
                rhs: right,
            })
        })
        .collect();
    VerificationReport {
        nvars: sys.nvars(),
        order: sys.order(),
        checked: indices.len() as u64,
        mismatches,
        lhs,
    }
}

/// The two sides of one-variable Lagrange inversion,
/// `([x^k] phi(g), (1/k) [u^(k-1)] phi'(u) f(u)^k)`, where `g = x f(g)`.
pub fn classic_lagrange_check(f: &Series, phi: &Series, k: u32) -> Result<(Rational, Rational)> {
    if f.nvars() != 1 || phi.nvars() != 1 {
        return Err(InversionError::NotUnivariate);
    }
    if k == 0 {
        return Err(InversionError::ZeroDegree);
    }
    for s in [f, phi] {
        if s.order() < k {
            return Err(InversionError::OrderTooLow {
                have: s.order(),
                need: k,
            });
        }
    }
    if f.constant_term().is_zero() {
        return Err(InversionError::DegenerateF);
    }

    let sys = SeriesSystem::new(phi.truncate(k), vec![f.truncate(k)])?;
    let g = solve_fixed_point(&sys).g;
    let index = MultiIndex::new(vec![k]);
    let composed = sys.phi.compose(&g)?.coefficient(&index)?;

    let below = MultiIndex::new(vec![k - 1]);
    let dphi = phi.truncate(k).partial_derivative(0)?;
    let weighted = dphi.checked_mul(&f.truncate(k - 1).pow(k))?;
    let classical = weighted.coefficient(&below)? / Rational::from_integer(k.into());

    Ok((composed, classical))
}

/// For one variable, `psi = phi * (1 - u f'(u) / f(u))`.
///
/// Substituting `u = g` turns the weight into `det = 1 - x f'(g)`, so the
/// Good-form left side of `(psi, f)` is `phi(g)` itself. This ties the
/// classical coefficient `[x^k] phi(g)` to the multivariate machinery.
pub fn phi_for_plain_composition(f: &Series, phi: &Series) -> Result<Series> {
    if f.nvars() != 1 || phi.nvars() != 1 {
        return Err(InversionError::NotUnivariate);
    }
    if f.constant_term().is_zero() {
        return Err(InversionError::DegenerateF);
    }
    let order = f.order().min(phi.order());
    let f = f.truncate(order);
    if order == 0 {
        return Ok(phi.truncate(0));
    }
    let u_df = f.partial_derivative(0)?.shift(0)?;
    let ratio = u_df.checked_mul(&f.reciprocal()?)?;
    let weight = &Series::one(1, order) - &ratio;
    Ok(phi.truncate(order).checked_mul(&weight)?)
}

/// Determinant of [`jacobian_matrix`] for `sys`.
pub fn jacobian_determinant(sys: &SeriesSystem) -> Result<Series> {
    let solution = solve_fixed_point(sys);
    Ok(jacobian_matrix(sys, &solution)?.determinant())
}

impl Mismatch {
    pub fn difference(&self) -> Rational {
        &self.lhs - &self.rhs
    }
}

/// True when `det` has constant term exactly one.
pub fn determinant_is_unit_at_zero(det: &Series) -> bool {
    det.constant_term().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{factorial, int, rat};

    fn geometric(order: u32) -> Series {
        Series::univariate(order, (0..=order).map(|_| int(1)))
    }

    fn exponential(order: u32, degree: u32) -> Series {
        Series::univariate(order, (0..=degree).map(|k| factorial(k).recip()))
    }

    fn u(n: usize, var: usize, order: u32) -> Series {
        Series::variable(var, n, order).unwrap()
    }

    fn catalan(count: usize) -> Vec<i64> {
        let mut c = vec![1i64];
        for k in 1..count {
            c.push((0..k).map(|i| c[i] * c[k - 1 - i]).sum());
        }
        c
    }

    fn bivariate_pair(order: u32) -> SeriesSystem {
        let one = Series::one(2, order);
        SeriesSystem::new(
            one.clone(),
            vec![&one + &u(2, 1, order), &one + &u(2, 0, order)],
        )
        .unwrap()
    }

    #[test]
    fn catalan_fixed_point() {
        let sys = SeriesSystem::new(u(1, 0, 5), vec![geometric(5)]).unwrap();
        let sol = solve_fixed_point(&sys);
        assert!(sol.residual_ok);
        let c = catalan(5);
        let want = Series::univariate(5, std::iter::once(int(0)).chain(c.iter().map(|&v| int(v))));
        assert_eq!(sol.g[0], want);
    }

    #[test]
    fn cayley_fixed_point() {
        let sys = SeriesSystem::new(u(1, 0, 4), vec![exponential(4, 4)]).unwrap();
        let sol = solve_fixed_point(&sys);
        for k in 1..=4u32 {
            let want = Rational::from_integer(num_bigint::BigInt::from(k).pow(k - 1)) / factorial(k);
            assert_eq!(sol.g[0].coefficient(&MultiIndex::new(vec![k])).unwrap(), want);
        }
        assert_eq!(sol.g[0].coefficient(&MultiIndex::new(vec![3])).unwrap(), rat(3, 2));
        assert_eq!(sol.g[0].coefficient(&MultiIndex::new(vec![4])).unwrap(), rat(8, 3));
    }

    #[test]
    fn bivariate_fixed_point() {
        let sys = bivariate_pair(4);
        let sol = solve_fixed_point(&sys);
        let want = Series::from_terms(
            2,
            4,
            [[1, 0], [1, 1], [2, 1], [2, 2]].map(|k| (MultiIndex::from(k), int(1))),
        )
        .unwrap();
        assert_eq!(sol.g[0], want);
        assert!(sol.residual_ok);
    }

    #[test]
    fn zero_order_system() {
        let sys = SeriesSystem::new(Series::constant(int(3), 2, 0), vec![Series::one(2, 0); 2]).unwrap();
        let report = verify_identity(&sys);
        assert!(report.holds());
        assert_eq!(report.checked, 1);
        assert_eq!(report.lhs, Series::constant(int(3), 2, 0));
    }

    #[test]
    fn jacobian_examples() {
        let sys = SeriesSystem::new(Series::one(3, 3), vec![Series::one(3, 3); 3]).unwrap();
        let m = jacobian_matrix(&sys, &solve_fixed_point(&sys)).unwrap();
        assert_eq!(m, SeriesMatrix::identity(3, 3, 3));

        let f = &Series::one(1, 2) + &u(1, 0, 2);
        let sys = SeriesSystem::new(Series::one(1, 2), vec![f]).unwrap();
        let sol = solve_fixed_point(&sys);
        assert_eq!(sol.g[0], Series::univariate(2, [int(0), int(1), int(1)]));
        let m = jacobian_matrix(&sys, &sol).unwrap();
        assert_eq!(*m.get(0, 0), Series::univariate(2, [int(1), int(-1)]));

        let sys = bivariate_pair(4);
        let m = jacobian_matrix(&sys, &solve_fixed_point(&sys)).unwrap();
        assert_eq!(*m.get(0, 0), Series::one(2, 4));
        assert_eq!(*m.get(0, 1), u(2, 0, 4).neg());
        assert_eq!(*m.get(1, 0), u(2, 1, 4).neg());
        assert_eq!(*m.get(1, 1), Series::one(2, 4));
    }

    #[test]
    fn lhs_examples() {
        let sys = SeriesSystem::new(Series::one(2, 4), vec![Series::one(2, 4); 2]).unwrap();
        assert_eq!(lhs_series(&sys), Series::one(2, 4));

        // C(2k-1, k): 1, 1, 3, 10
        let sys = SeriesSystem::new(Series::one(1, 3), vec![geometric(3)]).unwrap();
        assert_eq!(lhs_series(&sys), Series::univariate(3, [1, 1, 3, 10].map(int)));

        // k^(k-1)/(k-1)!: 0, 1, 2, 9/2
        let sys = SeriesSystem::new(u(1, 0, 3), vec![exponential(3, 3)]).unwrap();
        assert_eq!(
            lhs_series(&sys),
            Series::univariate(3, [int(0), int(1), int(2), rat(9, 2)])
        );
    }

    #[test]
    fn rhs_examples() {
        let phi = &Series::constant(rat(7, 3), 2, 3) + &u(2, 0, 3);
        let sys = SeriesSystem::new(phi, vec![Series::one(2, 3); 2]).unwrap();
        assert_eq!(rhs_coefficient(&sys, &MultiIndex::zero(2)).unwrap(), rat(7, 3));

        let sys = SeriesSystem::new(Series::one(1, 3), vec![geometric(3)]).unwrap();
        assert_eq!(rhs_coefficient(&sys, &MultiIndex::new(vec![3])).unwrap(), int(10));

        let sys = bivariate_pair(4);
        assert_eq!(rhs_coefficient(&sys, &MultiIndex::from([1, 1])).unwrap(), int(1));
        assert!(matches!(
            rhs_coefficient(&sys, &MultiIndex::from([4, 1])),
            Err(InversionError::Series(SeriesError::BeyondTruncation { .. }))
        ));
    }

    #[test]
    fn verify_examples() {
        let sys = SeriesSystem::new(Series::zero(2, 4), vec![geometric(4).compose(&[u(2, 0, 4)]).unwrap(), Series::one(2, 4)]).unwrap();
        let report = verify_identity(&sys);
        assert!(report.holds());
        assert!(report.lhs.is_zero());
        assert_eq!(report.checked, 15);

        let sys = SeriesSystem::new(u(1, 0, 6), vec![geometric(6)]).unwrap();
        let report = verify_identity(&sys);
        assert!(report.holds());
        // both sides are [x^(k-1)] (1-x)^-k = C(2k-2, k-1); Catalan shows up in phi(g) = g
        let binom = |n: i64, r: i64| (0..r).fold(1i64, |acc, i| acc * (n - i) / (i + 1));
        let want = (0..=6).map(|k| if k == 0 { int(0) } else { int(binom(2 * k - 2, k - 1)) });
        assert_eq!(report.lhs, Series::univariate(6, want));
        let g = solve_fixed_point(&sys).g;
        assert_eq!(g[0], Series::univariate(6, [0, 1, 1, 2, 5, 14, 42].map(int)));
    }

    #[test]
    fn verify_reports_sabotage_sorted() {
        let sys = bivariate_pair(3);
        let report = verify_identity_against(&sys, |k| {
            rhs_coefficient(&sys, k).unwrap() + if k.degree() >= 2 { int(1) } else { int(0) }
        });
        assert_eq!(report.mismatches.len(), 7);
        let ks: Vec<_> = report.mismatches.iter().map(|m| m.k.clone()).collect();
        let mut sorted = ks.clone();
        sorted.sort();
        assert_eq!(ks, sorted);
        assert!(report.mismatches.iter().all(|m| m.difference() == int(-1)));
    }

    #[test]
    fn classic_examples() {
        let one_plus_u = &Series::one(1, 4) + &u(1, 0, 4);
        assert_eq!(
            classic_lagrange_check(&one_plus_u, &u(1, 0, 4), 2).unwrap(),
            (int(1), int(1))
        );
        assert_eq!(
            classic_lagrange_check(&geometric(4), &u(1, 0, 4), 4).unwrap(),
            (int(5), int(5))
        );
        assert_eq!(
            classic_lagrange_check(&one_plus_u, &u(1, 0, 4).pow(2), 2).unwrap(),
            (int(1), int(1))
        );
    }

    #[test]
    fn classic_preconditions() {
        let f = geometric(3);
        assert_eq!(
            classic_lagrange_check(&f, &u(1, 0, 3), 0).unwrap_err(),
            InversionError::ZeroDegree
        );
        assert!(matches!(
            classic_lagrange_check(&f, &u(1, 0, 3), 4).unwrap_err(),
            InversionError::OrderTooLow { .. }
        ));
        assert_eq!(
            classic_lagrange_check(&u(1, 0, 3), &u(1, 0, 3), 2).unwrap_err(),
            InversionError::DegenerateF
        );
        assert_eq!(
            classic_lagrange_check(&Series::one(2, 3), &Series::one(2, 3), 2).unwrap_err(),
            InversionError::NotUnivariate
        );
    }

    #[test]
    fn plain_composition_weight() {
        let f = geometric(6);
        let phi = u(1, 0, 6);
        let psi = phi_for_plain_composition(&f, &phi).unwrap();
        let sys = SeriesSystem::new(psi, vec![f.clone()]).unwrap();
        let plain = SeriesSystem::new(phi.clone(), vec![f]).unwrap();
        let g = solve_fixed_point(&plain).g;
        assert_eq!(lhs_series(&sys), phi.compose(&g).unwrap());
    }

    #[test]
    fn system_validation() {
        assert_eq!(
            SeriesSystem::new(Series::one(1, 2), vec![]).unwrap_err(),
            InversionError::WrongSeriesCount { expected: 1, found: 0 }
        );
        assert!(matches!(
            SeriesSystem::new(Series::one(1, 2), vec![Series::one(1, 3)]).unwrap_err(),
            InversionError::ShapeMismatch { .. }
        ));
        assert_eq!(
            SeriesSystem::new(Series::one(9, 2), vec![Series::one(9, 2); 9]).unwrap_err(),
            InversionError::TooManyVariables(9)
        );
    }

    #[test]
    fn zero_constant_f_is_in_scope() {
        // f_1 = u_2, f_2 = 1: g_1 = x_1 x_2, valuation 2
        let sys = SeriesSystem::new(
            Series::one(2, 5),
            vec![u(2, 1, 5), Series::one(2, 5)],
        )
        .unwrap();
        let sol = solve_fixed_point(&sys);
        assert_eq!(sol.g[0].valuation(), Some(2));
        assert!(verify_identity(&sys).holds());
    }
}
