//! Floating-point cross-check of the inversion identity.
//!
//! For small `x` the map `u -> diag(x) f(u)` is a contraction, so its fixed
//! point `g(x)` can be found by plain iteration. The function
//! `I(x) = phi(g(x)) / det(I - diag(x) J_f(g(x)))` is then evaluated directly
//! and compared against partial sums of the exact left-hand series. Nothing
//! here touches the symbolic solver except [`compare_partial_sums`], which
//! reads its output.

use thiserror::Error;

use crate::inversion::{self, InversionError, SeriesSystem};
use crate::rational::to_f64;
use crate::series::Series;

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_ITER: usize = 10_000;
pub const DEFAULT_SHRINK: f64 = 0.5;
/// Largest accepted Lipschitz witness in [`find_epsilon`].
pub const LIPSCHITZ_THRESHOLD: f64 = 0.9;
/// Determinants smaller than this in magnitude are treated as singular.
pub const SINGULARITY_THRESHOLD: f64 = 1e-12;
const MAX_SHRINKS: usize = 64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("fixed-point iteration did not converge at x = {x:?} after {iterations} iterations")]
    NotConverged { x: Vec<f64>, iterations: usize },
    #[error("Jacobian determinant {det:e} is numerically singular")]
    NearSingular { det: f64 },
    #[error("point has {found} coordinates, expected {expected}")]
    Dimension { expected: usize, found: usize },
    #[error("no contracting radius found in {MAX_SHRINKS} shrinks")]
    Exhausted,
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error("system known to order {have}, order {need} requested")]
    OrderTooLow { have: u32, need: u32 },
    #[error(transparent)]
    Inversion(#[from] InversionError),
}

pub type Result<T> = std::result::Result<T, OracleError>;

/// A polynomial with float evaluation of its value and first partials.
#[derive(Clone, Debug)]
pub struct PolyFunction {
    exact: Series,
    terms: Vec<(Vec<u32>, f64)>,
}

impl PolyFunction {
    /// Takes the stored terms of `poly` as a polynomial.
    pub fn new(poly: &Series) -> Self {
        let terms = poly
            .terms()
            .map(|(k, c)| (k.exponents().to_vec(), to_f64(c)))
            .collect();
        PolyFunction {
            exact: poly.clone(),
            terms,
        }
    }

    pub fn exact(&self) -> &Series {
        &self.exact
    }

    pub fn nvars(&self) -> usize {
        self.exact.nvars()
    }

    pub fn eval(&self, u: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(k, c)| c * monomial(k, u, None))
            .sum()
    }

    /// `d/du_var` at `u`.
    pub fn partial(&self, var: usize, u: &[f64]) -> f64 {
        self.terms
            .iter()
            .filter(|(k, _)| k[var] > 0)
            .map(|(k, c)| c * k[var] as f64 * monomial(k, u, Some(var)))
            .sum()
    }
}

/// `u^k`, or `u^(k - e_var)` when `lowered` names a variable.
fn monomial(k: &[u32], u: &[f64], lowered: Option<usize>) -> f64 {
    let mut acc = 1.0;
    for (i, (&e, &x)) in k.iter().zip(u).enumerate() {
        let e = if lowered == Some(i) { e - 1 } else { e };
        acc *= x.powi(e as i32);
    }
    acc
}

#[derive(Clone, Debug, PartialEq)]
pub struct ContractionResult {
    pub x: Vec<f64>,
    pub g_at_x: Vec<f64>,
    pub iterations: usize,
    pub lipschitz_estimate: f64,
    pub converged: bool,
}

fn max_norm_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max)
}

fn image(f: &[PolyFunction], x: &[f64], u: &[f64]) -> Vec<f64> {
    f.iter().zip(x).map(|(fi, xi)| xi * fi.eval(u)).collect()
}

/// Picard iteration `u <- diag(x) f(u)` from `u = 0`, stopping once
/// `max_i |u_i - x_i f_i(u)| <= tol`. Non-convergence is reported through
/// `converged = false`, not as an error.
pub fn numeric_fixed_point(
    f: &[PolyFunction],
    x: &[f64],
    tol: f64,
    max_iter: usize,
) -> Result<ContractionResult> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(OracleError::InvalidParameter("tol must be positive"));
    }
    if max_iter == 0 {
        return Err(OracleError::InvalidParameter("max_iter must be at least 1"));
    }
    if x.len() != f.len() {
        return Err(OracleError::Dimension {
            expected: f.len(),
            found: x.len(),
        });
    }
    if let Some(fi) = f.iter().find(|fi| fi.nvars() != f.len()) {
        return Err(OracleError::Dimension {
            expected: f.len(),
            found: fi.nvars(),
        });
    }

    let mut u = vec![0.0; f.len()];
    let mut last_step: Option<f64> = None;
    let mut lipschitz: f64 = 0.0;
    let mut converged = false;
    let mut iterations = 0;
    while iterations < max_iter {
        let next = image(f, x, &u);
        iterations += 1;
        let step = max_norm_diff(&next, &u);
        if let Some(prev) = last_step {
            if prev > 0.0 {
                lipschitz = lipschitz.max(step / prev);
            }
        }
        last_step = Some(step);
        u = next;
        if u.iter().any(|v| !v.is_finite()) {
            break;
        }
        let residual = max_norm_diff(&u, &image(f, x, &u));
        if residual <= tol {
            converged = true;
            break;
        }
    }
    Ok(ContractionResult {
        x: x.to_vec(),
        g_at_x: u,
        iterations,
        lipschitz_estimate: lipschitz,
        converged,
    })
}

/// Determinant by Gaussian elimination with partial pivoting. Row swaps
/// and eliminations happen in a fixed order, so the result is reproducible.
pub fn lu_determinant(mut m: Vec<Vec<f64>>) -> f64 {
    let n = m.len();
    let mut det = 1.0;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
            .expect("non-empty range");
        if m[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= m[col][col];
        for row in col + 1..n {
            let factor = m[row][col] / m[col][col];
            for k in col..n {
                m[row][k] -= factor * m[col][k];
            }
        }
    }
    det
}

/// `det(delta_ij - x_i d_j f_i(u))` at a float point.
pub fn numeric_jacobian_determinant(f: &[PolyFunction], x: &[f64], u: &[f64]) -> f64 {
    let n = f.len();
    let m = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let delta = if i == j { 1.0 } else { 0.0 };
                    delta - x[i] * f[i].partial(j, u)
                })
                .collect()
        })
        .collect();
    lu_determinant(m)
}

/// `I(x) = phi(g(x)) / det(delta_ij - x_i d_j f_i(g(x)))`.
pub fn numeric_lhs(f: &[PolyFunction], phi: &PolyFunction, x: &[f64]) -> Result<f64> {
    numeric_lhs_with(f, phi, x, DEFAULT_TOL, DEFAULT_MAX_ITER)
}

pub fn numeric_lhs_with(
    f: &[PolyFunction],
    phi: &PolyFunction,
    x: &[f64],
    tol: f64,
    max_iter: usize,
) -> Result<f64> {
    if phi.nvars() != f.len() {
        return Err(OracleError::Dimension {
            expected: f.len(),
            found: phi.nvars(),
        });
    }
    let fixed = numeric_fixed_point(f, x, tol, max_iter)?;
    if !fixed.converged {
        return Err(OracleError::NotConverged {
            x: x.to_vec(),
            iterations: fixed.iterations,
        });
    }
    let det = numeric_jacobian_determinant(f, x, &fixed.g_at_x);
    if det.abs() < SINGULARITY_THRESHOLD {
        return Err(OracleError::NearSingular { det });
    }
    Ok(phi.eval(&fixed.g_at_x) / det)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PartialSumRow {
    pub order: u32,
    pub series_value: f64,
    pub oracle_value: f64,
    pub abs_error: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PartialSumTable {
    pub x: Vec<f64>,
    pub rows: Vec<PartialSumRow>,
}

impl PartialSumTable {
    /// Errors never grow by more than `slack` from one row to the next.
    pub fn is_non_increasing(&self, slack: f64) -> bool {
        self.rows
            .windows(2)
            .all(|w| w[1].abs_error <= w[0].abs_error + slack)
    }

    /// Least-squares slope of `ln(abs_error)` against the order, over the
    /// rows with a positive error. `None` with fewer than two such rows.
    pub fn log_error_slope(&self) -> Option<f64> {
        let points: Vec<(f64, f64)> = self
            .rows
            .iter()
            .filter(|r| r.abs_error > 0.0)
            .map(|r| (r.order as f64, r.abs_error.ln()))
            .collect();
        if points.len() < 2 {
            return None;
        }
        let n = points.len() as f64;
        let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
        let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
        let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
        let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
        Some(sxy / sxx)
    }

    pub fn final_error(&self) -> Option<f64> {
        self.rows.last().map(|r| r.abs_error)
    }

    pub fn max_abs_x(&self) -> f64 {
        self.x.iter().map(|v| v.abs()).fold(0.0, f64::max)
    }
}

/// Evaluates the exact left-hand series at `x` for each requested order and
/// tabulates its distance from `I(x)`. The oracle side uses the stored
/// polynomials of the system as `f` and `phi`.
pub fn compare_partial_sums(
    sys: &SeriesSystem,
    x: &[f64],
    orders: &[u32],
) -> Result<PartialSumTable> {
    compare_partial_sums_with(sys, x, orders, DEFAULT_TOL, DEFAULT_MAX_ITER)
}

pub fn compare_partial_sums_with(
    sys: &SeriesSystem,
    x: &[f64],
    orders: &[u32],
    tol: f64,
    max_iter: usize,
) -> Result<PartialSumTable> {
    if x.len() != sys.nvars() {
        return Err(OracleError::Dimension {
            expected: sys.nvars(),
            found: x.len(),
        });
    }
    if orders.windows(2).any(|w| w[1] <= w[0]) {
        return Err(OracleError::InvalidParameter("orders must be increasing"));
    }
    if let Some(&top) = orders.last() {
        if top > sys.order() {
            return Err(OracleError::OrderTooLow {
                have: sys.order(),
                need: top,
            });
        }
    }
    let f: Vec<PolyFunction> = sys.f().iter().map(PolyFunction::new).collect();
    let phi = PolyFunction::new(sys.phi());
    let oracle_value = numeric_lhs_with(&f, &phi, x, tol, max_iter)?;
    let rows = orders
        .iter()
        .map(|&order| {
            let lhs = inversion::lhs_series(&sys.truncated(order));
            let series_value = lhs.eval_f64(x);
            PartialSumRow {
                order,
                series_value,
                oracle_value,
                abs_error: (series_value - oracle_value).abs(),
            }
        })
        .collect();
    Ok(PartialSumTable {
        x: x.to_vec(),
        rows,
    })
}

/// Probe points `+-r e_i` and `r (1, ..., 1) / sqrt(n)`.
fn probes(n: usize, r: f64) -> Vec<Vec<f64>> {
    let mut out = Vec::with_capacity(2 * n + 1);
    for i in 0..n {
        for sign in [1.0, -1.0] {
            let mut p = vec![0.0; n];
            p[i] = sign * r;
            out.push(p);
        }
    }
    out.push(vec![r / (n as f64).sqrt(); n]);
    out
}

/// First radius in `start, start*shrink, start*shrink^2, ...` where the
/// iteration converges at every probe point with a Lipschitz witness of at
/// most [`LIPSCHITZ_THRESHOLD`]. An empirical witness, not a certified bound.
pub fn find_epsilon(f: &[PolyFunction], start: f64, shrink: f64) -> Result<f64> {
    if !(start > 0.0) {
        return Err(OracleError::InvalidParameter("start must be positive"));
    }
    if !(shrink > 0.0 && shrink < 1.0) {
        return Err(OracleError::InvalidParameter("shrink must lie in (0, 1)"));
    }
    let mut r = start;
    for _ in 0..MAX_SHRINKS {
        let mut ok = true;
        for p in probes(f.len(), r) {
            let result = numeric_fixed_point(f, &p, DEFAULT_TOL, DEFAULT_MAX_ITER)?;
            if !result.converged || result.lipschitz_estimate > LIPSCHITZ_THRESHOLD {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(r);
        }
        r *= shrink;
    }
    Err(OracleError::Exhausted)
}
