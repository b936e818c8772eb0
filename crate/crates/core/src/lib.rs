//! Exact truncated multivariate power series, and a checker for the
//! Lagrange-Good inversion formula built on top of them.
//!
//! * [`series`]: the arithmetic engine (products, composition, reciprocal,
//!   derivatives, determinants, coefficient extraction).
//! * [`inversion`]: solves `g_i = x_i f_i(g)` and compares both sides of the
//!   inversion identity coefficient by coefficient.
//! * [`oracle`]: a floating-point check of the same identity through a
//!   contraction-mapping fixed point.
//! * [`expr`] and [`cli`]: the expression language and command-line driver.

pub mod cli;
pub mod expr;
pub mod inversion;
pub mod oracle;
pub mod rational;
pub mod series;

pub use inversion::{
    lhs_series, rhs_coefficient, solve_fixed_point, verify_identity, SeriesSystem,
    VerificationReport,
};
pub use rational::Rational;
pub use series::{MultiIndex, Series, SeriesError, SeriesMatrix};
