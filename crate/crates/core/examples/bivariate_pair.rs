//! A two-variable system, `g1 = x1 (1 + g2)` and `g2 = x2 (1 + g1)`, whose
//! Good right side with `phi = 1` is `[x^k] (1 + u2)^k1 (1 + u1)^k2`.
//!
//! `cargo run --example bivariate_pair`

use lagrange_good::cli::demo::bivariate_pair_system;
use lagrange_good::expr::{format_series, Variables};
use lagrange_good::inversion::{jacobian_determinant, solve_fixed_point, verify_identity};

fn main() {
    let sys = bivariate_pair_system(6);
    let vars = Variables::standard(2);
    for (i, gi) in solve_fixed_point(&sys).g.iter().enumerate() {
        println!("g{} = {}", i + 1, format_series(gi, &vars));
    }
    println!("det = {}", format_series(&jacobian_determinant(&sys).unwrap(), &vars));

    let report = verify_identity(&sys);
    println!("lhs = {}", format_series(&report.lhs, &vars));
    println!("{} coefficients checked, {} mismatches", report.checked, report.mismatches.len());
}
