//! Rooted labelled trees: `g = x e^g` with `e^u` truncated, giving
//! `[x^k] g = k^(k-1) / k!`.
//!
//! `cargo run --example cayley`

use lagrange_good::cli::demo::{cayley_coefficient, cayley_system};
use lagrange_good::inversion::{solve_fixed_point, verify_identity};
use lagrange_good::rational::factorial;
use lagrange_good::MultiIndex;

fn main() {
    let order = 8;
    let sys = cayley_system(order, 10);
    let g = &solve_fixed_point(&sys).g[0];
    let report = verify_identity(&sys);
    println!("Good identity for phi = u: {} coefficients, {} mismatches", report.checked, report.mismatches.len());
    for k in 1..=order {
        let c = g.coefficient(&MultiIndex::new(vec![k])).unwrap();
        assert_eq!(c, cayley_coefficient(k));
        println!("k = {k}: [x^k] g = {c:<12} labelled trees = {}", &c * factorial(k));
    }
}
