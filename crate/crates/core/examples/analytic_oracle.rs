//! Partial sums of the exact left side against a floating-point fixed
//! point at a given `x`.
//!
//! `cargo run --example analytic_oracle -- 0.05`

use lagrange_good::oracle::{compare_partial_sums, numeric_fixed_point, PolyFunction, DEFAULT_MAX_ITER, DEFAULT_TOL};
use lagrange_good::rational::int;
use lagrange_good::{Series, SeriesSystem};

fn main() {
    let x: f64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0.05);
    let order = 12;
    // phi = 1, f = 1 + u + ... + u^12
    let f = Series::univariate(order, (0..=order).map(|_| int(1)));
    let sys = SeriesSystem::new(Series::one(1, order), vec![f.clone()]).unwrap();

    let fixed = numeric_fixed_point(&[PolyFunction::new(&f)], &[x], DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
    println!(
        "g({x}) = {:.15} after {} iterations, contraction ~ {:.3}",
        fixed.g_at_x[0], fixed.iterations, fixed.lipschitz_estimate
    );

    match compare_partial_sums(&sys, &[x], &(1..=order).collect::<Vec<_>>()) {
        Ok(table) => {
            println!("{:>5}  {:>18}  {:>18}  {:>10}", "order", "partial sum", "oracle", "error");
            for row in &table.rows {
                println!("{:>5}  {:>18.15}  {:>18.15}  {:>10.3e}", row.order, row.series_value, row.oracle_value, row.abs_error);
            }
            if let Some(slope) = table.log_error_slope() {
                println!("ln(error) falls by {:.3} per order; -ln(4x) = {:.3}", -slope, -(4.0 * x).ln());
            }
        }
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(3);
        }
    }
}
