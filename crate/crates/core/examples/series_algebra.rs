//! Exact arithmetic on truncated power series in two variables.
//!
//! `cargo run --example series_algebra`

use lagrange_good::expr::{format_series, parse_series, Variables};
use lagrange_good::{Series, SeriesMatrix};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let vars = Variables::standard(2);
    let order = 4;
    let a = parse_series("1 + x1 - 2/3*x2", &vars, order)?;
    let b = parse_series("x1*x2 + x2^2", &vars, order)?;

    let show = |label: &str, s: &Series| println!("{label:>12} = {}", format_series(s, &vars));
    show("a", &a);
    show("b", &b);
    show("a * b", &(&a * &b));
    show("a^3", &a.pow(3));
    show("1 / a", &a.reciprocal()?);
    show("d/dx1 a^3", &a.pow(3).partial_derivative(0)?);

    // substitute x1 -> x1 + x2, x2 -> x1 * x2
    let inner = [parse_series("x1 + x2", &vars, order)?, parse_series("x1*x2", &vars, order)?];
    show("a(inner)", &a.compose(&inner)?);

    let m = SeriesMatrix::from_rows(vec![vec![a.clone(), b.clone()], vec![b.clone(), a.clone()]])?;
    show("det", &m.determinant());
    Ok(())
}
