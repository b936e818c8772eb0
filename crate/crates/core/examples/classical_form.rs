//! One-variable Lagrange inversion in its classical form,
//! `[x^k] phi(g) = (1/k) [u^(k-1)] phi'(u) f(u)^k`, for a user-supplied `f`
//! and `phi`.
//!
//! `cargo run --example classical_form -- "1 + u + u^2" "u^2" 8`

use lagrange_good::expr::{parse_series, Variables};
use lagrange_good::inversion::classic_lagrange_check;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let f_src = args.next().unwrap_or_else(|| "1 + u + u^2".into());
    let phi_src = args.next().unwrap_or_else(|| "u".into());
    let order: u32 = args.next().and_then(|s| s.parse().ok()).unwrap_or(8);

    let vars = Variables::named(vec!["u".into()])?;
    let f = parse_series(&f_src, &vars, order)?;
    let phi = parse_series(&phi_src, &vars, order)?;
    println!("f = {f_src}, phi = {phi_src}");
    for k in 1..=order {
        let (composed, classical) = classic_lagrange_check(&f, &phi, k)?;
        let mark = if composed == classical { "" } else { "  <- differs" };
        println!("k = {k}: {composed:>8} {classical:>8}{mark}");
    }
    Ok(())
}
