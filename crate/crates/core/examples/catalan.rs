//! Catalan numbers from `g = x / (1 - g)`, computed three ways.
//!
//! `cargo run --example catalan`

use lagrange_good::cli::demo::{catalan_numbers, catalan_system};
use lagrange_good::inversion::{classic_lagrange_check, phi_for_plain_composition, solve_fixed_point};
use lagrange_good::{lhs_series, MultiIndex, SeriesSystem};

fn main() {
    let order = 10;
    let sys = catalan_system(order);
    let g = solve_fixed_point(&sys).g.remove(0);

    // reweighting phi turns the Good left side into plain composition
    let psi = phi_for_plain_composition(&sys.f()[0], sys.phi()).unwrap();
    let good = lhs_series(&SeriesSystem::new(psi, sys.f().to_vec()).unwrap());
    let expected = catalan_numbers(order as usize);

    println!("{:>2}  {:>6}  {:>6}  {:>6}  {:>6}", "k", "[x^k]g", "Good", "Lagr.", "C_k-1");
    for k in 1..=order {
        let at = MultiIndex::new(vec![k]);
        let (_, classical) = classic_lagrange_check(&sys.f()[0], sys.phi(), k).unwrap();
        println!(
            "{k:>2}  {:>6}  {:>6}  {:>6}  {:>6}",
            g.coefficient(&at).unwrap(),
            good.coefficient(&at).unwrap(),
            classical,
            expected[k as usize - 1],
        );
    }
}
