//! Checks the identity on random systems with small rational coefficients.
//!
//! `cargo run --release --example verify_random -- 50`

use lagrange_good::inversion::verify_identity;
use lagrange_good::{MultiIndex, Rational, Series, SeriesSystem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_poly(rng: &mut impl Rng, n: usize, order: u32) -> Series {
    let mut terms = Vec::new();
    for k in MultiIndex::all_up_to(n, 3.min(order)) {
        if rng.gen_bool(0.5) {
            let c = Rational::new(rng.gen_range(-4..=4).into(), rng.gen_range(1..=4).into());
            terms.push((k, c));
        }
    }
    Series::from_terms(n, order, terms).unwrap()
}

fn main() {
    let count: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(30);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut failures = 0;
    for case in 0..count {
        let n = rng.gen_range(1..=3);
        let order = rng.gen_range(2..=6);
        let phi = random_poly(&mut rng, n, order);
        let f = (0..n).map(|_| random_poly(&mut rng, n, order)).collect();
        let report = verify_identity(&SeriesSystem::new(phi, f).unwrap());
        if !report.holds() {
            failures += 1;
        }
        println!("#{case:<3} n={n} N={order}  {:>4} coefficients  {}", report.checked, if report.holds() { "ok" } else { "MISMATCH" });
    }
    println!("{failures} of {count} systems failed");
}
