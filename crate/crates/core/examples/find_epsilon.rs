//! Shrinks a radius until the float fixed-point iteration is a contraction
//! at every probe point.
//!
//! `cargo run --example find_epsilon`

use lagrange_good::expr::{parse_series, Variables};
use lagrange_good::oracle::{find_epsilon, PolyFunction, DEFAULT_SHRINK};

fn main() {
    let vars = Variables::standard(2);
    let systems = [
        ["1 + x2", "1 + x1"],
        ["1/(1 - x1 - x2)", "1 + x1^2"],
        ["3 + 5*x1*x2", "2 - 4*x2^3"],
    ];
    for [f1, f2] in systems {
        let f: Vec<PolyFunction> = [f1, f2]
            .iter()
            .map(|src| PolyFunction::new(&parse_series(src, &vars, 8).unwrap()))
            .collect();
        match find_epsilon(&f, 1.0, DEFAULT_SHRINK) {
            Ok(eps) => println!("f = ({f1}, {f2}): epsilon = {eps}"),
            Err(e) => println!("f = ({f1}, {f2}): {e}"),
        }
    }
}
