//! Parsing the expression grammar and printing canonical text that parses
//! back to the same series.
//!
//! `cargo run --example parse_and_format -- "inv(1 - a - b)" a,b 3`

use lagrange_good::expr::{format_series, parse_series, Variables};

fn main() {
    let mut args = std::env::args().skip(1);
    let src = args.next().unwrap_or_else(|| "(1 + x1)^3 / (2 - x2)".to_string());
    let vars = match args.next() {
        Some(names) => Variables::named(names.split(',').map(str::to_string).collect()),
        None => Ok(Variables::standard(2)),
    };
    let order: u32 = args.next().and_then(|s| s.parse().ok()).unwrap_or(4);

    let vars = match vars {
        Ok(v) => v,
        Err(e) => {
            eprintln!("bad variable list: {e}");
            std::process::exit(2);
        }
    };
    match parse_series(&src, &vars, order) {
        Ok(series) => {
            let text = format_series(&series, &vars);
            println!("input     : {src}");
            println!("canonical : {text}");
            let again = parse_series(&text, &vars, order).expect("canonical text parses");
            println!("round trip: {}", if again == series { "identical" } else { "DIFFERENT" });
        }
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(2);
        }
    }
}
