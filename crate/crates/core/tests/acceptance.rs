//! Exit criteria. Each test prints one `criterion N: PASS|FAIL` line.
//!
//! Run with `cargo test -p lagrange-good --test acceptance -- --nocapture
//! --test-threads 1` to see the lines in order.

mod common;

use std::process::Command;
use std::time::Instant;

use lagrange_good::cli::demo::{catalan_system, cayley_system, bivariate_pair_system};
use lagrange_good::expr::{format_series, parse_series, Variables};
use lagrange_good::inversion::{
    classic_lagrange_check, lhs_series, phi_for_plain_composition, rhs_coefficient,
    solve_fixed_point, verify_identity,
};
use lagrange_good::oracle::compare_partial_sums;
use lagrange_good::rational::{factorial, int, Rational};
use lagrange_good::{MultiIndex, Series, SeriesSystem};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;

use common::*;

fn verdict(criterion: u32, pass: bool, detail: &str) {
    println!(
        "criterion {criterion}: {} - {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
}

fn at(k: u32) -> MultiIndex {
    MultiIndex::new(vec![k])
}

/// Checks one univariate fixture against every route that should produce it.
/// Returns a list of failures.
fn univariate_fixture(
    sys: &SeriesSystem,
    expected: &[Rational],
    plain_good: &[Rational],
) -> Vec<String> {
    let order = sys.order();
    let mut failures = Vec::new();

    let plain = verify_identity(sys);
    if !plain.holds() {
        failures.push(format!("{} Good-form mismatches for phi", plain.mismatches.len()));
    }
    let g = solve_fixed_point(sys);
    if !g.residual_ok {
        failures.push("fixed-point residual nonzero".into());
    }
    let phi_g = sys.phi().compose(&g.g).unwrap();

    let psi = phi_for_plain_composition(&sys.f()[0], sys.phi()).unwrap();
    let weighted = SeriesSystem::new(psi, sys.f().to_vec()).unwrap();
    let weighted_report = verify_identity(&weighted);
    if !weighted_report.holds() {
        failures.push(format!(
            "{} Good-form mismatches for the reweighted phi",
            weighted_report.mismatches.len()
        ));
    }

    for k in 1..=order {
        let want = &expected[k as usize];
        let checks = [
            ("[x^k] phi(g)", phi_g.coefficient(&at(k)).unwrap()),
            ("reweighted Good lhs", weighted_report.lhs.coefficient(&at(k)).unwrap()),
            ("reweighted Good rhs", rhs_coefficient(&weighted, &at(k)).unwrap()),
        ];
        for (label, got) in checks {
            if &got != want {
                failures.push(format!("k={k}: {label} = {got}, expected {want}"));
            }
        }
        let (composed, classical) = classic_lagrange_check(&sys.f()[0], sys.phi(), k).unwrap();
        if &composed != want || &classical != want {
            failures.push(format!("k={k}: classical sides ({composed}, {classical}) != {want}"));
        }
        let plain_lhs = plain.lhs.coefficient(&at(k)).unwrap();
        let plain_rhs = rhs_coefficient(sys, &at(k)).unwrap();
        if plain_lhs != plain_good[k as usize] || plain_rhs != plain_good[k as usize] {
            failures.push(format!(
                "k={k}: Good sides for phi ({plain_lhs}, {plain_rhs}) != {}",
                plain_good[k as usize]
            ));
        }
    }
    failures
}

#[test]
fn criterion_1_main_identity_random_suite() {
    let start = Instant::now();
    let mut rng = rng(0x1a6_0001);
    let mut systems = 0;
    let mut coefficients = 0u64;
    let mut failures = Vec::new();
    for case in 0..210 {
        let n = [1, 2, 3][case % 3];
        let order = 4 + ((case / 3) % 5) as u32;
        let sys = random_system(&mut rng, n, order, 3);
        let report = verify_identity(&sys);
        systems += 1;
        coefficients += report.checked;
        if report.checked != MultiIndex::count_up_to(n, order) {
            failures.push(format!("case {case}: checked {}", report.checked));
        }
        if !report.holds() {
            failures.push(format!("case {case}: {} mismatches", report.mismatches.len()));
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    let pass = failures.is_empty() && systems >= 200 && elapsed < 60.0;
    verdict(
        1,
        pass,
        &format!("{systems} systems, {coefficients} coefficients, {elapsed:.1}s, failures: {failures:?}"),
    );
    assert!(pass);
}

#[test]
fn criterion_2_catalan_fixture() {
    let order = 10;
    // convolution recurrence C_k = sum C_i C_{k-1-i}
    let mut catalan: Vec<BigInt> = vec![BigInt::from(1)];
    for k in 1..order as usize {
        let next = (0..k).map(|i| &catalan[i] * &catalan[k - 1 - i]).sum();
        catalan.push(next);
    }
    let expected: Vec<Rational> = (0..=order as usize)
        .map(|k| if k == 0 { int(0) } else { Rational::from_integer(catalan[k - 1].clone()) })
        .collect();
    // [x^k] u (1-u)^-k = C(2k-2, k-1)
    let plain_good: Vec<Rational> = (0..=order as u64)
        .map(|k| if k == 0 { int(0) } else { int(binomial(2 * k - 2, k - 1) as i64) })
        .collect();
    let failures = univariate_fixture(&catalan_system(order), &expected, &plain_good);
    let pass = failures.is_empty();
    verdict(2, pass, &format!("C_0..C_9 = {catalan:?}; failures: {failures:?}"));
    assert!(pass);
}

#[test]
fn criterion_3_cayley_fixture() {
    let order = 8;
    let power = |k: u32| Rational::from_integer(BigInt::from(k).pow(k - 1));
    let expected: Vec<Rational> = (0..=order)
        .map(|k| if k == 0 { int(0) } else { power(k) / factorial(k) })
        .collect();
    // [x^k] u e^(ku) = k^(k-1)/(k-1)!
    let plain_good: Vec<Rational> = (0..=order)
        .map(|k| if k == 0 { int(0) } else { power(k) / factorial(k - 1) })
        .collect();
    let failures = univariate_fixture(&cayley_system(order, 10), &expected, &plain_good);
    let pass = failures.is_empty();
    let shown: Vec<String> = expected.iter().map(Rational::to_string).collect();
    verdict(3, pass, &format!("k^(k-1)/k! = {shown:?}; failures: {failures:?}"));
    assert!(pass);
}

#[test]
fn criterion_4_classical_form_coherence() {
    let mut rng = rng(0x1a6_0004);
    let mut failures = Vec::new();
    let mut checked = 0;
    for case in 0..50 {
        let order = rng.gen_range(4..=8);
        let f = with_constant(&random_poly(&mut rng, 1, order, 3, 0.6), nonzero_rational(&mut rng));
        let phi = without_constant(&random_poly(&mut rng, 1, order, 3, 0.7));
        let psi = phi_for_plain_composition(&f, &phi).unwrap();
        let good = lhs_series(&SeriesSystem::new(psi, vec![f.clone()]).unwrap());
        for k in 1..=order {
            let (composed, classical) = classic_lagrange_check(&f, &phi, k).unwrap();
            let good_k = good.coefficient(&at(k)).unwrap();
            checked += 1;
            if composed != classical || composed != good_k {
                failures.push(format!("case {case}, k={k}: {composed} / {classical} / {good_k}"));
            }
        }
    }
    let pass = failures.is_empty();
    verdict(4, pass, &format!("50 systems, {checked} coefficients; failures: {failures:?}"));
    assert!(pass);
}

#[test]
fn criterion_5_analytic_oracle_agreement() {
    let orders = [2, 4, 6, 8];
    let catalan = SeriesSystem::new(
        Series::one(1, 12),
        vec![Series::univariate(12, (0..=12).map(|_| int(1)))],
    )
    .unwrap();
    let cases = [
        ("catalan", catalan, vec![0.1]),
        ("bivariate-pair", bivariate_pair_system(8), vec![0.05, 0.05]),
    ];
    let mut all_pass = true;
    let mut details = Vec::new();
    for (name, sys, x) in cases {
        let table = compare_partial_sums(&sys, &x, &orders).unwrap();
        let xmax = table.max_abs_x();
        let monotone = table.is_non_increasing(1e-10);
        let final_error = table.final_error().unwrap();
        let slope = table.log_error_slope().unwrap();
        let pass = monotone && final_error <= 1e-6 && slope <= xmax.ln() + 0.5;
        all_pass &= pass;
        let errors: Vec<String> = table.rows.iter().map(|r| format!("{:.3e}", r.abs_error)).collect();
        details.push(format!(
            "{name} [{}]: errors {errors:?}, non-increasing {monotone}, final {final_error:.3e} (<= 1e-6), \
             slope {slope:.3} (<= {:.3})",
            if pass { "ok" } else { "FAIL" },
            xmax.ln() + 0.5
        ));
    }
    verdict(5, all_pass, &details.join("; "));
    assert!(all_pass, "{}", details.join("\n"));
}

#[test]
fn criterion_6_algebra_laws() {
    let mut rng = rng(0x1a6_0006);
    let instances = 120;
    let mut failures: Vec<String> = Vec::new();
    let mut check = |law: &str, ok: bool, case: usize| {
        if !ok {
            failures.push(format!("{law} #{case}"));
        }
    };
    for case in 0..instances {
        let n = rng.gen_range(1..=3);
        let order = rng.gen_range(2..=5);
        let a = random_poly(&mut rng, n, order, order, 0.4);
        let b = random_poly(&mut rng, n, order, order, 0.4);
        let c = random_poly(&mut rng, n, order, order, 0.4);

        check("add commutes", &a + &b == &b + &a, case);
        check("mul commutes", &a * &b == &b * &a, case);
        check("add associates", &(&a + &b) + &c == &a + &(&b + &c), case);
        check("mul associates", &(&a * &b) * &c == &a * &(&b * &c), case);
        check("distributes", &a * &(&b + &c) == &(&a * &b) + &(&a * &c), case);
        for s in [&a, &b, &c] {
            check("canonical", s.is_canonical(), case);
        }

        let lower = rng.gen_range(0..=order);
        check(
            "truncation homomorphism",
            (&a * &b).truncate(lower) == &a.truncate(lower) * &b.truncate(lower),
            case,
        );

        let unit = with_constant(&a, nonzero_rational(&mut rng));
        let inv = unit.reciprocal().unwrap();
        check("reciprocal round-trip", &unit * &inv == Series::one(n, order), case);

        let j = rng.gen_range(0..n);
        let d = |s: &Series| s.partial_derivative(j).unwrap();
        check("product rule", d(&(&a * &b)) == &(&d(&a) * &b) + &(&a * &d(&b)), case);
        if order >= 2 {
            let i = rng.gen_range(0..n);
            let di = |s: &Series| s.partial_derivative(i).unwrap();
            check("derivatives commute", di(&d(&a)) == d(&di(&a)), case);
        }

        let phi = random_poly(&mut rng, n, order, order, 0.4);
        let g: Vec<Series> = (0..n)
            .map(|_| without_constant(&random_poly(&mut rng, n, order, order, 0.4)))
            .collect();
        let lhs = d(&phi.compose(&g).unwrap());
        let mut rhs = Series::zero(n, order - 1);
        for (i, gi) in g.iter().enumerate() {
            let outer = phi.partial_derivative(i).unwrap().compose(&g).unwrap();
            rhs = &rhs + &(&outer * &d(gi));
        }
        check("chain rule", lhs == rhs && lhs.order() == order - 1, case);

        for dim in [2, 3] {
            let m = random_matrix(&mut rng, dim, n, order);
            check("Leibniz determinant", m.determinant() == leibniz_determinant(&m), case);
        }
    }
    let pass = failures.is_empty();
    verdict(
        6,
        pass,
        &format!("{instances} instances per law; failures: {failures:?}"),
    );
    assert!(pass);
}

fn random_expression(rng: &mut impl Rng, n: usize, depth: u32) -> String {
    let var = |rng: &mut dyn rand::RngCore| format!("x{}", rng.gen_range(1..=n));
    if depth == 0 || rng.gen_bool(0.25) {
        return match rng.gen_range(0..3) {
            0 => rng.gen_range(0..10).to_string(),
            1 => format!("{}/{}", rng.gen_range(0..10), rng.gen_range(1..10)),
            _ => var(rng),
        };
    }
    let sub = |rng: &mut _| random_expression(rng, n, depth - 1);
    match rng.gen_range(0..9) {
        0 => format!("({} + {})", sub(rng), sub(rng)),
        1 => format!("({} - {})", sub(rng), sub(rng)),
        2 => format!("{} * {}", sub(rng), sub(rng)),
        3 => format!("({})^{}", sub(rng), rng.gen_range(0..4)),
        4 => format!("inv({} + {}*({}))", rng.gen_range(1..5), var(rng), sub(rng)),
        5 => format!("({})/{}", sub(rng), rng.gen_range(1..7)),
        6 => format!("({})/({} - {}*({}))", sub(rng), rng.gen_range(1..5), var(rng), sub(rng)),
        7 => format!("-({})", sub(rng)),
        _ => format!("{}*{}", sub(rng), var(rng)),
    }
}

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lagrange-good"))
}

#[test]
fn criterion_7_cli_contract() {
    let mut failures = Vec::new();

    let mut rng = rng(0x1a6_0007);
    for case in 0..100 {
        let n = rng.gen_range(1..=3);
        let order = rng.gen_range(1..=4);
        let vars = if rng.gen_bool(0.3) {
            let mut names: Vec<String> = ["a", "b", "c", "w"].iter().map(|s| s.to_string()).collect();
            names.shuffle(&mut rng);
            names.truncate(n);
            Variables::named(names).unwrap()
        } else {
            Variables::standard(n)
        };
        let src = random_expression(&mut rng, n, 4);
        let first = match parse_series(&src, &vars, order) {
            Ok(s) => s,
            Err(e) => {
                failures.push(format!("round-trip #{case}: `{src}` failed to parse: {e}"));
                continue;
            }
        };
        let text = format_series(&first, &vars);
        match parse_series(&text, &vars, order) {
            Ok(second) if second == first && second.is_canonical() => {}
            other => failures.push(format!("round-trip #{case}: `{src}` -> `{text}` -> {other:?}")),
        }
    }

    for demo in ["catalan", "cayley", "bivariate-pair"] {
        let out = binary().args(["demo", demo, "--format", "json"]).output().unwrap();
        if out.status.code() != Some(0) {
            failures.push(format!("demo {demo} exited {:?}", out.status.code()));
        }
        match serde_json::from_slice::<serde_json::Value>(&out.stdout) {
            Ok(doc) => {
                let errors = schema_errors(&doc);
                if !errors.is_empty() {
                    failures.push(format!("demo {demo} schema: {errors:?}"));
                }
            }
            Err(e) => failures.push(format!("demo {demo}: invalid JSON: {e}")),
        }
    }

    let catalan = ["-n", "1", "-N", "6", "--phi", "x1", "--f", "1/(1-x1)"];
    let paths: [(&str, Vec<&str>, i32); 4] = [
        ("success", [&["verify"][..], &catalan].concat(), 0),
        ("mismatch", [&["verify"][..], &catalan, &["--sabotage", "rhs"]].concat(), 1),
        ("parse error", vec!["verify", "-n", "1", "-N", "3", "--phi", "(1 +", "--f", "1"], 2),
        (
            "non-convergence",
            vec!["numeric-check", "-n", "1", "-N", "8", "--phi", "1", "--f", "1/(1-x1)", "--x", "0.9"],
            3,
        ),
    ];
    for (label, args, want) in paths {
        let out = binary().args(&args).output().unwrap();
        if out.status.code() != Some(want) {
            failures.push(format!("{label}: exit {:?}, expected {want}", out.status.code()));
        }
    }

    let pass = failures.is_empty();
    verdict(
        7,
        pass,
        &format!("100 round-trips, 3 demo schemas, 4 exit-code paths; failures: {failures:?}"),
    );
    assert!(pass);
}
