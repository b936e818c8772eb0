#![allow(dead_code)]

use lagrange_good::rational::{int, rat, Rational};
use lagrange_good::{MultiIndex, Series, SeriesMatrix, SeriesSystem};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `p/q` with `p, q` in `[-5, 5]`, `q != 0`.
pub fn small_rational(rng: &mut impl Rng) -> Rational {
    let p = rng.gen_range(-5..=5);
    let mut q = 0;
    while q == 0 {
        q = rng.gen_range(-5..=5);
    }
    rat(p, q)
}

pub fn nonzero_rational(rng: &mut impl Rng) -> Rational {
    loop {
        let r = small_rational(rng);
        if r != int(0) {
            return r;
        }
    }
}

/// Each monomial of degree `<= max_degree` is present with probability
/// `density`.
pub fn random_poly(
    rng: &mut impl Rng,
    n: usize,
    order: u32,
    max_degree: u32,
    density: f64,
) -> Series {
    let mut terms: Vec<(MultiIndex, Rational)> = Vec::new();
    for k in MultiIndex::all_up_to(n, max_degree) {
        if rng.gen_bool(density) {
            terms.push((k, small_rational(rng)));
        }
    }
    Series::from_terms(n, order, terms).unwrap()
}

pub fn with_constant(s: &Series, c: Rational) -> Series {
    let shift = c - s.constant_term();
    s + &Series::constant(shift, s.nvars(), s.order())
}

pub fn without_constant(s: &Series) -> Series {
    with_constant(s, int(0))
}

pub fn random_system(rng: &mut impl Rng, n: usize, order: u32, degree: u32) -> SeriesSystem {
    let phi = random_poly(rng, n, order, degree, 0.5);
    let f = (0..n).map(|_| random_poly(rng, n, order, degree, 0.5)).collect();
    SeriesSystem::new(phi, f).unwrap()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn parity(p: &[usize]) -> bool {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 1
}

/// `sum_sigma sgn(sigma) prod_i m[i][sigma(i)]`.
pub fn leibniz_determinant(m: &SeriesMatrix) -> Series {
    let n = m.dim();
    let first = m.get(0, 0);
    let mut acc = Series::zero(first.nvars(), first.order());
    for p in permutations(n) {
        let mut prod = Series::one(first.nvars(), first.order());
        for (i, &j) in p.iter().enumerate() {
            prod = &prod * m.get(i, j);
        }
        acc = if parity(&p) { &acc - &prod } else { &acc + &prod };
    }
    acc
}

pub fn random_matrix(rng: &mut impl Rng, dim: usize, n: usize, order: u32) -> SeriesMatrix {
    let rows = (0..dim)
        .map(|_| (0..dim).map(|_| random_poly(rng, n, order, 2, 0.4)).collect())
        .collect();
    SeriesMatrix::from_rows(rows).unwrap()
}

pub fn binomial(n: u64, r: u64) -> u64 {
    (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Frozen schema for `--format json` output.
pub const REPORT_SCHEMA: &str = include_str!("../../schema/report.schema.json");

pub fn schema_errors(doc: &serde_json::Value) -> Vec<String> {
    let schema: serde_json::Value = serde_json::from_str(REPORT_SCHEMA).unwrap();
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    validator.iter_errors(doc).map(|e| e.to_string()).collect()
}
