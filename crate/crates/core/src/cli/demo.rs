//! Built-in instances with expected sequences.
//!
//! The expected values come from closed forms and recurrences that never
//! touch the series engine.

use num_bigint::BigInt;

use crate::inversion::SeriesSystem;
use crate::rational::{factorial, int, Rational};
use crate::series::{MultiIndex, Series};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum DemoName {
    /// `g = x / (1 - g)`: plane trees, Catalan numbers.
    Catalan,
    /// `g = x e^g`: rooted labelled trees, `k^(k-1)/k!`.
    Cayley,
    /// `g_1 = x_1 (1 + g_2)`, `g_2 = x_2 (1 + g_1)`.
    BivariatePair,
}

/// Which computed series the fixture describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Observable {
    /// `[x^k] phi(g)`.
    PhiOfG,
    /// The Good-form left side `phi(g) / det(...)`.
    GoodLhs,
}

pub struct Demo {
    pub name: &'static str,
    pub system: SeriesSystem,
    pub observable: Observable,
    pub expected: Vec<(MultiIndex, Rational)>,
    pub description: &'static str,
}

/// `C_0 .. C_{count-1}` from `C_k = sum_i C_i C_{k-1-i}`.
pub fn catalan_numbers(count: usize) -> Vec<BigInt> {
    let mut c: Vec<BigInt> = Vec::with_capacity(count);
    for k in 0..count {
        if k == 0 {
            c.push(BigInt::from(1));
            continue;
        }
        let next = (0..k).map(|i| &c[i] * &c[k - 1 - i]).sum();
        c.push(next);
    }
    c
}

/// `k^(k-1) / k!` for `k >= 1`.
pub fn cayley_coefficient(k: u32) -> Rational {
    Rational::from_integer(BigInt::from(k).pow(k - 1)) / factorial(k)
}

pub const CATALAN_ORDER: u32 = 10;
pub const CAYLEY_ORDER: u32 = 8;
pub const CAYLEY_EXP_DEGREE: u32 = 10;
pub const BIVARIATE_ORDER: u32 = 6;

pub fn catalan_system(order: u32) -> SeriesSystem {
    let phi = Series::variable(0, 1, order).expect("order >= 1");
    let f = Series::univariate(order, (0..=order).map(|_| int(1)));
    SeriesSystem::new(phi, vec![f]).expect("well-formed")
}

/// `phi = u`, `f = sum_{j <= degree} u^j / j!`.
pub fn cayley_system(order: u32, degree: u32) -> SeriesSystem {
    let phi = Series::variable(0, 1, order).expect("order >= 1");
    let f = Series::univariate(order, (0..=degree).map(|j| factorial(j).recip()));
    SeriesSystem::new(phi, vec![f]).expect("well-formed")
}

pub fn bivariate_pair_system(order: u32) -> SeriesSystem {
    let one = Series::one(2, order);
    let x = |i| Series::variable(i, 2, order).expect("order >= 1");
    SeriesSystem::new(one.clone(), vec![&one + &x(1), &one + &x(0)]).expect("well-formed")
}

pub fn build(name: DemoName) -> Demo {
    match name {
        DemoName::Catalan => {
            let c = catalan_numbers(CATALAN_ORDER as usize);
            let expected = (0..=CATALAN_ORDER)
                .map(|k| {
                    let v = if k == 0 {
                        int(0)
                    } else {
                        Rational::from_integer(c[k as usize - 1].clone())
                    };
                    (MultiIndex::new(vec![k]), v)
                })
                .collect();
            Demo {
                name: "catalan",
                system: catalan_system(CATALAN_ORDER),
                observable: Observable::PhiOfG,
                expected,
                description: "g = x/(1-g); [x^k] g is the Catalan number C_(k-1)",
            }
        }
        DemoName::Cayley => {
            let expected = (0..=CAYLEY_ORDER)
                .map(|k| {
                    let v = if k == 0 { int(0) } else { cayley_coefficient(k) };
                    (MultiIndex::new(vec![k]), v)
                })
                .collect();
            Demo {
                name: "cayley",
                system: cayley_system(CAYLEY_ORDER, CAYLEY_EXP_DEGREE),
                observable: Observable::PhiOfG,
                expected,
                description: "g = x e^g; [x^k] g = k^(k-1)/k!",
            }
        }
        DemoName::BivariatePair => {
            // [x1^a x2^b] (1+x2)^a (1+x1)^b = C(a,b) C(b,a), i.e. 1 iff a = b
            let expected = MultiIndex::all_up_to(2, BIVARIATE_ORDER)
                .into_iter()
                .map(|k| {
                    let v = if k.get(0) == k.get(1) { int(1) } else { int(0) };
                    (k, v)
                })
                .collect();
            Demo {
                name: "bivariate-pair",
                system: bivariate_pair_system(BIVARIATE_ORDER),
                observable: Observable::GoodLhs,
                expected,
                description: "g1 = x1(1+g2), g2 = x2(1+g1); the left side is 1/(1 - x1 x2)",
            }
        }
    }
}
