use std::cmp::Ordering;
use std::fmt;

/// Exponent vector `(k_1, ..., k_n)` of the monomial `x_1^k_1 ... x_n^k_n`.
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// of `x_1`, then `x_2`, and so on, with larger leading exponents sorting
/// first inside a degree. Iterating a sorted collection therefore yields
/// `1, x1, x2, x1^2, x1*x2, x2^2, ...`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    degree: u32,
    exponents: Vec<u32>,
}

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        let degree = exponents.iter().sum();
        MultiIndex { degree, exponents }
    }

    /// The all-zeros index in `nvars` variables.
    pub fn zero(nvars: usize) -> Self {
        MultiIndex {
            degree: 0,
            exponents: vec![0; nvars],
        }
    }

    /// `e_var`: exponent 1 at position `var` (zero-based), 0 elsewhere.
    pub fn unit(nvars: usize, var: usize) -> Self {
        let mut exponents = vec![0; nvars];
        exponents[var] = 1;
        MultiIndex {
            degree: 1,
            exponents,
        }
    }

    pub fn nvars(&self) -> usize {
        self.exponents.len()
    }

    /// Total degree `|k|`.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn get(&self, var: usize) -> u32 {
        self.exponents[var]
    }

    pub fn is_zero(&self) -> bool {
        self.degree == 0
    }

    /// Componentwise sum, i.e. the index of the product of two monomials.
    pub fn plus(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.nvars(), other.nvars());
        MultiIndex {
            degree: self.degree + other.degree,
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// `self` with the exponent of `var` lowered by one, if it is positive.
    pub(crate) fn lowered(&self, var: usize) -> Option<MultiIndex> {
        if self.exponents[var] == 0 {
            return None;
        }
        let mut exponents = self.exponents.clone();
        exponents[var] -= 1;
        Some(MultiIndex {
            degree: self.degree - 1,
            exponents,
        })
    }

    pub(crate) fn raised(&self, var: usize) -> MultiIndex {
        let mut exponents = self.exponents.clone();
        exponents[var] += 1;
        MultiIndex {
            degree: self.degree + 1,
            exponents,
        }
    }

    /// True when every exponent of `self` is at most the matching exponent
    /// of `bound`, i.e. the monomial of `self` divides that of `bound`.
    pub fn divides(&self, bound: &MultiIndex) -> bool {
        self.degree <= bound.degree
            && self
                .exponents
                .iter()
                .zip(&bound.exponents)
                .all(|(a, b)| a <= b)
    }

    /// Reorders exponents so that position `perm[i]` of the result holds
    /// exponent `i` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> MultiIndex {
        let mut exponents = vec![0; self.nvars()];
        for (i, &e) in self.exponents.iter().enumerate() {
            exponents[perm[i]] = e;
        }
        MultiIndex {
            degree: self.degree,
            exponents,
        }
    }

    /// Every index in `nvars` variables with total degree at most
    /// `max_degree`, in graded-lexicographic order.
    pub fn all_up_to(nvars: usize, max_degree: u32) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        for degree in 0..=max_degree {
            let mut current = vec![0; nvars];
            compositions(degree, 0, &mut current, &mut out);
        }
        out
    }

    /// `C(max_degree + nvars, nvars)`, the length of [`MultiIndex::all_up_to`].
    pub fn count_up_to(nvars: usize, max_degree: u32) -> u64 {
        let mut acc: u64 = 1;
        for i in 1..=nvars as u64 {
            acc = acc * (max_degree as u64 + i) / i;
        }
        acc
    }
}

fn compositions(remaining: u32, pos: usize, current: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
    let nvars = current.len();
    if nvars == 0 {
        if remaining == 0 {
            out.push(MultiIndex::new(Vec::new()));
        }
        return;
    }
    if pos + 1 == nvars {
        current[pos] = remaining;
        out.push(MultiIndex::new(current.clone()));
        return;
    }
    for e in (0..=remaining).rev() {
        current[pos] = e;
        compositions(remaining - e, pos + 1, current, out);
    }
    current[pos] = 0;
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| other.exponents.cmp(&self.exponents))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.exponents.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(exponents: Vec<u32>) -> Self {
        MultiIndex::new(exponents)
    }
}

impl<const N: usize> From<[u32; N]> for MultiIndex {
    fn from(exponents: [u32; N]) -> Self {
        MultiIndex::new(exponents.to_vec())
    }
}
