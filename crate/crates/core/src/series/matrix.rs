use std::collections::HashMap;

use num_traits::One;

use super::{Result, Series, SeriesError};

/// Square matrix of series sharing one `(nvars, order)` shape.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesMatrix {
    dim: usize,
    entries: Vec<Series>,
}

impl SeriesMatrix {
    pub fn from_rows(rows: Vec<Vec<Series>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 || rows.iter().any(|r| r.len() != dim) {
            return Err(SeriesError::MatrixShape);
        }
        let entries: Vec<Series> = rows.into_iter().flatten().collect();
        let (nvars, order) = (entries[0].nvars(), entries[0].order());
        if entries
            .iter()
            .any(|e| e.nvars() != nvars || e.order() != order)
        {
            return Err(SeriesError::MatrixShape);
        }
        Ok(SeriesMatrix { dim, entries })
    }

    pub fn identity(dim: usize, nvars: usize, order: u32) -> Self {
        let entries = (0..dim * dim)
            .map(|p| {
                if p / dim == p % dim {
                    Series::one(nvars, order)
                } else {
                    Series::zero(nvars, order)
                }
            })
            .collect();
        SeriesMatrix { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &Series {
        &self.entries[row * self.dim + col]
    }

    /// Exact determinant by cofactor expansion along the first row of each
    /// minor. Minors are keyed by their column set, so each one is expanded
    /// only once.
    pub fn determinant(&self) -> Series {
        let full = (1u32 << self.dim) - 1;
        let mut memo = HashMap::new();
        self.minor_det(full, &mut memo)
    }

    /// Determinant of the minor using the last `popcount(cols)` rows and the
    /// columns set in `cols`.
    fn minor_det(&self, cols: u32, memo: &mut HashMap<u32, Series>) -> Series {
        if let Some(d) = memo.get(&cols) {
            return d.clone();
        }
        let first = self.get(0, 0);
        let (nvars, order) = (first.nvars(), first.order());
        let size = cols.count_ones() as usize;
        let row = self.dim - size;
        let det = if size == 1 {
            self.get(row, cols.trailing_zeros() as usize).clone()
        } else {
            let mut acc = Series::zero(nvars, order);
            for (position, col) in (0..self.dim).filter(|c| cols & (1 << c) != 0).enumerate() {
                let entry = self.get(row, col);
                if entry.is_zero() {
                    continue;
                }
                let minor = self.minor_det(cols & !(1 << col), memo);
                let term = entry * &minor;
                acc = if position % 2 == 0 {
                    &acc + &term
                } else {
                    &acc - &term
                };
            }
            acc
        };
        memo.insert(cols, det.clone());
        det
    }

    /// True when the matrix has constant term exactly the identity.
    pub fn is_unipotent_at_zero(&self) -> bool {
        (0..self.dim).all(|i| {
            (0..self.dim).all(|j| {
                let c = self.get(i, j).constant_term();
                if i == j {
                    c.is_one()
                } else {
                    num_traits::Zero::is_zero(&c)
                }
            })
        })
    }
}
