//! Tableau fillings and the chain `λ′ → λ/(m) → λ → cup diagram`.

use serde::Serialize;

use crate::diagrams::weight::{weight_to_cup, DeltaWeight, Symbol};
use crate::diagrams::CupDiagram;
use crate::error::{Error, Result};
use crate::params::{Mode, ShapeParams};

/// Shape of a two-row filling.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FillingShape {
    /// Rows of lengths `(a, b)`.
    Straight(usize, usize),
    /// `(a, b) / (c)`: the first `c` cells of row one are removed.
    Skew(usize, usize, usize),
}

impl FillingShape {
    fn row_offsets(self) -> [usize; 2] {
        match self {
            FillingShape::Straight(..) => [0, 0],
            FillingShape::Skew(_, _, c) => [c, 0],
        }
    }

    fn row_lengths(self) -> [usize; 2] {
        match self {
            FillingShape::Straight(a, b) => [a, b],
            FillingShape::Skew(a, b, c) => [a - c, b],
        }
    }
}

/// A filling of a two-row (skew) shape. Row one is the top row; only present
/// cells are stored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkewFilling {
    pub shape: FillingShape,
    pub rows: [Vec<usize>; 2],
}

impl SkewFilling {
    pub fn new(shape: FillingShape, rows: [Vec<usize>; 2]) -> Result<Self> {
        if shape.row_lengths() != [rows[0].len(), rows[1].len()] {
            return Err(Error::Parse(format!("row lengths do not match shape {shape:?}")));
        }
        let f = SkewFilling { shape, rows };
        if !f.is_decreasing() {
            return Err(Error::Parse(format!("filling {:?} is not decreasing", f.rows)));
        }
        Ok(f)
    }

    /// Label at 1-indexed column `col` of `row` (0 or 1), if the cell exists.
    pub fn cell(&self, row: usize, col: usize) -> Option<usize> {
        let off = self.shape.row_offsets()[row];
        col.checked_sub(off + 1).and_then(|i| self.rows[row].get(i).copied())
    }

    /// Strictly decreasing along rows and down columns.
    pub fn is_decreasing(&self) -> bool {
        let rows_ok = self.rows.iter().all(|r| r.windows(2).all(|w| w[0] > w[1]));
        let width = self.shape.row_offsets()[1] + self.rows[1].len();
        let cols_ok = (1..=width).all(|c| match (self.cell(0, c), self.cell(1, c)) {
            (Some(top), Some(bottom)) => top > bottom,
            _ => true,
        });
        rows_ok && cols_ok
    }
}

/// One link of the chain: the straight filling of `λ′`, the skew filling of
/// `λ/(m)`, the filling of `λ`, and the cup diagram whose left endpoints are
/// the second row of the `λ` filling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FillingChain {
    pub lambda_prime: SkewFilling,
    pub skew: SkewFilling,
    pub lambda: SkewFilling,
    pub diagram: CupDiagram,
}

/// Materializes the bijection between fillings and Δ-cup diagrams, ordered by
/// the canonical order of the diagrams.
pub fn filling_chain(params: ShapeParams) -> Result<Vec<FillingChain>> {
    params.validate(Mode::Strict)?;
    let ShapeParams { n, k, m } = params;
    let left = n - m;
    if left > 40 {
        return Err(Error::SizeCap(format!("filling enumeration needs n - m <= 40, got {left}")));
    }
    let skew_shape = FillingShape::Skew(n - k, k, m);
    let mut out = Vec::new();
    // Row two of the skew filling is a k-subset of 1..=left; row one is its complement.
    for mask in 0u64..(1u64 << left) {
        if mask.count_ones() as usize != k {
            continue;
        }
        let mut row1: Vec<usize> = (1..=left).rev().filter(|v| mask >> (v - 1) & 1 == 0).collect();
        let row2: Vec<usize> = (1..=left).rev().filter(|v| mask >> (v - 1) & 1 == 1).collect();
        let Ok(skew) = SkewFilling::new(skew_shape, [row1.clone(), row2.clone()]) else {
            continue;
        };
        let lambda_prime = SkewFilling::new(FillingShape::Straight(n - k - m, k - m), [row1.clone(), row2[m..].to_vec()])?;
        let mut full_row1: Vec<usize> = (left + 1..=n).rev().collect();
        full_row1.append(&mut row1);
        let lambda = SkewFilling::new(FillingShape::Straight(n - k, k), [full_row1, row2.clone()])?;
        let mut symbols = vec![Symbol::Up; n];
        for &v in &row2 {
            symbols[v - 1] = Symbol::Down;
        }
        let diagram = weight_to_cup(&DeltaWeight::new(symbols, m)?);
        if diagram.cup_count() != k {
            return Err(Error::Internal(format!("filling {:?} does not give {k} cups", lambda.rows)));
        }
        out.push(FillingChain { lambda_prime, skew, lambda, diagram });
    }
    out.sort_by(|a, b| a.diagram.cmp(&b.diagram));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_example_chain() {
        let chain = filling_chain(ShapeParams::strict(6, 3, 2).unwrap()).unwrap();
        let mut primes: Vec<_> = chain.iter().map(|c| c.lambda_prime.rows.clone()).collect();
        primes.sort();
        assert_eq!(primes, vec![[vec![2], vec![1]], [vec![3], vec![1]], [vec![4], vec![1]]]);
        let a = chain.iter().find(|c| c.lambda.rows == [vec![6, 5, 2], vec![4, 3, 1]]).unwrap();
        assert_eq!(a.diagram.cups(), vec![(1, 2), (3, 6), (4, 5)]);
        assert_eq!(a.skew.rows, [vec![2], vec![4, 3, 1]]);
    }

    #[test]
    fn trivial_chain() {
        let chain = filling_chain(ShapeParams::strict(4, 0, 0).unwrap()).unwrap();
        assert_eq!(chain.len(), 1);
        assert!(chain[0].lambda.rows[1].is_empty());
        assert_eq!(chain[0].diagram.rays(), vec![1, 2, 3, 4]);
    }

    #[test]
    fn decreasing_check() {
        let f = SkewFilling { shape: FillingShape::Straight(2, 2), rows: [vec![4, 2], vec![3, 1]] };
        assert!(f.is_decreasing());
        let g = SkewFilling { shape: FillingShape::Straight(2, 2), rows: [vec![4, 1], vec![3, 2]] };
        assert!(!g.is_decreasing());
    }
}
