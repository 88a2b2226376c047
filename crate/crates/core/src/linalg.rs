//! Exact linear algebra: sparse column echelon forms over a field, and dense
//! rational matrices.
//!
//! All pivoting is deterministic (first nonzero row of the reduced column), so
//! results never depend on hashing or thread scheduling.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::number::Rational;

pub trait Field: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Panics on zero.
    fn inv(&self) -> Self;
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        self.recip()
    }
}

/// The prime field of order `2^61 - 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp(u64);

impl Fp {
    pub const MODULUS: u64 = (1 << 61) - 1;

    pub fn new(x: u64) -> Fp {
        Fp(x % Self::MODULUS)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn from_bigint(x: &BigInt) -> Fp {
        let p = BigInt::from(Self::MODULUS);
        let mut r = x % &p;
        if r.is_negative() {
            r += &p;
        }
        Fp(r.to_u64().expect("reduced residue fits in u64"))
    }

    /// Reduction of a rational; `None` when the denominator vanishes mod p.
    pub fn from_rational(q: &Rational) -> Option<Fp> {
        let d = Fp::from_bigint(q.denom());
        if d.0 == 0 {
            return None;
        }
        Some(Fp::from_bigint(q.numer()).mul(&d.inv()))
    }

    fn pow(self, mut e: u64) -> Fp {
        let mut base = self;
        let mut acc = Fp(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

impl Field for Fp {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, other: &Self) -> Self {
        Fp::new(self.0 + other.0)
    }
    fn sub(&self, other: &Self) -> Self {
        Fp::new(self.0 + Self::MODULUS - other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        Fp(((self.0 as u128 * other.0 as u128) % Self::MODULUS as u128) as u64)
    }
    fn neg(&self) -> Self {
        Fp::new(Self::MODULUS - self.0)
    }
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero in Fp");
        self.pow(Self::MODULUS - 2)
    }
}

/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec<F> = Vec<(usize, F)>;

fn lookup<F: Field>(v: &SparseVec<F>, idx: usize) -> Option<&F> {
    v.binary_search_by_key(&idx, |(i, _)| *i).ok().map(|p| &v[p].1)
}

/// `y + a * x`.
pub fn axpy<F: Field>(y: &SparseVec<F>, a: &F, x: &SparseVec<F>) -> SparseVec<F> {
    let mut out = Vec::with_capacity(y.len() + x.len());
    let (mut i, mut j) = (0, 0);
    while i < y.len() || j < x.len() {
        let take_y = j >= x.len() || (i < y.len() && y[i].0 < x[j].0);
        let take_x = i >= y.len() || (j < x.len() && x[j].0 < y[i].0);
        if take_y {
            out.push(y[i].clone());
            i += 1;
        } else if take_x {
            let v = a.mul(&x[j].1);
            if !v.is_zero() {
                out.push((x[j].0, v));
            }
            j += 1;
        } else {
            let v = y[i].1.add(&a.mul(&x[j].1));
            if !v.is_zero() {
                out.push((y[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale<F: Field>(v: &SparseVec<F>, a: &F) -> SparseVec<F> {
    if a.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, x.mul(a))).collect()
}

struct Pivot<F> {
    row: usize,
    vec: SparseVec<F>,
    combo: SparseVec<F>,
}

/// Incrementally built column echelon form.
///
/// Columns are pushed one at a time; each pivot remembers which combination of
/// the pushed columns produced it, so the structure can solve `A c = v` for the
/// matrix `A` of pushed columns and report kernel vectors of `A`.
pub struct Echelon<F> {
    pivots: Vec<Pivot<F>>,
    columns: usize,
    track: bool,
}

/// Result of solving against an [`Echelon`].
#[derive(Clone, Debug, PartialEq)]
pub enum Solve<F> {
    /// Coefficients over the pushed columns.
    InSpan(SparseVec<F>),
    /// Nonzero residual after reduction: the vector is not in the column span.
    NotInSpan(SparseVec<F>),
}

impl<F: Field> Default for Echelon<F> {
    fn default() -> Self {
        Self::new()
    }
}

impl<F: Field> Echelon<F> {
    pub fn new() -> Self {
        Echelon { pivots: Vec::new(), columns: 0, track: true }
    }

    /// Rank-only mode: no combinations are kept, `solve` coefficients are empty.
    pub fn rank_only() -> Self {
        Echelon { pivots: Vec::new(), columns: 0, track: false }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn columns(&self) -> usize {
        self.columns
    }

    pub fn nullity(&self) -> usize {
        self.columns - self.pivots.len()
    }

    fn reduce(&self, mut v: SparseVec<F>) -> (SparseVec<F>, SparseVec<F>) {
        let mut combo = Vec::new();
        for p in &self.pivots {
            if v.is_empty() {
                break;
            }
            if let Some(t) = lookup(&v, p.row).cloned() {
                v = axpy(&v, &t.neg(), &p.vec);
                if self.track {
                    combo = axpy(&combo, &t, &p.combo);
                }
            }
        }
        (v, combo)
    }

    /// Adds a column. Returns a kernel vector (over pushed columns) when the
    /// column is dependent on the earlier ones.
    pub fn push(&mut self, col: SparseVec<F>) -> Option<SparseVec<F>> {
        let j = self.columns;
        self.columns += 1;
        let (r, c) = self.reduce(col);
        let combo = if self.track { axpy(&vec![(j, F::one())], &F::one().neg(), &c) } else { Vec::new() };
        if r.is_empty() {
            return Some(combo);
        }
        let (row, lead) = r[0].clone();
        let inv = lead.inv();
        self.pivots.push(Pivot { row, vec: scale(&r, &inv), combo: scale(&combo, &inv) });
        None
    }

    pub fn solve(&self, v: SparseVec<F>) -> Solve<F> {
        let (r, c) = self.reduce(v);
        if r.is_empty() {
            Solve::InSpan(c)
        } else {
            Solve::NotInSpan(r)
        }
    }

    pub fn contains(&self, v: SparseVec<F>) -> bool {
        matches!(self.solve(v), Solve::InSpan(_))
    }
}

/// Rank of a list of sparse columns.
pub fn rank<F: Field>(columns: impl IntoIterator<Item = SparseVec<F>>) -> usize {
    let mut e = Echelon::rank_only();
    for c in columns {
        e.push(c);
    }
    e.rank()
}

/// Dense matrix of exact rationals, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![<Rational as Zero>::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = <Rational as One>::one();
        }
        m
    }

    pub fn scalar(n: usize, c: &Rational) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    /// Builds a matrix column by column.
    pub fn from_columns(rows: usize, columns: &[SparseVec<Rational>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, x) in col {
                m[(*i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> SparseVec<Rational> {
        (0..self.rows).filter(|&i| !Zero::is_zero(&self[(i, j)])).map(|i| (i, self[(i, j)].clone())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.rows)
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = &self[(i, t)];
                if Zero::is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(t, j)];
                    if !Zero::is_zero(b) {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: &Rational) -> QMatrix {
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    /// First entry (row, col) where the two matrices differ.
    pub fn first_difference(&self, other: &QMatrix) -> Option<(usize, usize)> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Some((0, 0));
        }
        (0..self.data.len()).find(|&p| self.data[p] != other.data[p]).map(|p| (p / self.cols, p % self.cols))
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    pub fn entries(&self) -> impl Iterator<Item = &Rational> {
        self.data.iter()
    }
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| crate::number::format_rational(&self[(i, j)])).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::{rat, rat_frac};

    fn q(v: &[(usize, i64)]) -> SparseVec<Rational> {
        v.iter().map(|&(i, x)| (i, rat(x))).collect()
    }

    #[test]
    fn fp_arithmetic() {
        let a = Fp::new(12345);
        assert_eq!(a.mul(&a.inv()), Fp::one());
        assert_eq!(a.add(&a.neg()), Fp::zero());
        assert_eq!(Fp::from_rational(&rat_frac(1, 2)).unwrap().mul(&Fp::new(2)), Fp::one());
        assert_eq!(Fp::from_rational(&rat(-1)).unwrap(), Fp::new(Fp::MODULUS - 1));
    }

    #[test]
    fn echelon_solves_and_detects_dependence() {
        let mut e = Echelon::new();
        assert!(e.push(q(&[(0, 1), (1, 1)])).is_none());
        assert!(e.push(q(&[(1, 1), (2, 1)])).is_none());
        let kernel = e.push(q(&[(0, 1), (1, 2), (2, 1)])).expect("dependent");
        assert_eq!(kernel, q(&[(0, -1), (1, -1), (2, 1)]));
        assert_eq!(e.rank(), 2);
        assert_eq!(e.nullity(), 1);

        match e.solve(q(&[(0, 2), (1, 5), (2, 3)])) {
            Solve::InSpan(c) => assert_eq!(c, q(&[(0, 2), (1, 3)])),
            other => panic!("{other:?}"),
        }
        assert!(!e.contains(q(&[(0, 1)])));
    }

    #[test]
    fn rank_over_fp_matches_rationals() {
        let cols = vec![q(&[(0, 2), (1, 4)]), q(&[(0, 1), (1, 2)]), q(&[(2, 3)])];
        let fp: Vec<SparseVec<Fp>> = cols.iter().map(|c| c.iter().map(|(i, x)| (*i, Fp::from_rational(x).unwrap())).collect()).collect();
        assert_eq!(rank(cols), 2);
        assert_eq!(rank(fp), 2);
    }

    #[test]
    fn matrix_products() {
        let mut a = QMatrix::zeros(2, 2);
        a[(0, 1)] = rat(1);
        a[(1, 0)] = rat(1);
        assert!(a.mul(&a).is_identity());
        assert_eq!(a.trace(), rat(0));
        assert_eq!(a.first_difference(&QMatrix::identity(2)), Some((0, 0)));
    }
}
