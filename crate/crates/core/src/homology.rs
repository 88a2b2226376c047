//! Line-diagram model of `H_*((S²)^{n-m})` and the classes `L_α`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::diagrams::{enumerate_weights, DeltaWeight};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, Solve, SparseVec};
use crate::number::{format_rational, Rational};
use crate::params::{Mode, ShapeParams};

/// Largest ambient size supported by the bitmask encoding of subsets.
pub const MAX_SIZE: usize = 63;

/// A subset of `{1..=63}` as a bitmask (bit `i - 1` for element `i`).
///
/// Ordered lexicographically as increasing tuples.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_bits(bits: u64) -> Subset {
        Subset(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn from_elements(elements: &[usize]) -> Subset {
        Subset(elements.iter().fold(0, |acc, &i| acc | 1 << (i - 1)))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> (i - 1) & 1 == 1
    }

    pub fn with(self, i: usize) -> Subset {
        Subset(self.0 | 1 << (i - 1))
    }

    pub fn without(self, i: usize) -> Subset {
        Subset(self.0 & !(1 << (i - 1)))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            (bits != 0).then(|| {
                let t = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                t + 1
            })
        })
    }

    pub fn elements(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Image under the transposition `(i j)`.
    pub fn transpose(self, i: usize, j: usize) -> Subset {
        if self.contains(i) == self.contains(j) {
            self
        } else {
            Subset(self.0 ^ (1 << (i - 1)) ^ (1 << (j - 1)))
        }
    }

    /// Elements of `self` that are `< i`.
    pub fn count_below(self, i: usize) -> usize {
        (self.0 & ((1u64 << (i - 1)) - 1)).count_ones() as usize
    }

    /// Elements of `self` that are `> i`.
    pub fn count_above(self, i: usize) -> usize {
        (self.0 >> i).count_ones() as usize
    }

    /// All `d`-subsets of `{1..=size}` in increasing order.
    pub fn all_of_size(size: usize, d: usize) -> Vec<Subset> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(d);
        fn go(start: usize, size: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<Subset>) {
            if cur.len() == d {
                out.push(Subset::from_elements(cur));
                return;
            }
            for i in start..=size {
                if size - i + 1 < d - cur.len() {
                    break;
                }
                cur.push(i);
                go(i + 1, size, d, cur, out);
                cur.pop();
            }
        }
        go(1, size, d, &mut cur, &mut out);
        out
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        // The smallest differing element decides; the set lacking it is smaller
        // only if it has run out of elements.
        let t = diff.trailing_zeros();
        let self_has = self.0 >> t & 1 == 1;
        let lacking = if self_has { other.0 } else { self.0 };
        let lacks_more = lacking >> t != 0;
        match (self_has, lacks_more) {
            (true, true) => Ordering::Less,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Greater,
            (false, false) => Ordering::Less,
        }
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (p, i) in self.iter().enumerate() {
            if p > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// A vector in `H_*((S²)^size)` over the line-diagram basis `l_U`.
#[derive(Clone, PartialEq, Eq)]
pub struct HomVector {
    size: usize,
    terms: BTreeMap<Subset, Rational>,
}

impl HomVector {
    pub fn zero(size: usize) -> Self {
        assert!(size <= MAX_SIZE, "ambient size {size} exceeds {MAX_SIZE}");
        HomVector { size, terms: BTreeMap::new() }
    }

    /// The line diagram `l_U`.
    pub fn line(size: usize, u: Subset) -> Self {
        let mut v = Self::zero(size);
        v.add_term(u, &Rational::one());
        v
    }

    pub fn from_terms(size: usize, terms: impl IntoIterator<Item = (Subset, Rational)>) -> Self {
        let mut v = Self::zero(size);
        for (u, c) in terms {
            v.add_term(u, &c);
        }
        v
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn add_term(&mut self, u: Subset, c: &Rational) {
        debug_assert!(u.bits() >> self.size == 0, "subset outside ambient range");
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(u).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&u);
        }
    }

    pub fn coefficient(&self, u: Subset) -> Rational {
        self.terms.get(&u).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Subset, &Rational)> {
        self.terms.iter().map(|(u, c)| (*u, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Common `|U|` of all terms; `None` for zero or mixed-degree vectors.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|u| u.len());
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn add(&self, other: &HomVector) -> HomVector {
        let mut v = self.clone();
        v.add_scaled(other, &Rational::one());
        v
    }

    pub fn sub(&self, other: &HomVector) -> HomVector {
        let mut v = self.clone();
        v.add_scaled(other, &-Rational::one());
        v
    }

    pub fn add_scaled(&mut self, other: &HomVector, c: &Rational) {
        assert_eq!(self.size, other.size, "ambient size mismatch");
        for (u, x) in other.terms() {
            self.add_term(u, &(x * c));
        }
    }

    pub fn scale(&self, c: &Rational) -> HomVector {
        let mut v = HomVector::zero(self.size);
        v.add_scaled(self, c);
        v
    }

    /// Applies a linear map given on basis elements.
    pub fn map(&self, f: impl Fn(Subset) -> HomVector) -> HomVector {
        let mut out = HomVector::zero(self.size);
        for (u, c) in self.terms() {
            out.add_scaled(&f(u), c);
        }
        out
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }
}

impl fmt::Debug for HomVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (p, (u, c)) in self.terms().enumerate() {
            if p > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})l{:?}", format_rational(c), u)?;
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct TermRecord {
    #[serde(rename = "U")]
    u: Vec<usize>,
    c: String,
}

impl Serialize for HomVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<TermRecord> = self.terms().map(|(u, c)| TermRecord { u: u.elements(), c: format_rational(c) }).collect();
        let mut st = s.serialize_struct("HomVector", 2)?;
        st.serialize_field("size", &self.size)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

/// The subsets `𝒰_α` and signs `(-1)^{Λ_α(U)}` defining `L_α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LExpansion {
    pub weight: DeltaWeight,
    /// Pairs `(U, Λ_α(U))`.
    pub family: Vec<(Subset, usize)>,
}

impl LExpansion {
    pub fn of(alpha: &DeltaWeight) -> Self {
        let c = alpha.cup_diagram();
        let base = Subset::from_elements(&c.crossing_cups().iter().map(|&(l, _)| l).collect::<Vec<_>>());
        let mut family = vec![(base, 0usize)];
        for (l, r) in c.left_cups() {
            family = family.into_iter().flat_map(|(u, lam)| [(u.with(l), lam), (u.with(r), lam + 1)]).collect();
        }
        family.sort_by_key(|(u, _)| *u);
        LExpansion { weight: alpha.clone(), family }
    }

    pub fn vector(&self) -> HomVector {
        let size = self.weight.n() - self.weight.m();
        HomVector::from_terms(size, self.family.iter().map(|&(u, lam)| (u, if lam % 2 == 0 { Rational::one() } else { -Rational::one() })))
    }
}

/// `L_α = Σ_{U ∈ 𝒰_α} (-1)^{Λ_α(U)} l_U`.
pub fn l_expand(alpha: &DeltaWeight) -> HomVector {
    LExpansion::of(alpha).vector()
}

/// Weights whose cup diagram has `d` cups, with their classes, in canonical order.
pub fn homology_basis(params: ShapeParams, d: usize) -> Result<Vec<(DeltaWeight, HomVector)>> {
    params.validate(Mode::Strict)?;
    if d > params.k {
        return Err(Error::IndexOutOfRange { what: "degree", index: d, max: params.k });
    }
    Ok(enumerate_weights(params)?
        .into_iter()
        .filter(|w| w.cup_diagram().cup_count() == d)
        .map(|w| {
            let v = l_expand(&w);
            (w, v)
        })
        .collect())
}

/// `b_d` for `d = 0..=k`.
pub fn betti(params: ShapeParams) -> Result<Vec<usize>> {
    params.validate(Mode::Strict)?;
    let mut b = vec![0; params.k + 1];
    for w in enumerate_weights(params)? {
        b[w.cup_diagram().cup_count()] += 1;
    }
    Ok(b)
}

/// Coordinates of a vector against the `L` basis of one degree.
#[derive(Clone, Debug, PartialEq)]
pub enum LCoords {
    /// Coefficients by basis position (zero coefficients omitted).
    InSpan(Vec<(usize, Rational)>),
    /// The nonzero residual left after reduction.
    NotInSpan(HomVector),
}

/// The basis `{L_α}` of `H_{2d}` with an exact solver for change of basis.
pub struct LBasis {
    params: ShapeParams,
    degree: usize,
    weights: Vec<DeltaWeight>,
    vectors: Vec<HomVector>,
    rows: HashMap<Subset, usize>,
    row_subsets: Vec<Subset>,
    echelon: Echelon<Rational>,
    index: HashMap<DeltaWeight, usize>,
}

impl LBasis {
    pub fn new(params: ShapeParams, d: usize) -> Result<Self> {
        let (weights, vectors): (Vec<_>, Vec<_>) = homology_basis(params, d)?.into_iter().unzip();
        let subsets: BTreeSet<Subset> = vectors.iter().flat_map(|v| v.terms().map(|(u, _)| u)).collect();
        let row_subsets: Vec<Subset> = subsets.into_iter().collect();
        let rows: HashMap<Subset, usize> = row_subsets.iter().enumerate().map(|(i, u)| (*u, i)).collect();
        let mut echelon = Echelon::new();
        for v in &vectors {
            let col: SparseVec<Rational> = v.terms().map(|(u, c)| (rows[&u], c.clone())).collect();
            if echelon.push(col).is_some() {
                return Err(Error::Internal(format!("L basis of {params} in degree {d} is dependent")));
            }
        }
        let index = weights.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        Ok(LBasis { params, degree: d, weights, vectors, rows, row_subsets, echelon, index })
    }

    pub fn params(&self) -> ShapeParams {
        self.params
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn size(&self) -> usize {
        self.params.n - self.params.m
    }

    pub fn weights(&self) -> &[DeltaWeight] {
        &self.weights
    }

    pub fn vectors(&self) -> &[HomVector] {
        &self.vectors
    }

    pub fn position(&self, w: &DeltaWeight) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    /// Exact solve against the basis.
    pub fn solve(&self, v: &HomVector) -> Result<LCoords> {
        if v.size() != self.size() {
            return Err(Error::ParamsMismatch(format!("vector lives in size {}, basis in size {}", v.size(), self.size())));
        }
        if let Some(u) = v.terms().map(|(u, _)| u).find(|u| u.len() != self.degree) {
            return Err(Error::DegreeMismatch { expected: self.degree, found: u.len() });
        }
        let mut known = Vec::new();
        let mut residual = HomVector::zero(v.size());
        for (u, c) in v.terms() {
            match self.rows.get(&u) {
                Some(&r) => known.push((r, c.clone())),
                None => residual.add_term(u, c),
            }
        }
        known.sort_by_key(|(r, _)| *r);
        match self.echelon.solve(known) {
            Solve::InSpan(coeffs) if residual.is_zero() => Ok(LCoords::InSpan(coeffs)),
            Solve::InSpan(_) => Ok(LCoords::NotInSpan(residual)),
            Solve::NotInSpan(r) => {
                for (row, c) in r {
                    residual.add_term(self.row_subsets[row], &c);
                }
                Ok(LCoords::NotInSpan(residual))
            }
        }
    }

    /// Dense coordinates, or `None` outside the span.
    pub fn coordinates(&self, v: &HomVector) -> Result<Option<Vec<Rational>>> {
        Ok(match self.solve(v)? {
            LCoords::InSpan(c) => {
                let mut dense = vec![Rational::zero(); self.len()];
                for (i, x) in c {
                    dense[i] = x;
                }
                Some(dense)
            }
            LCoords::NotInSpan(_) => None,
        })
    }

    /// `Σ c_i L_i`.
    pub fn combine(&self, coeffs: &[(usize, Rational)]) -> HomVector {
        let mut v = HomVector::zero(self.size());
        for (i, c) in coeffs {
            v.add_scaled(&self.vectors[*i], c);
        }
        v
    }
}

/// Coordinates of `v` in the degree-`d` `L` basis, keyed by weight.
pub fn to_l_basis(v: &HomVector, params: ShapeParams, d: usize) -> Result<std::result::Result<Vec<(DeltaWeight, Rational)>, HomVector>> {
    let basis = LBasis::new(params, d)?;
    Ok(match basis.solve(v)? {
        LCoords::InSpan(c) => Ok(c.into_iter().map(|(i, x)| (basis.weights[i].clone(), x)).collect()),
        LCoords::NotInSpan(r) => Err(r),
    })
}
