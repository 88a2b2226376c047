//! The gl₂ tensor space `V^{⊗(n-m)} ⊗ SᵐV`, its highest weight vectors `p_a`
//! and the commuting action of `H_{n-m}`: an oracle for the homology action
//! that shares no code with the line-diagram model.
//!
//! Positions `1..=n-m` are the `V` factors; position `n-m+1` is `SᵐV`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::{SerializeMap, SerializeSeq};
use serde::Serialize;

use crate::actions::{operator_matrix_l, Generator, HeckeParams};
use crate::diagrams::CupDiagram;
use crate::error::{Error, Result};
use crate::homology::LBasis;
use crate::linalg::{Echelon, Field, Fp, QMatrix, Solve, SparseVec};
use crate::number::Rational;
use crate::params::{Mode, ShapeParams};
use crate::report::Report;

/// Default bound on `n - m` for tensor computations; the space has dimension `2^{n-m}(m+1)`.
pub const MAX_TENSOR_LEFT: usize = 20;

/// `v_{ε_1} ⊗ … ⊗ v_{ε_{n-m}} ⊗ v_i`. Bit `len - p` of `eps` is set when `ε_p = +`,
/// so the derived order is the leading-term order: `-` before `+`, leftmost
/// disagreement first, then the symmetric index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TensorBasisElt {
    pub eps: u64,
    pub i: usize,
}

impl TensorBasisElt {
    fn bit(len: usize, p: usize) -> u64 {
        1 << (len - p)
    }

    pub fn plus(self, len: usize, p: usize) -> bool {
        self.eps & Self::bit(len, p) != 0
    }

    pub fn eps_string(self, len: usize) -> String {
        (1..=len).map(|p| if self.plus(len, p) { '+' } else { '-' }).collect()
    }

    pub fn weight(self, len: usize, m: usize) -> Gl2Weight {
        let plus = self.eps.count_ones() as usize;
        Gl2Weight { w1: plus + m - self.i, w2: len - plus + self.i }
    }

    /// Dense index compatible with the basis order.
    pub fn index(self, m: usize) -> usize {
        self.eps as usize * (m + 1) + self.i
    }
}

/// `(h₁, h₂)` eigenvalues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Gl2Weight {
    pub w1: usize,
    pub w2: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gl2 {
    H1,
    H2,
    E,
    F,
}

impl FromStr for Gl2 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "h1" => Ok(Gl2::H1),
            "h2" => Ok(Gl2::H2),
            "e" => Ok(Gl2::E),
            "f" => Ok(Gl2::F),
            _ => Err(Error::Parse(format!("unknown gl2 element {s:?}"))),
        }
    }
}

/// Sparse integer vector in `V^{⊗len} ⊗ SᵐV`.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorVector {
    len: usize,
    m: usize,
    terms: BTreeMap<TensorBasisElt, BigInt>,
}

impl TensorVector {
    pub fn zero(len: usize, m: usize) -> Self {
        assert!(len < 64, "tensor length {len} does not fit the bit encoding");
        TensorVector { len, m, terms: BTreeMap::new() }
    }

    pub fn basis_vector(len: usize, m: usize, e: TensorBasisElt) -> Self {
        let mut v = Self::zero(len, m);
        v.add_term(e, &BigInt::one());
        v
    }

    /// Every basis element, in order.
    pub fn basis(len: usize, m: usize) -> impl Iterator<Item = TensorBasisElt> {
        (0..1u64 << len).flat_map(move |eps| (0..=m).map(move |i| TensorBasisElt { eps, i }))
    }

    /// Number of `V` factors, not the number of terms.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn add_term(&mut self, e: TensorBasisElt, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn coefficient(&self, e: TensorBasisElt) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (TensorBasisElt, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Smallest basis element with nonzero coefficient.
    pub fn leading(&self) -> Option<(TensorBasisElt, &BigInt)> {
        self.terms.iter().next().map(|(e, c)| (*e, c))
    }

    pub fn add_scaled(&mut self, other: &TensorVector, c: &BigInt) {
        for (e, x) in &other.terms {
            self.add_term(*e, &(x * c));
        }
    }

    pub fn add(&self, other: &TensorVector) -> TensorVector {
        let mut v = self.clone();
        v.add_scaled(other, &BigInt::one());
        v
    }

    pub fn scale(&self, c: &BigInt) -> TensorVector {
        let mut v = Self::zero(self.len, self.m);
        v.add_scaled(self, c);
        v
    }

    fn to_sparse(&self) -> SparseVec<Rational> {
        self.terms.iter().map(|(e, c)| (e.index(self.m), Rational::from_integer(c.clone()))).collect()
    }

    /// Linear extension of a map on basis elements.
    fn map(&self, f: impl Fn(TensorBasisElt) -> Vec<(TensorBasisElt, i64)>) -> TensorVector {
        let mut out = Self::zero(self.len, self.m);
        for (e, c) in &self.terms {
            for (e2, k) in f(*e) {
                out.add_term(e2, &(c * k));
            }
        }
        out
    }
}

impl fmt::Debug for TensorVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (j, (e, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() {
                "-"
            } else if j > 0 {
                "+"
            } else {
                ""
            };
            if j > 0 {
                write!(f, " ")?;
            }
            write!(f, "{sign}{}[{}|{}]", c.abs(), e.eps_string(self.len), e.i)?;
        }
        Ok(())
    }
}

struct Term<'a>(&'a TensorVector, TensorBasisElt, &'a BigInt);

impl Serialize for Term<'_> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(3))?;
        map.serialize_entry("eps", &self.1.eps_string(self.0.len))?;
        map.serialize_entry("i", &self.1.i)?;
        map.serialize_entry("c", &self.2.to_string())?;
        map.end()
    }
}

struct Terms<'a>(&'a TensorVector);

impl Serialize for Terms<'_> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.terms.len()))?;
        for (e, c) in &self.0.terms {
            seq.serialize_element(&Term(self.0, *e, c))?;
        }
        seq.end()
    }
}

impl Serialize for TensorVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(3))?;
        map.serialize_entry("len", &self.len)?;
        map.serialize_entry("m", &self.m)?;
        map.serialize_entry("terms", &Terms(self))?;
        map.end()
    }
}

fn check_position(len: usize, p: usize) -> Result<()> {
    if p == 0 || p > len + 1 {
        return Err(Error::IndexOutOfRange { what: "tensor position", index: p, max: len + 1 });
    }
    Ok(())
}

/// One element of gl₂ on one factor of one basis element.
fn act(op: Gl2, p: usize, len: usize, m: usize, e: TensorBasisElt) -> Option<(TensorBasisElt, i64)> {
    if p == len + 1 {
        let i = e.i;
        let (m_, i_) = (m as i64, i as i64);
        return match op {
            Gl2::H1 => (i < m).then_some((e, m_ - i_)),
            Gl2::H2 => (i > 0).then_some((e, i_)),
            Gl2::E => (i > 0).then(|| (TensorBasisElt { i: i - 1, ..e }, i_)),
            Gl2::F => (i < m).then(|| (TensorBasisElt { i: i + 1, ..e }, m_ - i_)),
        };
    }
    let bit = TensorBasisElt::bit(len, p);
    let plus = e.eps & bit != 0;
    match (op, plus) {
        (Gl2::H1, true) | (Gl2::H2, false) => Some((e, 1)),
        (Gl2::E, false) => Some((TensorBasisElt { eps: e.eps | bit, ..e }, 1)),
        (Gl2::F, true) => Some((TensorBasisElt { eps: e.eps & !bit, ..e }, 1)),
        _ => None,
    }
}

pub fn gl2_apply(op: Gl2, p: usize, v: &TensorVector) -> Result<TensorVector> {
    check_position(v.len, p)?;
    Ok(v.map(|e| act(op, p, v.len, v.m, e).into_iter().collect()))
}

/// Sum of `op` over all factors.
pub fn gl2_global(op: Gl2, v: &TensorVector) -> TensorVector {
    v.map(|e| (1..=v.len + 1).filter_map(|p| act(op, p, v.len, v.m, e)).collect())
}

fn casimir_elt(p: usize, q: usize, len: usize, m: usize, e: TensorBasisElt) -> Vec<(TensorBasisElt, i64)> {
    [(Gl2::H1, Gl2::H1), (Gl2::H2, Gl2::H2), (Gl2::E, Gl2::F), (Gl2::F, Gl2::E)]
        .into_iter()
        .filter_map(|(a, b)| {
            let (e1, c1) = act(b, q, len, m, e)?;
            let (e2, c2) = act(a, p, len, m, e1)?;
            Some((e2, c1 * c2))
        })
        .collect()
}

/// `Ω` acting on factors `p < q`.
pub fn casimir(p: usize, q: usize, v: &TensorVector) -> Result<TensorVector> {
    check_position(v.len, p)?;
    check_position(v.len, q)?;
    if p >= q {
        return Err(Error::InvalidParams(format!("casimir positions must satisfy p < q, got ({p},{q})")));
    }
    Ok(v.map(|e| casimir_elt(p, q, v.len, v.m, e)))
}

/// `σ_i ↦ Ω_{i,i+1}`, `x_i ↦ -Σ_{i<j≤n-m+1} Ω_{ij} + m`.
pub fn hecke_tensor(g: Generator, v: &TensorVector) -> Result<TensorVector> {
    g.check(v.len)?;
    let (len, m) = (v.len, v.m);
    match g {
        Generator::Sigma(i) => casimir(i, i + 1, v),
        Generator::X(i) => Ok(v.map(|e| {
            let mut out: Vec<_> = (i + 1..=len + 1).flat_map(|j| casimir_elt(i, j, len, m, e)).map(|(e2, c)| (e2, -c)).collect();
            out.push((e, m as i64));
            out
        })),
        other => Err(Error::InvalidParams(format!("{other} has no tensor-space action"))),
    }
}

/// The highest weight vector attached to a Δ-cup diagram.
pub fn p_vector(a: &CupDiagram) -> TensorVector {
    let len = a.left();
    let m = a.m();
    let bit = |p: usize| TensorBasisElt::bit(len, p);
    let rays = a.left_rays().into_iter().fold(0, |acc, p| acc | bit(p));
    let mut terms = vec![(TensorBasisElt { eps: rays, i: 0 }, BigInt::one())];
    for (l, r) in a.left_cups() {
        // v₋⊗v₊ - v₊⊗v₋
        terms = terms
            .into_iter()
            .flat_map(|(e, c)| {
                [(TensorBasisElt { eps: e.eps | bit(r), ..e }, c.clone()), (TensorBasisElt { eps: e.eps | bit(l), ..e }, -c)]
            })
            .collect();
    }
    for (l, _) in a.crossing_cups() {
        terms = terms.into_iter().flat_map(|(e, c)| [(e, c.clone()), (TensorBasisElt { eps: e.eps | bit(l), i: e.i + 1 }, -c)]).collect();
    }
    let mut v = TensorVector::zero(len, m);
    for (e, c) in terms {
        v.add_term(e, &c);
    }
    v
}

/// Global `e` kills `v` and global `h₁`, `h₂` act by the expected weight.
pub fn highest_weight_check(v: &TensorVector, expected: Gl2Weight) -> bool {
    gl2_global(Gl2::E, v).is_zero()
        && gl2_global(Gl2::H1, v) == v.scale(&BigInt::from(expected.w1))
        && gl2_global(Gl2::H2, v) == v.scale(&BigInt::from(expected.w2))
}

/// Dimension of the space of highest weight vectors of weight `(len + m - d, d)`.
pub fn highest_weight_multiplicity(len: usize, m: usize, d: usize) -> usize {
    let mut ech = Echelon::<Rational>::rank_only();
    let mut dim = 0;
    for e in TensorVector::basis(len, m).filter(|e| e.weight(len, m).w2 == d) {
        dim += 1;
        ech.push(gl2_global(Gl2::E, &TensorVector::basis_vector(len, m, e)).to_sparse());
    }
    dim - ech.rank()
}

fn ensure_size(params: ShapeParams, cap: usize) -> Result<()> {
    let s = params.n - params.m;
    if s > cap {
        return Err(Error::SizeCap(format!("tensor space needs n - m = {s} > {cap}")));
    }
    Ok(())
}

/// The vectors `p_{C(α)}` for the degree-`2d` `L` basis, in the same order.
pub struct PBasis {
    diagrams: Vec<CupDiagram>,
    vectors: Vec<TensorVector>,
    echelon: Echelon<Rational>,
}

impl PBasis {
    pub fn new(basis: &LBasis) -> Result<Self> {
        let diagrams: Vec<CupDiagram> = basis.weights().iter().map(|w| w.cup_diagram()).collect();
        let vectors: Vec<TensorVector> = diagrams.iter().map(p_vector).collect();
        let mut echelon = Echelon::new();
        for (a, v) in diagrams.iter().zip(&vectors) {
            if echelon.push(v.to_sparse()).is_some() {
                return Err(Error::Internal(format!("p-vectors are dependent at {}", a.to_weight())));
            }
        }
        Ok(PBasis { diagrams, vectors, echelon })
    }

    pub fn diagrams(&self) -> &[CupDiagram] {
        &self.diagrams
    }

    pub fn vectors(&self) -> &[TensorVector] {
        &self.vectors
    }

    pub fn coordinates(&self, v: &TensorVector) -> Result<SparseVec<Rational>> {
        match self.echelon.solve(v.to_sparse()) {
            Solve::InSpan(c) => Ok(c),
            Solve::NotInSpan(_) => Err(Error::NotExpressible(format!("{v:?}"))),
        }
    }

    /// Matrix of a Hecke generator in the `p` basis.
    pub fn operator(&self, g: Generator) -> Result<QMatrix> {
        let columns = self.vectors.iter().map(|p| self.coordinates(&hecke_tensor(g, p)?)).collect::<Result<Vec<_>>>()?;
        Ok(QMatrix::from_columns(self.vectors.len(), &columns))
    }
}

pub fn hecke_generators(size: usize) -> Vec<Generator> {
    (1..size).map(Generator::Sigma).chain((1..=size).map(Generator::X)).collect()
}

/// Checks that `L_α ↦ p_{C(α)}` intertwines every `σ_i` and `x_i`.
pub fn equivariance_check(params: ShapeParams, d: usize) -> Result<Report> {
    equivariance_check_capped(params, d, MAX_TENSOR_LEFT)
}

pub fn equivariance_check_capped(params: ShapeParams, d: usize, cap: usize) -> Result<Report> {
    params.validate(Mode::Strict)?;
    ensure_size(params, cap)?;
    let xi = HeckeParams::springer(params);
    let basis = LBasis::new(params, d)?;
    let pb = PBasis::new(&basis)?;
    let mut report = Report::new("equivariance");
    let mut hw = None;
    let mut lead = None;
    for (a, p) in pb.diagrams.iter().zip(&pb.vectors) {
        let w = Gl2Weight { w1: params.n - d, w2: d };
        if hw.is_none() && !highest_weight_check(p, w) {
            hw = Some(format!("p[{}]", a.to_weight()));
        }
        let expected = TensorBasisElt {
            eps: (1..=a.left()).filter(|&v| a.to_weight().at(v) == crate::Symbol::Up).fold(0, |e, v| e | TensorBasisElt::bit(a.left(), v)),
            i: 0,
        };
        if lead.is_none() && p.leading() != Some((expected, &BigInt::one())) {
            lead = Some(format!("p[{}] leads with {:?}", a.to_weight(), p.leading()));
        }
    }
    report.expect(format!("d={d} highest-weight"), hw);
    report.expect(format!("d={d} leading-term"), lead);
    for g in hecke_generators(params.n - params.m) {
        let lhs = operator_matrix_l(g, &basis, &xi)?.matrix;
        let rhs = pb.operator(g)?;
        report.expect(format!("d={d} {g}"), lhs.first_difference(&rhs).map(|(r, c)| format!("column L[{}] row {r}", basis.weights()[c])));
    }
    Ok(report)
}

/// Which generators the commutant is taken against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorSet {
    Hecke,
    SymmetricOnly,
}

/// `dim {M : M ρ(g) = ρ(g) M for all g}` on the degree-`2d` block.
pub fn commutant_dimension(params: ShapeParams, d: usize) -> Result<usize> {
    commutant_dimension_with(params, d, GeneratorSet::Hecke)
}

pub fn commutant_dimension_with(params: ShapeParams, d: usize, set: GeneratorSet) -> Result<usize> {
    params.validate(Mode::Strict)?;
    let xi = HeckeParams::springer(params);
    let basis = LBasis::new(params, d)?;
    let gens: Vec<Generator> = match set {
        GeneratorSet::Hecke => hecke_generators(basis.size()),
        GeneratorSet::SymmetricOnly => (1..basis.size()).map(Generator::Sigma).collect(),
    };
    let mats = gens.iter().map(|&g| operator_matrix_l(g, &basis, &xi).map(|o| o.matrix)).collect::<Result<Vec<_>>>()?;
    let b = basis.len();
    // Nullity mod p bounds the rational nullity from above, and the identity
    // always commutes, so a modular answer of 1 is exact.
    if let Some(fp) = mats.iter().map(reduce_matrix).collect::<Option<Vec<_>>>() {
        if commutant_nullity(b, &fp) == 1 {
            return Ok(1);
        }
    }
    let exact: Vec<Vec<Vec<Rational>>> = mats.iter().map(dense).collect();
    Ok(commutant_nullity(b, &exact))
}

fn dense(q: &QMatrix) -> Vec<Vec<Rational>> {
    (0..q.rows()).map(|r| (0..q.cols()).map(|c| q[(r, c)].clone()).collect()).collect()
}

fn reduce_matrix(q: &QMatrix) -> Option<Vec<Vec<Fp>>> {
    (0..q.rows()).map(|r| (0..q.cols()).map(|c| Fp::from_rational(&q[(r, c)])).collect()).collect()
}

/// Kernel dimension of `M ↦ (M A_g - A_g M)_g` on `b × b` matrices.
fn commutant_nullity<F: Field>(b: usize, mats: &[Vec<Vec<F>>]) -> usize {
    let mut ech = Echelon::<F>::rank_only();
    for r in 0..b {
        for c in 0..b {
            // E_rc A has row r equal to row c of A; A E_rc has column c equal to column r of A.
            let mut col: Vec<(usize, F)> = Vec::new();
            for (gi, a) in mats.iter().enumerate() {
                let base = gi * b * b;
                let mut block: BTreeMap<usize, F> = BTreeMap::new();
                for (j, x) in a[c].iter().enumerate() {
                    if !x.is_zero() {
                        let e = block.entry(r * b + j).or_insert_with(F::zero);
                        *e = e.add(x);
                    }
                }
                for (i, row) in a.iter().enumerate() {
                    let x = &row[r];
                    if !x.is_zero() {
                        let e = block.entry(i * b + c).or_insert_with(F::zero);
                        *e = e.sub(x);
                    }
                }
                col.extend(block.into_iter().filter(|(_, x)| !x.is_zero()).map(|(k, x)| (base + k, x)));
            }
            ech.push(col);
        }
    }
    ech.nullity()
}
