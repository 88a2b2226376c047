use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::actions::dunkl::{dunkl, jm, jm_tilde, s_prime, HeckeParams};
use crate::actions::symmetric::s_line;
use crate::error::{Error, Result};
use crate::homology::{HomVector, LBasis, LCoords, Subset};
use crate::linalg::{QMatrix, SparseVec};
use crate::number::Rational;
use crate::params::ShapeParams;

/// Generators acting on `H_*((S²)^{n-m})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    Sigma(usize),
    X(usize),
    SPrime(usize),
    Jm(usize),
    JmTilde(usize),
}

impl Generator {
    pub fn index(self) -> usize {
        match self {
            Generator::Sigma(i) | Generator::X(i) | Generator::SPrime(i) | Generator::Jm(i) | Generator::JmTilde(i) => i,
        }
    }

    pub fn check(self, size: usize) -> Result<()> {
        let max = if matches!(self, Generator::Sigma(_)) { size.saturating_sub(1) } else { size };
        let i = self.index();
        if i == 0 || i > max {
            return Err(Error::IndexOutOfRange { what: "generator", index: i, max });
        }
        Ok(())
    }

    pub fn apply(self, xi: &HeckeParams, v: &HomVector) -> Result<HomVector> {
        match self {
            Generator::Sigma(i) => s_line(i, v),
            Generator::X(i) => dunkl(i, xi, v),
            Generator::SPrime(i) => s_prime(i, v),
            Generator::Jm(i) => jm(i, v),
            Generator::JmTilde(i) => jm_tilde(i, v),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Sigma(i) => write!(f, "s{i}"),
            Generator::X(i) => write!(f, "x{i}"),
            Generator::SPrime(i) => write!(f, "sprime{i}"),
            Generator::Jm(i) => write!(f, "jm{i}"),
            Generator::JmTilde(i) => write!(f, "jmt{i}"),
        }
    }
}

impl FromStr for Generator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown generator {s:?} (expected s<i>, x<i>, sprime<i>, jm<i>, jmt<i>)"));
        let split = s.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?;
        let (name, idx) = s.split_at(split);
        let i: usize = idx.parse().map_err(|_| bad())?;
        Ok(match name {
            "s" | "sigma" => Generator::Sigma(i),
            "x" => Generator::X(i),
            "sprime" => Generator::SPrime(i),
            "jm" => Generator::Jm(i),
            "jmt" => Generator::JmTilde(i),
            _ => return Err(bad()),
        })
    }
}

/// A word in `σ_i` and `x_i`, applied right to left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorWord(pub Vec<Generator>);

impl GeneratorWord {
    /// Space-separated generators, e.g. `"s1 x2 s1"`.
    pub fn parse(s: &str, size: usize) -> Result<Self> {
        let word: Vec<Generator> = s.split_whitespace().map(str::parse).collect::<Result<_>>()?;
        for g in &word {
            if !matches!(g, Generator::Sigma(_) | Generator::X(_)) {
                return Err(Error::Parse(format!("{g} is not a Hecke algebra generator")));
            }
            g.check(size)?;
        }
        Ok(GeneratorWord(word))
    }

    pub fn apply(&self, xi: &HeckeParams, v: &HomVector) -> Result<HomVector> {
        self.0.iter().rev().try_fold(v.clone(), |acc, g| g.apply(xi, &acc))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BasisKind {
    /// All `l_U` with `|U| = d`.
    Lines(usize),
    /// The classes `L_α` of degree `2d`.
    L(usize),
}

/// Matrix of one generator on one degree block; column `j` is the image of basis vector `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorMatrix {
    pub generator: Generator,
    pub basis: BasisKind,
    pub matrix: QMatrix,
}

/// The `d`-subsets of `{1..=size}` in increasing order.
pub fn lines_basis(size: usize, d: usize) -> Vec<Subset> {
    Subset::all_of_size(size, d)
}

pub fn operator_matrix_lines(g: Generator, xi: &HeckeParams, d: usize) -> Result<OperatorMatrix> {
    let size = xi.size();
    g.check(size)?;
    if d > size {
        return Err(Error::IndexOutOfRange { what: "degree", index: d, max: size });
    }
    let basis = lines_basis(size, d);
    let rows: HashMap<Subset, usize> = basis.iter().enumerate().map(|(i, u)| (*u, i)).collect();
    let mut columns = Vec::with_capacity(basis.len());
    for &u in &basis {
        let image = g.apply(xi, &HomVector::line(size, u))?;
        let mut col: SparseVec<Rational> = Vec::with_capacity(image.len());
        for (w, c) in image.terms() {
            let r = rows.get(&w).ok_or_else(|| Error::Internal(format!("{g} moved l{u:?} out of degree {d}")))?;
            col.push((*r, c.clone()));
        }
        col.sort_by_key(|(r, _)| *r);
        columns.push(col);
    }
    Ok(OperatorMatrix { generator: g, basis: BasisKind::Lines(d), matrix: QMatrix::from_columns(basis.len(), &columns) })
}

/// Acts on each `L_α` in line diagrams, then changes basis back.
pub fn operator_matrix_l(g: Generator, basis: &LBasis, xi: &HeckeParams) -> Result<OperatorMatrix> {
    g.check(basis.size())?;
    let mut columns = Vec::with_capacity(basis.len());
    for (alpha, v) in basis.weights().iter().zip(basis.vectors()) {
        let image = g.apply(xi, v)?;
        match basis.solve(&image)? {
            LCoords::InSpan(c) => columns.push(c),
            LCoords::NotInSpan(_) => return Err(Error::Instability { generator: g.to_string(), weight: alpha.to_string() }),
        }
    }
    Ok(OperatorMatrix { generator: g, basis: BasisKind::L(basis.degree()), matrix: QMatrix::from_columns(basis.len(), &columns) })
}

pub fn operator_matrix(g: Generator, basis: BasisKind, params: ShapeParams, xi: &HeckeParams) -> Result<OperatorMatrix> {
    if xi.size() != params.n - params.m {
        return Err(Error::ParamsMismatch(format!("ξ has size {}, but n - m = {}", xi.size(), params.n - params.m)));
    }
    match basis {
        BasisKind::Lines(d) => operator_matrix_lines(g, xi, d),
        BasisKind::L(d) => operator_matrix_l(g, &LBasis::new(params, d)?, xi),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::DeltaWeight;
    use crate::number::rat;

    #[test]
    fn parse_generators() {
        for s in ["s2", "x4", "sprime3", "jm2", "jmt2"] {
            assert_eq!(s.parse::<Generator>().unwrap().to_string(), s);
        }
        assert!("y1".parse::<Generator>().is_err());
        assert!(GeneratorWord::parse("s1 x4", 4).is_ok());
        assert!(GeneratorWord::parse("s4", 4).is_err());
    }

    #[test]
    fn sigma_on_l_basis() {
        let p = ShapeParams::strict(6, 3, 2).unwrap();
        let xi = HeckeParams::springer(p);
        let basis = LBasis::new(p, 2).unwrap();
        let m = operator_matrix_l(Generator::Sigma(1), &basis, &xi).unwrap().matrix;
        let j = basis.position(&DeltaWeight::parse("v^^v|^v").unwrap()).unwrap();
        for i in 0..basis.len() {
            assert_eq!(m[(i, j)], if i == j { rat(-1) } else { rat(0) });
        }
        let lines = operator_matrix_lines(Generator::Sigma(2), &xi, 2).unwrap().matrix;
        assert!(lines.mul(&lines).is_identity());
    }
}
