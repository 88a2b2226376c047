//! Characters of two-row (skew) Specht modules and the decomposition of the
//! homology action of `S_{n-m}`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::actions::{operator_matrix_l, Generator, HeckeParams};
use crate::error::{Error, Result};
use crate::homology::LBasis;
use crate::linalg::QMatrix;
use crate::number::Rational;
use crate::params::{Mode, ShapeParams};
use crate::report::Report;

/// `(a, b) / (c)`; straight when `c = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct TwoRowShape {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

impl TwoRowShape {
    pub fn straight(a: usize, b: usize) -> Result<Self> {
        Self::skew(a, b, 0)
    }

    pub fn skew(a: usize, b: usize, c: usize) -> Result<Self> {
        if b > a || c > a {
            return Err(Error::InvalidParams(format!("({a},{b})/({c}) is not a two-row skew shape")));
        }
        Ok(TwoRowShape { a, b, c })
    }

    pub fn is_straight(self) -> bool {
        self.c == 0
    }

    pub fn size(self) -> usize {
        self.a + self.b - self.c
    }
}

impl fmt::Display for TwoRowShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)?;
        if self.c > 0 {
            write!(f, "/({})", self.c)?;
        }
        Ok(())
    }
}

/// A partition, parts weakly decreasing and positive.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CycleType(Vec<usize>);

impl CycleType {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidParams("cycle type has a zero part".into()));
        }
        parts.sort_unstable_by(|x, y| y.cmp(x));
        Ok(CycleType(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// `N! / z_t`.
    pub fn class_size(&self) -> BigInt {
        let mut z = BigInt::one();
        let mut mult: HashMap<usize, usize> = HashMap::new();
        for &p in &self.0 {
            *mult.entry(p).or_default() += 1;
            z *= p;
        }
        for &k in mult.values() {
            z *= factorial(k);
        }
        factorial(self.size()) / z
    }

    /// A permutation of this type as a word in `σ_i`, rightmost applied first:
    /// the cycles act on consecutive blocks `1..t₁`, `t₁+1..t₁+t₂`, ….
    pub fn representative(&self) -> Vec<usize> {
        let mut word = Vec::new();
        let mut start = 1;
        for &p in &self.0 {
            word.extend(start..start + p - 1);
            start += p;
        }
        word
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// All partitions of `n`, reverse lexicographic.
pub fn partitions(n: usize) -> Vec<CycleType> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<CycleType>) {
        if rest == 0 {
            out.push(CycleType(cur.clone()));
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Standard tableaux of a two-row skew shape, by walking the lattice of
/// filled-cell counts `(r₁, r₂)`.
pub fn skew_syt_count(shape: TwoRowShape) -> BigInt {
    let top = shape.a - shape.c;
    let (b, c) = (shape.b, shape.c);
    // ways[r2] = paths to (r1, r2) for the current r1; raising r1 keeps r2.
    let mut ways = vec![BigInt::zero(); b + 1];
    ways[0] = BigInt::one();
    for r1 in 0..=top {
        for r2 in 1..=b {
            // a second-row cell at column r2 needs the cell above filled or absent
            if r2 <= c + r1 {
                let prev = ways[r2 - 1].clone();
                ways[r2] += prev;
            }
        }
    }
    ways[b].clone()
}

/// Character of the skew Specht module `shape` at cycle type `t`, by the
/// Murnaghan–Nakayama rule on beta-numbers.
pub fn mn_character(shape: TwoRowShape, t: &CycleType) -> Result<BigInt> {
    if shape.size() != t.size() {
        return Err(Error::ParamsMismatch(format!("shape {shape} has size {}, cycle type {t} has size {}", shape.size(), t.size())));
    }
    let outer = vec![shape.a, shape.b];
    let inner = vec![shape.c, 0];
    let mut memo = HashMap::new();
    Ok(mn(&outer, &inner, t.parts(), &mut memo))
}

fn contains(outer: &[usize], inner: &[usize]) -> bool {
    inner.iter().enumerate().all(|(i, &x)| outer.get(i).copied().unwrap_or(0) >= x)
}

fn mn(lambda: &[usize], mu: &[usize], t: &[usize], memo: &mut HashMap<(Vec<usize>, usize), BigInt>) -> BigInt {
    let Some((&k, rest)) = t.split_first() else {
        return if lambda.iter().zip(mu).all(|(x, y)| x == y) { BigInt::one() } else { BigInt::zero() };
    };
    let key = (lambda.to_vec(), t.len());
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    // beta-numbers λ_i + (ℓ - i), strictly decreasing
    let l = lambda.len();
    let beta: Vec<usize> = lambda.iter().enumerate().map(|(i, &x)| x + l - 1 - i).collect();
    let mut total = BigInt::zero();
    for (i, &b) in beta.iter().enumerate() {
        if b < k || beta.contains(&(b - k)) {
            continue;
        }
        let between = beta.iter().filter(|&&y| y > b - k && y < b).count();
        let mut nb = beta.clone();
        nb[i] = b - k;
        nb.sort_unstable_by(|x, y| y.cmp(x));
        let nu: Vec<usize> = nb.iter().enumerate().map(|(j, &y)| y - (l - 1 - j)).collect();
        if !contains(&nu, mu) {
            continue;
        }
        let v = mn(&nu, mu, rest, memo);
        if between % 2 == 0 {
            total += v;
        } else {
            total -= v;
        }
    }
    memo.insert(key, total.clone());
    total
}

/// Summands `(n-m-d+j, d-j)` for `max(0, 2d+m-n) ≤ j ≤ min(m, d)`.
pub fn theorem_summands(params: ShapeParams, d: usize) -> Vec<TwoRowShape> {
    let (n, m) = (params.n, params.m);
    let s = n - m;
    let lo = (2 * d + m).saturating_sub(n);
    (lo..=m.min(d)).filter(|&j| d - j <= s - d + j).map(|j| TwoRowShape { a: s - d + j, b: d - j, c: 0 }).collect()
}

fn sigma_matrices(params: ShapeParams, d: usize) -> Result<(LBasis, Vec<QMatrix>)> {
    let xi = HeckeParams::springer(params);
    let basis = LBasis::new(params, d)?;
    let mats = (1..basis.size()).map(|i| operator_matrix_l(Generator::Sigma(i), &basis, &xi).map(|o| o.matrix)).collect::<Result<_>>()?;
    Ok((basis, mats))
}

fn trace_of_word(dim: usize, sigma: &[QMatrix], word: &[usize]) -> Rational {
    word.iter().fold(QMatrix::identity(dim), |acc, &i| acc.mul(&sigma[i - 1])).trace()
}

/// `tr ρ(w_t)` on the degree-`2d` block for every cycle type of `S_{n-m}`.
pub fn homology_character(params: ShapeParams, d: usize) -> Result<Vec<(CycleType, Rational)>> {
    params.validate(Mode::Strict)?;
    let (basis, sigma) = sigma_matrices(params, d)?;
    Ok(partitions(basis.size())
        .into_iter()
        .map(|t| {
            let tr = trace_of_word(basis.len(), &sigma, &t.representative());
            (t, tr)
        })
        .collect())
}

/// Multiplicities of the straight two-row Specht modules in the degree-`2d` block.
pub fn decompose_homology_rep(params: ShapeParams, d: usize) -> Result<Vec<(TwoRowShape, usize)>> {
    let s = params.n - params.m;
    let chars = homology_character(params, d)?;
    let order = Rational::from_integer(factorial(s));
    let mut out = Vec::new();
    let mut rebuilt: Vec<Rational> = vec![Rational::zero(); chars.len()];
    for c in 0..=s / 2 {
        let lambda = TwoRowShape { a: s - c, b: c, c: 0 };
        let mut acc = Rational::zero();
        let mut values = Vec::with_capacity(chars.len());
        for (t, tr) in &chars {
            let chi = mn_character(lambda, t)?;
            acc += tr * Rational::from_integer(t.class_size() * &chi);
            values.push(chi);
        }
        let mult = acc / &order;
        let k = mult
            .is_integer()
            .then(|| mult.to_integer().to_usize())
            .flatten()
            .ok_or_else(|| Error::Internal(format!("multiplicity of {lambda} is {mult}")))?;
        for (r, chi) in rebuilt.iter_mut().zip(values) {
            *r += Rational::from_integer(chi * k);
        }
        if k > 0 {
            out.push((lambda, k));
        }
    }
    if let Some((t, _)) = chars.iter().zip(&rebuilt).map(|((t, tr), r)| (t, tr == r)).find(|(_, ok)| !ok) {
        return Err(Error::Internal(format!("character at {t} has constituents outside two-row shapes")));
    }
    Ok(out)
}

/// The filtration `W_j = span{L_α : C(α) has at most j cups through the cut}`.
pub fn verify_filtration(params: ShapeParams, d: usize) -> Result<Report> {
    params.validate(Mode::Strict)?;
    let (n, m) = (params.n, params.m);
    let (basis, sigma) = sigma_matrices(params, d)?;
    let crossing: Vec<usize> = basis.weights().iter().map(|w| w.cup_diagram().crossing_cups().len()).collect();
    let lo = (2 * d + m).saturating_sub(n);
    let hi = m.min(d);
    let mut report = Report::new("filtration");
    report.expect(
        format!("d={d} bottom"),
        basis.weights().iter().zip(&crossing).find(|(_, &c)| c < lo).map(|(w, c)| format!("L[{w}] has {c} crossing cups")),
    );
    report.expect(
        format!("d={d} top"),
        basis.weights().iter().zip(&crossing).find(|(_, &c)| c > hi).map(|(w, c)| format!("L[{w}] has {c} crossing cups")),
    );
    for j in lo..=hi {
        let mut witness = None;
        'outer: for (col, &cc) in crossing.iter().enumerate() {
            if cc > j {
                continue;
            }
            for (i, s) in sigma.iter().enumerate() {
                if let Some((row, _)) = s.column(col).into_iter().find(|&(row, _)| crossing[row] > j) {
                    witness = Some(format!("s{} L[{}] has L[{}]", i + 1, basis.weights()[col], basis.weights()[row]));
                    break 'outer;
                }
            }
        }
        report.expect(format!("d={d} W{j} stable"), witness);
        let quotient = crossing.iter().filter(|&&c| c == j).count();
        let expected = skew_syt_count(TwoRowShape { a: n - m - d + j, b: d - j, c: 0 });
        report.expect(
            format!("d={d} W{j}/W{} dimension", j as isize - 1),
            (BigInt::from(quotient) != expected).then(|| format!("{quotient} != {expected}")),
        );
    }
    Ok(report)
}

/// Dimension counts, character match against the theorem's summands,
/// multiplicities, and the filtration, for every degree.
pub fn verify_specht(params: ShapeParams) -> Result<Report> {
    params.validate(Mode::Strict)?;
    let (n, k, m) = (params.n, params.k, params.m);
    let mut report = Report::new("specht");
    for d in 0..=k {
        let b = LBasis::new(params, d)?.len();
        let skew = skew_syt_count(TwoRowShape { a: n - d, b: d, c: m });
        report.expect(format!("d={d} skew-count"), (BigInt::from(b) != skew).then(|| format!("b_{d} = {b}, skew count {skew}")));
        let summands = theorem_summands(params, d);
        let straight: BigInt = summands.iter().map(|&l| skew_syt_count(l)).sum();
        report.expect(format!("d={d} summand-dimensions"), (BigInt::from(b) != straight).then(|| format!("{b} != {straight}")));
        let mut witness = None;
        for (t, tr) in homology_character(params, d)? {
            let mut expected = BigInt::zero();
            for &l in &summands {
                expected += mn_character(l, &t)?;
            }
            if *tr.numer() != expected || !tr.is_integer() {
                witness = Some(format!("t={t} trace {tr} != {expected}"));
                break;
            }
        }
        report.expect(format!("d={d} characters"), witness);
        let got = decompose_homology_rep(params, d)?;
        let want: Vec<(TwoRowShape, usize)> = {
            let mut v: Vec<_> = summands.iter().map(|&l| (l, 1)).collect();
            v.sort_by_key(|(l, _)| l.b);
            v
        };
        report.expect(format!("d={d} multiplicities"), (got != want).then(|| format!("{got:?} != {want:?}")));
        report.absorb("", verify_filtration(params, d)?);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn syt_counts() {
        assert_eq!(skew_syt_count(TwoRowShape::straight(5, 0).unwrap()), BigInt::from(1));
        assert_eq!(skew_syt_count(TwoRowShape::straight(2, 2).unwrap()), BigInt::from(2));
        assert_eq!(skew_syt_count(TwoRowShape::straight(3, 2).unwrap()), BigInt::from(5));
        assert_eq!(skew_syt_count(TwoRowShape::skew(4, 3, 2).unwrap()), BigInt::from(9));
        let family: BigInt = (0..=3).map(|d| skew_syt_count(TwoRowShape::skew(6 - d, d, 2).unwrap())).sum();
        assert_eq!(family, BigInt::from(14));
    }

    #[test]
    fn small_characters() {
        let t = |v: Vec<usize>| CycleType::new(v).unwrap();
        assert_eq!(mn_character(TwoRowShape::straight(1, 1).unwrap(), &t(vec![2])).unwrap(), BigInt::from(-1));
        assert_eq!(mn_character(TwoRowShape::straight(2, 1).unwrap(), &t(vec![1, 1, 1])).unwrap(), BigInt::from(2));
        assert_eq!(mn_character(TwoRowShape::straight(4, 0).unwrap(), &t(vec![3, 1])).unwrap(), BigInt::from(1));
        assert!(mn_character(TwoRowShape::straight(2, 1).unwrap(), &t(vec![2])).is_err());
    }

    #[test]
    fn class_sizes_sum() {
        for n in 1..=8 {
            let total: BigInt = partitions(n).iter().map(CycleType::class_size).sum();
            assert_eq!(total, factorial(n));
        }
    }

    #[test]
    fn first_example() {
        let p = ShapeParams::strict(6, 3, 2).unwrap();
        let r = verify_specht(p).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(
            decompose_homology_rep(p, 2).unwrap(),
            vec![(TwoRowShape { a: 4, b: 0, c: 0 }, 1), (TwoRowShape { a: 3, b: 1, c: 0 }, 1), (TwoRowShape { a: 2, b: 2, c: 0 }, 1)]
        );
    }
}
