use num_traits::One;
use serde::Serialize;

use crate::actions::Combination;
use crate::diagrams::{from_diagram, CupDiagram, DeltaWeight};
use crate::error::{Error, Result};
use crate::homology::{HomVector, Subset};
use crate::number::{format_rational, rat, Rational};
use crate::params::ShapeParams;

/// Parameters `ξ_0..ξ_size` of the Dunkl action on `H_*((S²)^size)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeParams {
    size: usize,
    xi: Vec<Rational>,
}

impl HeckeParams {
    pub fn new(xi: Vec<Rational>) -> Result<Self> {
        if xi.is_empty() {
            return Err(Error::InvalidParams("ξ needs at least one entry".into()));
        }
        Ok(HeckeParams { size: xi.len() - 1, xi })
    }

    /// `ξ_d = n + 1 - d`.
    pub fn springer(params: ShapeParams) -> Self {
        let size = params.n - params.m;
        HeckeParams { size, xi: (0..=size).map(|d| rat(params.n as i64 + 1 - d as i64)).collect() }
    }

    pub fn zero(size: usize) -> Self {
        HeckeParams { size, xi: vec![rat(0); size + 1] }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn xi(&self, d: usize) -> &Rational {
        &self.xi[d]
    }

    pub fn values(&self) -> &[Rational] {
        &self.xi
    }
}

impl Serialize for HeckeParams {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.xi.iter().map(format_rational).collect();
        v.serialize(s)
    }
}

fn check(i: usize, size: usize) -> Result<()> {
    if i == 0 || i > size {
        return Err(Error::IndexOutOfRange { what: "generator", index: i, max: size });
    }
    Ok(())
}

fn dunkl_line(i: usize, xi: &HeckeParams, u: Subset) -> HomVector {
    let size = xi.size;
    let d = u.len();
    let mut out = HomVector::zero(size);
    let (ii, s) = (i as i64, size as i64);
    if u.contains(i) {
        let gaps_below = (i - 1 - u.count_below(i)) as i64;
        out.add_term(u, &(xi.xi(d) + rat(ii - s - gaps_below)));
        for j in (i + 1..=size).filter(|&j| !u.contains(j)) {
            out.add_term(u.without(i).with(j), &-Rational::one());
        }
    } else {
        out.add_term(u, &rat(ii - s + u.count_above(i) as i64));
        for j in (1..i).filter(|&j| u.contains(j)) {
            out.add_term(u.without(j).with(i), &Rational::one());
        }
    }
    out
}

/// The Dunkl operator realizing `x_i`.
pub fn dunkl(i: usize, xi: &HeckeParams, v: &HomVector) -> Result<HomVector> {
    if v.size() != xi.size {
        return Err(Error::ParamsMismatch(format!("ξ is for size {}, vector has size {}", xi.size, v.size())));
    }
    check(i, xi.size)?;
    Ok(v.map(|u| dunkl_line(i, xi, u)))
}

/// `s′_i`: negates `l_U` when `i ∈ U`.
pub fn s_prime(i: usize, v: &HomVector) -> Result<HomVector> {
    check(i, v.size())?;
    let size = v.size();
    Ok(v.map(|u| {
        let l = HomVector::line(size, u);
        if u.contains(i) {
            l.scale(&rat(-1))
        } else {
            l
        }
    }))
}

/// `J_i = Σ_{j<i} (j i)`.
pub fn jm(i: usize, v: &HomVector) -> Result<HomVector> {
    check(i, v.size())?;
    let size = v.size();
    Ok(v.map(|u| HomVector::from_terms(size, (1..i).map(|j| (u.transpose(j, i), Rational::one())))))
}

/// `J̃_i = Σ_{j>i} (i j)`.
pub fn jm_tilde(i: usize, v: &HomVector) -> Result<HomVector> {
    check(i, v.size())?;
    let size = v.size();
    Ok(v.map(|u| HomVector::from_terms(size, (i + 1..=size).map(|j| (u.transpose(i, j), Rational::one())))))
}

/// `x_{n-m} · L_α` by the three-case formula at `ξ_d = n + 1 - d`.
pub fn x_last_closed_form(alpha: &DeltaWeight) -> Result<Combination> {
    let (m, s) = (alpha.m(), alpha.n() - alpha.m());
    let mut out = Combination::new();
    if s == 0 {
        return Ok(out);
    }
    let c = alpha.cup_diagram();
    if c.is_ray(s) {
        return Ok(out);
    }
    if c.is_left_end(s) {
        out.add(alpha.clone(), rat(m as i64 + 1));
        return Ok(out);
    }
    let last = c.partner(s).expect("right endpoint has a partner");
    let mut a: Vec<usize> = c.crossing_cups().into_iter().map(|(l, _)| l).collect();
    let r = a.len();
    a.push(last);
    let swapped = |x: usize, y: usize| alpha.swap(x, y).map_err(|e| Error::Internal(format!("swap ({x} {y}) on {alpha}: {e}")));
    for (i, &ai) in a.iter().enumerate().take(r + 1).skip(1) {
        out.add(swapped(ai, s)?, rat(-((m - r + i) as i64)));
    }
    if r < m {
        // α⁰: a_2..a_{r+1} and n-m become nested left endpoints over n-m+1..n-m+r+1, a_1 a ray.
        let mut cups: Vec<(usize, usize)> = c.cups().into_iter().filter(|(l, _)| !a.contains(l)).collect();
        let mut lefts = a[1..].to_vec();
        lefts.push(s);
        for (t, &l) in lefts.iter().rev().enumerate() {
            cups.push((l, s + 1 + t));
        }
        let alpha0 = CupDiagram::from_cups(alpha.n(), m, &cups)
            .ok()
            .and_then(|d| from_diagram(&d, alpha.k()))
            .ok_or_else(|| Error::Internal(format!("α⁰ of {alpha} is not a Δ-weight")))?;
        out.add(alpha0, rat(-((m - r) as i64)));
    }
    Ok(out)
}
