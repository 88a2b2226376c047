use std::cmp::Ordering;

use crate::diagrams::weight::{cup_to_weight, enumerate_weights, weight_to_cup, DeltaWeight};
use crate::error::{Error, Result};
use crate::params::{Mode, ShapeParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Link {
    Ray,
    Cup(usize),
}

/// A Δ-cup diagram on vertices `1..=n` with the cut line after vertex `n - m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CupDiagram {
    n: usize,
    m: usize,
    links: Vec<Link>,
}

impl CupDiagram {
    /// Validates an explicit cup/ray listing.
    pub fn new(n: usize, m: usize, cups: &[(usize, usize)], rays: &[usize]) -> Result<Self> {
        if n == 0 || m > n {
            return Err(Error::InvalidParams(format!("need 1 <= n and m <= n (n = {n}, m = {m})")));
        }
        let mut links: Vec<Option<Link>> = vec![None; n];
        let mut claim = |v: usize, link: Link| -> Result<()> {
            if v == 0 || v > n {
                return Err(Error::InvalidDiagram { invariant: "vertex range", detail: format!("vertex {v} not in 1..={n}") });
            }
            if links[v - 1].is_some() {
                return Err(Error::InvalidDiagram { invariant: "partition", detail: format!("vertex {v} used more than once") });
            }
            links[v - 1] = Some(link);
            Ok(())
        };
        for &(l, r) in cups {
            if l >= r {
                return Err(Error::InvalidDiagram { invariant: "cup orientation", detail: format!("cup [{l},{r}] needs l < r") });
            }
            claim(l, Link::Cup(r))?;
            claim(r, Link::Cup(l))?;
        }
        for &v in rays {
            claim(v, Link::Ray)?;
        }
        if let Some(v) = links.iter().position(Option::is_none) {
            return Err(Error::InvalidDiagram {
                invariant: "partition",
                detail: format!("vertex {} is neither a cup endpoint nor a ray", v + 1),
            });
        }
        let d = CupDiagram { n, m, links: links.into_iter().map(Option::unwrap).collect() };
        d.check()?;
        Ok(d)
    }

    /// Rays are implied by the vertices not covered by `cups`.
    pub fn from_cups(n: usize, m: usize, cups: &[(usize, usize)]) -> Result<Self> {
        let mut used = vec![false; n + 1];
        for &(l, r) in cups {
            for v in [l, r] {
                if v <= n {
                    used[v] = true;
                }
            }
        }
        let rays: Vec<usize> = (1..=n).filter(|&v| !used[v]).collect();
        Self::new(n, m, cups, &rays)
    }

    /// The all-rays diagram.
    pub fn rays_only(n: usize, m: usize) -> Result<Self> {
        Self::from_cups(n, m, &[])
    }

    fn check(&self) -> Result<()> {
        // Stack scan: a ray or a cup's right end must see every cup opened before it closed.
        let mut open: Vec<usize> = Vec::new();
        for v in 1..=self.n {
            match self.links[v - 1] {
                Link::Ray => {
                    if let Some(&l) = open.last() {
                        return Err(Error::InvalidDiagram {
                            invariant: "crossingless",
                            detail: format!("ray at {v} lies under cup [{l},{}]", self.partner(l).unwrap()),
                        });
                    }
                }
                Link::Cup(p) if p > v => open.push(v),
                Link::Cup(p) => {
                    if open.pop() != Some(p) {
                        return Err(Error::InvalidDiagram {
                            invariant: "crossingless",
                            detail: format!("cup [{p},{v}] crosses another cup"),
                        });
                    }
                }
            }
        }
        if let Some((l, r)) = self.cups().into_iter().find(|&(l, _)| l > self.left()) {
            return Err(Error::InvalidDiagram {
                invariant: "cut condition violated",
                detail: format!("cup [{l},{r}] starts right of the cut line after vertex {}", self.left()),
            });
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of vertices left of the cut line.
    pub fn left(&self) -> usize {
        self.n - self.m
    }

    pub fn cup_count(&self) -> usize {
        self.links.iter().filter(|l| matches!(l, Link::Cup(_))).count() / 2
    }

    /// `(n, #cups, m)`.
    pub fn params(&self) -> ShapeParams {
        ShapeParams { n: self.n, k: self.cup_count(), m: self.m }
    }

    pub fn link(&self, v: usize) -> Link {
        self.links[v - 1]
    }

    pub fn partner(&self, v: usize) -> Option<usize> {
        match self.links[v - 1] {
            Link::Cup(p) => Some(p),
            Link::Ray => None,
        }
    }

    pub fn is_ray(&self, v: usize) -> bool {
        self.links[v - 1] == Link::Ray
    }

    pub fn is_left_end(&self, v: usize) -> bool {
        matches!(self.links[v - 1], Link::Cup(p) if p > v)
    }

    pub fn is_right_end(&self, v: usize) -> bool {
        matches!(self.links[v - 1], Link::Cup(p) if p < v)
    }

    /// Cups as `(l, r)` sorted by left endpoint.
    pub fn cups(&self) -> Vec<(usize, usize)> {
        (1..=self.n).filter_map(|v| self.partner(v).filter(|&p| p > v).map(|p| (v, p))).collect()
    }

    pub fn rays(&self) -> Vec<usize> {
        (1..=self.n).filter(|&v| self.is_ray(v)).collect()
    }

    /// Cups with both endpoints left of the cut line.
    pub fn left_cups(&self) -> Vec<(usize, usize)> {
        self.cups().into_iter().filter(|&(_, r)| r <= self.left()).collect()
    }

    /// Cups through the cut line.
    pub fn crossing_cups(&self) -> Vec<(usize, usize)> {
        self.cups().into_iter().filter(|&(_, r)| r > self.left()).collect()
    }

    pub fn left_rays(&self) -> Vec<usize> {
        self.rays().into_iter().filter(|&v| v <= self.left()).collect()
    }

    pub fn to_weight(&self) -> DeltaWeight {
        cup_to_weight(self)
    }

    /// The same diagram with a different cut offset, if it still satisfies the cut condition.
    pub fn with_m(&self, m: usize) -> Result<CupDiagram> {
        Self::from_cups(self.n, m, &self.cups())
    }
}

impl PartialOrd for CupDiagram {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: lexicographic on [`cup_to_weight`], then `(n, m)`.
impl Ord for CupDiagram {
    fn cmp(&self, other: &Self) -> Ordering {
        self.to_weight().cmp(&other.to_weight())
    }
}

/// All Δ-cup diagrams with exactly `k` cups, in canonical order.
pub fn enumerate_cup_diagrams(params: ShapeParams) -> Result<Vec<CupDiagram>> {
    params.validate(Mode::AnyK)?;
    let ShapeParams { n, k, m } = params;
    if 2 * k > n {
        return Ok(Vec::new());
    }
    // Canonical weights are exactly the weights with k cups; collect them directly.
    let left = n - m;
    let mut out = Vec::new();
    let mut open: Vec<usize> = Vec::new();
    let mut links = vec![Link::Ray; n];
    #[allow(clippy::too_many_arguments)]
    fn go(
        v: usize,
        n: usize,
        m: usize,
        left: usize,
        k: usize,
        opened: usize,
        open: &mut Vec<usize>,
        links: &mut Vec<Link>,
        out: &mut Vec<CupDiagram>,
    ) {
        if v > n {
            if open.is_empty() && opened == k {
                out.push(CupDiagram { n, m, links: links.clone() });
            }
            return;
        }
        let remaining = n - v + 1;
        // ∨ first: it sorts before ∧.
        if v <= left && opened < k && open.len() < remaining {
            open.push(v);
            go(v + 1, n, m, left, k, opened + 1, open, links, out);
            open.pop();
        }
        if let Some(l) = open.pop() {
            links[l - 1] = Link::Cup(v);
            links[v - 1] = Link::Cup(l);
            go(v + 1, n, m, left, k, opened, open, links, out);
            links[l - 1] = Link::Ray;
            links[v - 1] = Link::Ray;
            open.push(l);
        } else if (k - opened) * 2 < remaining {
            links[v - 1] = Link::Ray;
            go(v + 1, n, m, left, k, opened, open, links, out);
        }
    }
    go(1, n, m, left, k, 0, &mut open, &mut links, &mut out);
    Ok(out)
}

/// Reference enumeration through all weights: keep those whose diagram has `k` cups.
pub fn enumerate_cup_diagrams_via_weights(params: ShapeParams) -> Result<Vec<CupDiagram>> {
    Ok(enumerate_weights(params)?.iter().map(weight_to_cup).filter(|c| c.cup_count() == params.k).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(CupDiagram::new(6, 2, &[(1, 2), (3, 6), (4, 5)], &[]).is_ok());
        let err = CupDiagram::new(6, 2, &[(5, 6)], &[1, 2, 3, 4]).unwrap_err();
        assert!(err.to_string().contains("cut condition violated"), "{err}");
        assert!(CupDiagram::from_cups(4, 0, &[(1, 3), (2, 4)]).is_err());
        assert!(CupDiagram::from_cups(3, 0, &[(1, 3)]).is_err());
        assert!(CupDiagram::new(3, 0, &[(1, 2)], &[]).is_err());
        assert!(CupDiagram::new(3, 0, &[(1, 2)], &[3, 3]).is_err());
    }

    #[test]
    fn first_example() {
        let ds = enumerate_cup_diagrams(ShapeParams::new(6, 3, 2).unwrap()).unwrap();
        let cups: Vec<_> = ds.iter().map(CupDiagram::cups).collect();
        assert_eq!(cups, vec![vec![(1, 6), (2, 5), (3, 4)], vec![(1, 6), (2, 3), (4, 5)], vec![(1, 2), (3, 6), (4, 5)]]);
    }

    #[test]
    fn direct_enumeration_matches_weight_filter() {
        for p in ShapeParams::all_strict(9) {
            assert_eq!(enumerate_cup_diagrams(p).unwrap(), enumerate_cup_diagrams_via_weights(p).unwrap(), "{p}");
        }
    }

    #[test]
    fn accessors() {
        let a = CupDiagram::from_cups(7, 3, &[(1, 2), (3, 6), (4, 5)]).unwrap();
        assert_eq!(a.left_cups(), vec![(1, 2)]);
        assert_eq!(a.crossing_cups(), vec![(3, 6), (4, 5)]);
        assert_eq!(a.rays(), vec![7]);
        assert!(a.left_rays().is_empty());
        assert!(a.is_left_end(3) && a.is_right_end(6));
    }
}
