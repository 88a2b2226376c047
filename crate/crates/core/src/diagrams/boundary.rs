use serde::Serialize;

use crate::diagrams::CupDiagram;

/// The part of a cup diagram left of the cut line: cups, rays, and half-cups
/// (cut-crossing cups, recorded by their left endpoint).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct OneBoundaryDiagram {
    pub points: usize,
    pub cups: Vec<(usize, usize)>,
    pub half_cups: Vec<usize>,
    pub rays: Vec<usize>,
}

impl OneBoundaryDiagram {
    /// No two arcs cross, and no ray or half-cup is nested under a cup.
    pub fn is_crossingless(&self) -> bool {
        let free = self.half_cups.iter().chain(&self.rays);
        let nested = free.into_iter().any(|&v| self.cups.iter().any(|&(l, r)| l < v && v < r));
        let crossing = self.cups.iter().any(|&(a, c)| self.cups.iter().any(|&(b, d)| a < b && b < c && c < d));
        !nested && !crossing
    }

    pub fn budget(&self) -> usize {
        self.cups.len() + self.half_cups.len()
    }
}

pub fn to_one_boundary(a: &CupDiagram) -> OneBoundaryDiagram {
    OneBoundaryDiagram {
        points: a.left(),
        cups: a.left_cups(),
        half_cups: a.crossing_cups().into_iter().map(|(l, _)| l).collect(),
        rays: a.left_rays(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::enumerate_cup_diagrams;
    use crate::params::ShapeParams;

    #[test]
    fn mapping_example() {
        let b = CupDiagram::from_cups(6, 2, &[(1, 6), (2, 3), (4, 5)]).unwrap();
        let o = to_one_boundary(&b);
        assert_eq!(o.cups, vec![(2, 3)]);
        assert_eq!(o.half_cups, vec![1, 4]);
        assert!(o.rays.is_empty());
        assert!(o.is_crossingless());
    }

    #[test]
    fn injective_on_first_example() {
        let ds = enumerate_cup_diagrams(ShapeParams::strict(6, 3, 2).unwrap()).unwrap();
        let images: Vec<_> = ds.iter().map(to_one_boundary).collect();
        for i in 0..images.len() {
            for j in i + 1..images.len() {
                assert_ne!(images[i], images[j]);
            }
        }
    }

    #[test]
    fn rays_stay_rays() {
        let o = to_one_boundary(&CupDiagram::rays_only(5, 2).unwrap());
        assert_eq!(o.rays, vec![1, 2, 3]);
        assert_eq!(o.budget(), 0);
    }
}
