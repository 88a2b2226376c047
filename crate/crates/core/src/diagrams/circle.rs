//! Circle diagrams `ā b` and the intersection of the corresponding components.
//!
//! A strand passes straight through every vertex left of the cut line. At a
//! vertex right of the cut line the two halves are joined only when one of
//! them is a ray; two cup ends meeting there both stop.

use serde::Serialize;

use crate::diagrams::{CupDiagram, Link};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComponentKind {
    Circle,
    PropagatingLine,
    NonPropagatingLine,
}

/// Where a line ends.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LineEnd {
    /// A ray of the reflected diagram `ā` going up from this vertex.
    Top(usize),
    /// A ray of `b` going down from this vertex.
    Bottom(usize),
    /// A strand stopping at a vertex right of the cut line.
    Stop(usize),
}

impl LineEnd {
    pub fn vertex(self) -> usize {
        match self {
            LineEnd::Top(v) | LineEnd::Bottom(v) | LineEnd::Stop(v) => v,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub kind: ComponentKind,
    /// Vertices met by the component, increasing.
    pub vertices: Vec<usize>,
    /// Empty for circles.
    pub ends: Vec<LineEnd>,
    pub crosses_cut: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CircleDiagram {
    pub a: CupDiagram,
    pub b: CupDiagram,
    /// Ordered by smallest vertex.
    pub components: Vec<Component>,
}

/// Result of intersecting two components.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IntersectionClass {
    Empty,
    /// Homeomorphic to a product of this many 2-spheres.
    Spheres(usize),
}

impl CircleDiagram {
    pub fn count(&self, kind: ComponentKind) -> usize {
        self.components.iter().filter(|c| c.kind == kind).count()
    }

    /// Circles plus cut-crossing lines whose ends both lie right of the cut line.
    pub fn ell(&self) -> usize {
        let left = self.a.left();
        self.components
            .iter()
            .filter(|c| match c.kind {
                ComponentKind::Circle => true,
                _ => c.crosses_cut && c.ends.iter().all(|e| e.vertex() > left),
            })
            .count()
    }

    pub fn intersection(&self) -> IntersectionClass {
        if self.count(ComponentKind::NonPropagatingLine) > 0 {
            IntersectionClass::Empty
        } else {
            IntersectionClass::Spheres(self.ell())
        }
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut [usize], x: usize, y: usize) {
    let (rx, ry) = (find(parent, x), find(parent, y));
    if rx != ry {
        parent[rx.max(ry)] = rx.min(ry);
    }
}

pub fn circle_diagram(a: &CupDiagram, b: &CupDiagram) -> Result<CircleDiagram> {
    if (a.n(), a.m()) != (b.n(), b.m()) {
        return Err(Error::ParamsMismatch(format!(
            "circle diagram needs equal (n, m), got ({}, {}) and ({}, {})",
            a.n(),
            a.m(),
            b.n(),
            b.m()
        )));
    }
    let n = a.n();
    let left = a.left();
    // Node 2(v-1) is the top half at v (from ā), 2(v-1)+1 the bottom half (from b).
    let top = |v: usize| 2 * (v - 1);
    let bottom = |v: usize| 2 * (v - 1) + 1;
    let mut parent: Vec<usize> = (0..2 * n).collect();
    let mut degree = vec![0usize; 2 * n];
    for (diagram, node) in [(a, &top as &dyn Fn(usize) -> usize), (b, &bottom)] {
        for (l, r) in diagram.cups() {
            union(&mut parent, node(l), node(r));
            degree[node(l)] += 1;
            degree[node(r)] += 1;
        }
    }
    for v in 1..=n {
        if v <= left || a.is_ray(v) || b.is_ray(v) {
            union(&mut parent, top(v), bottom(v));
            degree[top(v)] += 1;
            degree[bottom(v)] += 1;
        }
    }
    let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
    for x in 0..2 * n {
        let r = find(&mut parent, x);
        match groups.iter_mut().find(|(root, _)| *root == r) {
            Some((_, g)) => g.push(x),
            None => groups.push((r, vec![x])),
        }
    }
    let mut components: Vec<Component> = groups
        .into_iter()
        .map(|(_, nodes)| {
            let mut vertices: Vec<usize> = nodes.iter().map(|&x| x / 2 + 1).collect();
            vertices.dedup();
            let ends: Vec<LineEnd> = nodes
                .iter()
                .filter(|&&x| degree[x] < 2)
                .map(|&x| {
                    let v = x / 2 + 1;
                    let link = if x % 2 == 0 { a.link(v) } else { b.link(v) };
                    match (link, x % 2) {
                        (Link::Ray, 0) => LineEnd::Top(v),
                        (Link::Ray, _) => LineEnd::Bottom(v),
                        _ => LineEnd::Stop(v),
                    }
                })
                .collect();
            let crosses_cut = vertices.first().is_some_and(|&v| v <= left) && vertices.last().is_some_and(|&v| v > left);
            let kind = if ends.is_empty() {
                ComponentKind::Circle
            } else {
                let same_side = matches!((ends[0], ends[1]), (LineEnd::Top(_), LineEnd::Top(_)) | (LineEnd::Bottom(_), LineEnd::Bottom(_)));
                if same_side && vertices.iter().all(|&v| v <= left) {
                    ComponentKind::NonPropagatingLine
                } else {
                    ComponentKind::PropagatingLine
                }
            };
            Component { kind, vertices, ends, crosses_cut }
        })
        .collect();
    components.sort_by_key(|c| c.vertices[0]);
    Ok(CircleDiagram { a: a.clone(), b: b.clone(), components })
}

pub fn intersection_class(a: &CupDiagram, b: &CupDiagram) -> Result<IntersectionClass> {
    Ok(circle_diagram(a, b)?.intersection())
}
