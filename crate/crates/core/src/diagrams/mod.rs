//! Δ-cup diagrams, Δ-weights, fillings, circle diagrams and their encodings.

mod boundary;
mod circle;
mod cup;
mod filling;
mod render;
mod weight;

pub use boundary::{to_one_boundary, OneBoundaryDiagram};
pub use circle::{circle_diagram, intersection_class, CircleDiagram, Component, ComponentKind, IntersectionClass, LineEnd};
pub use cup::{enumerate_cup_diagrams, enumerate_cup_diagrams_via_weights, CupDiagram, Link};
pub use filling::{filling_chain, FillingChain, FillingShape, SkewFilling};
pub use render::{parse_diagram, render, DiagramRecord, Format, SCHEMA};
pub use weight::{cup_to_weight, enumerate_weights, from_diagram, weight_to_cup, DeltaWeight, Symbol};
