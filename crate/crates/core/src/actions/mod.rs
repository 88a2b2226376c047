//! Symmetric-group and degenerate affine Hecke algebra actions.

mod dunkl;
mod matrix;
mod symmetric;
mod verify;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::diagrams::DeltaWeight;
use crate::homology::{l_expand, HomVector};
use crate::number::{format_rational, Rational};

pub use dunkl::{dunkl, jm, jm_tilde, s_prime, x_last_closed_form, HeckeParams};
pub use matrix::{
    lines_basis, operator_matrix, operator_matrix_l, operator_matrix_lines, BasisKind, Generator, GeneratorWord, OperatorMatrix,
};
pub use symmetric::{s_line, s_skein, transposition};
pub use verify::{verify_extremal, verify_hecke_relations, verify_stability, verify_typec, RelationBasis};

/// A formal combination of weights, read as `Σ c_β L_β`.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Combination(BTreeMap<DeltaWeight, Rational>);

impl Combination {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, w: DeltaWeight, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(w.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&w);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DeltaWeight, &Rational)> {
        self.0.iter()
    }

    pub fn coefficient(&self, w: &DeltaWeight) -> Rational {
        self.0.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `Σ c_β L_β` in the line-diagram basis.
    pub fn expand(&self, size: usize) -> HomVector {
        let mut v = HomVector::zero(size);
        for (w, c) in self.terms() {
            v.add_scaled(&l_expand(w), c);
        }
        v
    }
}

impl fmt::Debug for Combination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (p, (w, c)) in self.terms().enumerate() {
            if p > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})L[{w}]", format_rational(c))?;
        }
        Ok(())
    }
}
