use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which parameter constraints an operation requires.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// `0 <= m <= k <= n/2`; the range in which the variety exists.
    Strict,
    /// `0 <= k <= n/2` and `0 <= m <= n`; diagram combinatorics only.
    Relaxed,
    /// Like [`Mode::Relaxed`] but without the bound on `k`.
    AnyK,
}

/// The shape data `(n, k, m)`: `n` vertices, `k` cups, cut line after vertex `n - m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ShapeParams {
    pub n: usize,
    pub k: usize,
    pub m: usize,
}

impl ShapeParams {
    /// Relaxed-mode constructor.
    pub fn new(n: usize, k: usize, m: usize) -> Result<Self> {
        Self::with_mode(n, k, m, Mode::Relaxed)
    }

    /// Strict-mode constructor.
    pub fn strict(n: usize, k: usize, m: usize) -> Result<Self> {
        Self::with_mode(n, k, m, Mode::Strict)
    }

    pub fn with_mode(n: usize, k: usize, m: usize, mode: Mode) -> Result<Self> {
        let p = ShapeParams { n, k, m };
        p.validate(mode)?;
        Ok(p)
    }

    pub fn validate(&self, mode: Mode) -> Result<()> {
        let ShapeParams { n, k, m } = *self;
        if n == 0 {
            return Err(Error::InvalidParams("n must be positive".into()));
        }
        if m > n {
            return Err(Error::InvalidParams(format!("m = {m} exceeds n = {n}")));
        }
        if mode != Mode::AnyK && k > n / 2 {
            return Err(Error::InvalidParams(format!("k = {k} exceeds floor(n/2) = {}", n / 2)));
        }
        if mode == Mode::AnyK && k > n {
            return Err(Error::InvalidParams(format!("k = {k} exceeds n = {n}")));
        }
        if mode == Mode::Strict && m > k {
            return Err(Error::InvalidParams(format!("strict mode requires m <= k (m = {m}, k = {k})")));
        }
        Ok(())
    }

    pub fn is_strict(&self) -> bool {
        self.validate(Mode::Strict).is_ok()
    }

    /// Number of vertices left of the cut line.
    pub fn left(&self) -> usize {
        self.n - self.m
    }

    /// The two-row partition `(n - k, k)`.
    pub fn lambda(&self) -> (usize, usize) {
        (self.n - self.k, self.k)
    }

    /// The partition right of the cut in the Young diagram, `(n - k - m, k - m)`.
    pub fn lambda_prime(&self) -> Option<(usize, usize)> {
        Some((self.n.checked_sub(self.k + self.m)?, self.k.checked_sub(self.m)?))
    }

    /// Same `n` and `m` with a different cup count.
    pub fn with_k(&self, k: usize) -> ShapeParams {
        ShapeParams { k, ..*self }
    }

    /// Every strict-mode triple with `n <= max_n`, ordered by `(n, k, m)`.
    pub fn all_strict(max_n: usize) -> Vec<ShapeParams> {
        let mut out = Vec::new();
        for n in 1..=max_n {
            for k in 0..=n / 2 {
                for m in 0..=k {
                    out.push(ShapeParams { n, k, m });
                }
            }
        }
        out
    }
}

impl fmt::Display for ShapeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.n, self.k, self.m)
    }
}
