use std::fmt;

use crate::diagrams::CupDiagram;
use crate::error::{Error, Result};
use crate::params::{Mode, ShapeParams};

/// One symbol of a weight. `Down` is ∨, `Up` is ∧; `Down < Up`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Down,
    Up,
}

impl Symbol {
    pub fn ascii(self) -> char {
        match self {
            Symbol::Down => 'v',
            Symbol::Up => '^',
        }
    }

    pub fn unicode(self) -> char {
        match self {
            Symbol::Down => '∨',
            Symbol::Up => '∧',
        }
    }

    pub fn flip(self) -> Symbol {
        match self {
            Symbol::Down => Symbol::Up,
            Symbol::Up => Symbol::Down,
        }
    }
}

/// A Δ-weight: `n` symbols, `k` of them ∨, and no ∨ before an ∧ among the last `m`.
///
/// Ordering is lexicographic on the symbols (∨ < ∧), then by parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeltaWeight {
    symbols: Vec<Symbol>,
    params: ShapeParams,
}

impl DeltaWeight {
    pub fn new(symbols: Vec<Symbol>, m: usize) -> Result<Self> {
        let n = symbols.len();
        let k = symbols.iter().filter(|&&s| s == Symbol::Down).count();
        let params = ShapeParams::with_mode(n, k, m, Mode::AnyK).map_err(|e| Error::InvalidWeight(e.to_string()))?;
        let right = &symbols[n - m..];
        if let Some(p) = right.windows(2).position(|w| w == [Symbol::Down, Symbol::Up]) {
            return Err(Error::InvalidWeight(format!("cut condition violated: ∨ at {} precedes ∧ at {}", n - m + p + 1, n - m + p + 2)));
        }
        Ok(DeltaWeight { symbols, params })
    }

    /// Parses `v`/`^` (or `∨`/`∧`) with an optional `|` before the last `m` symbols.
    /// Without a bar, `m = 0`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut symbols = Vec::new();
        let mut bar = None;
        for c in s.trim().chars() {
            match c {
                'v' | 'V' | '∨' => symbols.push(Symbol::Down),
                '^' | '∧' => symbols.push(Symbol::Up),
                '|' if bar.is_none() => bar = Some(symbols.len()),
                _ => return Err(Error::Parse(format!("unexpected character {c:?} in weight {s:?}"))),
            }
        }
        if symbols.is_empty() {
            return Err(Error::Parse("empty weight".into()));
        }
        let m = bar.map_or(0, |b| symbols.len() - b);
        Self::new(symbols, m)
    }

    /// Parses with an explicit cut offset; a bar, if present, must agree.
    pub fn parse_with_m(s: &str, m: usize) -> Result<Self> {
        let w = Self::parse(s)?;
        if s.contains('|') && w.m() != m {
            return Err(Error::Parse(format!("bar in {s:?} disagrees with m = {m}")));
        }
        Self::new(w.symbols, m)
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn params(&self) -> ShapeParams {
        self.params
    }

    pub fn n(&self) -> usize {
        self.params.n
    }

    pub fn k(&self) -> usize {
        self.params.k
    }

    pub fn m(&self) -> usize {
        self.params.m
    }

    /// Symbol at vertex `v` (1-indexed).
    pub fn at(&self, v: usize) -> Symbol {
        self.symbols[v - 1]
    }

    /// Swaps the symbols at vertices `i` and `j`.
    pub fn swap(&self, i: usize, j: usize) -> Result<DeltaWeight> {
        let n = self.n();
        for v in [i, j] {
            if v == 0 || v > n {
                return Err(Error::IndexOutOfRange { what: "vertex", index: v, max: n });
            }
        }
        let mut symbols = self.symbols.clone();
        symbols.swap(i - 1, j - 1);
        Self::new(symbols, self.m())
    }

    /// The cup diagram `C(α)`.
    pub fn cup_diagram(&self) -> CupDiagram {
        weight_to_cup(self)
    }

    pub fn to_unicode(&self) -> String {
        self.render(Symbol::unicode)
    }

    fn render(&self, glyph: fn(Symbol) -> char) -> String {
        let cut = self.n() - self.m();
        let mut s = String::with_capacity(self.n() + 1);
        for (p, &sym) in self.symbols.iter().enumerate() {
            if p == cut && self.m() > 0 {
                s.push('|');
            }
            s.push(glyph(sym));
        }
        s
    }
}

impl fmt::Display for DeltaWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Symbol::ascii))
    }
}

/// All Δ-weights of type `(n - k, k, m)` in lexicographic order.
pub fn enumerate_weights(params: ShapeParams) -> Result<Vec<DeltaWeight>> {
    params.validate(Mode::AnyK)?;
    let ShapeParams { n, k, m } = params;
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn go(n: usize, k: usize, m: usize, downs: usize, cur: &mut Vec<Symbol>, out: &mut Vec<DeltaWeight>) {
        let p = cur.len();
        if p == n {
            if downs == k {
                out.push(DeltaWeight { symbols: cur.clone(), params: ShapeParams { n, k, m } });
            }
            return;
        }
        let ups_left = (n - p) - (k - downs);
        if downs < k {
            cur.push(Symbol::Down);
            go(n, k, m, downs + 1, cur, out);
            cur.pop();
        }
        // Right of the cut an ∧ may not follow a ∨.
        let blocked = p > n - m && cur[p - 1] == Symbol::Down;
        if ups_left > 0 && !blocked {
            cur.push(Symbol::Up);
            go(n, k, m, downs, cur, out);
            cur.pop();
        }
    }
    go(n, k, m, 0, &mut cur, &mut out);
    Ok(out)
}

/// `C(α)`: match each ∨ with the nearest unmatched ∧ to its right; the rest are rays.
pub fn weight_to_cup(w: &DeltaWeight) -> CupDiagram {
    let mut stack = Vec::new();
    let mut cups = Vec::new();
    for (p, &s) in w.symbols().iter().enumerate() {
        match s {
            Symbol::Down => stack.push(p + 1),
            Symbol::Up => {
                if let Some(l) = stack.pop() {
                    cups.push((l, p + 1));
                }
            }
        }
    }
    CupDiagram::from_cups(w.n(), w.m(), &cups).expect("stack matching yields a valid Δ-cup diagram")
}

/// Canonical preimage: ∨ at left endpoints, ∧ at right endpoints and rays.
pub fn cup_to_weight(a: &CupDiagram) -> DeltaWeight {
    from_diagram(a, a.cup_count()).expect("canonical weight exists")
}

/// The unique weight with `k` ∨ symbols whose cup diagram is `a`: the last
/// `k - #cups` rays carry ∨. `None` when there are not enough rays.
pub fn from_diagram(a: &CupDiagram, k: usize) -> Option<DeltaWeight> {
    let d = a.cup_count();
    let rays = a.rays();
    if k < d || k - d > rays.len() {
        return None;
    }
    let mut symbols = vec![Symbol::Up; a.n()];
    for (l, _) in a.cups() {
        symbols[l - 1] = Symbol::Down;
    }
    for &v in &rays[rays.len() - (k - d)..] {
        symbols[v - 1] = Symbol::Down;
    }
    DeltaWeight::new(symbols, a.m()).ok()
}
