//! Text encodings of cup diagrams: JSON, ASCII art and TikZ.
//!
//! The TikZ reader accepts only the dialect written by [`render`]. TikZ
//! x-coordinates are `vertex - 1`.

use std::fmt::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::diagrams::CupDiagram;
use crate::error::{Error, Result};

pub const SCHEMA: &str = "delta-springer/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Ascii,
    Tikz,
    Json,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ascii" => Ok(Format::Ascii),
            "tikz" => Ok(Format::Tikz),
            "json" => Ok(Format::Json),
            _ => Err(Error::Parse(format!("unknown format {s:?} (expected ascii, tikz or json)"))),
        }
    }
}

/// JSON form of a diagram. Field order is the canonical serialization order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub n: usize,
    pub m: usize,
    pub cups: Vec<[usize; 2]>,
    pub rays: Vec<usize>,
}

impl DiagramRecord {
    pub fn of(a: &CupDiagram) -> Self {
        DiagramRecord { schema: None, n: a.n(), m: a.m(), cups: a.cups().into_iter().map(|(l, r)| [l, r]).collect(), rays: a.rays() }
    }

    pub fn with_schema(mut self) -> Self {
        self.schema = Some(SCHEMA.to_string());
        self
    }

    pub fn to_diagram(&self) -> Result<CupDiagram> {
        if let Some(s) = &self.schema {
            if s != SCHEMA {
                return Err(Error::Parse(format!("unsupported schema {s:?}")));
            }
        }
        let cups: Vec<(usize, usize)> = self.cups.iter().map(|c| (c[0], c[1])).collect();
        CupDiagram::new(self.n, self.m, &cups, &self.rays)
    }
}

impl Serialize for CupDiagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DiagramRecord::of(self).serialize(s)
    }
}

pub fn render(a: &CupDiagram, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string(&DiagramRecord::of(a)).expect("diagram serializes"),
        Format::Ascii => render_ascii(a),
        Format::Tikz => render_tikz(a),
    }
}

/// Detects the format: JSON objects start with `{`, TikZ with `\begin{tikzpicture}`.
pub fn parse_diagram(text: &str) -> Result<CupDiagram> {
    let t = text.trim_start();
    if t.starts_with('{') {
        serde_json::from_str::<DiagramRecord>(t)?.to_diagram()
    } else if t.starts_with("\\begin{tikzpicture}") {
        parse_tikz(t)
    } else {
        parse_ascii(text.trim_start_matches(['\n', '\r']))
    }
}

/// Nesting height of each cup: 0 when nothing is nested inside.
fn heights(a: &CupDiagram) -> Vec<((usize, usize), usize)> {
    let mut cups = a.cups();
    cups.sort_by_key(|&(l, r)| r - l);
    let mut out: Vec<((usize, usize), usize)> = Vec::new();
    for (l, r) in cups {
        let h = out.iter().filter(|((a, b), _)| l < *a && *b < r).map(|(_, h)| h + 1).max().unwrap_or(0);
        out.push(((l, r), h));
    }
    out.sort();
    out
}

fn column(v: usize) -> usize {
    2 + 4 * (v - 1)
}

fn put(row: &mut Vec<char>, col: usize, c: char) {
    if row.len() <= col {
        row.resize(col + 1, ' ');
    }
    row[col] = c;
}

fn finish(row: Vec<char>) -> String {
    row.into_iter().collect::<String>().trim_end().to_string()
}

fn render_ascii(a: &CupDiagram) -> String {
    let n = a.n();
    let cut = (a.m() > 0).then(|| 4 * a.left());
    let mut header = Vec::new();
    for v in 1..=n {
        for (i, c) in v.to_string().chars().enumerate() {
            put(&mut header, column(v) + i, c);
        }
    }
    if let Some(c) = cut {
        put(&mut header, c, ':');
    }
    let hs = heights(a);
    let rows = hs.iter().map(|(_, h)| h + 1).max().unwrap_or(1);
    let mut lines = vec![finish(header)];
    for r in 0..rows {
        let mut row = Vec::new();
        for v in a.rays() {
            put(&mut row, column(v), '|');
        }
        for &((l, rr), h) in &hs {
            if r < h {
                put(&mut row, column(l), '|');
                put(&mut row, column(rr), '|');
            } else if r == h {
                put(&mut row, column(l), '\\');
                for c in column(l) + 1..column(rr) {
                    put(&mut row, c, '_');
                }
                put(&mut row, column(rr), '/');
            }
        }
        if let Some(c) = cut {
            if row.get(c).map_or(true, |&x| x == ' ') {
                put(&mut row, c, ':');
            }
        }
        lines.push(finish(row));
    }
    lines.join("\n") + "\n"
}

fn parse_ascii(text: &str) -> Result<CupDiagram> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| Error::Parse("empty diagram".into()))?;
    let mut cols = Vec::new();
    let mut cut_seen = false;
    let mut m = 0;
    let chars: Vec<char> = header.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let label: String = chars[start..i].iter().collect();
            if label.parse::<usize>().ok() != Some(cols.len() + 1) {
                return Err(Error::Parse(format!("header label {label} out of sequence")));
            }
            cols.push(start);
            if cut_seen {
                m += 1;
            }
            continue;
        }
        match c {
            ':' if !cut_seen => cut_seen = true,
            ' ' => {}
            _ => return Err(Error::Parse(format!("unexpected {c:?} in header"))),
        }
        i += 1;
    }
    let n = cols.len();
    let vertex_at = |c: usize| cols.iter().position(|&x| x == c).map(|p| p + 1);
    let mut cups = Vec::new();
    for line in lines {
        let row: Vec<char> = line.chars().collect();
        let mut c = 0;
        while c < row.len() {
            if row[c] == '\\' {
                let l = vertex_at(c).ok_or_else(|| Error::Parse(format!("'\\' at column {c} is not on a vertex")))?;
                let end =
                    (c + 1..row.len()).find(|&x| row[x] == '/').ok_or_else(|| Error::Parse(format!("unterminated cup at column {c}")))?;
                let r = vertex_at(end).ok_or_else(|| Error::Parse(format!("'/' at column {end} is not on a vertex")))?;
                cups.push((l, r));
                c = end;
            }
            c += 1;
        }
    }
    CupDiagram::from_cups(n, m, &cups)
}

/// Formats `x2 / 2` exactly.
fn half(x2: i64) -> String {
    let sign = if x2 < 0 { "-" } else { "" };
    let a = x2.unsigned_abs();
    if a % 2 == 0 {
        format!("{sign}{}", a / 2)
    } else {
        format!("{sign}{}.5", a / 2)
    }
}

/// Parses a decimal that is a multiple of one half; returns twice its value.
fn parse_half(s: &str) -> Result<i64> {
    let bad = || Error::Parse(format!("coordinate {s:?} is not a multiple of 1/2"));
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    let w: i64 = whole.parse().map_err(|_| bad())?;
    let f = match frac.trim_end_matches('0') {
        "" => 0,
        "5" => 1,
        _ => return Err(bad()),
    };
    let v = 2 * w + f;
    Ok(if neg { -v } else { v })
}

fn render_tikz(a: &CupDiagram) -> String {
    let n = a.n() as i64;
    let hs = heights(a);
    let depth = hs.iter().map(|(_, h)| *h as i64 + 1).max().unwrap_or(0);
    // Half-units: the axis is at y = 1, a cup of height h bottoms out at 1 - (h+1)/2.
    let bottom2 = (2 - depth - 1).min(-2);
    let mut s = String::from("\\begin{tikzpicture}[scale=0.6]\n");
    writeln!(s, "\\draw[thick,densely dotted] (-0.5,1) to ({},1);", half(2 * n - 1)).unwrap();
    for v in 0..n {
        writeln!(s, "\\draw[black,fill=black] ({v},1) circle (2.0pt);").unwrap();
    }
    for ((l, r), h) in hs {
        let (x1, x2) = (2 * (l as i64 - 1), 2 * (r as i64 - 1));
        let y = 2 - (h as i64 + 1);
        writeln!(
            s,
            "\\draw[very thick] ({},1) to[out=-90,in=180] ({},{}) to[out=0,in=-90] ({},1);",
            half(x1),
            half((x1 + x2) / 2),
            half(y),
            half(x2)
        )
        .unwrap();
    }
    for v in a.rays() {
        writeln!(s, "\\draw[very thick] ({},1) to ({},{});", v - 1, v - 1, half(bottom2)).unwrap();
    }
    if a.m() > 0 {
        let x = 2 * a.left() as i64 - 1;
        writeln!(s, "\\draw[red,dashed] ({},{}) to ({},1.15);", half(x), half(bottom2), half(x)).unwrap();
    }
    s.push_str("\\end{tikzpicture}\n");
    s
}

fn coordinates(line: &str) -> Result<Vec<(i64, String)>> {
    let mut out = Vec::new();
    let mut rest = line;
    while let Some(open) = rest.find('(') {
        let close = rest[open..].find(')').ok_or_else(|| Error::Parse("unbalanced '('".into()))? + open;
        let inner = &rest[open + 1..close];
        if let Some((x, y)) = inner.split_once(',') {
            out.push((parse_half(x)?, y.trim().to_string()));
        }
        rest = &rest[close + 1..];
    }
    Ok(out)
}

fn parse_tikz(text: &str) -> Result<CupDiagram> {
    let mut n = 0;
    let mut left = None;
    let mut cups = Vec::new();
    let mut rays = Vec::new();
    let vertex = |x2: i64| -> Result<usize> {
        if x2 < 0 || x2 % 2 != 0 {
            return Err(Error::Parse(format!("x = {} is not a vertex position", half(x2))));
        }
        Ok(x2 as usize / 2 + 1)
    };
    for line in text.lines().map(str::trim) {
        if line.contains("circle") {
            n += 1;
        } else if line.starts_with("\\draw[red,dashed]") {
            let (x2, _) = coordinates(line)?.first().cloned().ok_or_else(|| Error::Parse("cut line without coordinates".into()))?;
            left = Some(((x2 + 1) / 2) as usize);
        } else if line.starts_with("\\draw[very thick]") {
            let pts = coordinates(line)?;
            if pts.len() < 2 {
                return Err(Error::Parse(format!("cannot read {line:?}")));
            }
            if line.contains("to[out") {
                cups.push((vertex(pts[0].0)?, vertex(pts[pts.len() - 1].0)?));
            } else {
                rays.push(vertex(pts[0].0)?);
            }
        }
    }
    let m = match left {
        Some(l) if l <= n => n - l,
        Some(l) => return Err(Error::Parse(format!("cut line after vertex {l} beyond n = {n}"))),
        None => 0,
    };
    CupDiagram::new(n, m, &cups, &rays)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> CupDiagram {
        CupDiagram::from_cups(6, 2, &[(1, 2), (3, 6), (4, 5)]).unwrap()
    }

    #[test]
    fn json_canonical() {
        assert_eq!(render(&a(), Format::Json), r#"{"n":6,"m":2,"cups":[[1,2],[3,6],[4,5]],"rays":[]}"#);
        let parsed = parse_diagram(r#"{"n":6,"m":2,"cups":[[1,2],[3,6],[4,5]],"rays":[]}"#).unwrap();
        assert_eq!(parsed, a());
        let err = parse_diagram(r#"{"n":6,"m":2,"cups":[[5,6]],"rays":[1,2,3,4]}"#).unwrap_err();
        assert!(err.to_string().contains("cut condition violated"));
        assert!(parse_diagram(r#"{"n":6,"m":2,"cups":[[5,6]]"#).is_err());
    }

    #[test]
    fn ascii_layout() {
        let text = render(&a(), Format::Ascii);
        assert_eq!(text, "  1   2   3   4 : 5   6\n  \\___/   |   \\___/   |\n          \\___________/\n");
        assert_eq!(parse_diagram(&text).unwrap(), a());
    }

    #[test]
    fn round_trips() {
        let samples = [
            a(),
            CupDiagram::rays_only(3, 0).unwrap(),
            CupDiagram::from_cups(7, 3, &[(1, 2), (3, 6), (4, 5)]).unwrap(),
            CupDiagram::from_cups(4, 4, &[]).unwrap(),
            CupDiagram::from_cups(12, 1, &[(1, 12), (2, 3), (4, 11), (5, 6), (7, 10), (8, 9)]).unwrap(),
        ];
        for d in samples {
            for f in [Format::Ascii, Format::Tikz, Format::Json] {
                assert_eq!(parse_diagram(&render(&d, f)).unwrap(), d, "{f:?}");
            }
        }
    }

    #[test]
    fn halves() {
        for x in -7..7 {
            assert_eq!(parse_half(&half(x)).unwrap(), x);
        }
        assert!(parse_half("0.25").is_err());
    }
}
