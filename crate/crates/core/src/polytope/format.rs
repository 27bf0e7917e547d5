//! Plain-text H-representation files.
//!
//! ```text
//! # region Q
//! dim 2
//! 0 1 0
//! 0 -1 1
//! -1 2 2
//! 3 -2 -4
//! ```
//!
//! The first non-comment line is `dim n`; every following line holds `n + 1`
//! rationals `beta alpha_1 ... alpha_n` encoding `beta + alpha . x >= 0`.
//! Lines starting with `#` and blank lines are ignored.

use std::fmt::Write;

use super::{HPolytope, HalfSpace};
use crate::error::{Error, Result};
use crate::linalg::Rational;

pub fn parse_polytope(text: &str) -> Result<HPolytope> {
    let mut dim: Option<usize> = None;
    let mut halfspaces = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| Error::Parse { line: line_no, message };
        let Some(n) = dim else {
            let mut parts = line.split_whitespace();
            if parts.next() != Some("dim") {
                return Err(err(format!("expected `dim n`, found {line:?}")));
            }
            let n = parts
                .next()
                .and_then(|s| s.parse::<usize>().ok())
                .filter(|&n| n > 0)
                .ok_or_else(|| err("dimension must be a positive integer".into()))?;
            if parts.next().is_some() {
                return Err(err("trailing tokens after dimension".into()));
            }
            dim = Some(n);
            continue;
        };
        let tuple = line
            .split_whitespace()
            .map(|tok| tok.parse::<Rational>().map_err(|e| err(e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        if tuple.len() != n + 1 {
            return Err(err(format!("expected {} values, found {}", n + 1, tuple.len())));
        }
        halfspaces.push(HalfSpace::from_tuple(&tuple));
    }
    let dim = dim.ok_or(Error::Parse { line: 0, message: "missing `dim n` header".into() })?;
    HPolytope::new(dim, halfspaces)
}

/// Writes the file form, one halfspace per line in list order. `comment`
/// lines are emitted first, each prefixed with `# `.
pub fn write_polytope(p: &HPolytope, comment: &[&str]) -> String {
    let mut out = String::new();
    for c in comment {
        let _ = writeln!(out, "# {c}");
    }
    let _ = writeln!(out, "dim {}", p.ambient_dim());
    for h in p.halfspaces() {
        let row: Vec<String> = h.to_tuple().iter().map(Rational::to_string).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}
