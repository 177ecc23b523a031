//! Workspace files: a small header and a list of `let` bindings.
//!
//! ```text
//! n = 2
//! coeff = qsqrt2
//! precision = (6, 0)
//! let a = 1 + t1
//! let b = a^(1/2)
//! ```
//!
//! Bindings are parsed in order, so later ones may refer to earlier ones.
//! Saving writes each binding's rendering, which parses back to the same
//! series, so loading is idempotent.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use hahnsat_core::coeff::CoeffField;
use hahnsat_core::parse::{parse_series, ParseContext};
use hahnsat_core::series::{Precision, Series};
use hahnsat_core::{Error, ExpVec, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Workspace {
    pub dim: usize,
    pub field: CoeffField,
    pub precision: Precision,
    /// Bindings in definition order.
    pub bindings: Vec<(String, Series)>,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        pos: line,
        msg: msg.into(),
    }
}

impl Workspace {
    pub fn new(dim: usize, field: CoeffField, precision: Precision) -> Self {
        let dim = dim.max(1);
        Workspace {
            dim,
            field,
            precision: precision.pad_to(dim),
            bindings: Vec::new(),
        }
    }

    pub fn map(&self) -> HashMap<String, Series> {
        self.bindings.iter().cloned().collect()
    }

    /// Adds or replaces a binding.
    pub fn bind(&mut self, name: &str, value: Series) {
        let value = value.pad_to(self.dim);
        match self.bindings.iter_mut().find(|(n, _)| n == name) {
            Some(slot) => slot.1 = value,
            None => self.bindings.push((name.to_string(), value)),
        }
    }

    /// Parses `src` against the current bindings.
    pub fn parse(&self, src: &str) -> Result<Series> {
        let map = self.map();
        let ctx = ParseContext::new(self.dim, self.field, self.precision.clone()).with_bindings(&map);
        parse_series(src, &ctx)
    }

    /// Grows the ambient dimension and re-embeds every binding.
    pub fn extend_to(&mut self, dim: usize) {
        if dim <= self.dim {
            return;
        }
        self.dim = dim;
        self.precision = self.precision.pad_to(dim);
        for (_, s) in &mut self.bindings {
            *s = s.pad_to(dim);
        }
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut dim = None;
        let mut field = CoeffField::default();
        let mut precision = None;
        let mut ws: Option<Workspace> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let lineno = i + 1;
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("let ") {
                let (name, expr) = rest
                    .split_once('=')
                    .ok_or_else(|| parse_err(lineno, "expected `let name = expr`"))?;
                let name = name.trim();
                if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                    return Err(parse_err(lineno, format!("bad binding name {name:?}")));
                }
                let w = ws.get_or_insert_with(|| {
                    let d = dim.unwrap_or(1);
                    Workspace::new(d, field, precision.clone().unwrap_or_else(|| Precision::order(d, 6)))
                });
                let value = w.parse(expr.trim()).map_err(|e| parse_err(lineno, e.to_string()))?;
                w.bind(name, value);
                continue;
            }
            if ws.is_some() {
                return Err(parse_err(lineno, "header lines must precede bindings"));
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| parse_err(lineno, format!("unrecognized line {line:?}")))?;
            let value = value.trim();
            match key.trim() {
                "n" => {
                    let n: usize = value
                        .parse()
                        .map_err(|_| parse_err(lineno, format!("bad dimension {value:?}")))?;
                    dim = Some(n.max(1));
                }
                "coeff" => field = value.parse().map_err(|e: Error| parse_err(lineno, e.to_string()))?,
                "precision" => {
                    let v: ExpVec = value.parse().map_err(|e: Error| parse_err(lineno, e.to_string()))?;
                    precision = Some(Precision::new(v));
                }
                other => return Err(parse_err(lineno, format!("unknown header key {other:?}"))),
            }
        }
        Ok(ws.unwrap_or_else(|| {
            let d = dim.unwrap_or(1);
            Workspace::new(d, field, precision.unwrap_or_else(|| Precision::order(d, 6)))
        }))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "n = {}", self.dim);
        let _ = writeln!(out, "coeff = {}", self.field.name());
        let _ = writeln!(out, "precision = {}", self.precision.target);
        for (name, s) in &self.bindings {
            let _ = writeln!(out, "let {name} = {s}");
        }
        out
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| parse_err(0, format!("cannot read {}: {e}", path.display())))?;
        Workspace::from_text(&text)
    }

    pub fn save(&self, path: &Path) -> std::io::Result<()> {
        std::fs::write(path, self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "n = 2\ncoeff = qsqrt2\nprecision = (4, 0)\nlet a = 1 + t1\nlet b = a^(1/2) + t2\n";

    #[test]
    fn load_and_round_trip() {
        let ws = Workspace::from_text(SAMPLE).unwrap();
        assert_eq!(ws.dim, 2);
        assert_eq!(ws.bindings.len(), 2);
        let again = Workspace::from_text(&ws.to_text()).unwrap();
        assert_eq!(again, ws);
        assert_eq!(Workspace::from_text(&again.to_text()).unwrap(), ws);
    }

    #[test]
    fn later_bindings_see_earlier_ones() {
        let ws = Workspace::from_text(SAMPLE).unwrap();
        let b = &ws.map()["b"];
        assert!(!b.is_exact());
    }

    #[test]
    fn extension_reembeds() {
        let mut ws = Workspace::from_text(SAMPLE).unwrap();
        ws.extend_to(3);
        assert!(ws.bindings.iter().all(|(_, s)| s.dim() == 3));
        assert_eq!(ws.precision.target.dim(), 3);
        assert!(ws.parse("t3 + a").is_ok());
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = Workspace::from_text("n = 1\nlet a = (1 +\n").unwrap_err();
        assert!(matches!(err, Error::Parse { pos: 2, .. }));
        assert!(Workspace::from_text("let a = 1\nn = 2\n").is_err());
        assert!(Workspace::from_text("colour = red\n").is_err());
    }
}
