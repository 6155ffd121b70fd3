//! The instance text format.
//!
//! ```text
//! # a diamond
//! name: D
//! kind: poset
//! elements: 0 a b 1
//! order: 0<a<1 0<b<1
//! ```
//!
//! One `key: value` per line; `#` starts a comment line and blank lines
//! are ignored. Keys are `name`, `kind` (`poset` or `space`), `elements`
//! (whitespace-separated labels) and `order` (whitespace-separated chains
//! `a<b<c`, each read as cover pairs `a<b`, `b<c`). The order is closed
//! reflexively and transitively. If the first token of `order` is `full`,
//! the pairs are taken as the complete strict order and must already be
//! transitive. `elements` is required; each key may appear at most once.

use std::fmt;

use fintop_core::{FinitePoset, RelationMode};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Poset,
    Space,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Poset => "poset",
            Kind::Space => "space",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceFile {
    pub name: String,
    pub kind: Kind,
    pub elements: Vec<String>,
    pub relation: Vec<(String, String)>,
    /// Pairs are the full strict order rather than covers.
    pub full: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Order(fintop_core::Error),
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        message: message.into(),
    }
}

/// Whitespace-separated tokens with their 1-based columns, counted in
/// characters.
fn tokens(text: &str, offset: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (col, (i, c)) in text.char_indices().enumerate() {
        match (c.is_whitespace(), start) {
            (true, Some((s, sc))) => {
                out.push((offset + sc, &text[s..i]));
                start = None;
            }
            (false, None) => start = Some((i, col)),
            _ => {}
        }
    }
    if let Some((s, sc)) = start {
        out.push((offset + sc, &text[s..]));
    }
    out
}

/// Parses and validates an instance. `default_name` is used when the text
/// has no `name:` line.
pub fn parse_instance(text: &str, default_name: &str) -> Result<InstanceFile, InstanceError> {
    let mut name = None;
    let mut kind = None;
    let mut elements: Option<Vec<String>> = None;
    let mut order_line: Option<(usize, Vec<(usize, String)>)> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let indent = raw.chars().count() - trimmed.chars().count();
        let Some(colon) = trimmed.find(':') else {
            return Err(err(line, indent + 1, "expected `key: value`").into());
        };
        let key = trimmed[..colon].trim_end();
        let value = &trimmed[colon + 1..];
        let value_col = indent + trimmed[..=colon].chars().count() + 1;
        let toks = tokens(value, value_col);
        let repeated = || err(line, indent + 1, format!("duplicate key `{key}`"));
        match key {
            "name" => {
                if name.is_some() {
                    return Err(repeated().into());
                }
                let v = value.trim();
                if v.is_empty() {
                    return Err(err(line, value_col, "empty name").into());
                }
                name = Some(v.to_string());
            }
            "kind" => {
                if kind.is_some() {
                    return Err(repeated().into());
                }
                kind = Some(match toks.as_slice() {
                    [(_, "poset")] => Kind::Poset,
                    [(_, "space")] => Kind::Space,
                    _ => return Err(err(line, value_col, "kind must be `poset` or `space`").into()),
                });
            }
            "elements" => {
                if elements.is_some() {
                    return Err(repeated().into());
                }
                let mut seen: Vec<String> = Vec::new();
                for (col, t) in &toks {
                    if t.contains('<') {
                        return Err(err(line, *col, format!("label `{t}` contains `<`")).into());
                    }
                    if seen.iter().any(|s| s == t) {
                        return Err(err(line, *col, format!("duplicate label `{t}`")).into());
                    }
                    seen.push(t.to_string());
                }
                elements = Some(seen);
            }
            "order" => {
                if order_line.is_some() {
                    return Err(repeated().into());
                }
                order_line = Some((line, toks.iter().map(|(c, t)| (*c, t.to_string())).collect()));
            }
            other => {
                return Err(err(line, indent + 1, format!("unknown key `{other}`")).into());
            }
        }
    }

    let Some(elements) = elements else {
        return Err(err(1, 1, "missing `elements:` line").into());
    };
    let mut relation = Vec::new();
    let mut full = false;
    if let Some((line, toks)) = order_line {
        let mut toks = toks.as_slice();
        if let [(_, first), rest @ ..] = toks {
            if first == "full" {
                full = true;
                toks = rest;
            }
        }
        for (col, chain) in toks {
            let parts: Vec<&str> = chain.split('<').collect();
            if parts.len() < 2 {
                return Err(err(line, *col, format!("expected `a<b`, found `{chain}`")).into());
            }
            let mut part_col = *col;
            for part in &parts {
                if !elements.iter().any(|e| e == part) {
                    let message = if part.is_empty() {
                        "empty label in chain".to_string()
                    } else {
                        format!("unknown label `{part}`")
                    };
                    return Err(err(line, part_col, message).into());
                }
                part_col += part.chars().count() + 1;
            }
            for w in parts.windows(2) {
                relation.push((w[0].to_string(), w[1].to_string()));
            }
        }
    }
    let file = InstanceFile {
        name: name.unwrap_or_else(|| default_name.to_string()),
        kind: kind.unwrap_or(Kind::Poset),
        elements,
        relation,
        full,
    };
    file.poset()?;
    Ok(file)
}

impl InstanceFile {
    pub fn poset(&self) -> Result<FinitePoset, InstanceError> {
        let mode = if self.full {
            RelationMode::Full
        } else {
            RelationMode::Covers
        };
        FinitePoset::build(&self.elements, &self.relation, mode).map_err(InstanceError::Order)
    }

    /// Builds a file from a poset, writing its covers.
    pub fn from_poset(name: &str, kind: Kind, p: &FinitePoset) -> Self {
        InstanceFile {
            name: name.to_string(),
            kind,
            elements: p.labels().to_vec(),
            relation: p
                .covers()
                .into_iter()
                .map(|(a, b)| (p.label(a).to_string(), p.label(b).to_string()))
                .collect(),
            full: false,
        }
    }
}

impl fmt::Display for InstanceFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "name: {}", self.name)?;
        writeln!(f, "kind: {}", self.kind.as_str())?;
        writeln!(f, "elements: {}", self.elements.join(" "))?;
        write!(f, "order:")?;
        if self.full {
            write!(f, " full")?;
        }
        for (a, b) in &self.relation {
            write!(f, " {a}<{b}")?;
        }
        writeln!(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_spec_examples() {
        let c2 = parse_instance("elements: 0 1\norder: 0<1", "c2").unwrap();
        assert_eq!(c2.name, "c2");
        assert_eq!(c2.poset().unwrap(), fintop_core::poset::named::chain(2));
        let a2 = parse_instance("elements: a b\norder:", "a2").unwrap();
        assert_eq!(a2.poset().unwrap().covers(), vec![]);
        assert!(matches!(
            parse_instance("elements: p q\norder: p<q q<p", "x"),
            Err(InstanceError::Order(fintop_core::Error::CycleDetected { .. }))
        ));
    }

    #[test]
    fn chains_comments_and_full_marker() {
        let text = "# diamond\nname: D\nkind: space\nelements: 0 a b 1\norder: 0<a<1 0<b<1\n";
        let d = parse_instance(text, "x").unwrap();
        assert_eq!((d.name.as_str(), d.kind), ("D", Kind::Space));
        assert_eq!(d.poset().unwrap(), fintop_core::poset::named::diamond());
        let full = parse_instance("elements: 0 1 2\norder: full 0<1 1<2 0<2", "c3").unwrap();
        assert!(full.full);
        assert_eq!(full.poset().unwrap(), fintop_core::poset::named::chain(3));
        assert!(matches!(
            parse_instance("elements: 0 1 2\norder: full 0<1 1<2", "c3"),
            Err(InstanceError::Order(fintop_core::Error::NotTransitive { .. }))
        ));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_instance("elements: a b\ncolour: red", "x").unwrap_err();
        assert_eq!(e, InstanceError::Parse(err(2, 1, "unknown key `colour`")));
        let e = parse_instance("elements: a b\norder: a<c", "x").unwrap_err();
        assert_eq!(e, InstanceError::Parse(err(2, 10, "unknown label `c`")));
        let e = parse_instance("elements: a a", "x").unwrap_err();
        assert_eq!(e, InstanceError::Parse(err(1, 13, "duplicate label `a`")));
        let e = parse_instance("order: a<b", "x").unwrap_err();
        assert!(matches!(e, InstanceError::Parse(ParseError { line: 1, .. })));
        let e = parse_instance("  elements a b", "x").unwrap_err();
        assert_eq!(e, InstanceError::Parse(err(1, 3, "expected `key: value`")));
    }

    #[test]
    fn display_round_trips() {
        let p = fintop_core::poset::named::diamond();
        let f = InstanceFile::from_poset("D", Kind::Poset, &p);
        let back = parse_instance(&f.to_string(), "other").unwrap();
        assert_eq!(back, f);
        assert_eq!(back.poset().unwrap(), p);
    }
}
