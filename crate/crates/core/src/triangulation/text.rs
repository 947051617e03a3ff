//! The line-oriented gluing file format.
//!
//! ```text
//! % comment
//! tetrahedra: 2
//! glue 0 0 : 1 1 : 1 3 0 2
//! ```
//!
//! Each gluing orbit is listed once. Faces that are never mentioned are
//! boundary faces.

use super::Triangulation;
use crate::error::{Error, Result};
use crate::perm::Perm4;

struct Tokens<'a> {
    line: usize,
    text: &'a str,
    pos: usize,
}

impl<'a> Tokens<'a> {
    fn new(line: usize, text: &'a str) -> Self {
        Tokens { line, text, pos: 0 }
    }

    fn syntax(&self, column: usize, message: impl Into<String>) -> Error {
        Error::Syntax { line: self.line, column, message: message.into() }
    }

    /// Next whitespace-separated token with its 1-based column.
    fn next(&mut self) -> Option<(usize, &'a str)> {
        let rest = &self.text[self.pos..];
        let start = rest.find(|c: char| !c.is_whitespace())?;
        let rest = &rest[start..];
        let len = rest.find(char::is_whitespace).unwrap_or(rest.len());
        let column = self.pos + start + 1;
        self.pos += start + len;
        Some((column, &rest[..len]))
    }

    fn expect(&mut self, what: &str) -> Result<usize> {
        match self.next() {
            Some((col, tok)) if tok == what => Ok(col),
            Some((col, tok)) => Err(self.syntax(col, format!("expected `{what}`, found `{tok}`"))),
            None => Err(self.syntax(self.text.len() + 1, format!("expected `{what}`"))),
        }
    }

    fn number(&mut self) -> Result<(usize, usize)> {
        match self.next() {
            Some((col, tok)) => tok
                .parse::<usize>()
                .map(|v| (col, v))
                .map_err(|_| self.syntax(col, format!("expected a non-negative integer, found `{tok}`"))),
            None => Err(self.syntax(self.text.len() + 1, "expected a number")),
        }
    }

    fn finish(&mut self) -> Result<()> {
        match self.next() {
            Some((col, tok)) => Err(self.syntax(col, format!("unexpected trailing `{tok}`"))),
            None => Ok(()),
        }
    }
}

pub fn parse_triangulation(text: &str) -> Result<Triangulation> {
    let mut tri: Option<Triangulation> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            continue;
        }
        let mut toks = Tokens::new(line, raw);
        let (col, first) = toks.next().expect("non-empty line has a token");
        match (first, tri.as_mut()) {
            ("tetrahedra:", None) => {
                let (_, n) = toks.number()?;
                toks.finish()?;
                tri = Some(Triangulation::new(n));
            }
            ("tetrahedra:", Some(_)) => {
                return Err(toks.syntax(col, "duplicate `tetrahedra:` header"));
            }
            ("glue", None) => {
                return Err(toks.syntax(col, "gluing before the `tetrahedra:` header"));
            }
            ("glue", Some(t)) => {
                let (_, t1) = toks.number()?;
                let (_, f1) = toks.number()?;
                toks.expect(":")?;
                let (_, t2) = toks.number()?;
                let (_, f2) = toks.number()?;
                toks.expect(":")?;
                let mut images = [0u8; 4];
                let mut pcol = 0;
                for (k, slot) in images.iter_mut().enumerate() {
                    let (c, v) = toks.number()?;
                    if k == 0 {
                        pcol = c;
                    }
                    if v > 3 {
                        return Err(toks.syntax(c, format!("vertex label {v} is not in 0..=3")));
                    }
                    *slot = v as u8;
                }
                toks.finish()?;
                let perm = Perm4::new(images)
                    .ok_or_else(|| toks.syntax(pcol, "not a permutation of 0 1 2 3"))?;
                t.join_checked(line, t1, f1, t2, f2, perm)?;
            }
            (other, _) => {
                return Err(toks.syntax(col, format!("unknown directive `{other}`")));
            }
        }
    }
    tri.ok_or(Error::Syntax { line: 1, column: 1, message: "missing `tetrahedra:` header".into() })
}

/// Writes the canonical text form: the header, then each gluing orbit once
/// from its lexicographically smaller side, in lexicographic order.
pub fn serialize_triangulation(tri: &Triangulation) -> String {
    let mut out = format!("tetrahedra: {}\n", tri.size());
    for fp in tri.face_pairs() {
        let [a, b, c, d] = fp.perm.images();
        out.push_str(&format!(
            "glue {} {} : {} {} : {a} {b} {c} {d}\n",
            fp.tet, fp.face, fp.other_tet, fp.other_face
        ));
    }
    out
}
