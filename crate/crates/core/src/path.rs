//! Human-readable atom addresses.
//!
//! A level-0 atom `⟨0, p, ∅, k⟩` is written `p@0[k]`; a successor
//! `⟨n, q, a, k⟩` is written `q@n[<path of a>]#k`. Paths are independent of
//! interning order, so they are stable across universes that share an atom.

use thiserror::Error;

use crate::universe::{AtomId, Universe};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("malformed atom path `{path}` at byte {offset}: {message}")]
    Syntax {
        path: String,
        offset: usize,
        message: &'static str,
    },
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
}

pub fn atom_path(u: &Universe, id: AtomId) -> String {
    let mut out = String::new();
    write_path(u, id, &mut out);
    out
}

fn write_path(u: &Universe, id: AtomId, out: &mut String) {
    let atom = u.atom(id);
    out.push_str(u.order().name(atom.element()));
    out.push('@');
    out.push_str(&atom.level().to_string());
    out.push('[');
    match atom.parent() {
        None => out.push_str(&atom.index().to_string()),
        Some(parent) => {
            write_path(u, parent, out);
            out.push_str("]#");
            out.push_str(&atom.index().to_string());
            return;
        }
    }
    out.push(']');
}

pub fn parse_atom_path(u: &Universe, path: &str) -> Result<AtomId, PathError> {
    let mut parser = Parser {
        src: path,
        pos: 0,
        universe: u,
    };
    let id = parser.atom()?;
    if parser.pos != path.len() {
        return Err(parser.error("trailing characters"));
    }
    Ok(id)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    universe: &'a Universe,
}

impl Parser<'_> {
    fn error(&self, message: &'static str) -> PathError {
        PathError::Syntax {
            path: self.src.to_string(),
            offset: self.pos,
            message,
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), PathError> {
        if self.src.as_bytes().get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(match c {
                b'@' => "expected `@`",
                b'[' => "expected `[`",
                b']' => "expected `]`",
                _ => "expected `#`",
            }))
        }
    }

    fn number(&mut self) -> Result<usize, PathError> {
        let start = self.pos;
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| PathError::Syntax {
                path: self.src.to_string(),
                offset: start,
                message: "expected a number",
            })
    }

    fn atom(&mut self) -> Result<AtomId, PathError> {
        let start = self.pos;
        let name_len = self.src[start..]
            .find('@')
            .ok_or_else(|| self.error("expected `element@level`"))?;
        let name = &self.src[start..start + name_len];
        if name.is_empty() || name.contains(['[', ']', '#']) {
            return Err(self.error("invalid element name"));
        }
        self.pos += name_len;
        self.expect(b'@')?;
        let level = self.number()?;
        self.expect(b'[')?;
        let unknown = || PathError::UnknownAtom(self.src[start..].to_string());
        let element = self
            .universe
            .order()
            .index_of(name)
            .map_err(|_| unknown())?;
        if level == 0 {
            let index = self.number()?;
            self.expect(b']')?;
            self.universe
                .find(0, element, None, index)
                .ok_or_else(|| PathError::UnknownAtom(self.src[start..self.pos].to_string()))
        } else {
            let parent = self.atom()?;
            self.expect(b']')?;
            self.expect(b'#')?;
            let index = self.number()?;
            self.universe
                .find(level, element, Some(parent), index)
                .ok_or_else(|| PathError::UnknownAtom(self.src[start..self.pos].to_string()))
        }
    }
}
