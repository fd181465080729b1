//! Line-oriented text format for causal diagrams.
//!
//! ```text
//! # the textbook front-door diagram
//! node X
//! X -> Z
//! Z -> Y
//! X <-> Y
//! ```
//!
//! One statement per line; `#` starts a comment. Nodes are indexed in order
//! of first mention, whether through `node` or as an edge endpoint.
//! Repeated declarations and repeated edges are accepted and have no effect.

use std::fmt::Write;

use crate::admg::{valid_name, Admg, AdmgBuilder};
use crate::error::{GraphError, ParseError};

struct Cursor<'a> {
    line: usize,
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn column(&self) -> usize {
        self.text[..self.pos].chars().count() + 1
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            line: self.line,
            column: self.column(),
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn at_end(&self) -> bool {
        self.pos == self.text.len()
    }

    fn ident(&mut self) -> Result<&'a str, ParseError> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let len = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(rest.len());
        let word = &rest[..len];
        if word.is_empty() {
            return Err(self.error("expected a node name"));
        }
        if !valid_name(word) {
            return Err(self.error(format!("invalid node name `{word}`")));
        }
        self.pos += len;
        Ok(word)
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input"))
        }
    }
}

fn builder_error(line: usize, e: GraphError) -> ParseError {
    match e {
        GraphError::SelfLoop(name) => ParseError::SelfLoop { line, name },
        GraphError::CyclicDirectedPart => ParseError::CyclicDirectedPart,
        other => ParseError::Syntax {
            line,
            column: 1,
            message: other.to_string(),
        },
    }
}

/// Parses a graph file.
pub fn parse_graph(text: &str) -> Result<Admg, ParseError> {
    let mut b = AdmgBuilder::new().implicit_nodes(true);
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        let mut cur = Cursor {
            line,
            text: body,
            pos: 0,
        };
        cur.skip_ws();
        if cur.at_end() {
            continue;
        }
        let first = cur.ident()?;
        if first == "node" && !cur.eat("->") && !cur.eat("<->") {
            let name = cur.ident()?;
            cur.finish()?;
            b.ensure_node(name).map_err(|e| builder_error(line, e))?;
            continue;
        }
        // `node` may itself be an edge endpoint; rewind and re-read the operator.
        let mut cur = Cursor {
            line,
            text: body,
            pos: 0,
        };
        let from = cur.ident()?;
        let bidirected = if cur.eat("<->") {
            true
        } else if cur.eat("->") {
            false
        } else {
            return Err(cur.error("expected `->` or `<->`"));
        };
        let to = cur.ident()?;
        cur.finish()?;
        let added = if bidirected {
            b.bidirected(from, to)
        } else {
            b.directed(from, to)
        };
        added.map_err(|e| builder_error(line, e))?;
    }
    b.build().map_err(|e| builder_error(0, e))
}

/// Renders the present nodes and edges of `g` so that [`parse_graph`]
/// reproduces the same node order and edge sets.
pub fn render_graph(g: &Admg) -> String {
    let mut out = String::new();
    for v in g.nodes().iter() {
        writeln!(out, "node {}", g.name(v)).expect("string write");
    }
    for (a, b) in g.directed_edges() {
        writeln!(out, "{} -> {}", g.name(a), g.name(b)).expect("string write");
    }
    for (a, b) in g.bidirected_edges() {
        writeln!(out, "{} <-> {}", g.name(a), g.name(b)).expect("string write");
    }
    out
}
