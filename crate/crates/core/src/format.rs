//! Line-oriented text format for graphs of groups, and DOT rendering.
//!
//! ```text
//! # comment
//! vertex a cyclic
//! vertex P surface orientable genus=0 slots=3
//! edge t a a src=(n=2) dst=(n=3)
//! edge b P a src=(slot=1, n=2) dst=(n=3)
//! ```
//!
//! Vertices must be declared before edges that use them. Ids follow
//! declaration order, so printing and re-parsing preserves them.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::model::{Attachment, GraphOfGroups, SlotId, SurfaceData, VertexKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{column}: syntax error: {message}")]
    SyntaxError { line: usize, column: usize, message: String },
    #[error("{line}:{column}: unknown vertex `{name}`")]
    UnknownVertex { line: usize, column: usize, name: String },
    #[error("{line}:{column}: slot {slot} of `{vertex}` is already used")]
    DuplicateSlotUse { line: usize, column: usize, vertex: String, slot: SlotId },
    #[error("{line}:{column}: exponent must be nonzero")]
    ZeroExponent { line: usize, column: usize },
}

impl ParseError {
    pub fn position(&self) -> (usize, usize) {
        match *self {
            ParseError::SyntaxError { line, column, .. }
            | ParseError::UnknownVertex { line, column, .. }
            | ParseError::DuplicateSlotUse { line, column, .. }
            | ParseError::ZeroExponent { line, column } => (line, column),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Accept several edge ends on one surface slot, as in a covered graph
    /// whose lifts share covering curves.
    pub allow_shared_slots: bool,
}

pub fn parse(text: &str) -> Result<GraphOfGroups, ParseError> {
    parse_with(text, ParseOptions::default())
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    Punct(char),
}

struct Line {
    number: usize,
    tokens: Vec<(Tok, usize)>,
    pos: usize,
    end_column: usize,
}

impl Line {
    fn lex(number: usize, text: &str) -> Line {
        let mut tokens = Vec::new();
        let mut word = String::new();
        let mut start = 0;
        let mut column = 0;
        for (i, c) in text.chars().enumerate() {
            column = i + 1;
            if c == '#' {
                break;
            }
            let punct = matches!(c, '(' | ')' | ',' | '=');
            if c.is_whitespace() || punct {
                if !word.is_empty() {
                    tokens.push((Tok::Word(std::mem::take(&mut word)), start));
                }
                if punct {
                    tokens.push((Tok::Punct(c), column));
                }
            } else {
                if word.is_empty() {
                    start = column;
                }
                word.push(c);
            }
        }
        if !word.is_empty() {
            tokens.push((Tok::Word(word), start));
        }
        Line { number, tokens, pos: 0, end_column: column + 1 }
    }

    fn column(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end_column, |t| t.1)
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::SyntaxError { line: self.number, column: self.column(), message: message.into() }
    }

    fn word(&mut self, what: &str) -> Result<(String, usize), ParseError> {
        match self.tokens.get(self.pos) {
            Some((Tok::Word(w), c)) => {
                let out = (w.clone(), *c);
                self.pos += 1;
                Ok(out)
            }
            _ => Err(self.error(format!("expected {what}"))),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        match self.tokens.get(self.pos) {
            Some((Tok::Word(w), _)) if w == kw => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.error(format!("expected `{kw}`"))),
        }
    }

    fn punct(&mut self, p: char) -> Result<(), ParseError> {
        match self.tokens.get(self.pos) {
            Some((Tok::Punct(q), _)) if *q == p => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.error(format!("expected `{p}`"))),
        }
    }

    fn int<T: std::str::FromStr>(&mut self, what: &str) -> Result<(T, usize), ParseError> {
        let column = self.column();
        let (w, c) = self.word(what)?;
        w.parse()
            .map(|v| (v, c))
            .map_err(|_| ParseError::SyntaxError {
                line: self.number,
                column,
                message: format!("expected {what}, found `{w}`"),
            })
    }

    /// `key=value` with an integer value.
    fn field<T: std::str::FromStr>(&mut self, key: &str) -> Result<(T, usize), ParseError> {
        self.keyword(key)?;
        self.punct('=')?;
        self.int(key)
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.pos < self.tokens.len() {
            Err(self.error("unexpected trailing input"))
        } else {
            Ok(())
        }
    }
}

/// Parsed edge end: optional slot, exponent, and the column of the exponent.
struct EndSpec {
    slot: Option<(SlotId, usize)>,
    exponent: i64,
}

fn end_spec(line: &mut Line, key: &str) -> Result<EndSpec, ParseError> {
    line.keyword(key)?;
    line.punct('=')?;
    line.punct('(')?;
    let mut slot = None;
    if matches!(line.tokens.get(line.pos), Some((Tok::Word(w), _)) if w == "slot") {
        slot = Some(line.field::<SlotId>("slot")?);
        line.punct(',')?;
    }
    let (exponent, column) = line.field::<i64>("n")?;
    if exponent == 0 {
        return Err(ParseError::ZeroExponent { line: line.number, column });
    }
    line.punct(')')?;
    Ok(EndSpec { slot, exponent })
}

pub fn parse_with(text: &str, options: ParseOptions) -> Result<GraphOfGroups, ParseError> {
    let mut g = GraphOfGroups::new();
    let mut used_slots: BTreeMap<(usize, SlotId), ()> = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let mut line = Line::lex(i + 1, raw);
        if line.tokens.is_empty() {
            continue;
        }
        let (head, _) = line.word("declaration")?;
        match head.as_str() {
            "vertex" => {
                let column = line.column();
                let (name, _) = line.word("vertex name")?;
                if g.vertex_by_name(&name).is_some() {
                    return Err(ParseError::SyntaxError {
                        line: line.number,
                        column,
                        message: format!("duplicate vertex `{name}`"),
                    });
                }
                let (kind, _) = line.word("`cyclic` or `surface`")?;
                let kind = match kind.as_str() {
                    "cyclic" => VertexKind::Cyclic,
                    "surface" => {
                        let column = line.column();
                        let (o, _) = line.word("`orientable` or `nonorientable`")?;
                        let orientable = match o.as_str() {
                            "orientable" => true,
                            "nonorientable" => false,
                            _ => {
                                return Err(ParseError::SyntaxError {
                                    line: line.number,
                                    column,
                                    message: format!("expected `orientable` or `nonorientable`, found `{o}`"),
                                })
                            }
                        };
                        let (genus, _) = line.field::<u32>("genus")?;
                        let (boundary, _) = line.field::<usize>("slots")?;
                        VertexKind::Surface(SurfaceData { orientable, genus, boundary })
                    }
                    other => {
                        line.pos -= 1;
                        return Err(line.error(format!("expected `cyclic` or `surface`, found `{other}`")));
                    }
                };
                line.finish()?;
                g.add_vertex(name, kind);
            }
            "edge" => {
                let column = line.column();
                let (name, _) = line.word("edge name")?;
                if g.edge_by_name(&name).is_some() {
                    return Err(ParseError::SyntaxError {
                        line: line.number,
                        column,
                        message: format!("duplicate edge `{name}`"),
                    });
                }
                let endpoint = |line: &mut Line, what: &str| {
                    let (v, c) = line.word(what)?;
                    g.vertex_by_name(&v)
                        .map(|id| (id, v.clone()))
                        .ok_or(ParseError::UnknownVertex { line: line.number, column: c, name: v })
                };
                let (src, src_name) = endpoint(&mut line, "source vertex")?;
                let (dst, dst_name) = endpoint(&mut line, "target vertex")?;
                let s = end_spec(&mut line, "src")?;
                let t = end_spec(&mut line, "dst")?;
                line.finish()?;
                let mut attach = |v: usize, vname: &str, spec: EndSpec| match spec.slot {
                    None => Ok(Attachment::cyclic(spec.exponent)),
                    Some((slot, column)) => {
                        if used_slots.insert((v, slot), ()).is_some() && !options.allow_shared_slots {
                            return Err(ParseError::DuplicateSlotUse {
                                line: line.number,
                                column,
                                vertex: vname.to_string(),
                                slot,
                            });
                        }
                        Ok(Attachment::surface(slot, spec.exponent))
                    }
                };
                let se = attach(src, &src_name, s)?;
                let te = attach(dst, &dst_name, t)?;
                g.add_edge(name, src, dst, se, te);
            }
            other => {
                line.pos = 0;
                return Err(line.error(format!("expected `vertex` or `edge`, found `{other}`")));
            }
        }
    }
    Ok(g)
}

fn end_text(a: &Attachment) -> String {
    match a {
        Attachment::Cyclic { exponent } => format!("(n={exponent})"),
        Attachment::Surface { slot, exponent } => format!("(slot={slot}, n={exponent})"),
    }
}

/// Renders a graph in the text format; vertices first, then edges, in id order.
pub fn print(graph: &GraphOfGroups) -> String {
    let mut s = String::new();
    for v in graph.vertices() {
        match &v.kind {
            VertexKind::Cyclic => {
                let _ = writeln!(s, "vertex {} cyclic", v.name);
            }
            VertexKind::Surface(d) => {
                let o = if d.orientable { "orientable" } else { "nonorientable" };
                let _ = writeln!(s, "vertex {} surface {o} genus={} slots={}", v.name, d.genus, d.boundary);
            }
        }
    }
    for e in graph.edges() {
        let name = |id: usize| graph.vertex(id).map_or("?", |v| v.name.as_str());
        let _ = writeln!(
            s,
            "edge {} {} {} src={} dst={}",
            e.name,
            name(e.source),
            name(e.target),
            end_text(&e.source_end),
            end_text(&e.target_end)
        );
    }
    s
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn dot_end(a: &Attachment) -> String {
    match a {
        Attachment::Cyclic { exponent } => exponent.to_string(),
        Attachment::Surface { slot, exponent } => format!("p{slot}^{exponent}"),
    }
}

/// DOT digraph: one node per vertex, one arrow per edge from source to
/// target with the end attachments as tail and head labels.
pub fn to_dot(graph: &GraphOfGroups) -> String {
    let mut s = String::from("digraph gog {\n");
    for v in graph.vertices() {
        let label = match &v.kind {
            VertexKind::Cyclic => format!("{}\\nZ", dot_escape(&v.name)),
            VertexKind::Surface(d) => format!(
                "{}\\n{} g={} m={}",
                dot_escape(&v.name),
                if d.orientable { "orientable" } else { "nonorientable" },
                d.genus,
                d.boundary
            ),
        };
        let shape = if v.kind.is_surface() { "box" } else { "ellipse" };
        let _ = writeln!(s, "  v{} [label=\"{label}\", shape={shape}];", v.id);
    }
    for e in graph.edges() {
        let _ = writeln!(
            s,
            "  v{} -> v{} [label=\"{}\", taillabel=\"{}\", headlabel=\"{}\"];",
            e.source,
            e.target,
            dot_escape(&e.name),
            dot_end(&e.source_end),
            dot_end(&e.target_end)
        );
    }
    s.push_str("}\n");
    s
}
