//! Graph file readers.
//!
//! Edge list: a header line `n m`, then `m` lines `u v` with 1-based vertex
//! indices. Blank lines and lines starting with `#` are skipped.
//!
//! DIMACS: `c` comment lines, one `p edge n m` header, then `e u v` lines.
//!
//! Vertex `i` of the file becomes `VertexId(i - 1)`.

use std::fmt;
use std::str::FromStr;

use iscount_core::graph::{Graph, GraphError, VertexId};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum GraphFormat {
    Edgelist,
    Dimacs,
}

impl fmt::Display for GraphFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraphFormat::Edgelist => "edgelist",
            GraphFormat::Dimacs => "dimacs",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("missing header")]
    MissingHeader,
    #[error("malformed header `{0}`")]
    BadHeader(String),
    #[error("second header")]
    DuplicateHeader,
    #[error("malformed edge line `{0}`")]
    BadEdge(String),
    #[error("unknown line `{0}`")]
    UnknownLine(String),
    #[error("vertex {index} out of range 1..={n}")]
    OutOfRange { index: u64, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(u64),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(u64, u64),
    #[error("header announces {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
}

struct Builder {
    graph: Graph,
    n: usize,
    expected_m: usize,
}

fn number<T: FromStr>(tok: Option<&str>) -> Option<T> {
    tok?.parse().ok()
}

impl Builder {
    fn new(n: usize, expected_m: usize) -> Self {
        Self {
            graph: Graph::with_vertices(n),
            n,
            expected_m,
        }
    }

    fn edge(&mut self, a: u64, b: u64, line: usize) -> Result<(), ParseError> {
        let err = |kind| ParseError { line, kind };
        for x in [a, b] {
            if x == 0 || x > self.n as u64 {
                return Err(err(ParseErrorKind::OutOfRange { index: x, n: self.n }));
            }
        }
        let (u, v) = (VertexId(a as u32 - 1), VertexId(b as u32 - 1));
        self.graph.add_edge(u, v).map_err(|e| {
            err(match e {
                GraphError::SelfLoop(_) => ParseErrorKind::SelfLoop(a),
                _ => ParseErrorKind::DuplicateEdge(a.min(b), a.max(b)),
            })
        })
    }

    fn finish(self, last_line: usize) -> Result<Graph, ParseError> {
        if self.graph.m() != self.expected_m {
            return Err(ParseError {
                line: last_line,
                kind: ParseErrorKind::EdgeCount {
                    expected: self.expected_m,
                    found: self.graph.m(),
                },
            });
        }
        Ok(self.graph)
    }
}

/// Vertex counts are capped well below the id space.
const MAX_VERTICES: usize = 1 << 24;

fn header(n: Option<usize>, m: Option<usize>, text: &str, line: usize) -> Result<Builder, ParseError> {
    match (n, m) {
        (Some(n), Some(m)) if n <= MAX_VERTICES => Ok(Builder::new(n, m)),
        _ => Err(ParseError {
            line,
            kind: ParseErrorKind::BadHeader(text.to_string()),
        }),
    }
}

pub fn parse_graph(text: &str, format: GraphFormat) -> Result<Graph, ParseError> {
    match format {
        GraphFormat::Edgelist => parse_edgelist(text),
        GraphFormat::Dimacs => parse_dimacs(text),
    }
}

fn parse_edgelist(text: &str) -> Result<Graph, ParseError> {
    let mut builder: Option<Builder> = None;
    let mut last = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last = line;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let mut toks = t.split_whitespace();
        let (a, b) = (toks.next(), toks.next());
        let extra = toks.next().is_some();
        match builder.as_mut() {
            None => {
                if extra {
                    return Err(ParseError {
                        line,
                        kind: ParseErrorKind::BadHeader(t.to_string()),
                    });
                }
                builder = Some(header(number(a), number(b), t, line)?);
            }
            Some(bld) => match (number::<u64>(a), number::<u64>(b)) {
                (Some(a), Some(b)) if !extra => bld.edge(a, b, line)?,
                _ => {
                    return Err(ParseError {
                        line,
                        kind: ParseErrorKind::BadEdge(t.to_string()),
                    })
                }
            },
        }
    }
    builder
        .ok_or(ParseError {
            line: last.max(1),
            kind: ParseErrorKind::MissingHeader,
        })?
        .finish(last)
}

fn parse_dimacs(text: &str) -> Result<Graph, ParseError> {
    let mut builder: Option<Builder> = None;
    let mut last = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last = line;
        let t = raw.trim();
        let err = |kind| ParseError { line, kind };
        let mut toks = t.split_whitespace();
        match toks.next() {
            None | Some("c") => {}
            Some("p") => {
                if builder.is_some() {
                    return Err(err(ParseErrorKind::DuplicateHeader));
                }
                let kind = toks.next();
                let (n, m) = (number(toks.next()), number(toks.next()));
                if !matches!(kind, Some("edge" | "col")) || toks.next().is_some() {
                    return Err(err(ParseErrorKind::BadHeader(t.to_string())));
                }
                builder = Some(header(n, m, t, line)?);
            }
            Some("e") => {
                let bld = builder.as_mut().ok_or(err(ParseErrorKind::MissingHeader))?;
                match (number::<u64>(toks.next()), number::<u64>(toks.next()), toks.next()) {
                    (Some(a), Some(b), None) => bld.edge(a, b, line)?,
                    _ => return Err(err(ParseErrorKind::BadEdge(t.to_string()))),
                }
            }
            Some(_) => return Err(err(ParseErrorKind::UnknownLine(t.to_string()))),
        }
    }
    builder
        .ok_or(ParseError {
            line: last.max(1),
            kind: ParseErrorKind::MissingHeader,
        })?
        .finish(last)
}

/// Edge-list text for `g`, whose vertices must be `v0 .. v{n-1}`.
pub fn write_edgelist(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        out.push_str(&format!("{} {}\n", u.0 + 1, v.0 + 1));
    }
    out
}
