//! Simple undirected graphs on named vertices.
//!
//! Vertices are kept in insertion order and addressed internally by their
//! index, with adjacency stored as one `u64` bitmask per vertex. This caps the
//! vertex count at [`MAX_VERTICES`], which is far beyond what the exact
//! searches in this crate can handle anyway.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 64;

/// Bitmask over vertex indices of a [`Graph`].
pub type VertexSet = u64;

#[inline]
pub(crate) fn bit(v: usize) -> u64 {
    1u64 << v
}

/// Iterates the indices of the set bits of `mask`, lowest first.
#[inline]
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

pub(crate) fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && !name
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, '(' | ')' | ',' | ';' | '#' | '|'))
}

#[derive(Debug, Clone, Default)]
pub struct Graph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<u64>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_vertices<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut g = Self::new();
        for name in names {
            g.add_vertex(name)?;
        }
        Ok(g)
    }

    /// Builds a graph from vertex names and edges given by name.
    pub fn from_edges<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<Self> {
        let mut g = Self::with_vertices(vertices.iter().map(|s| s.as_ref().to_string()))?;
        for (a, b) in edges {
            g.add_edge(a.as_ref(), b.as_ref())?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> Result<usize> {
        let name = name.into();
        if !valid_name(&name) {
            return Err(Error::InvalidName(name));
        }
        if self.index.contains_key(&name) {
            return Err(Error::DuplicateVertex(name));
        }
        if self.names.len() == MAX_VERTICES {
            return Err(Error::TooManyVertices {
                max: MAX_VERTICES,
                got: MAX_VERTICES + 1,
            });
        }
        let id = self.names.len();
        self.index.insert(name.clone(), id);
        self.names.push(name);
        self.adj.push(0);
        Ok(id)
    }

    pub fn add_edge(&mut self, a: &str, b: &str) -> Result<()> {
        let u = self.require(a)?;
        let v = self.require(b)?;
        self.add_edge_idx(u, v)
            .map_err(|why| Error::InvalidEdge(a.to_string(), b.to_string(), why))
    }

    pub(crate) fn add_edge_idx(&mut self, u: usize, v: usize) -> std::result::Result<(), &'static str> {
        if u == v {
            return Err("self-loop");
        }
        if self.adj[u] & bit(v) != 0 {
            return Err("parallel edge");
        }
        self.adj[u] |= bit(v);
        self.adj[v] |= bit(u);
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub(crate) fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    /// Adjacency bitmasks, one per vertex.
    pub fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u] & bit(v) != 0
    }

    pub fn has_edge(&self, a: &str, b: &str) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(u), Some(v)) => self.adjacent(u, v),
            _ => false,
        }
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn all(&self) -> VertexSet {
        if self.names.len() == 64 {
            u64::MAX
        } else {
            bit(self.names.len()) - 1
        }
    }

    /// Edges as index pairs `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, &m)| bits(m & !((bit(u) << 1).wrapping_sub(1))).map(move |v| (u, v)))
    }

    /// Converts a list of names into a vertex mask.
    pub fn set_of<S: AsRef<str>>(&self, names: &[S]) -> Result<VertexSet> {
        let mut mask = 0;
        for n in names {
            let v = self.require(n.as_ref())?;
            if mask & bit(v) != 0 {
                return Err(Error::DuplicateVertex(n.as_ref().to_string()));
            }
            mask |= bit(v);
        }
        Ok(mask)
    }

    pub fn names_of(&self, set: VertexSet) -> Vec<String> {
        bits(set).map(|v| self.names[v].clone()).collect()
    }

    /// The subgraph induced by `keep`, preserving the relative vertex order.
    pub fn induced_subgraph(&self, keep: VertexSet) -> Graph {
        let kept: Vec<usize> = bits(keep & self.all()).collect();
        let mut g = Graph::with_vertices(kept.iter().map(|&v| self.names[v].clone()))
            .expect("names already validated");
        for (i, &u) in kept.iter().enumerate() {
            for (j, &v) in kept.iter().enumerate().skip(i + 1) {
                if self.adjacent(u, v) {
                    g.add_edge_idx(i, j).expect("simple");
                }
            }
        }
        g
    }

    pub fn complement(&self) -> Graph {
        let mut g = self.clone();
        let all = self.all();
        for v in 0..self.names.len() {
            g.adj[v] = all & !self.adj[v] & !bit(v);
        }
        g
    }

    /// True iff the neighbourhood of `v` is a clique.
    pub fn is_simplicial(&self, v: &str) -> Result<bool> {
        let v = self.require(v)?;
        Ok(self.is_simplicial_idx(v))
    }

    pub(crate) fn is_simplicial_idx(&self, v: usize) -> bool {
        let nb = self.adj[v];
        bits(nb).all(|u| nb & !bit(u) & !self.adj[u] == 0)
    }

    /// Writes the graph text format: `n m`, the vertex names, then the edges.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.vertex_count(), self.edge_count());
        for name in &self.names {
            out.push_str(name);
            out.push('\n');
        }
        for (u, v) in self.edges() {
            out.push_str(&format!("{} {}\n", self.names[u], self.names[v]));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        text.parse()
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
    .trim()
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, strip_comment(l)))
            .filter(|(_, l)| !l.is_empty());

        let parse_err = |line: usize, msg: &str| Error::Parse {
            line,
            msg: msg.to_string(),
        };

        let (hline, header) = lines.next().ok_or_else(|| parse_err(0, "missing header"))?;
        let counts: Vec<&str> = header.split_whitespace().collect();
        if counts.len() != 2 {
            return Err(parse_err(hline, "header must be `n m`"));
        }
        let n: usize = counts[0]
            .parse()
            .map_err(|_| parse_err(hline, "bad vertex count"))?;
        let m: usize = counts[1]
            .parse()
            .map_err(|_| parse_err(hline, "bad edge count"))?;
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                max: MAX_VERTICES,
                got: n,
            });
        }

        let mut g = Graph::new();
        for _ in 0..n {
            let (line, name) = lines
                .next()
                .ok_or_else(|| parse_err(0, "unexpected end of input in vertex list"))?;
            if name.split_whitespace().count() != 1 {
                return Err(parse_err(line, "expected a single vertex name"));
            }
            g.add_vertex(name).map_err(|e| parse_err(line, &e.to_string()))?;
        }
        for _ in 0..m {
            let (line, edge) = lines
                .next()
                .ok_or_else(|| parse_err(0, "unexpected end of input in edge list"))?;
            let ends: Vec<&str> = edge.split_whitespace().collect();
            if ends.len() != 2 {
                return Err(parse_err(line, "expected `name1 name2`"));
            }
            g.add_edge(ends[0], ends[1])
                .map_err(|e| parse_err(line, &e.to_string()))?;
        }
        if let Some((line, _)) = lines.next() {
            return Err(parse_err(line, "trailing content after edge list"));
        }
        Ok(g)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
