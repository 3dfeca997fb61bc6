//! Immutable graph storage and the counted query oracle.
//!
//! Algorithms in the sublinear path never touch a [`QueryGraph`] directly.
//! They receive a [`QuerySession`], which answers degree and i-th-neighbor
//! queries and counts every call. Full-access code (exact oracles, the
//! global decomposition, generators) works on the graph itself.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::io::{BufRead, Write};

use thiserror::Error;

/// Dense 0-indexed vertex id. Ids double as the tie-breaker of the `≺` order.
pub type Vertex = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("header declares {declared} edges but {found} distinct edges were read")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error("i/o error: {0}")]
    Io(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QueryError {
    #[error("query on invalid vertex {vertex} (n = {n})")]
    InvalidVertex { vertex: usize, n: usize },
    #[error("neighbor index must be at least 1")]
    ZeroIndex,
    #[error("vertex {vertex} has degree {degree}, above the declared maximum {declared}")]
    DegreeCapExceeded {
        vertex: usize,
        degree: usize,
        declared: usize,
    },
}

/// Simple undirected graph with a frozen per-vertex neighbor order.
#[derive(Clone, PartialEq, Eq)]
pub struct QueryGraph {
    adjacency: Vec<Vec<Vertex>>,
    m: usize,
}

impl fmt::Debug for QueryGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QueryGraph")
            .field("n", &self.n())
            .field("m", &self.m)
            .finish()
    }
}

impl QueryGraph {
    /// Builds a graph from an edge list.
    ///
    /// Duplicate pairs (in either orientation) are collapsed; each vertex's
    /// neighbor order is the order in which its edges first appear.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adjacency = vec![Vec::new(); n];
        let mut seen = HashSet::new();
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            let key = (u.min(v), u.max(v));
            if seen.insert(key) {
                adjacency[u].push(v);
                adjacency[v].push(u);
            }
        }
        Ok(Self {
            m: seen.len(),
            adjacency,
        })
    }

    pub fn empty(n: usize) -> Self {
        Self {
            adjacency: vec![Vec::new(); n],
            m: 0,
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    /// Number of undirected edges. Oracles and the harness only.
    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`, in a stable order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<(), GraphError> {
        if v < self.n() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            })
        }
    }

    /// The `≺` order: `u ≺ v` iff `d(u) < d(v)`, or equal degrees and `u < v`.
    pub fn precedes(&self, u: Vertex, v: Vertex) -> bool {
        precedes_by_degree(u, self.degree(u), v, self.degree(v))
    }

    /// Reads the edge-list text format: a `n m` header, then one `u v` pair
    /// per line. Blank lines and `#` comments are ignored.
    pub fn read_edge_list<R: BufRead>(reader: R) -> Result<Self, GraphError> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let line_no = idx + 1;
            let line = line.map_err(|e| GraphError::Io(e.to_string()))?;
            let content = line.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let mut fields = content.split_whitespace();
            let parse = |tok: Option<&str>| -> Result<usize, GraphError> {
                let tok = tok.ok_or_else(|| GraphError::Parse {
                    line: line_no,
                    message: "expected two integers".into(),
                })?;
                tok.parse().map_err(|_| GraphError::Parse {
                    line: line_no,
                    message: format!("not a non-negative integer: {tok:?}"),
                })
            };
            let a = parse(fields.next())?;
            let b = parse(fields.next())?;
            if fields.next().is_some() {
                return Err(GraphError::Parse {
                    line: line_no,
                    message: "trailing tokens".into(),
                });
            }
            if header.is_none() {
                header = Some((a, b));
            } else {
                edges.push((a, b));
            }
        }
        let (n, declared) = header.ok_or(GraphError::Parse {
            line: 0,
            message: "missing \"n m\" header".into(),
        })?;
        let graph = Self::from_edges(n, edges)?;
        if graph.m() != declared {
            return Err(GraphError::EdgeCountMismatch {
                declared,
                found: graph.m(),
            });
        }
        Ok(graph)
    }

    pub fn read_edge_list_file(path: &std::path::Path) -> Result<Self, GraphError> {
        let file = std::fs::File::open(path)
            .map_err(|e| GraphError::Io(format!("{}: {e}", path.display())))?;
        Self::read_edge_list(std::io::BufReader::new(file))
    }

    /// Writes the graph so that reading it back reproduces the same
    /// neighbor order at every vertex.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "{} {}", self.n(), self.m())?;
        for (u, v) in self.edges_in_insertion_order() {
            writeln!(out, "{u} {v}")?;
        }
        Ok(())
    }

    /// Edges ordered so that re-inserting them rebuilds identical adjacency
    /// lists. Found by repeatedly emitting any edge that is at the head of
    /// both endpoints' remaining lists.
    fn edges_in_insertion_order(&self) -> Vec<(Vertex, Vertex)> {
        let n = self.n();
        let mut cursor = vec![0usize; n];
        let mut out = Vec::with_capacity(self.m);
        let mut stack: Vec<Vertex> = (0..n).rev().collect();
        let head = |cursor: &[usize], v: Vertex| self.adjacency[v].get(cursor[v]).copied();
        while let Some(u) = stack.pop() {
            while let Some(v) = head(&cursor, u) {
                if head(&cursor, v) == Some(u) {
                    cursor[u] += 1;
                    cursor[v] += 1;
                    out.push((u, v));
                    stack.push(v);
                } else {
                    // v must emit other edges first; revisit u afterwards.
                    stack.push(u);
                    stack.push(v);
                    break;
                }
            }
        }
        debug_assert_eq!(out.len(), self.m);
        out
    }
}

/// The `≺` order given already-known degrees.
#[inline]
pub fn precedes_by_degree(u: Vertex, du: usize, v: Vertex, dv: usize) -> bool {
    match du.cmp(&dv) {
        Ordering::Less => true,
        Ordering::Greater => false,
        Ordering::Equal => u < v,
    }
}

/// Answer to an i-th-neighbor query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NeighborAnswer {
    Vertex(Vertex),
    OutOfRange,
}

impl NeighborAnswer {
    pub fn vertex(self) -> Option<Vertex> {
        match self {
            NeighborAnswer::Vertex(v) => Some(v),
            NeighborAnswer::OutOfRange => None,
        }
    }
}

/// One oracle access, as recorded by a logging session.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Query {
    Degree(Vertex),
    Neighbor(Vertex, usize),
}

/// Counted access to a [`QueryGraph`]. Single owner; one per trial.
#[derive(Debug)]
pub struct QuerySession<'g> {
    graph: &'g QueryGraph,
    degree_queries: u64,
    neighbor_queries: u64,
    degree_cap: Option<usize>,
    log: Option<Vec<Query>>,
}

impl<'g> QuerySession<'g> {
    pub fn new(graph: &'g QueryGraph) -> Self {
        Self {
            graph,
            degree_queries: 0,
            neighbor_queries: 0,
            degree_cap: None,
            log: None,
        }
    }

    /// Every degree answer is checked against `cap`; a larger degree is a
    /// contract violation reported as [`QueryError::DegreeCapExceeded`].
    pub fn with_degree_cap(mut self, cap: usize) -> Self {
        self.degree_cap = Some(cap);
        self
    }

    /// Replaces the degree cap, returning the previous one.
    pub fn set_degree_cap(&mut self, cap: Option<usize>) -> Option<usize> {
        std::mem::replace(&mut self.degree_cap, cap)
    }

    /// Records every query so that a run can be replayed and audited.
    pub fn with_log(mut self) -> Self {
        self.log = Some(Vec::new());
        self
    }

    /// Number of vertices. Part of the input, not a query.
    #[inline]
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    #[inline]
    fn check(&self, v: Vertex) -> Result<(), QueryError> {
        if v < self.graph.n() {
            Ok(())
        } else {
            Err(QueryError::InvalidVertex {
                vertex: v,
                n: self.graph.n(),
            })
        }
    }

    pub fn degree(&mut self, v: Vertex) -> Result<usize, QueryError> {
        self.check(v)?;
        self.degree_queries += 1;
        if let Some(log) = self.log.as_mut() {
            log.push(Query::Degree(v));
        }
        let d = self.graph.degree(v);
        match self.degree_cap {
            Some(cap) if d > cap => Err(QueryError::DegreeCapExceeded {
                vertex: v,
                degree: d,
                declared: cap,
            }),
            _ => Ok(d),
        }
    }

    /// The `i`-th neighbor of `v`, 1-based.
    pub fn neighbor(&mut self, v: Vertex, i: usize) -> Result<NeighborAnswer, QueryError> {
        self.check(v)?;
        if i == 0 {
            return Err(QueryError::ZeroIndex);
        }
        self.neighbor_queries += 1;
        if let Some(log) = self.log.as_mut() {
            log.push(Query::Neighbor(v, i));
        }
        Ok(match self.graph.neighbors(v).get(i - 1) {
            Some(&u) => NeighborAnswer::Vertex(u),
            None => NeighborAnswer::OutOfRange,
        })
    }

    #[inline]
    pub fn degree_queries(&self) -> u64 {
        self.degree_queries
    }

    #[inline]
    pub fn neighbor_queries(&self) -> u64 {
        self.neighbor_queries
    }

    #[inline]
    pub fn total_queries(&self) -> u64 {
        self.degree_queries + self.neighbor_queries
    }

    pub fn counts(&self) -> QueryCounts {
        QueryCounts {
            degree: self.degree_queries,
            neighbor: self.neighbor_queries,
        }
    }

    pub fn log(&self) -> Option<&[Query]> {
        self.log.as_deref()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, serde::Serialize)]
pub struct QueryCounts {
    pub degree: u64,
    pub neighbor: u64,
}

impl QueryCounts {
    pub fn total(&self) -> u64 {
        self.degree + self.neighbor
    }

    pub fn since(&self, earlier: QueryCounts) -> QueryCounts {
        QueryCounts {
            degree: self.degree - earlier.degree,
            neighbor: self.neighbor - earlier.neighbor,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star(leaves: usize) -> QueryGraph {
        QueryGraph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).unwrap()
    }

    #[test]
    fn load_single_edge() {
        let g = QueryGraph::from_edges(2, [(0, 1)]).unwrap();
        assert_eq!(g.m(), 1);
        assert_eq!((g.degree(0), g.degree(1)), (1, 1));
    }

    #[test]
    fn duplicates_collapse() {
        let g = QueryGraph::from_edges(2, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.m(), 1);
        assert_eq!(g.neighbors(0), &[1]);
    }

    #[test]
    fn self_loop_rejected() {
        assert_eq!(
            QueryGraph::from_edges(1, [(0, 0)]),
            Err(GraphError::SelfLoop(0))
        );
    }

    #[test]
    fn out_of_range_rejected() {
        assert!(matches!(
            QueryGraph::from_edges(2, [(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        ));
    }

    #[test]
    fn first_appearance_order() {
        let g = QueryGraph::from_edges(4, [(2, 0), (0, 3), (1, 0), (3, 0)]).unwrap();
        assert_eq!(g.neighbors(0), &[2, 3, 1]);
        assert_eq!(g.m(), 3);
    }

    #[test]
    fn degree_queries_counted() {
        let g = star(4);
        let mut s = QuerySession::new(&g);
        assert_eq!(s.degree(0).unwrap(), 4);
        for _ in 0..6 {
            s.degree(1).unwrap();
        }
        assert_eq!(s.degree_queries(), 7);
        s.degree(2).unwrap();
        assert_eq!(s.degree_queries(), 8);
        assert_eq!(s.neighbor_queries(), 0);
    }

    #[test]
    fn isolated_vertex_has_degree_zero() {
        let g = QueryGraph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(QuerySession::new(&g).degree(2).unwrap(), 0);
    }

    #[test]
    fn neighbor_answers() {
        let g = QueryGraph::from_edges(2, [(0, 1)]).unwrap();
        let mut s = QuerySession::new(&g);
        assert_eq!(s.neighbor(0, 1).unwrap(), NeighborAnswer::Vertex(1));
        assert_eq!(s.neighbor(0, 2).unwrap(), NeighborAnswer::OutOfRange);
        assert_eq!(s.neighbor(0, 1).unwrap(), NeighborAnswer::Vertex(1));
        assert_eq!(s.neighbor_queries(), 3);
        assert_eq!(s.degree_queries(), 0);
    }

    #[test]
    fn invalid_vertex_is_an_error() {
        let g = star(2);
        let mut s = QuerySession::new(&g);
        assert!(matches!(s.degree(3), Err(QueryError::InvalidVertex { .. })));
        assert!(matches!(
            s.neighbor(9, 1),
            Err(QueryError::InvalidVertex { .. })
        ));
        assert_eq!(s.neighbor(0, 0), Err(QueryError::ZeroIndex));
        assert_eq!(s.total_queries(), 0);
    }

    #[test]
    fn degree_cap_violation() {
        let g = star(5);
        let mut s = QuerySession::new(&g).with_degree_cap(3);
        assert_eq!(s.degree(1).unwrap(), 1);
        assert!(matches!(
            s.degree(0),
            Err(QueryError::DegreeCapExceeded { degree: 5, .. })
        ));
    }

    #[test]
    fn precedes_examples() {
        // d(1) = 1, d(0) = 5.
        let g = star(5);
        assert!(g.precedes(1, 0));
        assert!(!g.precedes(0, 1));
        assert!(g.precedes(2, 5));
        assert!(!g.precedes(3, 3));
        assert!(precedes_by_degree(2, 4, 9, 4));
    }

    #[test]
    fn parse_text_format() {
        let text = "# a triangle\n3 3\n0 1\n1 2 # trailing\n\n2 0\n";
        let g = QueryGraph::read_edge_list(text.as_bytes()).unwrap();
        assert_eq!((g.n(), g.m()), (3, 3));
        assert_eq!(g.neighbors(2), &[1, 0]);
        let bad = "3 2\n0 1\n";
        assert!(matches!(
            QueryGraph::read_edge_list(bad.as_bytes()),
            Err(GraphError::EdgeCountMismatch { .. })
        ));
        assert!(matches!(
            QueryGraph::read_edge_list("2 1\n0 x\n".as_bytes()),
            Err(GraphError::Parse { line: 2, .. })
        ));
    }
}
