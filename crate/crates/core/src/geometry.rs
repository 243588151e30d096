//! Graphs on integer point sets with edges at one exact squared distance.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::bits::Bits;
use crate::notation::Point;

// =============================================================================
// adjacency-only graphs
// =============================================================================

/// Undirected simple graph stored as one bitset row per vertex.
#[derive(Clone, PartialEq, Eq)]
pub struct AdjGraph {
    n: usize,
    rows: Vec<Bits>,
}

impl AdjGraph {
    pub fn new(n: usize) -> Self {
        AdjGraph {
            n,
            rows: (0..n).map(|_| Bits::new(n)).collect(),
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = AdjGraph::new(n);
        for v in 0..n {
            g.rows[v] = Bits::full(n);
            g.rows[v].clear(v);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "self-loop");
        self.rows[u].set(v);
        self.rows[v].set(u);
    }

    pub fn is_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].test(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count()
    }

    /// Neighbor set of `v` as a bitset row.
    pub fn row(&self, v: usize) -> &Bits {
        &self.rows[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.rows[v].iter_ones()
    }

    pub fn edge_count(&self) -> usize {
        let total: usize = self.rows.iter().map(Bits::count).sum();
        total / 2
    }

    pub fn stats(&self) -> GraphStats {
        let mut deg_min = usize::MAX;
        let mut deg_max = 0;
        let mut total = 0;
        for row in &self.rows {
            let d = row.count();
            deg_min = deg_min.min(d);
            deg_max = deg_max.max(d);
            total += d;
        }
        if self.n == 0 {
            deg_min = 0;
        }
        GraphStats {
            v: self.n,
            e: total / 2,
            deg_min,
            deg_max,
        }
    }

    /// Complement on the same vertex indices, self-loops removed.
    pub fn complement(&self) -> AdjGraph {
        let mut rows = Vec::with_capacity(self.n);
        for (v, row) in self.rows.iter().enumerate() {
            let mut r = Bits::full(self.n);
            r.and_not_with(row);
            r.clear(v);
            rows.push(r);
        }
        AdjGraph { n: self.n, rows }
    }

    /// True when `verts` are distinct in-range vertices with no edge between
    /// any two of them.
    pub fn is_independent(&self, verts: &[usize]) -> bool {
        let mut seen = Bits::new(self.n);
        for &v in verts {
            if v >= self.n || seen.test(v) || seen.intersects(&self.rows[v]) {
                return false;
            }
            seen.set(v);
        }
        true
    }

    /// Induced subgraph; vertex `i` of the result is `verts[i]`.
    pub fn induced(&self, verts: &[usize]) -> AdjGraph {
        let mut g = AdjGraph::new(verts.len());
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.is_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Hex SHA-256 over the canonical edge list; identifies the adjacency
    /// structure independent of how the graph was produced.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        h.update(format!("p edge {} {}\n", self.n, self.edge_count()));
        for u in 0..self.n {
            for v in self.rows[u].iter_ones() {
                if v > u {
                    h.update(format!("e {} {}\n", u + 1, v + 1));
                }
            }
        }
        let out = h.finalize();
        let mut s = String::with_capacity(64);
        for b in out {
            write!(s, "{b:02x}").unwrap();
        }
        s
    }
}

impl std::fmt::Debug for AdjGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "AdjGraph(v={}, e={})", self.n, self.edge_count())
    }
}

impl std::fmt::Debug for DistGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "DistGraph(v={}, e={}, forbidden_sq={})",
            self.n(),
            self.adjacency().edge_count(),
            self.forbidden_sq()
        )
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct GraphStats {
    pub v: usize,
    pub e: usize,
    pub deg_min: usize,
    pub deg_max: usize,
}

// =============================================================================
// distance graphs
// =============================================================================

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("point {point:?} has dimension {got}, expected {expected}")]
    MixedDimensions {
        point: Point,
        got: usize,
        expected: usize,
    },
    #[error("duplicate point {point:?}")]
    DuplicatePoint { point: Point },
}

/// Graph on a duplicate-free point set; `{i, j}` is an edge exactly when the
/// squared distance between point `i` and point `j` equals `forbidden_sq`.
/// Points are kept lexicographically sorted so vertex indices are
/// reproducible from the set alone.
#[derive(Clone)]
pub struct DistGraph {
    points: Vec<Point>,
    forbidden_sq: i64,
    graph: AdjGraph,
}

impl DistGraph {
    pub fn build(mut points: Vec<Point>, forbidden_sq: i64) -> Result<DistGraph, GeometryError> {
        if let Some(first) = points.first() {
            let expected = first.dim();
            for p in &points {
                if p.dim() != expected {
                    return Err(GeometryError::MixedDimensions {
                        point: p.clone(),
                        got: p.dim(),
                        expected,
                    });
                }
            }
        }
        points.sort();
        if let Some(w) = points.windows(2).find(|w| w[0] == w[1]) {
            return Err(GeometryError::DuplicatePoint {
                point: w[0].clone(),
            });
        }
        let n = points.len();
        let mut graph = AdjGraph::new(n);
        for i in 0..n {
            for j in i + 1..n {
                if points[i].sq_dist(&points[j]) == forbidden_sq {
                    graph.add_edge(i, j);
                }
            }
        }
        Ok(DistGraph {
            points,
            forbidden_sq,
            graph,
        })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn forbidden_sq(&self) -> i64 {
        self.forbidden_sq
    }

    pub fn adjacency(&self) -> &AdjGraph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn stats(&self) -> GraphStats {
        self.graph.stats()
    }

    pub fn complement(&self) -> AdjGraph {
        self.graph.complement()
    }

    /// Vertex index of `p`, if present.
    pub fn index_of(&self, p: &Point) -> Option<usize> {
        self.points.binary_search(p).ok()
    }

    /// Neighbor set a new point would have, as indices into this graph.
    pub fn adjacency_of_point(&self, p: &Point) -> Bits {
        let mut row = Bits::new(self.n());
        for (i, q) in self.points.iter().enumerate() {
            if p.sq_dist(q) == self.forbidden_sq {
                row.set(i);
            }
        }
        row
    }

    /// New graph with `p` inserted (vertex indices shift to keep the point
    /// order sorted).
    pub fn with_point(&self, p: Point) -> Result<DistGraph, GeometryError> {
        let mut pts = self.points.clone();
        pts.push(p);
        DistGraph::build(pts, self.forbidden_sq)
    }
}

// =============================================================================
// DIMACS graph files
// =============================================================================

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum DimacsError {
    #[error("no 'p edge' header line")]
    MissingHeader,
    #[error("line {lineno}: malformed header {line:?}")]
    MalformedHeader { lineno: usize, line: String },
    #[error("line {lineno}: unrecognized line {line:?}")]
    MalformedLine { lineno: usize, line: String },
    #[error("line {lineno}: vertex {index} outside 1..={n}")]
    VertexOutOfRange {
        lineno: usize,
        index: usize,
        n: usize,
    },
    #[error("line {lineno}: self-loop on vertex {index}")]
    SelfLoop { lineno: usize, index: usize },
}

/// `p edge n m` header, one `e u v` line per edge, vertices 1-based.
pub fn export_dimacs(g: &AdjGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p edge {} {}", g.n(), g.edge_count());
    for u in 0..g.n() {
        for v in g.row(u).iter_ones() {
            if v > u {
                let _ = writeln!(out, "e {} {}", u + 1, v + 1);
            }
        }
    }
    out
}

/// Inverse of [`export_dimacs`] up to edge order and duplicate edges;
/// comment lines are ignored.
pub fn import_dimacs(text: &str) -> Result<AdjGraph, DimacsError> {
    let mut graph: Option<AdjGraph> = None;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            let f: Vec<&str> = rest.split_whitespace().collect();
            let header = || DimacsError::MalformedHeader {
                lineno,
                line: raw.to_string(),
            };
            if graph.is_some() || f.len() != 3 || f[0] != "edge" {
                return Err(header());
            }
            let n: usize = f[1].parse().map_err(|_| header())?;
            let _m: usize = f[2].parse().map_err(|_| header())?;
            graph = Some(AdjGraph::new(n));
            continue;
        }
        if let Some(rest) = line.strip_prefix('e') {
            let g = graph.as_mut().ok_or(DimacsError::MissingHeader)?;
            let f: Vec<&str> = rest.split_whitespace().collect();
            let bad = || DimacsError::MalformedLine {
                lineno,
                line: raw.to_string(),
            };
            if f.len() != 2 {
                return Err(bad());
            }
            let u: usize = f[0].parse().map_err(|_| bad())?;
            let v: usize = f[1].parse().map_err(|_| bad())?;
            for &x in &[u, v] {
                if x == 0 || x > g.n() {
                    return Err(DimacsError::VertexOutOfRange {
                        lineno,
                        index: x,
                        n: g.n(),
                    });
                }
            }
            if u == v {
                return Err(DimacsError::SelfLoop { lineno, index: u });
            }
            g.add_edge(u - 1, v - 1);
            continue;
        }
        return Err(DimacsError::MalformedLine {
            lineno,
            line: raw.to_string(),
        });
    }
    graph.ok_or(DimacsError::MissingHeader)
}

// =============================================================================
// helpers shared by tests and the catalog
// =============================================================================

/// Union of expansions, deduplicated.
pub fn expand_union(exprs: &[crate::notation::VertexSetExpr]) -> Vec<Point> {
    let mut set = BTreeSet::new();
    for e in exprs {
        set.extend(crate::notation::expand(e));
    }
    set.into_iter().collect()
}

// =============================================================================
// tests
// =============================================================================
