//! Plane trivalent trees dual to triangulations of a polygon.
//!
//! The polygon has vertices `0, …, m` in clockwise order and side `i` joins
//! vertex `i` to vertex `i + 1 (mod m + 1)`. A triangulation is stored as its
//! set of diagonals; the dual tree has one internal vertex per triangle, one
//! internal edge per diagonal and one external edge (leg) per side. Edges are
//! indexed canonically: legs `0..=m` first, then internal edges in
//! lexicographic order of their diagonals.

use serde::Serialize;
use thiserror::Error;

use crate::graded::parity_sign;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("a polygon needs at least 3 vertices (m ≥ 2), got m = {0}")]
    TooSmall(usize),
    #[error("edge {0} is external")]
    ExternalEdge(usize),
    #[error("edge {0} does not exist")]
    NoSuchEdge(usize),
    #[error("malformed tree: {0}")]
    Malformed(String),
}

/// Cyclic vertex decorations `V₀, …, V_m` and side slots `V_i V_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecoratedPolygon {
    pub vertices: Vec<String>,
    pub sides: Vec<String>,
}

impl DecoratedPolygon {
    pub fn new(vertices: Vec<String>) -> Self {
        let n = vertices.len();
        let sides = (0..n).map(|i| format!("α{},{}", i, (i + 1) % n)).collect();
        DecoratedPolygon { vertices, sides }
    }

    /// `V₀, …, V_{n-1}` with every vertex decorated by the same object.
    pub fn uniform(n: usize, object: &str) -> Self {
        Self::new(vec![object.to_string(); n])
    }

    /// `m`, one less than the number of polygon vertices.
    pub fn m(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Relabels vertex `i` as vertex `i + r`.
    pub fn rotate(&self, r: usize) -> Self {
        let mut vertices = self.vertices.clone();
        let mut sides = self.sides.clone();
        let n = vertices.len();
        vertices.rotate_right(r % n.max(1));
        sides.rotate_right(r % n.max(1));
        DecoratedPolygon { vertices, sides }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EdgeKind {
    /// Leg dual to polygon side `side`.
    External { side: usize },
    /// Internal edge dual to the diagonal `(low, high)`.
    Internal { low: usize, high: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeEdge {
    pub kind: EdgeKind,
    /// The two polygon vertices (domains) the edge separates, `(V_{E−}, V_{E+})`
    /// with `V_{E−}` first in clockwise order.
    pub domains: (usize, usize),
    /// Internal vertices at the ends; legs have one.
    pub ends: Vec<usize>,
}

/// A plane trivalent tree dual to a triangulation of an `n`-gon.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlaneTree {
    pub n: usize,
    pub diagonals: Vec<(usize, usize)>,
    /// Internal vertices: triangles `(i, j, k)` with `i < j < k`, in clockwise order.
    pub triangles: Vec<[usize; 3]>,
    pub edges: Vec<TreeEdge>,
    /// For each internal vertex, its three edges in clockwise order.
    pub incidence: Vec<[usize; 3]>,
}

/// Edge list returned by [`PlaneTree::classify_edges`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeClassification {
    /// `(edge, V_{E−}, V_{E+})`.
    pub internal: Vec<(usize, usize, usize)>,
    /// `(edge, polygon side)`.
    pub external: Vec<(usize, usize)>,
}

impl PlaneTree {
    pub fn from_diagonals(n: usize, mut diagonals: Vec<(usize, usize)>) -> Result<Self, TreeError> {
        if n < 3 {
            return Err(TreeError::TooSmall(n.saturating_sub(1)));
        }
        for d in diagonals.iter_mut() {
            if d.0 > d.1 {
                *d = (d.1, d.0);
            }
        }
        diagonals.sort_unstable();
        diagonals.dedup();
        if diagonals.len() != n - 3 {
            return Err(TreeError::Malformed(format!("{} diagonals for a {n}-gon", diagonals.len())));
        }
        let side_of = |a: usize, b: usize| -> Option<usize> {
            let (a, b) = (a.min(b), a.max(b));
            if b == a + 1 {
                Some(a)
            } else if a == 0 && b == n - 1 {
                Some(n - 1)
            } else {
                None
            }
        };
        let is_edge = |a: usize, b: usize| side_of(a, b).is_some() || diagonals.contains(&(a.min(b), a.max(b)));
        // an outerplanar graph has no separating triangles, so every 3-cycle is a face
        let mut triangles = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    if is_edge(i, j) && is_edge(j, k) && is_edge(i, k) {
                        triangles.push([i, j, k]);
                    }
                }
            }
        }
        if triangles.len() != n - 2 {
            return Err(TreeError::Malformed("diagonals do not form a triangulation".into()));
        }
        let edge_index = |a: usize, b: usize| -> usize {
            match side_of(a, b) {
                Some(s) => s,
                None => n + diagonals.binary_search(&(a.min(b), a.max(b))).unwrap(),
            }
        };
        let mut edges: Vec<TreeEdge> = (0..n)
            .map(|s| TreeEdge { kind: EdgeKind::External { side: s }, domains: (s, (s + 1) % n), ends: Vec::new() })
            .chain(diagonals.iter().map(|&(low, high)| TreeEdge {
                kind: EdgeKind::Internal { low, high },
                domains: (low, high),
                ends: Vec::new(),
            }))
            .collect();
        let mut incidence = Vec::new();
        for (t, &[i, j, k]) in triangles.iter().enumerate() {
            let inc = [edge_index(i, j), edge_index(j, k), edge_index(i, k)];
            for &e in &inc {
                edges[e].ends.push(t);
            }
            incidence.push(inc);
        }
        // x− before x+: x− is the triangle whose third vertex lies between low and high
        for e in edges.iter_mut() {
            if let EdgeKind::Internal { low, high } = e.kind {
                let inner = |t: usize| triangles[t].iter().all(|&v| v >= low && v <= high);
                if !inner(e.ends[0]) {
                    e.ends.swap(0, 1);
                }
            }
        }
        let tree = PlaneTree { n, diagonals, triangles, edges, incidence };
        tree.check()?;
        Ok(tree)
    }

    fn check(&self) -> Result<(), TreeError> {
        let m = self.n - 1;
        let internal = self.edges.iter().filter(|e| matches!(e.kind, EdgeKind::Internal { .. })).count();
        let external = self.edges.len() - internal;
        if self.triangles.len() != m - 1 || internal != m - 2 || external != m + 1 {
            return Err(TreeError::Malformed("wrong vertex or edge count".into()));
        }
        for e in &self.edges {
            let want = if matches!(e.kind, EdgeKind::Internal { .. }) { 2 } else { 1 };
            if e.ends.len() != want {
                return Err(TreeError::Malformed("edge with wrong number of ends".into()));
            }
        }
        Ok(())
    }

    pub fn m(&self) -> usize {
        self.n - 1
    }

    pub fn internal_vertices(&self) -> usize {
        self.triangles.len()
    }

    pub fn internal_edges(&self) -> impl Iterator<Item = usize> + '_ {
        self.n..self.edges.len()
    }

    pub fn classify_edges(&self) -> Result<EdgeClassification, TreeError> {
        self.check()?;
        let mut internal = Vec::new();
        let mut external = Vec::new();
        for (idx, e) in self.edges.iter().enumerate() {
            match e.kind {
                EdgeKind::External { side } => external.push((idx, side)),
                EdgeKind::Internal { low, high } => internal.push((idx, low, high)),
            }
        }
        Ok(EdgeClassification { internal, external })
    }

    /// Clockwise domain triple around each internal vertex, starting at the smallest index.
    pub fn vertex_stars(&self) -> Vec<[usize; 3]> {
        self.triangles.clone()
    }

    /// `(x−, x+)`: the internal vertices at the ends of an internal edge, ordered
    /// so that `x−` lies on the side of the domains between `V_{E−}` and `V_{E+}`.
    pub fn edge_endpoint_order(&self, edge: usize) -> Result<(usize, usize), TreeError> {
        let e = self.edges.get(edge).ok_or(TreeError::NoSuchEdge(edge))?;
        match e.kind {
            EdgeKind::External { .. } => Err(TreeError::ExternalEdge(edge)),
            EdgeKind::Internal { .. } => Ok((e.ends[0], e.ends[1])),
        }
    }

    /// Edges in the order met by a depth-first walk entering along leg `start`
    /// and, at each vertex, taking the next two edges clockwise after the
    /// arrival edge.
    pub fn dfs_order(&self, start: usize) -> Vec<usize> {
        let mut order = vec![start];
        let first = self.edges[start].ends[0];
        self.visit(first, start, &mut order);
        order
    }

    fn visit(&self, vertex: usize, via: usize, order: &mut Vec<usize>) {
        let inc = self.incidence[vertex];
        let k = inc.iter().position(|&e| e == via).unwrap();
        for r in 1..3 {
            let e = inc[(k + r) % 3];
            order.push(e);
            if let Some(&other) = self.edges[e].ends.iter().find(|&&v| v != vertex) {
                self.visit(other, e, order);
            }
        }
    }

    /// Sign of the depth-first edge order from leg 0 relative to the canonical
    /// edge order. The depth-first order from any other leg differs from it by an
    /// even permutation, so this is an invariant of the plane tree.
    pub fn orientation_sign(&self) -> i8 {
        permutation_sign(&self.dfs_order(0))
    }

    /// The same triangulation with polygon vertex `i` relabelled `i + r`.
    pub fn rotate(&self, r: usize) -> Self {
        let n = self.n;
        let diagonals = self.diagonals.iter().map(|&(a, b)| ((a + r) % n, (b + r) % n)).collect();
        PlaneTree::from_diagonals(n, diagonals).expect("rotation of a triangulation")
    }
}

pub(crate) fn permutation_sign(p: &[usize]) -> i8 {
    let mut inversions = 0i64;
    for a in 0..p.len() {
        for b in a + 1..p.len() {
            if p[a] > p[b] {
                inversions += 1;
            }
        }
    }
    parity_sign(inversions)
}

/// One plane tree per triangulation of the polygon, in a fixed order; there are
/// `C_{m-1}` of them.
pub fn enumerate_trees(polygon: &DecoratedPolygon) -> Result<Vec<PlaneTree>, TreeError> {
    let n = polygon.len();
    if n < 3 {
        return Err(TreeError::TooSmall(polygon.m()));
    }
    let vs: Vec<usize> = (0..n).collect();
    triangulations(&vs)
        .into_iter()
        .map(|diagonals| PlaneTree::from_diagonals(n, diagonals))
        .collect()
}

/// Diagonal sets of the triangulations of the convex polygon `vs`, by the
/// triangle on the side `(vs[0], vs[last])`.
fn triangulations(vs: &[usize]) -> Vec<Vec<(usize, usize)>> {
    if vs.len() < 3 {
        return vec![Vec::new()];
    }
    let last = vs.len() - 1;
    let mut out = Vec::new();
    for k in 1..last {
        for left in triangulations(&vs[..=k]) {
            for right in triangulations(&vs[k..]) {
                let mut d = left.clone();
                d.extend(right.iter().copied());
                if k > 1 {
                    d.push((vs[0], vs[k]));
                }
                if k < last - 1 {
                    d.push((vs[k], vs[last]));
                }
                out.push(d);
            }
        }
    }
    out
}

pub fn catalan(k: usize) -> u64 {
    let mut c: u64 = 1;
    for i in 0..k as u64 {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c
}

#[cfg(test)]
mod tests;
