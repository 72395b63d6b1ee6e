//! Exact convex geometry of the cosmological polytope of a graph: vertex
//! coordinates, an LP-backed vertex-adjacency oracle, the rule-based edge
//! sets it validates, and affine dimension by rank.
//!
//! For a graph `G` with nodes `1..=n` and present arc set `E`, points live
//! in `R^{V ∪ E}`: coordinates `0..n` are the nodes in order, coordinates
//! `n..n+m` are the present arcs in rank order. Each arc `f = {i,j}` with
//! `i < j` contributes
//!
//! ```text
//! t_f  =  e_i + e_j - e_f
//! y_ij =  e_i - e_j + e_f
//! y_ji = -e_i + e_j + e_f
//! ```
//!
//! and the triangulation additionally uses `e_f` per arc and `e_v` per
//! non-isolated node.

pub mod lp;

use std::collections::BTreeSet;

use num::{BigRational, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{arc_endpoints, Graph};
use lp::{feasible, IntConstraint, Rel};

/// Default cap on the arc count for the pairwise LP oracle.
pub const DEFAULT_ORACLE_ARC_CAP: u64 = 8;

/// Which defining point of the polytope or triangulation a vertex is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexKind {
    /// `t_f = e_i + e_j - e_f` for arc `f = {i,j}`.
    ArcTent { arc: u64 },
    /// `y_ij = e_i - e_j + e_f`: plus sign on the smaller endpoint.
    ArcForward { arc: u64 },
    /// `y_ji = -e_i + e_j + e_f`: plus sign on the larger endpoint.
    ArcBackward { arc: u64 },
    /// The arc unit vector `e_f` (triangulation only).
    ArcUnit { arc: u64 },
    /// The node unit vector `e_v` for a non-isolated node (triangulation only).
    NodeUnit { node: u32 },
}

/// An exact lattice point with entries in `{-1, 0, 1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticePoint {
    pub coords: Vec<i8>,
    pub kind: VertexKind,
}

/// An irreflexive set of unordered index pairs into a vertex list.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EdgeSet {
    pairs: BTreeSet<(u32, u32)>,
}

impl EdgeSet {
    pub fn new() -> Self {
        EdgeSet::default()
    }

    pub fn insert(&mut self, a: u32, b: u32) {
        assert_ne!(a, b, "edge endpoints must differ");
        self.pairs.insert((a.min(b), a.max(b)));
    }

    pub fn contains(&self, a: u32, b: u32) -> bool {
        self.pairs.contains(&(a.min(b), a.max(b)))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.pairs.iter().copied()
    }
}

impl FromIterator<(u32, u32)> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = (u32, u32)>>(iter: I) -> Self {
        let mut set = EdgeSet::new();
        for (a, b) in iter {
            set.insert(a, b);
        }
        set
    }
}

/// Position of a present arc in the coordinate layout.
fn arc_slot(g: &Graph, arc: u64) -> usize {
    g.arcs()
        .binary_search(&arc)
        .expect("arc present in the graph")
}

fn point(g: &Graph, kind: VertexKind) -> LatticePoint {
    let n = g.n() as usize;
    let dim = n + g.arcs().len();
    let mut coords = vec![0i8; dim];
    let endpoints_and_slot = |arc: u64| {
        let (i, j) = arc_endpoints(arc, g.n()).expect("present arc in range");
        (i as usize - 1, j as usize - 1, n + arc_slot(g, arc))
    };
    match kind {
        VertexKind::ArcTent { arc } => {
            let (i, j, slot) = endpoints_and_slot(arc);
            coords[i] = 1;
            coords[j] = 1;
            coords[slot] = -1;
        }
        VertexKind::ArcForward { arc } => {
            let (i, j, slot) = endpoints_and_slot(arc);
            coords[i] = 1;
            coords[j] = -1;
            coords[slot] = 1;
        }
        VertexKind::ArcBackward { arc } => {
            let (i, j, slot) = endpoints_and_slot(arc);
            coords[i] = -1;
            coords[j] = 1;
            coords[slot] = 1;
        }
        VertexKind::ArcUnit { arc } => {
            let (_, _, slot) = endpoints_and_slot(arc);
            coords[slot] = 1;
        }
        VertexKind::NodeUnit { node } => coords[node as usize - 1] = 1,
    }
    LatticePoint { coords, kind }
}

/// The `3m` defining vertices of the cosmological polytope, in arc order and
/// `(t_f, y_ij, y_ji)` order within an arc, in ambient dimension `n + m`.
pub fn cosmo_vertices(g: &Graph) -> Vec<LatticePoint> {
    let mut out = Vec::with_capacity(3 * g.arcs().len());
    for &arc in g.arcs() {
        out.push(point(g, VertexKind::ArcTent { arc }));
        out.push(point(g, VertexKind::ArcForward { arc }));
        out.push(point(g, VertexKind::ArcBackward { arc }));
    }
    out
}

/// The `4m + ñ` vertices of the unimodular triangulation: per arc
/// `(t_f, y_ij, y_ji, e_f)`, then `e_v` per non-isolated node in node order.
pub fn tri_vertex_set(g: &Graph) -> Vec<LatticePoint> {
    let stats = g.stats();
    let mut out = Vec::with_capacity(4 * g.arcs().len() + stats.non_isolated as usize);
    for &arc in g.arcs() {
        out.push(point(g, VertexKind::ArcTent { arc }));
        out.push(point(g, VertexKind::ArcForward { arc }));
        out.push(point(g, VertexKind::ArcBackward { arc }));
        out.push(point(g, VertexKind::ArcUnit { arc }));
    }
    for node in 1..=g.n() {
        if stats.degrees[node as usize - 1] >= 1 {
            out.push(point(g, VertexKind::NodeUnit { node }));
        }
    }
    out
}

fn check_distinct(vertices: &[LatticePoint]) -> Result<()> {
    let mut seen = std::collections::HashSet::with_capacity(vertices.len());
    for v in vertices {
        if !seen.insert(&v.coords) {
            return Err(Error::domain("duplicate points in the vertex list"));
        }
    }
    Ok(())
}

/// Supporting-functional test: `true` iff some rational linear functional
/// `c` with level `β` satisfies `c·v_a = c·v_b = β` and `c·w <= β - 1` for
/// every other vertex `w`. The unit gap is a scale-invariant reformulation
/// of strict separation, so this holds exactly when the segment
/// `[v_a, v_b]` is an edge (1-face) of the convex hull of the vertex list.
pub fn is_polytope_edge(vertices: &[LatticePoint], a: usize, b: usize) -> Result<bool> {
    if a == b {
        return Err(Error::domain("vertex indices must differ"));
    }
    if a >= vertices.len() || b >= vertices.len() {
        return Err(Error::domain("vertex index out of range"));
    }
    check_distinct(vertices)?;
    Ok(edge_lp_feasible(vertices, a, b))
}

/// Builds and solves the LP with `β` eliminated via `β = c·v_a`:
/// `c·(v_a - v_b) = 0` and `c·(w - v_a) <= -1` for all other `w`.
fn edge_lp_feasible(vertices: &[LatticePoint], a: usize, b: usize) -> bool {
    let dim = vertices[a].coords.len();
    let va = &vertices[a].coords;
    let vb = &vertices[b].coords;
    let mut constraints = Vec::with_capacity(vertices.len() - 1);
    constraints.push(IntConstraint {
        coeffs: va
            .iter()
            .zip(vb)
            .map(|(&x, &y)| (x - y) as i64)
            .collect(),
        rel: Rel::Eq,
        rhs: 0,
    });
    for (idx, w) in vertices.iter().enumerate() {
        if idx == a || idx == b {
            continue;
        }
        constraints.push(IntConstraint {
            coeffs: w
                .coords
                .iter()
                .zip(va)
                .map(|(&x, &y)| (x - y) as i64)
                .collect(),
            rel: Rel::Le,
            rhs: -1,
        });
    }
    feasible(dim, &constraints)
}

/// The exact edge set of the cosmological polytope by pairwise application
/// of [`is_polytope_edge`] to [`cosmo_vertices`], under the default arc cap.
pub fn oracle_edge_set(g: &Graph) -> Result<EdgeSet> {
    oracle_edge_set_capped(g, DEFAULT_ORACLE_ARC_CAP)
}

/// As [`oracle_edge_set`] with an explicit arc cap.
pub fn oracle_edge_set_capped(g: &Graph, max_arcs: u64) -> Result<EdgeSet> {
    if g.arc_count() > max_arcs {
        return Err(Error::cap(format!(
            "LP oracle cap is {max_arcs} arcs, graph has {}",
            g.arc_count()
        )));
    }
    let vertices = cosmo_vertices(g);
    check_distinct(&vertices)?;
    let count = vertices.len();
    let mut pairs = Vec::with_capacity(count * count.saturating_sub(1) / 2);
    for a in 0..count {
        for b in a + 1..count {
            pairs.push((a, b));
        }
    }
    let edges: Vec<(u32, u32)> = pairs
        .into_par_iter()
        .filter(|&(a, b)| edge_lp_feasible(&vertices, a, b))
        .map(|(a, b)| (a as u32, b as u32))
        .collect();
    Ok(edges.into_iter().collect())
}

/// The polytope edge set read off the graph-theoretic characterization:
/// vertices of different arcs are always adjacent; within one arc
/// `{y_ij, y_ji}` is always an edge, and `{y_ij, t_f}` is an edge exactly
/// when the plus-endpoint `i` is a leaf. Indexed like [`cosmo_vertices`].
pub fn characterized_cosmo_edges(g: &Graph) -> EdgeSet {
    let stats = g.stats();
    let m = g.arcs().len();
    let mut edges = EdgeSet::new();
    for a in 0..m {
        for b in a + 1..m {
            for i in 0..3u32 {
                for j in 0..3u32 {
                    edges.insert(3 * a as u32 + i, 3 * b as u32 + j);
                }
            }
        }
    }
    for (slot, &arc) in g.arcs().iter().enumerate() {
        let base = 3 * slot as u32;
        let (i, j) = arc_endpoints(arc, g.n()).expect("present arc");
        edges.insert(base + 1, base + 2);
        if stats.degrees[i as usize - 1] == 1 {
            edges.insert(base, base + 1);
        }
        if stats.degrees[j as usize - 1] == 1 {
            edges.insert(base, base + 2);
        }
    }
    edges
}

/// The triangulation edge set read off its characterization: vertices of
/// different arcs are always adjacent; within one arc only `{e_f, y_ij}`
/// and `{e_f, y_ji}`; and `e_v` is adjacent to every vertex except the
/// `y_vj` of arcs incident to `v` (the `y` whose plus sign sits on `v`).
/// Indexed like [`tri_vertex_set`].
pub fn characterized_tri_edges(g: &Graph) -> EdgeSet {
    let stats = g.stats();
    let m = g.arcs().len();
    let mut edges = EdgeSet::new();
    for a in 0..m {
        for b in a + 1..m {
            for i in 0..4u32 {
                for j in 0..4u32 {
                    edges.insert(4 * a as u32 + i, 4 * b as u32 + j);
                }
            }
        }
    }
    for slot in 0..m {
        let base = 4 * slot as u32;
        edges.insert(base + 3, base + 1);
        edges.insert(base + 3, base + 2);
    }
    // Node-unit vertices come after the 4m arc vertices, in node order.
    let node_base = 4 * m as u32;
    let non_isolated: Vec<u32> = (1..=g.n())
        .filter(|&v| stats.degrees[v as usize - 1] >= 1)
        .collect();
    for (rank, &v) in non_isolated.iter().enumerate() {
        let vi = node_base + rank as u32;
        for other in rank + 1..non_isolated.len() {
            edges.insert(vi, node_base + other as u32);
        }
        for (slot, &arc) in g.arcs().iter().enumerate() {
            let base = 4 * slot as u32;
            let (i, j) = arc_endpoints(arc, g.n()).expect("present arc");
            edges.insert(vi, base); // t_f
            edges.insert(vi, base + 3); // e_f
            if i != v {
                edges.insert(vi, base + 1); // y_ij unless v is its plus node
            }
            if j != v {
                edges.insert(vi, base + 2); // y_ji unless v is its plus node
            }
        }
    }
    edges
}

/// Affine dimension of the cosmological polytope, computed as the exact
/// rank of the difference vectors of its vertices. The empty polytope has
/// dimension -1. Must equal `n + m - 1 - isolated` for nonempty graphs.
pub fn polytope_dimension(g: &Graph) -> i64 {
    let vertices = cosmo_vertices(g);
    if vertices.is_empty() {
        return -1;
    }
    let base = &vertices[0].coords;
    let rows: Vec<Vec<BigRational>> = vertices[1..]
        .iter()
        .map(|v| {
            v.coords
                .iter()
                .zip(base)
                .map(|(&x, &y)| BigRational::from(num::BigInt::from(x as i64 - y as i64)))
                .collect()
        })
        .collect();
    rational_rank(rows)
}

/// Rank by exact Gaussian elimination.
#[allow(clippy::needless_range_loop)]
fn rational_rank(mut rows: Vec<Vec<BigRational>>) -> i64 {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut rank = 0usize;
    let mut row = 0usize;
    for col in 0..cols {
        let Some(pivot) = (row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(row, pivot);
        let inv = rows[row][col].clone();
        for r in row + 1..rows.len() {
            if !rows[r][col].is_zero() {
                let factor = &rows[r][col] / &inv;
                for c in col..cols {
                    let delta = &factor * &rows[row][c];
                    rows[r][c] = &rows[r][c] - delta;
                }
            }
        }
        row += 1;
        rank += 1;
        if row == rows.len() {
            break;
        }
    }
    rank as i64
}
