use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{invalid, Result};

/// Vertex `(a, b)` of Γ_d with `1 <= a, b <= d - 1` (row, column).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Vertex {
    pub a: usize,
    pub b: usize,
}

impl Vertex {
    pub fn new(a: usize, b: usize) -> Self {
        Self { a, b }
    }

    pub fn label(&self) -> String {
        format!("v_{}_{}", self.a, self.b)
    }
}

/// Adjacency rule: neighbours differ by at most one in each coordinate, and not
/// along the main diagonal direction.
pub fn is_edge(u: Vertex, v: Vertex) -> bool {
    let da = u.a as i64 - v.a as i64;
    let db = u.b as i64 - v.b as i64;
    u != v && da.abs() <= 1 && db.abs() <= 1 && da * db <= 0
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LonneGraph {
    d: u32,
    vertices: Vec<Vertex>,
    edges: Vec<(usize, usize)>,
    triangles: Vec<[usize; 3]>,
}

/// Build Γ_d. Vertices are listed row-major; edges as index pairs `i < j` in
/// lexicographic order; triangles in their positive cyclic order.
///
/// Positive triangles have one of two shapes:
/// `((a,b), (a,b+1), (a+1,b))` or `((a,b), (a,b+1), (a-1,b+1))`.
pub fn build_graph(d: u32) -> Result<LonneGraph> {
    if d < 3 {
        return invalid(format!("Lönne graph needs d >= 3, got {d}"));
    }
    let m = d as usize - 1;
    let vertices: Vec<Vertex> = (1..=m).flat_map(|a| (1..=m).map(move |b| Vertex::new(a, b))).collect();
    let index = |v: Vertex| (v.a - 1) * m + (v.b - 1);
    let mut edges = Vec::new();
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            if is_edge(vertices[i], vertices[j]) {
                edges.push((i, j));
            }
        }
    }
    let mut triangles = Vec::new();
    for a in 1..=m {
        for b in 1..m {
            if a < m {
                triangles.push([
                    index(Vertex::new(a, b)),
                    index(Vertex::new(a, b + 1)),
                    index(Vertex::new(a + 1, b)),
                ]);
            }
            if a > 1 {
                triangles.push([
                    index(Vertex::new(a, b)),
                    index(Vertex::new(a, b + 1)),
                    index(Vertex::new(a - 1, b + 1)),
                ]);
            }
        }
    }
    triangles.sort_by_key(|t| {
        let mut s = *t;
        s.sort();
        s
    });
    Ok(LonneGraph { d, vertices, edges, triangles })
}

impl LonneGraph {
    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Positively oriented triangles.
    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn index_of(&self, v: Vertex) -> Option<usize> {
        self.vertices.iter().position(|&u| u == v)
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        is_edge(self.vertices[i], self.vertices[j])
    }

    /// Direction of an edge along the positive orientation of the triangles through it.
    /// Every edge lies in at least one triangle when `d >= 3`, and all triangles agree.
    pub fn oriented_edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &(i, j) in &self.edges {
            let forward = self.triangles.iter().any(|t| (0..3).any(|k| t[k] == i && t[(k + 1) % 3] == j));
            out.push(if forward { (i, j) } else { (j, i) });
        }
        out
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph lonne_{} {{", self.d);
        for v in &self.vertices {
            let _ = writeln!(s, "  {} [label=\"({},{})\", pos=\"{},{}!\"];", v.label(), v.a, v.b, v.b, -(v.a as i64));
        }
        for (i, j) in self.oriented_edges() {
            let _ = writeln!(s, "  {} -> {};", self.vertices[i].label(), self.vertices[j].label());
        }
        s.push_str("}\n");
        s
    }

    pub fn export(&self) -> GraphExport {
        let pt = |i: usize| [self.vertices[i].a, self.vertices[i].b];
        GraphExport {
            d: self.d,
            vertex_count: self.vertices.len(),
            edge_count: self.edges.len(),
            triangle_count: self.triangles.len(),
            vertices: self.vertices.iter().map(|v| [v.a, v.b]).collect(),
            edges: self.oriented_edges().into_iter().map(|(i, j)| [pt(i), pt(j)]).collect(),
            triangles: self.triangles.iter().map(|t| [pt(t[0]), pt(t[1]), pt(t[2])]).collect(),
        }
    }
}

/// JSON-shaped export of Γ_d. Edges are directed along the positive triangle orientation.
#[derive(Debug, Clone, Serialize)]
pub struct GraphExport {
    pub d: u32,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub triangle_count: usize,
    pub vertices: Vec<[usize; 2]>,
    pub edges: Vec<[[usize; 2]; 2]>,
    pub triangles: Vec<[[usize; 2]; 3]>,
}

/// One commutation per non-edge, one braid relation per edge, and one
/// `σ_i σ_j σ_k σ_i = σ_j σ_k σ_i σ_j` per positive triangle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationSystem {
    pub commutations: Vec<(usize, usize)>,
    pub braids: Vec<(usize, usize)>,
    pub triangles: Vec<[usize; 3]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RelationCounts {
    pub commutation: usize,
    pub braid: usize,
    pub triangle: usize,
}

impl RelationSystem {
    pub fn counts(&self) -> RelationCounts {
        RelationCounts {
            commutation: self.commutations.len(),
            braid: self.braids.len(),
            triangle: self.triangles.len(),
        }
    }
}

pub fn relation_system(graph: &LonneGraph) -> RelationSystem {
    let n = graph.vertices.len();
    let mut commutations = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if !graph.adjacent(i, j) {
                commutations.push((i, j));
            }
        }
    }
    RelationSystem { commutations, braids: graph.edges.clone(), triangles: graph.triangles.clone() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d5_counts() {
        let g = build_graph(5).unwrap();
        assert_eq!(g.vertices().len(), 16);
        assert_eq!(g.edges().len(), 33);
        assert_eq!(g.triangles().len(), 18);
        let c = relation_system(&g).counts();
        assert_eq!(c, RelationCounts { commutation: 87, braid: 33, triangle: 18 });
    }

    #[test]
    fn d3_counts() {
        let c = relation_system(&build_graph(3).unwrap()).counts();
        assert_eq!(c, RelationCounts { commutation: 1, braid: 5, triangle: 2 });
    }

    #[test]
    fn edge_rule_examples() {
        assert!(!is_edge(Vertex::new(1, 1), Vertex::new(2, 2)));
        assert!(is_edge(Vertex::new(1, 2), Vertex::new(2, 1)));
        assert!(!is_edge(Vertex::new(1, 1), Vertex::new(1, 1)));
    }

    #[test]
    fn triangles_are_cliques_and_orient_edges_consistently() {
        for d in 3..=8 {
            let g = build_graph(d).unwrap();
            for t in g.triangles() {
                assert!(g.adjacent(t[0], t[1]) && g.adjacent(t[1], t[2]) && g.adjacent(t[2], t[0]));
            }
            for (i, j) in g.oriented_edges() {
                let backward = g.triangles().iter().any(|t| (0..3).any(|k| t[k] == j && t[(k + 1) % 3] == i));
                assert!(!backward, "edge {i}-{j} oriented both ways at d={d}");
            }
        }
    }

    #[test]
    fn small_degree_rejected() {
        assert!(build_graph(2).is_err());
    }
}
