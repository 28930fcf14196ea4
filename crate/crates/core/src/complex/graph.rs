use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::ComplexError;

/// Orientation with which a boundary walk traverses an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    #[serde(rename = "+")]
    Forward,
    #[serde(rename = "-")]
    Reverse,
}

impl Direction {
    pub fn sign(self) -> i64 {
        match self {
            Direction::Forward => 1,
            Direction::Reverse => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Direction::Forward => Direction::Reverse,
            Direction::Reverse => Direction::Forward,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GraphEdge {
    pub id: String,
    pub tail: usize,
    pub head: usize,
}

impl GraphEdge {
    /// Start and end vertex when traversed in direction `dir`.
    pub fn oriented(&self, dir: Direction) -> (usize, usize) {
        match dir {
            Direction::Forward => (self.tail, self.head),
            Direction::Reverse => (self.head, self.tail),
        }
    }
}

/// A regular 1-dimensional CW complex: vertices and directed edges with
/// distinct endpoints. Parallel edges are allowed.
#[derive(Clone, Debug, Default)]
pub struct Graph1Complex {
    vertices: Vec<String>,
    edges: Vec<GraphEdge>,
    vertex_index: HashMap<String, usize>,
    edge_index: HashMap<String, usize>,
}

impl PartialEq for Graph1Complex {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for Graph1Complex {}

pub(crate) fn index_ids<'a>(
    ids: impl IntoIterator<Item = &'a String>,
    seen: &mut HashMap<String, usize>,
) -> Result<(), ComplexError> {
    for (i, id) in ids.into_iter().enumerate() {
        if seen.insert(id.clone(), i).is_some() {
            return Err(ComplexError::DuplicateId(id.clone()));
        }
    }
    Ok(())
}

pub(crate) fn build_edges<S: AsRef<str>>(
    raw: &[(S, S, S)],
    vertex_index: &HashMap<String, usize>,
) -> Result<Vec<GraphEdge>, ComplexError> {
    raw.iter()
        .map(|(id, t, h)| {
            let (id, t, h) = (id.as_ref(), t.as_ref(), h.as_ref());
            let lookup = |v: &str| {
                vertex_index.get(v).copied().ok_or_else(|| ComplexError::UnknownVertex {
                    edge: id.to_string(),
                    vertex: v.to_string(),
                })
            };
            let (tail, head) = (lookup(t)?, lookup(h)?);
            if tail == head {
                return Err(ComplexError::Loop(id.to_string()));
            }
            Ok(GraphEdge {
                id: id.to_string(),
                tail,
                head,
            })
        })
        .collect()
}

impl Graph1Complex {
    /// Builds a graph from vertex ids and `(edge id, tail, head)` triples.
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S, S)]) -> Result<Self, ComplexError> {
        let vertices: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let mut vertex_index = HashMap::new();
        index_ids(&vertices, &mut vertex_index)?;
        let edges = build_edges(edges, &vertex_index)?;
        let mut edge_index = HashMap::new();
        index_ids(edges.iter().map(|e| &e.id), &mut edge_index)?;
        if let Some(v) = vertices.iter().find(|v| edge_index.contains_key(*v)) {
            return Err(ComplexError::DuplicateId(v.clone()));
        }
        Ok(Self {
            vertices,
            edges,
            vertex_index,
            edge_index,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[GraphEdge] {
        &self.edges
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn edge(&self, e: usize) -> &GraphEdge {
        &self.edges[e]
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertex_index.get(id).copied()
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edge_index.get(id).copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.tail == v || e.head == v).count()
    }

    /// Edges as `(id, tail id, head id)` triples.
    pub fn edge_triples(&self) -> Vec<(String, String, String)> {
        self.edges
            .iter()
            .map(|e| (e.id.clone(), self.vertices[e.tail].clone(), self.vertices[e.head].clone()))
            .collect()
    }

    fn fresh_id(&self, base: &str) -> String {
        let taken = |s: &str| self.vertex_index.contains_key(s) || self.edge_index.contains_key(s);
        if !taken(base) {
            return base.to_string();
        }
        (1..)
            .map(|i| format!("{base}'{i}"))
            .find(|s| !taken(s))
            .expect("unbounded id supply")
    }

    /// Replaces edge `e` by `tail -> new` and `new -> head` through a fresh vertex.
    pub fn subdivide_edge(&self, e: &str) -> Result<Self, ComplexError> {
        let idx = self.edge_index(e).ok_or_else(|| ComplexError::UnknownCell(e.to_string()))?;
        let mid = self.fresh_id(&format!("{e}.m"));
        let mut vertices = self.vertices.clone();
        vertices.push(mid.clone());
        let mut edges = Vec::with_capacity(self.edges.len() + 1);
        for (i, (id, t, h)) in self.edge_triples().into_iter().enumerate() {
            if i == idx {
                edges.push((self.fresh_id(&format!("{e}.a")), t, mid.clone()));
                edges.push((self.fresh_id(&format!("{e}.b")), mid.clone(), h));
            } else {
                edges.push((id, t, h));
            }
        }
        Self::new(&vertices, &edges)
    }

    /// One-point union identifying `v1` in `self` with `v2` in `other`.
    ///
    /// Ids of `other` are prefixed with `prefix`; the identified vertex keeps
    /// its id from `self`.
    pub fn wedge(&self, v1: &str, other: &Graph1Complex, v2: &str, prefix: &str) -> Result<Self, ComplexError> {
        self.vertex_index(v1).ok_or_else(|| ComplexError::UnknownCell(v1.to_string()))?;
        other.vertex_index(v2).ok_or_else(|| ComplexError::UnknownCell(v2.to_string()))?;
        let rename = |v: &str| if v == v2 { v1.to_string() } else { format!("{prefix}{v}") };
        let mut vertices = self.vertices.clone();
        vertices.extend(other.vertices.iter().filter(|v| *v != v2).map(|v| rename(v)));
        let mut edges = self.edge_triples();
        edges.extend(
            other
                .edge_triples()
                .into_iter()
                .map(|(id, t, h)| (format!("{prefix}{id}"), rename(&t), rename(&h))),
        );
        Self::new(&vertices, &edges)
    }

    /// Connected components as lists of vertex indices.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.vertices.len());
        for e in &self.edges {
            uf.union(e.tail, e.head);
        }
        uf.classes()
    }
}

/// Minimal union-find used for connectivity questions across the crate.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = x;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    /// Classes in order of their smallest element, members ascending.
    pub fn classes(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut by_root: HashMap<usize, usize> = HashMap::new();
        let mut out: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            let r = self.find(x);
            let slot = *by_root.entry(r).or_insert_with(|| {
                out.push(Vec::new());
                out.len() - 1
            });
            out[slot].push(x);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle2() -> Graph1Complex {
        Graph1Complex::new(&["a", "b"], &[("e0", "a", "b"), ("e1", "b", "a")]).unwrap()
    }

    #[test]
    fn rejects_loops_and_unknown_vertices() {
        assert!(matches!(
            Graph1Complex::new(&["a"], &[("e", "a", "a")]),
            Err(ComplexError::Loop(_))
        ));
        assert!(matches!(
            Graph1Complex::new(&["a"], &[("e", "a", "b")]),
            Err(ComplexError::UnknownVertex { .. })
        ));
        assert!(matches!(
            Graph1Complex::new(&["a", "a"], &[]),
            Err(ComplexError::DuplicateId(_))
        ));
    }

    #[test]
    fn subdivision_counts() {
        let g = circle2();
        let s = g.subdivide_edge("e0").unwrap();
        assert_eq!((s.vertex_count(), s.edge_count()), (3, 3));
        assert!(s.vertices().iter().all(|v| s.degree(s.vertex_index(v).unwrap()) == 2));
        assert!(g.subdivide_edge("nope").is_err());
    }

    #[test]
    fn wedge_of_two_arcs_is_a_path() {
        let arc = Graph1Complex::new(&["x", "y"], &[("e", "x", "y")]).unwrap();
        let w = arc.wedge("y", &arc, "x", "r.").unwrap();
        assert_eq!((w.vertex_count(), w.edge_count()), (3, 2));
        assert_eq!(w.components().len(), 1);
        let c = circle2();
        let fig8 = c.wedge("a", &c, "a", "r.").unwrap();
        assert_eq!(fig8.vertex_count(), 2 + 2 - 1);
        assert!(c.wedge("zz", &c, "a", "r.").is_err());
    }
}
