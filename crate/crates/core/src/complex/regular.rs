use std::collections::{HashMap, HashSet};

use super::graph::{index_ids, Direction, Graph1Complex};
use super::ComplexError;

/// A 2-cell given by its boundary walk: `(edge index, direction)` steps.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Face {
    pub id: String,
    pub boundary: Vec<(usize, Direction)>,
}

/// A regular CW complex of dimension at most 2.
///
/// Every face boundary is a closed walk that repeats neither an edge nor a
/// vertex and has length at least 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Regular2Complex {
    graph: Graph1Complex,
    faces: Vec<Face>,
    face_index: HashMap<String, usize>,
}

/// A face boundary given by edge ids.
pub type FaceSpec<S> = (S, Vec<(S, Direction)>);

impl Regular2Complex {
    pub fn new<S: AsRef<str>>(
        vertices: &[S],
        edges: &[(S, S, S)],
        faces: &[FaceSpec<S>],
    ) -> Result<Self, ComplexError> {
        Self::from_graph(Graph1Complex::new(vertices, edges)?, faces)
    }

    /// Attaches faces to an existing 1-skeleton.
    pub fn from_graph<S: AsRef<str>>(graph: Graph1Complex, faces: &[FaceSpec<S>]) -> Result<Self, ComplexError> {
        let mut built = Vec::with_capacity(faces.len());
        for (id, walk) in faces {
            let id = id.as_ref().to_string();
            let boundary = walk
                .iter()
                .map(|(e, d)| {
                    graph
                        .edge_index(e.as_ref())
                        .map(|i| (i, *d))
                        .ok_or_else(|| ComplexError::UnknownEdge {
                            face: id.clone(),
                            edge: e.as_ref().to_string(),
                        })
                })
                .collect::<Result<Vec<_>, _>>()?;
            validate_walk(&graph, &id, &boundary)?;
            built.push(Face { id, boundary });
        }
        let mut face_index = HashMap::new();
        index_ids(built.iter().map(|f| &f.id), &mut face_index)?;
        if let Some(f) = built
            .iter()
            .find(|f| graph.vertex_index(&f.id).is_some() || graph.edge_index(&f.id).is_some())
        {
            return Err(ComplexError::DuplicateId(f.id.clone()));
        }
        Ok(Self {
            graph,
            faces: built,
            face_index,
        })
    }

    /// Builds a complex from owned parts; a convenience for generated complexes.
    pub fn from_owned(
        vertices: Vec<String>,
        edges: Vec<(String, String, String)>,
        faces: Vec<FaceSpec<String>>,
    ) -> Result<Self, ComplexError> {
        Self::new(&vertices, &edges, &faces)
    }

    pub fn graph(&self) -> &Graph1Complex {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, f: usize) -> &Face {
        &self.faces[f]
    }

    pub fn face_index(&self, id: &str) -> Option<usize> {
        self.face_index.get(id).copied()
    }

    /// Highest dimension of a cell, `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        if !self.faces.is_empty() {
            Some(2)
        } else if self.edge_count() > 0 {
            Some(1)
        } else if self.vertex_count() > 0 {
            Some(0)
        } else {
            None
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.faces.len() as i64
    }

    /// Vertices of face `f` in boundary-walk order, starting at the tail of the first step.
    pub fn face_vertices(&self, f: usize) -> Vec<usize> {
        self.faces[f]
            .boundary
            .iter()
            .map(|&(e, d)| self.graph.edge(e).oriented(d).0)
            .collect()
    }

    /// Faces as `(id, [(edge id, direction)])`.
    pub fn face_specs(&self) -> Vec<FaceSpec<String>> {
        self.faces
            .iter()
            .map(|f| {
                let walk = f
                    .boundary
                    .iter()
                    .map(|&(e, d)| (self.graph.edge(e).id.clone(), d))
                    .collect();
                (f.id.clone(), walk)
            })
            .collect()
    }

    /// Subcomplex spanned by the named cells. Missing faces of kept cells are
    /// an error, so the result is always a complex.
    pub fn restrict(&self, vertices: &[usize], edges: &[usize], faces: &[usize]) -> Result<Self, ComplexError> {
        let vs: Vec<&str> = vertices.iter().map(|&v| self.graph.vertex_id(v)).collect();
        let es: Vec<(&str, &str, &str)> = edges
            .iter()
            .map(|&e| {
                let ed = self.graph.edge(e);
                (ed.id.as_str(), self.graph.vertex_id(ed.tail), self.graph.vertex_id(ed.head))
            })
            .collect();
        let specs = self.face_specs();
        let fs: Vec<FaceSpec<&str>> = faces
            .iter()
            .map(|&f| {
                let (id, walk) = &specs[f];
                (id.as_str(), walk.iter().map(|(e, d)| (e.as_str(), *d)).collect())
            })
            .collect();
        Self::new(&vs, &es, &fs)
    }

    /// Confirms that the closure of every cell is a union of open cells.
    ///
    /// Holds for every complex accepted by the constructor; a witness
    /// `(cell, missing face)` indicates corrupted internal state.
    pub fn proper_cells_check(&self) -> Result<(), (String, String)> {
        let nv = self.vertex_count();
        for e in self.graph.edges() {
            for v in [e.tail, e.head] {
                if v >= nv {
                    return Err((e.id.clone(), format!("vertex #{v}")));
                }
            }
        }
        for f in &self.faces {
            for &(e, _) in &f.boundary {
                if e >= self.edge_count() {
                    return Err((f.id.clone(), format!("edge #{e}")));
                }
            }
            if let Err(err) = validate_walk(&self.graph, &f.id, &f.boundary) {
                return Err((f.id.clone(), err.to_string()));
            }
        }
        Ok(())
    }

    /// Replaces edge `e` by two edges through a fresh vertex, updating every face boundary.
    pub fn subdivide_edge(&self, e: &str) -> Result<Self, ComplexError> {
        let graph = self.graph.subdivide_edge(e)?;
        let old = self.graph.edge_index(e).expect("checked by graph subdivision");
        // the two halves are the only edges of the new graph missing from the old one
        let halves: Vec<&str> = graph
            .edges()
            .iter()
            .map(|x| x.id.as_str())
            .filter(|id| self.graph.edge_index(id).is_none())
            .collect();
        let (a, b) = (halves[0].to_string(), halves[1].to_string());
        let faces: Vec<FaceSpec<String>> = self
            .face_specs()
            .into_iter()
            .map(|(id, walk)| {
                let walk = walk
                    .into_iter()
                    .flat_map(|(x, d)| {
                        if x == self.graph.edge(old).id {
                            match d {
                                Direction::Forward => vec![(a.clone(), d), (b.clone(), d)],
                                Direction::Reverse => vec![(b.clone(), d), (a.clone(), d)],
                            }
                        } else {
                            vec![(x, d)]
                        }
                    })
                    .collect();
                (id, walk)
            })
            .collect();
        Self::from_graph(graph, &faces)
    }
}

fn validate_walk(graph: &Graph1Complex, face: &str, walk: &[(usize, Direction)]) -> Result<(), ComplexError> {
    let bad = |reason: &str| ComplexError::BadBoundary {
        face: face.to_string(),
        reason: reason.to_string(),
    };
    if walk.len() < 2 {
        return Err(bad("boundary has fewer than 2 edges"));
    }
    let mut edges = HashSet::new();
    let mut verts = HashSet::new();
    for (i, &(e, d)) in walk.iter().enumerate() {
        let (_, end) = graph.edge(e).oriented(d);
        let (next_e, next_d) = walk[(i + 1) % walk.len()];
        let (next_start, _) = graph.edge(next_e).oriented(next_d);
        if end != next_start {
            return Err(bad("boundary is not a closed walk"));
        }
        if !edges.insert(e) {
            return Err(bad("boundary repeats an edge"));
        }
        if !verts.insert(end) {
            return Err(bad("boundary repeats a vertex"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use Direction::{Forward as F, Reverse as R};

    fn triangle() -> Regular2Complex {
        Regular2Complex::new(
            &["a", "b", "c"],
            &[("ab", "a", "b"), ("bc", "b", "c"), ("ac", "a", "c")],
            &[("t", vec![("ab", F), ("bc", F), ("ac", R)])],
        )
        .unwrap()
    }

    #[test]
    fn accepts_triangle_and_bigon() {
        let t = triangle();
        assert_eq!(t.euler_characteristic(), 1);
        assert_eq!(t.face_vertices(0), vec![0, 1, 2]);
        assert!(t.proper_cells_check().is_ok());
        let bigon = Regular2Complex::new(
            &["p", "q"],
            &[("x", "p", "q"), ("y", "p", "q")],
            &[("d", vec![("x", F), ("y", R)])],
        )
        .unwrap();
        assert_eq!(bigon.dimension(), Some(2));
    }

    #[test]
    fn rejects_bad_boundaries() {
        let open = Regular2Complex::new(
            &["a", "b", "c"],
            &[("ab", "a", "b"), ("bc", "b", "c"), ("ac", "a", "c")],
            &[("t", vec![("ab", F), ("bc", F), ("ac", F)])],
        );
        assert!(matches!(open, Err(ComplexError::BadBoundary { .. })));
        let missing = Regular2Complex::new(&["a", "b"], &[("x", "a", "b")], &[("t", vec![("x", F), ("zz", R)])]);
        assert!(matches!(missing, Err(ComplexError::UnknownEdge { .. })));
        let short = Regular2Complex::new(&["a", "b"], &[("x", "a", "b")], &[("t", vec![("x", F)])]);
        assert!(short.is_err());
        // figure-eight walk through a repeated vertex
        let eight = Regular2Complex::new(
            &["o", "a", "b"],
            &[("oa", "o", "a"), ("ao", "a", "o"), ("ob", "o", "b"), ("bo", "b", "o")],
            &[("f", vec![("oa", F), ("ao", F), ("ob", F), ("bo", F)])],
        );
        assert!(eight.is_err());
    }

    #[test]
    fn subdivision_keeps_faces_closed() {
        let t = triangle();
        let s = t.subdivide_edge("ac").unwrap();
        assert_eq!(s.face(0).boundary.len(), 4);
        assert_eq!(s.euler_characteristic(), 1);
        let s2 = t.subdivide_edge("ab").unwrap();
        assert_eq!(s2.face(0).boundary.len(), 4);
    }
}
