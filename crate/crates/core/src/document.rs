//! The JSON complex document and the sum type over every complex model.

use std::borrow::Cow;
use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{
    CellIncidence, ComplexError, Direction, Graph1Complex, HasIncidence, ProductComplex, ProductSubcomplex, Regular2Complex,
};
use crate::constructions::Expected;
use crate::homology::{surface_report, SurfaceReport, TorusSkeleton};

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("document of kind `{kind}` is missing field `{field}`")]
    MissingField { kind: String, field: &'static str },
    #[error("unknown document kind `{0}`")]
    UnknownKind(String),
    #[error("factor {index}: {source}")]
    Factor { index: usize, source: Box<DocumentError> },
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("torus skeleton: {0}")]
    Torus(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDoc {
    pub id: String,
    pub tail: String,
    pub head: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryStep {
    pub edge: String,
    pub dir: Direction,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceDoc {
    pub id: String,
    pub boundary: Vec<BoundaryStep>,
}

/// Serialized form of any complex. Fields absent for a kind are omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDocument {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<EdgeDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub faces: Option<Vec<FaceDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factors: Option<Vec<ComplexDocument>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cells: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torus_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subsets: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expected>,
}

impl ComplexDocument {
    fn bare(kind: &str) -> Self {
        Self {
            kind: kind.into(),
            vertices: None,
            edges: None,
            faces: None,
            factors: None,
            cells: None,
            torus_dim: None,
            subsets: None,
            expected: None,
        }
    }

    pub fn from_json(s: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(s)?)
    }

    /// Pretty JSON with a fixed field order, so equal documents give equal bytes.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    fn need<'a, T>(&self, v: &'a Option<T>, field: &'static str) -> Result<&'a T, DocumentError> {
        v.as_ref().ok_or_else(|| DocumentError::MissingField {
            kind: self.kind.clone(),
            field,
        })
    }

    fn graph(&self) -> Result<Graph1Complex, DocumentError> {
        let vs: Vec<&str> = self.need(&self.vertices, "vertices")?.iter().map(String::as_str).collect();
        let es: Vec<(&str, &str, &str)> = self
            .need(&self.edges, "edges")?
            .iter()
            .map(|e| (e.id.as_str(), e.tail.as_str(), e.head.as_str()))
            .collect();
        Ok(Graph1Complex::new(&vs, &es)?)
    }

    fn factor_graphs(&self) -> Result<Vec<Graph1Complex>, DocumentError> {
        self.need(&self.factors, "factors")?
            .iter()
            .enumerate()
            .map(|(index, f)| {
                f.graph().map_err(|e| DocumentError::Factor {
                    index,
                    source: Box::new(e),
                })
            })
            .collect()
    }

    pub fn to_complex(&self) -> Result<AnyComplex, DocumentError> {
        match self.kind.as_str() {
            "graph" => Ok(AnyComplex::Graph(self.graph()?)),
            "regular2" => {
                let faces: Vec<(String, Vec<(String, Direction)>)> = self
                    .need(&self.faces, "faces")?
                    .iter()
                    .map(|f| (f.id.clone(), f.boundary.iter().map(|s| (s.edge.clone(), s.dir)).collect()))
                    .collect();
                Ok(AnyComplex::Regular2(Regular2Complex::from_graph(self.graph()?, &faces)?))
            }
            "product" => Ok(AnyComplex::Product(Arc::new(ProductComplex::new(self.factor_graphs()?)?))),
            "product-subcomplex" => {
                let parent = Arc::new(ProductComplex::new(self.factor_graphs()?)?);
                let cells = self
                    .need(&self.cells, "cells")?
                    .iter()
                    .map(|ids| parent.parse_cell(ids))
                    .collect::<Result<BTreeSet<_>, _>>()?;
                Ok(AnyComplex::Subcomplex(ProductSubcomplex::new(parent, cells)?))
            }
            "torus-skeleton" => {
                let k = *self.need(&self.torus_dim, "torus_dim")?;
                let subsets = self.need(&self.subsets, "subsets")?;
                if k >= 64 {
                    return Err(DocumentError::Torus(format!("torus dimension {k} exceeds 63")));
                }
                if let Some(bad) = subsets.iter().flatten().find(|&&i| i == 0 || i > k) {
                    return Err(DocumentError::Torus(format!("index {bad} outside 1..={k}")));
                }
                Ok(AnyComplex::TorusSkeleton(TorusSkeleton::from_closed_cells(k, subsets)))
            }
            other => Err(DocumentError::UnknownKind(other.into())),
        }
    }
}

/// Any of the complex models handled by the toolkit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyComplex {
    Graph(Graph1Complex),
    Regular2(Regular2Complex),
    Product(Arc<ProductComplex>),
    Subcomplex(ProductSubcomplex),
    TorusSkeleton(TorusSkeleton),
}

fn graph_doc(g: &Graph1Complex) -> ComplexDocument {
    ComplexDocument {
        vertices: Some(g.vertices().to_vec()),
        edges: Some(
            g.edge_triples()
                .into_iter()
                .map(|(id, tail, head)| EdgeDoc { id, tail, head })
                .collect(),
        ),
        ..ComplexDocument::bare("graph")
    }
}

fn factors_doc(p: &ProductComplex) -> Option<Vec<ComplexDocument>> {
    Some(p.factors().iter().map(graph_doc).collect())
}

impl AnyComplex {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::Graph(_) => "graph",
            Self::Regular2(_) => "regular2",
            Self::Product(_) => "product",
            Self::Subcomplex(_) => "product-subcomplex",
            Self::TorusSkeleton(_) => "torus-skeleton",
        }
    }

    pub fn to_document(&self) -> ComplexDocument {
        match self {
            Self::Graph(g) => graph_doc(g),
            Self::Regular2(k) => ComplexDocument {
                kind: "regular2".into(),
                faces: Some(
                    k.face_specs()
                        .into_iter()
                        .map(|(id, walk)| FaceDoc {
                            id,
                            boundary: walk.into_iter().map(|(edge, dir)| BoundaryStep { edge, dir }).collect(),
                        })
                        .collect(),
                ),
                ..graph_doc(k.graph())
            },
            Self::Product(p) => ComplexDocument {
                factors: factors_doc(p),
                ..ComplexDocument::bare("product")
            },
            Self::Subcomplex(s) => ComplexDocument {
                factors: factors_doc(s.parent()),
                cells: Some(s.cells().iter().map(|c| s.parent().cell_ids(c)).collect()),
                ..ComplexDocument::bare("product-subcomplex")
            },
            Self::TorusSkeleton(t) => ComplexDocument {
                torus_dim: Some(t.torus_dim()),
                subsets: Some(t.index_sets()),
                ..ComplexDocument::bare("torus-skeleton")
            },
        }
    }

    /// The product subcomplex behind a product-model complex.
    pub fn as_subcomplex(&self) -> Option<Cow<'_, ProductSubcomplex>> {
        match self {
            Self::Subcomplex(s) => Some(Cow::Borrowed(s)),
            Self::Product(p) => Some(Cow::Owned(ProductSubcomplex::full(p.clone()))),
            _ => None,
        }
    }

    /// The complex as a regular 2-complex, when it has such a model.
    pub fn as_regular2(&self) -> Option<Cow<'_, Regular2Complex>> {
        match self {
            Self::Regular2(k) => Some(Cow::Borrowed(k)),
            Self::Graph(g) => Some(Cow::Owned(
                Regular2Complex::from_graph::<&str>(g.clone(), &[]).expect("graphs are regular"),
            )),
            Self::Product(_) | Self::Subcomplex(_) => {
                let s = self.as_subcomplex()?;
                (s.parent().factor_count() == 2).then(|| Cow::Owned(s.to_regular2().expect("two factors")))
            }
            Self::TorusSkeleton(_) => None,
        }
    }

    pub fn surface_report(&self) -> Option<SurfaceReport> {
        self.as_regular2().map(|k| surface_report(&k))
    }
}

impl HasIncidence for AnyComplex {
    fn incidence(&self) -> Cow<'_, CellIncidence> {
        match self {
            Self::Graph(g) => g.incidence(),
            Self::Regular2(k) => k.incidence(),
            Self::Product(p) => Cow::Owned(ProductSubcomplex::full(p.clone()).incidence().into_owned()),
            Self::Subcomplex(s) => s.incidence(),
            Self::TorusSkeleton(t) => t.incidence(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{dunce_hat, m0_surface, theta, triple_torus_q};

    fn round_trip(c: AnyComplex) {
        let json = c.to_document().to_json();
        let back = ComplexDocument::from_json(&json).unwrap().to_complex().unwrap();
        assert_eq!(back, c);
        assert_eq!(back.to_document().to_json(), json);
    }

    #[test]
    fn every_kind_round_trips() {
        round_trip(AnyComplex::Graph(theta(3).unwrap()));
        round_trip(AnyComplex::Regular2(dunce_hat()));
        let m = m0_surface(2).unwrap();
        round_trip(AnyComplex::Product(m.parent().clone()));
        round_trip(AnyComplex::Subcomplex(m));
        round_trip(AnyComplex::TorusSkeleton(triple_torus_q(2).unwrap().q));
    }

    #[test]
    fn malformed_documents_are_rejected() {
        assert!(matches!(
            ComplexDocument::from_json(r#"{"kind":"graph","vertices":["a"]}"#).unwrap().to_complex(),
            Err(DocumentError::MissingField { field: "edges", .. })
        ));
        assert!(matches!(
            ComplexDocument::from_json(r#"{"kind":"blob"}"#).unwrap().to_complex(),
            Err(DocumentError::UnknownKind(_))
        ));
        let loop_edge = r#"{"kind":"graph","vertices":["a"],"edges":[{"id":"e","tail":"a","head":"a"}]}"#;
        assert!(ComplexDocument::from_json(loop_edge).unwrap().to_complex().is_err());
        let open = r#"{"kind":"product-subcomplex","factors":[{"kind":"graph","vertices":["a","b"],"edges":[{"id":"e","tail":"a","head":"b"}]}],"cells":[["0:e"]]}"#;
        assert!(ComplexDocument::from_json(open).unwrap().to_complex().is_err());
    }
}
