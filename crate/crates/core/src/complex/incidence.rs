use std::borrow::Cow;
use std::collections::HashMap;

use super::graph::Graph1Complex;
use super::product::{CellTuple, ProductSubcomplex};
use super::regular::Regular2Complex;

/// Dimension-indexed facet structure shared by every complex model.
///
/// `boundary[k][i]` lists `(facet index in dimension k-1, sign)` for the
/// `i`-th `k`-cell; `boundary[0]` is all empty. Cofacets are the transpose.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellIncidence {
    labels: Vec<Vec<String>>,
    boundary: Vec<Vec<Vec<(usize, i64)>>>,
    coboundary: Vec<Vec<Vec<usize>>>,
}

impl CellIncidence {
    /// `labels[k]` names the `k`-cells; `boundary[k]` as described on the type.
    pub fn new(labels: Vec<Vec<String>>, boundary: Vec<Vec<Vec<(usize, i64)>>>) -> Self {
        assert_eq!(labels.len(), boundary.len(), "one boundary list per dimension");
        let mut coboundary: Vec<Vec<Vec<usize>>> = labels.iter().map(|l| vec![Vec::new(); l.len()]).collect();
        for (k, cells) in boundary.iter().enumerate() {
            assert_eq!(cells.len(), labels[k].len(), "boundary list length in dimension {k}");
            for (i, facets) in cells.iter().enumerate() {
                assert!(k > 0 || facets.is_empty(), "vertices have no facets");
                for &(f, _) in facets {
                    coboundary[k - 1][f].push(i);
                }
            }
        }
        let mut me = Self {
            labels,
            boundary,
            coboundary,
        };
        me.trim();
        me
    }

    fn trim(&mut self) {
        while self.labels.last().is_some_and(Vec::is_empty) {
            self.labels.pop();
            self.boundary.pop();
            self.coboundary.pop();
        }
    }

    /// Top dimension, `None` if there are no cells.
    pub fn dimension(&self) -> Option<usize> {
        self.labels.len().checked_sub(1)
    }

    pub fn count(&self, k: usize) -> usize {
        self.labels.get(k).map_or(0, Vec::len)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.labels.iter().map(Vec::len).collect()
    }

    pub fn label(&self, k: usize, i: usize) -> &str {
        &self.labels[k][i]
    }

    pub fn labels(&self, k: usize) -> &[String] {
        self.labels.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn find(&self, label: &str) -> Option<(usize, usize)> {
        self.labels
            .iter()
            .enumerate()
            .find_map(|(k, ls)| ls.iter().position(|l| l == label).map(|i| (k, i)))
    }

    pub fn boundary(&self, k: usize, i: usize) -> &[(usize, i64)] {
        &self.boundary[k][i]
    }

    pub fn cofacets(&self, k: usize, i: usize) -> &[usize] {
        &self.coboundary[k][i]
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.labels
            .iter()
            .enumerate()
            .map(|(k, l)| if k % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) })
            .sum()
    }
}

/// Anything that can present its cells through a [`CellIncidence`].
pub trait HasIncidence {
    fn incidence(&self) -> Cow<'_, CellIncidence>;
}

impl HasIncidence for CellIncidence {
    fn incidence(&self) -> Cow<'_, CellIncidence> {
        Cow::Borrowed(self)
    }
}

/// Labels per dimension and boundaries per dimension, cell by cell.
type Parts = (Vec<Vec<String>>, Vec<Vec<Vec<(usize, i64)>>>);

fn graph_parts(g: &Graph1Complex) -> Parts {
    let labels = vec![g.vertices().to_vec(), g.edges().iter().map(|e| e.id.clone()).collect()];
    let boundary = vec![
        vec![Vec::new(); g.vertex_count()],
        g.edges().iter().map(|e| vec![(e.head, 1), (e.tail, -1)]).collect(),
    ];
    (labels, boundary)
}

impl HasIncidence for Graph1Complex {
    fn incidence(&self) -> Cow<'_, CellIncidence> {
        let (labels, boundary) = graph_parts(self);
        Cow::Owned(CellIncidence::new(labels, boundary))
    }
}

impl HasIncidence for Regular2Complex {
    fn incidence(&self) -> Cow<'_, CellIncidence> {
        let (mut labels, mut boundary) = graph_parts(self.graph());
        labels.push(self.faces().iter().map(|f| f.id.clone()).collect());
        boundary.push(
            self.faces()
                .iter()
                .map(|f| f.boundary.iter().map(|&(e, d)| (e, d.sign())).collect())
                .collect(),
        );
        Cow::Owned(CellIncidence::new(labels, boundary))
    }
}

impl HasIncidence for ProductSubcomplex {
    fn incidence(&self) -> Cow<'_, CellIncidence> {
        let parent = self.parent();
        let top = self.dimension().map_or(0, |d| d + 1);
        let mut by_dim: Vec<Vec<&CellTuple>> = vec![Vec::new(); top];
        for c in self.cells() {
            by_dim[c.dim()].push(c);
        }
        let index: Vec<HashMap<&CellTuple, usize>> = by_dim
            .iter()
            .map(|cs| cs.iter().enumerate().map(|(i, c)| (*c, i)).collect())
            .collect();
        let labels = by_dim
            .iter()
            .map(|cs| cs.iter().map(|c| parent.cell_label(c)).collect())
            .collect();
        let boundary = by_dim
            .iter()
            .enumerate()
            .map(|(k, cs)| {
                cs.iter()
                    .map(|c| {
                        if k == 0 {
                            return Vec::new();
                        }
                        parent
                            .boundary(c)
                            .into_iter()
                            .map(|(f, s)| (index[k - 1][&f], s))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Cow::Owned(CellIncidence::new(labels, boundary))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Direction::{Forward as F, Reverse as R};

    #[test]
    fn triangle_incidence() {
        let t = Regular2Complex::new(
            &["a", "b", "c"],
            &[("ab", "a", "b"), ("bc", "b", "c"), ("ac", "a", "c")],
            &[("t", vec![("ab", F), ("bc", F), ("ac", R)])],
        )
        .unwrap();
        let inc = t.incidence();
        assert_eq!(inc.counts(), vec![3, 3, 1]);
        assert_eq!(inc.cofacets(1, 2), &[0]);
        assert_eq!(inc.cofacets(0, 0).len(), 2);
        assert_eq!(inc.boundary(2, 0), &[(0, 1), (1, 1), (2, -1)]);
        assert_eq!(inc.find("bc"), Some((1, 1)));
        assert_eq!(inc.euler_characteristic(), 1);
    }

    #[test]
    fn empty_trims_to_no_dimension() {
        let inc = CellIncidence::new(vec![vec![], vec![]], vec![vec![], vec![]]);
        assert_eq!(inc.dimension(), None);
    }
}
