//! Exact integral cellular homology.

mod surface;
mod torus;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abelian::{invariant_factors_sparse, FgAbGroup, SparseMatrix};
use crate::complex::{CellIncidence, HasIncidence, ProductSubcomplex, Regular2Complex};
use crate::verify::VerifierReport;

pub use surface::{orientability, surface_report, SurfaceReport};
pub use torus::{torus_skeleton_homology, TorusSkeleton};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("boundary D{k} has shape {found:?}, expected {expected:?}")]
    Shape {
        k: usize,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("D{0} * D{1} is not zero")]
    NotAComplex(usize, usize),
    #[error("skeleton dimension {n} exceeds torus dimension {k}")]
    SkeletonTooLarge { n: usize, k: usize },
    #[error("input is not a connected pseudo 2-manifold complex")]
    NotPseudoManifold(VerifierReport),
}

/// Cellular chain complex: `boundaries[k-1]` is `D_k: C_k -> C_{k-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    dims: Vec<usize>,
    boundaries: Vec<SparseMatrix>,
    labels: Vec<Vec<String>>,
}

impl ChainComplex {
    /// Validates shapes and `D_{k-1} D_k = 0`.
    pub fn new(dims: Vec<usize>, boundaries: Vec<SparseMatrix>, labels: Vec<Vec<String>>) -> Result<Self, HomologyError> {
        for (i, d) in boundaries.iter().enumerate() {
            let k = i + 1;
            let expected = (dims.get(k - 1).copied().unwrap_or(0), dims.get(k).copied().unwrap_or(0));
            if (d.rows(), d.cols()) != expected {
                return Err(HomologyError::Shape {
                    k,
                    expected,
                    found: (d.rows(), d.cols()),
                });
            }
        }
        if boundaries.len() + 1 < dims.len() {
            return Err(HomologyError::Shape {
                k: boundaries.len() + 1,
                expected: (dims[boundaries.len()], dims[boundaries.len() + 1]),
                found: (0, 0),
            });
        }
        for (i, w) in boundaries.windows(2).enumerate() {
            if !w[0].mul(&w[1]).is_zero() {
                return Err(HomologyError::NotAComplex(i + 1, i + 2));
            }
        }
        Ok(Self { dims, boundaries, labels })
    }

    pub fn from_incidence(inc: &CellIncidence) -> Self {
        let dims = inc.counts();
        let boundaries = (1..dims.len())
            .map(|k| {
                let cols = (0..dims[k]).map(|i| inc.boundary(k, i).to_vec()).collect();
                SparseMatrix::from_columns(dims[k - 1], cols)
            })
            .collect();
        let labels = (0..dims.len()).map(|k| inc.labels(k).to_vec()).collect();
        Self::new(dims, boundaries, labels).expect("cell incidences satisfy the boundary identity")
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `D_k` for `k >= 1`.
    pub fn boundary(&self, k: usize) -> &SparseMatrix {
        &self.boundaries[k - 1]
    }

    pub fn labels(&self, k: usize) -> &[String] {
        self.labels.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn top_degree(&self) -> Option<usize> {
        self.dims.len().checked_sub(1)
    }

    pub fn euler_characteristic(&self) -> i64 {
        alternating_sum(&self.dims)
    }
}

fn alternating_sum(xs: &[usize]) -> i64 {
    xs.iter()
        .enumerate()
        .map(|(k, &x)| if k % 2 == 0 { x as i64 } else { -(x as i64) })
        .sum()
}

/// Betti numbers, torsion coefficients and Euler characteristic per degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologySummary {
    pub betti: Vec<usize>,
    pub torsion: Vec<Vec<i64>>,
    pub euler: i64,
}

impl HomologySummary {
    pub fn betti(&self, k: usize) -> usize {
        self.betti.get(k).copied().unwrap_or(0)
    }

    pub fn torsion(&self, k: usize) -> &[i64] {
        self.torsion.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn group(&self, k: usize) -> FgAbGroup {
        FgAbGroup::new(self.betti(k), self.torsion(k).to_vec()).expect("torsion factors form a divisibility chain")
    }

    pub fn has_torsion(&self) -> bool {
        self.torsion.iter().any(|t| !t.is_empty())
    }

    /// Reduced homology vanishes in every degree.
    pub fn is_acyclic(&self) -> bool {
        self.betti(0) == 1 && self.betti.iter().skip(1).all(|&b| b == 0) && !self.has_torsion()
    }
}

pub fn homology(c: &ChainComplex) -> HomologySummary {
    let n = c.dims.len();
    let factors: Vec<Vec<i64>> = c.boundaries.iter().map(invariant_factors_sparse).collect();
    // rank of D_k for k in 0..=n, with D_0 and D_n zero
    let rank = |k: usize| if k == 0 || k > factors.len() { 0 } else { factors[k - 1].len() };
    let betti: Vec<usize> = (0..n).map(|k| c.dims[k] - rank(k) - rank(k + 1)).collect();
    let torsion: Vec<Vec<i64>> = (0..n)
        .map(|k| {
            factors
                .get(k)
                .map(|f| f.iter().copied().filter(|&x| x > 1).collect())
                .unwrap_or_default()
        })
        .collect();
    let euler = c.euler_characteristic();
    debug_assert_eq!(euler, alternating_sum(&betti));
    HomologySummary { betti, torsion, euler }
}

pub fn chain_complex_of_regular2(k: &Regular2Complex) -> ChainComplex {
    ChainComplex::from_incidence(&k.incidence())
}

/// Chain complex with the cubical signs of the product.
pub fn chain_complex_of_product(sub: &ProductSubcomplex) -> ChainComplex {
    ChainComplex::from_incidence(&sub.incidence())
}

/// Homology of anything exposing a cell incidence.
pub fn homology_of<T: HasIncidence + ?Sized>(k: &T) -> HomologySummary {
    homology(&ChainComplex::from_incidence(&k.incidence()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::IntegerMatrix;
    use crate::complex::Direction::{Forward as F, Reverse as R};

    #[test]
    fn single_edge() {
        let k = Regular2Complex::new(&["a", "b"], &[("e", "a", "b")], &[]).unwrap();
        let c = chain_complex_of_regular2(&k);
        assert_eq!(c.boundary(1).to_dense(), IntegerMatrix::from_rows(&[[-1], [1]]));
        let h = homology(&c);
        assert_eq!(h.betti, vec![1, 0]);
        assert!(h.is_acyclic());
    }

    #[test]
    fn triangle_is_acyclic() {
        let t = Regular2Complex::new(
            &["a", "b", "c"],
            &[("ab", "a", "b"), ("bc", "b", "c"), ("ac", "a", "c")],
            &[("t", vec![("ab", F), ("bc", F), ("ac", R)])],
        )
        .unwrap();
        assert_eq!(homology_of(&t).betti, vec![1, 0, 0]);
    }

    #[test]
    fn rejects_non_complex() {
        let d1 = SparseMatrix::from_dense(&IntegerMatrix::from_rows(&[[1]]));
        let d2 = SparseMatrix::from_dense(&IntegerMatrix::from_rows(&[[1]]));
        assert!(matches!(
            ChainComplex::new(vec![1, 1, 1], vec![d1.clone(), d2], vec![]),
            Err(HomologyError::NotAComplex(1, 2))
        ));
        assert!(matches!(
            ChainComplex::new(vec![2, 1], vec![d1], vec![]),
            Err(HomologyError::Shape { .. })
        ));
    }

    #[test]
    fn projective_plane_torsion() {
        // chain model of the projective plane: one cell per degree, D2 = [2]
        let d1 = SparseMatrix::zeros(1, 1);
        let d2 = SparseMatrix::from_dense(&IntegerMatrix::from_rows(&[[2]]));
        let c = ChainComplex::new(vec![1, 1, 1], vec![d1, d2], vec![]).unwrap();
        let h = homology(&c);
        assert_eq!(h.betti, vec![1, 0, 0]);
        assert_eq!(h.torsion(1), &[2]);
        assert_eq!(h.euler, 1);
    }
}
