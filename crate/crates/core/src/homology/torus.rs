use std::borrow::Cow;
use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::{homology, ChainComplex, HomologyError, HomologySummary};
use crate::complex::{CellIncidence, HasIncidence};

/// A subcomplex of the canonical CW structure on the `k`-torus: one cell
/// `e_J` per subset `J` of `{1..k}`, with `e_J` meeting `e_J'` in `e_(J & J')`.
///
/// Every cellular boundary map of this structure is zero. Subsets are
/// stored as bitmasks, bit `i - 1` standing for index `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusSkeleton {
    k: usize,
    cells: BTreeSet<u64>,
}

fn subsets_of(mask: u64) -> impl Iterator<Item = u64> {
    // enumerate submasks of `mask`, including 0
    let mut sub = Some(mask);
    std::iter::from_fn(move || {
        let cur = sub?;
        sub = if cur == 0 { None } else { Some((cur - 1) & mask) };
        Some(cur)
    })
}

pub(crate) fn mask_of(indices: &[usize]) -> u64 {
    indices.iter().fold(0, |m, &i| m | 1 << (i - 1))
}

impl TorusSkeleton {
    /// The `n`-skeleton: all `J` with `|J| <= n`.
    pub fn skeleton(k: usize, n: usize) -> Result<Self, HomologyError> {
        if n > k {
            return Err(HomologyError::SkeletonTooLarge { n, k });
        }
        assert!(k < 64, "torus dimension must be below 64");
        let cells = (0..1u64 << k).filter(|m| m.count_ones() as usize <= n).collect();
        Ok(Self { k, cells })
    }

    /// Union of the closed cells `e_J` for the given 1-based index sets.
    pub fn from_closed_cells(k: usize, sets: &[Vec<usize>]) -> Self {
        assert!(k < 64, "torus dimension must be below 64");
        let mut cells = BTreeSet::new();
        for s in sets {
            assert!(s.iter().all(|&i| (1..=k).contains(&i)), "index outside 1..={k}");
            cells.extend(subsets_of(mask_of(s)));
        }
        Self { k, cells }
    }

    pub fn torus_dim(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Cells as sorted 1-based index lists.
    pub fn index_sets(&self) -> Vec<Vec<usize>> {
        self.cells
            .iter()
            .map(|&m| (1..=self.k).filter(|i| m >> (i - 1) & 1 == 1).collect())
            .collect()
    }

    pub fn intersection(&self, other: &Self) -> Self {
        assert_eq!(self.k, other.k, "skeleta of different tori");
        Self {
            k: self.k,
            cells: self.cells.intersection(&other.cells).copied().collect(),
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        assert_eq!(self.k, other.k, "skeleta of different tori");
        Self {
            k: self.k,
            cells: self.cells.union(&other.cells).copied().collect(),
        }
    }

    /// Zero-differential cellular chain complex.
    pub fn chain_complex(&self) -> ChainComplex {
        ChainComplex::from_incidence(&self.incidence())
    }

    pub fn homology(&self) -> HomologySummary {
        homology(&self.chain_complex())
    }
}

/// Face relation `e_(J - i) < e_J` with every incidence number zero.
impl HasIncidence for TorusSkeleton {
    fn incidence(&self) -> Cow<'_, CellIncidence> {
        let top = self.cells.iter().map(|m| m.count_ones() as usize).max().map_or(0, |d| d + 1);
        let mut by_dim: Vec<Vec<u64>> = vec![Vec::new(); top];
        for &m in &self.cells {
            by_dim[m.count_ones() as usize].push(m);
        }
        let index: Vec<HashMap<u64, usize>> = by_dim
            .iter()
            .map(|ms| ms.iter().enumerate().map(|(i, &m)| (m, i)).collect())
            .collect();
        let labels = by_dim
            .iter()
            .map(|ms| {
                ms.iter()
                    .map(|&m| {
                        let names: Vec<String> = (1..=self.k).filter(|i| m >> (i - 1) & 1 == 1).map(|i| i.to_string()).collect();
                        format!("{{{}}}", names.join(","))
                    })
                    .collect()
            })
            .collect();
        let boundary = by_dim
            .iter()
            .enumerate()
            .map(|(d, ms)| {
                ms.iter()
                    .map(|&m| {
                        if d == 0 {
                            return Vec::new();
                        }
                        (0..self.k)
                            .filter(|i| m >> i & 1 == 1)
                            .map(|i| (index[d - 1][&(m & !(1 << i))], 0))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Cow::Owned(CellIncidence::new(labels, boundary))
    }
}

/// Homology of the `n`-skeleton of the canonical CW structure on the `k`-torus.
pub fn torus_skeleton_homology(k: usize, n: usize) -> Result<HomologySummary, HomologyError> {
    Ok(TorusSkeleton::skeleton(k, n)?.homology())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn skeleton_betti_are_binomials() {
        assert_eq!(torus_skeleton_homology(4, 2).unwrap().betti, vec![1, 4, 6]);
        assert_eq!(torus_skeleton_homology(5, 3).unwrap().betti(3), 10);
        assert_eq!(torus_skeleton_homology(3, 3).unwrap().betti, vec![1, 3, 3, 1]);
        assert!(torus_skeleton_homology(2, 3).is_err());
    }

    #[test]
    fn closed_cells_and_intersections() {
        let a = TorusSkeleton::from_closed_cells(3, &[vec![2, 3]]);
        let b = TorusSkeleton::from_closed_cells(3, &[vec![1, 3]]);
        assert_eq!(a.len(), 4);
        let i = a.intersection(&b);
        assert_eq!(i.index_sets(), vec![vec![], vec![3]]);
        assert_eq!(i.homology().betti, vec![1, 1]);
    }
}
