//! Combinatorial recognition of pseudo and ramified manifold complexes,
//! free edges, closed surfaces and chain-connected components.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{CellIncidence, HasIncidence, Regular2Complex, UnionFind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("unknown cell {0}")]
    UnknownCell(String),
    #[error("cell {cell} has dimension {dim}, expected {expected}")]
    WrongDimension { cell: String, dim: usize, expected: usize },
    #[error("precondition failed: not a ramified {n}-manifold complex")]
    NotRamified { n: usize, report: VerifierReport },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub cell: String,
    pub reason: String,
}

/// Outcome of a check; a negative verdict always carries witnesses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifierReport {
    pub verdict: bool,
    pub witnesses: Vec<Witness>,
}

impl VerifierReport {
    pub fn pass() -> Self {
        Self {
            verdict: true,
            witnesses: Vec::new(),
        }
    }

    pub fn from_witnesses(witnesses: Vec<Witness>) -> Self {
        Self {
            verdict: witnesses.is_empty(),
            witnesses,
        }
    }

    pub fn fail(cell: impl Into<String>, reason: impl Into<String>) -> Self {
        Self::from_witnesses(vec![Witness {
            cell: cell.into(),
            reason: reason.into(),
        }])
    }

    /// Conjunction of two reports.
    pub fn and(mut self, other: VerifierReport) -> Self {
        self.witnesses.extend(other.witnesses);
        self.verdict = self.verdict && other.verdict;
        self
    }
}

/// Number of `n`-cells having the `(n-1)`-cell `label` as a face.
pub fn incidence_count<T: HasIncidence + ?Sized>(k: &T, label: &str) -> Result<usize, VerifyError> {
    let inc = k.incidence();
    let (d, i) = inc.find(label).ok_or_else(|| VerifyError::UnknownCell(label.to_string()))?;
    if d + 1 > inc.dimension().unwrap_or(0) {
        return Ok(0);
    }
    Ok(inc.cofacets(d, i).len())
}

/// Whether each cell lies in the closure of some `n`-cell.
fn covered_by_top(inc: &CellIncidence, n: usize) -> Vec<Vec<bool>> {
    let top = inc.dimension().map_or(0, |d| d + 1);
    let mut covered: Vec<Vec<bool>> = (0..top).map(|k| vec![k == n; inc.count(k)]).collect();
    for k in (1..=n.min(top.saturating_sub(1))).rev() {
        for i in 0..inc.count(k) {
            if covered[k][i] {
                for &(f, _) in inc.boundary(k, i) {
                    covered[k - 1][f] = true;
                }
            }
        }
    }
    covered
}

/// Classes of `n`-cells under adjacency through shared `(n-1)`-cells.
fn chain_classes(inc: &CellIncidence, n: usize) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(inc.count(n));
    if n > 0 {
        for i in 0..inc.count(n - 1) {
            let cof = inc.cofacets(n - 1, i);
            for w in cof.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
    }
    uf.classes()
}

fn manifold_check(inc: &CellIncidence, n: usize, simple: bool, exact: bool) -> VerifierReport {
    let mut w = Vec::new();
    if inc.count(n) == 0 {
        w.push(Witness {
            cell: String::new(),
            reason: format!("no {n}-cells"),
        });
    }
    let covered = covered_by_top(inc, n);
    for (k, row) in covered.iter().enumerate() {
        for (i, &c) in row.iter().enumerate() {
            if k > n {
                w.push(Witness {
                    cell: inc.label(k, i).to_string(),
                    reason: format!("cell of dimension {k} exceeds {n}"),
                });
            } else if !c {
                w.push(Witness {
                    cell: inc.label(k, i).to_string(),
                    reason: format!("not a face of any {n}-cell"),
                });
            }
        }
    }
    if n > 0 {
        for i in 0..inc.count(n - 1) {
            let c = inc.cofacets(n - 1, i).len();
            let bad = if exact { c != 2 } else { c < 2 };
            if bad {
                let want = if exact { "exactly 2" } else { "at least 2" };
                w.push(Witness {
                    cell: inc.label(n - 1, i).to_string(),
                    reason: format!("incident with {c} {n}-cells, expected {want}"),
                });
            }
        }
    }
    if simple && inc.count(n) > 0 {
        let classes = chain_classes(inc, n);
        if classes.len() > 1 {
            for cls in &classes[1..] {
                w.push(Witness {
                    cell: inc.label(n, cls[0]).to_string(),
                    reason: format!("{n}-cells are not chain connected ({} classes)", classes.len()),
                });
            }
        }
    }
    VerifierReport::from_witnesses(w)
}

/// Every cell lies in an `n`-cell and every `(n-1)`-cell is incident with
/// exactly two `n`-cells; `simple` adds chain connectivity of the `n`-cells.
pub fn pseudo_manifold_check<T: HasIncidence + ?Sized>(k: &T, n: usize, simple: bool) -> VerifierReport {
    manifold_check(&k.incidence(), n, simple, true)
}

/// As [`pseudo_manifold_check`] with incidence at least two.
pub fn ramified_manifold_check<T: HasIncidence + ?Sized>(k: &T, n: usize, simple: bool) -> VerifierReport {
    manifold_check(&k.incidence(), n, simple, false)
}

/// Edges incident with exactly one 2-cell.
pub fn free_edges(k: &Regular2Complex) -> Vec<String> {
    let mut count = vec![0usize; k.edge_count()];
    for f in k.faces() {
        for &(e, _) in &f.boundary {
            count[e] += 1;
        }
    }
    count
        .iter()
        .enumerate()
        .filter(|(_, &c)| c == 1)
        .map(|(e, _)| k.graph().edge(e).id.clone())
        .collect()
}

/// Whether the cells form one connected piece (the empty complex is not connected).
pub fn is_connected<T: HasIncidence + ?Sized>(k: &T) -> bool {
    let inc = k.incidence();
    let nv = inc.count(0);
    if nv == 0 {
        return false;
    }
    let mut uf = UnionFind::new(nv);
    for i in 0..inc.count(1) {
        let b = inc.boundary(1, i);
        for w in b.windows(2) {
            uf.union(w[0].0, w[1].0);
        }
    }
    uf.classes().len() == 1
}

/// Connected, every edge in exactly two faces, and every vertex link a single cycle.
///
/// The link of `v` has a node per edge at `v` and a link edge per face corner at `v`.
pub fn closed_surface_check(k: &Regular2Complex) -> VerifierReport {
    let mut w = Vec::new();
    let g = k.graph();
    if k.face_count() == 0 {
        w.push(Witness {
            cell: String::new(),
            reason: "no 2-cells".into(),
        });
    }
    if !is_connected(k) {
        w.push(Witness {
            cell: String::new(),
            reason: "complex is not connected".into(),
        });
    }
    let mut count = vec![0usize; k.edge_count()];
    // corners[v] = list of (incoming edge, outgoing edge) pairs at v
    let mut corners: Vec<Vec<(usize, usize)>> = vec![Vec::new(); k.vertex_count()];
    for f in k.faces() {
        let len = f.boundary.len();
        for (i, &(e, d)) in f.boundary.iter().enumerate() {
            count[e] += 1;
            let (_, v) = g.edge(e).oriented(d);
            corners[v].push((e, f.boundary[(i + 1) % len].0));
        }
    }
    for (e, &c) in count.iter().enumerate() {
        if c != 2 {
            w.push(Witness {
                cell: g.edge(e).id.clone(),
                reason: format!("incident with {c} faces, expected 2"),
            });
        }
    }
    for (v, cs) in corners.iter().enumerate() {
        let incident: Vec<usize> = (0..k.edge_count())
            .filter(|&e| {
                let ed = g.edge(e);
                ed.tail == v || ed.head == v
            })
            .collect();
        if let Some(reason) = link_defect(&incident, cs) {
            w.push(Witness {
                cell: g.vertex_id(v).to_string(),
                reason,
            });
        }
    }
    VerifierReport::from_witnesses(w)
}

fn link_defect(nodes: &[usize], corners: &[(usize, usize)]) -> Option<String> {
    if nodes.is_empty() {
        return Some("isolated vertex".into());
    }
    let pos: HashMap<usize, usize> = nodes.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut deg = vec![0usize; nodes.len()];
    let mut uf = UnionFind::new(nodes.len());
    for &(a, b) in corners {
        let (a, b) = (pos[&a], pos[&b]);
        deg[a] += 1;
        deg[b] += 1;
        uf.union(a, b);
    }
    if let Some(d) = deg.iter().find(|&&d| d != 2) {
        return Some(format!("link has a node of degree {d}"));
    }
    let parts = uf.classes().len();
    (parts != 1).then(|| format!("link is {parts} disjoint cycles"))
}

/// Chain-connectivity classes of `n`-cells, as sorted label lists.
///
/// The closures of distinct classes meet in dimension at most `n-2`.
pub fn combinatorial_components<T: HasIncidence + ?Sized>(k: &T, n: usize) -> Result<Vec<Vec<String>>, VerifyError> {
    let inc = k.incidence();
    let report = manifold_check(&inc, n, false, false);
    if !report.verdict {
        return Err(VerifyError::NotRamified { n, report });
    }
    let classes = chain_classes(&inc, n);
    if n > 0 {
        let mut owner: HashMap<usize, usize> = HashMap::new();
        for (ci, cls) in classes.iter().enumerate() {
            for &c in cls {
                for &(f, _) in inc.boundary(n, c) {
                    let prev = owner.insert(f, ci);
                    assert!(prev.is_none_or(|p| p == ci), "components share an (n-1)-cell");
                }
            }
        }
    }
    Ok(classes
        .into_iter()
        .map(|cls| {
            let set: BTreeSet<String> = cls.into_iter().map(|i| inc.label(n, i).to_string()).collect();
            set.into_iter().collect()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Direction::{Forward as F, Reverse as R};

    fn square_disc() -> Regular2Complex {
        // two triangles sharing the diagonal ac
        Regular2Complex::new(
            &["a", "b", "c", "d"],
            &[("ab", "a", "b"), ("bc", "b", "c"), ("cd", "c", "d"), ("da", "d", "a"), ("ac", "a", "c")],
            &[
                ("t1", vec![("ab", F), ("bc", F), ("ac", R)]),
                ("t2", vec![("ac", F), ("cd", F), ("da", F)]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn disc_incidences() {
        let d = square_disc();
        assert_eq!(incidence_count(&d, "ac").unwrap(), 2);
        assert_eq!(incidence_count(&d, "ab").unwrap(), 1);
        assert!(incidence_count(&d, "zz").is_err());
        assert_eq!(free_edges(&d).len(), 4);
        assert!(!pseudo_manifold_check(&d, 2, true).verdict);
        assert!(!ramified_manifold_check(&d, 2, false).verdict);
        assert!(!closed_surface_check(&d).verdict);
    }

    #[test]
    fn single_triangle_is_not_pseudo() {
        let t = Regular2Complex::new(
            &["a", "b", "c"],
            &[("ab", "a", "b"), ("bc", "b", "c"), ("ac", "a", "c")],
            &[("t", vec![("ab", F), ("bc", F), ("ac", R)])],
        )
        .unwrap();
        let r = pseudo_manifold_check(&t, 2, false);
        assert!(!r.verdict);
        assert_eq!(r.witnesses.len(), 3);
    }

    #[test]
    fn sphere_of_two_bigons() {
        let s = Regular2Complex::new(
            &["p", "q"],
            &[("x", "p", "q"), ("y", "p", "q")],
            &[("n", vec![("x", F), ("y", R)]), ("s", vec![("x", F), ("y", R)])],
        )
        .unwrap();
        assert!(closed_surface_check(&s).verdict);
        assert!(pseudo_manifold_check(&s, 2, true).verdict);
        assert_eq!(combinatorial_components(&s, 2).unwrap(), vec![vec!["n".to_string(), "s".to_string()]]);
    }
}
