//! Projections of a subcomplex `M` of a product of graphs onto groups of
//! factors, fibers over cells of the complementary projection, circle
//! factors, product splittings and the meridian decomposition of surfaces
//! in products of two theta-curves.
//!
//! Factor indices are 0-based, matching the `"i:id"` cell ids.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::complex::{CellTuple, Comp, HasIncidence, ProductComplex, ProductSubcomplex};
use crate::homology::{homology_of, HomologySummary};
use crate::verify::{is_connected, pseudo_manifold_check, ramified_manifold_check, VerifierReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProjectionError {
    #[error("empty index set")]
    EmptyIndexSet,
    #[error("factor index {index} out of range for {factors} factors")]
    IndexOutOfRange { index: usize, factors: usize },
    #[error("fibers need a proper subset of the factors")]
    NotProper,
    #[error("cell {0} is not in the complementary projection")]
    NotInProjection(String),
    #[error("precondition failed: {0}")]
    Precondition(String, VerifierReport),
    #[error("factor {factor}: fibers over vertices circles = {fibers}, projection a circle = {projection}")]
    Biconditional { factor: usize, fibers: bool, projection: bool },
    #[error("not a product of two theta-curves: {0}")]
    NotThetaProduct(String),
    #[error("fiber over {cell} is not a circle: {detail}")]
    FiberNotCircle { cell: String, detail: String },
}

fn normalize(j: &[usize], n: usize) -> Result<Vec<usize>, ProjectionError> {
    if j.is_empty() {
        return Err(ProjectionError::EmptyIndexSet);
    }
    if let Some(&index) = j.iter().find(|&&i| i >= n) {
        return Err(ProjectionError::IndexOutOfRange { index, factors: n });
    }
    Ok(j.iter().copied().collect::<BTreeSet<_>>().into_iter().collect())
}

fn complement(j: &[usize], n: usize) -> Vec<usize> {
    (0..n).filter(|i| !j.contains(i)).collect()
}

fn sub_parent(p: &ProductComplex, idx: &[usize]) -> Arc<ProductComplex> {
    Arc::new(ProductComplex::new(idx.iter().map(|&i| p.factor(i).clone()).collect()).expect("nonempty index set"))
}

/// Puts the coordinates of `a` (at positions `ja`) and `b` (at `jb`) back together.
fn interleave(a: &CellTuple, ja: &[usize], b: &CellTuple, jb: &[usize]) -> CellTuple {
    let mut out = vec![Comp::Vertex(0); ja.len() + jb.len()];
    for (c, &i) in a.0.iter().zip(ja) {
        out[i] = *c;
    }
    for (c, &i) in b.0.iter().zip(jb) {
        out[i] = *c;
    }
    CellTuple(out)
}

/// Image of `M` under the projection onto the factors in `j`.
pub fn project(m: &ProductSubcomplex, j: &[usize]) -> Result<ProductSubcomplex, ProjectionError> {
    let j = normalize(j, m.parent().factor_count())?;
    let parent = sub_parent(m.parent(), &j);
    let cells = m.cells().iter().map(|c| c.restrict(&j)).collect();
    Ok(ProductSubcomplex::new(parent, cells).expect("images of face-closed sets are face-closed"))
}

/// Fibers `P_J(tau)` for every cell `tau` of the complementary projection.
///
/// `P_J(tau)` is the closure of the `J`-parts of the top cells of `M` whose
/// complementary part has `tau` as a face. Whenever `tau` is a face of
/// `tau'`, `P_J(tau)` contains `P_J(tau')`.
#[derive(Clone, Debug)]
pub struct FiberTable {
    pub j: Vec<usize>,
    pub jc: Vec<usize>,
    pub base: ProductSubcomplex,
    pub fibers: BTreeMap<CellTuple, ProductSubcomplex>,
}

impl FiberTable {
    pub fn new(m: &ProductSubcomplex, j: &[usize]) -> Result<Self, ProjectionError> {
        let n = m.parent().factor_count();
        let j = normalize(j, n)?;
        if j.len() == n {
            return Err(ProjectionError::NotProper);
        }
        let jc = complement(&j, n);
        let pj = sub_parent(m.parent(), &j);
        let base = project(m, &jc)?;
        let mut buckets: BTreeMap<CellTuple, Vec<CellTuple>> = base.cells().iter().map(|t| (t.clone(), Vec::new())).collect();
        let top = m.dimension().unwrap_or(0);
        for c in m.cells_of_dim(top) {
            let tau = c.restrict(&jc);
            let sigma = c.restrict(&j);
            let mut faces = base.parent().faces(&tau).expect("projected cells are valid");
            faces.insert(tau);
            for f in faces {
                buckets.get_mut(&f).expect("faces of projected cells are projected").push(sigma.clone());
            }
        }
        let fibers = buckets
            .into_iter()
            .map(|(t, sigmas)| (t, ProductSubcomplex::closure(pj.clone(), sigmas).expect("valid cells")))
            .collect();
        Ok(Self { j, jc, base, fibers })
    }

    pub fn fiber(&self, tau: &CellTuple) -> Result<&ProductSubcomplex, ProjectionError> {
        self.fibers
            .get(tau)
            .ok_or_else(|| ProjectionError::NotInProjection(format!("{tau:?}")))
    }
}

/// `P_J(tau)` for one cell `tau` of the projection onto the complementary factors.
pub fn fiber_complex(m: &ProductSubcomplex, j: &[usize], tau: &CellTuple) -> Result<ProductSubcomplex, ProjectionError> {
    let table = FiberTable::new(m, j)?;
    table.fiber(tau).map_err(|_| ProjectionError::NotInProjection(table.base.parent().cell_label(tau))).cloned()
}

/// Nonempty, connected, one-dimensional, every vertex of degree two.
pub fn is_circle<T: HasIncidence + ?Sized>(g: &T) -> bool {
    let inc = g.incidence();
    inc.dimension() == Some(1) && (0..inc.count(0)).all(|v| inc.cofacets(0, v).len() == 2) && is_connected(g)
}

fn require_ramified(m: &ProductSubcomplex) -> Result<usize, ProjectionError> {
    let n = m.parent().factor_count();
    let report = ramified_manifold_check(m, n, false);
    if !report.verdict {
        return Err(ProjectionError::Precondition(format!("not a ramified {n}-manifold complex"), report));
    }
    if !is_connected(m) {
        return Err(ProjectionError::Precondition(
            "not connected".into(),
            VerifierReport::fail("", "complex is not connected"),
        ));
    }
    Ok(n)
}

/// Whether every fiber `P_j(v)` over a vertex `v` is a circle. The answer is
/// cross-checked against whether the projection onto factor `j` is a circle.
pub fn fibers_all_circles(m: &ProductSubcomplex, j: usize) -> Result<bool, ProjectionError> {
    let n = require_ramified(m)?;
    normalize(&[j], n)?;
    let table = FiberTable::new(m, &[j])?;
    let fibers = table.fibers.iter().filter(|(t, _)| t.dim() == 0).all(|(_, f)| is_circle(f));
    let projection = is_circle(&project(m, &[j])?);
    if fibers != projection {
        return Err(ProjectionError::Biconditional {
            factor: j,
            fibers,
            projection,
        });
    }
    Ok(fibers)
}

/// Indices `j` for which the projection onto factor `j` is a circle.
pub fn circle_projection_set(m: &ProductSubcomplex) -> Vec<usize> {
    (0..m.parent().factor_count())
        .filter(|&j| is_circle(&project(m, &[j]).expect("index in range")))
        .collect()
}

/// Outcome of splitting off the circle factors.
///
/// `exact` is only meaningful when `claimed`: the projection onto the
/// circle factors is the product of those circles and `M` equals that torus
/// times the residual projection.
#[derive(Clone, Debug, Serialize)]
pub struct DecompositionResult {
    pub circle_indices: Vec<usize>,
    pub claimed: bool,
    pub exact: bool,
    pub residual_indices: Vec<usize>,
    pub residual_cells: Vec<Vec<String>>,
    /// The residual has no projection onto a circle.
    pub residual_circle_free: Option<bool>,
    #[serde(skip)]
    pub torus_part: Vec<ProductSubcomplex>,
    #[serde(skip)]
    pub residual: Option<ProductSubcomplex>,
}

/// Cellwise product of subcomplexes sitting at the given factor positions.
fn reassemble(a: &ProductSubcomplex, ja: &[usize], b: &ProductSubcomplex, jb: &[usize]) -> BTreeSet<CellTuple> {
    a.cells()
        .iter()
        .flat_map(|x| b.cells().iter().map(move |y| interleave(x, ja, y, jb)))
        .collect()
}

fn product_of_circles(m: &ProductSubcomplex, j: &[usize]) -> BTreeSet<CellTuple> {
    let circles: Vec<ProductSubcomplex> = j.iter().map(|&i| project(m, &[i]).expect("index in range")).collect();
    let mut acc: BTreeSet<CellTuple> = [CellTuple(vec![])].into();
    for c in &circles {
        acc = acc
            .iter()
            .flat_map(|x| c.cells().iter().map(move |y| x.concat(y)))
            .collect();
    }
    acc
}

pub fn product_decomposition(m: &ProductSubcomplex) -> Result<DecompositionResult, ProjectionError> {
    let n = require_ramified(m)?;
    let j = circle_projection_set(m);
    let torus_part: Vec<ProductSubcomplex> = j.iter().map(|&i| project(m, &[i]).expect("index in range")).collect();
    let ids = |s: &ProductSubcomplex| s.cells().iter().map(|c| s.parent().cell_ids(c)).collect();
    if j.is_empty() {
        return Ok(DecompositionResult {
            circle_indices: j,
            claimed: false,
            exact: false,
            residual_indices: (0..n).collect(),
            residual_cells: ids(m),
            residual_circle_free: Some(true),
            torus_part,
            residual: Some(m.clone()),
        });
    }
    let torus = project(m, &j)?;
    let torus_is_product = torus.cells() == &product_of_circles(m, &j);
    if j.len() == n {
        return Ok(DecompositionResult {
            circle_indices: j,
            claimed: true,
            exact: torus_is_product && torus.cells() == m.cells(),
            residual_indices: vec![],
            residual_cells: vec![],
            residual_circle_free: None,
            torus_part,
            residual: None,
        });
    }
    let jc = complement(&j, n);
    let residual = project(m, &jc)?;
    let exact = torus_is_product && &reassemble(&torus, &j, &residual, &jc) == m.cells();
    Ok(DecompositionResult {
        residual_indices: jc,
        residual_cells: ids(&residual),
        residual_circle_free: Some(circle_projection_set(&residual).is_empty()),
        circle_indices: j,
        claimed: true,
        exact,
        torus_part,
        residual: Some(residual),
    })
}

/// Rank of `H_1` against the number of factors, and the circle factors it forces.
#[derive(Clone, Debug, Serialize)]
pub struct RankBoundReport {
    pub factors: usize,
    pub rank_h1: usize,
    /// `rank_h1 - factors`.
    pub excess: i64,
    pub circle_indices: Vec<usize>,
    /// Lower bound on the number of circle factors, when one is forced.
    pub required_circles: Option<usize>,
    pub decomposition_exact: Option<bool>,
    pub holds: bool,
    pub homology: HomologySummary,
    /// Vertex fibers per factor that fail to be circles, as evidence on failure.
    pub non_circle_fibers: BTreeMap<usize, Vec<String>>,
}

/// For a connected ramified `n`-manifold complex in a product of `n` graphs:
/// `rank H_1 >= n`, and `rank H_1 = n + k` with `k < n` forces at least
/// `n - k` circle factors along which `M` splits.
pub fn rank_bound_assert(m: &ProductSubcomplex) -> Result<RankBoundReport, ProjectionError> {
    let n = require_ramified(m)?;
    let homology = homology_of(m);
    let rank = homology.betti(1);
    let excess = rank as i64 - n as i64;
    let d = product_decomposition(m)?;
    let (required_circles, decomposition_exact) = if excess >= 0 && (excess as usize) < n {
        (Some(n - excess as usize), Some(d.exact))
    } else {
        (None, None)
    };
    let holds = excess >= 0 && required_circles.is_none_or(|r| d.circle_indices.len() >= r && d.exact);
    let mut non_circle_fibers = BTreeMap::new();
    if !holds {
        for j in 0..n {
            let t = FiberTable::new(m, &[j])?;
            let bad: Vec<String> = t
                .fibers
                .iter()
                .filter(|(c, f)| c.dim() == 0 && !is_circle(*f))
                .map(|(c, _)| t.base.parent().cell_label(c))
                .collect();
            non_circle_fibers.insert(j, bad);
        }
    }
    Ok(RankBoundReport {
        factors: n,
        rank_h1: rank,
        excess,
        circle_indices: d.circle_indices,
        required_circles,
        decomposition_exact,
        holds,
        homology,
        non_circle_fibers,
    })
}

/// `M` as `sigma_0 x (tau_0 + tau_1) + ... + sigma_m x (tau_m + tau_0)` with
/// distinct meridians `sigma_j` of the first factor and `tau_j` of the second.
#[derive(Clone, Debug, Serialize)]
pub struct ThetaDecomposition {
    pub sigma: Vec<String>,
    pub tau: Vec<String>,
    /// The cycle of circles `tau_j + tau_{j+1}`.
    pub circles: Vec<(String, String)>,
    pub genus: usize,
    pub rank_h1: usize,
    /// The squares `sigma_j x tau_j`, `sigma_j x tau_{j+1}` are exactly the 2-cells of `M`.
    pub reassembles: bool,
}

impl ThetaDecomposition {
    pub fn genus_consistent(&self) -> bool {
        2 * self.genus == self.rank_h1
    }
}

fn is_theta(g: &crate::complex::Graph1Complex) -> bool {
    g.vertex_count() == 2 && g.edge_count() >= 2
}

/// Walks the meridian sequence starting from the first meridian of the
/// first factor met by `M`. Fails when a fiber over a meridian is not a circle.
pub fn theta_decompose(m: &ProductSubcomplex) -> Result<ThetaDecomposition, ProjectionError> {
    let p = m.parent();
    if p.factor_count() != 2 || !p.factors().iter().all(is_theta) {
        return Err(ProjectionError::NotThetaProduct(format!("{} factors", p.factor_count())));
    }
    let report = pseudo_manifold_check(m, 2, true);
    if !report.verdict {
        return Err(ProjectionError::Precondition("not a simple pseudo 2-manifold complex".into(), report));
    }
    // meridian -> meridians it pairs with in the other factor
    let mut over_sigma: BTreeMap<u32, BTreeSet<u32>> = BTreeMap::new();
    let mut over_tau: BTreeMap<u32, BTreeSet<u32>> = BTreeMap::new();
    let squares: BTreeSet<(u32, u32)> = m
        .cells_of_dim(2)
        .map(|c| match (c.0[0], c.0[1]) {
            (Comp::Edge(s), Comp::Edge(t)) => (s, t),
            _ => unreachable!("2-cells of a 2-factor product are edge pairs"),
        })
        .collect();
    for &(s, t) in &squares {
        over_sigma.entry(s).or_default().insert(t);
        over_tau.entry(t).or_default().insert(s);
    }
    let edge = |f: usize, e: u32| p.factor(f).edge(e as usize).id.clone();
    let pair = |map: &BTreeMap<u32, BTreeSet<u32>>, key: u32, f: usize| -> Result<(u32, u32), ProjectionError> {
        let set = &map[&key];
        if set.len() != 2 {
            return Err(ProjectionError::FiberNotCircle {
                cell: format!("{f}:{}", edge(f, key)),
                detail: format!("{} meridians", set.len()),
            });
        }
        let mut it = set.iter().copied();
        Ok((it.next().expect("two"), it.next().expect("two")))
    };
    let s0 = *over_sigma.keys().next().ok_or_else(|| ProjectionError::NotThetaProduct("no 2-cells".into()))?;
    let (t0, t1) = pair(&over_sigma, s0, 0)?;
    let mut sigma = vec![s0];
    let mut tau = vec![t0, t1];
    loop {
        let t_next = *tau.last().expect("nonempty");
        if t_next == tau[0] {
            tau.pop();
            break;
        }
        if tau[..tau.len() - 1].contains(&t_next) {
            return Err(ProjectionError::FiberNotCircle {
                cell: format!("1:{}", edge(1, t_next)),
                detail: "meridian sequence revisits a second-factor meridian".into(),
            });
        }
        let s_prev = *sigma.last().expect("nonempty");
        let (a, b) = pair(&over_tau, t_next, 1)?;
        let s_next = match (a == s_prev, b == s_prev) {
            (true, _) => b,
            (_, true) => a,
            _ => unreachable!("s_prev x t_next is a square of M"),
        };
        if sigma.contains(&s_next) {
            return Err(ProjectionError::FiberNotCircle {
                cell: format!("0:{}", edge(0, s_next)),
                detail: "meridian sequence revisits a first-factor meridian".into(),
            });
        }
        let (c, d) = pair(&over_sigma, s_next, 0)?;
        let t_after = match (c == t_next, d == t_next) {
            (true, _) => d,
            (_, true) => c,
            _ => unreachable!("s_next x t_next is a square of M"),
        };
        sigma.push(s_next);
        tau.push(t_after);
    }
    let k = sigma.len();
    let rebuilt: BTreeSet<(u32, u32)> = (0..k).flat_map(|j| [(sigma[j], tau[j]), (sigma[j], tau[(j + 1) % k])]).collect();
    let rank_h1 = homology_of(m).betti(1);
    Ok(ThetaDecomposition {
        circles: (0..k).map(|j| (edge(1, tau[j]), edge(1, tau[(j + 1) % k]))).collect(),
        sigma: sigma.iter().map(|&s| edge(0, s)).collect(),
        tau: tau.iter().map(|&t| edge(1, t)).collect(),
        genus: k - 1,
        rank_h1,
        reassembles: rebuilt == squares,
    })
}

/// All nonempty proper subsets of `0..n`.
fn proper_subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (1..(1u32 << n) - 1).map(move |mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
}

fn witness(reason: String) -> VerifierReport {
    VerifierReport::fail("", reason)
}

fn all_proper<F: FnMut(&[usize], &FiberTable) -> VerifierReport>(m: &ProductSubcomplex, mut f: F) -> VerifierReport {
    let n = m.parent().factor_count();
    proper_subsets(n).fold(VerifierReport::pass(), |acc, j| {
        let t = FiberTable::new(m, &j).expect("proper index set");
        acc.and(f(&j, &t))
    })
}

/// `M` is the union of the products `P_J(tau) x tau` over top cells `tau`, for every `J`.
pub fn check_reconstruction(m: &ProductSubcomplex) -> VerifierReport {
    all_proper(m, |j, t| {
        let top = t.base.dimension().unwrap_or(0);
        let mut rebuilt = BTreeSet::new();
        for (tau, fiber) in t.fibers.iter().filter(|(c, _)| c.dim() == top) {
            let closed: BTreeSet<CellTuple> = t.base.parent().faces(tau).expect("valid").into_iter().chain([tau.clone()]).collect();
            for s in fiber.cells() {
                rebuilt.extend(closed.iter().map(|c| interleave(s, &t.j, c, &t.jc)));
            }
        }
        if &rebuilt == m.cells() {
            VerifierReport::pass()
        } else {
            witness(format!("J = {j:?}: product of fibers over top cells differs from M"))
        }
    })
}

/// `P_J(tau) >= P_J(tau')` whenever `tau` is a face of `tau'`.
pub fn check_monotonicity(m: &ProductSubcomplex) -> VerifierReport {
    all_proper(m, |j, t| {
        let mut report = VerifierReport::pass();
        for (tau, fiber) in &t.fibers {
            for f in t.base.parent().faces(tau).expect("valid") {
                if !fiber.cells().is_subset(t.fibers[&f].cells()) {
                    report = report.and(witness(format!(
                        "J = {j:?}: fiber over {} is not contained in the fiber over its face {}",
                        t.base.parent().cell_label(tau),
                        t.base.parent().cell_label(&f)
                    )));
                }
            }
        }
        report
    })
}

/// For every `k`, the projection onto `J` is the union of the fibers over `k`-cells.
pub fn check_projection_unions(m: &ProductSubcomplex) -> VerifierReport {
    all_proper(m, |j, t| {
        let image = project(m, j).expect("valid");
        let top = t.base.dimension().unwrap_or(0);
        let mut report = VerifierReport::pass();
        for k in 0..=top {
            let union: BTreeSet<CellTuple> = t
                .fibers
                .iter()
                .filter(|(c, _)| c.dim() == k)
                .flat_map(|(_, f)| f.cells().iter().cloned())
                .collect();
            if &union != image.cells() {
                report = report.and(witness(format!("J = {j:?}: union of fibers over {k}-cells differs from the projection")));
            }
        }
        report
    })
}

/// Fibers over vertices are all circles exactly when the factor projection is a circle.
pub fn check_circle_biconditional(m: &ProductSubcomplex) -> VerifierReport {
    (0..m.parent().factor_count()).fold(VerifierReport::pass(), |acc, j| match fibers_all_circles(m, j) {
        Ok(_) => acc,
        Err(e) => acc.and(witness(e.to_string())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cauty_even, involution_surface, m0_surface, product_of, torus_product};

    fn torus() -> ProductSubcomplex {
        torus_product(&[3, 4]).unwrap()
    }

    #[test]
    fn projections_of_surfaces() {
        let m = m0_surface(2).unwrap();
        let p = project(&m, &[0]).unwrap();
        assert_eq!(p.counts_by_dim(), vec![2, 3]);
        assert!(!is_circle(&p));
        assert!(is_circle(&project(&torus(), &[1]).unwrap()));
        assert!(matches!(project(&m, &[]), Err(ProjectionError::EmptyIndexSet)));
        assert!(matches!(project(&m, &[2]), Err(ProjectionError::IndexOutOfRange { .. })));
    }

    #[test]
    fn fibers_of_the_genus_two_surface() {
        let m = m0_surface(2).unwrap();
        let p = m.parent().clone();
        // fiber over the meridian m0 of the first factor: m0 + m1
        let tau = CellTuple(vec![p.cell(&["m0", "p0"]).unwrap().0[0]]);
        let f = fiber_complex(&m, &[1], &tau).unwrap();
        assert!(is_circle(&f));
        assert_eq!(f.cells_of_dim(1).count(), 2);
        // fiber over a pole is the whole theta-curve
        let pole = CellTuple(vec![Comp::Vertex(0)]);
        let f = fiber_complex(&m, &[0], &pole).unwrap();
        assert_eq!(f.counts_by_dim(), vec![2, 3]);
        assert!(!fibers_all_circles(&m, 0).unwrap());
        assert!(fibers_all_circles(&torus(), 0).unwrap());
    }

    #[test]
    fn decompositions() {
        let d = product_decomposition(&torus()).unwrap();
        assert_eq!(d.circle_indices, vec![0, 1]);
        assert!(d.exact);
        let m = m0_surface(2).unwrap();
        let s = product_of(&torus_product(&[3]).unwrap(), &m);
        let d = product_decomposition(&s).unwrap();
        assert_eq!(d.circle_indices, vec![0]);
        assert!(d.exact);
        assert_eq!(d.residual.unwrap().cells(), m.cells());
        assert_eq!(d.residual_circle_free, Some(true));
        let d = product_decomposition(&m).unwrap();
        assert!(d.circle_indices.is_empty() && !d.claimed);
    }

    #[test]
    fn rank_bounds() {
        let r = rank_bound_assert(&torus()).unwrap();
        assert!(r.holds);
        assert_eq!((r.rank_h1, r.required_circles), (2, Some(2)));
        let r = rank_bound_assert(&m0_surface(2).unwrap()).unwrap();
        assert!(r.holds && r.required_circles.is_none());
        let r = rank_bound_assert(&torus_product(&[2, 3, 2]).unwrap()).unwrap();
        assert!(r.holds && r.decomposition_exact == Some(true));
    }

    #[test]
    fn theta_decompositions() {
        let d = theta_decompose(&m0_surface(3).unwrap()).unwrap();
        assert_eq!(d.sigma.len(), 4);
        assert!(d.reassembles && d.genus_consistent());
        let t = theta_decompose(&m0_surface(1).unwrap()).unwrap();
        assert_eq!((t.sigma.len(), t.genus), (2, 1));
        assert!(theta_decompose(&involution_surface(4).unwrap()).unwrap().reassembles);
        assert!(matches!(
            theta_decompose(&cauty_even(3).unwrap()),
            Err(ProjectionError::NotThetaProduct(_))
        ));
        let single = ProductSubcomplex::closure(
            m0_surface(2).unwrap().parent().clone(),
            [m0_surface(2).unwrap().parent().cell(&["m0", "m0"]).unwrap()],
        )
        .unwrap();
        assert!(matches!(theta_decompose(&single), Err(ProjectionError::Precondition(..))));
    }

    #[test]
    fn fiber_properties_on_small_members() {
        for m in [m0_surface(2).unwrap(), torus(), involution_surface(3).unwrap(), cauty_even(3).unwrap()] {
            assert!(check_reconstruction(&m).verdict);
            assert!(check_monotonicity(&m).verdict);
            assert!(check_projection_unions(&m).verdict);
            assert!(check_circle_biconditional(&m).verdict);
        }
    }
}
