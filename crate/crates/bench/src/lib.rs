//! Fixed workloads shared by the criterion benches, so that timings compare like with like.

use topoprod::collapse::greedy_collapse;
use topoprod::complex::{ProductSubcomplex, Regular2Complex};
use topoprod::constructions::{cauty_odd, cone_over_graph, involution_surface, m0_surface, theta};
use topoprod::homology::{torus_skeleton_homology, HomologySummary};

/// Surfaces in products of two graphs, smallest first.
pub fn surfaces() -> Vec<(String, ProductSubcomplex)> {
    let mut out = Vec::new();
    for m in [4, 8, 16] {
        out.push((format!("m0-{m}"), m0_surface(m).expect("m >= 1")));
        out.push((format!("involution-{m}"), involution_surface(m).expect("m >= 2")));
    }
    for k in [2, 4] {
        out.push((format!("odd-{k}"), cauty_odd(k, false).expect("k >= 2")));
    }
    out
}

/// Cone over theta(n): a collapsible disc-like fan with one triangle per meridian.
pub fn cone(n: usize) -> Regular2Complex {
    cone_over_graph(&theta(n).expect("n >= 1"))
}

pub fn torus_skeleton(k: usize, n: usize) -> HomologySummary {
    torus_skeleton_homology(k, n).expect("n <= k")
}

/// Number of elementary collapses greedy needs on `k`.
pub fn greedy_steps(k: &Regular2Complex) -> usize {
    greedy_collapse(k).steps.len()
}
