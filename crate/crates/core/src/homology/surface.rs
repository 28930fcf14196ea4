use serde::{Deserialize, Serialize};

use super::{homology_of, HomologyError};
use crate::complex::{HasIncidence, Regular2Complex};
use crate::verify::{closed_surface_check, is_connected, pseudo_manifold_check};

/// Classification data of a 2-complex viewed as a candidate closed surface.
///
/// `orientable` and `genus` are only filled for closed surfaces. Genus is
/// `1 - chi/2` in the orientable case and `2 - chi` otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceReport {
    pub is_closed_surface: bool,
    pub connected: bool,
    pub orientable: Option<bool>,
    pub genus: Option<i64>,
    pub chi: i64,
    pub rank_h1: usize,
    pub torsion_h1: Vec<i64>,
    pub betti: Vec<usize>,
}

/// `true` iff `H_2 = Z` for a connected pseudo 2-manifold complex.
pub fn orientability<T: HasIncidence + ?Sized>(k: &T) -> Result<bool, HomologyError> {
    let report = pseudo_manifold_check(k, 2, false);
    if !report.verdict {
        return Err(HomologyError::NotPseudoManifold(report));
    }
    if !is_connected(k) {
        return Err(HomologyError::NotPseudoManifold(crate::verify::VerifierReport::fail(
            "",
            "complex is not connected",
        )));
    }
    let b2 = homology_of(k).betti(2);
    debug_assert!(b2 <= 1, "a connected pseudo 2-manifold has b2 <= 1");
    Ok(b2 == 1)
}

pub fn surface_report(k: &Regular2Complex) -> SurfaceReport {
    let h = homology_of(k);
    let is_closed_surface = closed_surface_check(k).verdict;
    let connected = is_connected(k);
    let chi = h.euler;
    let (orientable, genus) = if is_closed_surface {
        let o = orientability(k).expect("closed surfaces are connected pseudo 2-manifolds");
        let g = if o { 1 - chi / 2 } else { 2 - chi };
        (Some(o), Some(g))
    } else {
        (None, None)
    };
    SurfaceReport {
        is_closed_surface,
        connected,
        orientable,
        genus,
        chi,
        rank_h1: h.betti(1),
        torsion_h1: h.torsion(1).to_vec(),
        betti: h.betti,
    }
}
