//! Generators for the explicit complexes: theta-curves and wheels, surfaces
//! in products of graphs, contractible fixtures and torus-skeleton unions.

mod fixtures;
mod graphs;
mod surfaces;
mod torus;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::ComplexError;
use crate::document::AnyComplex;
use crate::homology::homology_of;

pub use fixtures::{bing_house, cone_over_graph, dunce_hat, grid_square, triangulated_disc};
pub use graphs::{cycle, path, theta, wheel, wheel_tilde};
pub use surfaces::{
    cauty_even, cauty_even_plus, cauty_odd, diagonal_disjointness_check, example_5b4, involution_surface, ladder_ring,
    m0_surface, product_of, swap_invariance_check, torus_product,
};
pub use torus::{triple_torus_q, ProfileCheck, TripleTorus};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("parameter {name} = {value}: {reason}")]
    InvalidParam { name: String, value: i64, reason: String },
    #[error("unknown construction `{0}`")]
    UnknownName(String),
    #[error("the check needs two copies of one factor")]
    FactorMismatch,
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

impl ConstructionError {
    pub fn param(name: &str, value: usize, reason: &str) -> Self {
        Self::InvalidParam {
            name: name.into(),
            value: value as i64,
            reason: reason.into(),
        }
    }
}

/// Invariants a construction is known to have; absent fields are unchecked.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed_surface: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientable: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank_h1: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torsion_h1: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub betti: Option<Vec<usize>>,
}

fn trimmed(b: &[usize]) -> &[usize] {
    let end = b.iter().rposition(|&x| x != 0).map_or(0, |i| i + 1);
    &b[..end]
}

impl Expected {
    fn surface(chi: i64, orientable: bool) -> Self {
        let (genus, rank) = if orientable { (1 - chi / 2, 2 - chi) } else { (2 - chi, 1 - chi) };
        Self {
            chi: Some(chi),
            closed_surface: Some(true),
            orientable: Some(orientable),
            genus: Some(genus),
            rank_h1: Some(rank as usize),
            torsion_h1: Some(if orientable { vec![] } else { vec![2] }),
            betti: Some(vec![1, rank as usize, usize::from(orientable)]),
        }
    }

    fn homology(betti: Vec<usize>) -> Self {
        let chi = betti.iter().enumerate().map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
        Self {
            chi: Some(chi),
            rank_h1: Some(betti.get(1).copied().unwrap_or(0)),
            betti: Some(betti),
            ..Self::default()
        }
    }

    fn not_surface(mut self) -> Self {
        self.closed_surface = Some(false);
        self
    }

    /// Mismatches between the expectation and the computed invariants.
    /// Betti vectors are compared without trailing zeros.
    pub fn check(&self, complex: &AnyComplex) -> Vec<String> {
        let h = homology_of(complex);
        let mut out = Vec::new();
        let mut cmp = |field: &str, want: String, got: String| {
            if want != got {
                out.push(format!("{field}: expected {want}, computed {got}"));
            }
        };
        if let Some(chi) = self.chi {
            cmp("chi", chi.to_string(), h.euler.to_string());
        }
        if let Some(r) = self.rank_h1 {
            cmp("rank_h1", r.to_string(), h.betti(1).to_string());
        }
        if let Some(t) = &self.torsion_h1 {
            cmp("torsion_h1", format!("{t:?}"), format!("{:?}", h.torsion(1)));
        }
        if let Some(b) = &self.betti {
            cmp("betti", format!("{:?}", trimmed(b)), format!("{:?}", trimmed(&h.betti)));
        }
        if self.closed_surface.is_some() || self.orientable.is_some() || self.genus.is_some() {
            match complex.surface_report() {
                Some(s) => {
                    if let Some(c) = self.closed_surface {
                        cmp("closed_surface", c.to_string(), s.is_closed_surface.to_string());
                    }
                    if let Some(o) = self.orientable {
                        cmp("orientable", format!("{:?}", Some(o)), format!("{:?}", s.orientable));
                    }
                    if let Some(g) = self.genus {
                        cmp("genus", format!("{:?}", Some(g)), format!("{:?}", s.genus));
                    }
                }
                None => out.push(format!("surface fields: a {} has no 2-complex model", complex.kind())),
            }
        }
        out
    }
}

/// A registered complex together with its parameters and known invariants.
#[derive(Clone, Debug)]
pub struct NamedConstruction {
    pub name: String,
    pub params: BTreeMap<String, i64>,
    pub complex: AnyComplex,
    pub expected: Option<Expected>,
}

impl NamedConstruction {
    /// Mismatches against `expected`; empty when nothing is expected.
    pub fn check(&self) -> Vec<String> {
        self.expected.as_ref().map_or_else(Vec::new, |e| e.check(&self.complex))
    }
}

/// Registered construction names with their parameters and defaults.
pub const REGISTRY: &[(&str, &[(&str, i64)])] = &[
    ("theta", &[("n", 3)]),
    ("cycle", &[("n", 3)]),
    ("path", &[("n", 2)]),
    ("wheel", &[("n", 3)]),
    ("wheel-tilde", &[("n", 3)]),
    ("m0-surface", &[("m", 2)]),
    ("involution-surface", &[("m", 2)]),
    ("torus-product", &[("factors", 2), ("len", 3)]),
    ("circle-times-m0", &[("m", 2)]),
    ("torus-times-m0", &[("m", 2)]),
    ("cauty-odd", &[("k", 2), ("control", 0)]),
    ("cauty-even", &[("n", 3)]),
    ("cauty-even-plus", &[("n", 4)]),
    ("example-5b4", &[("n", 4)]),
    ("cone-over-theta", &[("n", 3)]),
    ("triangulated-disc", &[("n", 6)]),
    ("grid-square", &[("k", 3)]),
    ("dunce-hat", &[]),
    ("bing-house", &[]),
    ("triple-torus-q", &[("n", 2)]),
];

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Build a registered construction; missing parameters take their defaults.
pub fn registry(name: &str, params: &BTreeMap<String, i64>) -> Result<NamedConstruction, ConstructionError> {
    let (_, defaults) = REGISTRY
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| ConstructionError::UnknownName(name.into()))?;
    if let Some(extra) = params.keys().find(|k| !defaults.iter().any(|(d, _)| d == k)) {
        return Err(ConstructionError::InvalidParam {
            name: extra.clone(),
            value: params[extra],
            reason: format!("not a parameter of {name}"),
        });
    }
    let mut resolved = BTreeMap::new();
    for &(key, default) in defaults.iter() {
        let v = params.get(key).copied().unwrap_or(default);
        if v < 0 {
            return Err(ConstructionError::InvalidParam {
                name: key.into(),
                value: v,
                reason: "must be non-negative".into(),
            });
        }
        resolved.insert(key.to_string(), v);
    }
    let p = |k: &str| resolved[k] as usize;
    let (complex, expected) = match name {
        "theta" => (AnyComplex::Graph(theta(p("n"))?), Expected::homology(vec![1, p("n") - 1])),
        "cycle" => (AnyComplex::Graph(cycle(p("n"))?), Expected::homology(vec![1, 1])),
        "path" => (AnyComplex::Graph(path(p("n"))), Expected::homology(vec![1])),
        "wheel" => (AnyComplex::Graph(wheel(p("n"))?), Expected::homology(vec![1, p("n")])),
        "wheel-tilde" => (AnyComplex::Graph(wheel_tilde(p("n"))?), Expected::homology(vec![1, p("n") + 1])),
        "m0-surface" => (AnyComplex::Subcomplex(m0_surface(p("m"))?), Expected::surface(2 - 2 * p("m") as i64, true)),
        "involution-surface" => (
            AnyComplex::Subcomplex(involution_surface(p("m"))?),
            Expected::surface(2 - 2 * p("m") as i64, true),
        ),
        "torus-product" => {
            let n = p("factors");
            if n == 0 {
                return Err(ConstructionError::param("factors", n, "must be at least 1"));
            }
            let t = torus_product(&vec![p("len"); n])?;
            let betti = (0..=n).map(|i| binomial(n, i)).collect();
            let mut e = Expected::homology(betti);
            if n == 2 {
                e = Expected::surface(0, true);
            }
            (AnyComplex::Subcomplex(t), e)
        }
        "circle-times-m0" | "torus-times-m0" => {
            let circles = if name == "circle-times-m0" { 1 } else { 2 };
            let m = p("m");
            let t = torus_product(&vec![3; circles])?;
            let s = product_of(&t, &m0_surface(m)?);
            // Kunneth with a surface of Betti profile (1, 2m, 1)
            let surf = [1, 2 * m, 1];
            let betti = (0..=circles + 2)
                .map(|k| (0..=circles.min(k)).filter(|&i| k - i <= 2).map(|i| binomial(circles, i) * surf[k - i]).sum())
                .collect();
            (AnyComplex::Subcomplex(s), Expected::homology(betti))
        }
        "cauty-odd" => {
            let (k, control) = (p("k"), p("control"));
            if control > 1 {
                return Err(ConstructionError::param("control", control, "must be 0 or 1"));
            }
            let chi = -2 * k as i64;
            (AnyComplex::Subcomplex(cauty_odd(k, control == 1)?), Expected::surface(chi, control == 1))
        }
        "cauty-even" => (
            AnyComplex::Subcomplex(cauty_even(p("n"))?),
            Expected::surface(1 - 2 * p("n") as i64, false),
        ),
        "cauty-even-plus" => (
            AnyComplex::Subcomplex(cauty_even_plus(p("n"))?),
            Expected::surface(-2 * (p("n") as i64 - 1) - 1, false),
        ),
        "example-5b4" => {
            let n = p("n");
            let e = Expected {
                chi: Some(-2 * n as i64),
                closed_surface: Some(true),
                ..Expected::default()
            };
            (AnyComplex::Subcomplex(example_5b4(n)?), e)
        }
        "cone-over-theta" => (AnyComplex::Regular2(cone_over_graph(&theta(p("n"))?)), Expected::homology(vec![1]).not_surface()),
        "triangulated-disc" => {
            if p("n") < 3 {
                return Err(ConstructionError::param("n", p("n"), "must be at least 3"));
            }
            (AnyComplex::Regular2(triangulated_disc(p("n"))), Expected::homology(vec![1]).not_surface())
        }
        "grid-square" => {
            if p("k") < 1 {
                return Err(ConstructionError::param("k", p("k"), "must be at least 1"));
            }
            (AnyComplex::Regular2(grid_square(p("k"))), Expected::homology(vec![1]).not_surface())
        }
        "dunce-hat" => (AnyComplex::Regular2(dunce_hat()), Expected::homology(vec![1]).not_surface()),
        "bing-house" => (AnyComplex::Regular2(bing_house()), Expected::homology(vec![1]).not_surface()),
        "triple-torus-q" => {
            let n = p("n");
            let q = triple_torus_q(n)?.q;
            // i-subsets of {1..n+1} avoiding at least one of 1, 2, 3
            let betti = (0..=n).map(|i| binomial(n + 1, i) - if i >= 3 { binomial(n - 2, i - 3) } else { 0 }).collect();
            (AnyComplex::TorusSkeleton(q), Expected::homology(betti))
        }
        _ => unreachable!("registry table and dispatch agree"),
    };
    Ok(NamedConstruction {
        name: name.into(),
        params: resolved,
        complex,
        expected: Some(expected),
    })
}

fn entry(name: &str, params: &[(&str, i64)]) -> NamedConstruction {
    let params = params.iter().map(|&(k, v)| (k.to_string(), v)).collect();
    registry(name, &params).expect("gallery entries are valid")
}

/// Every named construction at small parameters.
pub fn gallery() -> Vec<NamedConstruction> {
    let mut g = Vec::new();
    for n in [2, 3, 5] {
        g.push(entry("theta", &[("n", n)]));
    }
    g.push(entry("cycle", &[("n", 4)]));
    g.push(entry("path", &[("n", 3)]));
    g.push(entry("wheel", &[("n", 3)]));
    g.push(entry("wheel-tilde", &[("n", 3)]));
    for m in 1..=3 {
        g.push(entry("m0-surface", &[("m", m)]));
        g.push(entry("involution-surface", &[("m", m)]));
    }
    g.push(entry("torus-product", &[("factors", 2), ("len", 3)]));
    g.push(entry("torus-product", &[("factors", 3), ("len", 2)]));
    g.push(entry("circle-times-m0", &[("m", 2)]));
    g.push(entry("torus-times-m0", &[("m", 1)]));
    for k in [2, 3] {
        g.push(entry("cauty-odd", &[("k", k)]));
        g.push(entry("cauty-odd", &[("k", k), ("control", 1)]));
    }
    g.push(entry("cauty-even", &[("n", 3)]));
    g.push(entry("cauty-even-plus", &[("n", 4)]));
    g.push(entry("example-5b4", &[("n", 4)]));
    g.push(entry("cone-over-theta", &[("n", 3)]));
    g.push(entry("triangulated-disc", &[("n", 5)]));
    g.push(entry("grid-square", &[("k", 2)]));
    g.push(entry("dunce-hat", &[]));
    g.push(entry("bing-house", &[]));
    g.push(entry("triple-torus-q", &[("n", 2)]));
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gallery_matches_expectations() {
        for c in gallery() {
            let bad = c.check();
            assert!(bad.is_empty(), "{} {:?}: {bad:?}", c.name, c.params);
        }
    }

    #[test]
    fn registry_rejects_bad_input() {
        let none = BTreeMap::new();
        assert!(matches!(registry("nope", &none), Err(ConstructionError::UnknownName(_))));
        let bad: BTreeMap<String, i64> = [("q".to_string(), 1)].into();
        assert!(registry("theta", &bad).is_err());
        let neg: BTreeMap<String, i64> = [("n".to_string(), -1)].into();
        assert!(registry("theta", &neg).is_err());
        assert_eq!(registry("m0-surface", &none).unwrap().params["m"], 2);
    }

    #[test]
    fn binomials_agree() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(2, 3), 0);
    }
}
