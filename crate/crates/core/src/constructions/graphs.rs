use crate::complex::Graph1Complex;

use super::ConstructionError;

fn build(vertices: Vec<String>, edges: Vec<(String, String, String)>) -> Graph1Complex {
    Graph1Complex::new(&vertices, &edges).expect("generated graphs are valid")
}

/// Two poles `p0`, `p1` joined by meridians `m0..m{n-1}`, all directed `p0 -> p1`.
pub fn theta(n: usize) -> Result<Graph1Complex, ConstructionError> {
    if n == 0 {
        return Err(ConstructionError::param("n", n, "theta-curve needs at least one meridian"));
    }
    Ok(build(
        vec!["p0".into(), "p1".into()],
        (0..n).map(|i| (format!("m{i}"), "p0".into(), "p1".into())).collect(),
    ))
}

/// Cycle `v0 -> v1 -> ... -> v{n-1} -> v0` with edges `e{i}: v{i} -> v{i+1}`.
pub fn cycle(n: usize) -> Result<Graph1Complex, ConstructionError> {
    if n < 2 {
        return Err(ConstructionError::param("n", n, "a regular circle needs at least 2 edges"));
    }
    Ok(build(
        (0..n).map(|i| format!("v{i}")).collect(),
        (0..n)
            .map(|i| (format!("e{i}"), format!("v{i}"), format!("v{}", (i + 1) % n)))
            .collect(),
    ))
}

/// Path `v0 -> ... -> v{n}` with `n` edges.
pub fn path(n: usize) -> Graph1Complex {
    build(
        (0..=n).map(|i| format!("v{i}")).collect(),
        (0..n).map(|i| (format!("e{i}"), format!("v{i}"), format!("v{}", i + 1))).collect(),
    )
}

/// Hub `o`, rim `v0..v{n-1}`, spokes `s{i}: o -> v{i}`, rim edges `r{i}: v{i} -> v{i+1}`.
pub fn wheel(n: usize) -> Result<Graph1Complex, ConstructionError> {
    if n < 3 {
        return Err(ConstructionError::param("n", n, "a wheel needs at least 3 spokes"));
    }
    Ok(build(wheel_vertices(n), wheel_edges(n)))
}

fn wheel_vertices(n: usize) -> Vec<String> {
    std::iter::once("o".to_string())
        .chain((0..n).map(|i| format!("v{i}")))
        .collect()
}

fn wheel_edges(n: usize) -> Vec<(String, String, String)> {
    let spokes = (0..n).map(|i| (format!("s{i}"), "o".to_string(), format!("v{i}")));
    let rim = (0..n).map(|i| (format!("r{i}"), format!("v{i}"), format!("v{}", (i + 1) % n)));
    spokes.chain(rim).collect()
}

/// The wheel plus an edge `x: v1 -> v0`, so that `r0 + x` is a bigon circle
/// meeting the wheel in the rim edge `r0`.
pub fn wheel_tilde(n: usize) -> Result<Graph1Complex, ConstructionError> {
    if n < 3 {
        return Err(ConstructionError::param("n", n, "a wheel needs at least 3 spokes"));
    }
    let mut edges = wheel_edges(n);
    edges.push(("x".into(), "v1".into(), "v0".into()));
    Ok(build(wheel_vertices(n), edges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::homology_of;

    fn b1(g: &Graph1Complex) -> usize {
        homology_of(g).betti(1)
    }

    #[test]
    fn graph_betti_numbers() {
        assert_eq!(b1(&theta(2).unwrap()), 1);
        assert_eq!(b1(&theta(3).unwrap()), 2);
        assert_eq!(b1(&theta(5).unwrap()), 4);
        let w3 = wheel(3).unwrap();
        assert_eq!((w3.vertex_count(), w3.edge_count()), (4, 6));
        assert_eq!(b1(&w3), 3);
        assert_eq!(b1(&wheel(5).unwrap()), 5);
        assert_eq!(b1(&wheel_tilde(3).unwrap()), 4);
        assert!(theta(0).is_err());
        assert!(wheel(2).is_err());
        assert_eq!(b1(&path(3)), 0);
    }
}
