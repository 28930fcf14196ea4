use std::collections::{BTreeMap, BTreeSet};

use crate::complex::{Direction, FaceSpec, Graph1Complex, Regular2Complex};

use Direction::{Forward as F, Reverse as R};

fn fresh(g: &Graph1Complex, base: &str) -> String {
    let taken = |s: &str| g.vertex_index(s).is_some() || g.edge_index(s).is_some();
    std::iter::once(base.to_string())
        .chain((1..).map(|i| format!("{base}{i}")))
        .find(|s| !taken(s))
        .expect("unbounded id supply")
}

/// Apex `apex`, an edge `c.v: apex -> v` per vertex and a triangle `t.e` per edge.
pub fn cone_over_graph(g: &Graph1Complex) -> Regular2Complex {
    let apex = fresh(g, "apex");
    let mut vertices = g.vertices().to_vec();
    vertices.push(apex.clone());
    let mut edges = g.edge_triples();
    edges.extend(g.vertices().iter().map(|v| (format!("c.{v}"), apex.clone(), v.clone())));
    let faces: Vec<FaceSpec<String>> = g
        .edge_triples()
        .into_iter()
        .map(|(e, t, h)| (format!("t.{e}"), vec![(format!("c.{t}"), F), (e, F), (format!("c.{h}"), R)]))
        .collect();
    Regular2Complex::from_owned(vertices, edges, faces).expect("cones over regular graphs are regular")
}

/// Fan of `n` triangles around a centre `c`.
pub fn triangulated_disc(n: usize) -> Regular2Complex {
    assert!(n >= 3, "a fan disc needs at least 3 triangles");
    let mut vertices = vec!["c".to_string()];
    vertices.extend((0..n).map(|i| format!("u{i}")));
    let mut edges: Vec<(String, String, String)> = (0..n).map(|i| (format!("s{i}"), "c".into(), format!("u{i}"))).collect();
    edges.extend((0..n).map(|i| (format!("e{i}"), format!("u{i}"), format!("u{}", (i + 1) % n))));
    let faces = (0..n)
        .map(|i| {
            (
                format!("f{i}"),
                vec![(format!("s{i}"), F), (format!("e{i}"), F), (format!("s{}", (i + 1) % n), R)],
            )
        })
        .collect();
    Regular2Complex::from_owned(vertices, edges, faces).expect("fan disc is regular")
}

/// The `k x k` grid square with every cell split along its diagonal.
pub fn grid_square(k: usize) -> Regular2Complex {
    let v = |r: usize, c: usize| format!("g{r}_{c}");
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let mut faces: Vec<FaceSpec<String>> = Vec::new();
    for r in 0..=k {
        for c in 0..=k {
            vertices.push(v(r, c));
            if c < k {
                edges.push((format!("h{r}_{c}"), v(r, c), v(r, c + 1)));
            }
            if r < k {
                edges.push((format!("v{r}_{c}"), v(r, c), v(r + 1, c)));
            }
            if r < k && c < k {
                edges.push((format!("d{r}_{c}"), v(r, c), v(r + 1, c + 1)));
            }
        }
    }
    for r in 0..k {
        for c in 0..k {
            faces.push((
                format!("lo{r}_{c}"),
                vec![(format!("h{r}_{c}"), F), (format!("v{r}_{}", c + 1), F), (format!("d{r}_{c}"), R)],
            ));
            faces.push((
                format!("up{r}_{c}"),
                vec![(format!("d{r}_{c}"), F), (format!("h{}_{c}", r + 1), R), (format!("v{r}_{c}"), R)],
            ));
        }
    }
    Regular2Complex::from_owned(vertices, edges, faces).expect("grid square is regular")
}

/// A regular cellulation of the dunce hat.
///
/// A 9-gon with boundary word `a a a^-1`, `a = e1 e2 e3`, is subdivided by an
/// inner 9-cycle `q0..q8` (quadrilaterals to the rim) and a centre `c`
/// (triangles to the inner cycle). 13 vertices, 30 edges, 18 faces; every
/// edge `e1`, `e2`, `e3` lies on three faces.
pub fn dunce_hat() -> Regular2Complex {
    let rim = ["p0", "p1", "p2", "p0", "p1", "p2", "p0", "p2", "p1"];
    let rim_edges = [
        ("e1", F),
        ("e2", F),
        ("e3", F),
        ("e1", F),
        ("e2", F),
        ("e3", F),
        ("e3", R),
        ("e2", R),
        ("e1", R),
    ];
    let mut vertices: Vec<String> = ["p0", "p1", "p2"].iter().map(|s| s.to_string()).collect();
    vertices.extend((0..9).map(|i| format!("q{i}")));
    vertices.push("c".into());
    let mut edges: Vec<(String, String, String)> = vec![
        ("e1".into(), "p0".into(), "p1".into()),
        ("e2".into(), "p1".into(), "p2".into()),
        ("e3".into(), "p2".into(), "p0".into()),
    ];
    for (i, b) in rim.iter().enumerate() {
        edges.push((format!("r{i}"), b.to_string(), format!("q{i}")));
        edges.push((format!("g{i}"), format!("q{i}"), format!("q{}", (i + 1) % 9)));
        edges.push((format!("k{i}"), format!("q{i}"), "c".into()));
    }
    let mut faces: Vec<FaceSpec<String>> = Vec::new();
    for (i, &(e, d)) in rim_edges.iter().enumerate() {
        let j = (i + 1) % 9;
        faces.push((
            format!("quad{i}"),
            vec![(e.to_string(), d), (format!("r{j}"), F), (format!("g{i}"), R), (format!("r{i}"), R)],
        ));
        faces.push((
            format!("tri{i}"),
            vec![(format!("g{i}"), F), (format!("k{j}"), F), (format!("k{i}"), R)],
        ));
    }
    Regular2Complex::from_owned(vertices, edges, faces).expect("dunce hat cellulation is regular")
}

type Point = [i32; 3];

/// Unit squares of the integer grid, each given by its normal axis and lowest corner.
fn cubical_surface(squares: &BTreeSet<(usize, Point)>) -> Regular2Complex {
    let name = |p: Point| format!("({},{},{})", p[0], p[1], p[2]);
    let step = |p: Point, axis: usize| {
        let mut q = p;
        q[axis] += 1;
        q
    };
    let edge_id = |axis: usize, p: Point| format!("{}{}", ["x", "y", "z"][axis], name(p));
    let mut vertices = BTreeSet::new();
    let mut edges: BTreeMap<String, (String, String)> = BTreeMap::new();
    let mut faces: Vec<FaceSpec<String>> = Vec::new();
    for &(normal, p) in squares {
        let [b, c] = match normal {
            0 => [1, 2],
            1 => [0, 2],
            _ => [0, 1],
        };
        let corners = [p, step(p, b), step(step(p, b), c), step(p, c)];
        vertices.extend(corners.iter().map(|&q| name(q)));
        let walk = [(b, p, F), (c, step(p, b), F), (b, step(p, c), R), (c, p, R)];
        for &(axis, base, _) in &walk {
            edges.insert(edge_id(axis, base), (name(base), name(step(base, axis))));
        }
        faces.push((
            format!("{}{}", ["X", "Y", "Z"][normal], name(p)),
            walk.iter().map(|&(axis, base, d)| (edge_id(axis, base), d)).collect(),
        ));
    }
    let edges = edges.into_iter().map(|(id, (t, h))| (id, t, h)).collect();
    Regular2Complex::from_owned(vertices.into_iter().collect(), edges, faces).expect("grid squares form a regular complex")
}

/// A cubical Bing house with two rooms.
///
/// Box `[0,5] x [0,3] x [0,4]` with a floor at height 2. One tube rises from
/// a hole in the bottom through the lower room into the upper room, the
/// other descends from a hole in the top through the upper room into the
/// lower room; each tube is tied to a side wall by a wall in the room it
/// crosses.
pub fn bing_house() -> Regular2Complex {
    let mut sq: BTreeSet<(usize, Point)> = BTreeSet::new();
    for x in 0..5 {
        for y in 0..3 {
            if (x, y) != (1, 1) {
                sq.insert((2, [x, y, 0]));
            }
            if (x, y) != (3, 1) {
                sq.insert((2, [x, y, 4]));
            }
            if (x, y) != (1, 1) && (x, y) != (3, 1) {
                sq.insert((2, [x, y, 2]));
            }
        }
    }
    for z in 0..4 {
        for y in 0..3 {
            sq.insert((0, [0, y, z]));
            sq.insert((0, [5, y, z]));
        }
        for x in 0..5 {
            sq.insert((1, [x, 0, z]));
            sq.insert((1, [x, 3, z]));
        }
    }
    // tubes around the columns over (1,1) for z in [0,2] and (3,1) for z in [2,4]
    for (cx, zs) in [(1, 0..2), (3, 2..4)] {
        for z in zs {
            sq.insert((0, [cx, 1, z]));
            sq.insert((0, [cx + 1, 1, z]));
            sq.insert((1, [cx, 1, z]));
            sq.insert((1, [cx, 2, z]));
        }
    }
    // walls tying each tube to the nearest side of the box
    for z in 0..2 {
        sq.insert((1, [0, 1, z]));
    }
    for z in 2..4 {
        sq.insert((1, [4, 1, z]));
    }
    cubical_surface(&sq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::graphs::theta;
    use crate::homology::homology_of;
    use crate::verify::{free_edges, incidence_count, pseudo_manifold_check, ramified_manifold_check};

    #[test]
    fn cones_are_acyclic() {
        let single = Graph1Complex::new(&["a", "b"], &[("e", "a", "b")]).unwrap();
        assert_eq!(cone_over_graph(&single).face_count(), 1);
        let c = cone_over_graph(&theta(3).unwrap());
        assert_eq!(c.euler_characteristic(), 1);
        assert!(homology_of(&c).is_acyclic());
    }

    #[test]
    fn discs_are_acyclic() {
        let d = triangulated_disc(6);
        assert!(homology_of(&d).is_acyclic());
        let g = grid_square(3);
        assert_eq!((g.vertex_count(), g.edge_count(), g.face_count()), (16, 33, 18));
        assert!(homology_of(&g).is_acyclic());
    }

    #[test]
    fn dunce_hat_properties() {
        let d = dunce_hat();
        assert_eq!((d.vertex_count(), d.edge_count(), d.face_count()), (13, 30, 18));
        assert!(free_edges(&d).is_empty());
        assert_eq!(incidence_count(&d, "e1").unwrap(), 3);
        assert!(homology_of(&d).is_acyclic());
        assert!(!pseudo_manifold_check(&d, 2, false).verdict);
        assert!(ramified_manifold_check(&d, 2, true).verdict);
    }

    #[test]
    fn bing_house_properties() {
        let b = bing_house();
        assert!(free_edges(&b).is_empty());
        let h = homology_of(&b);
        assert!(h.is_acyclic(), "{h:?}");
        assert!(!pseudo_manifold_check(&b, 2, false).verdict);
        assert!(ramified_manifold_check(&b, 2, true).verdict);
    }
}
