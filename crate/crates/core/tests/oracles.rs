//! Values recomputed by independent means and compared with the library.

use std::collections::BTreeSet;

use topoprod::collapse::{greedy_collapse, tree_embed, verify_tree_embedding, TreeEmbedding};
use topoprod::complex::{CellTuple, Comp, HasIncidence, ProductSubcomplex};
use topoprod::constructions::{
    cauty_odd, cone_over_graph, gallery, grid_square, involution_surface, m0_surface, theta, triangulated_disc,
};
use topoprod::homology::homology_of;
use topoprod::projection::theta_decompose;

const P: i64 = 1_000_003;

fn pow_mod(mut b: i64, mut e: i64) -> i64 {
    let mut r = 1;
    b %= P;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

/// Rank over the field with `P` elements by plain row reduction.
fn rank_mod_p(mut rows: Vec<Vec<i64>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][c].rem_euclid(P) != 0) else { continue };
        rows.swap(rank, pivot);
        let inv = pow_mod(rows[rank][c].rem_euclid(P), P - 2);
        for r in 0..rows.len() {
            if r != rank && rows[r][c].rem_euclid(P) != 0 {
                let f = rows[r][c].rem_euclid(P) * inv % P;
                let pivot_row = rows[rank].clone();
                for (x, p) in rows[r].iter_mut().zip(&pivot_row) {
                    *x = (*x - f * p).rem_euclid(P);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Betti numbers over a large prime field, straight from the incidence data.
fn betti_mod_p<T: HasIncidence>(k: &T) -> Vec<usize> {
    let inc = k.incidence();
    let dims = inc.counts();
    let ranks: Vec<usize> = (0..=dims.len())
        .map(|d| {
            if d == 0 || d >= dims.len() {
                return 0;
            }
            let mut m = vec![vec![0i64; dims[d]]; dims[d - 1]];
            // rows index faces, columns index cells
            let entries = (0..dims[d]).flat_map(|i| inc.boundary(d, i).iter().map(move |&(f, s)| (f, i, s)));
            for (f, i, s) in entries {
                m[f][i] += s;
            }
            rank_mod_p(m)
        })
        .collect();
    (0..dims.len()).map(|d| dims[d] - ranks[d] - ranks[d + 1]).collect()
}

#[test]
fn gallery_betti_agree_with_prime_field_ranks() {
    for c in gallery() {
        let h = homology_of(&c.complex);
        assert_eq!(h.betti, betti_mod_p(&c.complex), "{} {:?}", c.name, c.params);
    }
}

#[test]
fn euler_characteristic_from_cell_counts() {
    for c in gallery() {
        let counts = c.complex.incidence().counts();
        let chi: i64 = counts.iter().enumerate().map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) }).sum();
        assert_eq!(homology_of(&c.complex).euler, chi, "{}", c.name);
    }
}

#[test]
fn genus_series_has_two_squares_per_meridian() {
    for m in 1..=6 {
        let s = m0_surface(m).unwrap();
        assert_eq!(s.cells_of_dim(2).count(), 2 * (m + 1));
        // the two poles of each factor, paired
        assert_eq!(s.cells_of_dim(0).count(), 4);
    }
}

#[test]
fn odd_rank_surface_cell_counts() {
    // chi = -2k follows from the cell counts alone
    for k in 2..=5 {
        let s = cauty_odd(k, false).unwrap();
        assert_eq!(s.euler_characteristic(), -2 * k as i64);
    }
}

/// The meridian sequences printed for the involution surfaces.
fn printed_sequences(m: usize) -> (Vec<usize>, Vec<usize>) {
    let mut sigma = vec![0, 1];
    let mut tau = vec![1, 0];
    if m.is_multiple_of(2) {
        sigma.extend((3..m).step_by(2));
        sigma.push(m);
        sigma.extend((2..=m - 2).rev().step_by(2));
        tau.extend((2..=m - 2).step_by(2));
        tau.push(m);
        tau.extend((3..m).rev().step_by(2));
    } else {
        sigma.extend((3..=m - 2).step_by(2));
        sigma.push(m);
        sigma.extend((2..m).rev().step_by(2));
        tau.extend((2..m).step_by(2));
        tau.push(m);
        tau.extend((3..=m - 2).rev().step_by(2));
    }
    (sigma, tau)
}

fn squares_of(sigma: &[usize], tau: &[usize]) -> BTreeSet<(String, String)> {
    let n = sigma.len();
    (0..n)
        .flat_map(|j| {
            [
                (format!("m{}", sigma[j]), format!("m{}", tau[j])),
                (format!("m{}", sigma[j]), format!("m{}", tau[(j + 1) % n])),
            ]
        })
        .collect()
}

fn named_squares(s: &ProductSubcomplex) -> BTreeSet<(String, String)> {
    let p = s.parent();
    s.cells_of_dim(2)
        .map(|c| {
            let ids = p.cell_ids(c);
            let strip = |x: &str| x.split_once(':').unwrap().1.to_string();
            (strip(&ids[0]), strip(&ids[1]))
        })
        .collect()
}

#[test]
fn printed_meridian_sequences_rebuild_the_involution_surfaces() {
    for m in 2..=5 {
        let (sigma, tau) = printed_sequences(m);
        assert_eq!(sigma.len(), m + 1);
        assert_eq!(sigma.iter().collect::<BTreeSet<_>>().len(), m + 1);
        assert_eq!(tau.iter().collect::<BTreeSet<_>>().len(), m + 1);
        let s = involution_surface(m).unwrap();
        assert_eq!(squares_of(&sigma, &tau), named_squares(&s), "m = {m}");
    }
}

#[test]
fn computed_meridian_sequences_rebuild_their_surfaces() {
    for m in 1..=5 {
        for s in [m0_surface(m).unwrap(), involution_surface(m).unwrap()] {
            let d = theta_decompose(&s).unwrap();
            let idx = |v: &[String]| -> Vec<usize> {
                v.iter().map(|x| x.trim_start_matches(|c: char| !c.is_ascii_digit()).parse().unwrap()).collect()
            };
            assert_eq!(squares_of(&idx(&d.sigma), &idx(&d.tau)), named_squares(&s));
            assert_eq!(d.genus, m);
        }
    }
}

#[test]
fn tree_embedding_negative_controls() {
    let k = grid_square(3);
    let t = tree_embed(&k, &greedy_collapse(&k)).unwrap();
    assert!(verify_tree_embedding(&t, &k).verdict);

    // two 2-cells claiming the same interior square
    let mut shared = t.clone();
    let faces: Vec<String> = k.faces().iter().map(|f| f.id.clone()).collect();
    let square = shared.assignment[&faces[0]].iter().find(|c| c.dim() == 2).unwrap().clone();
    shared.assignment.get_mut(&faces[1]).unwrap().insert(square);
    let r = verify_tree_embedding(&shared, &k);
    assert!(!r.verdict);
    assert!(r.witnesses.iter().any(|w| w.reason.contains("also assigned")));

    // removing a square whose closure's complement is not contractible punches a hole
    let holed = t
        .image
        .cells_of_dim(2)
        .find_map(|c| {
            let open: BTreeSet<CellTuple> = [c.clone()].into();
            let image = t.image.remove_open(&open).unwrap();
            let h = homology_of(&image);
            (h.betti.get(1).copied().unwrap_or(0) > 0).then(|| TreeEmbedding { image, ..t.clone() })
        })
        .expect("some square bounds a hole");
    let r = verify_tree_embedding(&holed, &k);
    assert!(!r.verdict);
    assert!(r.witnesses.iter().any(|w| w.reason.contains("reduced homology")), "{:?}", r.witnesses);
}

#[test]
fn tree_embedding_trees_grow_by_pendant_edges_only() {
    for k in [triangulated_disc(5), grid_square(2), cone_over_graph(&theta(4).unwrap())] {
        let t = tree_embed(&k, &greedy_collapse(&k)).unwrap();
        assert_eq!(t.pendant_edges, t.tree1.edge_count() + t.tree2.edge_count());
        assert_eq!(t.tree1.vertex_count(), t.tree1.edge_count() + 1);
        let comps: BTreeSet<Comp> = t.image.cells().iter().map(|c| c.0[0]).collect();
        assert!(comps.len() <= t.tree1.vertex_count() + t.tree1.edge_count());
        let runs: usize = t.expansions.iter().map(|e| e.runs).sum();
        assert_eq!(t.pendant_edges, runs);
        let corners: usize = t.expansions.iter().map(|e| e.corners).sum();
        assert_eq!(t.corner_squares, corners);
    }
}
