//! One test per acceptance criterion; each prints a single pass/fail line.
//!
//! Time bounds are pinned in `topoprod::acceptance::CRITERIA`.

use topoprod::acceptance::CRITERIA;

fn criterion(id: u8) {
    let c = CRITERIA.iter().find(|c| c.id == id).expect("criterion exists");
    let r = c.run();
    println!("{}", r.line());
    for f in &r.failures {
        println!("    {f}");
    }
    assert!(r.pass, "criterion {id} failed: {:?}", r.failures);
}

#[test]
fn c01_genus_series() {
    criterion(1);
}

#[test]
fn c02_involution_surfaces() {
    criterion(2);
}

#[test]
fn c03_odd_rank_nonorientable() {
    criterion(3);
}

#[test]
fn c04_even_rank_nonorientable() {
    criterion(4);
}

#[test]
fn c05_torus_skeleta() {
    criterion(5);
}

#[test]
fn c06_triple_torus() {
    criterion(6);
}

#[test]
fn c07_projection_calculus() {
    criterion(7);
}

#[test]
fn c08_theta_strips() {
    criterion(8);
}

#[test]
fn c09_collapse_trichotomy() {
    criterion(9);
}

#[test]
fn c10_tree_embeddings() {
    criterion(10);
}

#[test]
fn c11_engine_integrity() {
    criterion(11);
}

#[test]
fn c12_tensor_powers() {
    criterion(12);
}

#[test]
fn c13_ladder_surfaces() {
    criterion(13);
}
