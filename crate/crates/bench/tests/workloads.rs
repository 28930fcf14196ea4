use topoprod::homology::homology_of;
use topoprod_bench::{cone, greedy_steps, surfaces, torus_skeleton};

#[test]
fn workloads_are_what_they_claim() {
    for (name, s) in surfaces() {
        let h = homology_of(&s);
        assert_eq!(h.betti[0], 1, "{name}");
        assert!(h.betti[2] <= 1, "{name}");
    }
    // every cell but one vertex leaves in a pair
    for n in [4, 16] {
        let k = cone(n);
        assert_eq!(greedy_steps(&k), (k.vertex_count() + k.edge_count() + k.face_count() - 1) / 2);
    }
    assert_eq!(torus_skeleton(6, 2).betti, vec![1, 6, 15]);
}
