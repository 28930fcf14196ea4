use std::sync::Arc;

use proptest::prelude::*;
use topoprod::abelian::{gcd, smith_normal_form, tensor, FgAbGroup, IntegerMatrix};
use topoprod::collapse::{greedy_collapse, replay, tree_embed, verify_tree_embedding};
use topoprod::complex::{Graph1Complex, ProductComplex, ProductSubcomplex};
use topoprod::constructions::{cone_over_graph, cycle, theta};
use topoprod::document::{AnyComplex, ComplexDocument};
use topoprod::homology::{homology_of, HomologySummary};

/// Loop-free multigraphs on `1..=6` vertices.
fn graphs() -> impl Strategy<Value = Graph1Complex> {
    (1usize..=6)
        .prop_flat_map(|n| (Just(n), prop::collection::vec((0..n, 0..n), 0..10)))
        .prop_map(|(n, pairs)| {
            let vs: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
            let es: Vec<(String, String, String)> = pairs
                .into_iter()
                .filter(|(a, b)| a != b)
                .enumerate()
                .map(|(i, (a, b))| (format!("e{i}"), vs[a].clone(), vs[b].clone()))
                .collect();
            Graph1Complex::new(&vs, &es).unwrap()
        })
}

/// Closures of random square sets in theta(2) x C3.
fn subcomplexes() -> impl Strategy<Value = ProductSubcomplex> {
    let parent = Arc::new(ProductComplex::new(vec![theta(2).unwrap(), cycle(3).unwrap()]).unwrap());
    let squares: Vec<_> = parent.all_cells().into_iter().filter(|c| c.dim() == 2).collect();
    prop::sample::subsequence(squares.clone(), 0..=squares.len())
        .prop_map(move |chosen| ProductSubcomplex::closure(parent.clone(), chosen).unwrap())
}

/// Drops trailing trivial degrees, which depend only on the ambient dimension.
fn trimmed(mut h: HomologySummary) -> HomologySummary {
    while h.betti.len() > 1 && h.betti.last() == Some(&0) && h.torsion.last().is_some_and(Vec::is_empty) {
        h.betti.pop();
        h.torsion.pop();
    }
    h
}

fn matrices() -> impl Strategy<Value = IntegerMatrix> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
        prop::collection::vec(-6i64..=6, r * c).prop_map(move |e| IntegerMatrix::new(r, c, e).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn smith_form_factors_and_transforms(a in matrices()) {
        let s = smith_normal_form(&a);
        prop_assert_eq!(s.u.mul(&a).mul(&s.v), s.d.clone());
        prop_assert!(s.d.is_diagonal());
        prop_assert_eq!(s.u.determinant().abs(), 1);
        prop_assert_eq!(s.v.determinant().abs(), 1);
        let f = s.invariant_factors();
        prop_assert!(f.iter().all(|&x| x > 0));
        prop_assert!(f.windows(2).all(|w| w[1] % w[0] == 0));
        if a.rows() == a.cols() {
            let diag: i128 = s.d.diagonal().iter().map(|&x| i128::from(x)).product();
            prop_assert_eq!(diag.abs(), a.determinant().abs());
        }
    }

    #[test]
    fn tensor_of_cyclics_is_cyclic_of_gcd(a in 1i64..40, b in 1i64..40) {
        let t = tensor(&FgAbGroup::cyclic(a), &FgAbGroup::cyclic(b));
        prop_assert_eq!(t, FgAbGroup::cyclic(gcd(a, b)));
        prop_assert_eq!(tensor(&FgAbGroup::free(1), &FgAbGroup::cyclic(a)), FgAbGroup::cyclic(a));
    }

    #[test]
    fn cones_collapse_and_embed(g in graphs()) {
        let k = cone_over_graph(&g);
        let plan = greedy_collapse(&k);
        prop_assert!(plan.reaches_point());
        let t = tree_embed(&k, &plan).unwrap();
        let r = verify_tree_embedding(&t, &k);
        prop_assert!(r.verdict, "{:?}", r.witnesses);
        prop_assert_eq!(t.image.euler_characteristic(), 1);
        prop_assert!(homology_of(&t.image).is_acyclic());
    }

    #[test]
    fn homology_is_constant_along_a_collapse(g in graphs()) {
        let k = cone_over_graph(&g);
        let plan = greedy_collapse(&k);
        let h0 = trimmed(homology_of(&k));
        for cut in (0..=plan.steps.len()).step_by(3) {
            let partial = replay(&k, &plan.steps[..cut]).unwrap();
            prop_assert_eq!(trimmed(homology_of(&partial)), h0.clone());
        }
    }

    #[test]
    fn product_and_cellular_homology_agree(s in subcomplexes()) {
        prop_assume!(!s.is_empty());
        let h = homology_of(&s);
        prop_assert_eq!(homology_of(&s.to_regular2().unwrap()), h.clone());
        let chi: i64 = h.betti.iter().enumerate().map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
        prop_assert_eq!(chi, s.euler_characteristic());
        let sub = s.subdivide_factor_edge(1, "e0").unwrap();
        prop_assert_eq!(homology_of(&sub), h);
    }

    #[test]
    fn documents_round_trip(s in subcomplexes()) {
        let doc = AnyComplex::Subcomplex(s.clone()).to_document();
        let back = ComplexDocument::from_json(&doc.to_json()).unwrap().to_complex().unwrap();
        prop_assert_eq!(back.to_document().to_json(), doc.to_json());
        let cells = back.as_subcomplex().unwrap().cells().clone();
        prop_assert_eq!(&cells, s.cells());
    }
}
