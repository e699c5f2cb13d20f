use polylin::automorphism::{column_vectors, elementary};
use polylin::geometry::{catalog, LatticePolytope};
use polylin::hom::{is_homomorphism_certified, is_idempotent, GradedHom};
use polylin::tame::{
    base_inclusion, evaluate_recipe, fibration_retraction, homothetic_blowup, minkowski_star, polytope_change,
    Fibration, PolytopeChange, TameRecipe,
};
use polylin::{Error, ExactMatrix, Field};
use serde_json::json;

const Q: Field = Field::Rational;

fn column(p: &LatticePolytope, v: &[i64]) -> polylin::automorphism::ColumnStructure {
    column_vectors(p).unwrap().into_iter().find(|c| c.v == v).unwrap()
}

#[test]
fn restrict_elementary_to_top_edge() {
    let sq = catalog::square();
    let e = elementary(&sq, &column(&sq, &[0, -1]), &Q.one()).unwrap();
    let top = LatticePolytope::new(2, vec![vec![0, 1], vec![1, 1]]).unwrap();
    let restricted = polytope_change(
        &e,
        &PolytopeChange {
            source: Some(top.clone()),
            ..Default::default()
        },
    )
    .unwrap();
    assert_eq!(restricted.matrix().rows(), 4);
    assert_eq!(restricted.matrix().cols(), 2);
    assert!(is_homomorphism_certified(&restricted).unwrap());
    assert_eq!(restricted.image(0).to_string(), e.image_of(&[0, 1]).unwrap().to_string());

    let too_small = polytope_change(
        &e,
        &PolytopeChange {
            source: Some(top.clone()),
            target: Some(top),
            ..Default::default()
        },
    );
    assert!(too_small.is_err());
}

#[test]
fn blown_up_elementary_recipe_matches_elementary_on_dilation() {
    let d1 = catalog::simplex(1);
    let two = catalog::segment(2);
    for l in [1, 2, -3] {
        let lambda = Q.from_i64(l);
        let leaf = TameRecipe::hom(&elementary(&d1, &column(&d1, &[-1]), &lambda).unwrap());
        let recipe = TameRecipe::new(
            "polytope_change",
            json!({"target": "2D1"}),
            vec![TameRecipe::new("homothetic_blowup", json!({"c": 2}), vec![leaf])],
        );
        let f = evaluate_recipe(&recipe, Q).unwrap();
        let expected = elementary(&two, &column(&two, &[-1]), &lambda).unwrap();
        assert_eq!(f.matrix(), expected.matrix());
    }
}

#[test]
fn blowup_of_elementary_is_symmetric_square() {
    let d1 = catalog::simplex(1);
    let lambda = Q.from_i64(5);
    let f = homothetic_blowup(&elementary(&d1, &column(&d1, &[-1]), &lambda).unwrap(), 2).unwrap();
    let expected = ExactMatrix::from_i64_rows(Q, &[vec![1, 5, 25], vec![0, 1, 10], vec![0, 0, 1]]).unwrap();
    assert_eq!(f.matrix(), &expected);
}

#[test]
fn vertical_retraction_of_product_contracts_fibers() {
    let p = catalog::segment_times_double_segment();
    let fib = Fibration {
        w_basis: vec![vec![0, 1]],
        h_point: vec![0, 0],
        h_basis: vec![vec![1, 0]],
    };
    fib.validate(&p).unwrap();
    let rho = fibration_retraction(&p, &fib, Q).unwrap();
    assert!(is_homomorphism_certified(&rho).unwrap());
    for (j, x) in p.lattice_points().iter().enumerate() {
        assert_eq!(rho.image(j), rho.image_of(&[x[0], 0]).unwrap());
        assert_eq!(rho.image(j).support(), vec![vec![x[0], 0]]);
    }
    let e = base_inclusion(&p, &fib, Q).unwrap().compose(&rho).unwrap();
    assert!(is_idempotent(&e).unwrap());
}

#[test]
fn star_is_commutative() {
    let d1 = catalog::simplex(1);
    let two = catalog::segment(2);
    let f = GradedHom::new(d1.clone(), two.clone(), ExactMatrix::from_i64_rows(Q, &[vec![1, 0], vec![0, 1], vec![0, 0]]).unwrap()).unwrap();
    let g = GradedHom::new(d1, two, ExactMatrix::from_i64_rows(Q, &[vec![1, 1], vec![0, 1], vec![0, 0]]).unwrap()).unwrap();
    let fg = minkowski_star(&f, &g).unwrap();
    assert_eq!(fg, minkowski_star(&g, &f).unwrap());
    assert_eq!(fg.matrix(), &ExactMatrix::from_i64_rows(Q, &[vec![1, 0], vec![0, 1], vec![0, 1]]).unwrap());
}

#[test]
fn recipe_errors_report_their_root() {
    let recipe = TameRecipe::new(
        "homothetic_blowup",
        json!({"c": 2}),
        vec![TameRecipe::hom(
            &GradedHom::new(catalog::simplex(1), catalog::simplex(1), ExactMatrix::zeros(Q, 2, 2)).unwrap(),
        )],
    );
    let err = evaluate_recipe(&recipe, Q).unwrap_err();
    assert!(matches!(err.root(), Error::ZeroGeneratorImage(_)));
}
