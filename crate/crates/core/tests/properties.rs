use std::collections::BTreeMap;

use polylin::automorphism::{column_vectors, elementary};
use polylin::geometry::catalog;
use polylin::hom::{hom_equations, is_homomorphism, is_homomorphism_certified, relation_degree, GradedHom};
use polylin::sample;
use polylin::tame::{decompose_veronese, evaluate_recipe, factor_affine, homothetic_blowup};
use polylin::verify::compositions;
use polylin::{Field, LaurentPoly};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const Q: Field = Field::Rational;

fn poly(terms: &[(i64, i64, i64)]) -> LaurentPoly {
    LaurentPoly::from_terms(Q, 2, terms.iter().map(|&(a, b, c)| (vec![a, b], Q.from_i64(c)))).unwrap()
}

fn terms() -> impl Strategy<Value = Vec<(i64, i64, i64)>> {
    prop::collection::vec((-2i64..3, -2i64..3, -4i64..5), 1..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn laurent_product_divides_back(a in terms(), b in terms()) {
        let (f, g) = (poly(&a), poly(&b));
        prop_assume!(!f.is_zero() && !g.is_zero());
        let fg = f.mul(&g).unwrap();
        prop_assert_eq!(&fg, &g.mul(&f).unwrap());
        prop_assert_eq!(fg.exact_div(&g).unwrap(), f);
    }

    #[test]
    fn laurent_square_root(a in terms()) {
        let f = poly(&a);
        prop_assume!(!f.is_zero() && f.is_monic());
        prop_assert_eq!(f.pow(2).nth_root(2).unwrap(), f);
    }

    #[test]
    fn elementary_one_parameter_law(idx in 0usize..5, l in -6i64..7, m in -6i64..7, den in 1i64..4) {
        let p = [catalog::square(), catalog::t1(), catalog::segment(2), catalog::simplex(2), catalog::simplex(1)][idx].clone();
        let lam = Q.from_ratio(l, den).unwrap();
        let mu = Q.from_i64(m);
        for col in column_vectors(&p).unwrap() {
            let lhs = elementary(&p, &col, &lam).unwrap().compose(&elementary(&p, &col, &mu).unwrap()).unwrap();
            prop_assert_eq!(lhs, elementary(&p, &col, &(&lam + &mu)).unwrap());
        }
    }

    #[test]
    fn random_automorphisms_are_homomorphisms(seed in any::<u64>(), idx in 0usize..6) {
        let p = catalog::standard()[idx].clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = sample::automorphism(&mut rng, &p, Q).unwrap();
        prop_assert!(is_homomorphism_certified(&f).unwrap());
        prop_assert!(f.matrix().inverse().is_some());
    }

    #[test]
    fn blowup_is_functorial(seed in any::<u64>(), idx in 0usize..6) {
        let p = catalog::standard()[idx].clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = sample::automorphism(&mut rng, &p, Q).unwrap();
        let g = sample::automorphism(&mut rng, &p, Q).unwrap();
        let lhs = homothetic_blowup(&g.compose(&f).unwrap(), 2).unwrap();
        let rhs = homothetic_blowup(&g, 2).unwrap().compose(&homothetic_blowup(&f, 2).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(homothetic_blowup(&GradedHom::identity(&p, Q), 2).unwrap(), GradedHom::identity(&p.dilate(2).unwrap(), Q));
    }

    #[test]
    fn veronese_round_trip(seed in any::<u64>(), n in 1usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let recipe = sample::veronese_recipe(&mut rng, n, 2, Q).unwrap();
        let f = evaluate_recipe(&recipe, Q).unwrap();
        let dec = decompose_veronese(&f).unwrap();
        prop_assert_eq!(dec.recompose(f.source(), f.target()).unwrap(), f);
    }

    #[test]
    fn affine_factorization_round_trip(
        c in 1usize..4,
        n in 0usize..3,
        v in prop::collection::vec(-3i64..4, 2),
        beta in prop::collection::vec(prop::collection::vec(-3i64..4, 2), 3),
    ) {
        let alpha: BTreeMap<Vec<usize>, Vec<i64>> = compositions(c, n)
            .into_iter()
            .map(|a| {
                let val = (0..2).map(|k| v[k] + a.iter().zip(&beta).map(|(&ai, b)| ai as i64 * b[k]).sum::<i64>()).collect();
                (a, val)
            })
            .collect();
        let fac = factor_affine(c, n, &alpha).unwrap();
        for (a, val) in &alpha {
            prop_assert_eq!(&fac.evaluate(a), val);
        }
    }

    #[test]
    fn equations_detect_homomorphisms_over_f7(seed in any::<u64>(), monomial in any::<bool>()) {
        let f7 = Field::prime(7).unwrap();
        let sq = catalog::square();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let density = if monomial { 0.25 } else { 0.8 };
        let f = GradedHom::new(sq.clone(), sq.clone(), sample::matrix(&mut rng, f7, 4, 4, density)).unwrap();
        let d = relation_degree(&sq).unwrap();
        prop_assert_eq!(hom_equations(&sq, &sq, d).vanish_at(&f), is_homomorphism(&f, d));
    }
}
