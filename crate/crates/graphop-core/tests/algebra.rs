//! Randomized operator-algebra laws: adjoint behavior, convolution
//! associativity, the diagonal-part identity, and an independent
//! matrix-route cross-check of the convolution product.

mod common;

use common::{random_coefficient, random_operator};
use graphop_core::matrix::operator_matrix;
use graphop_core::operator::DEFAULT_EPS_ZERO;
use graphop_core::{Ball, Complex64, GraphOperator, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn adjoint_is_involutive_anti_multiplicative_conjugate_linear() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..60 {
        let graph = common::random_graph(&mut rng, 5, 7);
        let a = random_operator(&mut rng, &graph, 4, 3);
        let b = random_operator(&mut rng, &graph, 4, 3);

        assert!(a.adjoint().adjoint().approx_eq(&a, 1e-12));

        let product_adjoint = a.multiply(&b).unwrap().adjoint();
        let reversed = b.adjoint().multiply(&a.adjoint()).unwrap();
        assert!(product_adjoint.approx_eq(&reversed, 1e-12));

        let weight = random_coefficient(&mut rng);
        let scaled_adjoint = a.scale(weight).adjoint();
        let conjugate_scaled = a.adjoint().scale(weight.conj());
        assert!(scaled_adjoint.approx_eq(&conjugate_scaled, 1e-12));
    }
}

#[test]
fn convolution_is_associative() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..70 {
        let graph = common::random_graph(&mut rng, 5, 7);
        let a = random_operator(&mut rng, &graph, 4, 3);
        let b = random_operator(&mut rng, &graph, 4, 3);
        let c = random_operator(&mut rng, &graph, 4, 3);
        let left = a.multiply(&b).unwrap().multiply(&c).unwrap();
        let right = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        assert!(
            left.max_coefficient_difference(&right) <= 1e-10,
            "associativity defect {}",
            left.max_coefficient_difference(&right)
        );
    }
}

#[test]
fn diagonal_part_is_idempotent_linear_and_matches_the_norm_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for _ in 0..80 {
        let graph = common::random_graph(&mut rng, 5, 7);
        let t = random_operator(&mut rng, &graph, 5, 3);

        let diag = t.diagonal_part();
        assert_eq!(diag.diagonal_part(), diag);

        let s = random_operator(&mut rng, &graph, 5, 3);
        let sum_diag = t.add(&s).unwrap().diagonal_part();
        let diag_sum = t.diagonal_part().add(&s.diagonal_part()).unwrap();
        assert!(sum_diag.approx_eq(&diag_sum, 1e-12));

        // diagonal_part(T* T) = sum_w |t_w|^2 L_{range(w)}: the product
        // w1^-1 w2 is a vertex exactly when w1 = w2.
        let gram_diagonal = t.adjoint().multiply(&t).unwrap().diagonal_part();
        let mut expected_terms: Vec<(Word, Complex64)> = Vec::new();
        for (word, coefficient) in t.terms() {
            expected_terms.push((
                Word::Vertex(graph.range(word).unwrap()),
                Complex64::new(coefficient.norm_sqr(), 0.0),
            ));
        }
        let expected = GraphOperator::new(graph.clone(), expected_terms).unwrap();
        assert!(
            gram_diagonal.max_coefficient_difference(&expected) <= 1e-12,
            "defect {}",
            gram_diagonal.max_coefficient_difference(&expected)
        );
    }
}

#[test]
fn self_commutator_is_symbolically_self_adjoint() {
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    for _ in 0..60 {
        let graph = common::random_graph(&mut rng, 5, 7);
        let t = random_operator(&mut rng, &graph, 4, 3);
        let s = t.self_commutator();
        assert!(s.adjoint().approx_eq(&s, 1e-12));
    }
}

#[test]
fn profile_range_sets_match_direct_recomputation() {
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    for _ in 0..40 {
        let graph = common::random_graph(&mut rng, 5, 7);
        let t = random_operator(&mut rng, &graph, 4, 3);
        let profile = t.support_profile();
        let recompute = |words: &[Word]| -> Vec<usize> {
            let mut out: Vec<usize> = words
                .iter()
                .map(|w| graph.range(w).unwrap())
                .collect();
            out.sort_unstable();
            out.dedup();
            out
        };
        assert_eq!(profile.r_left, recompute(&profile.pi_star_left));
        assert_eq!(profile.r_right, recompute(&profile.pi_star_right));
        assert_eq!(
            profile.supp.len(),
            profile.supp_vertices.len() + profile.supp_paths.len()
        );
    }
}

/// Independent route for the convolution: on a ball wide enough to contain
/// every image of a smaller ball, the truncation of `T S` must equal the
/// product of the truncations, column by column over the smaller ball.
#[test]
fn convolution_agrees_with_the_matrix_route() {
    let mut rng = ChaCha8Rng::seed_from_u64(66);
    for _ in 0..25 {
        let graph = common::random_graph(&mut rng, 3, 2);
        let t = random_operator(&mut rng, &graph, 3, 2);
        let s = random_operator(&mut rng, &graph, 3, 2);
        let ts = t.multiply(&s).unwrap();

        let inner = Ball::enumerate(graph.clone(), 1);
        let outer_radius = 1 + (t.max_word_len() + s.max_word_len()) as u32;
        let outer = Ball::enumerate(graph.clone(), outer_radius);

        let mt = operator_matrix(&t, &outer).unwrap();
        let ms = operator_matrix(&s, &outer).unwrap();
        let mts = operator_matrix(&ts, &outer).unwrap();
        let dim = outer.len();
        for col in 0..inner.len() {
            for row in 0..dim {
                let mut via_product = Complex64::ZERO;
                for mid in 0..dim {
                    via_product += mt.entry(row, mid) * ms.entry(mid, col);
                }
                let direct = mts.entry(row, col);
                assert!(
                    (via_product - direct).norm() <= 1e-10 + DEFAULT_EPS_ZERO * dim as f64,
                    "column {col}, row {row}: {via_product} vs {direct}"
                );
            }
        }
    }
}
