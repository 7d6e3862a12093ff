//! Cross-mode agreement and implication properties of the classifiers.

mod common;

use common::{random_coefficient, random_operator, random_word};
use graphop_core::classify::{
    check_hyponormal_numeric, check_normal, check_self_adjoint, check_unitary, Mode, Outcome,
};
use graphop_core::{Complex64, GraphOperator, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn self_adjoint_modes_agree_on_random_operators() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0usize;
    for _ in 0..6 {
        let graph = common::random_graph(&mut rng, 6, 9);
        for _ in 0..90 {
            // Half arbitrary, half exactly symmetrized via X + X*.
            let op = if rng.gen_bool(0.5) {
                random_operator(&mut rng, &graph, 5, 3)
            } else {
                let x = random_operator(&mut rng, &graph, 4, 3);
                x.add(&x.adjoint()).unwrap()
            };
            let paper = check_self_adjoint(&op, Mode::Paper, 1e-9);
            let oracle = check_self_adjoint(&op, Mode::Oracle, 1e-9);
            assert_eq!(paper.outcome, oracle.outcome, "modes disagree on {op:?}");
            checked += 1;
        }
    }
    assert!(checked >= 500);
}

#[test]
fn oracle_self_adjoint_implies_oracle_normal() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..60 {
        let graph = common::random_graph(&mut rng, 5, 7);
        let x = random_operator(&mut rng, &graph, 4, 3);
        let t = x.add(&x.adjoint()).unwrap();
        assert_eq!(check_self_adjoint(&t, Mode::Oracle, 1e-9).outcome, Outcome::Yes);
        assert_eq!(check_normal(&t, Mode::Oracle, 1e-9).outcome, Outcome::Yes);
    }
}

#[test]
fn oracle_unitary_implies_oracle_normal() {
    let mut rng = ChaCha8Rng::seed_from_u64(27);
    for _ in 0..60 {
        let graph = common::random_graph(&mut rng, 5, 7);
        let terms: Vec<(Word, Complex64)> = (0..graph.vertex_count())
            .map(|v| {
                let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
                (Word::Vertex(v), Complex64::new(theta.cos(), theta.sin()))
            })
            .collect();
        let t = GraphOperator::new(graph.clone(), terms).unwrap();
        let unitary = check_unitary(&t, Mode::Oracle, 1e-9);
        assert_eq!(unitary.outcome, Outcome::Yes);
        assert_eq!(check_normal(&t, Mode::Oracle, 1e-9).outcome, Outcome::Yes);
    }
}

#[test]
fn oracle_normal_operators_never_fail_the_numeric_probe() {
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    for k in 0..40 {
        let graph = common::random_graph(&mut rng, 4, 5);
        // Exactly normal families: self-adjoint X + X*, and unimodular
        // vertex diagonals.
        let t = if k % 2 == 0 {
            let x = random_operator(&mut rng, &graph, 3, 2);
            x.add(&x.adjoint()).unwrap()
        } else {
            let terms: Vec<(Word, Complex64)> = (0..graph.vertex_count())
                .map(|v| {
                    let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
                    (Word::Vertex(v), Complex64::new(theta.cos(), theta.sin()))
                })
                .collect();
            GraphOperator::new(graph.clone(), terms).unwrap()
        };
        assert_eq!(check_normal(&t, Mode::Oracle, 1e-9).outcome, Outcome::Yes);
        let numeric = check_hyponormal_numeric(&t, 2, 1e-9).unwrap();
        assert_ne!(numeric.outcome, Outcome::No);
    }
}

#[test]
fn numeric_lambda_min_is_monotone_in_the_radius() {
    let mut rng = ChaCha8Rng::seed_from_u64(47);
    for _ in 0..50 {
        let graph = common::random_graph(&mut rng, 4, 4);
        let t = random_operator(&mut rng, &graph, 4, 2);
        let trace = graphop_core::matrix::spectral_trace(&t, 3).unwrap();
        for pair in trace.levels.windows(2) {
            assert!(
                pair[1].lambda_min <= pair[0].lambda_min + 1e-10,
                "lambda_min rose from {} to {}",
                pair[0].lambda_min,
                pair[1].lambda_min
            );
        }
    }
}

#[test]
fn numeric_mode_never_returns_yes() {
    let mut rng = ChaCha8Rng::seed_from_u64(57);
    for _ in 0..30 {
        let graph = common::random_graph(&mut rng, 4, 5);
        let t = random_operator(&mut rng, &graph, 4, 2);
        let verdict = check_hyponormal_numeric(&t, 2, 1e-9).unwrap();
        assert!(matches!(
            verdict.outcome,
            Outcome::No | Outcome::Undetermined
        ));
        if verdict.outcome == Outcome::No {
            assert!(verdict.witness.is_some());
        }
    }
}

#[test]
fn random_word_sources_match_requests() {
    // Guards the test helper itself: chained generation relies on it.
    let mut rng = ChaCha8Rng::seed_from_u64(67);
    let graph = common::random_graph(&mut rng, 5, 8);
    for _ in 0..200 {
        let v = rng.gen_range(0..graph.vertex_count());
        let w = common::random_word_from(&mut rng, &graph, v, 4);
        assert_eq!(graph.source(&w).unwrap(), v);
        graph.validate_word(&w).unwrap();
        let _ = random_word(&mut rng, &graph, 3);
        let _ = random_coefficient(&mut rng);
    }
}
