//! Randomized invariants of the library, exercised at desk scale.

mod common;

use common::{random_orthonormal_pair, random_state};
use nalgebra::{DMatrix, DVector};
use passent::{
    add_vacuum_ancilla, apply_passive, attainable_two_mode, complexify, entangle_optimally,
    entanglement_report, entangler_angles, entangler_f_matrix, haar_unitary, make_state,
    maximize_negativity, maximize_subsystem_negativity, optimal_two_mode_plan, partial_transpose,
    passive_from_unitary, pauli_imag_overlaps, random_passive, realify, squeezing_report,
    symplectic_spectrum, tol, unitary_direct_sum, ModePartition, SearchConfig, StateSpec,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

fn rng_from(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn half_half(n: usize) -> ModePartition {
    ModePartition::new(n / 2, n - n / 2).unwrap()
}

/// Independent spectrum route: moduli of the eigenvalues of `sigma * gamma`
/// from the generic complex eigen-solver, paired and averaged.
fn spectrum_via_complex_eigensolver(gamma: &passent::CovarianceMatrix) -> Vec<f64> {
    let sigma = passent::SymplecticForm::new(gamma.n()).matrix();
    let mut moduli: Vec<f64> = (sigma * gamma.data())
        .complex_eigenvalues()
        .iter()
        .map(|z| z.norm())
        .collect();
    moduli.sort_by(f64::total_cmp);
    moduli.chunks_exact(2).map(|p| 0.5 * (p[0] + p[1])).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_states_are_valid_with_unit_or_larger_spectrum(
        seed in any::<u64>(),
        n in 1usize..=4,
    ) {
        let gamma = random_state(n, 0.8, 1.5, &mut rng_from(seed));
        prop_assert!(gamma.validate().is_valid());
        let spec = symplectic_spectrum(&gamma).unwrap();
        for s in &spec.values {
            prop_assert!(*s >= 1.0 - tol::EIGENVALUE, "symplectic eigenvalue {s} below 1");
        }
    }

    #[test]
    fn spectrum_routes_agree_on_states_and_transposes(
        seed in any::<u64>(),
        n in 2usize..=4,
    ) {
        let gamma = random_state(n, 0.8, 1.5, &mut rng_from(seed));
        let part = half_half(n);
        for m in [gamma.clone(), partial_transpose(&gamma, part).unwrap()] {
            let direct = symplectic_spectrum(&m).unwrap().values;
            let generic = spectrum_via_complex_eigensolver(&m);
            for (a, b) in direct.iter().zip(&generic) {
                prop_assert!((a - b).abs() < 1e-8 * a.max(1.0), "{a} vs {b}");
            }
        }
    }

    #[test]
    fn symplectic_spectrum_is_passive_invariant(
        seed in any::<u64>(),
        n in 1usize..=4,
    ) {
        let mut rng = rng_from(seed);
        let gamma = random_state(n, 0.7, 1.2, &mut rng);
        let k = random_passive(n, &mut rng);
        let before = symplectic_spectrum(&gamma).unwrap().values;
        let after = symplectic_spectrum(&apply_passive(&gamma, &k).unwrap()).unwrap().values;
        for (a, b) in before.iter().zip(&after) {
            prop_assert!((a - b).abs() < 1e-9 * a.max(1.0));
        }
    }

    #[test]
    fn negativity_is_invariant_under_party_local_passives(
        seed in any::<u64>(),
        n_a in 1usize..=2,
        n_b in 1usize..=2,
    ) {
        let n = n_a + n_b;
        let mut rng = rng_from(seed);
        let gamma = random_state(n, 0.8, 1.0, &mut rng);
        let part = ModePartition::new(n_a, n_b).unwrap();
        let u_local = unitary_direct_sum(
            &haar_unitary(n_a, &mut rng),
            &haar_unitary(n_b, &mut rng),
        );
        let k = passive_from_unitary(u_local).unwrap();
        let before = entanglement_report(&gamma, part).unwrap();
        let after = entanglement_report(&apply_passive(&gamma, &k).unwrap(), part).unwrap();
        prop_assert!((before.log_negativity - after.log_negativity).abs() < 1e-8);
        prop_assert_eq!(before.is_nppt, after.is_nppt);
    }

    #[test]
    fn complexify_round_trips_bit_for_bit(v in prop::collection::vec(-1e6f64..1e6, 1..6)) {
        let mut doubled: Vec<f64> = v.clone();
        doubled.extend(v.iter().map(|x| x * 0.5 - 1.0));
        let real = DVector::from_vec(doubled);
        let psi = complexify(&real).unwrap();
        prop_assert_eq!(realify(&psi), real);
    }

    #[test]
    fn partial_transpose_is_a_bit_stable_involution(
        seed in any::<u64>(),
        n in 2usize..=5,
        n_a in 1usize..=4,
    ) {
        prop_assume!(n_a < n);
        let gamma = random_state(n, 0.8, 1.5, &mut rng_from(seed));
        let part = ModePartition::new(n_a, n - n_a).unwrap();
        let twice = partial_transpose(&partial_transpose(&gamma, part).unwrap(), part).unwrap();
        prop_assert_eq!(twice.data(), gamma.data());
        // Diagonal blocks keep their ordinary spectrum: the A block is
        // untouched and the B block is conjugated by a reflection.
        let b_modes: Vec<usize> = (n_a..n).collect();
        let before = gamma.mode_submatrix(&b_modes).unwrap();
        let after = partial_transpose(&gamma, part).unwrap().mode_submatrix(&b_modes).unwrap();
        let eig = |m: &passent::CovarianceMatrix| {
            let mut v: Vec<f64> = m.data().clone().symmetric_eigenvalues().iter().copied().collect();
            v.sort_by(f64::total_cmp);
            v
        };
        for (x, y) in eig(&before).iter().zip(eig(&after).iter()) {
            prop_assert!((x - y).abs() < 1e-10);
        }
    }

    #[test]
    fn factory_states_are_valid(
        modes in 1usize..=4,
        b in 1.0f64..5.0,
        r in -1.5f64..1.5,
        phase in 0.0f64..PI,
    ) {
        for spec in [
            StateSpec::Vacuum { modes },
            StateSpec::Thermal { b },
            StateSpec::Squeezed { r, phase },
            StateSpec::TwoModeSqueezed { r },
        ] {
            let gamma = make_state(&spec).unwrap();
            prop_assert!(gamma.validate().is_valid(), "{spec:?} produced an invalid state");
        }
    }

    #[test]
    fn entangler_angles_stay_in_range_and_solve_the_equations(
        seed in any::<u64>(),
    ) {
        let (v1, v2) = random_orthonormal_pair(4, &mut rng_from(seed));
        let psi1 = complexify(&v1).unwrap();
        let psi2 = complexify(&v2).unwrap();
        let j = pauli_imag_overlaps(&psi1, &psi2).unwrap();
        let (alpha, gamma_angle) = entangler_angles(j);
        prop_assert!((0.0..PI).contains(&alpha));
        prop_assert!((-PI..=PI).contains(&gamma_angle));
        let f = entangler_f_matrix(alpha, gamma_angle);
        prop_assert!((f[(0, 0)].re - j[0]).abs() < 1e-9);
        prop_assert!((f[(1, 0)].im - j[1]).abs() < 1e-9);
        prop_assert!((f[(1, 0)].re - j[2]).abs() < 1e-9);
    }

    #[test]
    fn vacuum_ancilla_never_raises_the_criterion_product(
        seed in any::<u64>(),
        n in 1usize..=3,
    ) {
        let gamma = random_state(n, 0.7, 1.5, &mut rng_from(seed));
        let before = squeezing_report(&gamma).unwrap();
        let extended = add_vacuum_ancilla(&gamma);
        let after = squeezing_report(&extended).unwrap();
        prop_assert!(
            after.lambda1 * after.lambda2 <= before.lambda1 * before.lambda2 + 1e-12
        );
    }

    #[test]
    fn transform_inverse_composes_to_identity(
        seed in any::<u64>(),
        n in 1usize..=4,
    ) {
        let k = random_passive(n, &mut rng_from(seed));
        let round = k.compose(&k.inverse()).unwrap();
        let dev = (round.real_form() - DMatrix::<f64>::identity(2 * n, 2 * n)).abs().max();
        prop_assert!(dev < 1e-12);
    }
}

proptest! {
    // The searches below run a few thousand linear-algebra kernels per
    // case; keep the case count small.
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn oracle_never_exceeds_the_two_mode_closed_form(seed in any::<u64>()) {
        let gamma = random_state(2, 0.8, 1.2, &mut rng_from(seed));
        let bound = attainable_two_mode(&gamma).unwrap();
        let cfg = SearchConfig {
            samples: 150,
            refine_iters: 80,
            seed,
            n: 2,
            partition: half_half(2),
        };
        let found = maximize_negativity(&gamma, &cfg).unwrap().best_negativity_bits;
        prop_assert!(found <= bound + tol::EIGENVALUE, "oracle {found} above bound {bound}");
    }

    #[test]
    fn plan_negativity_survives_random_basis_conjugation(seed in any::<u64>()) {
        // Conjugating by a passive reshuffles the eigenbasis (including
        // inside degenerate eigenspaces) but must not change the achieved
        // negativity.
        let mut rng = rng_from(seed);
        let base = make_state(&StateSpec::TwoModeSqueezed { r: 0.5 }).unwrap();
        let k0 = random_passive(2, &mut rng);
        let gamma = apply_passive(&base, &k0).unwrap();
        let plan = optimal_two_mode_plan(&gamma).unwrap();
        let out = apply_passive(&gamma, &plan.k).unwrap();
        let achieved = entanglement_report(&out, half_half(2)).unwrap().log_negativity;
        prop_assert!((achieved - plan.predicted_negativity_bits).abs() < tol::OPTIMAL);
    }
}

/// The two-mode-subsystem search agrees with the closed-form attainable
/// value on three- and four-mode states.
#[test]
fn subsystem_oracle_agrees_with_attainable_value() {
    for (case, (n, seed)) in [(3, 11u64), (3, 12), (4, 13), (4, 14)].into_iter().enumerate() {
        let gamma = random_state(n, 0.8, 0.8, &mut rng_from(seed));
        let bound = attainable_two_mode(&gamma).unwrap();
        let cfg = SearchConfig {
            samples: 3000,
            refine_iters: 2500,
            seed: seed * 1000 + case as u64,
            n,
            partition: half_half(n),
        };
        let found = maximize_subsystem_negativity(&gamma, &cfg)
            .unwrap()
            .best_negativity_bits;
        assert!(
            found <= bound + tol::EIGENVALUE,
            "case {case}: subsystem search {found} above bound {bound}"
        );
        assert!(
            found >= bound - tol::ORACLE,
            "case {case}: subsystem search {found} misses bound {bound}"
        );
    }
}

/// Constructed pipeline and full-state oracle agree on mixed multi-mode
/// states (the pipeline's guarantee is a lower bound on what the oracle can
/// find, and the oracle cannot beat the two-mode ceiling when only one
/// transposed eigenvalue dips below one).
#[test]
fn pipeline_and_oracle_are_consistent_on_three_modes() {
    let mut rng = rng_from(21);
    for _ in 0..3 {
        let gamma = random_state(3, 0.7, 0.8, &mut rng);
        let part = ModePartition::new(1, 2).unwrap();
        let (_, _, report) = entangle_optimally(&gamma, part).unwrap();
        let cfg = SearchConfig {
            samples: 2500,
            refine_iters: 2000,
            seed: 77,
            n: 3,
            partition: part,
        };
        let found = maximize_negativity(&gamma, &cfg).unwrap().best_negativity_bits;
        assert!(
            found >= report.log_negativity - tol::ORACLE,
            "oracle {found} worse than construction {}",
            report.log_negativity
        );
    }
}
