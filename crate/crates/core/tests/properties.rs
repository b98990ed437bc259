//! Randomized invariants at reduced sizes.

use helion::entropy::{linear_entropy, von_neumann_entropy, Analysis, AnalysisOptions};
use helion::hylleraas::{enumerate_terms, solve_state, term_count, BasisSpec, SpinSymmetry};
use helion::numerics::{
    solve_antisymmetric_pairs, solve_symmetric, AntisymMatrix, Dd, Mp224, PrecisionConfig, Real,
    SymMatrix,
};
use helion::rdm::{Occupancy, OccupancySet};
use proptest::prelude::*;

fn cfg() -> PrecisionConfig {
    PrecisionConfig::with_digits(30).unwrap()
}

fn occupancy_set(values: &[(u32, f64)]) -> OccupancySet<f64> {
    let entries: Vec<Occupancy<f64>> = values
        .iter()
        .enumerate()
        .map(|(n, &(l, occupancy))| Occupancy {
            n,
            l,
            occupancy,
            degeneracy: 2 * l + 1,
        })
        .collect();
    let trace = entries
        .iter()
        .map(|e| e.degeneracy as f64 * e.occupancy)
        .sum();
    OccupancySet { entries, trace }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn term_count_matches_enumeration(omega in 0u32..25, triplet in any::<bool>()) {
        let spin = if triplet { SpinSymmetry::Triplet } else { SpinSymmetry::Singlet };
        let terms = enumerate_terms(omega, spin);
        prop_assert_eq!(terms.len(), term_count(omega, spin));
        for t in &terms {
            prop_assert!(t.k + t.m + t.n <= omega);
            prop_assert!(t.m <= t.n);
            if triplet {
                prop_assert!(t.m < t.n);
            }
        }
    }

    #[test]
    fn symmetric_spectrum_sums_to_trace(seed in prop::collection::vec(-1.0f64..1.0, 36)) {
        let a = SymMatrix::from_upper_fn(8, |i, j| seed[i * 4 + j % 4] + seed[j * 4 + i % 4]);
        let vals = solve_symmetric(&a, &PrecisionConfig::with_digits(15).unwrap()).unwrap();
        let tr: f64 = (0..8).map(|i| *a.get(i, i)).sum();
        let frob: f64 = (0..8).flat_map(|i| (0..8).map(move |j| (i, j))).map(|(i, j)| a.get(i, j).powi(2)).sum();
        prop_assert!((vals.iter().sum::<f64>() - tr).abs() < 1e-12);
        prop_assert!((vals.iter().map(|v| v * v).sum::<f64>() - frob).abs() < 1e-11);
    }

    #[test]
    fn slater_values_pair_up(seed in prop::collection::vec(-1.0f64..1.0, 49), n in 2usize..8) {
        let a = AntisymMatrix::from_upper_fn(n, |i, j| seed[i * 7 + j]);
        let vals = solve_antisymmetric_pairs(&a, &PrecisionConfig::with_digits(15).unwrap()).unwrap();
        prop_assert_eq!(vals.len(), n / 2);
        prop_assert!(vals.iter().all(|v| *v >= 0.0));
        prop_assert!(vals.windows(2).all(|w| w[0] >= w[1]));
        // each pair ±iλ carries λ² twice in the Frobenius norm
        let frob: f64 = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).map(|(i, j)| 2.0 * seed[i * 7 + j].powi(2)).sum();
        prop_assert!((2.0 * vals.iter().map(|v| v * v).sum::<f64>() - frob).abs() < 1e-11);
    }

    #[test]
    fn entropies_ignore_entry_order(
        raw in prop::collection::vec((0u32..4, 0.01f64..1.0), 1..12),
        shift in 0usize..12,
    ) {
        let total: f64 = raw.iter().map(|(l, x)| (2 * l + 1) as f64 * x).sum();
        let scaled: Vec<(u32, f64)> = raw.iter().map(|&(l, x)| (l, x / total)).collect();
        let mut rotated = scaled.clone();
        rotated.rotate_left(shift % scaled.len());
        rotated.reverse();
        let (a, b) = (occupancy_set(&scaled), occupancy_set(&rotated));
        prop_assert!((linear_entropy(&a) - linear_entropy(&b)).abs() < 1e-12);
        prop_assert!((von_neumann_entropy(&a) - von_neumann_entropy(&b)).abs() < 1e-12);
        prop_assert!(linear_entropy(&a) >= -1e-15 && von_neumann_entropy(&a) >= -1e-15);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn energy_decreases_with_omega(alpha in 1.6f64..3.0, beta in 1.6f64..3.0) {
        let mut prev = f64::INFINITY;
        for w in 1..=6 {
            let b = BasisSpec::helium(w, SpinSymmetry::Singlet).unwrap().with_exponents(alpha, beta);
            let e = solve_state::<Dd>(&b, 1, &cfg()).unwrap().energy.to_f64();
            prop_assert!(e <= prev + 1e-14, "omega {}: {} after {}", w, e, prev);
            // variational bound
            prop_assert!(e > -2.9037243771);
            prev = e;
        }
    }

    #[test]
    fn trace_grows_with_radial_basis(scale in 1.2f64..3.5) {
        let b = BasisSpec::helium(4, SpinSymmetry::Singlet).unwrap().with_exponents(2.0, 2.2);
        let st = solve_state::<Dd>(&b, 1, &cfg()).unwrap();
        let opts = AnalysisOptions { l_max: 8, la_max: 20, scale: Some(scale), tune_scale: false, ..AnalysisOptions::default() };
        let an = Analysis::<Mp224>::new(&st.convert(), &opts).unwrap();
        let mut last = 0.0;
        for la in 1..=20 {
            let tr = an.report(8, la).unwrap().trace;
            prop_assert!(tr >= last - 1e-15 && tr <= 1.0 + 1e-12, "la {}: {} after {}", la, tr, last);
            last = tr;
        }
    }

    #[test]
    fn entropy_is_robust_to_scale(scale in 1.6f64..2.8) {
        let b = BasisSpec::helium(4, SpinSymmetry::Singlet).unwrap().with_exponents(2.0, 2.2);
        let st = solve_state::<Dd>(&b, 1, &cfg()).unwrap().convert::<Mp224>();
        let at = |s: f64| {
            let opts = AnalysisOptions { l_max: 10, la_max: 25, scale: Some(s), tune_scale: false, ..AnalysisOptions::default() };
            Analysis::<Mp224>::new(&st, &opts).unwrap().report(10, 25).unwrap()
        };
        let (r0, r1) = (at(2.0), at(scale));
        prop_assert!((r0.s_von_neumann - r1.s_von_neumann).abs() < 1e-5);
        prop_assert!((r0.s_linear - r1.s_linear).abs() < 1e-6);
    }
}
