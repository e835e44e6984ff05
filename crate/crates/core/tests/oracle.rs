mod common;

use common::{all_solutions, bounded_solutions, is_solution, to_u128};
use sigmaeq::solver::{complete_last_two, Completion, PrefixState};
use sigmaeq::{enumerate, enumerate_with, Execution, SearchConfig};

fn solver_u128(n: usize, k: usize, cfg: &SearchConfig) -> Vec<Vec<u128>> {
    enumerate_with(n, k, cfg)
        .unwrap()
        .solutions
        .iter()
        .map(to_u128)
        .collect()
}

#[test]
fn matches_unbounded_oracle() {
    let cases = [
        (2, 0),
        (2, 1),
        (3, 1),
        (3, 2),
        (4, 1),
        (4, 2),
        (4, 3),
        (5, 1),
        (5, 2),
        (5, 3),
        (5, 4),
        (6, 1),
        (6, 2),
        (6, 3),
        (6, 4),
        (6, 5),
    ];
    for (n, k) in cases {
        let expected = all_solutions(n, k);
        let got = solver_u128(n, k, &SearchConfig::default());
        assert_eq!(got, expected, "n = {n}, k = {k}");
    }
}

#[test]
fn matches_bounded_oracle_for_k1() {
    for n in 2..=7 {
        let got = solver_u128(n, 1, &SearchConfig::default());
        assert_eq!(got, bounded_solutions(n, 1, n as u128), "n = {n}");
    }
}

#[test]
fn completion_is_sound_and_complete_on_small_prefixes() {
    // every (y, z) with y <= z <= 400 that completes the prefix must be returned
    for (n, k, prefix) in [
        (4, 2, vec![1u64, 2]),
        (5, 3, vec![1, 2, 4]),
        (5, 3, vec![2, 2, 2]),
        (5, 2, vec![1, 1, 2]),
    ] {
        let state = PrefixState::from_u64(&prefix).unwrap();
        let got: Vec<(u128, u128)> = complete_last_two(&state, n, k)
            .unwrap()
            .into_iter()
            .map(|(y, z)| (u128::try_from(&y).unwrap(), u128::try_from(&z).unwrap()))
            .collect();
        for (y, z) in &got {
            let mut full: Vec<u128> = prefix.iter().map(|&v| v as u128).collect();
            full.extend([*y, *z]);
            assert!(is_solution(&full, k));
        }
        let lo = *prefix.last().unwrap() as u128;
        for y in lo..=400 {
            for z in y..=400 {
                let mut full: Vec<u128> = prefix.iter().map(|&v| v as u128).collect();
                full.extend([y, z]);
                if is_solution(&full, k) {
                    assert!(got.contains(&(y, z)), "missing {full:?}");
                }
            }
        }
    }
}

#[test]
fn deterministic_across_execution_and_completion() {
    let base = solver_u128(
        6,
        4,
        &SearchConfig {
            execution: Execution::Sequential,
            ..SearchConfig::default()
        },
    );
    for exec in [
        Execution::Parallel,
        Execution::ParallelWith { threads: 2 },
        Execution::ParallelWith { threads: 7 },
    ] {
        let cfg = SearchConfig {
            execution: exec,
            ..SearchConfig::default()
        };
        assert_eq!(solver_u128(6, 4, &cfg), base);
    }
    for (n, k) in [(5, 3), (5, 4), (6, 3)] {
        let div = solver_u128(n, k, &SearchConfig::default());
        let lin = solver_u128(
            n,
            k,
            &SearchConfig {
                completion: Completion::LinearLast,
                ..SearchConfig::default()
            },
        );
        assert_eq!(div, lin, "n = {n}, k = {k}");
    }
}

#[test]
fn every_solution_has_zero_residual() {
    for n in 2..=6 {
        for k in 0..n {
            if k == 0 && n > 2 {
                continue;
            }
            let set = enumerate(n, k).unwrap();
            assert!(set.complete);
            for s in &set.solutions {
                assert!(is_solution(&to_u128(s), k), "{s}");
            }
        }
    }
}
