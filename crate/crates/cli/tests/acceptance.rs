//! Acceptance suite. Each test covers one release criterion at its stated
//! tolerance and prints one PASS line (visible with `--nocapture`).
//!
//! Run with: `cargo test -p incant-cli --test acceptance`

use incant_cli::format::CircuitFile;
use incant_core::expansion::{
    brute_force_optimal, expansion_cost, standard_expansion, CostModel, Sign, SignedTerm,
};
use incant_core::sim::{
    check_diagonal_equiv, circuit_unitary, oracle_entangler_permutation,
    oracle_multicontrolled_permutation, Permutation, StateVector,
};
use incant_core::synthesis::{
    cancel_adjacent, lower_multicontrolled, synth_block, synth_cinc, synth_diagonal, DiagonalSpec,
    ExpansionStrategy, MultiControlledInc, PhaseBlock, PhaseRun,
};
use incant_core::{Circuit, DitString, QuditParams};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn params(d: u32, n: u32) -> QuditParams {
    QuditParams::new(d, n).unwrap()
}

fn pass(line: &str) {
    println!("{line}: PASS");
}

fn composed_oracle(gates: &[MultiControlledInc], p: QuditParams) -> Permutation {
    let dim = (p.dimension() as usize) * p.d() as usize;
    gates.iter().fold(Permutation::identity(dim), |acc, g| {
        acc.then(&oracle_multicontrolled_permutation(g, p).unwrap())
    })
}

fn random_spec(rng: &mut ChaCha8Rng, p: QuditParams, max_runs: usize) -> DiagonalSpec {
    let dim = p.dimension();
    let r = rng.gen_range(1..=max_runs.min(dim as usize));
    let mut cuts: Vec<u64> = Vec::new();
    while cuts.len() < r - 1 {
        let cut = rng.gen_range(1..dim);
        if !cuts.contains(&cut) {
            cuts.push(cut);
        }
    }
    cuts.sort_unstable();
    cuts.push(dim);
    let mut runs = Vec::with_capacity(r);
    let mut previous = 0u64;
    let mut last_theta: Option<f64> = None;
    for cut in cuts {
        let theta = loop {
            let t = rng.gen_range(-3.0..3.0);
            match last_theta {
                Some(prev) if (Complex64::cis(t - prev) - 1.0).norm() <= 1e-6 => continue,
                _ => break t,
            }
        };
        last_theta = Some(theta);
        runs.push(PhaseRun {
            phase: Complex64::cis(theta),
            length: cut - previous,
        });
        previous = cut;
    }
    DiagonalSpec::new(p, runs).unwrap()
}

/// Criterion 1: for every register in the sweep and every l, the
/// multi-controlled gate list multiplies to exactly the entangler oracle,
/// for both the standard and the greedy expansion.
#[test]
fn criterion_1_entangler_oracle_equivalence() {
    let sweep: Vec<(u32, u32)> = (1..=4)
        .map(|n| (2u32, n))
        .chain((1..=4).map(|n| (3u32, n)))
        .chain((1..=3).map(|n| (4u32, n)))
        .chain((1..=4).map(|n| (5u32, n)))
        .collect();
    for (d, n) in sweep {
        let p = params(d, n);
        for l in 1..=p.dimension() {
            let expected = oracle_entangler_permutation(l, p).unwrap();
            for strategy in [ExpansionStrategy::Standard, ExpansionStrategy::Greedy] {
                let e = strategy.expand(l, d, n).unwrap();
                let gates = synth_cinc(l, &e).unwrap();
                assert_eq!(
                    composed_oracle(&gates, p),
                    expected,
                    "entangler mismatch at d={d} n={n} l={l} {strategy:?}"
                );
            }
        }
    }
    pass("criterion 1 (entangler oracle equivalence, exact)");
}

/// Criterion 2: the exhaustive optimum for l=7 on three qubits costs 3
/// control levels via -2^0 + 2^3, against 6 for the standard expansion.
#[test]
fn criterion_2_qubit_example_regression() {
    let best = brute_force_optimal(7, 2, 3, CostModel::ControlLevels).unwrap();
    assert_eq!(
        best.terms,
        vec![SignedTerm::new(Sign::Neg, 0), SignedTerm::new(Sign::Pos, 3),]
    );
    assert_eq!(expansion_cost(&best).unwrap().control_levels, 3);
    let standard = standard_expansion(7, 2, 3).unwrap();
    assert_eq!(expansion_cost(&standard).unwrap().control_levels, 6);
    pass("criterion 2 (l=7, d=2, n=3 optimum, exact)");
}

/// Criterion 3: the exhaustive optimum for l=14 on four ququints costs 12
/// control levels via -5^0 - 2*5^1 + 5^2 against 22 standard, and the emitted
/// gates carry exactly the expected control values.
#[test]
fn criterion_3_ququint_example_regression() {
    let best = brute_force_optimal(14, 5, 4, CostModel::ControlLevels).unwrap();
    assert_eq!(
        best.terms,
        vec![
            SignedTerm::new(Sign::Neg, 0),
            SignedTerm::new(Sign::Neg, 1),
            SignedTerm::new(Sign::Neg, 1),
            SignedTerm::new(Sign::Pos, 2),
        ]
    );
    assert_eq!(expansion_cost(&best).unwrap().control_levels, 12);
    let standard = standard_expansion(14, 5, 4).unwrap();
    assert_eq!(expansion_cost(&standard).unwrap().control_levels, 22);

    let gates = synth_cinc(14, &best).unwrap();
    let controls: Vec<Vec<u32>> = gates
        .iter()
        .map(|g| g.control_values.digits().to_vec())
        .collect();
    assert_eq!(
        controls,
        vec![vec![4, 4, 2, 0], vec![4, 4, 1], vec![4, 4, 0], vec![4, 4],]
    );
    assert_eq!(
        gates.iter().map(|g| g.sign).collect::<Vec<_>>(),
        vec![Sign::Neg, Sign::Neg, Sign::Neg, Sign::Pos]
    );
    pass("criterion 3 (l=14, d=5, n=4 optimum, exact)");
}

/// Criterion 4: lowering a gate with c controls emits exactly 2c-3
/// two-control gates on exactly c-2 ladder ancillas for 3 <= c <= 8, and the
/// simulated fragment matches the oracle with all ancillas restored.
#[test]
fn criterion_4_ladder_accounting() {
    // Count check across control widths and dimensions.
    for d in [2u32, 3, 5] {
        for c in 3u32..=8 {
            let p = params(d, c);
            let value = (p.dimension() - 1) / 2;
            let mc = MultiControlledInc {
                control_values: DitString::from_value(value, d, c as usize).unwrap(),
                m: 0,
                sign: Sign::Pos,
            };
            let pool = p.data_wires() + 1..p.data_wires() + 1 + p.ladder_pool_size();
            let gates = lower_multicontrolled(&mc, p, pool).unwrap();
            let two_control = gates.iter().filter(|g| g.control_count() == 2).count();
            assert_eq!(two_control as u32, 2 * c - 3, "d={d} c={c}");
            let mut ladders: Vec<usize> = gates
                .iter()
                .flat_map(|g| g.wires())
                .filter(|&w| w > p.data_wires())
                .collect();
            ladders.sort_unstable();
            ladders.dedup();
            assert_eq!(ladders.len() as u32, c - 2, "d={d} c={c}");
        }
    }

    // Simulation check: every basis input maps exactly as the oracle says and
    // leaves the ladder ancillas at zero.
    let one = Complex64::new(1.0, 0.0);
    for d in [2u32, 3] {
        for c in [3u32, 4] {
            let p = params(d, c);
            let pool = p.data_wires() + 1..p.data_wires() + 1 + p.ladder_pool_size();
            let wires = p.data_wires() + 1 + p.ladder_pool_size();
            let ancilla_space = (d as usize).pow(p.ladder_pool_size() as u32);
            for value in [0, p.dimension() - 1, p.dimension() / 2] {
                for sign in [Sign::Pos, Sign::Neg] {
                    let mc = MultiControlledInc {
                        control_values: DitString::from_value(value, d, c as usize).unwrap(),
                        m: 0,
                        sign,
                    };
                    let gates = lower_multicontrolled(&mc, p, pool.clone()).unwrap();
                    let oracle = oracle_multicontrolled_permutation(&mc, p).unwrap();
                    for index in 0..oracle.dim() {
                        let output = StateVector::basis(d, wires, index * ancilla_space)
                            .unwrap()
                            .apply_all(&gates)
                            .unwrap();
                        let expected = oracle.image(index) * ancilla_space;
                        for (k, amp) in output.amplitudes().iter().enumerate() {
                            let want = if k == expected {
                                one
                            } else {
                                Complex64::default()
                            };
                            assert_eq!(*amp, want, "d={d} c={c} basis={index}");
                        }
                    }
                }
            }
        }
    }
    pass("criterion 4 (2c-3 ladder gates, c-2 ancillas, exact simulation)");
}

/// Criterion 5: 200 random diagonals across the sweep, all three strategies,
/// with and without cancellation, verify within 1e-10 and leak nothing above
/// 1e-12.
#[test]
fn criterion_5_end_to_end_synthesis() {
    let sweep = [(2u32, 1u32), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (5, 2)];
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE);
    for case in 0..200 {
        let (d, n) = sweep[case % sweep.len()];
        let p = params(d, n);
        let spec = random_spec(&mut rng, p, 5);
        for strategy in [
            ExpansionStrategy::Standard,
            ExpansionStrategy::Greedy,
            ExpansionStrategy::BruteForce,
        ] {
            for cancel in [false, true] {
                let circuit = synth_diagonal(&spec, strategy, cancel).unwrap();
                let report = check_diagonal_equiv(&circuit, &spec, 1e-10).unwrap();
                assert!(
                    report.passed,
                    "case {case} d={d} n={n} {strategy:?} cancel={cancel}: {report:?}"
                );
                assert!(
                    report.max_leakage <= 1e-12,
                    "ancilla leakage {:.3e} in case {case}",
                    report.max_leakage
                );
            }
        }
    }
    pass("criterion 5 (200 random diagonals, tol 1e-10, leakage <= 1e-12)");
}

/// Criterion 6: for l = d^n - 1 the standard expansion costs exactly
/// (d-1) * n(n+1)/2 control levels.
#[test]
fn criterion_6_worst_case_control_levels() {
    for d in [2u32, 3, 5] {
        for n in 1u32..=4 {
            let l = (d as u64).pow(n) - 1;
            if l == 0 {
                // d=2, n=1 has no l = d^n - 1 >= 1 edge beyond l=1.
                continue;
            }
            let cost = expansion_cost(&standard_expansion(l, d, n).unwrap()).unwrap();
            let expected = (d as u64 - 1) * (n as u64) * (n as u64 + 1) / 2;
            assert_eq!(cost.control_levels, expected, "d={d} n={n}");
        }
    }
    pass("criterion 6 (worst-case control levels, exact)");
}

/// Criterion 7: a synthesized diagonal with r runs contains exactly r-1
/// phase gates.
#[test]
fn criterion_7_phase_gate_sparsity() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
    for (d, n) in [(2u32, 3u32), (3, 2), (5, 1), (5, 2)] {
        let p = params(d, n);
        for _ in 0..10 {
            let spec = random_spec(&mut rng, p, 5);
            for cancel in [false, true] {
                let circuit = synth_diagonal(&spec, ExpansionStrategy::Greedy, cancel).unwrap();
                assert_eq!(
                    circuit.counts().phase,
                    spec.run_count() as u64 - 1,
                    "d={d} n={n} runs={}",
                    spec.run_count()
                );
            }
        }
    }
    pass("criterion 7 (r-1 phase gates per r-run diagonal)");
}

/// Criterion 8: cancellation across an identical entangler boundary strictly
/// shrinks the circuit and preserves the unitary.
#[test]
fn criterion_8_boundary_cancellation() {
    let p = params(2, 3);
    let mut circuit = Circuit::new(p, 1 + p.ladder_pool_size());
    for theta in [0.8, -1.3] {
        let block = PhaseBlock {
            ratio: Complex64::cis(theta),
            l: 7,
        };
        circuit
            .extend(synth_block(&block, p, ExpansionStrategy::Greedy).unwrap())
            .unwrap();
    }
    let cancelled = cancel_adjacent(&circuit);
    assert!(
        cancelled.len() < circuit.len(),
        "no cancellation happened: {} -> {}",
        circuit.len(),
        cancelled.len()
    );
    let before = circuit_unitary(&circuit).unwrap();
    let after = circuit_unitary(&cancelled).unwrap();
    assert!(before.max_abs_diff(&after) <= 1e-12);
    pass("criterion 8 (boundary cancellation shrinks, unitary unchanged)");
}

/// Criterion 9: 100 synthesized circuits round-trip bit-exactly through the
/// circuit file format, both at the circuit and at the byte level.
#[test]
fn criterion_9_serialization_round_trip() {
    let sweep = [(2u32, 2u32), (2, 3), (3, 1), (3, 2), (5, 1)];
    let mut rng = ChaCha8Rng::seed_from_u64(0xF11E);
    for case in 0..100 {
        let (d, n) = sweep[case % sweep.len()];
        let p = params(d, n);
        let spec = random_spec(&mut rng, p, 4);
        let circuit = synth_diagonal(&spec, ExpansionStrategy::Greedy, case % 2 == 0).unwrap();

        let file = CircuitFile::from_circuit(&circuit);
        let text = file.to_json();
        let parsed: CircuitFile = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed, file, "file-level mismatch in case {case}");
        assert_eq!(parsed.to_json(), text, "byte-level mismatch in case {case}");

        let restored = parsed.to_circuit().unwrap();
        assert_eq!(restored, circuit, "circuit-level mismatch in case {case}");
    }
    pass("criterion 9 (100 circuits round-trip bit-exactly)");
}
