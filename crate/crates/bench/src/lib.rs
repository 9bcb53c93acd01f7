//! Input generators shared by the benchmark targets.

use incant_core::synthesis::{DiagonalSpec, PhaseRun};
use incant_core::QuditParams;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Deterministic random diagonal with up to `max_runs` runs.
pub fn random_spec(seed: u64, params: QuditParams, max_runs: usize) -> DiagonalSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = params.dimension();
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
    DiagonalSpec::new(params, runs).expect("generated runs are valid")
}

/// The two-run qubit showcase: 62 unit entries followed by two rotated ones.
pub fn qubit_showcase() -> DiagonalSpec {
    let params = QuditParams::new(2, 6).unwrap();
    DiagonalSpec::new(
        params,
        vec![
            PhaseRun {
                phase: Complex64::new(1.0, 0.0),
                length: 62,
            },
            PhaseRun {
                phase: Complex64::cis(std::f64::consts::FRAC_PI_4),
                length: 2,
            },
        ],
    )
    .unwrap()
}
