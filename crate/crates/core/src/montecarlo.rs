//! Seeded Monte Carlo estimation of expected (absolute) length.
//!
//! Trial `k` draws its generators from a ChaCha8 stream keyed by
//! `(seed, k)`, so every draw is a pure function of `(seed, k, step)` and the
//! result does not depend on how trials are scheduled across threads.
//! Statistics are integers, so the sums are accumulated exactly.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::elements::{generators, identity, multiply, Gens, GroupElement, GroupSpec};
use crate::error::{Error, Result};
use crate::lengths::{statistic, Measure, Statistic};

#[derive(Debug, Clone, PartialEq)]
pub struct SimResult {
    pub mean: f64,
    /// Sample standard deviation over `√trials`.
    pub stderr: f64,
    pub trials: u64,
    pub seed: u64,
    pub spec: GroupSpec,
    pub gens: Gens,
    pub measure: Measure,
    pub t: u64,
}

/// The random stream of trial `k`.
pub fn trial_rng(seed: u64, k: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(k);
    rng
}

/// Indices (into the canonical generator order) drawn by trial `k`.
pub fn trial_draws(seed: u64, k: u64, t: u64, generator_count: usize) -> Vec<usize> {
    let mut rng = trial_rng(seed, k);
    (0..t)
        .map(|_| rng.random_range(0..generator_count))
        .collect()
}

struct Sampler {
    gens: Vec<GroupElement>,
    start: GroupElement,
    stat: Statistic,
}

impl Sampler {
    fn new(spec: &GroupSpec, gens: Gens, measure: Measure) -> Result<Self> {
        let gen_elems = generators(spec, gens)?;
        if gen_elems.is_empty() {
            return Err(Error::InvalidRank(format!(
                "{spec} has no {gens} generators"
            )));
        }
        Ok(Sampler {
            gens: gen_elems,
            start: identity(spec)?,
            stat: statistic(spec, measure)?,
        })
    }

    fn trial(&self, seed: u64, k: u64, t: u64) -> u64 {
        let mut rng = trial_rng(seed, k);
        let mut w = self.start.clone();
        for _ in 0..t {
            let g = &self.gens[rng.random_range(0..self.gens.len())];
            w = multiply(&w, g).expect("generators belong to the group");
        }
        (self.stat)(&w)
    }
}

/// Mean of `measure` over `trials` independent walks of length `t`, using
/// rayon's global pool.
pub fn simulate(
    spec: &GroupSpec,
    gens: Gens,
    measure: Measure,
    t: u64,
    trials: u64,
    seed: u64,
) -> Result<SimResult> {
    simulate_with_threads(spec, gens, measure, t, trials, seed, None)
}

/// As [`simulate`], on a dedicated pool of `threads` workers when given.
pub fn simulate_with_threads(
    spec: &GroupSpec,
    gens: Gens,
    measure: Measure,
    t: u64,
    trials: u64,
    seed: u64,
    threads: Option<usize>,
) -> Result<SimResult> {
    if trials < 2 {
        return Err(Error::InvalidSpec(format!(
            "need at least 2 trials, got {trials}"
        )));
    }
    let model = spec.element_model()?;
    let sampler = Sampler::new(&model, gens, measure)?;
    let run = || -> (u128, u128) {
        (0..trials)
            .into_par_iter()
            .map(|k| {
                let x = sampler.trial(seed, k, t) as u128;
                (x, x * x)
            })
            .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1))
    };
    let (sum, sum_sq) = match threads {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| Error::Unsupported(format!("thread pool: {e}")))?
            .install(run),
        None => run(),
    };
    let n = trials as f64;
    let mean = sum as f64 / n;
    // trials·Σx² − (Σx)², exact while it fits
    let spread = (trials as u128)
        .checked_mul(sum_sq)
        .and_then(|a| sum.checked_mul(sum).map(|b| a - b));
    let variance = match spread {
        Some(s) => s as f64 / (n * (n - 1.0)),
        None => (sum_sq as f64 - sum as f64 * mean) / (n - 1.0),
    };
    Ok(SimResult {
        mean,
        stderr: (variance.max(0.0) / n).sqrt(),
        trials,
        seed,
        spec: *spec,
        gens,
        measure,
        t,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closedform::{expected_abslength_i2_t, expected_length_a_t};
    use crate::rational::to_f64;

    #[test]
    fn deterministic_walk_has_zero_error() {
        let spec = GroupSpec::b(1).unwrap();
        let res = simulate(&spec, Gens::AllReflections, Measure::Length, 1, 50, 9).unwrap();
        assert_eq!(res.mean, 1.0);
        assert_eq!(res.stderr, 0.0);
    }

    #[test]
    fn matches_type_a_closed_form() {
        let spec = GroupSpec::a(10).unwrap();
        let res = simulate(&spec, Gens::AllReflections, Measure::Length, 5, 100_000, 1).unwrap();
        let exact = to_f64(&expected_length_a_t(10, 5).unwrap());
        assert!(
            (res.mean - exact).abs() < 4.0 * res.stderr,
            "{} vs {exact} ± {}",
            res.mean,
            res.stderr
        );
    }

    #[test]
    fn matches_dihedral_abslength() {
        let spec = GroupSpec::i2(7).unwrap();
        let res = simulate(
            &spec,
            Gens::AllReflections,
            Measure::AbsLength,
            4,
            100_000,
            3,
        )
        .unwrap();
        let exact = to_f64(&expected_abslength_i2_t(7, 4).unwrap());
        assert!((res.mean - exact).abs() < 4.0 * res.stderr);
    }

    #[test]
    fn reproducible_across_thread_counts() {
        let spec = GroupSpec::d(4).unwrap();
        let one = simulate_with_threads(
            &spec,
            Gens::AllReflections,
            Measure::Length,
            6,
            5_000,
            42,
            Some(1),
        )
        .unwrap();
        let four = simulate_with_threads(
            &spec,
            Gens::AllReflections,
            Measure::Length,
            6,
            5_000,
            42,
            Some(4),
        )
        .unwrap();
        assert_eq!(one.mean.to_bits(), four.mean.to_bits());
        assert_eq!(one.stderr.to_bits(), four.stderr.to_bits());
        let other = simulate_with_threads(
            &spec,
            Gens::AllReflections,
            Measure::Length,
            6,
            5_000,
            43,
            Some(4),
        )
        .unwrap();
        assert_ne!(one.mean, other.mean);
    }

    #[test]
    fn first_step_is_uniform() {
        // chi-square with 5 degrees of freedom; 20.515 is the 0.999 quantile
        let counts = (0..100_000u64).fold([0u64; 6], |mut acc, k| {
            acc[trial_draws(5, k, 1, 6)[0]] += 1;
            acc
        });
        let expected = 100_000.0 / 6.0;
        let chi2: f64 = counts
            .iter()
            .map(|&c| (c as f64 - expected).powi(2) / expected)
            .sum();
        assert!(chi2 < 20.515, "chi2 = {chi2}");
    }

    #[test]
    fn rejects_too_few_trials() {
        let spec = GroupSpec::a(3).unwrap();
        assert!(simulate(&spec, Gens::AllReflections, Measure::Length, 1, 1, 0).is_err());
    }
}
