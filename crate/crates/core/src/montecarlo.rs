//! Monte Carlo cross-check of the exact class probabilities.
//!
//! Dice are drawn uniformly from Q by picking a triangle of its
//! triangulation with probability proportional to its exact area, then a
//! uniform point in that triangle from two 64-bit draws (reflected when they
//! land in the far half of the parallelogram). Every face is a dyadic
//! rational `n / (L * 2^64)` held as an `i128` numerator, so dominance is
//! decided exactly and ties are detected soundly.
//!
//! The generator is ChaCha8 (`rand_chacha`), seeded with `seed_from_u64`;
//! worker `w` uses stream `w`. A report is therefore a pure function of
//! `(seed, trials, dice_count, workers)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::dice::{build_q, outcome_of_sign_sum, sign_sum, Die};
use crate::error::{Error, Result};
use crate::linalg::Rational;
use crate::tournaments::{
    classify3, classify4, tournament_from_pairwise, ProbabilityReport, TournamentClass3,
    TournamentClass4, TournamentOutcome,
};

const TWO_64: u128 = 1 << 64;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SamplerConfig {
    pub seed: u64,
    pub trials: u64,
    pub dice_count: usize,
    pub workers: usize,
}

impl SamplerConfig {
    pub fn new(seed: u64, trials: u64, dice_count: usize) -> Result<Self> {
        if trials == 0 {
            return Err(Error::InvalidIndex("trials must be at least 1".into()));
        }
        if !(3..=4).contains(&dice_count) {
            return Err(Error::InvalidIndex(format!("dice count {dice_count} not in 3..=4")));
        }
        Ok(SamplerConfig { seed, trials, dice_count, workers: 1 })
    }

    pub fn with_workers(mut self, workers: usize) -> Result<Self> {
        if workers == 0 {
            return Err(Error::InvalidIndex("workers must be at least 1".into()));
        }
        self.workers = workers;
        Ok(self)
    }

    /// Trials handled by worker `w`: an even split, remainder to the first
    /// workers.
    fn share(&self, w: usize) -> u64 {
        let n = self.workers as u64;
        self.trials / n + u64::from((w as u64) < self.trials % n)
    }
}

/// A triangle scaled by the common denominator `L`: corner `base` and edge
/// vectors, all integral.
#[derive(Clone, Debug)]
struct ScaledTriangle {
    base: [i128; 2],
    edge1: [i128; 2],
    edge2: [i128; 2],
}

/// Uniform sampler on Q.
#[derive(Clone, Debug)]
pub struct DieSampler {
    triangles: Vec<ScaledTriangle>,
    /// Triangle `k` is chosen when a uniform `u64` is below `thresholds[k]`.
    thresholds: Vec<u128>,
    /// `L`, even, clearing every vertex denominator.
    scale: i128,
}

impl DieSampler {
    pub fn new() -> Result<Self> {
        let simplices = build_q().vertex_enumerate()?.triangulate()?;
        let areas: Vec<Rational> = simplices.iter().map(|s| s.volume()).collect();
        let total: Rational = areas.iter().sum();

        let mut lcm = BigInt::from(2);
        for s in &simplices {
            for v in s.vertices() {
                for c in v.iter() {
                    lcm = lcm.lcm(c.denom());
                }
            }
        }
        let scale = lcm.to_i128().expect("small denominators");
        let scaled = |r: &Rational| -> i128 {
            (r * Rational::from(lcm.clone())).numer().to_i128().expect("small coordinates")
        };

        let triangles = simplices
            .iter()
            .map(|s| {
                let v = s.vertices();
                let p = |i: usize| [scaled(&v[i][0]), scaled(&v[i][1])];
                let (p0, p1, p2) = (p(0), p(1), p(2));
                ScaledTriangle {
                    base: p0,
                    edge1: [p1[0] - p0[0], p1[1] - p0[1]],
                    edge2: [p2[0] - p0[0], p2[1] - p0[1]],
                }
            })
            .collect();

        let mut cumulative = Rational::zero();
        let mut thresholds = Vec::with_capacity(areas.len());
        for (k, a) in areas.iter().enumerate() {
            cumulative += a;
            if k + 1 == areas.len() {
                thresholds.push(TWO_64);
                break;
            }
            // ceil(cumulative / total * 2^64): u < t  <=>  u / 2^64 < cumulative / total
            let x = (&cumulative * Rational::from(BigInt::one() << 64)).checked_div(&total)?;
            let ceil = -((-x.numer()).div_floor(x.denom()));
            thresholds.push(ceil.to_u128().expect("threshold within 2^64"));
        }
        Ok(DieSampler { triangles, thresholds, scale })
    }

    /// Common denominator `L * 2^64` of every sampled face.
    pub fn denominator(&self) -> BigInt {
        BigInt::from(self.scale) << 64
    }

    /// Sorted face numerators over `denominator()`.
    pub fn sample_scaled<R: RngCore>(&self, rng: &mut R) -> [i128; 3] {
        let pick = u128::from(rng.next_u64());
        let k = self.thresholds.iter().position(|&t| pick < t).unwrap_or(self.thresholds.len() - 1);
        let tri = &self.triangles[k];
        let mut u = u128::from(rng.next_u64());
        let mut v = u128::from(rng.next_u64());
        if u + v > TWO_64 {
            u = TWO_64 - u;
            v = TWO_64 - v;
        }
        let (u, v) = (u as i128, v as i128);
        let f = |i: usize| (tri.base[i] << 64) + tri.edge1[i] * u + tri.edge2[i] * v;
        let (f1, f2) = (f(0), f(1));
        let f3 = ((self.scale * 3 / 2) << 64) - f1 - f2;
        [f1, f2, f3]
    }

    pub fn sample_die<R: RngCore>(&self, rng: &mut R) -> Die {
        let den = self.denominator();
        let [a, b, c] = self.sample_scaled(rng).map(|n| Rational::new(n, den.clone()).unwrap());
        Die::new(a, b, c).expect("samples from Q are valid dice")
    }
}

/// Draws `k` dice and returns their tournament.
pub fn sample_tournament<R: RngCore>(sampler: &DieSampler, rng: &mut R, k: usize) -> TournamentOutcome {
    let mut dice = [[0i128; 3]; 4];
    for d in dice.iter_mut().take(k) {
        *d = sampler.sample_scaled(rng);
    }
    tournament_from_pairwise(k, |i, j| outcome_of_sign_sum(sign_sum(&dice[i], &dice[j])))
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct ClassEstimate {
    pub class: String,
    pub count: u64,
    pub frequency: f64,
    /// `sqrt(f (1 - f) / trials)`
    pub std_error: f64,
    pub exact: String,
    pub exact_decimal: f64,
    /// `(frequency - exact) / std_error`; absent when the standard error is 0.
    pub z_score: Option<f64>,
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct EstimateReport {
    pub seed: u64,
    pub trials: u64,
    pub dice_count: usize,
    pub workers: usize,
    pub ties: u64,
    pub classes: Vec<ClassEstimate>,
}

impl EstimateReport {
    pub fn class(&self, name: &str) -> Option<&ClassEstimate> {
        self.classes.iter().find(|c| c.class == name)
    }

    pub fn max_abs_z(&self) -> f64 {
        self.classes.iter().filter_map(|c| c.z_score).map(f64::abs).fold(0.0, f64::max)
    }
}

/// Class counts (in `TournamentClass3::ALL` / `TournamentClass4::ALL`
/// order) plus ties, for one worker.
fn run_worker(sampler: &DieSampler, config: &SamplerConfig, worker: usize) -> Result<(Vec<u64>, u64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(worker as u64);
    let k = config.dice_count;
    let mut counts = vec![0u64; if k == 3 { 2 } else { 4 }];
    let mut ties = 0;
    for _ in 0..config.share(worker) {
        match sample_tournament(sampler, &mut rng, k) {
            TournamentOutcome::Tie => ties += 1,
            TournamentOutcome::Tournament(t) => {
                let idx = if k == 3 {
                    let c = classify3(&t)?;
                    TournamentClass3::ALL.iter().position(|&x| x == c).unwrap()
                } else {
                    let c = classify4(&t)?;
                    TournamentClass4::ALL.iter().position(|&x| x == c).unwrap()
                };
                counts[idx] += 1;
            }
        }
    }
    Ok((counts, ties))
}

/// Simulates `config.trials` tuples of dice and compares class frequencies
/// against `exact`.
pub fn estimate(config: &SamplerConfig, exact: &ProbabilityReport) -> Result<EstimateReport> {
    let sampler = DieSampler::new()?;
    let parts: Vec<(Vec<u64>, u64)> = (0..config.workers)
        .into_par_iter()
        .map(|w| run_worker(&sampler, config, w))
        .collect::<Result<_>>()?;

    let mut counts = vec![0u64; parts[0].0.len()];
    let mut ties = 0;
    for (c, t) in parts {
        for (acc, x) in counts.iter_mut().zip(c) {
            *acc += x;
        }
        ties += t;
    }

    let targets: Vec<(&str, &Rational)> = if config.dice_count == 3 {
        TournamentClass3::ALL.iter().map(|&c| (c.name(), exact.class3(c))).collect()
    } else {
        TournamentClass4::ALL.iter().map(|&c| (c.name(), exact.class4(c))).collect()
    };
    let n = config.trials as f64;
    let classes = targets
        .into_iter()
        .zip(counts)
        .map(|((name, p), count)| {
            let frequency = count as f64 / n;
            let std_error = (frequency * (1.0 - frequency) / n).sqrt();
            let expected = p.to_f64();
            let z_score = (std_error > 0.0).then(|| (frequency - expected) / std_error);
            ClassEstimate {
                class: name.to_string(),
                count,
                frequency,
                std_error,
                exact: p.to_string(),
                exact_decimal: expected,
                z_score,
            }
        })
        .collect();

    Ok(EstimateReport {
        seed: config.seed,
        trials: config.trials,
        dice_count: config.dice_count,
        workers: config.workers,
        ties,
        classes,
    })
}
