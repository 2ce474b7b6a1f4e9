//! Seeded experiments: the random-subset baseline, the Bernoulli recovery
//! simulation, and a synthetic exam-score generator.
//!
//! Every trial draws from its own ChaCha8 stream (`seed` selects the key,
//! the trial index selects the stream), so trials are independent, can run
//! in parallel, and reproduce bit-for-bit for a given seed.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Bernoulli, Distribution, Normal, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dataset::{CharacterColumn, Dataset};
use crate::decompose::decompose_positions;
use crate::error::{Error, Result};
use crate::soo::{soo_rank, SooRanking};
use crate::vector::NumericVector;

/// Identity of the random generator, echoed in every report.
pub const GENERATOR: &str = "rand_chacha 0.9 ChaCha8Rng; key = seed_from_u64(seed), stream = trial index";

pub const DEFAULT_SEED: u64 = 20_090_801;

fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaselineConfig {
    pub subset_size: usize,
    pub trials: usize,
    pub seed: u64,
}

impl Default for BaselineConfig {
    fn default() -> Self {
        Self {
            subset_size: 10,
            trials: 300,
            seed: DEFAULT_SEED,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BaselineReport {
    pub config: BaselineConfig,
    pub generator: String,
    pub total_variance: f64,
    /// Character names of each sampled subset, in column order.
    pub subsets: Vec<Vec<String>>,
    /// `‖X − E_π(X)‖²` for each sampled subset.
    pub residuals: Vec<f64>,
    pub soo_subset: Vec<String>,
    pub soo_residual: f64,
    pub min_random: Option<f64>,
}

impl BaselineReport {
    fn fraction(&self, value: f64) -> Result<f64> {
        if self.total_variance <= 0.0 {
            return Err(Error::ZeroVariance);
        }
        Ok(value / self.total_variance)
    }

    pub fn residual_fractions(&self) -> Result<Vec<f64>> {
        self.residuals.iter().map(|&r| self.fraction(r)).collect()
    }

    pub fn soo_fraction(&self) -> Result<f64> {
        self.fraction(self.soo_residual)
    }

    /// Linearly interpolated percentile of the random residuals, `q` in `[0, 100]`.
    pub fn percentile(&self, q: f64) -> Option<f64> {
        percentile(&self.residuals, q)
    }

    /// Share of random subsets whose residual is at or below the SOO residual.
    pub fn rank_of_soo(&self) -> Option<f64> {
        if self.residuals.is_empty() {
            return None;
        }
        let below = self.residuals.iter().filter(|&&r| r <= self.soo_residual).count();
        Some(below as f64 / self.residuals.len() as f64)
    }
}

pub fn percentile(values: &[f64], q: f64) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let rank = (q / 100.0).clamp(0.0, 1.0) * (sorted.len() - 1) as f64;
    let lo = rank.floor() as usize;
    let hi = rank.ceil() as usize;
    Some(sorted[lo] + (sorted[hi] - sorted[lo]) * (rank - lo as f64))
}

/// Residuals of `trials` uniformly drawn `k`-subsets of characters, next to
/// the residual of the first `k` characters chosen greedily.
pub fn random_subset_baseline(d: &Dataset, cfg: &BaselineConfig) -> Result<BaselineReport> {
    let n = d.characters().len();
    if cfg.subset_size == 0 || cfg.subset_size > n {
        return Err(Error::InvalidConfig(format!(
            "subset size {} must be between 1 and the number of characters ({n})",
            cfg.subset_size
        )));
    }
    let x = d.target();
    let sampled = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(cfg.seed, trial as u64);
            let mut positions = index::sample(&mut rng, n, cfg.subset_size).into_vec();
            positions.sort_unstable();
            let projection = d.joint_partition(&positions)?.conditional_mean(x)?;
            let residual = x.distance_sq(&projection)?;
            let names = positions
                .iter()
                .map(|&i| d.characters()[i].name().to_owned())
                .collect();
            Ok((names, residual))
        })
        .collect::<Result<Vec<(Vec<String>, f64)>>>()?;
    let (subsets, residuals): (Vec<_>, Vec<_>) = sampled.into_iter().unzip();

    let soo = soo_rank(d, Some(cfg.subset_size))?;
    let min_random = residuals.iter().copied().reduce(f64::min);
    Ok(BaselineReport {
        config: *cfg,
        generator: GENERATOR.to_owned(),
        total_variance: x.variance(),
        subsets,
        residuals,
        soo_subset: soo.order,
        soo_residual: soo.result.final_residual,
        min_random,
    })
}

/// Residual `‖X − E_π(X)‖²` for the product partition of the named characters.
pub fn subset_residual<S: AsRef<str>>(d: &Dataset, names: &[S]) -> Result<f64> {
    let positions = d.positions(names)?;
    Ok(decompose_positions(d, &positions)?.final_residual)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationConfig {
    pub num_characters: usize,
    pub population: usize,
    pub coefficients: Vec<f64>,
    pub noise_sd: f64,
    pub bernoulli_p: f64,
    pub trials: usize,
    pub seed: u64,
}

impl Default for SimulationConfig {
    /// Ten characters with coefficients 1.0, 0.9, …, 0.1 over 100 individuals,
    /// noise sd 0.03, 20 trials.
    fn default() -> Self {
        Self {
            num_characters: 10,
            population: 100,
            coefficients: (0..10).map(|i| f64::from(10 - i) / 10.0).collect(),
            noise_sd: 0.03,
            bernoulli_p: 0.5,
            trials: 20,
            seed: DEFAULT_SEED,
        }
    }
}

impl SimulationConfig {
    pub fn validate(&self) -> Result<()> {
        let invalid = |msg: String| Err(Error::InvalidConfig(msg));
        if self.num_characters == 0 {
            return invalid("at least one character is required".into());
        }
        if self.population == 0 {
            return invalid("population must be positive".into());
        }
        if self.coefficients.len() != self.num_characters {
            return invalid(format!(
                "{} coefficients given for {} characters",
                self.coefficients.len(),
                self.num_characters
            ));
        }
        if self.coefficients.iter().any(|c| !c.is_finite()) {
            return invalid("coefficients must be finite".into());
        }
        if !(self.noise_sd >= 0.0 && self.noise_sd.is_finite()) {
            return invalid(format!(
                "noise sd {} must be finite and nonnegative",
                self.noise_sd
            ));
        }
        if !(self.bernoulli_p > 0.0 && self.bernoulli_p < 1.0) {
            return invalid(format!("bernoulli p {} must lie in (0, 1)", self.bernoulli_p));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationReport {
    pub config: SimulationConfig,
    pub generator: String,
    /// Greedy order of each trial as 1-based coefficient indices.
    pub per_trial_orders: Vec<Vec<usize>>,
    pub exact_matches: usize,
    pub one_inversion: usize,
}

/// True when `order` is `1, 2, …, n`.
pub fn is_identity(order: &[usize]) -> bool {
    order.iter().enumerate().all(|(i, &o)| o == i + 1)
}

/// True when `order` is `1, …, n` with exactly one adjacent pair swapped.
pub fn is_single_adjacent_swap(order: &[usize]) -> bool {
    let wrong: Vec<usize> = (0..order.len()).filter(|&i| order[i] != i + 1).collect();
    matches!(wrong.as_slice(), &[i, j] if j == i + 1 && order[i] == j + 1 && order[j] == i + 1)
}

/// The dataset of one simulation trial: `num_characters` Bernoulli columns
/// named `x1, x2, …` and target `Σ c_i x_i + ε`.
pub fn simulation_dataset(cfg: &SimulationConfig, trial: usize) -> Result<Dataset> {
    cfg.validate()?;
    let mut rng = trial_rng(cfg.seed, trial as u64);
    let coin = Bernoulli::new(cfg.bernoulli_p).map_err(|e| Error::InvalidConfig(e.to_string()))?;
    let noise = Normal::new(0.0, cfg.noise_sd).map_err(|e| Error::InvalidConfig(e.to_string()))?;

    let columns: Vec<Vec<bool>> = (0..cfg.num_characters)
        .map(|_| (0..cfg.population).map(|_| coin.sample(&mut rng)).collect())
        .collect();
    let target = (0..cfg.population)
        .map(|i| {
            let signal: f64 = columns
                .iter()
                .zip(&cfg.coefficients)
                .filter(|(col, _)| col[i])
                .map(|(_, c)| c)
                .sum();
            signal + noise.sample(&mut rng)
        })
        .collect();
    let characters = columns
        .iter()
        .enumerate()
        .map(|(j, col)| {
            let codes = col.iter().map(|&b| if b { "1" } else { "0" }).collect();
            CharacterColumn::new(format!("x{}", j + 1), codes)
        })
        .collect::<Result<_>>()?;
    Dataset::new(NumericVector::new(target)?, characters)
}

/// Runs one trial and returns the greedy ranking of its characters.
pub fn simulation_trial(cfg: &SimulationConfig, trial: usize) -> Result<SooRanking> {
    soo_rank(&simulation_dataset(cfg, trial)?, None)
}

pub fn simulate_soo_recovery(cfg: &SimulationConfig) -> Result<SimulationReport> {
    cfg.validate()?;
    let per_trial_orders = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| {
            let d = simulation_dataset(cfg, trial)?;
            let ranking = soo_rank(&d, None)?;
            ranking
                .order
                .iter()
                .map(|name| d.position(name).map(|p| p + 1))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let exact_matches = per_trial_orders.iter().filter(|o| is_identity(o)).count();
    let one_inversion = per_trial_orders
        .iter()
        .filter(|o| is_single_adjacent_swap(o))
        .count();
    Ok(SimulationReport {
        config: cfg.clone(),
        generator: GENERATOR.to_owned(),
        per_trial_orders,
        exact_matches,
        one_inversion,
    })
}

/// Synthetic exam results: `num_questions` right/wrong characters `Q1, Q2, …`
/// and target the number of correct answers.
///
/// Each student has a standard normal ability; question difficulties are
/// evenly spaced over `[-difficulty_spread, difficulty_spread]`, and a
/// student answers correctly with probability `logistic(ability − difficulty)`.
pub fn generate_exam_like(
    num_questions: usize,
    population: usize,
    difficulty_spread: f64,
    seed: u64,
) -> Result<Dataset> {
    if num_questions == 0 || population == 0 {
        return Err(Error::InvalidConfig(
            "need at least one question and one student".into(),
        ));
    }
    if !difficulty_spread.is_finite() {
        return Err(Error::InvalidConfig("difficulty spread must be finite".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let difficulty = |j: usize| {
        if num_questions == 1 {
            0.0
        } else {
            difficulty_spread * (2.0 * j as f64 / (num_questions - 1) as f64 - 1.0)
        }
    };
    let mut answers = vec![Vec::with_capacity(population); num_questions];
    let mut scores = Vec::with_capacity(population);
    for _ in 0..population {
        let ability: f64 = StandardNormal.sample(&mut rng);
        let mut score = 0.0;
        for (j, column) in answers.iter_mut().enumerate() {
            let p = 1.0 / (1.0 + (difficulty(j) - ability).exp());
            let correct = rng.random::<f64>() < p;
            score += f64::from(u8::from(correct));
            column.push(if correct { "1" } else { "0" });
        }
        scores.push(score);
    }
    let characters = answers
        .into_iter()
        .enumerate()
        .map(|(j, codes)| CharacterColumn::new(format!("Q{}", j + 1), codes))
        .collect::<Result<_>>()?;
    Dataset::new(NumericVector::new(scores)?, characters)
}
