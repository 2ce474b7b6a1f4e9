//! Stepwise optimal ordering: greedy ranking of characters by explained variance.
//!
//! The first character is the one maximizing `‖E_1 − E_0‖²`. With `k`
//! characters chosen, the next is the one whose refinement of `π_k` makes
//! `‖E_{k+1} − E_k‖²` largest. Since `‖E_{k+1} − E_k‖² + ‖X − E_{k+1}‖²` is
//! the same for every candidate, this also minimizes the next residual.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dataset::{refine, Dataset};
use crate::decompose::{DecompositionResult, DecompositionStep};
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::vector::NumericVector;

/// Increments within this relative distance of each other are ties; the
/// character earlier in column order wins.
pub const TIE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Candidate {
    pub character: String,
    /// `‖E_{k+1} − E_k‖²` if this character were chosen.
    pub increment: f64,
    /// `‖X − E_{k+1}‖²` if this character were chosen.
    pub residual: f64,
    pub classes: usize,
}

/// All candidates evaluated at one step, in column order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceStep {
    pub candidates: Vec<Candidate>,
    pub chosen: usize,
}

impl TraceStep {
    pub fn chosen(&self) -> &Candidate {
        &self.candidates[self.chosen]
    }

    /// Indices of candidates whose increment is within `tol` of the maximum.
    pub fn argmax_increment(&self, tol: f64) -> Vec<usize> {
        let best = self
            .candidates
            .iter()
            .map(|c| c.increment)
            .fold(f64::NEG_INFINITY, f64::max);
        self.indices_where(|c| c.increment >= best - tol)
    }

    /// Indices of candidates whose residual is within `tol` of the minimum.
    pub fn argmin_residual(&self, tol: f64) -> Vec<usize> {
        let best = self
            .candidates
            .iter()
            .map(|c| c.residual)
            .fold(f64::INFINITY, f64::min);
        self.indices_where(|c| c.residual <= best + tol)
    }

    /// The chosen increment is at least every other candidate's, up to the tie tolerance.
    pub fn is_dominant(&self) -> bool {
        let chosen = self.chosen().increment;
        self.candidates.iter().all(|c| !beats(c.increment, chosen))
    }

    fn indices_where(&self, keep: impl Fn(&Candidate) -> bool) -> Vec<usize> {
        self.candidates
            .iter()
            .enumerate()
            .filter(|(_, c)| keep(c))
            .map(|(i, _)| i)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SooRanking {
    pub order: Vec<String>,
    pub result: DecompositionResult,
    pub trace: Vec<TraceStep>,
    /// Set when `V(X) = 0`: every increment is zero and the order is just column order.
    pub degenerate: bool,
}

impl SooRanking {
    pub fn residual_curve(&self) -> Result<Vec<f64>> {
        self.result.residual_fractions()
    }
}

/// `c_k = ‖X − E_k‖² / V(X)` along the ranking.
pub fn residual_curve(r: &SooRanking) -> Result<Vec<f64>> {
    r.residual_curve()
}

fn beats(challenger: f64, incumbent: f64) -> bool {
    challenger > incumbent + TIE_TOLERANCE * challenger.abs().max(incumbent.abs())
}

struct Evaluated {
    position: usize,
    partition: Partition,
    projection: NumericVector,
    increment: f64,
    residual: f64,
}

/// Greedy ranking of the dataset's characters, `max_steps` of them (default all).
pub fn soo_rank(d: &Dataset, max_steps: Option<usize>) -> Result<SooRanking> {
    let available = d.characters().len();
    if available == 0 {
        return Err(Error::NoCharacters);
    }
    let steps = max_steps.unwrap_or(available);
    if steps > available {
        return Err(Error::TooManySteps {
            requested: steps,
            available,
        });
    }

    let x = d.target();
    let total_variance = x.variance();
    let mut partition = Partition::trivial(d.len())?;
    let mut current = partition.conditional_mean(x)?;
    let mut remaining: Vec<usize> = (0..available).collect();
    let mut order = Vec::with_capacity(steps);
    let mut decomposition = Vec::with_capacity(steps);
    let mut trace = Vec::with_capacity(steps);

    for _ in 0..steps {
        let evaluated = remaining
            .par_iter()
            .map(|&position| {
                let refined = refine(&partition, &d.characters()[position])?;
                let projection = refined.conditional_mean(x)?;
                Ok(Evaluated {
                    position,
                    increment: projection.distance_sq(&current)?,
                    residual: x.distance_sq(&projection)?,
                    partition: refined,
                    projection,
                })
            })
            .collect::<Result<Vec<_>>>()?;

        let mut chosen = 0;
        for (i, e) in evaluated.iter().enumerate().skip(1) {
            if beats(e.increment, evaluated[chosen].increment) {
                chosen = i;
            }
        }

        trace.push(TraceStep {
            candidates: evaluated
                .iter()
                .map(|e| Candidate {
                    character: d.characters()[e.position].name().to_owned(),
                    increment: e.increment,
                    residual: e.residual,
                    classes: e.partition.num_classes(),
                })
                .collect(),
            chosen,
        });

        let best = evaluated.into_iter().nth(chosen).expect("chosen index in range");
        let name = d.characters()[best.position].name().to_owned();
        decomposition.push(DecompositionStep {
            character: name.clone(),
            component: best.increment,
            residual_after: best.residual,
            classes_after: best.partition.num_classes(),
        });
        order.push(name);
        remaining.retain(|&p| p != best.position);
        partition = best.partition;
        current = best.projection;
    }

    let final_residual = decomposition.last().map_or(total_variance, |s| s.residual_after);
    let degenerate = total_variance == 0.0;
    if degenerate {
        log::warn!("target has zero variance; ranking follows column order");
    }
    Ok(SooRanking {
        order,
        result: DecompositionResult {
            total_variance,
            steps: decomposition,
            final_residual,
        },
        trace,
        degenerate,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Omission {
    pub omitted: String,
    pub order: Vec<String>,
    /// The remaining characters keep their relative order from the full ranking.
    pub preserved: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RobustnessReport {
    pub full_order: Vec<String>,
    pub omissions: Vec<Omission>,
    pub stable: bool,
}

/// Reranks with each character left out in turn and checks whether the
/// others keep their relative order.
pub fn robustness_check(d: &Dataset) -> Result<RobustnessReport> {
    let n = d.characters().len();
    if n < 2 {
        return Err(Error::TooFewCharacters { needed: 2, found: n });
    }
    let full_order = soo_rank(d, None)?.order;
    let omissions = (0..n)
        .map(|left_out| {
            let kept: Vec<usize> = (0..n).filter(|&i| i != left_out).collect();
            let omitted = d.characters()[left_out].name().to_owned();
            let order = soo_rank(&d.with_characters(&kept)?, None)?.order;
            let preserved = full_order
                .iter()
                .filter(|name| **name != omitted)
                .eq(order.iter());
            Ok(Omission {
                omitted,
                order,
                preserved,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let stable = omissions.iter().all(|o| o.preserved);
    Ok(RobustnessReport {
        full_order,
        omissions,
        stable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::CharacterColumn;

    fn col(name: &str, codes: &[&str]) -> CharacterColumn {
        CharacterColumn::new(name, codes.to_vec()).unwrap()
    }

    fn d1() -> Dataset {
        Dataset::new(
            NumericVector::new(vec![1.0, 2.0, 3.0, 4.0]).unwrap(),
            vec![col("A", &["a", "a", "b", "b"]), col("B", &["u", "v", "u", "v"])],
        )
        .unwrap()
    }

    #[test]
    fn d1_ranking() {
        let r = soo_rank(&d1(), None).unwrap();
        assert_eq!(r.order, vec!["A", "B"]);
        let comps: Vec<f64> = r.result.steps.iter().map(|s| s.component).collect();
        assert_eq!(comps, vec![1.0, 0.25]);
        assert_eq!(r.trace[0].candidates.len(), 2);
        assert_eq!(r.trace[0].candidates[1].increment, 0.25);
        assert_eq!(r.trace[1].candidates.len(), 1);
        assert_eq!(residual_curve(&r).unwrap(), vec![0.2, 0.0]);
        assert!(!r.degenerate);
    }

    #[test]
    fn identical_columns_tie_to_first() {
        let codes = ["a", "b", "a", "c"];
        let d = Dataset::new(
            NumericVector::new(vec![1.0, 5.0, 2.0, 9.0]).unwrap(),
            vec![col("P", &codes), col("Q", &codes), col("R", &codes)],
        )
        .unwrap();
        let r = soo_rank(&d, None).unwrap();
        assert_eq!(r.order, vec!["P", "Q", "R"]);
        assert!(r.result.steps[0].component > 0.0);
        assert_eq!(r.result.steps[1].component, 0.0);
        assert_eq!(r.result.steps[2].component, 0.0);
    }

    #[test]
    fn zero_variance_is_flagged() {
        let d = Dataset::new(
            NumericVector::constant(1.0, 4).unwrap(),
            d1().characters().to_vec(),
        )
        .unwrap();
        let r = soo_rank(&d, None).unwrap();
        assert!(r.degenerate);
        assert_eq!(r.order, vec!["A", "B"]);
        assert!(matches!(residual_curve(&r), Err(Error::ZeroVariance)));
    }

    #[test]
    fn single_discrete_character() {
        let d = Dataset::new(
            NumericVector::new(vec![3.0, 1.0, 2.0]).unwrap(),
            vec![col("ID", &["i", "j", "k"])],
        )
        .unwrap();
        assert_eq!(residual_curve(&soo_rank(&d, None).unwrap()).unwrap(), vec![0.0]);
    }

    #[test]
    fn step_limits() {
        let r = soo_rank(&d1(), Some(1)).unwrap();
        assert_eq!(r.order, vec!["A"]);
        assert_eq!(r.result.final_residual, 0.25);
        assert!(matches!(
            soo_rank(&d1(), Some(3)),
            Err(Error::TooManySteps {
                requested: 3,
                available: 2
            })
        ));
        let empty = Dataset::new(NumericVector::new(vec![1.0]).unwrap(), vec![]).unwrap();
        assert!(matches!(soo_rank(&empty, None), Err(Error::NoCharacters)));
    }

    #[test]
    fn d1_robustness() {
        let report = robustness_check(&d1()).unwrap();
        assert_eq!(report.full_order, vec!["A", "B"]);
        assert_eq!(report.omissions.len(), 2);
        assert_eq!(report.omissions[0].omitted, "A");
        assert_eq!(report.omissions[0].order, vec!["B"]);
        assert_eq!(report.omissions[1].order, vec!["A"]);
        assert!(report.stable);
    }

    #[test]
    fn robustness_needs_two_characters() {
        let d = d1().with_characters(&[0]).unwrap();
        assert!(matches!(
            robustness_check(&d),
            Err(Error::TooFewCharacters { needed: 2, found: 1 })
        ));
    }

    #[test]
    fn robustness_shape_with_duplicate_and_noise() {
        let x = NumericVector::new(vec![1.0, 1.2, 5.0, 5.1, 1.1, 4.9]).unwrap();
        let dominant = ["lo", "lo", "hi", "hi", "lo", "hi"];
        let d = Dataset::new(
            x,
            vec![
                col("D", &dominant),
                col("N", &["a", "b", "a", "b", "b", "a"]),
                col("D2", &dominant),
            ],
        )
        .unwrap();
        let report = robustness_check(&d).unwrap();
        assert_eq!(report.omissions.len(), 3);
        assert!(report.omissions.iter().all(|o| o.order.len() == 2));
        assert_eq!(report.full_order[0], "D");
    }
}
