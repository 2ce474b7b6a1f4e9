//! Orthogonal decomposition of the variance along a chain of refining partitions.
//!
//! For characters `C_1, …, C_n` taken in a given order, `π_j` groups the
//! individuals that agree on the first `j` characters and `E_j` is the
//! conditional mean over `π_j`. The increments `E_j − E_{j−1}` and the final
//! residual `X − E_n` are pairwise orthogonal, so
//!
//! ```text
//! V(X) = Σ_j ‖E_j − E_{j−1}‖² + ‖X − E_n‖²
//! ```

use serde::{Deserialize, Serialize};

use crate::dataset::{refine, Dataset};
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::vector::NumericVector;

/// Tolerance for the Pythagorean identity, relative to `max(V(X), 1)`.
pub const IDENTITY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecompositionStep {
    pub character: String,
    /// `‖E_j − E_{j−1}‖²`
    pub component: f64,
    /// `‖X − E_j‖²`
    pub residual_after: f64,
    /// Number of classes of `π_j`.
    pub classes_after: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecompositionResult {
    pub total_variance: f64,
    pub steps: Vec<DecompositionStep>,
    pub final_residual: f64,
}

impl DecompositionResult {
    /// Sum of the per-character components.
    pub fn explained(&self) -> f64 {
        self.steps.iter().map(|s| s.component).sum()
    }

    pub fn explained_fraction(&self) -> Result<f64> {
        if self.total_variance <= 0.0 {
            return Err(Error::ZeroVariance);
        }
        Ok(self.explained() / self.total_variance)
    }

    /// `c_k = ‖X − E_k‖² / V(X)` for each step.
    pub fn residual_fractions(&self) -> Result<Vec<f64>> {
        if self.total_variance <= 0.0 {
            return Err(Error::ZeroVariance);
        }
        Ok(self
            .steps
            .iter()
            .map(|s| s.residual_after / self.total_variance)
            .collect())
    }

    /// `|V(X) − (Σ components + residual)|`.
    pub fn identity_gap(&self) -> f64 {
        (self.total_variance - (self.explained() + self.final_residual)).abs()
    }

    pub fn order(&self) -> Vec<&str> {
        self.steps.iter().map(|s| s.character.as_str()).collect()
    }
}

/// The projections `E_0(X), …, E_n(X)` for the characters at `positions`.
pub fn projection_chain(d: &Dataset, positions: &[usize]) -> Result<Vec<NumericVector>> {
    let x = d.target();
    let mut partition = Partition::trivial(d.len())?;
    let mut chain = Vec::with_capacity(positions.len() + 1);
    chain.push(partition.conditional_mean(x)?);
    for &i in positions {
        partition = refine(&partition, &d.characters()[i])?;
        chain.push(partition.conditional_mean(x)?);
    }
    Ok(chain)
}

/// Decomposes `V(X)` refining by the named characters in the given order.
pub fn decompose_ordered<S: AsRef<str>>(d: &Dataset, order: &[S]) -> Result<DecompositionResult> {
    let positions = d.positions(order)?;
    decompose_positions(d, &positions)
}

pub fn decompose_positions(d: &Dataset, positions: &[usize]) -> Result<DecompositionResult> {
    let x = d.target();
    let total_variance = x.variance();
    let tolerance = IDENTITY_TOLERANCE * total_variance.max(1.0);

    let mut partition = Partition::trivial(d.len())?;
    let mut previous = partition.conditional_mean(x)?;
    let mut residual = total_variance;
    let mut steps = Vec::with_capacity(positions.len());
    for &i in positions {
        let col = &d.characters()[i];
        partition = refine(&partition, col)?;
        let current = partition.conditional_mean(x)?;
        let component = current.distance_sq(&previous)?;
        let residual_after = x.distance_sq(&current)?;
        let drift = (residual - component - residual_after).abs();
        if drift > tolerance {
            log::warn!(
                "step {:?}: residual drift {drift:e} exceeds {tolerance:e}",
                col.name()
            );
        }
        steps.push(DecompositionStep {
            character: col.name().to_owned(),
            component,
            residual_after,
            classes_after: partition.num_classes(),
        });
        residual = residual_after;
        previous = current;
    }
    Ok(DecompositionResult {
        total_variance,
        steps,
        final_residual: residual,
    })
}
