//! Real vectors under the normalized inner product `<a, b> = (1/N) Σ a_i b_i`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A nonempty vector of finite reals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct NumericVector(Vec<f64>);

impl NumericVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyVector);
        }
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFinite { index, value });
        }
        Ok(Self(values))
    }

    /// The constant vector of length `len`.
    pub fn constant(value: f64, len: usize) -> Result<Self> {
        Self::new(vec![value; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn mean(&self) -> f64 {
        self.0.iter().sum::<f64>() / self.len() as f64
    }

    /// Population variance, `‖X − E_0(X)‖²`.
    pub fn variance(&self) -> f64 {
        let mean = self.mean();
        self.0.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / self.len() as f64
    }

    /// Normalized inner product.
    pub fn dot(&self, other: &Self) -> Result<f64> {
        self.check_len(other)?;
        Ok(self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum::<f64>() / self.len() as f64)
    }

    /// `‖self‖²`.
    pub fn norm_sq(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum::<f64>() / self.len() as f64
    }

    /// `‖self − other‖²`.
    pub fn distance_sq(&self, other: &Self) -> Result<f64> {
        self.check_len(other)?;
        Ok(self
            .0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).powi(2))
            .sum::<f64>()
            / self.len() as f64)
    }

    /// Componentwise `self − other`.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        Ok(Self(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub(crate) fn check_len(&self, other: &Self) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(())
    }
}

impl TryFrom<Vec<f64>> for NumericVector {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        Self::new(values)
    }
}

impl From<NumericVector> for Vec<f64> {
    fn from(v: NumericVector) -> Self {
        v.0
    }
}

pub fn mean(x: &NumericVector) -> f64 {
    x.mean()
}

pub fn variance(x: &NumericVector) -> f64 {
    x.variance()
}

/// `‖a − b‖²` under the normalized inner product.
pub fn component_norm_sq(a: &NumericVector, b: &NumericVector) -> Result<f64> {
    a.distance_sq(b)
}
