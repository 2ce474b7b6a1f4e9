use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Right-open bins `[origin + i·w, origin + (i+1)·w)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub bin_edges: Vec<f64>,
    pub counts: Vec<usize>,
    /// Values below the first edge.
    pub below_range: usize,
    /// Values at or above the last edge.
    pub above_range: usize,
}

impl Histogram {
    pub fn total(&self) -> usize {
        self.counts.iter().sum::<usize>() + self.below_range + self.above_range
    }
}

/// Bins `values` with width `bin_width` starting at `origin`.
///
/// With `bins = None`, enough bins are emitted to hold the largest value.
pub fn histogram(values: &[f64], bin_width: f64, origin: f64, bins: Option<usize>) -> Result<Histogram> {
    if !(bin_width > 0.0 && bin_width.is_finite()) {
        return Err(Error::InvalidBinWidth(bin_width));
    }
    let slot = |v: f64| ((v - origin) / bin_width).floor();
    let num_bins = bins.unwrap_or_else(|| {
        values
            .iter()
            .map(|&v| slot(v))
            .filter(|s| *s >= 0.0)
            .fold(None, |acc: Option<f64>, s| Some(acc.map_or(s, |a| a.max(s))))
            .map_or(0, |s| s as usize + 1)
    });
    let mut counts = vec![0; num_bins];
    let mut below_range = 0;
    let mut above_range = 0;
    for &v in values {
        let s = slot(v);
        if s.is_nan() || s < 0.0 {
            below_range += 1;
        } else if s as usize >= num_bins {
            above_range += 1;
        } else {
            counts[s as usize] += 1;
        }
    }
    Ok(Histogram {
        bin_edges: (0..=num_bins).map(|i| origin + i as f64 * bin_width).collect(),
        counts,
        below_range,
        above_range,
    })
}
