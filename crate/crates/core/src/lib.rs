//! Variance decomposition over nested partitions.
//!
//! A numeric variable `X` on a population of `N` individuals is split into
//! orthogonal pieces, one per qualitative character, by projecting onto
//! conditional means over successively finer partitions. The greedy
//! stepwise optimal ordering ([`soo_rank`]) picks, at each step, the
//! character that explains the most remaining variance.
//!
//! ```
//! use nestvar::{decompose_ordered, CharacterColumn, Dataset, NumericVector};
//!
//! let d = Dataset::new(
//!     NumericVector::new(vec![1.0, 2.0, 3.0, 4.0])?,
//!     vec![
//!         CharacterColumn::new("A", vec!["a", "a", "b", "b"])?,
//!         CharacterColumn::new("B", vec!["u", "v", "u", "v"])?,
//!     ],
//! )?;
//! let r = decompose_ordered(&d, &["A", "B"])?;
//! assert_eq!(r.total_variance, 1.25);
//! assert_eq!(r.steps[0].component, 1.0);
//! assert_eq!(r.steps[1].component, 0.25);
//! # Ok::<(), nestvar::Error>(())
//! ```

pub mod dataset;
pub mod decompose;
pub mod error;
pub mod experiments;
pub mod io;
pub mod partition;
pub mod soo;
pub mod vector;

pub use dataset::{partition_from_column, refine, CharacterColumn, Dataset};
pub use decompose::{
    decompose_ordered, decompose_positions, projection_chain, DecompositionResult, DecompositionStep,
};
pub use error::{Error, ErrorClass, Result};
pub use experiments::{
    generate_exam_like, random_subset_baseline, simulate_soo_recovery, BaselineConfig, BaselineReport,
    SimulationConfig, SimulationReport,
};
pub use partition::{conditional_mean, Partition};
pub use soo::{residual_curve, robustness_check, soo_rank, RobustnessReport, SooRanking};
pub use vector::{component_norm_sq, mean, variance, NumericVector};
