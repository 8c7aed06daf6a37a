//! Correlation sequences, Cesàro deviations, densities and exceptional sets.

pub mod correlation;
pub mod density;
pub mod kvn;

pub use correlation::{correlation_series, CorrelationSeries};
pub use density::{density_one_intersection, density_stats, DensityStats, IndexSet, IntersectionWitness};
pub use kvn::{default_thresholds, kvn_extract, KvnOutcome, KvnReport};
