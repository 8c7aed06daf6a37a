//! Exact analysis of one-dimensional non-autonomous discrete systems
//! `x_{n+1} = f_n(x_n)` built from piecewise-linear maps with rational
//! breakpoints.
//!
//! Sets are finite unions of intervals with rational endpoints, so forward
//! images, preimages, measures and hitting times are computed without
//! rounding. A float Monte Carlo estimator in [`mc`] serves as an
//! independent cross-check.
//!
//! ```
//! use nadyn::{IntervalSet, Schedule};
//!
//! let tent = Schedule::bundled("tent").unwrap();
//! let a: IntervalSet = "[0,1/4]".parse().unwrap();
//! assert_eq!(tent.prefix_image(&a, 1).unwrap().to_string(), "[0,1/2]");
//! ```

pub mod error;
pub mod interval;
pub mod mc;
pub mod metrics;
pub mod plmap;
pub mod rational;
pub mod schedule;
pub mod set;
pub mod system;
pub mod topo;
pub mod verify;

pub use error::{Error, Result};
pub use interval::Interval;
pub use plmap::{PLMap, Piece};
pub use rational::{parse_rational, Rational};
pub use schedule::{PropagationBudget, Schedule};
pub use set::IntervalSet;
