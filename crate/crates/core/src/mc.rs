//! Floating-point Monte Carlo cross-checks.
//!
//! Orbits are simulated directly in `f64`. This module is an independent
//! oracle for the exact engine: it never touches `IntervalSet` algebra
//! beyond converting endpoints to floats for membership tests. It also
//! accepts closed-form maps the exact engine cannot represent; results for
//! those carry `estimate_only = true`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::plmap::PLMap;
use crate::rational::to_f64;
use crate::schedule::Schedule;
use crate::set::IntervalSet;

const CHUNK: usize = 1 << 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SampleConfig {
    pub samples: usize,
    pub seed: u64,
}

impl SampleConfig {
    pub fn new(samples: usize, seed: u64) -> Result<Self> {
        if samples == 0 {
            return Err(Error::InvalidArgument("sample count must be at least 1".into()));
        }
        Ok(Self { samples, seed })
    }

    /// Samples are drawn in chunks; chunk `k` uses stream `k` of the
    /// seeded generator, so chunks can be evaluated in any order.
    fn chunks(&self) -> impl Iterator<Item = (ChaCha8Rng, usize)> + '_ {
        (0..self.samples.div_ceil(CHUNK)).map(move |k| {
            let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
            rng.set_stream(k as u64);
            (rng, CHUNK.min(self.samples - k * CHUNK))
        })
    }
}

impl Default for SampleConfig {
    fn default() -> Self {
        Self {
            samples: 100_000,
            seed: 0x5eed,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
/// Right end, slope and intercept of one piece.
pub struct FloatPiece {
    pub hi: f64,
    pub slope: f64,
    pub intercept: f64,
}

/// A single time step evaluated in floating point.
#[derive(Clone, Debug, PartialEq)]
pub enum FloatMap {
    /// Breakpoint search picks the first piece whose right end is `≥ x`, so a
    /// point on a shared boundary goes to the lower piece.
    PiecewiseLinear { pieces: Vec<FloatPiece> },
    /// `a·x² + b·x + c`.
    Quadratic { a: f64, b: f64, c: f64 },
}

impl FloatMap {
    pub fn from_plmap(m: &PLMap) -> Self {
        FloatMap::PiecewiseLinear {
            pieces: m
                .pieces()
                .iter()
                .map(|p| FloatPiece {
                    hi: to_f64(p.on.hi()),
                    slope: to_f64(&p.slope),
                    intercept: to_f64(&p.intercept),
                })
                .collect(),
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            FloatMap::PiecewiseLinear { pieces } => {
                let i = pieces.partition_point(|p| p.hi < x).min(pieces.len() - 1);
                pieces[i].slope * x + pieces[i].intercept
            }
            FloatMap::Quadratic { a, b, c } => (a * x + b) * x + c,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FloatSchedule {
    lo: f64,
    hi: f64,
    preamble: Vec<FloatMap>,
    cycle: Vec<FloatMap>,
    estimate_only: bool,
}

impl FloatSchedule {
    pub fn new(
        domain: (f64, f64),
        preamble: Vec<FloatMap>,
        cycle: Vec<FloatMap>,
        estimate_only: bool,
    ) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::EmptyCycle);
        }
        if !(domain.0 < domain.1) {
            return Err(Error::InvalidArgument(format!("bad float domain {domain:?}")));
        }
        Ok(Self {
            lo: domain.0,
            hi: domain.1,
            preamble,
            cycle,
            estimate_only,
        })
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    /// `true` when some map is not representable by the exact engine.
    pub fn estimate_only(&self) -> bool {
        self.estimate_only
    }

    fn map_at(&self, n: usize) -> &FloatMap {
        match self.preamble.get(n) {
            Some(m) => m,
            None => &self.cycle[(n - self.preamble.len()) % self.cycle.len()],
        }
    }

    /// `f₀ⁿ(x)`, clamped into the domain after every step so rounding
    /// cannot carry an orbit outside it.
    pub fn orbit_point(&self, x: f64, n: usize) -> f64 {
        (0..n).fold(x, |y, k| self.map_at(k).eval(y).clamp(self.lo, self.hi))
    }
}

impl From<&Schedule> for FloatSchedule {
    fn from(sch: &Schedule) -> Self {
        let d = sch.domain();
        FloatSchedule {
            lo: to_f64(d.lo()),
            hi: to_f64(d.hi()),
            preamble: sch.preamble().iter().map(FloatMap::from_plmap).collect(),
            cycle: sch.cycle().iter().map(FloatMap::from_plmap).collect(),
            estimate_only: false,
        }
    }
}

/// Float view of an [`IntervalSet`] for membership tests.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatSet {
    parts: Vec<(f64, f64, bool, bool)>,
}

impl FloatSet {
    pub fn contains(&self, x: f64) -> bool {
        self.parts.iter().any(|&(lo, hi, lo_open, hi_open)| {
            (if lo_open { x > lo } else { x >= lo }) && (if hi_open { x < hi } else { x <= hi })
        })
    }
}

impl From<&IntervalSet> for FloatSet {
    fn from(s: &IntervalSet) -> Self {
        FloatSet {
            parts: s
                .iter()
                .map(|p| (to_f64(p.lo()), to_f64(p.hi()), p.lo_open(), p.hi_open()))
                .collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct McEstimate {
    pub estimate: f64,
    /// `sqrt(p̂(1 − p̂)/m)`.
    pub stderr: f64,
    pub samples: usize,
    pub estimate_only: bool,
}

/// Fraction of uniform samples `x` with `x ∈ A` and `f₀ⁿ(x) ∈ B`.
pub fn mc_correlation(
    sch: &FloatSchedule,
    a: &FloatSet,
    b: &FloatSet,
    n: usize,
    cfg: &SampleConfig,
) -> McEstimate {
    let hits: usize = cfg
        .chunks()
        .map(|(mut rng, len)| {
            (0..len)
                .filter(|_| {
                    let x = rng.random_range(sch.lo..=sch.hi);
                    a.contains(x) && b.contains(sch.orbit_point(x, n))
                })
                .count()
        })
        .sum();
    let m = cfg.samples as f64;
    let p = hits as f64 / m;
    McEstimate {
        estimate: p,
        stderr: (p * (1.0 - p) / m).sqrt(),
        samples: cfg.samples,
        estimate_only: sch.estimate_only,
    }
}

/// Largest `|f₀ⁿ(x) − f₀ⁿ(y)|` over uniform samples `y` in
/// `(x − ε, x + ε) ∩ domain`. A lower bound on the true supremum.
pub fn mc_separation(
    sch: &FloatSchedule,
    x: f64,
    epsilon: f64,
    n: usize,
    cfg: &SampleConfig,
) -> Result<f64> {
    if !(sch.lo..=sch.hi).contains(&x) {
        return Err(Error::InvalidArgument(format!(
            "x = {x} is outside [{}, {}]",
            sch.lo, sch.hi
        )));
    }
    if !(epsilon > 0.0) {
        return Err(Error::InvalidArgument("epsilon must be positive".into()));
    }
    let lo = (x - epsilon).max(sch.lo);
    let hi = (x + epsilon).min(sch.hi);
    let fx = sch.orbit_point(x, n);
    let best = cfg
        .chunks()
        .map(|(mut rng, len)| {
            (0..len)
                .map(|_| rng.random_range(lo..hi))
                .filter(|y| (y - x).abs() < epsilon)
                .map(|y| (sch.orbit_point(y, n) - fx).abs())
                .fold(0.0f64, f64::max)
        })
        .fold(0.0f64, f64::max);
    Ok(best)
}
