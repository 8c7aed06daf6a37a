//! Finite-horizon Koopman–von Neumann extraction.
//!
//! A bounded nonnegative sequence has Cesàro averages tending to zero iff it
//! tends to zero off an exceptional set of density zero. Given `a₀..a_{N−1}`
//! and thresholds `ε₁ > ε₂ > ⋯ > ε_K`, this builds such an exceptional set
//! `E` explicitly:
//!
//! * `J_k = {n : aₙ ≥ ε_k}` (nested, growing with `k`);
//! * breakpoint `b_k` is the least `n ≥ b_{k−1}` with `|J_k ∩ N_m| / m < 1/k`
//!   for every `m` in `n..=N`, found by a greedy scan;
//! * `E = J₁ ∩ [0, b₂) ∪ J₂ ∩ [b₂, b₃) ∪ ⋯ ∪ J_K ∩ [b_K, N)`.
//!
//! Off `E`, every index in `[b_k, b_{k+1})` has `aₙ < ε_k`, so on the
//! certified tail `[b_K, N)` the sequence stays below the last threshold.
//! Nothing here is a limit statement; every number refers to the horizon.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::metrics::density::{density_stats, ratio, DensityStats, IndexSet};
use crate::rational::{rat, serde_str, serde_str_vec, Rational};

/// `(1/2, 1/4, …, 1/256)`.
pub fn default_thresholds() -> Vec<Rational> {
    (1..=8).map(|k| rat(1, 1 << k)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KvnReport {
    pub horizon: usize,
    #[serde(with = "serde_str_vec")]
    pub thresholds: Vec<Rational>,
    /// `b_1, …, b_K`.
    pub breakpoints: Vec<usize>,
    pub exceptional: IndexSet,
    /// `|E| / N`.
    #[serde(with = "serde_str")]
    pub density_proxy: Rational,
    /// Density window of `E` over the certified tail `[b_K, N]`.
    pub density: DensityStats,
    /// Start of the certified tail, `b_K`.
    pub tail_start: usize,
    /// `max{aₙ : n ∉ E, n ≥ b_K}`, zero if there is no such `n`.
    #[serde(with = "serde_str")]
    pub tail_off_max: Rational,
    /// `max{aₙ : n ∉ E}` over the whole horizon.
    #[serde(with = "serde_str")]
    pub off_max: Rational,
    #[serde(with = "serde_str")]
    pub sup: Rational,
    /// `(1/N) Σ aₙ`.
    #[serde(with = "serde_str")]
    pub cesaro: Rational,
}

impl KvnReport {
    /// `(1/N) Σ aₙ ≤ off_max + density_proxy · sup`, compared exactly.
    ///
    /// Holds for every extraction: terms off `E` are at most `off_max`, and
    /// the `|E|` terms on `E` are at most `sup`.
    pub fn coherence_holds(&self) -> bool {
        self.cesaro <= &self.off_max + &self.density_proxy * &self.sup
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum KvnOutcome {
    Extracted(KvnReport),
    /// No breakpoint for level `level` exists within the horizon: `J_level`
    /// still has density at least `1/level` at `N`.
    NotExtractable {
        level: usize,
        #[serde(with = "serde_str")]
        threshold: Rational,
        #[serde(with = "serde_str")]
        density_at_horizon: Rational,
    },
}

impl KvnOutcome {
    pub fn report(&self) -> Option<&KvnReport> {
        match self {
            KvnOutcome::Extracted(r) => Some(r),
            KvnOutcome::NotExtractable { .. } => None,
        }
    }
}

pub fn kvn_extract(a: &[Rational], thresholds: &[Rational]) -> Result<KvnOutcome> {
    let horizon = a.len();
    if horizon == 0 {
        return Err(Error::InvalidArgument("sequence is empty".into()));
    }
    if thresholds.is_empty() {
        return Err(Error::InvalidArgument("no thresholds given".into()));
    }
    if a.iter().any(|x| x < &Rational::zero()) {
        return Err(Error::InvalidArgument("sequence has a negative term".into()));
    }
    if thresholds.iter().any(|t| t <= &Rational::zero())
        || thresholds.windows(2).any(|w| w[0] <= w[1])
    {
        return Err(Error::InvalidArgument(
            "thresholds must be positive and strictly decreasing".into(),
        ));
    }

    let mut breakpoints = Vec::with_capacity(thresholds.len());
    let mut levels = Vec::with_capacity(thresholds.len());
    let mut prev = 1;
    for (k0, eps) in thresholds.iter().enumerate() {
        let k = k0 + 1;
        let level = IndexSet::from_predicate(horizon, |n| &a[n] >= eps);
        let Some(b) = breakpoint(&level, k, prev) else {
            return Ok(KvnOutcome::NotExtractable {
                level: k,
                threshold: eps.clone(),
                density_at_horizon: level.density_at_horizon(),
            });
        };
        breakpoints.push(b);
        levels.push(level);
        prev = b;
    }

    let k_max = thresholds.len();
    let mut members = Vec::new();
    for (k0, level) in levels.iter().enumerate() {
        let start = if k0 == 0 { 0 } else { breakpoints[k0] };
        let end = if k0 + 1 < k_max { breakpoints[k0 + 1] } else { horizon };
        members.extend(level.members().iter().copied().filter(|&n| n >= start && n < end));
    }
    let exceptional = IndexSet::new(horizon, members)?;
    let tail_start = breakpoints[k_max - 1];

    let off = |from: usize| {
        (from..horizon)
            .filter(|&n| !exceptional.contains(n))
            .map(|n| &a[n])
            .max()
            .cloned()
            .unwrap_or_else(Rational::zero)
    };
    let tail_off_max = off(tail_start);
    let off_max = off(0);
    let sup = a.iter().max().cloned().unwrap_or_else(Rational::zero);
    let cesaro = a.iter().fold(Rational::zero(), |acc, x| acc + x) / ratio(horizon, 1);
    let density = density_stats(&exceptional, tail_start.max(1))?;

    Ok(KvnOutcome::Extracted(KvnReport {
        horizon,
        thresholds: thresholds.to_vec(),
        breakpoints,
        density_proxy: exceptional.density_at_horizon(),
        exceptional,
        density,
        tail_start,
        tail_off_max,
        off_max,
        sup,
        cesaro,
    }))
}

/// Least `n ≥ from` such that `k·|J ∩ N_m| < m` for all `m ∈ [n, N]`.
fn breakpoint(level: &IndexSet, k: usize, from: usize) -> Option<usize> {
    let horizon = level.horizon();
    let mut count = level.len();
    let mut last_bad = None;
    // Walk m downward, keeping count = |J ∩ N_m|.
    for m in (from.max(1)..=horizon).rev() {
        while count > 0 && level.members()[count - 1] >= m {
            count -= 1;
        }
        if k * count >= m {
            last_bad = Some(m);
            break;
        }
    }
    match last_bad {
        None => Some(from.max(1)),
        Some(m) if m < horizon => Some(m + 1),
        Some(_) => None,
    }
}
