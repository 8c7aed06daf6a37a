//! Finite-horizon densities of sets of nonnegative integers.
//!
//! `N_n = {0, …, n−1}`. The asymptotic upper and lower densities are
//! limsup/liminf of `|S ∩ N_n| / n`; here they are replaced by the max and
//! min of that ratio over a tail window `tail_start ≤ n ≤ horizon`, and are
//! always reported together with the window.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{serde_str, Rational};

/// A subset of `N_horizon`, kept sorted and deduplicated.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct IndexSet {
    horizon: usize,
    members: Vec<usize>,
}

impl IndexSet {
    pub fn new(horizon: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        if let Some(&m) = members.last() {
            if m >= horizon {
                return Err(Error::InvalidArgument(format!(
                    "index {m} is outside N_{horizon}"
                )));
            }
        }
        Ok(Self { horizon, members })
    }

    pub fn from_predicate(horizon: usize, pred: impl Fn(usize) -> bool) -> Self {
        Self {
            horizon,
            members: (0..horizon).filter(|&n| pred(n)).collect(),
        }
    }

    pub fn empty(horizon: usize) -> Self {
        Self {
            horizon,
            members: Vec::new(),
        }
    }

    pub fn full(horizon: usize) -> Self {
        Self {
            horizon,
            members: (0..horizon).collect(),
        }
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, n: usize) -> bool {
        self.members.binary_search(&n).is_ok()
    }

    /// `|S ∩ N_n|`.
    pub fn count_below(&self, n: usize) -> usize {
        self.members.partition_point(|&m| m < n)
    }

    pub fn first_at_least(&self, n: usize) -> Option<usize> {
        self.members.get(self.count_below(n)).copied()
    }

    pub fn intersect(&self, other: &IndexSet) -> IndexSet {
        let members = self
            .members
            .iter()
            .copied()
            .filter(|&m| other.contains(m))
            .collect();
        IndexSet {
            horizon: self.horizon.min(other.horizon),
            members,
        }
    }

    /// `|S ∩ N_horizon| / horizon`.
    pub fn density_at_horizon(&self) -> Rational {
        ratio(self.members.len(), self.horizon.max(1))
    }
}

pub(crate) fn ratio(num: usize, den: usize) -> Rational {
    Rational::new(num.into(), den.into())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DensityStats {
    /// Max of `|S ∩ N_n| / n` over the window.
    #[serde(with = "serde_str")]
    pub upper: Rational,
    /// Min of `|S ∩ N_n| / n` over the window.
    #[serde(with = "serde_str")]
    pub lower: Rational,
    pub tail_start: usize,
    pub horizon: usize,
}

pub fn density_stats(s: &IndexSet, tail_start: usize) -> Result<DensityStats> {
    if tail_start == 0 || tail_start > s.horizon {
        return Err(Error::InvalidArgument(format!(
            "tail start {tail_start} must lie in 1..={}",
            s.horizon
        )));
    }
    // Compare c/n fractions by cross-multiplication; cheaper than bignums
    // for long horizons.
    let cmp = |a: (usize, usize), b: (usize, usize)| -> Ordering {
        (a.0 as u128 * b.1 as u128).cmp(&(b.0 as u128 * a.1 as u128))
    };
    let mut count = s.count_below(tail_start);
    let mut hi = (count, tail_start);
    let mut lo = hi;
    for n in tail_start..=s.horizon {
        while count < s.members.len() && s.members[count] < n {
            count += 1;
        }
        let r = (count, n);
        if cmp(r, hi) == Ordering::Greater {
            hi = r;
        }
        if cmp(r, lo) == Ordering::Less {
            lo = r;
        }
    }
    Ok(DensityStats {
        upper: ratio(hi.0, hi.1),
        lower: ratio(lo.0, lo.1),
        tail_start,
        horizon: s.horizon,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionWitness {
    /// Least element of `(j1 ∩ j2) ∖ {0, …, cutoff}`, if any.
    pub witness: Option<usize>,
    /// `|j1 ∩ N|/N + |j2 ∩ N|/N − 1` at the horizon `N`. A positive value
    /// forces the intersection to be nonempty.
    #[serde(with = "serde_str")]
    pub bound: Rational,
    pub cutoff: usize,
    pub horizon: usize,
}

pub fn density_one_intersection(
    j1: &IndexSet,
    j2: &IndexSet,
    cutoff: usize,
) -> Result<IntersectionWitness> {
    if j1.horizon != j2.horizon {
        return Err(Error::InvalidArgument(format!(
            "index sets have different horizons {} and {}",
            j1.horizon, j2.horizon
        )));
    }
    let horizon = j1.horizon;
    if cutoff >= horizon {
        return Err(Error::InvalidArgument(format!(
            "cutoff {cutoff} must be below the horizon {horizon}"
        )));
    }
    let witness = j1.members[j1.count_below(cutoff + 1)..]
        .iter()
        .copied()
        .find(|&m| j2.contains(m));
    let bound = j1.density_at_horizon() + j2.density_at_horizon() - Rational::from_integer(1.into());
    Ok(IntersectionWitness {
        witness,
        bound,
        cutoff,
        horizon,
    })
}
