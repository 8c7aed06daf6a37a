use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::metrics::IndexSet;
use crate::rational::Rational;
use crate::schedule::{PropagationBudget, Schedule};
use crate::set::IntervalSet;

/// `N(U,V) ∩ {1, …, horizon}` where `N(U,V) = {n ≥ 1 : f₀ⁿ(U) ∩ V ≠ ∅}`.
///
/// Indices start at one. `members` is an [`IndexSet`] over
/// `N_{horizon+1}` that never contains zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HittingSet {
    pub u: IntervalSet,
    pub v: IntervalSet,
    pub horizon: usize,
    pub members: IndexSet,
}

impl HittingSet {
    pub fn first(&self) -> Option<usize> {
        self.members.members().first().copied()
    }

    pub fn contains(&self, n: usize) -> bool {
        self.members.contains(n)
    }
}

pub(crate) fn check_region(sch: &Schedule, name: &str, s: &IntervalSet) -> Result<()> {
    if s.is_empty() {
        return Err(Error::InvalidArgument(format!("{name} must be nonempty")));
    }
    if !s.is_subset_of_interval(sch.domain()) {
        return Err(Error::OutOfDomain {
            what: format!("{name} = {s}"),
            domain: sch.domain().clone(),
        });
    }
    Ok(())
}

pub fn hitting_set(
    sch: &Schedule,
    u: &IntervalSet,
    v: &IntervalSet,
    horizon: usize,
    budget: &PropagationBudget,
) -> Result<HittingSet> {
    check_region(sch, "U", u)?;
    check_region(sch, "V", v)?;
    if horizon == 0 {
        return Err(Error::InvalidArgument("horizon must be at least 1".into()));
    }
    let images = sch.image_orbit(u, horizon, budget)?;
    let members = images
        .iter()
        .enumerate()
        .filter(|(_, img)| img.meets(v))
        .map(|(i, _)| i + 1);
    Ok(HittingSet {
        u: u.clone(),
        v: v.clone(),
        horizon,
        members: IndexSet::new(horizon + 1, members)?,
    })
}

/// Open cells `(lo + k·w, lo + (k+1)·w)` covering the domain up to the
/// measure-null cell boundaries. `None` unless `w > 0` divides the length.
pub fn uniform_cells(domain: &Interval, width: &Rational) -> Option<Vec<Interval>> {
    if !width.is_positive() {
        return None;
    }
    let count = domain.length() / width;
    if !count.is_integer() || count.is_zero() {
        return None;
    }
    let count: usize = count.to_integer().try_into().ok()?;
    Some(
        (0..count)
            .map(|k| {
                let a = domain.lo() + width * Rational::from_integer(k.into());
                let b = &a + width;
                Interval::open(a, b).expect("positive width")
            })
            .collect(),
    )
}
