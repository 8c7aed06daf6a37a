//! Eventually periodic sequences of maps, `x_{n+1} = f_n(x_n)`.
//!
//! Time `n` uses `preamble[n]` while it lasts and then cycles through
//! `cycle`. The orbit map `f₀ⁿ = f_{n−1} ∘ ⋯ ∘ f₀` applies `f₀` first.

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::plmap::{PLMap, Piece};
use crate::rational::int;
use crate::set::IntervalSet;

/// Cap on the number of parts any intermediate set may hold.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PropagationBudget {
    max_parts: usize,
}

impl PropagationBudget {
    pub const DEFAULT_MAX_PARTS: usize = 1 << 20;

    pub fn new(max_parts: usize) -> Result<Self> {
        if max_parts == 0 {
            return Err(Error::ZeroBudget);
        }
        Ok(Self { max_parts })
    }

    pub fn max_parts(&self) -> usize {
        self.max_parts
    }

    pub fn check(&self, step: usize, set: &IntervalSet) -> Result<()> {
        if set.len() > self.max_parts {
            return Err(self.exceeded(step, set.len()));
        }
        Ok(())
    }

    fn exceeded(&self, step: usize, parts: usize) -> Error {
        Error::BudgetExceeded {
            step,
            parts,
            max_parts: self.max_parts,
        }
    }
}

impl Default for PropagationBudget {
    fn default() -> Self {
        Self {
            max_parts: Self::DEFAULT_MAX_PARTS,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Schedule {
    domain: Interval,
    preamble: Vec<PLMap>,
    cycle: Vec<PLMap>,
}

pub const BUNDLED_EXAMPLES: [&str; 4] = ["tent", "doubling", "example31", "tent_doubling_alternating"];

impl Schedule {
    pub fn new(preamble: Vec<PLMap>, cycle: Vec<PLMap>) -> Result<Self> {
        let first = cycle.first().ok_or(Error::EmptyCycle)?;
        let domain = first.domain().clone();
        for m in preamble.iter().chain(cycle.iter()) {
            if m.domain() != &domain {
                return Err(Error::DomainMismatch {
                    expected: domain,
                    found: m.domain().clone(),
                });
            }
        }
        Ok(Self {
            domain,
            preamble,
            cycle,
        })
    }

    /// The autonomous system `f_n = f` for all `n`.
    pub fn constant(map: PLMap) -> Self {
        Self {
            domain: map.domain().clone(),
            preamble: Vec::new(),
            cycle: vec![map],
        }
    }

    pub fn domain(&self) -> &Interval {
        &self.domain
    }

    pub fn domain_set(&self) -> IntervalSet {
        IntervalSet::from_interval(self.domain.clone())
    }

    pub fn preamble(&self) -> &[PLMap] {
        &self.preamble
    }

    pub fn cycle(&self) -> &[PLMap] {
        &self.cycle
    }

    /// Every distinct position in the description: preamble, then cycle.
    pub fn maps(&self) -> impl Iterator<Item = &PLMap> {
        self.preamble.iter().chain(self.cycle.iter())
    }

    pub fn map_at(&self, n: usize) -> &PLMap {
        match self.preamble.get(n) {
            Some(m) => m,
            None => &self.cycle[(n - self.preamble.len()) % self.cycle.len()],
        }
    }

    /// `true` when every time step uses the same map.
    pub fn is_autonomous(&self) -> bool {
        let first = &self.cycle[0];
        self.maps().all(|m| m == first)
    }

    /// The schedule `n ↦ map_at(n + shift)`.
    pub fn shifted(&self, shift: usize) -> Schedule {
        if shift < self.preamble.len() {
            return Schedule {
                domain: self.domain.clone(),
                preamble: self.preamble[shift..].to_vec(),
                cycle: self.cycle.clone(),
            };
        }
        let k = (shift - self.preamble.len()) % self.cycle.len();
        let mut cycle = self.cycle.clone();
        cycle.rotate_left(k);
        Schedule {
            domain: self.domain.clone(),
            preamble: Vec::new(),
            cycle,
        }
    }

    pub fn prefix_image(&self, s: &IntervalSet, n: usize) -> Result<IntervalSet> {
        self.prefix_image_within(s, n, &PropagationBudget::default())
    }

    /// `f₀ⁿ(s)`; `n = 0` returns `s` unchanged.
    pub fn prefix_image_within(
        &self,
        s: &IntervalSet,
        n: usize,
        budget: &PropagationBudget,
    ) -> Result<IntervalSet> {
        let mut cur = s.clone();
        for step in 0..n {
            cur = self.map_at(step).image(&cur)?;
            budget.check(step + 1, &cur)?;
        }
        Ok(cur)
    }

    /// Every image `f₀¹(s), …, f₀ⁿ(s)` in order.
    pub fn image_orbit(
        &self,
        s: &IntervalSet,
        n: usize,
        budget: &PropagationBudget,
    ) -> Result<Vec<IntervalSet>> {
        let mut out = Vec::with_capacity(n);
        let mut cur = s.clone();
        for step in 0..n {
            cur = self.map_at(step).image(&cur)?;
            budget.check(step + 1, &cur)?;
            out.push(cur.clone());
        }
        Ok(out)
    }

    /// `(f₀ⁿ)⁻¹(s) = f₀⁻¹(f₁⁻¹(⋯ f_{n−1}⁻¹(s)))`.
    ///
    /// Fails with [`Error::BudgetExceeded`] as soon as an intermediate set
    /// would hold more parts than the budget allows; the step reported counts
    /// the single-map preimages taken so far, the failing one included.
    pub fn prefix_preimage(
        &self,
        s: &IntervalSet,
        n: usize,
        budget: &PropagationBudget,
    ) -> Result<IntervalSet> {
        let mut cur = s.clone();
        for step in (0..n).rev() {
            cur = self
                .map_at(step)
                .preimage_capped(&cur, budget.max_parts)
                .map_err(|raw| budget.exceeded(n - step, raw))?;
            budget.check(n - step, &cur)?;
        }
        Ok(cur)
    }

    pub fn bundled(name: &str) -> Result<Schedule> {
        bundled_example(name)
    }
}

fn iv(s: &str) -> Interval {
    s.parse().expect("bundled literal")
}

pub fn tent_map() -> PLMap {
    PLMap::new(
        iv("[0,1]"),
        vec![
            Piece::new(iv("[0,1/2]"), int(2), int(0)),
            Piece::new(iv("(1/2,1]"), int(-2), int(2)),
        ],
    )
    .expect("tent map is valid")
}

pub fn doubling_map() -> PLMap {
    PLMap::new(
        iv("[0,1]"),
        vec![
            Piece::new(iv("[0,1/2)"), int(2), int(0)),
            Piece::new(iv("[1/2,1]"), int(2), int(-1)),
        ],
    )
    .expect("doubling map is valid")
}

/// The tent map on `[0,1]` followed by a third branch `2(x−1)` on `(1,3/2]`.
pub fn extended_tent_map() -> PLMap {
    PLMap::new(
        iv("[0,3/2]"),
        vec![
            Piece::new(iv("[0,1/2]"), int(2), int(0)),
            Piece::new(iv("(1/2,1]"), int(-2), int(2)),
            Piece::new(iv("(1,3/2]"), int(2), int(-2)),
        ],
    )
    .expect("extended tent map is valid")
}

/// Looks up one of [`BUNDLED_EXAMPLES`].
pub fn bundled_example(name: &str) -> Result<Schedule> {
    match name {
        "tent" => Ok(Schedule::constant(tent_map())),
        "doubling" => Ok(Schedule::constant(doubling_map())),
        "example31" => Ok(Schedule::constant(extended_tent_map())),
        "tent_doubling_alternating" => Schedule::new(Vec::new(), vec![tent_map(), doubling_map()]),
        _ => Err(Error::UnknownExample(name.to_string())),
    }
}

/// The identity and the reflection `x ↦ 1 − x` on `[0,1]`, alternating.
/// Both are isometries, so no interval ever grows.
pub fn isometry_schedule() -> Schedule {
    let id = PLMap::new(iv("[0,1]"), vec![Piece::new(iv("[0,1]"), int(1), int(0))]).unwrap();
    let flip = PLMap::new(iv("[0,1]"), vec![Piece::new(iv("[0,1]"), int(-1), int(1))]).unwrap();
    Schedule::new(Vec::new(), vec![id, flip]).unwrap()
}
