//! Finite-resolution verdicts for transitivity, weak mixing and mixing.
//!
//! The open sets of the definitions are replaced by the open cells of a
//! uniform grid of width `g`, and the time axis by `1..=H`. A verdict is
//!
//! * `WITNESSED_UP_TO(g, H)` when every required hit was found, with the
//!   hitting index stored for each case;
//! * `INCONCLUSIVE` when some case had no hit in range (listed in `gaps`);
//! * `CERTIFIED_FAIL` only after an [`InvariantSetCertificate`] is attached.
//!
//! All three verdicts for one `(g, H)` read the same [`HitTable`], so the
//! chain mixing ⇒ weak mixing ⇒ transitivity holds by construction.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::rational::{serde_str, Rational};
use crate::schedule::{PropagationBudget, Schedule};
use crate::set::IntervalSet;
use crate::topo::certificate::InvariantSetCertificate;
use crate::topo::hitting::uniform_cells;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    Transitivity,
    WeakMixing,
    Mixing,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum VerdictKind {
    CertifiedFail,
    WitnessedUpTo,
    Inconclusive,
}

/// Ordered pair of cell indices `(U, V)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CellPair {
    pub u: usize,
    pub v: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Witness {
    /// `n ∈ N(U,V)`.
    Hit { pair: CellPair, n: usize },
    /// `n ∈ N(U₁,V₁) ∩ N(U₂,V₂)`.
    CommonHit {
        first: CellPair,
        second: CellPair,
        n: usize,
    },
    /// `{from, …, H} ⊆ N(U,V)`.
    Tail { pair: CellPair, from: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Gap {
    Unhit { pair: CellPair },
    NoCommonHit { first: CellPair, second: CellPair },
    NoTail { pair: CellPair },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub property: Property,
    pub kind: VerdictKind,
    #[serde(with = "serde_str")]
    pub grid: Rational,
    pub horizon: usize,
    /// Least common tail start; mixing verdicts only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tail: Option<usize>,
    pub cells: Vec<Interval>,
    pub witnesses: Vec<Witness>,
    pub gaps: Vec<Gap>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<InvariantSetCertificate>,
}

impl Verdict {
    pub fn is_witnessed(&self) -> bool {
        self.kind == VerdictKind::WitnessedUpTo
    }

    /// Attaches a certificate whose `U` and `V` have nonempty interior,
    /// turning the verdict into `CERTIFIED_FAIL`. The certificate is
    /// re-checked against `sch` first.
    pub fn with_certificate(
        mut self,
        sch: &Schedule,
        cert: InvariantSetCertificate,
    ) -> Result<Verdict> {
        cert.recheck(sch)?;
        if !cert.refutes_transitivity() {
            return Err(Error::InvalidArgument(
                "certificate sets U and V must have nonempty interior".into(),
            ));
        }
        self.kind = VerdictKind::CertifiedFail;
        self.certificate = Some(cert);
        Ok(self)
    }
}

/// `hits[p][n−1]` records whether `n ∈ N(U,V)` for the cell pair `p`.
#[derive(Clone, Debug)]
pub struct HitTable {
    grid: Rational,
    horizon: usize,
    cells: Vec<Interval>,
    hits: Vec<Vec<bool>>,
}

impl HitTable {
    pub fn build(
        sch: &Schedule,
        grid: &Rational,
        horizon: usize,
        budget: &PropagationBudget,
    ) -> Result<Self> {
        let cells = uniform_cells(sch.domain(), grid).ok_or_else(|| Error::GridMismatch {
            grid: grid.to_string(),
            length: sch.domain().length().to_string(),
        })?;
        if horizon == 0 {
            return Err(Error::InvalidArgument("horizon must be at least 1".into()));
        }
        let targets: Vec<IntervalSet> = cells.iter().cloned().map(IntervalSet::from).collect();
        let mut hits = vec![vec![false; horizon]; cells.len() * cells.len()];
        for (u, cell) in targets.iter().enumerate() {
            let orbit = sch.image_orbit(cell, horizon, budget)?;
            for (t, img) in orbit.iter().enumerate() {
                for (v, target) in targets.iter().enumerate() {
                    hits[u * cells.len() + v][t] = img.meets(target);
                }
            }
        }
        Ok(Self {
            grid: grid.clone(),
            horizon,
            cells,
            hits,
        })
    }

    pub fn cells(&self) -> &[Interval] {
        &self.cells
    }

    fn pairs(&self) -> impl Iterator<Item = (usize, CellPair)> + '_ {
        let c = self.cells.len();
        (0..c * c).map(move |p| (p, CellPair { u: p / c, v: p % c }))
    }

    pub fn hit(&self, pair: CellPair, n: usize) -> bool {
        n >= 1 && n <= self.horizon && self.hits[pair.u * self.cells.len() + pair.v][n - 1]
    }

    fn verdict(&self, property: Property, tail: Option<usize>, witnesses: Vec<Witness>, gaps: Vec<Gap>) -> Verdict {
        Verdict {
            property,
            kind: if gaps.is_empty() {
                VerdictKind::WitnessedUpTo
            } else {
                VerdictKind::Inconclusive
            },
            grid: self.grid.clone(),
            horizon: self.horizon,
            tail: if gaps.is_empty() { tail } else { None },
            cells: self.cells.clone(),
            witnesses,
            gaps,
            certificate: None,
        }
    }

    pub fn transitivity(&self) -> Verdict {
        let (mut witnesses, mut gaps) = (Vec::new(), Vec::new());
        for (p, pair) in self.pairs() {
            match self.hits[p].iter().position(|&h| h) {
                Some(t) => witnesses.push(Witness::Hit { pair, n: t + 1 }),
                None => gaps.push(Gap::Unhit { pair }),
            }
        }
        self.verdict(Property::Transitivity, None, witnesses, gaps)
    }

    /// Checks unordered pairs of cell pairs, including a pair with itself.
    pub fn weak_mixing(&self) -> Verdict {
        let (mut witnesses, mut gaps) = (Vec::new(), Vec::new());
        let pairs: Vec<(usize, CellPair)> = self.pairs().collect();
        for (i, &(p, first)) in pairs.iter().enumerate() {
            for &(q, second) in &pairs[i..] {
                let common = (0..self.horizon).find(|&t| self.hits[p][t] && self.hits[q][t]);
                match common {
                    Some(t) => witnesses.push(Witness::CommonHit {
                        first,
                        second,
                        n: t + 1,
                    }),
                    None => gaps.push(Gap::NoCommonHit { first, second }),
                }
            }
        }
        self.verdict(Property::WeakMixing, None, witnesses, gaps)
    }

    pub fn mixing(&self) -> Verdict {
        let (mut witnesses, mut gaps) = (Vec::new(), Vec::new());
        let mut tail = 1;
        for (p, pair) in self.pairs() {
            let row = &self.hits[p];
            // Length of the all-true run ending at H.
            let run = row.iter().rev().take_while(|&&h| h).count();
            if run == 0 {
                gaps.push(Gap::NoTail { pair });
            } else {
                let from = self.horizon - run + 1;
                tail = tail.max(from);
                witnesses.push(Witness::Tail { pair, from });
            }
        }
        self.verdict(Property::Mixing, Some(tail), witnesses, gaps)
    }
}

pub fn transitivity_verdict(
    sch: &Schedule,
    grid: &Rational,
    horizon: usize,
    budget: &PropagationBudget,
) -> Result<Verdict> {
    Ok(HitTable::build(sch, grid, horizon, budget)?.transitivity())
}

pub fn weakmix_verdict(
    sch: &Schedule,
    grid: &Rational,
    horizon: usize,
    budget: &PropagationBudget,
) -> Result<Verdict> {
    Ok(HitTable::build(sch, grid, horizon, budget)?.weak_mixing())
}

pub fn mixing_verdict(
    sch: &Schedule,
    grid: &Rational,
    horizon: usize,
    budget: &PropagationBudget,
) -> Result<Verdict> {
    Ok(HitTable::build(sch, grid, horizon, budget)?.mixing())
}
