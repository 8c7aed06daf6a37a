//! Scale-bounded sensitivity certificates.
//!
//! For every open cell `C` of width `scale`, find the least `n ≤ H` with
//! `diam f₀ⁿ(C) > 2δ`. Any set of diameter above `2δ` has, for every point
//! `p`, a member farther than `δ` from `p`. A ball of radius `scale` around
//! any `x` contains a whole cell, so a full certificate shows: every `x` and
//! every neighborhood of radius at least `scale` contain some `y` with
//! `|f₀ⁿ(x) − f₀ⁿ(y)| > δ` for some `1 ≤ n ≤ H`.
//!
//! Smaller neighborhoods are not covered; no claim is made about them.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::rational::{int, serde_str, Rational};
use crate::schedule::{PropagationBudget, Schedule};
use crate::set::IntervalSet;
use crate::topo::hitting::uniform_cells;

/// `|x₀ − y₀| / 8`.
///
/// With `|x₀ − y₀| = 8δ`, every point `x` is at least `4δ` from `x₀` or from
/// `y₀`. Under topological weak mixing some time sends two points of a small
/// ball around `x` within `δ` of `x₀` and of `x` respectively; their images
/// are then at least `2δ` apart, so one of them is at least `δ` from the
/// image of `x`.
pub fn sensitivity_constant(x0: &Rational, y0: &Rational) -> Result<Rational> {
    if x0 == y0 {
        return Err(Error::DegeneratePair);
    }
    Ok((x0 - y0).abs() / int(8))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellSeparation {
    pub cell: Interval,
    pub n: usize,
    #[serde(with = "serde_str")]
    pub diameter: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SensitivityCertificate {
    #[serde(with = "serde_str")]
    pub delta: Rational,
    #[serde(with = "serde_str")]
    pub scale: Rational,
    pub horizon: usize,
    pub per_cell: Vec<CellSeparation>,
}

impl SensitivityCertificate {
    /// Recomputes every recorded image diameter and checks it exceeds `2δ`.
    pub fn recheck(&self, sch: &Schedule) -> Result<bool> {
        let Some(cells) = uniform_cells(sch.domain(), &self.scale) else {
            return Ok(false);
        };
        if cells.len() != self.per_cell.len() {
            return Ok(false);
        }
        let bound = int(2) * &self.delta;
        for (cell, rec) in cells.iter().zip(&self.per_cell) {
            if cell != &rec.cell || rec.n == 0 || rec.n > self.horizon {
                return Ok(false);
            }
            let d = sch
                .prefix_image(&IntervalSet::from(cell.clone()), rec.n)?
                .diameter();
            if d != rec.diameter || d <= bound {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellShortfall {
    pub cell: Interval,
    /// Largest image diameter seen for `1 ≤ n ≤ H`.
    #[serde(with = "serde_str")]
    pub best_diameter: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SensitivityFailure {
    #[serde(with = "serde_str")]
    pub delta: Rational,
    #[serde(with = "serde_str")]
    pub scale: Rational,
    pub horizon: usize,
    pub failing: Vec<CellShortfall>,
    pub separated_cells: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SensitivityOutcome {
    Certified(SensitivityCertificate),
    Failed(SensitivityFailure),
}

impl SensitivityOutcome {
    pub fn certificate(&self) -> Option<&SensitivityCertificate> {
        match self {
            SensitivityOutcome::Certified(c) => Some(c),
            SensitivityOutcome::Failed(_) => None,
        }
    }
}

pub fn sensitivity_certificate(
    sch: &Schedule,
    delta: &Rational,
    scale: &Rational,
    horizon: usize,
    budget: &PropagationBudget,
) -> Result<SensitivityOutcome> {
    if !delta.is_positive() {
        return Err(Error::InvalidArgument("delta must be positive".into()));
    }
    if horizon == 0 {
        return Err(Error::InvalidArgument("horizon must be at least 1".into()));
    }
    let cells = uniform_cells(sch.domain(), scale).ok_or_else(|| Error::ScaleMismatch {
        scale: scale.to_string(),
        length: sch.domain().length().to_string(),
    })?;
    let bound = int(2) * delta;
    let mut per_cell = Vec::with_capacity(cells.len());
    let mut failing = Vec::new();
    for cell in cells {
        let mut img = IntervalSet::from(cell.clone());
        let mut best = Rational::zero();
        let mut found = None;
        for n in 1..=horizon {
            img = sch.map_at(n - 1).image(&img)?;
            budget.check(n, &img)?;
            let d = img.diameter();
            if d > bound {
                found = Some((n, d));
                break;
            }
            if d > best {
                best = d;
            }
        }
        match found {
            Some((n, diameter)) => per_cell.push(CellSeparation { cell, n, diameter }),
            None => failing.push(CellShortfall {
                cell,
                best_diameter: best,
            }),
        }
    }
    if failing.is_empty() {
        Ok(SensitivityOutcome::Certified(SensitivityCertificate {
            delta: delta.clone(),
            scale: scale.clone(),
            horizon,
            per_cell,
        }))
    } else {
        Ok(SensitivityOutcome::Failed(SensitivityFailure {
            delta: delta.clone(),
            scale: scale.clone(),
            horizon,
            separated_cells: per_cell.len(),
            failing,
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::schedule::{bundled_example, isometry_schedule};

    #[test]
    fn constant_from_pair() {
        assert_eq!(sensitivity_constant(&int(0), &int(1)).unwrap(), rat(1, 8));
        assert_eq!(sensitivity_constant(&int(0), &rat(3, 2)).unwrap(), rat(3, 16));
        assert_eq!(sensitivity_constant(&rat(3, 2), &int(0)).unwrap(), rat(3, 16));
        assert!(matches!(
            sensitivity_constant(&rat(1, 2), &rat(1, 2)),
            Err(Error::DegeneratePair)
        ));
    }

    #[test]
    fn tent_certificate() {
        let tent = bundled_example("tent").unwrap();
        let out =
            sensitivity_certificate(&tent, &rat(1, 8), &rat(1, 16), 8, &Default::default()).unwrap();
        let cert = out.certificate().expect("tent separates");
        assert_eq!(cert.per_cell.len(), 16);
        assert!(cert.per_cell.iter().all(|c| c.n <= 4));
        assert!(cert.recheck(&tent).unwrap());
    }

    #[test]
    fn extended_tent_certificate() {
        let sch = bundled_example("example31").unwrap();
        let out =
            sensitivity_certificate(&sch, &rat(1, 4), &rat(1, 64), 30, &Default::default()).unwrap();
        let cert = out.certificate().expect("extended tent separates");
        assert_eq!(cert.per_cell.len(), 96);
        assert!(cert.recheck(&sch).unwrap());
    }

    #[test]
    fn isometries_never_separate() {
        let sch = isometry_schedule();
        let out =
            sensitivity_certificate(&sch, &rat(1, 8), &rat(1, 4), 100, &Default::default()).unwrap();
        match out {
            SensitivityOutcome::Failed(f) => {
                assert_eq!(f.failing.len(), 4);
                assert!(f.failing.iter().all(|c| c.best_diameter == rat(1, 4)));
            }
            SensitivityOutcome::Certified(_) => panic!("isometries cannot separate"),
        }
    }

    #[test]
    fn tampered_certificate_fails_recheck() {
        let tent = bundled_example("tent").unwrap();
        let out =
            sensitivity_certificate(&tent, &rat(1, 8), &rat(1, 16), 8, &Default::default()).unwrap();
        let mut cert = out.certificate().unwrap().clone();
        cert.per_cell[3].n = 1;
        assert!(!cert.recheck(&tent).unwrap());
        let mut cert = out.certificate().unwrap().clone();
        cert.delta = rat(1, 2);
        assert!(!cert.recheck(&tent).unwrap());
    }

    #[test]
    fn scale_mismatch() {
        let tent = bundled_example("tent").unwrap();
        assert!(matches!(
            sensitivity_certificate(&tent, &rat(1, 8), &rat(2, 3), 4, &Default::default()),
            Err(Error::ScaleMismatch { .. })
        ));
        assert!(sensitivity_certificate(&tent, &rat(0, 1), &rat(1, 4), 4, &Default::default()).is_err());
    }
}
