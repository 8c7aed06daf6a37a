//! Piecewise-linear self-maps of a closed interval.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::rational::Rational;
use crate::set::IntervalSet;

/// One affine branch `x ↦ slope·x + intercept` on `on`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Piece {
    pub on: Interval,
    pub slope: Rational,
    pub intercept: Rational,
}

impl Piece {
    pub fn new(on: Interval, slope: Rational, intercept: Rational) -> Self {
        Self {
            on,
            slope,
            intercept,
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        &self.slope * x + &self.intercept
    }

    pub fn image(&self) -> Interval {
        self.on.affine_image(&self.slope, &self.intercept)
    }
}

/// A validated piecewise-linear map of `domain` into itself.
///
/// Pieces are stored sorted by their lower endpoint and partition the
/// domain exactly, openness flags included.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PLMap {
    domain: Interval,
    pieces: Vec<Piece>,
}

impl PLMap {
    pub fn new(domain: Interval, mut pieces: Vec<Piece>) -> Result<Self> {
        if !domain.is_closed() || domain.is_degenerate() {
            return Err(Error::BadDomain(domain));
        }
        // Keep the caller's numbering for diagnostics.
        let mut order: Vec<usize> = (0..pieces.len()).collect();
        order.sort_by(|&a, &b| pieces[a].on.cmp_lower(&pieces[b].on));

        // Any earlier piece starts no later than the current one, so an
        // overlap exists iff the current piece meets the earlier piece that
        // reaches furthest right.
        let mut reach: Option<usize> = None;
        for &i in &order {
            if let Some(r) = reach {
                if let Some(overlap) = pieces[r].on.intersect(&pieces[i].on) {
                    return Err(Error::PieceOverlap {
                        first: r.min(i),
                        second: r.max(i),
                        overlap: overlap.into(),
                    });
                }
                let (a, b) = (&pieces[r].on, &pieces[i].on);
                if b.hi() > a.hi() || (b.hi() == a.hi() && a.hi_open() && !b.hi_open()) {
                    reach = Some(i);
                }
            } else {
                reach = Some(i);
            }
        }
        let covered = IntervalSet::canonicalize(pieces.iter().map(|p| p.on.clone()));
        let whole = IntervalSet::from_interval(domain.clone());
        let missing = whole.subtract(&covered);
        if !missing.is_empty() {
            return Err(Error::PieceGap { missing });
        }
        if !covered.is_subset(&whole) {
            let outside = covered.subtract(&whole);
            return Err(Error::OutOfDomain {
                what: format!("piece interval(s) {outside}"),
                domain,
            });
        }
        for (i, p) in pieces.iter().enumerate() {
            let image = p.image();
            if !image.is_subset(&domain) {
                return Err(Error::NotSelfMap {
                    piece: i,
                    on: p.on.clone(),
                    image,
                    domain,
                });
            }
        }
        let mut sorted = Vec::with_capacity(pieces.len());
        let mut slots: Vec<Option<Piece>> = pieces.drain(..).map(Some).collect();
        for i in order {
            sorted.push(slots[i].take().expect("each index used once"));
        }
        Ok(Self {
            domain,
            pieces: sorted,
        })
    }

    pub fn domain(&self) -> &Interval {
        &self.domain
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// `true` when adjacent pieces agree at every shared breakpoint.
    pub fn is_continuous(&self) -> bool {
        self.pieces.windows(2).all(|w| {
            let b = w[0].on.hi();
            w[0].eval(b) == w[1].eval(b)
        })
    }

    fn piece_index(&self, x: &Rational) -> Option<usize> {
        let idx = self.pieces.partition_point(|p| p.on.hi() < x);
        (idx..self.pieces.len().min(idx + 2)).find(|&i| self.pieces[i].on.contains(x))
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        self.piece_index(x)
            .map(|i| self.pieces[i].eval(x))
            .ok_or_else(|| Error::OutOfDomain {
                what: format!("point {x}"),
                domain: self.domain.clone(),
            })
    }

    /// Exact forward image of a subset of the domain.
    pub fn image(&self, s: &IntervalSet) -> Result<IntervalSet> {
        if !s.is_subset_of_interval(&self.domain) {
            return Err(Error::OutOfDomain {
                what: format!("set {s}"),
                domain: self.domain.clone(),
            });
        }
        let mut out = Vec::new();
        let parts = s.parts();
        let (mut i, mut j) = (0, 0);
        while i < parts.len() && j < self.pieces.len() {
            let piece = &self.pieces[j];
            if let Some(common) = parts[i].intersect(&piece.on) {
                out.push(common.affine_image(&piece.slope, &piece.intercept));
            }
            // Pieces touch, so on a shared right endpoint the part outlives
            // the piece exactly when it keeps the point and the piece drops it.
            let part_ends_first = match parts[i].hi().cmp(piece.on.hi()) {
                std::cmp::Ordering::Less => true,
                std::cmp::Ordering::Greater => false,
                std::cmp::Ordering::Equal => parts[i].hi_open() || !piece.on.hi_open(),
            };
            if part_ends_first {
                i += 1;
            } else {
                j += 1;
            }
        }
        Ok(IntervalSet::canonicalize(out))
    }

    /// Exact preimage of `s`, restricted to the domain.
    pub fn preimage(&self, s: &IntervalSet) -> IntervalSet {
        self.preimage_capped(s, usize::MAX)
            .expect("an unbounded cap cannot be exceeded")
    }

    /// As [`PLMap::preimage`], but gives up with the raw part count as soon
    /// as the canonical result is certain to exceed `cap` parts.
    pub(crate) fn preimage_capped(
        &self,
        s: &IntervalSet,
        cap: usize,
    ) -> std::result::Result<IntervalSet, usize> {
        // Contributions of distinct pieces live in disjoint piece intervals,
        // and within one piece an affine bijection keeps parts unmergeable,
        // so canonicalization removes at most `pieces − 1` parts.
        let limit = cap.saturating_add(self.pieces.len().saturating_sub(1));
        let mut out: Vec<Interval> = Vec::new();
        for piece in &self.pieces {
            if piece.slope.is_zero() {
                if s.contains(&piece.intercept) {
                    out.push(piece.on.clone());
                }
            } else {
                let range = piece.image();
                let parts = s.parts();
                let start = parts.partition_point(|p| p.hi() < range.lo());
                for part in &parts[start..] {
                    if part.lo() > range.hi() {
                        break;
                    }
                    let back = part.affine_preimage(&piece.slope, &piece.intercept);
                    if let Some(iv) = back.intersect(&piece.on) {
                        out.push(iv);
                    }
                }
            }
            if out.len() > limit {
                return Err(out.len());
            }
        }
        Ok(IntervalSet::canonicalize(out))
    }
}

impl fmt::Display for PLMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PL map on {}:", self.domain)?;
        for p in &self.pieces {
            write!(f, " {} ↦ {}·x + {};", p.on, p.slope, p.intercept)?;
        }
        Ok(())
    }
}
