use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{parse_rational, Rational};

/// A nonempty interval with rational endpoints and independent openness
/// flags. A degenerate point `[a,a]` is allowed; empty intervals are not
/// representable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
    lo_open: bool,
    hi_open: bool,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational, lo_open: bool, hi_open: bool) -> Result<Self> {
        Self::try_new(lo.clone(), hi.clone(), lo_open, hi_open).ok_or_else(|| {
            Error::MalformedInterval(format!(
                "{}{lo},{hi}{} is empty",
                if lo_open { '(' } else { '[' },
                if hi_open { ')' } else { ']' }
            ))
        })
    }

    /// `None` when the bounds describe the empty set.
    pub fn try_new(lo: Rational, hi: Rational, lo_open: bool, hi_open: bool) -> Option<Self> {
        match lo.cmp(&hi) {
            Ordering::Less => Some(Self {
                lo,
                hi,
                lo_open,
                hi_open,
            }),
            Ordering::Equal if !lo_open && !hi_open => Some(Self {
                lo,
                hi,
                lo_open,
                hi_open,
            }),
            _ => None,
        }
    }

    pub fn closed(lo: Rational, hi: Rational) -> Result<Self> {
        Self::new(lo, hi, false, false)
    }

    pub fn open(lo: Rational, hi: Rational) -> Result<Self> {
        Self::new(lo, hi, true, true)
    }

    pub fn point(x: Rational) -> Self {
        Self {
            lo: x.clone(),
            hi: x,
            lo_open: false,
            hi_open: false,
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn lo_open(&self) -> bool {
        self.lo_open
    }

    pub fn hi_open(&self) -> bool {
        self.hi_open
    }

    pub fn is_closed(&self) -> bool {
        !self.lo_open && !self.hi_open
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn length(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let above = if self.lo_open { x > &self.lo } else { x >= &self.lo };
        let below = if self.hi_open { x < &self.hi } else { x <= &self.hi };
        above && below
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let (lo, lo_open) = match self.lo.cmp(&other.lo) {
            Ordering::Less => (&other.lo, other.lo_open),
            Ordering::Greater => (&self.lo, self.lo_open),
            Ordering::Equal => (&self.lo, self.lo_open || other.lo_open),
        };
        let (hi, hi_open) = match self.hi.cmp(&other.hi) {
            Ordering::Less => (&self.hi, self.hi_open),
            Ordering::Greater => (&other.hi, other.hi_open),
            Ordering::Equal => (&self.hi, self.hi_open || other.hi_open),
        };
        Interval::try_new(lo.clone(), hi.clone(), lo_open, hi_open)
    }

    pub fn meets(&self, other: &Interval) -> bool {
        self.intersect(other).is_some()
    }

    /// `true` when `self ⊆ other`.
    pub fn is_subset(&self, other: &Interval) -> bool {
        let lo_ok = match self.lo.cmp(&other.lo) {
            Ordering::Less => false,
            Ordering::Greater => true,
            Ordering::Equal => self.lo_open || !other.lo_open,
        };
        let hi_ok = match self.hi.cmp(&other.hi) {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => self.hi_open || !other.hi_open,
        };
        lo_ok && hi_ok
    }

    /// Image under `x ↦ slope·x + intercept`. Negative slopes swap the
    /// endpoints together with their flags; a zero slope collapses to a point.
    pub fn affine_image(&self, slope: &Rational, intercept: &Rational) -> Interval {
        if slope.is_zero() {
            return Interval::point(intercept.clone());
        }
        let a = slope * &self.lo + intercept;
        let b = slope * &self.hi + intercept;
        if slope.is_positive() {
            Interval {
                lo: a,
                hi: b,
                lo_open: self.lo_open,
                hi_open: self.hi_open,
            }
        } else {
            Interval {
                lo: b,
                hi: a,
                lo_open: self.hi_open,
                hi_open: self.lo_open,
            }
        }
    }

    /// Preimage of `self` under a non-constant affine map, over all of ℝ.
    pub(crate) fn affine_preimage(&self, slope: &Rational, intercept: &Rational) -> Interval {
        debug_assert!(!slope.is_zero());
        let inv = slope.recip();
        let shift = -(intercept * &inv);
        self.affine_image(&inv, &shift)
    }

    /// Sort key for sweeps: by lower endpoint, closed before open.
    pub(crate) fn cmp_lower(&self, other: &Interval) -> Ordering {
        self.lo
            .cmp(&other.lo)
            .then(self.lo_open.cmp(&other.lo_open))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{},{}{}",
            if self.lo_open { '(' } else { '[' },
            self.lo,
            self.hi,
            if self.hi_open { ')' } else { ']' }
        )
    }
}

impl FromStr for Interval {
    type Err = Error;

    fn from_str(input: &str) -> Result<Self> {
        let fail = |reason: String| Error::ParseInterval {
            input: input.to_string(),
            reason,
        };
        let s = input.trim();
        let mut chars = s.chars();
        let lo_open = match chars.next() {
            Some('[') => false,
            Some('(') => true,
            _ => return Err(fail("must start with '[' or '('".into())),
        };
        let hi_open = match chars.next_back() {
            Some(']') => false,
            Some(')') => true,
            _ => return Err(fail("must end with ']' or ')'".into())),
        };
        let body = chars.as_str();
        let (a, b) = body
            .split_once(',')
            .ok_or_else(|| fail("expected two endpoints separated by ','".into()))?;
        let lo = parse_rational(a).map_err(|e| fail(e.to_string()))?;
        let hi = parse_rational(b).map_err(|e| fail(e.to_string()))?;
        Interval::new(lo, hi, lo_open, hi_open).map_err(|e| fail(e.to_string()))
    }
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Interval {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(de::Error::custom)
    }
}
