//! Finite unions of rational intervals in canonical form.
//!
//! Canonical means: parts sorted by lower endpoint, pairwise disjoint, and no
//! two neighbours could be merged into a single interval. `[a,b]` and `(b,c]`
//! merge into `[a,c]`; `(a,b)` and `(b,c)` stay apart because `b` belongs to
//! neither. Two canonical sets are equal as point sets iff their part lists
//! are equal, so `==` is exact set equality.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::rational::Rational;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntervalSet {
    parts: Vec<Interval>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetOp {
    Union,
    Intersect,
    Subtract,
}

impl IntervalSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_interval(iv: Interval) -> Self {
        Self { parts: vec![iv] }
    }

    /// Sorts and merges an arbitrary list of intervals.
    pub fn canonicalize(raw: impl IntoIterator<Item = Interval>) -> Self {
        let mut raw: Vec<Interval> = raw.into_iter().collect();
        raw.sort_by(Interval::cmp_lower);
        Self::merge_sorted(raw)
    }

    fn merge_sorted(sorted: Vec<Interval>) -> Self {
        let mut parts: Vec<Interval> = Vec::with_capacity(sorted.len());
        for next in sorted {
            let Some(cur) = parts.last_mut() else {
                parts.push(next);
                continue;
            };
            let joins = match next.lo().cmp(cur.hi()) {
                Ordering::Less => true,
                Ordering::Equal => !cur.hi_open() || !next.lo_open(),
                Ordering::Greater => false,
            };
            if !joins {
                parts.push(next);
                continue;
            }
            let (hi, hi_open) = match next.hi().cmp(cur.hi()) {
                Ordering::Greater => (next.hi().clone(), next.hi_open()),
                Ordering::Less => (cur.hi().clone(), cur.hi_open()),
                Ordering::Equal => (cur.hi().clone(), cur.hi_open() && next.hi_open()),
            };
            *cur = Interval::try_new(cur.lo().clone(), hi, cur.lo_open(), hi_open)
                .expect("merging two nonempty intervals is nonempty");
        }
        Self { parts }
    }

    /// Parses each literal and canonicalizes the result.
    pub fn parse_parts<S: AsRef<str>>(literals: &[S]) -> Result<Self> {
        let parts = literals
            .iter()
            .map(|s| s.as_ref().parse::<Interval>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::canonicalize(parts))
    }

    pub fn parts(&self) -> &[Interval] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Interval> {
        self.parts.iter()
    }

    /// Lebesgue measure. Openness flags do not matter.
    pub fn measure(&self) -> Rational {
        self.parts
            .iter()
            .fold(Rational::zero(), |acc, p| acc + p.length())
    }

    /// `sup − inf`, or zero for the empty set.
    pub fn diameter(&self) -> Rational {
        match (self.parts.first(), self.parts.last()) {
            (Some(a), Some(b)) => b.hi() - a.lo(),
            _ => Rational::zero(),
        }
    }

    pub fn contains(&self, x: &Rational) -> bool {
        // Parts are sorted and disjoint, so at most one part can hold x.
        let idx = self.parts.partition_point(|p| p.hi() < x);
        self.parts[idx..]
            .iter()
            .take(2)
            .any(|p| p.contains(x))
    }

    pub fn apply(&self, other: &IntervalSet, op: SetOp) -> IntervalSet {
        match op {
            SetOp::Union => self.union(other),
            SetOp::Intersect => self.intersect(other),
            SetOp::Subtract => self.subtract(other),
        }
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        Self::canonicalize(self.parts.iter().chain(other.parts.iter()).cloned())
    }

    pub fn intersect(&self, other: &IntervalSet) -> IntervalSet {
        let mut out = Vec::new();
        let (a, b) = (&self.parts, &other.parts);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            if let Some(iv) = a[i].intersect(&b[j]) {
                out.push(iv);
            }
            // Advance whichever part ends first; on a tie the one whose end
            // is open ends first.
            match a[i].hi().cmp(b[j].hi()) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        Self::merge_sorted(out)
    }

    pub fn subtract(&self, other: &IntervalSet) -> IntervalSet {
        let Some(hull) = self.hull() else {
            return IntervalSet::empty();
        };
        self.intersect(&other.complement_within(&hull))
    }

    /// `within ∖ self`.
    pub fn complement_within(&self, within: &Interval) -> IntervalSet {
        let mut gaps = Vec::new();
        let mut cursor = (within.lo().clone(), within.lo_open());
        for p in &self.parts {
            if let Some(g) =
                Interval::try_new(cursor.0.clone(), p.lo().clone(), cursor.1, !p.lo_open())
            {
                gaps.push(g);
            }
            if p.hi() > &cursor.0 || (p.hi() == &cursor.0 && !p.hi_open()) {
                cursor = (p.hi().clone(), !p.hi_open());
            }
        }
        if let Some(g) = Interval::try_new(cursor.0, within.hi().clone(), cursor.1, within.hi_open())
        {
            gaps.push(g);
        }
        IntervalSet::merge_sorted(gaps).intersect(&IntervalSet::from_interval(within.clone()))
    }

    /// Smallest closed interval containing the set.
    pub fn hull(&self) -> Option<Interval> {
        let (a, b) = (self.parts.first()?, self.parts.last()?);
        Interval::try_new(a.lo().clone(), b.hi().clone(), false, false)
    }

    /// `true` iff the point-set intersection is nonempty.
    pub fn meets(&self, other: &IntervalSet) -> bool {
        let (a, b) = (&self.parts, &other.parts);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            if a[i].meets(&b[j]) {
                return true;
            }
            match a[i].hi().cmp(b[j].hi()) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        false
    }

    pub fn is_subset(&self, other: &IntervalSet) -> bool {
        self.subtract(other).is_empty()
    }

    pub fn is_subset_of_interval(&self, iv: &Interval) -> bool {
        self.parts.iter().all(|p| p.is_subset(iv))
    }
}

impl From<Interval> for IntervalSet {
    fn from(iv: Interval) -> Self {
        Self::from_interval(iv)
    }
}

impl FromIterator<Interval> for IntervalSet {
    fn from_iter<T: IntoIterator<Item = Interval>>(iter: T) -> Self {
        Self::canonicalize(iter)
    }
}

impl<'a> IntoIterator for &'a IntervalSet {
    type Item = &'a Interval;
    type IntoIter = std::slice::Iter<'a, Interval>;

    fn into_iter(self) -> Self::IntoIter {
        self.parts.iter()
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("∅");
        }
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(" ∪ ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Accepts `"∅"`, `"[]"`, a single literal, or several joined by `∪`, `U`
/// or `;`.
impl FromStr for IntervalSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "∅" || s == "[]" {
            return Ok(IntervalSet::empty());
        }
        let literals: Vec<&str> = s
            .split(['∪', 'U', ';'])
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .collect();
        IntervalSet::parse_parts(&literals)
    }
}

impl Serialize for IntervalSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.parts.iter())
    }
}

impl<'de> Deserialize<'de> for IntervalSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<String> = Vec::deserialize(d)?;
        IntervalSet::parse_parts(&raw).map_err(de::Error::custom)
    }
}
