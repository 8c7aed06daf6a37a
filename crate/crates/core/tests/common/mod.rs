//! Random sets, maps and schedules on `[0,1]` for property tests.
//!
//! Endpoints live on coarse dyadic grids so that preimage fragmentation
//! stays small enough for exact computation at moderate depths.

#![allow(dead_code)]

use nadyn::rational::{int, rat};
use nadyn::{Interval, IntervalSet, PLMap, Piece, Rational, Schedule};
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

/// Interval with endpoints `k/den` in `[0,1]` and random openness. Some
/// draws are empty.
pub fn raw_interval(den: i64) -> impl Strategy<Value = Option<Interval>> {
    (0..=den, 0..=den, any::<bool>(), any::<bool>()).prop_map(move |(a, b, lo, hi)| {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        Interval::try_new(rat(a, den), rat(b, den), lo, hi)
    })
}

pub fn nonempty_interval(den: i64) -> impl Strategy<Value = Interval> {
    raw_interval(den).prop_filter_map("empty interval", |iv| iv)
}

/// Subset of `[0,1]` made of up to `max_parts` intervals on the `1/den` grid.
pub fn interval_set(den: i64, max_parts: usize) -> impl Strategy<Value = IntervalSet> {
    prop::collection::vec(raw_interval(den), 0..=max_parts)
        .prop_map(|v| IntervalSet::canonicalize(v.into_iter().flatten()))
}

/// Nonempty union of open grid intervals, so the set has positive measure.
pub fn open_set(den: i64, max_parts: usize) -> impl Strategy<Value = IntervalSet> {
    prop::collection::vec((0..den, 1..=den), 1..=max_parts).prop_map(move |v| {
        IntervalSet::canonicalize(v.into_iter().map(|(a, w)| {
            let b = (a + w).min(den);
            Interval::open(rat(a, den), rat(b, den)).expect("a < b")
        }))
    })
}

/// A self-map of `[0,1]` with up to `max_pieces` affine pieces. Breakpoints
/// sit on the `1/8` grid; values at piece ends sit on the `1/8` grid too,
/// shared across breakpoints when `continuous` is drawn.
pub fn pl_map(max_pieces: usize) -> impl Strategy<Value = PLMap> {
    pl_map_with(max_pieces, any::<bool>().boxed())
}

pub fn continuous_pl_map(max_pieces: usize) -> impl Strategy<Value = PLMap> {
    pl_map_with(max_pieces, Just(true).boxed())
}

fn pl_map_with(max_pieces: usize, continuous: BoxedStrategy<bool>) -> impl Strategy<Value = PLMap> {
    let breaks = prop::sample::subsequence((1..8i64).collect::<Vec<_>>(), 0..max_pieces);
    (breaks, continuous).prop_flat_map(|(breaks, continuous)| {
        let n = breaks.len() + 1;
        (
            Just(breaks),
            Just(continuous),
            prop::collection::vec(any::<bool>(), n - 1),
            prop::collection::vec((0..=8i64, 0..=8i64), n),
        )
            .prop_map(|(breaks, continuous, left_closed, ends)| {
                build_map(&breaks, continuous, &left_closed, &ends)
            })
    })
}

fn build_map(breaks: &[i64], continuous: bool, left_closed: &[bool], ends: &[(i64, i64)]) -> PLMap {
    let mut xs = vec![0];
    xs.extend_from_slice(breaks);
    xs.push(8);
    let mut pieces = Vec::new();
    for i in 0..xs.len() - 1 {
        let (x0, x1) = (xs[i], xs[i + 1]);
        // Breakpoint `xs[i]` belongs to the left piece when `left_closed[i-1]`.
        let lo_open = i > 0 && left_closed[i - 1];
        let hi_open = i + 1 < xs.len() - 1 && !left_closed[i];
        let (y0, y1) = if continuous {
            (ends[i].0, if i + 1 < ends.len() { ends[i + 1].0 } else { ends[i].1 })
        } else {
            ends[i]
        };
        let slope = rat(y1 - y0, x1 - x0);
        let intercept = rat(y0, 8) - &slope * rat(x0, 8);
        let on = Interval::new(rat(x0, 8), rat(x1, 8), lo_open, hi_open).expect("x0 < x1");
        pieces.push(Piece::new(on, slope, intercept));
    }
    PLMap::new(unit(), pieces).expect("generated map is valid")
}

pub fn schedule(max_pieces: usize) -> impl Strategy<Value = Schedule> {
    (
        prop::collection::vec(pl_map(max_pieces), 0..=2),
        prop::collection::vec(pl_map(max_pieces), 1..=3),
    )
        .prop_map(|(pre, cyc)| Schedule::new(pre, cyc).expect("same domain"))
}

/// Schedule whose maps all send `[0,1/2]` into itself: `x ↦ g(2x)/2` on
/// `[0,1/2]` for a random map `g`, and a random affine piece on `(1/2,1]`.
pub fn lower_half_invariant_schedule() -> impl Strategy<Value = Schedule> {
    (
        prop::collection::vec(lower_half_invariant_map(), 0..=1),
        prop::collection::vec(lower_half_invariant_map(), 1..=2),
    )
        .prop_map(|(pre, cyc)| Schedule::new(pre, cyc).unwrap())
}

fn lower_half_invariant_map() -> impl Strategy<Value = PLMap> {
    (pl_map(3), 0..=8i64, 0..=8i64).prop_map(|(g, y0, y1)| {
        let half = rat(1, 2);
        let mut pieces: Vec<Piece> = g
            .pieces()
            .iter()
            .map(|p| {
                let on = Interval::new(
                    p.on.lo() * &half,
                    p.on.hi() * &half,
                    p.on.lo_open(),
                    p.on.hi_open(),
                )
                .expect("scaled piece");
                Piece::new(on, p.slope.clone(), &p.intercept * &half)
            })
            .collect();
        let slope = rat(y1 - y0, 4);
        let intercept = rat(y0, 8) - &slope * &half;
        pieces.push(Piece::new(
            Interval::new(half, int(1), true, false).unwrap(),
            slope,
            intercept,
        ));
        PLMap::new(unit(), pieces).expect("pasted map is valid")
    })
}

/// Every piece maps its interval onto all of `[0,1]`, increasing or
/// decreasing. Such maps are expanding with at least two branches.
pub fn full_branch_map() -> impl Strategy<Value = PLMap> {
    let breaks = prop::sample::subsequence((1..8i64).collect::<Vec<_>>(), 1..4);
    breaks.prop_flat_map(|breaks| {
        let n = breaks.len() + 1;
        (
            Just(breaks),
            prop::collection::vec(any::<bool>(), n - 1),
            prop::collection::vec(any::<bool>(), n),
        )
            .prop_map(|(breaks, left_closed, up)| {
                let ends: Vec<(i64, i64)> =
                    up.iter().map(|&u| if u { (0, 8) } else { (8, 0) }).collect();
                build_map(&breaks, false, &left_closed, &ends)
            })
    })
}

/// Swaps the halves of `[0,1]`: `[0,1/2]` is stretched onto `(1/2,1]`-ish
/// by a scaled full-branch map and the upper half is translated down. Such
/// systems are transitive with period two, hence never weakly mixing.
pub fn half_swap_map() -> impl Strategy<Value = PLMap> {
    full_branch_map().prop_map(|g| {
        let half = rat(1, 2);
        // x ↦ 1/2 + g(2x)/2 on [0,1/2]
        let mut pieces: Vec<Piece> = g
            .pieces()
            .iter()
            .map(|p| {
                let on = Interval::new(p.on.lo() * &half, p.on.hi() * &half, p.on.lo_open(), p.on.hi_open())
                    .expect("scaled piece");
                Piece::new(on, p.slope.clone(), &p.intercept * &half + &half)
            })
            .collect();
        pieces.push(Piece::new(
            Interval::new(half.clone(), int(1), true, false).unwrap(),
            int(1),
            -half,
        ));
        PLMap::new(unit(), pieces).expect("half swap is valid")
    })
}

/// Random schedules mixing generic maps, full-branch maps and half swaps,
/// so that every verdict kind occurs.
pub fn varied_schedule() -> impl Strategy<Value = Schedule> {
    prop_oneof![
        2 => schedule(3),
        2 => (prop::collection::vec(pl_map(3), 0..=2), prop::collection::vec(full_branch_map(), 1..=3))
            .prop_map(|(pre, cyc)| Schedule::new(pre, cyc).unwrap()),
        1 => prop::collection::vec(half_swap_map(), 1..=2)
            .prop_map(|cyc| Schedule::new(vec![], cyc).unwrap()),
    ]
}

pub fn unit() -> Interval {
    Interval::closed(int(0), int(1)).unwrap()
}

/// Rational sample points that decide membership differences: all part
/// endpoints plus midpoints between consecutive endpoints.
pub fn probe_points(sets: &[&IntervalSet]) -> Vec<Rational> {
    let mut pts: Vec<Rational> = sets
        .iter()
        .flat_map(|s| s.iter().flat_map(|p| [p.lo().clone(), p.hi().clone()]))
        .chain([int(0), int(1)])
        .collect();
    pts.sort();
    pts.dedup();
    let mids: Vec<Rational> = pts
        .windows(2)
        .map(|w| (&w[0] + &w[1]) / int(2))
        .collect();
    pts.extend(mids);
    pts
}

/// Draws `count` values from `strategy` with a fixed seed.
pub fn sample<S: Strategy>(strategy: S, seed: u8, count: usize) -> Vec<S::Value> {
    let rng = TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]);
    let mut runner = TestRunner::new_with_rng(Config::default(), rng);
    (0..count)
        .map(|_| {
            strategy
                .new_tree(&mut runner)
                .expect("strategy never rejects")
                .current()
        })
        .collect()
}
