mod common;

use common::{interval_set, probe_points, raw_interval, unit};
use nadyn::IntervalSet;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn canonicalize_is_idempotent(raw in prop::collection::vec(raw_interval(12), 0..8)) {
        let once = IntervalSet::canonicalize(raw.into_iter().flatten());
        let twice = IntervalSet::canonicalize(once.parts().iter().cloned());
        prop_assert_eq!(&once, &twice);
        // Canonical parts are sorted and pairwise non-touching-mergeable.
        for w in once.parts().windows(2) {
            prop_assert!(w[0].hi() < w[1].lo() || (w[0].hi_open() && w[1].lo_open()));
        }
    }

    #[test]
    fn canonical_form_is_membership(raw in prop::collection::vec(raw_interval(12), 0..8)) {
        let raw: Vec<_> = raw.into_iter().flatten().collect();
        let s = IntervalSet::canonicalize(raw.clone());
        for x in probe_points(&[&s]) {
            prop_assert_eq!(s.contains(&x), raw.iter().any(|iv| iv.contains(&x)));
        }
    }

    #[test]
    fn de_morgan(a in interval_set(12, 4), b in interval_set(12, 4)) {
        let x = unit();
        let lhs = a.union(&b).complement_within(&x);
        let rhs = a.complement_within(&x).intersect(&b.complement_within(&x));
        prop_assert_eq!(lhs, rhs);
        let lhs = a.intersect(&b).complement_within(&x);
        let rhs = a.complement_within(&x).union(&b.complement_within(&x));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn distributivity(a in interval_set(8, 3), b in interval_set(8, 3), c in interval_set(8, 3)) {
        prop_assert_eq!(a.intersect(&b.union(&c)), a.intersect(&b).union(&a.intersect(&c)));
        prop_assert_eq!(a.union(&b.intersect(&c)), a.union(&b).intersect(&a.union(&c)));
    }

    #[test]
    fn complement_partitions_domain(a in interval_set(12, 4)) {
        let x = unit();
        let c = a.complement_within(&x);
        prop_assert_eq!(a.union(&c), IntervalSet::from_interval(x));
        prop_assert!(!a.meets(&c));
    }

    #[test]
    fn subtraction_matches_complement(a in interval_set(12, 4), b in interval_set(12, 4)) {
        prop_assert_eq!(a.subtract(&b), a.intersect(&b.complement_within(&unit())));
    }

    #[test]
    fn measure_is_additive(a in interval_set(16, 4), b in interval_set(16, 4)) {
        prop_assert_eq!(
            a.union(&b).measure() + a.intersect(&b).measure(),
            a.measure() + b.measure()
        );
    }

    #[test]
    fn meets_agrees_with_sample_points(a in interval_set(8, 3), b in interval_set(8, 3)) {
        let oracle = probe_points(&[&a, &b])
            .iter()
            .any(|x| a.contains(x) && b.contains(x));
        prop_assert_eq!(a.meets(&b), oracle);
        prop_assert_eq!(a.meets(&b), !a.intersect(&b).is_empty());
    }

    #[test]
    fn intersection_membership(a in interval_set(8, 3), b in interval_set(8, 3)) {
        let i = a.intersect(&b);
        let u = a.union(&b);
        for x in probe_points(&[&a, &b]) {
            prop_assert_eq!(i.contains(&x), a.contains(&x) && b.contains(&x));
            prop_assert_eq!(u.contains(&x), a.contains(&x) || b.contains(&x));
        }
    }

    #[test]
    fn subset_is_intersection_identity(a in interval_set(8, 3), b in interval_set(8, 3)) {
        prop_assert_eq!(a.is_subset(&b), a.intersect(&b) == a);
    }

    #[test]
    fn text_form_round_trips(a in interval_set(16, 5)) {
        let back: IntervalSet = a.to_string().parse().unwrap();
        prop_assert_eq!(&back, &a);
        let json = serde_json::to_string(&a).unwrap();
        let back: IntervalSet = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, a);
    }
}
