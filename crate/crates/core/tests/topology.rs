mod common;

use common::{lower_half_invariant_schedule, open_set, schedule, varied_schedule};
use nadyn::rational::{int, rat};
use nadyn::topo::{
    hitting_set, sensitivity_certificate, uniform_cells, HitTable, InvariantSetCertificate,
    SensitivityOutcome, VerdictKind,
};
use nadyn::{Interval, IntervalSet, PropagationBudget};
use proptest::prelude::*;

fn lower_open() -> impl Strategy<Value = IntervalSet> {
    open_set(8, 2).prop_map(|s| s.intersect(&"(0,1/2)".parse().unwrap()))
}

fn upper_open() -> impl Strategy<Value = IntervalSet> {
    open_set(8, 2).prop_map(|s| s.intersect(&"(1/2,1)".parse().unwrap()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn verdict_lattice(sch in varied_schedule()) {
        let t = HitTable::build(&sch, &rat(1, 4), 8, &PropagationBudget::default()).unwrap();
        let (tr, wm, mx) = (t.transitivity(), t.weak_mixing(), t.mixing());
        prop_assert!(!mx.is_witnessed() || wm.is_witnessed());
        prop_assert!(!wm.is_witnessed() || tr.is_witnessed());
        for v in [&tr, &wm, &mx] {
            prop_assert_ne!(v.kind, VerdictKind::CertifiedFail);
            prop_assert_eq!(v.is_witnessed(), v.gaps.is_empty());
        }
    }

    #[test]
    fn hitting_agrees_with_preimages(sch in schedule(3), u in open_set(8, 2), v in open_set(8, 2)) {
        let budget = PropagationBudget::default();
        let h = hitting_set(&sch, &u, &v, 6, &budget).unwrap();
        prop_assert!(!h.contains(0));
        for n in 1..=6 {
            let pre = sch.prefix_preimage(&v, n, &budget).unwrap();
            prop_assert_eq!(h.contains(n), u.meets(&pre), "n = {}", n);
        }
    }

    #[test]
    fn certificates_are_sound(sch in lower_half_invariant_schedule(), u in lower_open(), v in upper_open()) {
        prop_assume!(!u.is_empty() && !v.is_empty());
        let w: IntervalSet = "[0,1/2]".parse().unwrap();
        let cert = InvariantSetCertificate::new(&sch, u.clone(), v.clone(), w).unwrap();
        prop_assert!(cert.refutes_transitivity());
        let h = hitting_set(&sch, &u, &v, 50, &PropagationBudget::default()).unwrap();
        prop_assert!(h.members.is_empty());
    }

    #[test]
    fn any_accepted_certificate_is_sound(sch in schedule(3), u in open_set(8, 2), v in open_set(8, 2), w in open_set(8, 3)) {
        if let Ok(cert) = InvariantSetCertificate::new(&sch, u.clone(), v.clone(), w) {
            let h = hitting_set(&sch, &cert.u, &cert.v, 50, &PropagationBudget::default()).unwrap();
            prop_assert!(h.members.is_empty());
        }
    }

    #[test]
    fn certified_fail_needs_a_real_gap(sch in lower_half_invariant_schedule()) {
        let t = HitTable::build(&sch, &rat(1, 4), 10, &PropagationBudget::default()).unwrap();
        let tr = t.transitivity();
        // Cell (0,1/4) never reaches cell (3/4,1).
        prop_assert!(!tr.is_witnessed());
        let cert = InvariantSetCertificate::new(
            &sch,
            "(0,1/4)".parse().unwrap(),
            "(3/4,1)".parse().unwrap(),
            "[0,1/2]".parse().unwrap(),
        )
        .unwrap();
        let failed = tr.with_certificate(&sch, cert).unwrap();
        prop_assert_eq!(failed.kind, VerdictKind::CertifiedFail);
    }

    #[test]
    fn sensitivity_outcomes_recheck(sch in schedule(3), k in 1i64..=3) {
        let delta = rat(1, 1 << (k + 1));
        let scale = rat(1, 8);
        let budget = PropagationBudget::default();
        match sensitivity_certificate(&sch, &delta, &scale, 8, &budget).unwrap() {
            SensitivityOutcome::Certified(c) => {
                prop_assert!(c.recheck(&sch).unwrap());
                prop_assert_eq!(c.per_cell.len(), 8);
                for rec in &c.per_cell {
                    prop_assert!(rec.diameter > int(2) * &delta);
                }
            }
            SensitivityOutcome::Failed(f) => {
                prop_assert_eq!(f.failing.len() + f.separated_cells, 8);
                for cell in &f.failing {
                    let mut img = IntervalSet::from(cell.cell.clone());
                    for n in 1..=8 {
                        img = sch.map_at(n - 1).image(&img).unwrap();
                        prop_assert!(img.diameter() <= int(2) * &delta);
                        prop_assert!(img.diameter() <= cell.best_diameter);
                    }
                }
            }
        }
    }
}

#[test]
fn cells_cover_domain_up_to_boundaries() {
    let dom: Interval = "[0,3/2]".parse().unwrap();
    for den in [2, 4, 8, 64] {
        let cells = uniform_cells(&dom, &rat(1, den)).unwrap();
        let covered = IntervalSet::canonicalize(cells);
        assert_eq!(covered.measure(), rat(3, 2));
    }
}
