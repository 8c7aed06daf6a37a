use serde::Serialize;

use crate::error::{Error, InvariantFailure, Result};
use crate::schedule::Schedule;
use crate::set::IntervalSet;
use crate::topo::hitting::check_region;

/// Proof that `N(U,V)` is empty for every horizon.
///
/// Holds three exactly checked facts: `f₀(U) ⊆ W`, `f(W) ⊆ W` for every map
/// `f` the schedule ever uses, and `W ∩ V = ∅`. By induction
/// `f₀ⁿ(U) ⊆ W` for all `n ≥ 1`, so no image of `U` ever meets `V`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantSetCertificate {
    pub w: IntervalSet,
    pub u: IntervalSet,
    pub v: IntervalSet,
    /// Number of distinct schedule positions (preamble plus cycle) checked.
    pub checked_maps: usize,
}

impl InvariantSetCertificate {
    pub fn new(
        sch: &Schedule,
        u: IntervalSet,
        v: IntervalSet,
        w: IntervalSet,
    ) -> Result<Self> {
        let checked_maps = verify(sch, &u, &v, &w)?;
        Ok(Self {
            w,
            u,
            v,
            checked_maps,
        })
    }

    /// Re-runs every check against `sch`.
    pub fn recheck(&self, sch: &Schedule) -> Result<()> {
        verify(sch, &self.u, &self.v, &self.w).map(|_| ())
    }

    /// `U` and `V` both contain a nonempty open interval, so the certificate
    /// refutes transitivity (and hence weak mixing and mixing) outright.
    pub fn refutes_transitivity(&self) -> bool {
        use num_traits::Zero;
        !self.u.measure().is_zero() && !self.v.measure().is_zero()
    }
}

fn verify(sch: &Schedule, u: &IntervalSet, v: &IntervalSet, w: &IntervalSet) -> Result<usize> {
    check_region(sch, "U", u)?;
    check_region(sch, "V", v)?;
    check_region(sch, "W", w)?;
    let first = sch.map_at(0).image(u)?;
    if !first.is_subset(w) {
        return Err(Error::NotInvariant {
            condition: InvariantFailure::FirstImageEscapes,
            offending: first.subtract(w),
        });
    }
    let mut checked = 0;
    for (i, m) in sch.maps().enumerate() {
        let img = m.image(w)?;
        if !img.is_subset(w) {
            return Err(Error::NotInvariant {
                condition: InvariantFailure::NotForwardInvariant { map_index: i },
                offending: img.subtract(w),
            });
        }
        checked += 1;
    }
    if w.meets(v) {
        return Err(Error::NotInvariant {
            condition: InvariantFailure::MeetsTarget,
            offending: w.intersect(v),
        });
    }
    Ok(checked)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schedule::{bundled_example, PropagationBudget};
    use crate::topo::hitting::hitting_set;

    fn set(s: &str) -> IntervalSet {
        s.parse().unwrap()
    }

    #[test]
    fn extended_tent_certificate() {
        let sch = bundled_example("example31").unwrap();
        let cert =
            InvariantSetCertificate::new(&sch, set("(0,1)"), set("(1,3/2)"), set("[0,1]")).unwrap();
        assert_eq!(cert.checked_maps, 1);
        assert!(cert.refutes_transitivity());
        cert.recheck(&sch).unwrap();
        let h = hitting_set(&sch, &cert.u, &cert.v, 50, &PropagationBudget::default()).unwrap();
        assert!(h.members.is_empty());
    }

    #[test]
    fn tent_half_is_not_invariant() {
        let tent = bundled_example("tent").unwrap();
        let err = InvariantSetCertificate::new(&tent, set("(0,1/4)"), set("(3/4,1)"), set("[0,1/2]"))
            .unwrap_err();
        match err {
            Error::NotInvariant {
                condition: InvariantFailure::NotForwardInvariant { map_index: 0 },
                offending,
            } => assert_eq!(offending, set("(1/2,1]")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn whole_domain_meets_target() {
        let sch = bundled_example("example31").unwrap();
        let err =
            InvariantSetCertificate::new(&sch, set("(0,1)"), set("(1,3/2)"), sch.domain_set())
                .unwrap_err();
        assert!(matches!(
            err,
            Error::NotInvariant {
                condition: InvariantFailure::MeetsTarget,
                ..
            }
        ));
    }

    #[test]
    fn first_image_must_land_in_w() {
        let sch = bundled_example("example31").unwrap();
        // f((5/4,3/2)) = (1/2,1) is not inside [0,1/2].
        let err =
            InvariantSetCertificate::new(&sch, set("(5/4,3/2)"), set("(1,3/2)"), set("[0,1/2]"))
                .unwrap_err();
        assert!(matches!(
            err,
            Error::NotInvariant {
                condition: InvariantFailure::FirstImageEscapes,
                ..
            }
        ));
    }

    #[test]
    fn recheck_against_another_schedule_fails() {
        let sch = bundled_example("example31").unwrap();
        let cert =
            InvariantSetCertificate::new(&sch, set("(0,1)"), set("(1,3/2)"), set("[0,1]")).unwrap();
        let tent = bundled_example("tent").unwrap();
        assert!(cert.recheck(&tent).is_err());
    }
}
