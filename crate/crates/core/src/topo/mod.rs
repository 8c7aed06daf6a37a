//! Hitting sets, grid verdicts, invariant-set certificates and sensitivity.

pub mod certificate;
pub mod hitting;
pub mod sensitivity;
pub mod verdict;

pub use certificate::InvariantSetCertificate;
pub use hitting::{hitting_set, uniform_cells, HittingSet};
pub use sensitivity::{
    sensitivity_certificate, sensitivity_constant, CellSeparation, CellShortfall,
    SensitivityCertificate, SensitivityFailure, SensitivityOutcome,
};
pub use verdict::{
    mixing_verdict, transitivity_verdict, weakmix_verdict, CellPair, Gap, HitTable, Property,
    Verdict, VerdictKind, Witness,
};
