//! Self-contained reproduction scenarios for the bundled systems.
//!
//! * `example31`: the extended tent map on `[0,3/2]` is not transitive but
//!   is sensitive. Both facts are certified and re-checked from scratch.
//! * `tent`, `doubling`, `tent_doubling_alternating`: weak mixing is
//!   witnessed on a grid, and sensitivity with the constant derived from
//!   the pair `(0,1)` is certified at the same resolution.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{int, rat, serde_str, Rational};
use crate::schedule::{bundled_example, PropagationBudget, Schedule};
use crate::set::IntervalSet;
use crate::topo::{
    hitting_set, sensitivity_certificate, sensitivity_constant, transitivity_verdict,
    weakmix_verdict, InvariantSetCertificate, SensitivityCertificate, SensitivityOutcome, Verdict,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SensitivityParams {
    #[serde(with = "serde_str")]
    pub delta: Rational,
    #[serde(with = "serde_str")]
    pub scale: Rational,
    pub horizon: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub system: String,
    pub scenario: &'static str,
    pub checks: Vec<Check>,
    pub sensitivity_params: SensitivityParams,
    /// Sensitivity outcome, certified or not.
    pub sensitivity: SensitivityOutcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariant_set: Option<InvariantSetCertificate>,
    /// Transitivity verdict upgraded by the invariant-set certificate, or
    /// the weak-mixing verdict for the mixing scenarios.
    pub verdict: Verdict,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn sensitivity_certificate(&self) -> Option<&SensitivityCertificate> {
        self.sensitivity.certificate()
    }
}

fn check(name: &str, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.to_string(),
        passed,
        detail: detail.into(),
    }
}

pub fn verify_bundled(name: &str, budget: &PropagationBudget) -> Result<VerificationReport> {
    let sch = bundled_example(name)?;
    match name {
        "example31" => non_transitive_but_sensitive(name, &sch, budget),
        _ => weak_mixing_and_sensitive(name, &sch, budget),
    }
}

fn set(s: &str) -> IntervalSet {
    s.parse().expect("literal set")
}

fn sensitivity_checks(
    sch: &Schedule,
    params: &SensitivityParams,
    budget: &PropagationBudget,
    checks: &mut Vec<Check>,
) -> Result<SensitivityOutcome> {
    let out = sensitivity_certificate(sch, &params.delta, &params.scale, params.horizon, budget)?;
    match &out {
        SensitivityOutcome::Certified(c) => {
            let worst = c.per_cell.iter().map(|r| r.n).max().unwrap_or(0);
            checks.push(check(
                "sensitivity_certificate",
                true,
                format!(
                    "all {} cells of width {} reach image diameter > {} by n = {}",
                    c.per_cell.len(),
                    params.scale,
                    int(2) * &params.delta,
                    worst
                ),
            ));
            let ok = c.recheck(sch)?;
            checks.push(check(
                "sensitivity_recheck",
                ok,
                "every recorded (cell, n) diameter recomputed exactly",
            ));
        }
        SensitivityOutcome::Failed(f) => checks.push(check(
            "sensitivity_certificate",
            false,
            format!("{} cells never separate within H = {}", f.failing.len(), f.horizon),
        )),
    }
    Ok(out)
}

fn non_transitive_but_sensitive(
    name: &str,
    sch: &Schedule,
    budget: &PropagationBudget,
) -> Result<VerificationReport> {
    let mut checks = Vec::new();
    let (u, v, w) = (set("(0,1)"), set("(1,3/2)"), set("[0,1]"));
    let cert = InvariantSetCertificate::new(sch, u.clone(), v.clone(), w)?;
    checks.push(check(
        "invariant_set_certificate",
        true,
        format!(
            "f(U) ⊆ W, f(W) ⊆ W and W ∩ V = ∅ for U = {}, V = {}, W = {}",
            cert.u, cert.v, cert.w
        ),
    ));
    let recheck = cert.recheck(sch);
    checks.push(check(
        "invariant_set_recheck",
        recheck.is_ok(),
        "all three inclusions recomputed",
    ));
    let h = hitting_set(sch, &u, &v, 30, budget)?;
    checks.push(check(
        "hitting_set_empty",
        h.members.is_empty(),
        format!("N(U,V) ∩ {{1..30}} = {:?}", h.members.members()),
    ));
    let verdict = transitivity_verdict(sch, &rat(1, 2), 30, budget)?;
    let verdict = verdict.with_certificate(sch, cert.clone())?;
    checks.push(check(
        "transitivity_verdict",
        true,
        "CERTIFIED_FAIL with the invariant-set certificate attached",
    ));

    let params = SensitivityParams {
        delta: rat(1, 4),
        scale: rat(1, 64),
        horizon: 30,
    };
    let sensitivity = sensitivity_checks(sch, &params, budget, &mut checks)?;
    Ok(VerificationReport {
        system: name.to_string(),
        scenario: "not transitive, sensitive",
        checks,
        sensitivity_params: params,
        sensitivity,
        invariant_set: Some(cert),
        verdict,
    })
}

fn weak_mixing_and_sensitive(
    name: &str,
    sch: &Schedule,
    budget: &PropagationBudget,
) -> Result<VerificationReport> {
    if sch.domain() != &"[0,1]".parse().expect("literal") {
        return Err(Error::InvalidArgument(format!(
            "no verification scenario for {name}"
        )));
    }
    let mut checks = Vec::new();
    let grid = rat(1, 16);
    let verdict = weakmix_verdict(sch, &grid, 16, budget)?;
    checks.push(check(
        "weak_mixing_verdict",
        verdict.is_witnessed(),
        format!(
            "{} pair-of-pairs witnesses at g = {}, H = 16; {} gaps",
            verdict.witnesses.len(),
            grid,
            verdict.gaps.len()
        ),
    ));
    let delta = sensitivity_constant(&int(0), &int(1))?;
    let params = SensitivityParams {
        delta,
        scale: grid,
        horizon: 16,
    };
    let sensitivity = sensitivity_checks(sch, &params, budget, &mut checks)?;
    Ok(VerificationReport {
        system: name.to_string(),
        scenario: "weak mixing, sensitive",
        checks,
        sensitivity_params: params,
        sensitivity,
        invariant_set: None,
        verdict,
    })
}
