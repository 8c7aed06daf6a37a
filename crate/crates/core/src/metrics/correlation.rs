use std::io::Write;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{serde_str, serde_str_vec, Rational};
use crate::schedule::{PropagationBudget, Schedule};
use crate::set::IntervalSet;

/// `cᵢ = μ(A ∩ f₀⁻ⁱ(B))` for `i = 0..horizon`, with `μ` Lebesgue measure on
/// the domain scaled to total mass one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorrelationSeries {
    pub horizon: usize,
    #[serde(with = "serde_str_vec")]
    pub values: Vec<Rational>,
    /// `μ(A)·μ(B)` under the normalized measure.
    #[serde(with = "serde_str")]
    pub product: Rational,
    #[serde(with = "serde_str_vec")]
    pub deviations: Vec<Rational>,
    /// Unnormalized Lebesgue measures of `A ∩ f₀⁻ⁱ(B)`.
    #[serde(with = "serde_str_vec")]
    pub raw_values: Vec<Rational>,
    #[serde(with = "serde_str")]
    pub domain_length: Rational,
    #[serde(with = "serde_str")]
    pub measure_a: Rational,
    #[serde(with = "serde_str")]
    pub measure_b: Rational,
}

pub fn correlation_series(
    sch: &Schedule,
    a: &IntervalSet,
    b: &IntervalSet,
    horizon: usize,
    budget: &PropagationBudget,
) -> Result<CorrelationSeries> {
    if horizon == 0 {
        return Err(Error::InvalidArgument("correlation horizon must be at least 1".into()));
    }
    for (name, s) in [("A", a), ("B", b)] {
        if !s.is_subset_of_interval(sch.domain()) {
            return Err(Error::OutOfDomain {
                what: format!("set {name} = {s}"),
                domain: sch.domain().clone(),
            });
        }
    }
    let length = sch.domain().length();
    let mut raw_values = Vec::with_capacity(horizon);
    if sch.is_autonomous() {
        // f₀⁻⁽ⁱ⁺¹⁾(B) = f⁻¹(f₀⁻ⁱ(B)) only when every step uses the same map.
        let mut pre = b.clone();
        for i in 0..horizon {
            if i > 0 {
                pre = sch.prefix_preimage(&pre, 1, budget).map_err(|e| restep(e, i))?;
            }
            raw_values.push(a.intersect(&pre).measure());
        }
    } else {
        for i in 0..horizon {
            let pre = sch.prefix_preimage(b, i, budget)?;
            raw_values.push(a.intersect(&pre).measure());
        }
    }
    let measure_a = &a.measure() / &length;
    let measure_b = &b.measure() / &length;
    let product = &measure_a * &measure_b;
    let values: Vec<Rational> = raw_values.iter().map(|r| r / &length).collect();
    let deviations = values.iter().map(|c| (c - &product).abs()).collect();
    Ok(CorrelationSeries {
        horizon,
        values,
        product,
        deviations,
        raw_values,
        domain_length: length,
        measure_a,
        measure_b,
    })
}

// The autonomous path inverts one map per call, so the inner count is always
// one; report the total number of preimages taken instead.
fn restep(e: Error, i: usize) -> Error {
    match e {
        Error::BudgetExceeded {
            parts, max_parts, ..
        } => Error::BudgetExceeded {
            step: i,
            parts,
            max_parts,
        },
        other => other,
    }
}

impl CorrelationSeries {
    /// `(1/n) Σ_{i<n} |cᵢ − μ(A)μ(B)|`.
    pub fn cesaro_deviation(&self, n: usize) -> Result<Rational> {
        if n == 0 || n > self.horizon {
            return Err(Error::HorizonExceeded {
                requested: n,
                horizon: self.horizon,
            });
        }
        let sum = self.deviations[..n]
            .iter()
            .fold(Rational::zero(), |acc, d| acc + d);
        Ok(sum / Rational::from_integer(n.into()))
    }

    pub fn max_deviation(&self) -> Rational {
        self.deviations
            .iter()
            .max()
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// RFC 4180 CSV with columns `i,c_i,deviation_i`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["i", "c_i", "deviation_i"])?;
        for (i, (c, d)) in self.values.iter().zip(&self.deviations).enumerate() {
            w.write_record([i.to_string(), c.to_string(), d.to_string()])?;
        }
        w.flush().map_err(csv::Error::from)?;
        Ok(())
    }

    /// RFC 4180 CSV with columns `n,cesaro_n` for `1 ≤ n ≤ horizon`.
    pub fn write_cesaro_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["n", "cesaro_n"])?;
        for n in 1..=self.horizon {
            w.write_record([n.to_string(), self.cesaro_deviation(n)?.to_string()])?;
        }
        w.flush().map_err(csv::Error::from)?;
        Ok(())
    }
}
