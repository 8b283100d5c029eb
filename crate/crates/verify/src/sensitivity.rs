//! Sensitivity mode: force `exp_neg` (scalar log-convex but not operator
//! monotone decreasing) through the refinement chain with the class
//! hypothesis bypassed, at dimension 2, and hunt for genuinely violated
//! links. Finding violations is the success criterion: it shows the
//! checker separates theorem content from numerical slack.

use opmeans::functions::ScalarFunctionSpec;
use opmeans::inequalities::t21_chain_bypass;
use opmeans::{SymMatrix, Weight};
use rand::Rng;
use serde::Serialize;

use crate::gen::{cell_rng, gen_posdef};
use crate::Result;

/// Normalized-gap threshold separating genuine violations from
/// round-off; counterexample searches produce gaps at or beyond this
/// magnitude, four orders past the order tolerance.
pub const VIOLATION_GAP: f64 = -1e-4;

#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    pub trial: u32,
    pub alpha: f64,
    pub beta: f64,
    pub a: SymMatrix,
    pub b: SymMatrix,
    pub min_normalized_gap: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SensitivityReport {
    pub seed: u64,
    pub trials: u32,
    pub violations: u32,
    pub worst_gap: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first: Option<Violation>,
}

impl SensitivityReport {
    pub fn found(&self) -> bool {
        self.violations > 0
    }
}

pub fn search(seed: u64, trials: u32, eig_range: (f64, f64)) -> Result<SensitivityReport> {
    let f = ScalarFunctionSpec::exp_neg();
    let mut violations = 0;
    let mut worst = f64::INFINITY;
    let mut first = None;
    for trial in 0..trials {
        let mut rng = cell_rng(seed, &format!("sensitivity|t{trial}"));
        let a = gen_posdef(2, eig_range, &mut rng);
        let b = gen_posdef(2, eig_range, &mut rng);
        let alpha = Weight::new(rng.gen_range(0.0..=1.0)).expect("in range");
        let beta = Weight::new(rng.gen_range(0.0..=1.0)).expect("in range");
        let report = t21_chain_bypass(&f, &a, &b, alpha, beta)?;
        let min_gap = report
            .links
            .iter()
            .map(|l| l.normalized_gap())
            .fold(f64::INFINITY, f64::min);
        worst = worst.min(min_gap);
        if min_gap <= VIOLATION_GAP {
            violations += 1;
            if first.is_none() {
                first = Some(Violation {
                    trial,
                    alpha: alpha.value(),
                    beta: beta.value(),
                    a: a.sym().clone(),
                    b: b.sym().clone(),
                    min_normalized_gap: min_gap,
                });
            }
        }
    }
    Ok(SensitivityReport {
        seed,
        trials,
        violations,
        worst_gap: worst,
        first,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_search_finds_violations_quickly() {
        let report = search(7, 200, (0.1, 10.0)).unwrap();
        assert!(report.found(), "no violation in 200 trials");
        assert!(report.worst_gap <= VIOLATION_GAP);
        let first = report.first.unwrap();
        assert!(first.min_normalized_gap <= VIOLATION_GAP);
    }

    #[test]
    fn search_is_deterministic() {
        let a = search(7, 50, (0.1, 10.0)).unwrap();
        let b = search(7, 50, (0.1, 10.0)).unwrap();
        assert_eq!(a.violations, b.violations);
        assert_eq!(a.worst_gap, b.worst_gap);
    }
}
