//! Loewner partial-order comparisons and inequality-chain checking.
//!
//! `X ⪯ Y` iff `Y - X` is positive semidefinite. Verdicts quantify the
//! gap (the smallest eigenvalue of `Y - X`) and normalize it by
//! `max(‖X‖₂, ‖Y‖₂, 1)` so they are invariant under joint rescaling.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::spectral::{eigh, SymMatrix};
use crate::tol;

/// Verdict of a single `X ⪯ Y` comparison.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct OrderVerdict {
    /// `gap >= -TOL_ORDER * scale`.
    pub holds: bool,
    /// Smallest eigenvalue of `Y - X`.
    pub gap: f64,
    /// `max(‖X‖₂, ‖Y‖₂, 1)`.
    pub scale: f64,
}

impl OrderVerdict {
    pub fn normalized_gap(&self) -> f64 {
        self.gap / self.scale
    }
}

/// An evaluated inequality chain `terms[0] ⪯ terms[1] ⪯ …`.
#[derive(Debug, Clone, Serialize)]
pub struct ChainReport {
    pub terms: Vec<SymMatrix>,
    pub links: Vec<OrderVerdict>,
    pub all_hold: bool,
    /// Minimum over links of `gap / scale`.
    pub weakest_gap: f64,
}

impl ChainReport {
    /// Concatenates two reports evaluated over disjoint term lists (the
    /// reverse-triangle chains come in pairs). Link `i` of the result no
    /// longer indexes `terms[i], terms[i+1]` across the seam.
    pub fn concat(mut self, other: ChainReport) -> ChainReport {
        self.terms.extend(other.terms);
        self.links.extend(other.links);
        self.all_hold = self.links.iter().all(|l| l.holds);
        self.weakest_gap = self
            .links
            .iter()
            .map(OrderVerdict::normalized_gap)
            .fold(f64::INFINITY, f64::min);
        self
    }
}

/// Spectral norm of a symmetric matrix: the largest `|eigenvalue|`.
pub fn operator_norm(x: &SymMatrix) -> f64 {
    let es = eigh(x).expect("eigen-solver converges on finite symmetric input");
    es.eigenvalues()
        .iter()
        .fold(0.0_f64, |acc, &l| acc.max(l.abs()))
}

/// Compares `x ⪯ y` in the Loewner order.
pub fn loewner_leq(x: &SymMatrix, y: &SymMatrix) -> Result<OrderVerdict> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            got: y.dim(),
        });
    }
    let diff = y.sub(x)?;
    let es = eigh(&diff)?;
    let gap = es.eigenvalues()[0];
    let scale = operator_norm(x).max(operator_norm(y)).max(1.0);
    Ok(OrderVerdict {
        holds: gap >= -tol::TOL_ORDER * scale,
        gap,
        scale,
    })
}

/// Checks an ascending chain; link `i` compares `terms[i] ⪯ terms[i+1]`.
///
/// Equivalent to [`loewner_leq`] on every adjacent pair, with each
/// term's norm computed once instead of once per adjacent link.
pub fn check_chain(terms: Vec<SymMatrix>) -> Result<ChainReport> {
    if terms.len() < 2 {
        return Err(Error::ChainTooShort { got: terms.len() });
    }
    let dim = terms[0].dim();
    for t in &terms[1..] {
        if t.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: t.dim(),
            });
        }
    }
    let norms: Vec<f64> = terms.iter().map(operator_norm).collect();
    let links: Vec<OrderVerdict> = terms
        .windows(2)
        .zip(norms.windows(2))
        .map(|(w, n)| {
            let diff = w[1].sub(&w[0])?;
            let gap = eigh(&diff)?.eigenvalues()[0];
            let scale = n[0].max(n[1]).max(1.0);
            Ok(OrderVerdict {
                holds: gap >= -tol::TOL_ORDER * scale,
                gap,
                scale,
            })
        })
        .collect::<Result<_>>()?;
    let all_hold = links.iter().all(|l| l.holds);
    let weakest_gap = links
        .iter()
        .map(OrderVerdict::normalized_gap)
        .fold(f64::INFINITY, f64::min);
    Ok(ChainReport {
        terms,
        links,
        all_hold,
        weakest_gap,
    })
}

/// Convenience for chains of scalar quantities (norm chains).
pub fn check_scalar_chain(values: &[f64]) -> Result<ChainReport> {
    check_chain(values.iter().map(|&v| SymMatrix::scalar(v)).collect())
}
