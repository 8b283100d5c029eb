//! Numerical tolerances used across the crate.
//!
//! Every threshold is pinned here rather than scattered through call sites.
//! All of them are relative tolerances unless noted otherwise; the scale
//! they multiply is stated per constant.

/// Positive-definiteness floor, relative to the largest eigenvalue.
///
/// Construction of a [`crate::PosDefMatrix`] fails when
/// `λ_min <= PD_FLOOR · λ_max`. Every mean needs `A^{-1/2}`, so anything
/// this close to singular is useless downstream.
pub const PD_FLOOR: f64 = 1e-10;

/// Eigendecomposition reconstruction tolerance, relative to `‖m‖₂`.
///
/// Well within double-precision solver accuracy at dim ≤ 16.
pub const RTOL_RECON: f64 = 1e-10;

/// Below this `|υ|`, the power mean routes to the geometric-mean formula.
///
/// `((1-α)I + αX^υ)^{1/υ}` loses precision as υ → 0.
pub const UPSILON_EPS: f64 = 1e-6;

/// Tolerance for mean identities that compose spectral computations,
/// relative to the operator norm of the largest term.
pub const RTOL_CHAIN: f64 = 1e-9;

/// Tolerance factor for purely linear identities (additions and scalings
/// only), multiplied by the scale of the operands.
pub const ATOL_EXACT: f64 = 1e-12;

/// Loewner-order verdict tolerance, relative to `max(‖X‖₂, ‖Y‖₂, 1)`.
///
/// Refinement chains stack up to four nested spectral computations; 1e-8
/// separates genuine violations (magnitude ≥ 1e-4 in counterexample
/// searches) from round-off.
pub const TOL_ORDER: f64 = 1e-8;

/// Maximum relative asymmetry accepted when loading a matrix literal;
/// larger asymmetry is rejected instead of averaged away.
pub const ASYM_REJECT: f64 = 1e-8;

/// Relative pivot threshold below which a congruence factor is treated
/// as singular.
pub const SINGULAR_REL: f64 = 1e-12;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerance_ordering() {
        assert!(ATOL_EXACT < RTOL_CHAIN);
        assert!(RTOL_CHAIN < TOL_ORDER);
        assert!(TOL_ORDER < UPSILON_EPS);
        assert!(PD_FLOOR <= RTOL_RECON);
    }
}
