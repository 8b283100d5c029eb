//! Weighted operator means and their interpolational power-mean paths.
//!
//! For positive definite `A`, `B` and weight `α ∈ [0,1]`:
//!
//! * arithmetic  `A∇_αB = (1-α)A + αB`
//! * geometric   `A♯_αB = A^{1/2}(A^{-1/2}BA^{-1/2})^α A^{1/2}`
//! * harmonic    `A!_αB = (A^{-1}∇_αB^{-1})^{-1}`
//! * power path  `A m_{υ,α} B = A^{1/2}((1-α)I + α(A^{-1/2}BA^{-1/2})^υ)^{1/υ} A^{1/2}`
//!
//! The power path coincides with arithmetic at υ=1, geometric in the υ→0
//! limit (routed below [`tol::UPSILON_EPS`]) and harmonic at υ=-1. Every
//! mean result is symmetrized before returning so round-off asymmetry
//! never reaches a downstream eigendecomposition.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::loewner::operator_norm;
use crate::spectral::{eigh, frac_power, PosDefMatrix, SymMatrix};
use crate::tol;

/// A weight in `[0,1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(f64);

impl Weight {
    pub const ZERO: Weight = Weight(0.0);
    pub const HALF: Weight = Weight(0.5);
    pub const ONE: Weight = Weight(1.0);

    pub fn new(value: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&value) || value.is_nan() {
            return Err(Error::InvalidParameter {
                name: "weight",
                value,
                reason: "must lie in [0,1]",
            });
        }
        Ok(Weight(value))
    }

    /// Clamp into `[0,1]`; used for derived weights like `(1-γ)α + γβ`
    /// that may drift an ulp outside the interval in floating point.
    pub fn clamped(value: f64) -> Self {
        Weight(value.clamp(0.0, 1.0))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn complement(self) -> Weight {
        Weight(1.0 - self.0)
    }
}

/// A weight allowed to be any finite real; only the triangle-inequality
/// chains accept these.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct UnrestrictedWeight(f64);

impl UnrestrictedWeight {
    pub fn new(value: f64) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::InvalidParameter {
                name: "weight",
                value,
                reason: "must be finite",
            });
        }
        Ok(UnrestrictedWeight(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Selects a power-mean path by its exponent `υ ∈ [-1,1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PathSpec {
    upsilon: f64,
}

impl PathSpec {
    pub const ARITHMETIC: PathSpec = PathSpec { upsilon: 1.0 };
    pub const GEOMETRIC: PathSpec = PathSpec { upsilon: 0.0 };
    pub const HARMONIC: PathSpec = PathSpec { upsilon: -1.0 };

    pub fn new(upsilon: f64) -> Result<Self> {
        if !(-1.0..=1.0).contains(&upsilon) || upsilon.is_nan() {
            return Err(Error::InvalidParameter {
                name: "upsilon",
                value: upsilon,
                reason: "must lie in [-1,1]",
            });
        }
        Ok(PathSpec { upsilon })
    }

    pub fn upsilon(self) -> f64 {
        self.upsilon
    }
}

fn check_pair(a: &PosDefMatrix, b: &PosDefMatrix) -> Result<()> {
    if a.dim() == b.dim() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        })
    }
}

/// `A∇_αB = (1-α)A + αB`.
pub fn arithmetic_mean(a: &PosDefMatrix, b: &PosDefMatrix, alpha: Weight) -> Result<PosDefMatrix> {
    check_pair(a, b)?;
    let t = alpha.value();
    if t == 0.0 {
        return Ok(a.clone());
    }
    if t == 1.0 {
        return Ok(b.clone());
    }
    let m = a.matrix() * (1.0 - t) + b.matrix() * t;
    Ok(PosDefMatrix::from_sym_unchecked(SymMatrix::symmetrized(m)))
}

/// Shared kernel: `A^{1/2} g(A^{-1/2} B A^{-1/2}) A^{1/2}` where `g` acts
/// on the spectrum. Both the geometric mean (`g(λ)=λ^α`) and the general
/// power path use it.
fn sandwich(a: &PosDefMatrix, b: &PosDefMatrix, g: impl Fn(f64) -> f64) -> Result<PosDefMatrix> {
    let es_a = eigh(a.sym())?;
    let a_half = es_a.map(f64::sqrt);
    let a_inv_half = es_a.map(|l| 1.0 / l.sqrt());
    let x = SymMatrix::symmetrized(a_inv_half.matrix() * b.matrix() * a_inv_half.matrix());
    let es_x = eigh(&x)?;
    let core = es_x.map(g);
    let out = SymMatrix::symmetrized(a_half.matrix() * core.matrix() * a_half.matrix());
    Ok(PosDefMatrix::from_sym_unchecked(out))
}

/// `A♯_αB = A^{1/2}(A^{-1/2}BA^{-1/2})^α A^{1/2}`.
pub fn geometric_mean(a: &PosDefMatrix, b: &PosDefMatrix, alpha: Weight) -> Result<PosDefMatrix> {
    check_pair(a, b)?;
    let t = alpha.value();
    if t == 0.0 {
        return Ok(a.clone());
    }
    if t == 1.0 {
        return Ok(b.clone());
    }
    sandwich(a, b, |l| l.powf(t))
}

/// `A!_αB = (A^{-1}∇_αB^{-1})^{-1}`.
pub fn harmonic_mean(a: &PosDefMatrix, b: &PosDefMatrix, alpha: Weight) -> Result<PosDefMatrix> {
    check_pair(a, b)?;
    let t = alpha.value();
    if t == 0.0 {
        return Ok(a.clone());
    }
    if t == 1.0 {
        return Ok(b.clone());
    }
    let a_inv = frac_power(a, -1.0)?;
    let b_inv = frac_power(b, -1.0)?;
    let mixed = arithmetic_mean(&a_inv, &b_inv, alpha)?;
    frac_power(&mixed, -1.0)
}

/// The interpolational power mean `A m_{υ,α} B`.
///
/// `|υ|` below [`tol::UPSILON_EPS`] routes to the geometric mean.
pub fn power_mean(
    a: &PosDefMatrix,
    b: &PosDefMatrix,
    path: PathSpec,
    alpha: Weight,
) -> Result<PosDefMatrix> {
    check_pair(a, b)?;
    let u = path.upsilon();
    if u.abs() < tol::UPSILON_EPS {
        return geometric_mean(a, b, alpha);
    }
    let t = alpha.value();
    if t == 0.0 {
        return Ok(a.clone());
    }
    if t == 1.0 {
        return Ok(b.clone());
    }
    sandwich(a, b, |l| ((1.0 - t) + t * l.powf(u)).powf(1.0 / u))
}

fn deviation(lhs: &PosDefMatrix, rhs: &PosDefMatrix) -> f64 {
    operator_norm(&SymMatrix::symmetrized(lhs.matrix() - rhs.matrix()))
}

/// Operator-norm deviation of the path composition identity
/// `(Aσ_αB)σ_γ(Aσ_βB) = Aσ_{(1-γ)α+γβ}B`.
pub fn interpolation_deviation(
    path: PathSpec,
    a: &PosDefMatrix,
    b: &PosDefMatrix,
    alpha: Weight,
    beta: Weight,
    gamma: Weight,
) -> Result<f64> {
    check_pair(a, b)?;
    let left = power_mean(a, b, path, alpha)?;
    let right = power_mean(a, b, path, beta)?;
    let lhs = power_mean(&left, &right, path, gamma)?;
    let composite = Weight::clamped(
        gamma.complement().value() * alpha.value() + gamma.value() * beta.value(),
    );
    let rhs = power_mean(a, b, path, composite)?;
    Ok(deviation(&lhs, &rhs))
}

/// Deviation of `A∇_αB = ((A∇_αB)∇_βA)∇_α((A∇_αB)∇_βB)`; a finite linear
/// identity, so this should vanish to [`tol::ATOL_EXACT`] times scale.
pub fn nabla_identity_deviation(
    a: &PosDefMatrix,
    b: &PosDefMatrix,
    alpha: Weight,
    beta: Weight,
) -> Result<f64> {
    check_pair(a, b)?;
    let nab = arithmetic_mean(a, b, alpha)?;
    let left = arithmetic_mean(&nab, a, beta)?;
    let right = arithmetic_mean(&nab, b, beta)?;
    let recomposed = arithmetic_mean(&left, &right, alpha)?;
    Ok(deviation(&nab, &recomposed))
}

/// Deviation of `A♯_αB = ((A♯_αB)♯_βA)♯_α((A♯_αB)♯_βB)`.
pub fn sharp_identity_deviation(
    a: &PosDefMatrix,
    b: &PosDefMatrix,
    alpha: Weight,
    beta: Weight,
) -> Result<f64> {
    check_pair(a, b)?;
    let sharp = geometric_mean(a, b, alpha)?;
    let left = geometric_mean(&sharp, a, beta)?;
    let right = geometric_mean(&sharp, b, beta)?;
    let recomposed = geometric_mean(&left, &right, alpha)?;
    Ok(deviation(&sharp, &recomposed))
}
