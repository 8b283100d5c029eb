//! Catalog of scalar functions with declared monotonicity class, lifted
//! to positive definite matrices by spectral calculus.
//!
//! The class is declared by the catalog, not inferred numerically;
//! deciding operator monotonicity from samples is a research problem in
//! its own right. `exp_neg` is deliberately classified as not operator
//! monotone: it is decreasing and log-convex as a scalar yet fails the
//! matrix order reversal, and exists to witness that the checkers detect
//! genuine violations.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::{eigh, PosDefMatrix};

/// Declared operator-monotonicity class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MonotoneClass {
    #[serde(rename = "om_decreasing")]
    OmDecreasing,
    #[serde(rename = "om_increasing")]
    OmIncreasing,
    #[serde(rename = "none")]
    NotMonotone,
}

impl MonotoneClass {
    pub fn as_str(self) -> &'static str {
        match self {
            MonotoneClass::OmDecreasing => "om_decreasing",
            MonotoneClass::OmIncreasing => "om_increasing",
            MonotoneClass::NotMonotone => "none",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FunctionKind {
    /// `t^{-p}` with `0 ≤ p ≤ 1`.
    NegPower { p: f64 },
    /// `c/(t+s)` with `s ≥ 0`, `c > 0`.
    ShiftedInverse { s: f64, c: f64 },
    /// `t^p` with `0 ≤ p ≤ 1`.
    Power { p: f64 },
    /// `log(1+t)`.
    Log1p,
    /// `c·t` with `c > 0`.
    ScaledIdentity { c: f64 },
    /// `e^{-t}`.
    ExpNeg,
}

/// A catalog entry: scalar rule plus declared class. Parameters are
/// validated at construction; invalid ones are rejected rather than
/// reclassified.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalarFunctionSpec {
    kind: FunctionKind,
    klass: MonotoneClass,
}

impl ScalarFunctionSpec {
    pub fn neg_power(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) || p.is_nan() {
            return Err(Error::InvalidParameter {
                name: "p",
                value: p,
                reason: "neg_power requires 0 <= p <= 1",
            });
        }
        Ok(Self {
            kind: FunctionKind::NegPower { p },
            klass: MonotoneClass::OmDecreasing,
        })
    }

    pub fn shifted_inverse(s: f64, c: f64) -> Result<Self> {
        if !(s >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "s",
                value: s,
                reason: "shifted_inverse requires s >= 0",
            });
        }
        if !(c > 0.0) || !c.is_finite() {
            return Err(Error::InvalidParameter {
                name: "c",
                value: c,
                reason: "shifted_inverse requires c > 0",
            });
        }
        Ok(Self {
            kind: FunctionKind::ShiftedInverse { s, c },
            klass: MonotoneClass::OmDecreasing,
        })
    }

    pub fn power(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) || p.is_nan() {
            return Err(Error::InvalidParameter {
                name: "p",
                value: p,
                reason: "power requires 0 <= p <= 1",
            });
        }
        Ok(Self {
            kind: FunctionKind::Power { p },
            klass: MonotoneClass::OmIncreasing,
        })
    }

    pub fn log1p() -> Self {
        Self {
            kind: FunctionKind::Log1p,
            klass: MonotoneClass::OmIncreasing,
        }
    }

    pub fn scaled_identity(c: f64) -> Result<Self> {
        if !(c > 0.0) || !c.is_finite() {
            return Err(Error::InvalidParameter {
                name: "c",
                value: c,
                reason: "scaled_identity requires c > 0",
            });
        }
        Ok(Self {
            kind: FunctionKind::ScaledIdentity { c },
            klass: MonotoneClass::OmIncreasing,
        })
    }

    pub fn exp_neg() -> Self {
        Self {
            kind: FunctionKind::ExpNeg,
            klass: MonotoneClass::NotMonotone,
        }
    }

    pub fn kind(&self) -> &FunctionKind {
        &self.kind
    }

    pub fn klass(&self) -> MonotoneClass {
        self.klass
    }

    /// Closed-form value at `t > 0`; strictly positive on `(0,∞)`.
    pub fn evaluate(&self, t: f64) -> Result<f64> {
        if !(t > 0.0) {
            return Err(Error::Domain { at: t });
        }
        Ok(self.eval_raw(t))
    }

    fn eval_raw(&self, t: f64) -> f64 {
        match self.kind {
            FunctionKind::NegPower { p } => t.powf(-p),
            FunctionKind::ShiftedInverse { s, c } => c / (t + s),
            FunctionKind::Power { p } => t.powf(p),
            FunctionKind::Log1p => t.ln_1p(),
            FunctionKind::ScaledIdentity { c } => c * t,
            FunctionKind::ExpNeg => (-t).exp(),
        }
    }

    /// Spectral lift `f(A)`; the result is positive definite because
    /// every catalog function is strictly positive on `(0,∞)`.
    pub fn lift(&self, a: &PosDefMatrix) -> Result<PosDefMatrix> {
        let es = eigh(a.sym())?;
        for &lambda in es.eigenvalues() {
            let v = self.evaluate(lambda)?;
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::Domain { at: lambda });
            }
        }
        Ok(PosDefMatrix::from_sym_unchecked(
            es.map(|l| self.eval_raw(l)),
        ))
    }
}

impl fmt::Display for ScalarFunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FunctionKind::NegPower { p } => write!(f, "neg_power:{p}"),
            FunctionKind::ShiftedInverse { s, c } => write!(f, "shifted_inverse:{s}:{c}"),
            FunctionKind::Power { p } => write!(f, "power:{p}"),
            FunctionKind::Log1p => write!(f, "log1p"),
            FunctionKind::ScaledIdentity { c } => write!(f, "scaled_identity:{c}"),
            FunctionKind::ExpNeg => write!(f, "exp_neg"),
        }
    }
}

impl FromStr for ScalarFunctionSpec {
    type Err = Error;

    /// Parses the CLI syntax, e.g. `neg_power:0.5`, `shifted_inverse:1:2`,
    /// `exp_neg`.
    fn from_str(s: &str) -> Result<Self> {
        let segs: Vec<&str> = s.split(':').collect();
        let parse_err = |segment: usize, reason: String| Error::SpecParse {
            spec: s.to_string(),
            segment,
            reason,
        };
        let arg = |i: usize| -> Result<f64> {
            let raw = segs
                .get(i)
                .ok_or_else(|| parse_err(i, "missing argument".into()))?;
            raw.parse::<f64>()
                .map_err(|e| parse_err(i, format!("invalid number `{raw}`: {e}")))
        };
        let expect_len = |n: usize| -> Result<()> {
            if segs.len() == n {
                Ok(())
            } else {
                Err(parse_err(
                    n.min(segs.len()),
                    format!("expected {n} segments, got {}", segs.len()),
                ))
            }
        };
        match segs[0] {
            "neg_power" => {
                expect_len(2)?;
                Self::neg_power(arg(1)?)
            }
            "shifted_inverse" => {
                expect_len(3)?;
                Self::shifted_inverse(arg(1)?, arg(2)?)
            }
            "power" => {
                expect_len(2)?;
                Self::power(arg(1)?)
            }
            "log1p" => {
                expect_len(1)?;
                Ok(Self::log1p())
            }
            "scaled_identity" => {
                expect_len(2)?;
                Self::scaled_identity(arg(1)?)
            }
            "exp_neg" => {
                expect_len(1)?;
                Ok(Self::exp_neg())
            }
            other => Err(parse_err(0, format!("unknown function `{other}`"))),
        }
    }
}
