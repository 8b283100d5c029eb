//! Refinement inequality chains as executable, gap-reporting predicates.
//!
//! Each predicate materializes every term of its chain and hands the list
//! to [`check_chain`], so near-tolerance verdicts are reproducible from
//! the report alone. Hypotheses (function class, map positivity) are
//! enforced at the boundary; `t21_chain_bypass` is the one deliberate
//! escape hatch, used to demonstrate that the checker catches genuine
//! violations when the hypothesis is dropped.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functions::{MonotoneClass, ScalarFunctionSpec};
use crate::loewner::{check_chain, check_scalar_chain, operator_norm, ChainReport};
use crate::maps::PositiveLinearMapSpec;
use crate::means::{
    arithmetic_mean, geometric_mean, harmonic_mean, power_mean, PathSpec, UnrestrictedWeight,
    Weight,
};
use crate::spectral::{PosDefMatrix, SymMatrix};

/// Identifiers for the implemented inequality chains; these are the
/// tokens the CLI accepts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TheoremId {
    T21,
    C22,
    R23,
    C24,
    R25,
    T25,
    C27,
    R27,
    T31,
    E18,
    T32,
    R33,
}

impl TheoremId {
    pub const ALL: [TheoremId; 12] = [
        TheoremId::T21,
        TheoremId::C22,
        TheoremId::R23,
        TheoremId::C24,
        TheoremId::R25,
        TheoremId::T25,
        TheoremId::C27,
        TheoremId::R27,
        TheoremId::T31,
        TheoremId::E18,
        TheoremId::T32,
        TheoremId::R33,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::T21 => "T21",
            TheoremId::C22 => "C22",
            TheoremId::R23 => "R23",
            TheoremId::C24 => "C24",
            TheoremId::R25 => "R25",
            TheoremId::T25 => "T25",
            TheoremId::C27 => "C27",
            TheoremId::R27 => "R27",
            TheoremId::T31 => "T31",
            TheoremId::E18 => "E18",
            TheoremId::T32 => "T32",
            TheoremId::R33 => "R33",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .iter()
            .copied()
            .find(|t| t.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::SpecParse {
                spec: s.to_string(),
                segment: 0,
                reason: "unknown theorem id".to_string(),
            })
    }
}

/// Which reading of the final `f(A)!_αf(B) ≤ f(A)σf(B)` link the
/// harmonic-refinement chain evaluates: the weighted path `σ_α`, or the
/// unweighted symmetric mean `σ_{1/2}`. The two coincide at α = 1/2; the
/// symmetric reading can fail for α away from 1/2 and is recorded rather
/// than asserted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SigmaReading {
    Weighted,
    Symmetric,
}

impl fmt::Display for SigmaReading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SigmaReading::Weighted => f.write_str("weighted"),
            SigmaReading::Symmetric => f.write_str("symmetric"),
        }
    }
}

fn require_class(f: &ScalarFunctionSpec, required: MonotoneClass) -> Result<()> {
    if f.klass() == required {
        Ok(())
    } else {
        Err(Error::FunctionClass {
            required: required.as_str(),
            got: f.klass().as_str(),
        })
    }
}

fn image_pd(phi: &PositiveLinearMapSpec, x: &PosDefMatrix) -> Result<PosDefMatrix> {
    let raw = phi.apply(x.sym())?;
    PosDefMatrix::new(raw).map_err(|_| Error::MapImage {
        map: phi.to_string(),
    })
}

fn pd_combination(c1: f64, a: &PosDefMatrix, c2: f64, b: &PosDefMatrix) -> PosDefMatrix {
    debug_assert!(c1 >= 0.0 && c2 >= 0.0 && c1 + c2 > 0.0);
    PosDefMatrix::from_sym_unchecked(SymMatrix::symmetrized(
        a.matrix() * c1 + b.matrix() * c2,
    ))
}

fn sum_pd(list: &[PosDefMatrix]) -> PosDefMatrix {
    let mut acc = list[0].matrix().clone();
    for m in &list[1..] {
        acc += m.matrix();
    }
    PosDefMatrix::from_sym_unchecked(SymMatrix::symmetrized(acc))
}

fn into_terms(terms: Vec<PosDefMatrix>) -> Vec<SymMatrix> {
    terms.into_iter().map(SymMatrix::from).collect()
}

/// Refinement of the log-convexity bound for an operator monotone
/// decreasing `f`:
/// `f(A∇_αB) ⪯ f((A∇_αB)∇_βA) ♯_α f((A∇_αB)∇_βB) ⪯ f(A)♯_αf(B)`.
pub fn t21_chain(
    f: &ScalarFunctionSpec,
    a: &PosDefMatrix,
    b: &PosDefMatrix,
    alpha: Weight,
    beta: Weight,
) -> Result<ChainReport> {
    require_class(f, MonotoneClass::OmDecreasing)?;
    t21_chain_bypass(f, a, b, alpha, beta)
}

/// [`t21_chain`] without the function-class hypothesis; for sensitivity
/// testing only. Feeding a function that is not operator monotone
/// decreasing is expected to produce violated links.
pub fn t21_chain_bypass(
    f: &ScalarFunctionSpec,
    a: &PosDefMatrix,
    b: &PosDefMatrix,
    alpha: Weight,
    beta: Weight,
) -> Result<ChainReport> {
    let nab = arithmetic_mean(a, b, alpha)?;
    let first = f.lift(&nab)?;
    let mid = geometric_mean(
        &f.lift(&arithmetic_mean(&nab, a, beta)?)?,
        &f.lift(&arithmetic_mean(&nab, b, beta)?)?,
        alpha,
    )?;
    let last = geometric_mean(&f.lift(a)?, &f.lift(b)?, alpha)?;
    check_chain(into_terms(vec![first, mid, last]))
}

/// Refined subadditivity for operator monotone decreasing `f`:
/// `f(A+B) ⪯ f(3A∇B)♯f(A∇3B) ⪯ f(2A)♯f(2B) ⪯ f(2A)∇f(2B) ⪯ f(A)∇f(B)`.
pub fn c22_chain(
    f: &ScalarFunctionSpec,
    a: &PosDefMatrix,
    b: &PosDefMatrix,
) -> Result<ChainReport> {
    require_class(f, MonotoneClass::OmDecreasing)?;
    let half = Weight::HALF;
    let sum = pd_combination(1.0, a, 1.0, b);
    let three_a = pd_combination(1.5, a, 0.5, b);
    let three_b = pd_combination(0.5, a, 1.5, b);
    let two_a = pd_combination(2.0, a, 0.0, b);
    let two_b = pd_combination(0.0, a, 2.0, b);

    let f2a = f.lift(&two_a)?;
    let f2b = f.lift(&two_b)?;
    let terms = vec![
        f.lift(&sum)?,
        geometric_mean(&f.lift(&three_a)?, &f.lift(&three_b)?, half)?,
        geometric_mean(&f2a, &f2b, half)?,
        arithmetic_mean(&f2a, &f2b, half)?,
        arithmetic_mean(&f.lift(a)?, &f.lift(b)?, half)?,
    ];
    check_chain(into_terms(terms))
}

/// Log-concavity refinement for operator monotone increasing `g`; the
/// statement is descending, so the report checks the reversed
/// (ascending) term list:
/// `g(A)♯_αg(B) ⪯ g((A∇_αB)∇_βA) ♯_α g((A∇_αB)∇_βB) ⪯ g(A∇_αB)`.
pub fn c24_chain(
    g: &ScalarFunctionSpec,
    a: &PosDefMatrix,
    b: &PosDefMatrix,
    alpha: Weight,
    beta: Weight,
) -> Result<ChainReport> {
    require_class(g, MonotoneClass::OmIncreasing)?;
    let nab = arithmetic_mean(a, b, alpha)?;
    let first = g.lift(&nab)?;
    let mid = geometric_mean(
        &g.lift(&arithmetic_mean(&nab, a, beta)?)?,
        &g.lift(&arithmetic_mean(&nab, b, beta)?)?,
        alpha,
    )?;
    let last = geometric_mean(&g.lift(a)?, &g.lift(b)?, alpha)?;
    check_chain(into_terms(vec![last, mid, first]))
}

/// Harmonic-mean refinement for operator monotone decreasing `f`:
/// `f(A∇_αB) ⪯ f((A∇_αB)∇_βA) !_α f((A∇_αB)∇_βB) ⪯ f(A)!_αf(B) ⪯ f(A)σf(B)`.
///
/// The final link is evaluated under the chosen [`SigmaReading`].
pub fn r25_harmonic_chain(
    f: &ScalarFunctionSpec,
    a: &PosDefMatrix,
    b: &PosDefMatrix,
    alpha: Weight,
    beta: Weight,
    sigma: PathSpec,
    reading: SigmaReading,
) -> Result<ChainReport> {
    require_class(f, MonotoneClass::OmDecreasing)?;
    let nab = arithmetic_mean(a, b, alpha)?;
    let first = f.lift(&nab)?;
    let mid = harmonic_mean(
        &f.lift(&arithmetic_mean(&nab, a, beta)?)?,
        &f.lift(&arithmetic_mean(&nab, b, beta)?)?,
        alpha,
    )?;
    let fa = f.lift(a)?;
    let fb = f.lift(b)?;
    let third = harmonic_mean(&fa, &fb, alpha)?;
    let sigma_weight = match reading {
        SigmaReading::Weighted => alpha,
        SigmaReading::Symmetric => Weight::HALF,
    };
    let last = power_mean(&fa, &fb, sigma, sigma_weight)?;
    check_chain(into_terms(vec![first, mid, third, last]))
}

/// Refinement of the weighted arithmetic-geometric-harmonic sandwich:
/// `A!_αB ⪯ ((A♯_αB)♯_βA) !_α ((A♯_αB)♯_βB) ⪯ A♯_αB
///        ⪯ ((A♯_αB)♯_βA) ∇_α ((A♯_αB)♯_βB) ⪯ A∇_αB`.
pub fn t25_amgh_chain(
    a: &PosDefMatrix,
    b: &PosDefMatrix,
    alpha: Weight,
    beta: Weight,
) -> Result<ChainReport> {
    let sharp = geometric_mean(a, b, alpha)?;
    let left = geometric_mean(&sharp, a, beta)?;
    let right = geometric_mean(&sharp, b, beta)?;
    let terms = vec![
        harmonic_mean(a, b, alpha)?,
        harmonic_mean(&left, &right, alpha)?,
        sharp,
        arithmetic_mean(&left, &right, alpha)?,
        arithmetic_mean(a, b, alpha)?,
    ];
    check_chain(into_terms(terms))
}

fn affine(x: &SymMatrix, cx: f64, y: &SymMatrix, cy: f64) -> SymMatrix {
    SymMatrix::symmetrized(x.matrix() * cx + y.matrix() * cy)
}

/// Triangle-inequality refinement over spectral norms, for arbitrary
/// symmetric `A`, `B` and any real α:
/// `‖A+B‖ ≤ ‖αA+(1-α)(A∇B)‖ + ‖αB+(1-α)(A∇B)‖ ≤ ‖A‖+‖B‖`.
///
/// The second link is only claimed for α ∈ [0,1]; it is still evaluated
/// (and recorded) outside.
pub fn c27_triangle(
    a: &SymMatrix,
    b: &SymMatrix,
    alpha: UnrestrictedWeight,
) -> Result<ChainReport> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    let t = alpha.value();
    let nab = affine(a, 0.5, b, 0.5);
    let left = affine(a, t, &nab, 1.0 - t);
    let right = affine(b, t, &nab, 1.0 - t);
    check_scalar_chain(&[
        operator_norm(&a.add(b)?),
        operator_norm(&left) + operator_norm(&right),
        operator_norm(a) + operator_norm(b),
    ])
}

/// Reverse-triangle refinements; both orientations evaluated, four links:
/// `‖A‖-‖B‖ ≤ ½(‖A∇_{-α}(2B)‖ + ‖A∇_α(2B)‖ - 2‖B‖) ≤ ‖A-B‖` and the
/// A↔B swap.
pub fn r27_reverse_triangle(
    a: &SymMatrix,
    b: &SymMatrix,
    alpha: UnrestrictedWeight,
) -> Result<ChainReport> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    let one_side = |x: &SymMatrix, y: &SymMatrix| -> Result<ChainReport> {
        let t = alpha.value();
        // x∇_t(2y) = (1-t)x + 2t·y evaluated at t = ±α.
        let plus = affine(x, 1.0 - t, y, 2.0 * t);
        let minus = affine(x, 1.0 + t, y, -2.0 * t);
        let middle =
            0.5 * (operator_norm(&minus) + operator_norm(&plus)) - operator_norm(y);
        check_scalar_chain(&[
            operator_norm(x) - operator_norm(y),
            middle,
            operator_norm(&x.sub(y)?),
        ])
    };
    Ok(one_side(a, b)?.concat(one_side(b, a)?))
}

/// Refined positive-linear-map inequality for the weighted geometric
/// mean:
/// `Φ(A♯_αB) ⪯ Φ((A♯_αB)♯_βA) ♯_α Φ((A♯_αB)♯_βB) ⪯ Φ(A)♯_αΦ(B)`.
pub fn t31_ando(
    phi: &PositiveLinearMapSpec,
    a: &PosDefMatrix,
    b: &PosDefMatrix,
    alpha: Weight,
    beta: Weight,
) -> Result<ChainReport> {
    let sharp = geometric_mean(a, b, alpha)?;
    let left = geometric_mean(&sharp, a, beta)?;
    let right = geometric_mean(&sharp, b, beta)?;
    let terms = vec![
        image_pd(phi, &sharp)?,
        geometric_mean(&image_pd(phi, &left)?, &image_pd(phi, &right)?, alpha)?,
        geometric_mean(&image_pd(phi, a)?, &image_pd(phi, b)?, alpha)?,
    ];
    check_chain(into_terms(terms))
}

/// Summation form of [`t31_ando`]:
/// `Σ Aⱼ♯_αBⱼ ⪯ (Σ(Aⱼ♯_αBⱼ)♯_βAⱼ) ♯_α (Σ(Aⱼ♯_αBⱼ)♯_βBⱼ) ⪯ (ΣAⱼ)♯_α(ΣBⱼ)`.
pub fn e18_sums(
    a_list: &[PosDefMatrix],
    b_list: &[PosDefMatrix],
    alpha: Weight,
    beta: Weight,
) -> Result<ChainReport> {
    if a_list.is_empty() || a_list.len() != b_list.len() {
        return Err(Error::ListMismatch {
            left: a_list.len(),
            right: b_list.len(),
        });
    }
    let dim = a_list[0].dim();
    for m in a_list.iter().chain(b_list.iter()) {
        if m.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: m.dim(),
            });
        }
    }
    let sharps: Vec<PosDefMatrix> = a_list
        .iter()
        .zip(b_list)
        .map(|(a, b)| geometric_mean(a, b, alpha))
        .collect::<Result<_>>()?;
    let lefts: Vec<PosDefMatrix> = sharps
        .iter()
        .zip(a_list)
        .map(|(s, a)| geometric_mean(s, a, beta))
        .collect::<Result<_>>()?;
    let rights: Vec<PosDefMatrix> = sharps
        .iter()
        .zip(b_list)
        .map(|(s, b)| geometric_mean(s, b, beta))
        .collect::<Result<_>>()?;
    let terms = vec![
        sum_pd(&sharps),
        geometric_mean(&sum_pd(&lefts), &sum_pd(&rights), alpha)?,
        geometric_mean(&sum_pd(a_list), &sum_pd(b_list), alpha)?,
    ];
    check_chain(into_terms(terms))
}

/// General positive-linear-map refinement along an interpolational path.
/// With `p = α(1-β) + β((1-α)γ + αδ)`:
/// `Φ(Aσ_pB) ⪯ Φ((Aσ_αB)σ_β(Aσ_γB)) σ_α Φ((Aσ_αB)σ_β(Aσ_δB)) ⪯ Φ(A)σ_pΦ(B)`.
///
/// γ=0, δ=1 gives p=α and recovers the geometric-path chain ([`t31_ando`]
/// when υ=0).
pub fn r33_general(
    phi: &PositiveLinearMapSpec,
    a: &PosDefMatrix,
    b: &PosDefMatrix,
    path: PathSpec,
    alpha: Weight,
    beta: Weight,
    gamma: Weight,
    delta: Weight,
) -> Result<ChainReport> {
    let al = alpha.value();
    let be = beta.value();
    let p = Weight::clamped(al * (1.0 - be) + be * ((1.0 - al) * gamma.value() + al * delta.value()));

    let m_alpha = power_mean(a, b, path, alpha)?;
    let m_gamma = power_mean(a, b, path, gamma)?;
    let m_delta = power_mean(a, b, path, delta)?;
    let left = power_mean(&m_alpha, &m_gamma, path, beta)?;
    let right = power_mean(&m_alpha, &m_delta, path, beta)?;

    let terms = vec![
        image_pd(phi, &power_mean(a, b, path, p)?)?,
        power_mean(&image_pd(phi, &left)?, &image_pd(phi, &right)?, path, alpha)?,
        power_mean(&image_pd(phi, a)?, &image_pd(phi, b)?, path, p)?,
    ];
    check_chain(into_terms(terms))
}

/// A fully instantiated predicate: theorem id plus the parameters its
/// signature requires, validated at construction.
#[derive(Debug, Clone)]
pub enum TheoremInstance {
    T21 {
        f: ScalarFunctionSpec,
        a: PosDefMatrix,
        b: PosDefMatrix,
        alpha: Weight,
        beta: Weight,
    },
    C22 {
        f: ScalarFunctionSpec,
        a: PosDefMatrix,
        b: PosDefMatrix,
    },
    /// Converse probe: the T21 chain with β=1 and the class hypothesis
    /// bypassed; meaningful with non operator monotone decreasing `f`.
    R23 {
        f: ScalarFunctionSpec,
        a: PosDefMatrix,
        b: PosDefMatrix,
        alpha: Weight,
    },
    C24 {
        g: ScalarFunctionSpec,
        a: PosDefMatrix,
        b: PosDefMatrix,
        alpha: Weight,
        beta: Weight,
    },
    R25 {
        f: ScalarFunctionSpec,
        a: PosDefMatrix,
        b: PosDefMatrix,
        alpha: Weight,
        beta: Weight,
        sigma: PathSpec,
        reading: SigmaReading,
    },
    T25 {
        a: PosDefMatrix,
        b: PosDefMatrix,
        alpha: Weight,
        beta: Weight,
    },
    C27 {
        a: SymMatrix,
        b: SymMatrix,
        alpha: UnrestrictedWeight,
    },
    R27 {
        a: SymMatrix,
        b: SymMatrix,
        alpha: UnrestrictedWeight,
    },
    T31 {
        phi: PositiveLinearMapSpec,
        a: PosDefMatrix,
        b: PosDefMatrix,
        alpha: Weight,
        beta: Weight,
    },
    E18 {
        a_list: Vec<PosDefMatrix>,
        b_list: Vec<PosDefMatrix>,
        alpha: Weight,
        beta: Weight,
    },
    T32 {
        phi: PositiveLinearMapSpec,
        a: PosDefMatrix,
        b: PosDefMatrix,
        path: PathSpec,
        alpha: Weight,
        beta: Weight,
    },
    R33 {
        phi: PositiveLinearMapSpec,
        a: PosDefMatrix,
        b: PosDefMatrix,
        path: PathSpec,
        alpha: Weight,
        beta: Weight,
        gamma: Weight,
        delta: Weight,
    },
}

impl TheoremInstance {
    pub fn t21(
        f: ScalarFunctionSpec,
        a: PosDefMatrix,
        b: PosDefMatrix,
        alpha: Weight,
        beta: Weight,
    ) -> Result<Self> {
        require_class(&f, MonotoneClass::OmDecreasing)?;
        Ok(Self::T21 { f, a, b, alpha, beta })
    }

    pub fn c22(f: ScalarFunctionSpec, a: PosDefMatrix, b: PosDefMatrix) -> Result<Self> {
        require_class(&f, MonotoneClass::OmDecreasing)?;
        Ok(Self::C22 { f, a, b })
    }

    pub fn r23(
        f: ScalarFunctionSpec,
        a: PosDefMatrix,
        b: PosDefMatrix,
        alpha: Weight,
    ) -> Self {
        Self::R23 { f, a, b, alpha }
    }

    pub fn c24(
        g: ScalarFunctionSpec,
        a: PosDefMatrix,
        b: PosDefMatrix,
        alpha: Weight,
        beta: Weight,
    ) -> Result<Self> {
        require_class(&g, MonotoneClass::OmIncreasing)?;
        Ok(Self::C24 { g, a, b, alpha, beta })
    }

    #[allow(clippy::too_many_arguments)]
    pub fn r25(
        f: ScalarFunctionSpec,
        a: PosDefMatrix,
        b: PosDefMatrix,
        alpha: Weight,
        beta: Weight,
        sigma: PathSpec,
        reading: SigmaReading,
    ) -> Result<Self> {
        require_class(&f, MonotoneClass::OmDecreasing)?;
        Ok(Self::R25 {
            f,
            a,
            b,
            alpha,
            beta,
            sigma,
            reading,
        })
    }

    pub fn theorem_id(&self) -> TheoremId {
        match self {
            Self::T21 { .. } => TheoremId::T21,
            Self::C22 { .. } => TheoremId::C22,
            Self::R23 { .. } => TheoremId::R23,
            Self::C24 { .. } => TheoremId::C24,
            Self::R25 { .. } => TheoremId::R25,
            Self::T25 { .. } => TheoremId::T25,
            Self::C27 { .. } => TheoremId::C27,
            Self::R27 { .. } => TheoremId::R27,
            Self::T31 { .. } => TheoremId::T31,
            Self::E18 { .. } => TheoremId::E18,
            Self::T32 { .. } => TheoremId::T32,
            Self::R33 { .. } => TheoremId::R33,
        }
    }

    pub fn evaluate(&self) -> Result<ChainReport> {
        match self {
            Self::T21 { f, a, b, alpha, beta } => t21_chain(f, a, b, *alpha, *beta),
            Self::C22 { f, a, b } => c22_chain(f, a, b),
            Self::R23 { f, a, b, alpha } => {
                t21_chain_bypass(f, a, b, *alpha, Weight::ONE)
            }
            Self::C24 { g, a, b, alpha, beta } => c24_chain(g, a, b, *alpha, *beta),
            Self::R25 {
                f,
                a,
                b,
                alpha,
                beta,
                sigma,
                reading,
            } => r25_harmonic_chain(f, a, b, *alpha, *beta, *sigma, *reading),
            Self::T25 { a, b, alpha, beta } => t25_amgh_chain(a, b, *alpha, *beta),
            Self::C27 { a, b, alpha } => c27_triangle(a, b, *alpha),
            Self::R27 { a, b, alpha } => r27_reverse_triangle(a, b, *alpha),
            Self::T31 { phi, a, b, alpha, beta } => t31_ando(phi, a, b, *alpha, *beta),
            Self::E18 {
                a_list,
                b_list,
                alpha,
                beta,
            } => e18_sums(a_list, b_list, *alpha, *beta),
            Self::T32 {
                phi,
                a,
                b,
                path,
                alpha,
                beta,
            } => r33_general(
                phi,
                a,
                b,
                *path,
                *alpha,
                *beta,
                Weight::ZERO,
                Weight::ONE,
            ),
            Self::R33 {
                phi,
                a,
                b,
                path,
                alpha,
                beta,
                gamma,
                delta,
            } => r33_general(phi, a, b, *path, *alpha, *beta, *gamma, *delta),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn one(x: f64) -> PosDefMatrix {
        PosDefMatrix::from_diagonal(&[x]).unwrap()
    }

    fn w(x: f64) -> Weight {
        Weight::new(x).unwrap()
    }

    fn scalar_terms(report: &ChainReport) -> Vec<f64> {
        report.terms.iter().map(|t| t.entry(0, 0)).collect()
    }

    #[test]
    fn t21_scalar_oracle_chain() {
        let f = ScalarFunctionSpec::shifted_inverse(0.0, 1.0).unwrap();
        let r = t21_chain(&f, &one(4.0), &one(1.0), w(0.5), w(0.5)).unwrap();
        let expected = [0.4, 0.419_313_934_688_767_3, 0.5];
        for (got, want) in scalar_terms(&r).iter().zip(expected) {
            assert_relative_eq!(*got, want, epsilon = 1e-9);
        }
        assert!(r.all_hold);
    }

    #[test]
    fn t21_beta_zero_collapses_first_link() {
        let f = ScalarFunctionSpec::neg_power(0.5).unwrap();
        let r = t21_chain(&f, &one(4.0), &one(1.0), w(0.5), Weight::ZERO).unwrap();
        // β=0 makes the middle term f(A∇_αB)♯_αf(A∇_αB) = f(A∇_αB).
        let terms = scalar_terms(&r);
        assert_relative_eq!(terms[0], terms[1], epsilon = 1e-12);
        assert!(r.all_hold);
    }

    #[test]
    fn t21_rejects_wrong_class_but_bypass_runs() {
        let f = ScalarFunctionSpec::exp_neg();
        let a = one(4.0);
        let b = one(1.0);
        assert!(matches!(
            t21_chain(&f, &a, &b, w(0.5), w(0.5)),
            Err(Error::FunctionClass { .. })
        ));
        // Scalars commute, so the bypass chain still holds there.
        let r = t21_chain_bypass(&f, &a, &b, w(0.5), w(0.5)).unwrap();
        assert!(r.all_hold);
    }

    #[test]
    fn c22_scalar_oracle_chain() {
        let f = ScalarFunctionSpec::shifted_inverse(0.0, 1.0).unwrap();
        let r = c22_chain(&f, &one(2.0), &one(1.0)).unwrap();
        let expected = [
            1.0 / 3.0,
            0.338_061_701_891_406_6,
            0.353_553_390_593_273_8,
            0.375,
            0.75,
        ];
        for (got, want) in scalar_terms(&r).iter().zip(expected) {
            assert_relative_eq!(*got, want, epsilon = 1e-9);
        }
        assert!(r.all_hold);
    }

    #[test]
    fn c22_equal_operands_collapse() {
        let f = ScalarFunctionSpec::neg_power(1.0).unwrap();
        let r = c22_chain(&f, &one(1.0), &one(1.0)).unwrap();
        let terms = scalar_terms(&r);
        let expected = [0.5, 0.5, 0.5, 0.5, 1.0];
        for (got, want) in terms.iter().zip(expected) {
            assert_relative_eq!(*got, want, epsilon = 1e-12);
        }
        assert!(r.all_hold);
    }

    #[test]
    fn c24_scalar_oracle_chain_reversed() {
        let g = ScalarFunctionSpec::power(0.5).unwrap();
        let r = c24_chain(&g, &one(4.0), &one(1.0), w(0.5), w(0.5)).unwrap();
        // Stored ascending: [g(A)♯g(B), middle, g(A∇B)].
        let expected = [
            1.414_213_562_373_095_1,
            1.544_295_309_693_830_6,
            1.581_138_830_084_189_8,
        ];
        for (got, want) in scalar_terms(&r).iter().zip(expected) {
            assert_relative_eq!(*got, want, epsilon = 1e-9);
        }
        assert!(r.all_hold);
        assert!(matches!(
            c24_chain(
                &ScalarFunctionSpec::neg_power(0.5).unwrap(),
                &one(4.0),
                &one(1.0),
                w(0.5),
                w(0.5)
            ),
            Err(Error::FunctionClass { .. })
        ));
    }

    #[test]
    fn r25_scalar_oracle_chain_is_tight_for_inverse() {
        // f(t)=1/t turns every harmonic-of-images term into f of the
        // arithmetic mean, so the first three terms all equal 0.4.
        let f = ScalarFunctionSpec::neg_power(1.0).unwrap();
        let r = r25_harmonic_chain(
            &f,
            &one(4.0),
            &one(1.0),
            w(0.5),
            w(0.5),
            PathSpec::GEOMETRIC,
            SigmaReading::Weighted,
        )
        .unwrap();
        let expected = [0.4, 0.4, 0.4, 0.5];
        for (got, want) in scalar_terms(&r).iter().zip(expected) {
            assert_relative_eq!(*got, want, epsilon = 1e-9);
        }
        assert!(r.all_hold);
    }

    #[test]
    fn r25_beta_zero_collapse() {
        let f = ScalarFunctionSpec::neg_power(0.5).unwrap();
        let r = r25_harmonic_chain(
            &f,
            &one(4.0),
            &one(1.0),
            w(0.3),
            Weight::ZERO,
            PathSpec::GEOMETRIC,
            SigmaReading::Weighted,
        )
        .unwrap();
        let terms = scalar_terms(&r);
        assert_relative_eq!(terms[0], terms[1], epsilon = 1e-12);
        assert!(r.all_hold);
    }

    #[test]
    fn t25_scalar_oracle_chain() {
        let r = t25_amgh_chain(&one(4.0), &one(1.0), w(0.5), w(0.5)).unwrap();
        let expected = [
            1.6,
            1.885_618_083_164_127,
            2.0,
            2.121_320_343_559_643,
            2.5,
        ];
        for (got, want) in scalar_terms(&r).iter().zip(expected) {
            assert_relative_eq!(*got, want, epsilon = 1e-9);
        }
        assert!(r.all_hold);
    }

    #[test]
    fn t25_beta_one_reduces_to_sandwich() {
        let a = PosDefMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let b = PosDefMatrix::identity(2);
        let r = t25_amgh_chain(&a, &b, w(0.5), Weight::ONE).unwrap();
        assert!(r.all_hold);
        let r = t25_amgh_chain(&a, &b, w(0.5), w(0.25)).unwrap();
        assert!(r.all_hold);
    }

    #[test]
    fn c27_scalar_examples() {
        let a = SymMatrix::scalar(1.0);
        let r = c27_triangle(&a, &a, UnrestrictedWeight::new(0.5).unwrap()).unwrap();
        for v in scalar_terms(&r) {
            assert_relative_eq!(v, 2.0, epsilon = 1e-14);
        }
        assert!(r.all_hold);

        let a = SymMatrix::scalar(3.0);
        let b = SymMatrix::scalar(-1.0);
        let r = c27_triangle(&a, &b, UnrestrictedWeight::new(0.0).unwrap()).unwrap();
        let terms = scalar_terms(&r);
        assert_relative_eq!(terms[0], 2.0, epsilon = 1e-14);
        assert_relative_eq!(terms[1], 2.0, epsilon = 1e-14);
        assert_relative_eq!(terms[2], 4.0, epsilon = 1e-14);
        assert!(r.all_hold);
    }

    #[test]
    fn r27_scalar_examples() {
        // Zero operand: every term equals ‖A‖ on one side.
        let a = SymMatrix::scalar(3.0);
        let zero = SymMatrix::scalar(0.0);
        let r =
            r27_reverse_triangle(&a, &zero, UnrestrictedWeight::new(0.7).unwrap()).unwrap();
        assert!(r.all_hold);
        let terms = scalar_terms(&r);
        assert_relative_eq!(terms[0], 3.0, epsilon = 1e-14);
        assert_relative_eq!(terms[1], 3.0, epsilon = 1e-14);
        assert_relative_eq!(terms[2], 3.0, epsilon = 1e-14);

        let b = SymMatrix::scalar(1.0);
        let r = r27_reverse_triangle(&a, &b, UnrestrictedWeight::new(0.5).unwrap()).unwrap();
        let terms = scalar_terms(&r);
        for v in &terms[..3] {
            assert_relative_eq!(*v, 2.0, epsilon = 1e-14);
        }
        assert!(r.all_hold);
        assert_eq!(r.links.len(), 4);
    }

    #[test]
    fn t31_block_sum_scalar_oracle() {
        let phi = PositiveLinearMapSpec::block_sum(2, 1).unwrap();
        let a = PosDefMatrix::from_diagonal(&[4.0, 1.0]).unwrap();
        let b = PosDefMatrix::from_diagonal(&[1.0, 4.0]).unwrap();
        let r = t31_ando(&phi, &a, &b, w(0.5), w(0.5)).unwrap();
        let expected = [4.0, 4.242_640_687_119_286, 5.0];
        for (got, want) in scalar_terms(&r).iter().zip(expected) {
            assert_relative_eq!(*got, want, epsilon = 1e-9);
        }
        assert!(r.all_hold);
    }

    #[test]
    fn t31_identity_map_first_link_tight() {
        let phi = PositiveLinearMapSpec::identity_compression(2);
        let a = PosDefMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let b = PosDefMatrix::identity(2);
        let r = t31_ando(&phi, &a, &b, w(0.5), w(0.5)).unwrap();
        assert!(r.all_hold);
        // Identity map makes the first link the composition identity.
        assert!(r.links[0].normalized_gap().abs() <= 1e-10);
    }

    #[test]
    fn e18_scalar_oracle_and_single_pair_collapse() {
        let a_list = vec![one(4.0), one(1.0)];
        let b_list = vec![one(1.0), one(4.0)];
        let r = e18_sums(&a_list, &b_list, w(0.5), w(0.5)).unwrap();
        let expected = [4.0, 4.242_640_687_119_286, 5.0];
        for (got, want) in scalar_terms(&r).iter().zip(expected) {
            assert_relative_eq!(*got, want, epsilon = 1e-9);
        }
        assert!(r.all_hold);

        // m=1: the first link is the composition identity, hence tight.
        let r = e18_sums(&[one(4.0)], &[one(1.0)], w(0.3), w(0.7)).unwrap();
        assert!(r.all_hold);
        assert!(r.links[0].normalized_gap().abs() <= 1e-12);

        assert!(matches!(
            e18_sums(&[], &[], w(0.5), w(0.5)),
            Err(Error::ListMismatch { .. })
        ));
        assert!(matches!(
            e18_sums(&[one(1.0)], &[], w(0.5), w(0.5)),
            Err(Error::ListMismatch { .. })
        ));
    }

    #[test]
    fn r33_reduces_to_t31_on_geometric_path() {
        let phi = PositiveLinearMapSpec::block_sum(2, 1).unwrap();
        let a = PosDefMatrix::from_diagonal(&[4.0, 1.0]).unwrap();
        let b = PosDefMatrix::from_diagonal(&[2.0, 3.0]).unwrap();
        let al = w(0.3);
        let be = w(0.8);
        let general = r33_general(
            &phi,
            &a,
            &b,
            PathSpec::GEOMETRIC,
            al,
            be,
            Weight::ZERO,
            Weight::ONE,
        )
        .unwrap();
        let direct = t31_ando(&phi, &a, &b, al, be).unwrap();
        for (x, y) in general.terms.iter().zip(&direct.terms) {
            let dev = operator_norm(&x.sub(y).unwrap());
            let scale = operator_norm(x).max(1.0);
            assert!(dev <= 1e-12 * scale, "dev {dev:e}");
        }
        assert!(general.all_hold);
    }

    #[test]
    fn r33_identity_map_first_link_tight() {
        let phi = PositiveLinearMapSpec::identity_compression(1);
        let r = r33_general(
            &phi,
            &one(4.0),
            &one(1.0),
            PathSpec::HARMONIC,
            w(0.5),
            w(0.5),
            w(0.25),
            w(0.75),
        )
        .unwrap();
        // p = 0.5·0.5 + 0.5·(0.5·0.25 + 0.5·0.75) = 0.5.
        assert!(r.all_hold);
        assert!(r.links[0].normalized_gap().abs() <= 1e-10);
    }

    #[test]
    fn theorem_instance_validation_and_dispatch() {
        let omd = ScalarFunctionSpec::neg_power(0.5).unwrap();
        let omi = ScalarFunctionSpec::power(0.5).unwrap();
        assert!(TheoremInstance::t21(omi.clone(), one(4.0), one(1.0), w(0.5), w(0.5)).is_err());
        let inst = TheoremInstance::t21(omd, one(4.0), one(1.0), w(0.5), w(0.5)).unwrap();
        assert_eq!(inst.theorem_id(), TheoremId::T21);
        assert!(inst.evaluate().unwrap().all_hold);

        let inst = TheoremInstance::c24(omi, one(4.0), one(1.0), w(0.5), w(0.5)).unwrap();
        assert!(inst.evaluate().unwrap().all_hold);
    }

    #[test]
    fn theorem_id_parse() {
        assert_eq!("T25".parse::<TheoremId>().unwrap(), TheoremId::T25);
        assert_eq!("r33".parse::<TheoremId>().unwrap(), TheoremId::R33);
        assert!("T99".parse::<TheoremId>().is_err());
    }
}
