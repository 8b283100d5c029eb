//! Symmetric eigendecomposition and scalar-function spectral calculus.
//!
//! Real symmetric matrices only. Matrices are symmetrized on construction
//! (`(M + Mᵀ)/2`) so downstream eigendecompositions never see round-off
//! asymmetry. Eigenvalues come back sorted ascending with a deterministic
//! eigenvector sign convention, so golden tests are stable.

use nalgebra::DMatrix;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::tol;

/// A real symmetric matrix with explicit dimension.
///
/// Invariant: entries are finite and exactly symmetric.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    m: DMatrix<f64>,
}

impl SymMatrix {
    /// Symmetrizes a square matrix with finite entries.
    pub fn new(m: DMatrix<f64>) -> Result<Self> {
        if m.nrows() != m.ncols() || m.nrows() == 0 {
            return Err(Error::NotSquare {
                rows: m.nrows(),
                cols: m.ncols(),
            });
        }
        for j in 0..m.ncols() {
            for i in 0..m.nrows() {
                if !m[(i, j)].is_finite() {
                    return Err(Error::NonFiniteEntry { row: i, col: j });
                }
            }
        }
        Ok(Self::symmetrized(m))
    }

    /// Symmetrization without the finiteness check; callers guarantee a
    /// square matrix built from finite inputs.
    pub(crate) fn symmetrized(m: DMatrix<f64>) -> Self {
        debug_assert_eq!(m.nrows(), m.ncols());
        let sym = (&m + m.transpose()) * 0.5;
        Self { m: sym }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::NotSquare {
                rows: n,
                cols: rows.first().map_or(0, Vec::len),
            });
        }
        Self::new(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            m: DMatrix::identity(dim, dim),
        }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            m: DMatrix::zeros(dim, dim),
        }
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        Self {
            m: DMatrix::from_fn(n, n, |i, j| if i == j { diag[i] } else { 0.0 }),
        }
    }

    /// A 1x1 matrix; used to push scalar quantities (norms, traces)
    /// through the same chain machinery as matrices.
    pub fn scalar(x: f64) -> Self {
        Self {
            m: DMatrix::from_element(1, 1, x),
        }
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.m
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.m[(i, j)]
    }

    pub fn add(&self, other: &SymMatrix) -> Result<SymMatrix> {
        check_dims(self.dim(), other.dim())?;
        Ok(SymMatrix {
            m: &self.m + &other.m,
        })
    }

    pub fn sub(&self, other: &SymMatrix) -> Result<SymMatrix> {
        check_dims(self.dim(), other.dim())?;
        Ok(SymMatrix {
            m: &self.m - &other.m,
        })
    }

    pub fn scale(&self, c: f64) -> SymMatrix {
        SymMatrix { m: &self.m * c }
    }

    /// Parses the shared matrix literal format
    /// `{"dim": n, "rows": [[...], ...]}`. Asymmetry up to
    /// [`tol::ASYM_REJECT`] (relative) is averaged away; larger asymmetry
    /// is rejected.
    pub fn from_json_str(s: &str) -> Result<Self> {
        let lit: MatrixLiteral =
            serde_json::from_str(s).map_err(|e| Error::Literal(e.to_string()))?;
        lit.try_into()
    }
}

fn check_dims(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}

/// Wire format for symmetric matrices: `{"dim": n, "rows": [[...], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixLiteral {
    pub dim: usize,
    pub rows: Vec<Vec<f64>>,
}

impl TryFrom<MatrixLiteral> for SymMatrix {
    type Error = Error;

    fn try_from(lit: MatrixLiteral) -> Result<Self> {
        if lit.dim == 0 || lit.rows.len() != lit.dim || lit.rows.iter().any(|r| r.len() != lit.dim)
        {
            return Err(Error::Literal(format!(
                "expected {0} rows of {0} entries",
                lit.dim
            )));
        }
        let m = DMatrix::from_fn(lit.dim, lit.dim, |i, j| lit.rows[i][j]);
        for j in 0..lit.dim {
            for i in 0..lit.dim {
                if !m[(i, j)].is_finite() {
                    return Err(Error::Literal(format!("non-finite entry at ({i},{j})")));
                }
            }
        }
        let max_abs = m.iter().fold(0.0_f64, |acc, &x| acc.max(x.abs()));
        let asym = (0..lit.dim)
            .flat_map(|i| (0..lit.dim).map(move |j| (i, j)))
            .fold(0.0_f64, |acc, (i, j)| {
                acc.max((m[(i, j)] - m[(j, i)]).abs())
            });
        if asym > tol::ASYM_REJECT * max_abs {
            return Err(Error::Literal(format!(
                "asymmetry {asym:e} exceeds {:e} relative",
                tol::ASYM_REJECT
            )));
        }
        Ok(SymMatrix::symmetrized(m))
    }
}

impl From<&SymMatrix> for MatrixLiteral {
    fn from(s: &SymMatrix) -> Self {
        let n = s.dim();
        MatrixLiteral {
            dim: n,
            rows: (0..n)
                .map(|i| (0..n).map(|j| s.entry(i, j)).collect())
                .collect(),
        }
    }
}

impl Serialize for SymMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixLiteral::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SymMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let lit = MatrixLiteral::deserialize(deserializer)?;
        SymMatrix::try_from(lit).map_err(D::Error::custom)
    }
}

/// A symmetric positive definite matrix.
///
/// Construction verifies `λ_min > PD_FLOOR · λ_max`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct PosDefMatrix {
    sym: SymMatrix,
}

impl PosDefMatrix {
    pub fn new(sym: SymMatrix) -> Result<Self> {
        let es = eigh(&sym)?;
        let lambda_min = es.eigenvalues[0];
        let lambda_max = es.eigenvalues[es.eigenvalues.len() - 1];
        let floor = tol::PD_FLOOR * lambda_max.max(0.0);
        if lambda_max <= 0.0 || lambda_min <= floor {
            return Err(Error::NotPositiveDefinite {
                min_eig: lambda_min,
                floor,
            });
        }
        Ok(Self { sym })
    }

    /// For intermediate results that are positive definite by
    /// construction (spectral maps with positive images, means of
    /// positive definite operands).
    pub(crate) fn from_sym_unchecked(sym: SymMatrix) -> Self {
        Self { sym }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            sym: SymMatrix::identity(dim),
        }
    }

    pub fn from_diagonal(diag: &[f64]) -> Result<Self> {
        Self::new(SymMatrix::from_diagonal(diag))
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Self::new(SymMatrix::from_rows(rows)?)
    }

    pub fn dim(&self) -> usize {
        self.sym.dim()
    }

    pub fn sym(&self) -> &SymMatrix {
        &self.sym
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        self.sym.matrix()
    }
}

impl From<PosDefMatrix> for SymMatrix {
    fn from(p: PosDefMatrix) -> Self {
        p.sym
    }
}

/// Result of a symmetric eigendecomposition: `m = basis · diag(λ) · basisᵀ`
/// with eigenvalues ascending and orthonormal columns.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    eigenvalues: Vec<f64>,
    basis: DMatrix<f64>,
}

impl EigenSystem {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn basis(&self) -> &DMatrix<f64> {
        &self.basis
    }

    /// Reassembles `basis · diag(f(λ)) · basisᵀ`, symmetrized.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> SymMatrix {
        let mut scaled = self.basis.clone();
        for (j, &lambda) in self.eigenvalues.iter().enumerate() {
            let flam = f(lambda);
            scaled.column_mut(j).scale_mut(flam);
        }
        SymMatrix::symmetrized(&scaled * self.basis.transpose())
    }

    pub fn reconstruct(&self) -> SymMatrix {
        self.map(|l| l)
    }
}

/// Cyclic Jacobi diagonalization. Returns unsorted eigenvalues and the
/// accumulated rotation matrix, or `None` if the off-diagonal mass has
/// not vanished after the sweep budget.
///
/// Jacobi is the right solver at these sizes (dim ≤ 64): its
/// reconstruction error stays at a few ulps even for clustered spectra,
/// where shifted tridiagonal QR implementations can lose many digits.
/// Rotations touch only the upper triangle; the lower one is implied by
/// symmetry. Buffers are column-major flat slices (`(i,j) = j*n+i`).
fn jacobi(m: &DMatrix<f64>) -> Option<(Vec<f64>, DMatrix<f64>)> {
    let n = m.nrows();
    if n == 1 {
        return Some((vec![m[(0, 0)]], DMatrix::identity(1, 1)));
    }
    let mut a: Vec<f64> = m.as_slice().to_vec();
    let mut v = vec![0.0_f64; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }

    #[inline]
    fn rotate(a: &mut [f64], i: usize, j: usize, s: f64, tau: f64) {
        let x = a[i];
        let y = a[j];
        a[i] = x - s * (y + tau * x);
        a[j] = y + s * (x - tau * y);
    }

    const MAX_SWEEPS: usize = 64;
    const OFF_TOL_SQ: f64 = 1e-30;
    for _ in 0..MAX_SWEEPS {
        let mut off_sq = 0.0;
        let mut diag_sq = 0.0;
        for j in 0..n {
            for i in 0..j {
                off_sq += 2.0 * a[j * n + i] * a[j * n + i];
            }
            let d = a[j * n + j];
            diag_sq += d * d;
        }
        let total_sq = diag_sq + off_sq;
        if off_sq <= OFF_TOL_SQ * total_sq || off_sq == 0.0 {
            let d = (0..n).map(|i| a[i * n + i]).collect();
            return Some((d, DMatrix::from_column_slice(n, n, &v)));
        }
        for p in 0..(n - 1) {
            for q in (p + 1)..n {
                let apq = a[q * n + p];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                // Entries that cannot move either diagonal by an ulp are
                // dead weight; zero them instead of rotating.
                let g = 100.0 * apq.abs();
                if app.abs() + g == app.abs() && aqq.abs() + g == aqq.abs() {
                    a[q * n + p] = 0.0;
                    continue;
                }
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[q * n + p] = 0.0;
                for j in 0..p {
                    rotate(&mut a, p * n + j, q * n + j, s, tau);
                }
                for j in (p + 1)..q {
                    rotate(&mut a, j * n + p, q * n + j, s, tau);
                }
                for j in (q + 1)..n {
                    rotate(&mut a, j * n + p, j * n + q, s, tau);
                }
                for i in 0..n {
                    rotate(&mut v, p * n + i, q * n + i, s, tau);
                }
            }
        }
    }
    None
}

/// Symmetric eigendecomposition with deterministic output: eigenvalues
/// ascending, each eigenvector's largest-magnitude component positive.
pub fn eigh(m: &SymMatrix) -> Result<EigenSystem> {
    let n = m.dim();
    let (raw_values, raw_basis) = jacobi(m.matrix()).ok_or_else(|| Error::EigenFailure {
        dim: n,
        entries: m.matrix().iter().copied().collect(),
    })?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| raw_values[i].partial_cmp(&raw_values[j]).unwrap());

    let eigenvalues: Vec<f64> = order.iter().map(|&i| raw_values[i]).collect();
    let mut basis = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        let col = raw_basis.column(src);
        // Sign convention: the first component of largest magnitude is
        // made positive.
        let mut arg = 0;
        for i in 1..n {
            if col[i].abs() > col[arg].abs() {
                arg = i;
            }
        }
        let sign = if col[arg] < 0.0 { -1.0 } else { 1.0 };
        for i in 0..n {
            basis[(i, dst)] = sign * col[i];
        }
    }
    Ok(EigenSystem { eigenvalues, basis })
}

/// Applies a scalar function to a positive definite matrix by spectral
/// calculus: `basis · diag(f(λ)) · basisᵀ`.
///
/// Fails if `f` is non-finite at any eigenvalue.
pub fn apply_scalar(m: &PosDefMatrix, f: impl Fn(f64) -> f64) -> Result<SymMatrix> {
    let es = eigh(m.sym())?;
    for &lambda in es.eigenvalues() {
        if !f(lambda).is_finite() {
            return Err(Error::Domain { at: lambda });
        }
    }
    Ok(es.map(f))
}

/// Congruence `cᵀ · x · c` for invertible `c`.
pub fn congruence(c: &DMatrix<f64>, x: &SymMatrix) -> Result<SymMatrix> {
    if c.nrows() != c.ncols() {
        return Err(Error::NotSquare {
            rows: c.nrows(),
            cols: c.ncols(),
        });
    }
    check_dims(x.dim(), c.nrows())?;
    let lu = c.clone().full_piv_lu();
    let u = lu.u();
    let max_pivot = (0..u.nrows()).fold(0.0_f64, |acc, i| acc.max(u[(i, i)].abs()));
    let min_pivot = (0..u.nrows()).fold(f64::INFINITY, |acc, i| acc.min(u[(i, i)].abs()));
    if max_pivot == 0.0 || min_pivot <= tol::SINGULAR_REL * max_pivot {
        return Err(Error::SingularFactor);
    }
    Ok(SymMatrix::symmetrized(c.transpose() * x.matrix() * c))
}

/// Fractional power `m^t` by spectral calculus, with the convention
/// `m^0 = I`.
pub fn frac_power(m: &PosDefMatrix, t: f64) -> Result<PosDefMatrix> {
    if t == 0.0 {
        return Ok(PosDefMatrix::identity(m.dim()));
    }
    let sym = apply_scalar(m, |s| s.powf(t))?;
    Ok(PosDefMatrix::from_sym_unchecked(sym))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn sym(rows: &[Vec<f64>]) -> SymMatrix {
        SymMatrix::from_rows(rows).unwrap()
    }

    fn pd(rows: &[Vec<f64>]) -> PosDefMatrix {
        PosDefMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn eigh_identity() {
        let es = eigh(&SymMatrix::identity(2)).unwrap();
        assert_eq!(es.eigenvalues(), &[1.0, 1.0]);
        let q = es.basis().transpose() * es.basis();
        assert_relative_eq!(q, DMatrix::identity(2, 2), epsilon = 1e-14);
    }

    #[test]
    fn eigh_diagonal() {
        let es = eigh(&SymMatrix::from_diagonal(&[1.0, 4.0])).unwrap();
        assert_relative_eq!(es.eigenvalues()[0], 1.0, epsilon = 1e-14);
        assert_relative_eq!(es.eigenvalues()[1], 4.0, epsilon = 1e-14);
        for j in 0..2 {
            let col = es.basis().column(j);
            assert!(col.iter().map(|x| x.abs()).fold(0.0_f64, f64::max) > 0.999);
        }
    }

    #[test]
    fn eigh_two_by_two_closed_form() {
        // Characteristic polynomial of [[2,1],[1,2]] gives λ = 1, 3 with
        // eigenvectors (1,∓1)/√2.
        let es = eigh(&sym(&[vec![2.0, 1.0], vec![1.0, 2.0]])).unwrap();
        assert_relative_eq!(es.eigenvalues()[0], 1.0, epsilon = 1e-12);
        assert_relative_eq!(es.eigenvalues()[1], 3.0, epsilon = 1e-12);
        let s = 1.0 / 2.0_f64.sqrt();
        assert_relative_eq!(es.basis()[(0, 0)], s, epsilon = 1e-12);
        assert_relative_eq!(es.basis()[(1, 0)], -s, epsilon = 1e-12);
        assert_relative_eq!(es.basis()[(0, 1)], s, epsilon = 1e-12);
        assert_relative_eq!(es.basis()[(1, 1)], s, epsilon = 1e-12);
    }

    #[test]
    fn apply_scalar_identity_function() {
        let a = pd(&[vec![2.0, 1.0], vec![1.0, 2.0]]);
        let out = apply_scalar(&a, |t| t).unwrap();
        assert_relative_eq!(out.matrix(), a.matrix(), epsilon = 1e-12);
    }

    #[test]
    fn apply_scalar_sqrt_closed_form() {
        // Eigendecomposition oracle with λ = {1, 3}: entries (√3±1)/2.
        let a = pd(&[vec![2.0, 1.0], vec![1.0, 2.0]]);
        let out = apply_scalar(&a, f64::sqrt).unwrap();
        let d = (3.0_f64.sqrt() + 1.0) / 2.0;
        let o = (3.0_f64.sqrt() - 1.0) / 2.0;
        assert_relative_eq!(out.entry(0, 0), d, epsilon = 1e-12);
        assert_relative_eq!(out.entry(0, 1), o, epsilon = 1e-12);
        assert_relative_eq!(out.entry(1, 1), d, epsilon = 1e-12);
    }

    #[test]
    fn apply_scalar_inverse_diagonal() {
        let a = PosDefMatrix::from_diagonal(&[4.0, 1.0]).unwrap();
        let out = apply_scalar(&a, |t| 1.0 / t).unwrap();
        assert_relative_eq!(out.entry(0, 0), 0.25, epsilon = 1e-14);
        assert_relative_eq!(out.entry(1, 1), 1.0, epsilon = 1e-14);
        assert_relative_eq!(out.entry(0, 1), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn apply_scalar_domain_error() {
        let a = PosDefMatrix::from_diagonal(&[1.0, 2.0]).unwrap();
        let err = apply_scalar(&a, |t| (t - 1.5).ln()).unwrap_err();
        assert!(matches!(err, Error::Domain { .. }));
    }

    #[test]
    fn congruence_identity_and_scaling() {
        let x = sym(&[vec![2.0, 1.0], vec![1.0, 2.0]]);
        let id = DMatrix::identity(2, 2);
        assert_relative_eq!(
            congruence(&id, &x).unwrap().matrix(),
            x.matrix(),
            epsilon = 1e-15
        );

        let c = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![2.0, 1.0]));
        let out = congruence(&c, &SymMatrix::identity(2)).unwrap();
        assert_relative_eq!(out.entry(0, 0), 4.0, epsilon = 1e-15);
        assert_relative_eq!(out.entry(1, 1), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn congruence_rotation() {
        // 90° rotation swaps the diagonal of diag(1,3).
        let c = DMatrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0]);
        let out = congruence(&c, &SymMatrix::from_diagonal(&[1.0, 3.0])).unwrap();
        assert_relative_eq!(out.entry(0, 0), 3.0, epsilon = 1e-15);
        assert_relative_eq!(out.entry(1, 1), 1.0, epsilon = 1e-15);
        assert_relative_eq!(out.entry(0, 1), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn congruence_singular_rejected() {
        let c = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 4.0]);
        let err = congruence(&c, &SymMatrix::identity(2)).unwrap_err();
        assert!(matches!(err, Error::SingularFactor));
    }

    #[test]
    fn frac_power_conventions() {
        let a = pd(&[vec![2.0, 1.0], vec![1.0, 2.0]]);
        let zero = frac_power(&a, 0.0).unwrap();
        assert_relative_eq!(
            zero.matrix(),
            &DMatrix::identity(2, 2),
            epsilon = 1e-15
        );

        let sq = frac_power(&PosDefMatrix::from_diagonal(&[4.0, 9.0]).unwrap(), 0.5).unwrap();
        assert_relative_eq!(sq.matrix()[(0, 0)], 2.0, epsilon = 1e-12);
        assert_relative_eq!(sq.matrix()[(1, 1)], 3.0, epsilon = 1e-12);

        // Closed-form 2x2 inverse: (1/3)·[[2,-1],[-1,2]].
        let inv = frac_power(&a, -1.0).unwrap();
        assert_relative_eq!(inv.matrix()[(0, 0)], 2.0 / 3.0, epsilon = 1e-12);
        assert_relative_eq!(inv.matrix()[(0, 1)], -1.0 / 3.0, epsilon = 1e-12);

        let back = frac_power(&frac_power(&a, 0.5).unwrap(), 2.0).unwrap();
        assert_relative_eq!(back.matrix(), a.matrix(), epsilon = 1e-10);
    }

    #[test]
    fn posdef_rejects_near_singular() {
        let err = PosDefMatrix::from_diagonal(&[1.0, 5e-11]).unwrap_err();
        assert!(matches!(err, Error::NotPositiveDefinite { .. }));
        let err = PosDefMatrix::from_diagonal(&[1.0, -1.0]).unwrap_err();
        assert!(matches!(err, Error::NotPositiveDefinite { .. }));
    }

    #[test]
    fn literal_round_trip_and_asymmetry() {
        let a = sym(&[vec![2.0, 1.0], vec![1.0, 2.0]]);
        let json = serde_json::to_string(&a).unwrap();
        let b: SymMatrix = serde_json::from_str(&json).unwrap();
        assert_eq!(a, b);

        // Mild asymmetry is averaged.
        let s = r#"{"dim":2,"rows":[[1.0,2.0000000001],[2.0,1.0]]}"#;
        let m = SymMatrix::from_json_str(s).unwrap();
        assert_relative_eq!(m.entry(0, 1), 2.00000000005, epsilon = 1e-15);

        // Gross asymmetry is rejected.
        let s = r#"{"dim":2,"rows":[[1.0,2.1],[2.0,1.0]]}"#;
        assert!(matches!(
            SymMatrix::from_json_str(s),
            Err(Error::Literal(_))
        ));
    }

    #[test]
    fn literal_rejects_bad_shape() {
        let s = r#"{"dim":2,"rows":[[1.0,2.0]]}"#;
        assert!(SymMatrix::from_json_str(s).is_err());
    }

    #[test]
    fn symmetrization_on_construction() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 3.0, 1.0, 2.0]);
        let s = SymMatrix::new(m).unwrap();
        assert_eq!(s.entry(0, 1), 2.0);
        assert_eq!(s.entry(1, 0), 2.0);
    }
}
