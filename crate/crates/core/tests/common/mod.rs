//! Shared test samplers: seeded, reproducible random matrices.
//!
//! Each test binary uses its own subset of these helpers.
#![allow(dead_code)]

use nalgebra::DMatrix;
use opmeans::{PosDefMatrix, SymMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Haar-distributed orthogonal factor: QR of a standard-normal matrix
/// with the R diagonal signs absorbed into Q.
pub fn random_orthogonal<R: Rng>(rng: &mut R, dim: usize) -> DMatrix<f64> {
    let g = DMatrix::from_fn(dim, dim, |_, _| rng.sample::<f64, _>(StandardNormal));
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..dim {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    q
}

/// Q·diag(λ)·Qᵀ with log-uniform eigenvalues in `[lo, hi]`.
pub fn random_posdef<R: Rng>(rng: &mut R, dim: usize, lo: f64, hi: f64) -> PosDefMatrix {
    let q = random_orthogonal(rng, dim);
    let lambda: Vec<f64> = (0..dim)
        .map(|_| (rng.gen_range(lo.ln()..=hi.ln())).exp())
        .collect();
    let mut scaled = q.clone();
    for (j, &l) in lambda.iter().enumerate() {
        scaled.column_mut(j).scale_mut(l);
    }
    PosDefMatrix::new(SymMatrix::new(scaled * q.transpose()).unwrap()).unwrap()
}

/// Symmetric matrix with standard-normal entries; not positive in general.
pub fn random_sym<R: Rng>(rng: &mut R, dim: usize) -> SymMatrix {
    let g = DMatrix::from_fn(dim, dim, |_, _| rng.sample::<f64, _>(StandardNormal));
    SymMatrix::new(g).unwrap()
}
