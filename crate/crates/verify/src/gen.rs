//! Seeded random matrix generation and per-cell seed derivation.
//!
//! The generator is ChaCha with 8 rounds (`rand_chacha::ChaCha8Rng`), a
//! named counter-based algorithm, so seeds are portable across
//! implementations. Per-cell seeds are `master ^ FNV-1a64(cell key)`;
//! FNV-1a is spelled out here rather than taken from a hasher so the
//! derivation is stable across toolchains.

use nalgebra::DMatrix;
use opmeans::{PosDefMatrix, SymMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// FNV-1a 64-bit hash.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    let mut h = OFFSET;
    for &b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(PRIME);
    }
    h
}

pub fn derive_seed(master: u64, key: &str) -> u64 {
    master ^ fnv1a64(key.as_bytes())
}

pub fn cell_rng(master: u64, key: &str) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(master, key))
}

/// Haar-distributed orthogonal matrix: QR of a standard-normal factor
/// with the R diagonal signs absorbed into Q.
fn random_orthogonal<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DMatrix<f64> {
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

/// `Q·diag(λ)·Qᵀ` with `λ` log-uniform in `[lo, hi]` and `Q` Haar; the
/// condition number is bounded by `hi/lo` by construction.
pub fn gen_posdef<R: Rng + ?Sized>(dim: usize, eig_range: (f64, f64), rng: &mut R) -> PosDefMatrix {
    let (lo, hi) = eig_range;
    debug_assert!(0.0 < lo && lo < hi);
    let q = random_orthogonal(dim, rng);
    let lambda: Vec<f64> = (0..dim)
        .map(|_| rng.gen_range(lo.ln()..=hi.ln()).exp())
        .collect();
    let mut scaled = q.clone();
    for (j, &l) in lambda.iter().enumerate() {
        scaled.column_mut(j).scale_mut(l);
    }
    let sym = SymMatrix::new(scaled * q.transpose()).expect("finite by construction");
    PosDefMatrix::new(sym).expect("eigenvalues bounded away from zero")
}

/// Symmetric matrix with standard-normal entries; indefinite in general.
pub fn gen_sym<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> SymMatrix {
    let g = DMatrix::from_fn(dim, dim, |_, _| rng.sample::<f64, _>(StandardNormal));
    SymMatrix::new(g).expect("finite by construction")
}
