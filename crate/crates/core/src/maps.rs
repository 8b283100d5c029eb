//! Constructive positive linear maps: compressions `X ↦ VᵀXV`, pinchings
//! (block-diagonal truncation), the block-sum map `diag(X₁,…,Xₙ) ↦ ΣXⱼ`,
//! and weighted-trace functionals `X ↦ [tr(XW)]`.
//!
//! The weighted trace returns a 1x1 matrix rather than a scalar so every
//! map composes uniformly with means.

use std::fmt;

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::spectral::{eigh, SymMatrix};
use crate::tol;

#[derive(Debug, Clone)]
pub enum PositiveLinearMapSpec {
    /// `X ↦ VᵀXV` for an n×k factor of full column rank.
    Compression { v: DMatrix<f64> },
    /// Zeroes all off-diagonal blocks of the contiguous partition given
    /// by `block_sizes`.
    Pinching { block_sizes: Vec<usize> },
    /// `diag(X₁,…,Xₙ) ↦ X₁+…+Xₙ` over `n_blocks` diagonal blocks of size
    /// `block_dim`.
    BlockSum { n_blocks: usize, block_dim: usize },
    /// `X ↦ [tr(XW)]` for positive definite weight `W` (stored as the
    /// symmetric matrix).
    WeightedTrace { w: SymMatrix },
}

impl PositiveLinearMapSpec {
    pub fn compression(v: DMatrix<f64>) -> Result<Self> {
        if v.nrows() == 0 || v.ncols() == 0 || v.ncols() > v.nrows() {
            return Err(Error::InvalidParameter {
                name: "v",
                value: v.ncols() as f64,
                reason: "compression factor must be n×k with 1 <= k <= n",
            });
        }
        let k = v.ncols();
        let svd = v.clone().svd(false, false);
        let rank = svd.rank(1e-10);
        if rank < k {
            return Err(Error::InvalidParameter {
                name: "v",
                value: rank as f64,
                reason: "compression factor must have full column rank",
            });
        }
        Ok(Self::Compression { v })
    }

    pub fn identity_compression(dim: usize) -> Self {
        Self::Compression {
            v: DMatrix::identity(dim, dim),
        }
    }

    pub fn pinching(block_sizes: Vec<usize>) -> Result<Self> {
        if block_sizes.is_empty() || block_sizes.iter().any(|&s| s == 0) {
            return Err(Error::InvalidParameter {
                name: "block_sizes",
                value: block_sizes.len() as f64,
                reason: "pinching needs a non-empty partition of positive blocks",
            });
        }
        Ok(Self::Pinching { block_sizes })
    }

    pub fn block_sum(n_blocks: usize, block_dim: usize) -> Result<Self> {
        if n_blocks == 0 || block_dim == 0 {
            return Err(Error::InvalidParameter {
                name: "block_sum",
                value: 0.0,
                reason: "block_sum needs n_blocks >= 1 and block_dim >= 1",
            });
        }
        Ok(Self::BlockSum {
            n_blocks,
            block_dim,
        })
    }

    pub fn weighted_trace(w: crate::spectral::PosDefMatrix) -> Self {
        Self::WeightedTrace { w: w.sym().clone() }
    }

    pub fn in_dim(&self) -> usize {
        match self {
            Self::Compression { v } => v.nrows(),
            Self::Pinching { block_sizes } => block_sizes.iter().sum(),
            Self::BlockSum {
                n_blocks,
                block_dim,
            } => n_blocks * block_dim,
            Self::WeightedTrace { w } => w.dim(),
        }
    }

    pub fn out_dim(&self) -> usize {
        match self {
            Self::Compression { v } => v.ncols(),
            Self::Pinching { block_sizes } => block_sizes.iter().sum(),
            Self::BlockSum { block_dim, .. } => *block_dim,
            Self::WeightedTrace { .. } => 1,
        }
    }

    /// Applies the map to a symmetric matrix of size `in_dim`.
    pub fn apply(&self, x: &SymMatrix) -> Result<SymMatrix> {
        if x.dim() != self.in_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.in_dim(),
                got: x.dim(),
            });
        }
        match self {
            Self::Compression { v } => Ok(SymMatrix::symmetrized(
                v.transpose() * x.matrix() * v,
            )),
            Self::Pinching { block_sizes } => {
                let n = x.dim();
                let mut out = DMatrix::zeros(n, n);
                let mut start = 0;
                for &size in block_sizes {
                    for j in start..start + size {
                        for i in start..start + size {
                            out[(i, j)] = x.entry(i, j);
                        }
                    }
                    start += size;
                }
                Ok(SymMatrix::symmetrized(out))
            }
            Self::BlockSum {
                n_blocks,
                block_dim,
            } => {
                let d = *block_dim;
                let mut out = DMatrix::zeros(d, d);
                for blk in 0..*n_blocks {
                    let off = blk * d;
                    for j in 0..d {
                        for i in 0..d {
                            out[(i, j)] += x.entry(off + i, off + j);
                        }
                    }
                }
                Ok(SymMatrix::symmetrized(out))
            }
            Self::WeightedTrace { w } => {
                let n = x.dim();
                let mut tr = 0.0;
                for i in 0..n {
                    for j in 0..n {
                        tr += x.entry(i, j) * w.entry(j, i);
                    }
                }
                Ok(SymMatrix::scalar(tr))
            }
        }
    }
}

impl fmt::Display for PositiveLinearMapSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Compression { v } => write!(f, "compression:{}x{}", v.nrows(), v.ncols()),
            Self::Pinching { block_sizes } => {
                let sizes: Vec<String> = block_sizes.iter().map(|s| s.to_string()).collect();
                write!(f, "pinching:{}", sizes.join(","))
            }
            Self::BlockSum {
                n_blocks,
                block_dim,
            } => write!(f, "block_sum:{n_blocks}x{block_dim}"),
            Self::WeightedTrace { w } => write!(f, "weighted_trace:{}", w.dim()),
        }
    }
}

/// Samples random PSD matrices and reports whether every image passes
/// the positive semidefinite check at [`tol::TOL_ORDER`].
pub fn check_positivity<R: Rng + ?Sized>(
    phi: &PositiveLinearMapSpec,
    trials: u32,
    rng: &mut R,
) -> bool {
    check_positivity_of(|x| phi.apply(x).expect("dimension fixed by in_dim"), phi.in_dim(), trials, rng)
}

/// Same sampling loop for an arbitrary transform; lets tests probe
/// deliberately corrupted maps that the spec enum cannot represent.
pub fn check_positivity_of<F, R>(transform: F, in_dim: usize, trials: u32, rng: &mut R) -> bool
where
    F: Fn(&SymMatrix) -> SymMatrix,
    R: Rng + ?Sized,
{
    for _ in 0..trials {
        let p = random_psd(in_dim, rng);
        let image = transform(&p);
        if !is_psd(&image) {
            return false;
        }
    }
    true
}

/// `GᵀG` for a standard-normal factor `G`; positive semidefinite by
/// construction.
pub fn random_psd<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> SymMatrix {
    let g = DMatrix::from_fn(dim, dim, |_, _| rng.sample::<f64, _>(StandardNormal));
    SymMatrix::symmetrized(g.transpose() * g)
}

fn is_psd(x: &SymMatrix) -> bool {
    let es = eigh(x).expect("finite symmetric input");
    let scale = es
        .eigenvalues()
        .iter()
        .fold(1.0_f64, |acc, &l| acc.max(l.abs()));
    es.eigenvalues()[0] >= -tol::TOL_ORDER * scale
}
