//! Sweep grid: one cell per (theorem, parameters, trial) tuple.
//!
//! Cells are never materialized as a list; the grid is a set of
//! rectangular blocks (one per theorem × dimension) and coordinates are
//! computed from a global index. Large sweeps therefore cost no memory
//! beyond the axis vectors.

use opmeans::functions::MonotoneClass;
use opmeans::inequalities::{SigmaReading, TheoremId};
use serde::Serialize;

use crate::config::Resolved;

/// Lists of matrix pairs in the summation chain.
pub const E18_LIST_LEN: usize = 3;

/// Coordinates of one evaluation cell. Unused axes stay `None` and are
/// omitted from the serialized params echo.
#[derive(Debug, Clone, Serialize)]
pub struct CellCoords {
    #[serde(skip)]
    pub theorem: TheoremId,
    pub dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upsilon: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub function: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub map: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reading: Option<SigmaReading>,
    pub trial: u32,
}

impl CellCoords {
    /// Canonical key hashed into the per-cell seed.
    pub fn seed_key(&self) -> String {
        let opt = |v: Option<f64>| v.map_or(String::new(), |x| format!("{x}"));
        let opts = |v: &Option<String>| v.clone().unwrap_or_default();
        format!(
            "{}|d{}|u{}|a{}|b{}|g{}|e{}|f{}|m{}|r{}|t{}",
            self.theorem,
            self.dim,
            opt(self.upsilon),
            opt(self.alpha),
            opt(self.beta),
            opt(self.gamma),
            opt(self.delta),
            opts(&self.function),
            opts(&self.map),
            self.reading.map_or(String::new(), |r| r.to_string()),
            self.trial
        )
    }
}

fn in_unit(v: f64) -> bool {
    (0.0..=1.0).contains(&v)
}

/// One rectangular product of axes; absent axes are a single `None`.
#[derive(Debug, Clone)]
struct Block {
    theorem: TheoremId,
    dim: usize,
    functions: Vec<Option<String>>,
    maps: Vec<Option<String>>,
    upsilons: Vec<Option<f64>>,
    alphas: Vec<Option<f64>>,
    betas: Vec<Option<f64>>,
    gammas: Vec<Option<f64>>,
    deltas: Vec<Option<f64>>,
    readings: Vec<Option<SigmaReading>>,
    trials: u32,
}

impl Block {
    fn count(&self) -> usize {
        self.functions.len()
            * self.maps.len()
            * self.upsilons.len()
            * self.alphas.len()
            * self.betas.len()
            * self.gammas.len()
            * self.deltas.len()
            * self.readings.len()
            * self.trials as usize
    }

    /// Mixed-radix unravel; trial is the innermost axis, then reading,
    /// δ, γ, β, α, υ, map, function.
    fn coords(&self, mut idx: usize) -> CellCoords {
        let trial = (idx % self.trials as usize) as u32;
        idx /= self.trials as usize;
        let reading = self.readings[idx % self.readings.len()];
        idx /= self.readings.len();
        let delta = self.deltas[idx % self.deltas.len()];
        idx /= self.deltas.len();
        let gamma = self.gammas[idx % self.gammas.len()];
        idx /= self.gammas.len();
        let beta = self.betas[idx % self.betas.len()];
        idx /= self.betas.len();
        let alpha = self.alphas[idx % self.alphas.len()];
        idx /= self.alphas.len();
        let upsilon = self.upsilons[idx % self.upsilons.len()];
        idx /= self.upsilons.len();
        let map = self.maps[idx % self.maps.len()].clone();
        idx /= self.maps.len();
        let function = self.functions[idx % self.functions.len()].clone();
        CellCoords {
            theorem: self.theorem,
            dim: self.dim,
            upsilon,
            alpha,
            beta,
            gamma,
            delta,
            function,
            map,
            reading,
            trial,
        }
    }
}

fn absent<T>() -> Vec<Option<T>> {
    vec![None]
}

fn axis_f(values: &[f64]) -> Vec<Option<f64>> {
    values.iter().map(|&v| Some(v)).collect()
}

fn axis_s(values: &[&String]) -> Vec<Option<String>> {
    values.iter().map(|v| Some((*v).clone())).collect()
}

/// The whole sweep, indexable by `0..len()`.
#[derive(Debug, Clone)]
pub struct Grid {
    blocks: Vec<Block>,
    offsets: Vec<usize>,
    total: usize,
}

impl Grid {
    pub fn build(resolved: &Resolved) -> Grid {
        let cfg = &resolved.cfg;
        let unit_alphas: Vec<f64> = cfg.alphas.iter().copied().filter(|&a| in_unit(a)).collect();
        let omd: Vec<&String> = resolved
            .functions
            .iter()
            .filter(|(_, f)| f.klass() == MonotoneClass::OmDecreasing)
            .map(|(t, _)| t)
            .collect();
        let omi: Vec<&String> = resolved
            .functions
            .iter()
            .filter(|(_, f)| f.klass() == MonotoneClass::OmIncreasing)
            .map(|(t, _)| t)
            .collect();
        let all_fns: Vec<&String> = resolved.functions.iter().map(|(t, _)| t).collect();

        let mut blocks = Vec::new();
        for &theorem in &cfg.theorems {
            for &dim in &cfg.dims {
                let maps: Vec<&String> =
                    resolved.maps_for(dim).iter().map(|(n, _)| n).collect();
                let base = Block {
                    theorem,
                    dim,
                    functions: absent(),
                    maps: absent(),
                    upsilons: absent(),
                    alphas: absent(),
                    betas: absent(),
                    gammas: absent(),
                    deltas: absent(),
                    readings: absent(),
                    trials: cfg.trials_per_cell,
                };
                let block = match theorem {
                    TheoremId::T21 => Block {
                        functions: axis_s(&omd),
                        alphas: axis_f(&unit_alphas),
                        betas: axis_f(&cfg.betas),
                        ..base
                    },
                    TheoremId::C22 => Block {
                        functions: axis_s(&omd),
                        ..base
                    },
                    TheoremId::R23 => Block {
                        functions: axis_s(&all_fns),
                        alphas: axis_f(&unit_alphas),
                        ..base
                    },
                    TheoremId::C24 => Block {
                        functions: axis_s(&omi),
                        alphas: axis_f(&unit_alphas),
                        betas: axis_f(&cfg.betas),
                        ..base
                    },
                    TheoremId::R25 => Block {
                        functions: axis_s(&omd),
                        upsilons: axis_f(&cfg.upsilons),
                        alphas: axis_f(&unit_alphas),
                        betas: axis_f(&cfg.betas),
                        readings: vec![
                            Some(SigmaReading::Weighted),
                            Some(SigmaReading::Symmetric),
                        ],
                        ..base
                    },
                    TheoremId::T25 | TheoremId::E18 => Block {
                        alphas: axis_f(&unit_alphas),
                        betas: axis_f(&cfg.betas),
                        ..base
                    },
                    TheoremId::C27 | TheoremId::R27 => Block {
                        alphas: axis_f(&cfg.alphas),
                        ..base
                    },
                    TheoremId::T31 => Block {
                        maps: axis_s(&maps),
                        alphas: axis_f(&unit_alphas),
                        betas: axis_f(&cfg.betas),
                        ..base
                    },
                    TheoremId::T32 => Block {
                        maps: axis_s(&maps),
                        upsilons: axis_f(&cfg.upsilons),
                        alphas: axis_f(&unit_alphas),
                        betas: axis_f(&cfg.betas),
                        ..base
                    },
                    TheoremId::R33 => Block {
                        maps: axis_s(&maps),
                        upsilons: axis_f(&cfg.upsilons),
                        alphas: axis_f(&unit_alphas),
                        betas: axis_f(&cfg.betas),
                        gammas: axis_f(&cfg.gammas),
                        deltas: axis_f(&cfg.deltas),
                        ..base
                    },
                };
                if block.count() > 0 {
                    blocks.push(block);
                }
            }
        }
        let mut offsets = Vec::with_capacity(blocks.len());
        let mut total = 0;
        for b in &blocks {
            offsets.push(total);
            total += b.count();
        }
        Grid {
            blocks,
            offsets,
            total,
        }
    }

    pub fn len(&self) -> usize {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    pub fn coords(&self, index: usize) -> CellCoords {
        debug_assert!(index < self.total);
        let block_idx = match self.offsets.binary_search(&index) {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        self.blocks[block_idx].coords(index - self.offsets[block_idx])
    }
}

/// Which links of the evaluated chain must hold for the cell to pass.
///
/// * R23 cells are recorded-only (the chain is a converse probe).
/// * R25's σ link: expected under the weighted reading; under the
///   symmetric reading only at α = 1/2 where the readings coincide.
/// * C27's second link and R27's upper links are only claimed on
///   α ∈ [0,1].
pub fn expected_links(coords: &CellCoords, n_links: usize) -> Vec<bool> {
    match coords.theorem {
        TheoremId::R23 => vec![false; n_links],
        TheoremId::R25 => {
            let sigma_expected = match coords.reading {
                Some(SigmaReading::Weighted) => true,
                Some(SigmaReading::Symmetric) => coords.alpha == Some(0.5),
                None => false,
            };
            let mut v = vec![true; n_links];
            if let Some(last) = v.last_mut() {
                *last = sigma_expected;
            }
            v
        }
        TheoremId::C27 => {
            let in01 = coords.alpha.is_some_and(in_unit);
            vec![true, in01]
        }
        TheoremId::R27 => {
            let in01 = coords.alpha.is_some_and(in_unit);
            vec![true, in01, true, in01]
        }
        _ => vec![true; n_links],
    }
}
