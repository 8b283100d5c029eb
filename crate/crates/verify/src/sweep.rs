//! Cell evaluation and the sweep engine.

use opmeans::inequalities::{
    c22_chain, c24_chain, c27_triangle, e18_sums, r25_harmonic_chain, r27_reverse_triangle,
    r33_general, t21_chain, t21_chain_bypass, t25_amgh_chain, t31_ando, TheoremId,
};
use opmeans::loewner::OrderVerdict;
use opmeans::{ChainReport, PathSpec, SymMatrix, UnrestrictedWeight, Weight};
use serde::Serialize;

use crate::config::{Resolved, StorePolicy};
use crate::gen::{cell_rng, gen_posdef, gen_sym};
use crate::grid::{expected_links, CellCoords, Grid, E18_LIST_LEN};
use crate::{HarnessError, Result};

/// Chains materialize their terms in the report up to this dimension.
pub const TERMS_DIM_LIMIT: usize = 8;

/// One evaluated cell as it appears in the report.
#[derive(Debug, Clone, Serialize)]
pub struct CellRecord {
    pub index: usize,
    pub theorem_id: TheoremId,
    pub params: CellCoords,
    pub links: Vec<OrderVerdict>,
    pub all_hold: bool,
    /// Which links the theorem claims (same length as `links`).
    pub expected: Vec<bool>,
    /// True iff every expected link holds.
    pub pass: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub terms: Vec<SymMatrix>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    /// Minimum normalized gap over expected links, across all cells.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weakest_gap: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weakest_cell: Option<CellCoords>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub config: crate::config::HarnessConfig,
    pub summary: Summary,
    pub cells: Vec<CellRecord>,
}

fn weight(v: Option<f64>, name: &str) -> Result<Weight> {
    let v = v.ok_or_else(|| HarnessError::Config(format!("missing {name}")))?;
    Weight::new(v).map_err(HarnessError::Core)
}

/// Evaluates one cell with its derived RNG.
pub fn evaluate_cell(resolved: &Resolved, index: usize, coords: &CellCoords) -> Result<CellRecord> {
    let cfg = &resolved.cfg;
    let mut rng = cell_rng(cfg.seed, &coords.seed_key());
    let dim = coords.dim;
    let range = cfg.eig_range;

    let lookup_fn = |token: &Option<String>| -> Result<opmeans::functions::ScalarFunctionSpec> {
        let token = token
            .as_deref()
            .ok_or_else(|| HarnessError::Config("cell missing function".into()))?;
        resolved
            .function(token)
            .cloned()
            .ok_or_else(|| HarnessError::Config(format!("unresolved function `{token}`")))
    };
    let lookup_map = |token: &Option<String>| -> Result<opmeans::maps::PositiveLinearMapSpec> {
        let token = token
            .as_deref()
            .ok_or_else(|| HarnessError::Config("cell missing map".into()))?;
        resolved
            .map(dim, token)
            .cloned()
            .ok_or_else(|| HarnessError::Config(format!("unresolved map `{token}`")))
    };

    let report: ChainReport = match coords.theorem {
        TheoremId::T21 => {
            let f = lookup_fn(&coords.function)?;
            let a = gen_posdef(dim, range, &mut rng);
            let b = gen_posdef(dim, range, &mut rng);
            t21_chain(
                &f,
                &a,
                &b,
                weight(coords.alpha, "alpha")?,
                weight(coords.beta, "beta")?,
            )?
        }
        TheoremId::C22 => {
            let f = lookup_fn(&coords.function)?;
            let a = gen_posdef(dim, range, &mut rng);
            let b = gen_posdef(dim, range, &mut rng);
            c22_chain(&f, &a, &b)?
        }
        TheoremId::R23 => {
            let f = lookup_fn(&coords.function)?;
            let a = gen_posdef(dim, range, &mut rng);
            let b = gen_posdef(dim, range, &mut rng);
            t21_chain_bypass(&f, &a, &b, weight(coords.alpha, "alpha")?, Weight::ONE)?
        }
        TheoremId::C24 => {
            let g = lookup_fn(&coords.function)?;
            let a = gen_posdef(dim, range, &mut rng);
            let b = gen_posdef(dim, range, &mut rng);
            c24_chain(
                &g,
                &a,
                &b,
                weight(coords.alpha, "alpha")?,
                weight(coords.beta, "beta")?,
            )?
        }
        TheoremId::R25 => {
            let f = lookup_fn(&coords.function)?;
            let a = gen_posdef(dim, range, &mut rng);
            let b = gen_posdef(dim, range, &mut rng);
            let sigma = PathSpec::new(
                coords
                    .upsilon
                    .ok_or_else(|| HarnessError::Config("cell missing upsilon".into()))?,
            )
            .map_err(HarnessError::Core)?;
            let reading = coords
                .reading
                .ok_or_else(|| HarnessError::Config("cell missing reading".into()))?;
            r25_harmonic_chain(
                &f,
                &a,
                &b,
                weight(coords.alpha, "alpha")?,
                weight(coords.beta, "beta")?,
                sigma,
                reading,
            )?
        }
        TheoremId::T25 => {
            let a = gen_posdef(dim, range, &mut rng);
            let b = gen_posdef(dim, range, &mut rng);
            t25_amgh_chain(
                &a,
                &b,
                weight(coords.alpha, "alpha")?,
                weight(coords.beta, "beta")?,
            )?
        }
        TheoremId::C27 => {
            let a = gen_sym(dim, &mut rng);
            let b = gen_sym(dim, &mut rng);
            let alpha = UnrestrictedWeight::new(
                coords
                    .alpha
                    .ok_or_else(|| HarnessError::Config("cell missing alpha".into()))?,
            )
            .map_err(HarnessError::Core)?;
            c27_triangle(&a, &b, alpha)?
        }
        TheoremId::R27 => {
            let a = gen_sym(dim, &mut rng);
            let b = gen_sym(dim, &mut rng);
            let alpha = UnrestrictedWeight::new(
                coords
                    .alpha
                    .ok_or_else(|| HarnessError::Config("cell missing alpha".into()))?,
            )
            .map_err(HarnessError::Core)?;
            r27_reverse_triangle(&a, &b, alpha)?
        }
        TheoremId::T31 => {
            let phi = lookup_map(&coords.map)?;
            let a = gen_posdef(dim, range, &mut rng);
            let b = gen_posdef(dim, range, &mut rng);
            t31_ando(
                &phi,
                &a,
                &b,
                weight(coords.alpha, "alpha")?,
                weight(coords.beta, "beta")?,
            )?
        }
        TheoremId::E18 => {
            let a_list: Vec<_> = (0..E18_LIST_LEN)
                .map(|_| gen_posdef(dim, range, &mut rng))
                .collect();
            let b_list: Vec<_> = (0..E18_LIST_LEN)
                .map(|_| gen_posdef(dim, range, &mut rng))
                .collect();
            e18_sums(
                &a_list,
                &b_list,
                weight(coords.alpha, "alpha")?,
                weight(coords.beta, "beta")?,
            )?
        }
        TheoremId::T32 | TheoremId::R33 => {
            let phi = lookup_map(&coords.map)?;
            let a = gen_posdef(dim, range, &mut rng);
            let b = gen_posdef(dim, range, &mut rng);
            let path = PathSpec::new(
                coords
                    .upsilon
                    .ok_or_else(|| HarnessError::Config("cell missing upsilon".into()))?,
            )
            .map_err(HarnessError::Core)?;
            let alpha = weight(coords.alpha, "alpha")?;
            let beta = weight(coords.beta, "beta")?;
            let (gamma, delta) = if coords.theorem == TheoremId::T32 {
                (Weight::ZERO, Weight::ONE)
            } else {
                (weight(coords.gamma, "gamma")?, weight(coords.delta, "delta")?)
            };
            r33_general(&phi, &a, &b, path, alpha, beta, gamma, delta)?
        }
    };

    let expected = expected_links(coords, report.links.len());
    let pass = report
        .links
        .iter()
        .zip(&expected)
        .all(|(link, &exp)| !exp || link.holds);
    let terms = if dim <= TERMS_DIM_LIMIT {
        report.terms
    } else {
        Vec::new()
    };
    Ok(CellRecord {
        index,
        theorem_id: coords.theorem,
        params: coords.clone(),
        links: report.links,
        all_hold: report.all_hold,
        expected,
        pass,
        terms,
    })
}

/// Minimum normalized gap over the expected links of a record.
fn weakest_expected(record: &CellRecord) -> Option<f64> {
    record
        .links
        .iter()
        .zip(&record.expected)
        .filter(|(_, &exp)| exp)
        .map(|(l, _)| l.normalized_gap())
        .fold(None, |acc, g| Some(acc.map_or(g, |a: f64| a.min(g))))
}

/// Order-independent accumulator: counts, the weakest expected gap with
/// its cell (ties broken by lowest index), and retained records (sorted
/// by index at the end). Merging in any chunk order yields the same
/// result, which is what makes the parallel sweep deterministic.
#[derive(Default)]
struct Acc {
    total: usize,
    passed: usize,
    weakest: Option<(f64, usize, CellCoords)>,
    records: Vec<CellRecord>,
}

impl Acc {
    fn absorb(&mut self, index: usize, coords: &CellCoords, record: CellRecord, keep: bool) {
        self.total += 1;
        if record.pass {
            self.passed += 1;
        }
        if let Some(g) = weakest_expected(&record) {
            let candidate = (g, index);
            let better = match &self.weakest {
                None => true,
                Some((wg, wi, _)) => candidate < (*wg, *wi),
            };
            if better {
                self.weakest = Some((g, index, coords.clone()));
            }
        }
        if keep {
            self.records.push(record);
        }
    }

    fn merge(mut self, other: Acc) -> Acc {
        self.total += other.total;
        self.passed += other.passed;
        self.weakest = match (self.weakest.take(), other.weakest) {
            (None, w) | (w, None) => w,
            (Some(a), Some(b)) => Some(if (a.0, a.1) <= (b.0, b.1) { a } else { b }),
        };
        self.records.extend(other.records);
        self
    }
}

#[cfg(feature = "parallel")]
fn sweep_acc(resolved: &Resolved, grid: &Grid) -> Result<Acc> {
    use rayon::prelude::*;
    (0..grid.len())
        .into_par_iter()
        .try_fold(Acc::default, |mut acc, i| {
            let coords = grid.coords(i);
            let record = evaluate_cell(resolved, i, &coords)?;
            let keep = match resolved.cfg.store {
                StorePolicy::All => true,
                StorePolicy::Violations => !record.pass,
            };
            acc.absorb(i, &coords, record, keep);
            Ok(acc)
        })
        .try_reduce(Acc::default, |a, b| Ok(a.merge(b)))
}

#[cfg(not(feature = "parallel"))]
fn sweep_acc(resolved: &Resolved, grid: &Grid) -> Result<Acc> {
    sweep_acc_serial(resolved, grid)
}

fn sweep_acc_serial(resolved: &Resolved, grid: &Grid) -> Result<Acc> {
    let mut acc = Acc::default();
    for i in 0..grid.len() {
        let coords = grid.coords(i);
        let record = evaluate_cell(resolved, i, &coords)?;
        let keep = match resolved.cfg.store {
            StorePolicy::All => true,
            StorePolicy::Violations => !record.pass,
        };
        acc.absorb(i, &coords, record, keep);
    }
    Ok(acc)
}

fn into_report(resolved: &Resolved, mut acc: Acc) -> RunReport {
    acc.records.sort_by_key(|r| r.index);
    let (weakest_gap, weakest_cell) = match acc.weakest {
        Some((g, _, coords)) => (Some(g), Some(coords)),
        None => (None, None),
    };
    RunReport {
        config: resolved.cfg.clone(),
        summary: Summary {
            total: acc.total,
            passed: acc.passed,
            failed: acc.total - acc.passed,
            weakest_gap,
            weakest_cell,
        },
        cells: acc.records,
    }
}

/// Always-sequential evaluation; the benchmark baseline.
pub fn run_serial(resolved: &Resolved) -> Result<RunReport> {
    let grid = Grid::build(resolved);
    Ok(into_report(resolved, sweep_acc_serial(resolved, &grid)?))
}

/// Evaluates the whole grid; parallel over cells when the `parallel`
/// feature is enabled. Output is independent of worker count.
pub fn run(resolved: &Resolved) -> Result<RunReport> {
    let grid = Grid::build(resolved);
    Ok(into_report(resolved, sweep_acc(resolved, &grid)?))
}
