//! Harness configuration: grids, spec-string resolution, default map set.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use opmeans::functions::ScalarFunctionSpec;
use opmeans::inequalities::TheoremId;
use opmeans::maps::PositiveLinearMapSpec;
use opmeans::{Error as CoreError, PosDefMatrix, SymMatrix};
use serde::{Deserialize, Serialize};

use crate::{HarnessError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Csv,
}

/// What the run keeps per cell: everything, or only violating cells
/// (summary counts always cover every cell).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StorePolicy {
    All,
    Violations,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HarnessConfig {
    pub theorems: Vec<TheoremId>,
    pub dims: Vec<usize>,
    pub alphas: Vec<f64>,
    pub betas: Vec<f64>,
    pub gammas: Vec<f64>,
    pub deltas: Vec<f64>,
    pub upsilons: Vec<f64>,
    /// Scalar-function spec strings, e.g. `neg_power:0.5`.
    pub functions: Vec<String>,
    /// Positive-map spec strings; empty means the default unital set.
    pub maps: Vec<String>,
    pub trials_per_cell: u32,
    pub seed: u64,
    pub eig_range: (f64, f64),
    pub store: StorePolicy,
    /// Where the report goes; `None` keeps it in memory.
    pub output_path: Option<PathBuf>,
    pub format: Format,
}

impl Default for HarnessConfig {
    /// The standard grid: dims {1,2,3,5,8}, five-point weight grids,
    /// υ ∈ {-1,0,1}, the catalog functions, 100 trials per cell.
    fn default() -> Self {
        HarnessConfig {
            theorems: Vec::new(),
            dims: vec![1, 2, 3, 5, 8],
            alphas: vec![0.0, 0.25, 0.5, 0.75, 1.0],
            betas: vec![0.0, 0.25, 0.5, 0.75, 1.0],
            gammas: vec![0.0, 0.25, 0.5, 0.75, 1.0],
            deltas: vec![0.0, 0.25, 0.5, 0.75, 1.0],
            upsilons: vec![-1.0, 0.0, 1.0],
            functions: vec![
                "neg_power:0.25".into(),
                "neg_power:0.5".into(),
                "neg_power:1".into(),
                "shifted_inverse:1:1".into(),
                "power:0.5".into(),
                "power:1".into(),
                "log1p".into(),
            ],
            maps: Vec::new(),
            trials_per_cell: 100,
            seed: 42,
            eig_range: (0.1, 10.0),
            store: StorePolicy::All,
            output_path: None,
            format: Format::Json,
        }
    }
}

impl HarnessConfig {
    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = self.eig_range;
        if !(lo > 0.0 && lo < hi && hi.is_finite()) {
            return Err(HarnessError::Config(format!(
                "eig_range must satisfy 0 < lo < hi, got ({lo}, {hi})"
            )));
        }
        if self.dims.iter().any(|&d| d == 0 || d > 64) {
            return Err(HarnessError::Config(
                "dims must lie in 1..=64".to_string(),
            ));
        }
        if self.trials_per_cell == 0 {
            return Err(HarnessError::Config(
                "trials_per_cell must be >= 1".to_string(),
            ));
        }
        for u in &self.upsilons {
            if !(-1.0..=1.0).contains(u) {
                return Err(HarnessError::Config(format!(
                    "upsilon {u} outside [-1,1]"
                )));
            }
        }
        for w in self
            .betas
            .iter()
            .chain(&self.gammas)
            .chain(&self.deltas)
        {
            if !(0.0..=1.0).contains(w) {
                return Err(HarnessError::Config(format!("weight {w} outside [0,1]")));
            }
        }
        // alphas may leave [0,1]: the triangle chains take any real.
        if self.alphas.iter().any(|a| !a.is_finite()) {
            return Err(HarnessError::Config("alphas must be finite".to_string()));
        }
        Ok(())
    }

    /// Parses every spec string (loading any referenced matrix files
    /// relative to `base_dir`) into a ready-to-sweep form.
    pub fn resolve(&self, base_dir: &Path) -> Result<Resolved> {
        self.validate()?;
        let mut functions = Vec::new();
        for s in &self.functions {
            let f: ScalarFunctionSpec = s.parse().map_err(HarnessError::Core)?;
            functions.push((s.clone(), f));
        }

        let mut maps_by_dim: BTreeMap<usize, Vec<(String, PositiveLinearMapSpec)>> =
            BTreeMap::new();
        if self.maps.is_empty() {
            for &dim in &self.dims {
                maps_by_dim.insert(dim, default_unital_maps(dim));
            }
        } else {
            for token in &self.maps {
                let spec = parse_map_spec(token, base_dir)?;
                maps_by_dim
                    .entry(spec.in_dim())
                    .or_default()
                    .push((token.clone(), spec));
            }
        }

        Ok(Resolved {
            cfg: self.clone(),
            functions,
            maps_by_dim,
        })
    }
}

/// A validated configuration with parsed functions and maps.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub cfg: HarnessConfig,
    /// (original token, parsed spec)
    pub functions: Vec<(String, ScalarFunctionSpec)>,
    /// Maps grouped by their input dimension.
    pub maps_by_dim: BTreeMap<usize, Vec<(String, PositiveLinearMapSpec)>>,
}

impl Resolved {
    pub fn maps_for(&self, dim: usize) -> &[(String, PositiveLinearMapSpec)] {
        self.maps_by_dim.get(&dim).map_or(&[], Vec::as_slice)
    }

    pub fn function(&self, token: &str) -> Option<&ScalarFunctionSpec> {
        self.functions
            .iter()
            .find(|(t, _)| t == token)
            .map(|(_, f)| f)
    }

    pub fn map(&self, dim: usize, token: &str) -> Option<&PositiveLinearMapSpec> {
        self.maps_for(dim)
            .iter()
            .find(|(t, _)| t == token)
            .map(|(_, m)| m)
    }
}

/// The default unital / scaled-unital map set for one dimension:
/// identity compression, singleton pinching, a {1, d-1} pinching, the
/// two-block sum when the dimension is even, and the identity-weight
/// trace functional.
pub fn default_unital_maps(dim: usize) -> Vec<(String, PositiveLinearMapSpec)> {
    let mut out = vec![(
        "compression:identity".to_string(),
        PositiveLinearMapSpec::identity_compression(dim),
    )];
    let singletons = vec![1usize; dim];
    let name = format!(
        "pinching:{}",
        singletons
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join(",")
    );
    out.push((
        name,
        PositiveLinearMapSpec::pinching(singletons).expect("valid partition"),
    ));
    // At dim 2 the {1, d-1} pinching coincides with the singleton one.
    if dim >= 3 {
        out.push((
            format!("pinching:1,{}", dim - 1),
            PositiveLinearMapSpec::pinching(vec![1, dim - 1]).expect("valid partition"),
        ));
    }
    if dim >= 2 {
        if dim % 2 == 0 {
            out.push((
                format!("block_sum:2x{}", dim / 2),
                PositiveLinearMapSpec::block_sum(2, dim / 2).expect("valid block shape"),
            ));
        }
    }
    out.push((
        "weighted_trace:identity".to_string(),
        PositiveLinearMapSpec::weighted_trace(PosDefMatrix::identity(dim)),
    ));
    out
}

fn spec_err(spec: &str, segment: usize, reason: impl Into<String>) -> HarnessError {
    HarnessError::Core(CoreError::SpecParse {
        spec: spec.to_string(),
        segment,
        reason: reason.into(),
    })
}

/// Parses a positive-map spec string:
/// `pinching:1,1` (block sizes), `block_sum:2x3`,
/// `compression:<file.json>`, `weighted_trace:<file.json>`.
///
/// A compression file holds the factor as `{"rows": [[...], ...]}`
/// (rectangular, n×k); a weighted-trace file holds the symmetric matrix
/// literal `{"dim": n, "rows": [[...], ...]}`.
pub fn parse_map_spec(token: &str, base_dir: &Path) -> Result<PositiveLinearMapSpec> {
    let (head, rest) = match token.split_once(':') {
        Some((h, r)) => (h, Some(r)),
        None => (token, None),
    };
    match head {
        "pinching" => {
            let body = rest.ok_or_else(|| spec_err(token, 1, "missing block sizes"))?;
            let mut sizes = Vec::new();
            for (i, part) in body.split(',').enumerate() {
                let s: usize = part.parse().map_err(|e| {
                    spec_err(token, i + 1, format!("invalid block size `{part}`: {e}"))
                })?;
                sizes.push(s);
            }
            PositiveLinearMapSpec::pinching(sizes).map_err(HarnessError::Core)
        }
        "block_sum" => {
            let body = rest.ok_or_else(|| spec_err(token, 1, "missing NxK shape"))?;
            let (n, k) = body
                .split_once('x')
                .ok_or_else(|| spec_err(token, 1, "expected N x K, e.g. block_sum:2x3"))?;
            let n: usize = n
                .parse()
                .map_err(|e| spec_err(token, 1, format!("invalid block count `{n}`: {e}")))?;
            let k: usize = k
                .parse()
                .map_err(|e| spec_err(token, 1, format!("invalid block dim `{k}`: {e}")))?;
            PositiveLinearMapSpec::block_sum(n, k).map_err(HarnessError::Core)
        }
        "compression" => {
            let file = rest.ok_or_else(|| spec_err(token, 1, "missing factor file"))?;
            let path = base_dir.join(file);
            let text = std::fs::read_to_string(&path)
                .map_err(|source| HarnessError::Io { path, source })?;
            let v = parse_factor_json(token, &text)?;
            PositiveLinearMapSpec::compression(v).map_err(HarnessError::Core)
        }
        "weighted_trace" => {
            let file = rest.ok_or_else(|| spec_err(token, 1, "missing weight file"))?;
            let path = base_dir.join(file);
            let text = std::fs::read_to_string(&path)
                .map_err(|source| HarnessError::Io { path, source })?;
            let sym = SymMatrix::from_json_str(&text).map_err(HarnessError::Core)?;
            let w = PosDefMatrix::new(sym).map_err(HarnessError::Core)?;
            Ok(PositiveLinearMapSpec::weighted_trace(w))
        }
        other => Err(spec_err(token, 0, format!("unknown map kind `{other}`"))),
    }
}

#[derive(Deserialize)]
struct FactorFile {
    rows: Vec<Vec<f64>>,
}

fn parse_factor_json(token: &str, text: &str) -> Result<nalgebra::DMatrix<f64>> {
    let parsed: FactorFile = serde_json::from_str(text)
        .map_err(|e| spec_err(token, 1, format!("invalid factor JSON: {e}")))?;
    let n = parsed.rows.len();
    let k = parsed.rows.first().map_or(0, Vec::len);
    if n == 0 || k == 0 || parsed.rows.iter().any(|r| r.len() != k) {
        return Err(spec_err(token, 1, "factor rows must be non-empty and rectangular"));
    }
    Ok(nalgebra::DMatrix::from_fn(n, k, |i, j| parsed.rows[i][j]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_valid() {
        HarnessConfig::default().validate().unwrap();
    }

    #[test]
    fn eig_range_validation() {
        let mut cfg = HarnessConfig::default();
        cfg.eig_range = (0.0, 1.0);
        assert!(cfg.validate().is_err());
        cfg.eig_range = (2.0, 1.0);
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn map_spec_parsing() {
        let base = Path::new(".");
        let p = parse_map_spec("pinching:1,2", base).unwrap();
        assert_eq!(p.in_dim(), 3);
        let b = parse_map_spec("block_sum:2x3", base).unwrap();
        assert_eq!(b.in_dim(), 6);
        assert_eq!(b.out_dim(), 3);
        assert!(parse_map_spec("pinching:0,1", base).is_err());
        assert!(parse_map_spec("block_sum:23", base).is_err());
        assert!(parse_map_spec("nonsense:1", base).is_err());
    }

    #[test]
    fn map_files_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(
            dir.path().join("v.json"),
            r#"{"rows":[[1.0,0.0],[0.0,1.0],[0.0,0.0]]}"#,
        )
        .unwrap();
        let c = parse_map_spec("compression:v.json", dir.path()).unwrap();
        assert_eq!(c.in_dim(), 3);
        assert_eq!(c.out_dim(), 2);

        std::fs::write(
            dir.path().join("w.json"),
            r#"{"dim":2,"rows":[[2.0,0.0],[0.0,1.0]]}"#,
        )
        .unwrap();
        let w = parse_map_spec("weighted_trace:w.json", dir.path()).unwrap();
        assert_eq!(w.in_dim(), 2);
        assert_eq!(w.out_dim(), 1);

        assert!(parse_map_spec("compression:missing.json", dir.path()).is_err());
    }

    #[test]
    fn default_map_set_shapes() {
        let maps = default_unital_maps(4);
        let names: Vec<&str> = maps.iter().map(|(n, _)| n.as_str()).collect();
        assert!(names.contains(&"compression:identity"));
        assert!(names.contains(&"pinching:1,1,1,1"));
        assert!(names.contains(&"pinching:1,3"));
        assert!(names.contains(&"block_sum:2x2"));
        assert!(names.contains(&"weighted_trace:identity"));
        for (_, m) in &maps {
            assert_eq!(m.in_dim(), 4);
        }
        // Odd dimension drops the block sum.
        assert!(!default_unital_maps(3)
            .iter()
            .any(|(n, _)| n.starts_with("block_sum")));
    }
}
