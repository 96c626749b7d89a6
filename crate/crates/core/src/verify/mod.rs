//! Batch verification: every identity and inequality in the calculus, run
//! as seeded Monte-Carlo or exhaustive sweeps, reported per suite.

mod suites;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::{Error, Result};

/// Sweep configuration. Defaults satisfy every acceptance criterion.
#[derive(Debug, Clone)]
pub struct RunConfig {
    /// Headline tolerance for identity residuals.
    pub tolerance: f64,
    /// Samples per cell for identity sweeps.
    pub samples_identity: usize,
    /// Samples per cell for inequality sweeps.
    pub samples_inequality: usize,
    pub seed: u64,
    /// Complex dimension cap for Kaehler sweeps.
    pub n_max: usize,
    /// Real dimension cap for Riemannian sweeps.
    pub d_max: usize,
    /// Bundle rank cap.
    pub r_max: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            tolerance: 1e-9,
            samples_identity: 1000,
            samples_inequality: 10_000,
            seed: 42,
            n_max: 4,
            d_max: 5,
            r_max: 2,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0 && self.tolerance < 1e-3) {
            return Err(Error::OutOfRange(
                "tolerance must lie in (0, 1e-3)".into(),
            ));
        }
        if self.n_max == 0 || self.d_max == 0 || self.r_max == 0 {
            return Err(Error::OutOfRange("dimension caps must be positive".into()));
        }
        if self.samples_identity == 0 || self.samples_inequality == 0 {
            return Err(Error::OutOfRange("sample counts must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One suite outcome; `status` is pass exactly when no violations occurred
/// and the worst residual stays below the suite tolerance.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub params: Map<String, Value>,
    pub samples: u64,
    pub seed: u64,
    pub max_residual: f64,
    pub violations: u64,
    pub status: Status,
    pub runtime_ms: u64,
}

impl VerificationReport {
    fn new(
        suite: &str,
        params: Map<String, Value>,
        samples: u64,
        seed: u64,
        max_residual: f64,
        violations: u64,
        tolerance: f64,
        runtime_ms: u64,
    ) -> Self {
        let status = if violations == 0 && max_residual < tolerance {
            Status::Pass
        } else {
            Status::Fail
        };
        VerificationReport {
            suite: suite.to_string(),
            params,
            samples,
            seed,
            max_residual,
            violations,
            status,
            runtime_ms,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Accumulator shared by the sweeps: worst residual (pre-normalized by the
/// binding tolerance ratio where suites mix tolerances) and violation count.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Tally {
    pub max_residual: f64,
    pub violations: u64,
    pub samples: u64,
}

impl Tally {
    pub fn observe(&mut self, residual: f64, tolerance: f64) {
        self.samples += 1;
        self.max_residual = self.max_residual.max(residual);
        if !(residual < tolerance) {
            self.violations += 1;
        }
    }

    pub fn merge(mut self, other: Tally) -> Tally {
        self.max_residual = self.max_residual.max(other.max_residual);
        self.violations += other.violations;
        self.samples += other.samples;
        self
    }
}

/// Suite names in their deterministic execution and report order.
pub const SUITE_NAMES: &[&str] = &[
    "fs-golden",
    "hyperquadric",
    "bochner-kodaira",
    "norm-identities",
    "t-bound",
    "lefschetz",
    "subspace-norms",
    "riemannian",
    "kaehler-weitzenboeck",
    "combinatorics",
    "predictor-golden",
    "predictor-cross",
];

/// Run one suite by name.
pub fn run_suite(name: &str, config: &RunConfig) -> Result<VerificationReport> {
    config.validate()?;
    let start = std::time::Instant::now();
    let (params, samples, max_residual, violations, tolerance) = match name {
        "fs-golden" => suites::fs_golden(config)?,
        "hyperquadric" => suites::hyperquadric(config)?,
        "bochner-kodaira" => suites::bochner_kodaira(config)?,
        "norm-identities" => suites::norm_identities(config)?,
        "t-bound" => suites::t_bound(config)?,
        "lefschetz" => suites::lefschetz_suite(config)?,
        "subspace-norms" => suites::subspace_norms(config)?,
        "riemannian" => suites::riemannian_suite(config)?,
        "kaehler-weitzenboeck" => suites::kaehler_weitzenboeck(config)?,
        "combinatorics" => suites::combinatorics(config)?,
        "predictor-golden" => suites::predictor_golden(config)?,
        "predictor-cross" => suites::predictor_cross(config)?,
        other => return Err(Error::UnknownSuite(other.to_string())),
    };
    let runtime_ms = start.elapsed().as_millis() as u64;
    Ok(VerificationReport::new(
        name,
        params,
        samples,
        config.seed,
        max_residual,
        violations,
        tolerance,
        runtime_ms,
    ))
}

/// Run the named suites (or all, for an empty filter). Suites execute on
/// parallel workers; reports come back in registry order regardless of
/// completion order.
pub fn run_suites(filter: &[String], config: &RunConfig) -> Result<Vec<VerificationReport>> {
    use rayon::prelude::*;
    let selected: Vec<&str> = if filter.is_empty() {
        SUITE_NAMES.to_vec()
    } else {
        let mut out = Vec::new();
        for name in filter {
            if !SUITE_NAMES.contains(&name.as_str()) {
                return Err(Error::UnknownSuite(name.clone()));
            }
        }
        for &name in SUITE_NAMES {
            if filter.iter().any(|f| f == name) {
                out.push(name);
            }
        }
        out
    };
    selected
        .par_iter()
        .map(|&s| run_suite(s, config))
        .collect()
}

pub(crate) fn params_object(pairs: &[(&str, Value)]) -> Map<String, Value> {
    let mut map = Map::new();
    for (k, v) in pairs {
        map.insert((*k).to_string(), v.clone());
    }
    map
}

pub(crate) use serde_json::json as json_value;
