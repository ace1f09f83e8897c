//! Experiment runner: each experiment kind sits behind the [`Experiment`]
//! trait, registered by name and selected at runtime from a config or a CLI
//! subcommand. Reports are deterministic: fixed row order, fixed float
//! formatting, and seeded randomness only.

mod atomic_reconstruction;
mod boundary_limit;
mod duality_constancy;
mod gamma_identity;
mod positive_equivalence;
mod projector_threshold;
mod section7;
mod transference;

use crate::cone::ConeSpec;
use crate::domain::DomainSpec;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// One row of an experiment matrix.
#[derive(Debug, Clone, Serialize, Deserialize, Default)]
pub struct CaseConfig {
    #[serde(default)]
    pub p: Option<f64>,
    #[serde(default)]
    pub q: Option<f64>,
    #[serde(default)]
    pub s: Option<Vec<f64>>,
    #[serde(default)]
    pub s_tilde: Option<f64>,
    #[serde(default)]
    pub s_prime: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, Default)]
pub struct GridConfig {
    #[serde(default)]
    pub resolution: Option<usize>,
    #[serde(default)]
    pub x_extent: Option<f64>,
    #[serde(default)]
    pub zeta_extent: Option<f64>,
    #[serde(default)]
    pub truncations: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, Default)]
pub struct PartitionConfig {
    #[serde(default)]
    pub delta: Option<f64>,
    #[serde(default)]
    pub overlap: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize, Default)]
pub struct BesovConfig {
    #[serde(default)]
    pub p: Option<f64>,
    #[serde(default)]
    pub q: Option<f64>,
    #[serde(default)]
    pub s: Option<Vec<f64>>,
}

/// One schema across experiment kinds; unknown keys are rejected so config
/// mistakes fail loudly with the offending key named.
#[derive(Debug, Clone, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub kind: String,
    #[serde(default)]
    pub cone: Option<ConeSpec>,
    #[serde(default)]
    pub domain: Option<DomainSpec>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub samples: Option<usize>,
    #[serde(default)]
    pub cases: Vec<CaseConfig>,
    #[serde(default)]
    pub truncations: Option<Vec<f64>>,
    #[serde(default)]
    pub deltas: Option<Vec<f64>>,
    #[serde(default)]
    pub ys: Option<Vec<f64>>,
    #[serde(default)]
    pub grid: Option<GridConfig>,
    #[serde(default)]
    pub partition: Option<PartitionConfig>,
    #[serde(default)]
    pub besov: Option<BesovConfig>,
}

impl ExperimentConfig {
    pub fn for_kind(kind: &str) -> Self {
        ExperimentConfig {
            kind: kind.to_string(),
            ..Default::default()
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig =
            serde_json::from_str(text).map_err(|e| Error::config(e.to_string()))?;
        if cfg.kind.is_empty() {
            return Err(Error::config("kind: missing experiment kind"));
        }
        Ok(cfg)
    }

    /// Monte-Carlo kinds refuse to run without a seed (reproducibility).
    pub fn require_seed(&self) -> Result<u64> {
        self.seed
            .ok_or_else(|| Error::config("seed: required for Monte-Carlo experiment kinds"))
    }
}

/// Execution context shared by all kinds.
#[derive(Debug, Clone)]
pub struct RunContext {
    pub seed: u64,
    pub tolerance_scale: f64,
}

impl Default for RunContext {
    fn default() -> Self {
        RunContext {
            seed: 7,
            tolerance_scale: 1.0,
        }
    }
}

/// One report row: a named check with its measured value and threshold.
#[derive(Debug, Clone, Serialize)]
pub struct CaseRow {
    pub case: String,
    /// Stable property slug the row verifies (traceability across reports).
    pub property: String,
    pub detail: String,
    pub value: f64,
    pub threshold: f64,
    pub pass: bool,
}

impl CaseRow {
    pub fn new(
        case: impl Into<String>,
        property: impl Into<String>,
        detail: impl Into<String>,
        value: f64,
        threshold: f64,
        pass: bool,
    ) -> Self {
        // keep the CSV structure intact: no commas inside fields
        let clean = |t: String| t.replace(", ", "; ").replace(',', ";");
        CaseRow {
            case: clean(case.into()),
            property: clean(property.into()),
            detail: clean(detail.into()),
            value,
            threshold,
            pass,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ExperimentReport {
    pub kind: String,
    pub seed: u64,
    pub rows: Vec<CaseRow>,
    pub passed: bool,
    pub runtime_seconds: f64,
}

impl ExperimentReport {
    pub fn from_rows(kind: &str, seed: u64, rows: Vec<CaseRow>, runtime_seconds: f64) -> Self {
        let passed = rows.iter().all(|r| r.pass);
        ExperimentReport {
            kind: kind.to_string(),
            seed,
            rows,
            passed,
            runtime_seconds,
        }
    }

    /// Deterministic CSV body (fixed order, fixed formatting).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("case,property,detail,value,threshold,pass\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{:.12e},{:.12e},{}\n",
                r.case, r.property, r.detail, r.value, r.threshold, r.pass
            ));
        }
        out
    }

    pub fn summary_json(&self) -> serde_json::Value {
        serde_json::json!({
            "kind": self.kind,
            "seed": self.seed,
            "cases": self.rows.len(),
            "failures": self.rows.iter().filter(|r| !r.pass).count(),
            "passed": self.passed,
            "runtime_seconds": self.runtime_seconds,
        })
    }
}

/// An experiment kind: a named, config-driven, reproducible report producer.
pub trait Experiment: Sync {
    fn kind(&self) -> &'static str;
    fn run(&self, cfg: &ExperimentConfig, ctx: &RunContext) -> Result<ExperimentReport>;
}

/// All registered kinds, in the order they appear in reports and docs.
pub fn registry() -> Vec<Box<dyn Experiment>> {
    vec![
        Box::new(gamma_identity::GammaIdentity),
        Box::new(projector_threshold::ProjectorThreshold),
        Box::new(positive_equivalence::PositiveEquivalence),
        Box::new(atomic_reconstruction::AtomicReconstruction),
        Box::new(boundary_limit::BoundaryLimit),
        Box::new(section7::Section7Properties),
        Box::new(transference::Transference),
        Box::new(duality_constancy::DualityConstancy),
    ]
}

/// Look an experiment up by its registered kind name.
pub fn find(kind: &str) -> Result<Box<dyn Experiment>> {
    registry()
        .into_iter()
        .find(|e| e.kind() == kind)
        .ok_or_else(|| {
            let known: Vec<&str> = registry().iter().map(|e| e.kind()).collect();
            Error::config(format!(
                "kind: unknown experiment '{kind}' (known: {})",
                known.join(", ")
            ))
        })
}

/// Run a kind against its config, timing it.
pub fn run_experiment(cfg: &ExperimentConfig, ctx: &RunContext) -> Result<ExperimentReport> {
    let exp = find(&cfg.kind)?;
    let start = std::time::Instant::now();
    let mut report = exp.run(cfg, ctx)?;
    report.runtime_seconds = start.elapsed().as_secs_f64();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_kinds_are_unique_and_findable() {
        let kinds: Vec<&str> = registry().iter().map(|e| e.kind()).collect();
        let mut sorted = kinds.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), kinds.len());
        assert_eq!(kinds.len(), 8);
        for k in kinds {
            assert!(find(k).is_ok());
        }
        assert!(find("no-such-kind").is_err());
    }

    #[test]
    fn config_rejects_unknown_keys() {
        let err = ExperimentConfig::from_json(r#"{"kind":"gamma-identity","bogus":1}"#);
        assert!(err.is_err());
        let msg = format!("{}", err.unwrap_err());
        assert!(msg.contains("bogus"), "{msg}");
    }
}
