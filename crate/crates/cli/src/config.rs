use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use testcomp_core::elements::{FilterConfig, Partition};
use testcomp_core::exec::ExecConfig;
use testcomp_core::metrics::{BootstrapConfig, EvalConfig};
use testcomp_core::predictor::PredictorConfig;
use testcomp_core::semantics::SemanticsConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum PredictorChoice {
    #[default]
    Retrieval,
    External,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    pub workers: usize,
    pub seed: u64,
    pub toolchain: Option<PathBuf>,
    pub rerank: bool,
    pub predictor: PredictorChoice,
    /// Extra dependency jars or directories for every collected project,
    /// added to the project's own `lib/` jars.
    pub classpath: Vec<PathBuf>,
    /// Partition of every project.
    pub split: BTreeMap<String, Partition>,
    pub filter: FilterConfig,
    pub semantics: SemanticsConfig,
    pub input: PredictorConfig,
    pub exec: ExecConfig,
    pub eval: EvalConfig,
    pub bootstrap: BootstrapSection,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BootstrapSection {
    pub resamples: usize,
    pub confidence: f64,
}

impl Default for BootstrapSection {
    fn default() -> Self {
        let d = BootstrapConfig::default();
        BootstrapSection {
            resamples: d.resamples,
            confidence: d.confidence,
        }
    }
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            seed: 0,
            toolchain: None,
            rerank: true,
            predictor: PredictorChoice::default(),
            classpath: Vec::new(),
            split: BTreeMap::new(),
            filter: FilterConfig::default(),
            semantics: SemanticsConfig::default(),
            input: PredictorConfig::default(),
            exec: ExecConfig::default(),
            eval: EvalConfig::default(),
            bootstrap: BootstrapSection::default(),
        }
    }
}

impl PipelineConfig {
    pub fn load(path: Option<&Path>) -> anyhow::Result<PipelineConfig> {
        let Some(path) = path else {
            return Ok(PipelineConfig::default());
        };
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn validate(&self) -> anyhow::Result<()> {
        if self.workers == 0 {
            bail!("workers must be at least 1");
        }
        self.input.validate()?;
        Ok(())
    }

    pub fn bootstrap(&self) -> BootstrapConfig {
        BootstrapConfig {
            resamples: self.bootstrap.resamples,
            confidence: self.bootstrap.confidence,
            seed: self.seed,
        }
    }

    /// SHA-256 of the configuration with the worker count cleared, since
    /// it does not affect any output.
    pub fn hash(&self) -> String {
        let mut c = self.clone();
        c.workers = 0;
        let bytes = serde_json::to_vec(&c).expect("config serializes");
        hex::encode(Sha256::digest(bytes))
    }
}
