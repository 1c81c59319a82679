//! Run configuration: a plain `key = value` file plus `--set` overrides.
//!
//! Every learning parameter has a default, so an empty configuration is
//! valid. Unknown keys are rejected. Path-valued keys (`kb`, `examples`,
//! `target`, `out`) are optional fallbacks for the corresponding
//! command-line flags.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{Error, Result};
use crate::kb::{Label, LearningTask, StageParams};

/// All tunables of a run, with their defaults.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// Fallback knowledge-base path.
    pub kb: Option<String>,
    /// Fallback examples location. For `learn`/`predict` a single path; for
    /// `eval` a comma-separated list of `target=path` pairs.
    pub examples: Option<String>,
    /// Fallback target name for `learn`.
    pub target: Option<String>,
    /// Fallback output path.
    pub out: Option<String>,
    pub folds: usize,
    pub seed: u64,
    pub fuzzifier: String,
    pub fuzzy_sets: usize,
    pub conjunction_family: String,
    pub gci_family: String,
    pub backtrack: usize,
    pub p_stage: StageParams,
    pub n_stage: StageParams,
    pub cmeans_m: f64,
    pub cmeans_epsilon: f64,
    pub cmeans_max_iterations: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            kb: None,
            examples: None,
            target: None,
            out: None,
            folds: 5,
            seed: 0,
            fuzzifier: "uniform".to_string(),
            fuzzy_sets: 3,
            conjunction_family: "goedel".to_string(),
            gci_family: "lukasiewicz".to_string(),
            backtrack: 5,
            p_stage: StageParams::positive_stage(),
            n_stage: StageParams::negative_stage(),
            cmeans_m: 2.0,
            cmeans_epsilon: 0.05,
            cmeans_max_iterations: 100,
        }
    }
}

fn parse_number<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::Config(format!("key `{key}`: cannot parse `{value}`")))
}

impl RunConfig {
    /// Apply one `key = value` assignment.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "kb" => self.kb = Some(value.to_string()),
            "examples" => self.examples = Some(value.to_string()),
            "target" => self.target = Some(value.to_string()),
            "out" => self.out = Some(value.to_string()),
            "folds" => self.folds = parse_number(key, value)?,
            "seed" => self.seed = parse_number(key, value)?,
            "fuzzifier" => self.fuzzifier = value.to_string(),
            "fuzzy_sets" => self.fuzzy_sets = parse_number(key, value)?,
            "conjunction_family" => self.conjunction_family = value.to_string(),
            "gci_family" => self.gci_family = value.to_string(),
            "backtrack" => self.backtrack = parse_number(key, value)?,
            "p_theta" => self.p_stage.theta = parse_number(key, value)?,
            "p_eta" => self.p_stage.eta = parse_number(key, value)?,
            "p_max_conjuncts" => self.p_stage.max_conjuncts = parse_number(key, value)?,
            "p_max_role_depth" => self.p_stage.max_role_depth = parse_number(key, value)?,
            "n_theta" => self.n_stage.theta = parse_number(key, value)?,
            "n_eta" => self.n_stage.eta = parse_number(key, value)?,
            "n_max_conjuncts" => self.n_stage.max_conjuncts = parse_number(key, value)?,
            "n_max_role_depth" => self.n_stage.max_role_depth = parse_number(key, value)?,
            "cmeans_m" => self.cmeans_m = parse_number(key, value)?,
            "cmeans_epsilon" => self.cmeans_epsilon = parse_number(key, value)?,
            "cmeans_max_iterations" => self.cmeans_max_iterations = parse_number(key, value)?,
            other => {
                return Err(Error::Config(format!("unknown configuration key `{other}`")));
            }
        }
        Ok(())
    }

    /// Apply a `key=value` override as passed on the command line.
    pub fn set_pair(&mut self, pair: &str) -> Result<()> {
        let Some((key, value)) = pair.split_once('=') else {
            return Err(Error::Config(format!(
                "override must look like key=value, got `{pair}`"
            )));
        };
        self.set(key.trim(), value.trim())
    }

    /// Parse a configuration document.
    pub fn parse_str(text: &str) -> Result<RunConfig> {
        let mut config = RunConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected `key = value`, got `{line}`"),
                });
            };
            config
                .set(key.trim(), value.trim())
                .map_err(|e| e.at_line(line_no))?;
        }
        Ok(config)
    }

    /// Read a configuration file from disk.
    pub fn load(path: impl AsRef<Path>) -> Result<RunConfig> {
        Self::parse_str(&std::fs::read_to_string(path)?)
    }

    /// Instantiate a learning task for one target from this configuration.
    pub fn to_task(&self, target: impl Into<String>, labels: BTreeMap<String, Label>) -> LearningTask {
        let mut task = LearningTask::new(target, labels);
        task.p_stage = self.p_stage;
        task.n_stage = self.n_stage;
        task.fuzzy_sets = self.fuzzy_sets;
        task.fuzzifier = self.fuzzifier.clone();
        task.cmeans_m = self.cmeans_m;
        task.cmeans_epsilon = self.cmeans_epsilon;
        task.cmeans_max_iterations = self.cmeans_max_iterations;
        task.conjunction_family = self.conjunction_family.clone();
        task.gci_family = self.gci_family.clone();
        task.backtrack = self.backtrack;
        task.seed = self.seed;
        task
    }
}
