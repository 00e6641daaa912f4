//! Run configuration: one JSON file per audit, hashed into every output so
//! results are traceable to their exact inputs. Seeds are mandatory — there
//! is no fallback to time-based seeding.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AuditConfig {
    /// Named embedding files; audits compare them pairwise in order.
    pub embeddings: Vec<EmbeddingEntry>,
    /// Directory of `<category>.txt` target word lists.
    #[serde(default)]
    pub word_list_dir: Option<PathBuf>,
    #[serde(default)]
    pub lexicons: Vec<LexiconEntry>,
    #[serde(default)]
    pub headlines: Option<HeadlinesConfig>,
    #[serde(default)]
    pub permutation: Option<PermutationConfig>,
    #[serde(default)]
    pub classifier: Option<ClassifierConfig>,
    #[serde(default)]
    pub preprocess: PreprocessSettings,
    #[serde(default)]
    pub segmentation: SegmentationMode,
    #[serde(default)]
    pub external_models: Vec<ExternalModelEntry>,
    pub output_dir: PathBuf,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmbeddingEntry {
    pub name: String,
    pub path: PathBuf,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LexiconEntry {
    pub name: String,
    #[serde(default)]
    pub kind: Option<LexiconKindSetting>,
    pub positive: PathBuf,
    pub negative: PathBuf,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LexiconKindSetting {
    Propaganda,
    Evaluative,
    UserDefined,
}

impl LexiconEntry {
    pub fn kind(&self) -> embaudit::io::LexiconKind {
        use embaudit::io::LexiconKind;
        match self.kind {
            Some(LexiconKindSetting::Propaganda) => LexiconKind::Propaganda,
            Some(LexiconKindSetting::Evaluative) => LexiconKind::Evaluative,
            Some(LexiconKindSetting::UserDefined) => LexiconKind::UserDefined,
            None => match self.name.as_str() {
                "propaganda" => LexiconKind::Propaganda,
                "evaluative" => LexiconKind::Evaluative,
                _ => LexiconKind::UserDefined,
            },
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HeadlinesConfig {
    pub train: PathBuf,
    pub test: PathBuf,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PermutationConfig {
    pub mode: PermutationModeSetting,
    #[serde(default = "default_draws")]
    pub n_draws: usize,
    pub seed: u64,
}

fn default_draws() -> usize {
    100_000
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PermutationModeSetting {
    Exact,
    MonteCarlo,
}

impl PermutationConfig {
    pub fn plan(&self) -> Result<embaudit::assoc::PermutationPlan, CliError> {
        use embaudit::assoc::PermutationPlan;
        match self.mode {
            PermutationModeSetting::Exact => Ok(PermutationPlan::exact(self.seed)),
            PermutationModeSetting::MonteCarlo => {
                PermutationPlan::monte_carlo(self.n_draws, self.seed)
                    .map_err(|e| CliError::usage(e.to_string()))
            }
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassifierConfig {
    pub kinds: Vec<ClassifierKindSetting>,
    #[serde(default)]
    pub three_class: bool,
    #[serde(default = "default_reg")]
    pub reg: f64,
    #[serde(default = "default_epochs")]
    pub epochs: usize,
    pub seed: u64,
    /// Standardize the spaces before feature extraction.
    #[serde(default)]
    pub standardize: bool,
}

fn default_reg() -> f64 {
    1e-4
}

fn default_epochs() -> usize {
    50
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassifierKindSetting {
    GaussianNb,
    LinearSvm,
}

impl fmt::Display for ClassifierKindSetting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassifierKindSetting::GaussianNb => write!(f, "gaussian_nb"),
            ClassifierKindSetting::LinearSvm => write!(f, "linear_svm"),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PreprocessSettings {
    #[serde(default)]
    pub agency_names: Vec<String>,
    #[serde(default = "default_true")]
    pub strip_punctuation: bool,
    #[serde(default = "default_true")]
    pub strip_digits: bool,
    #[serde(default = "default_true")]
    pub strip_special: bool,
}

fn default_true() -> bool {
    true
}

impl Default for PreprocessSettings {
    fn default() -> Self {
        Self {
            agency_names: Vec::new(),
            strip_punctuation: true,
            strip_digits: true,
            strip_special: true,
        }
    }
}

impl PreprocessSettings {
    pub fn to_config(&self) -> embaudit::sentiment::PreprocessConfig {
        embaudit::sentiment::PreprocessConfig {
            agency_names: self.agency_names.clone(),
            strip_punctuation: self.strip_punctuation,
            strip_digits: self.strip_digits,
            strip_special: self.strip_special,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SegmentationMode {
    /// Greedy maximal matching against the shared vocabulary.
    #[default]
    MaxMatch,
    /// Input is already whitespace-tokenized.
    Whitespace,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExternalModelEntry {
    pub name: String,
    pub predictions_a: PathBuf,
    pub predictions_b: PathBuf,
}

/// A loaded configuration plus the SHA-256 of its raw bytes.
pub struct LoadedConfig {
    pub config: AuditConfig,
    pub hash: String,
}

impl AuditConfig {
    pub fn load(path: &Path) -> Result<LoadedConfig, CliError> {
        let bytes = std::fs::read(path)
            .map_err(|e| CliError::data(format!("cannot read config {}: {e}", path.display())))?;
        let config: AuditConfig = serde_json::from_slice(&bytes)
            .map_err(|e| CliError::usage(format!("bad config {}: {e}", path.display())))?;
        if config.embeddings.is_empty() {
            return Err(CliError::usage("config lists no embeddings"));
        }
        if let Some(missing) = config.referenced_paths().iter().find(|p| !p.exists()) {
            return Err(CliError::data(format!(
                "configured path does not exist: {}",
                missing.display()
            )));
        }
        Ok(LoadedConfig {
            config,
            hash: crate::report::sha256_hex(&bytes),
        })
    }

    pub fn referenced_paths(&self) -> Vec<PathBuf> {
        let mut paths: Vec<PathBuf> =
            self.embeddings.iter().map(|e| e.path.clone()).collect();
        if let Some(dir) = &self.word_list_dir {
            paths.push(dir.clone());
        }
        for lexicon in &self.lexicons {
            paths.push(lexicon.positive.clone());
            paths.push(lexicon.negative.clone());
        }
        if let Some(headlines) = &self.headlines {
            paths.push(headlines.train.clone());
            paths.push(headlines.test.clone());
        }
        for external in &self.external_models {
            paths.push(external.predictions_a.clone());
            paths.push(external.predictions_b.clone());
        }
        paths
    }

    pub fn apply_overrides(&mut self, seed: Option<u64>, out: Option<PathBuf>) {
        if let Some(seed) = seed {
            if let Some(permutation) = &mut self.permutation {
                permutation.seed = seed;
            }
            if let Some(classifier) = &mut self.classifier {
                classifier.seed = seed;
            }
        }
        if let Some(out) = out {
            self.output_dir = out;
        }
    }
}
