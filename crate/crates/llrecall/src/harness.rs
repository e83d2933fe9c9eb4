//! Factorial sweep harness: enumerate classifier configurations, build and
//! evaluate each against a corpus + query set + gold set, and feed the
//! parameter-impact statistics.

use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::corpus::{GoldSet, LessonRecord, QueryRecord};
use crate::error::{Error, Result};
use crate::lda::{self, LdaConfig, LdaModel};
use crate::lsi::{self, LsiConfig, LsiSpace};
use crate::metrics::{self, EvalReport, MetricConfig};
use crate::ranked::RankedList;
use crate::stats::{self, HsdResult, SampleGroup, WilcoxonResult};
use crate::textprep::{PipelineConfig, Stoplist};
use crate::vsm::{self, SimilarityKind, VsmIndex, WeightScheme};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelFamily {
    Vsm,
    Lsi,
    Lda,
}

impl ModelFamily {
    pub fn label(&self) -> &'static str {
        match self {
            ModelFamily::Vsm => "vsm",
            ModelFamily::Lsi => "lsi",
            ModelFamily::Lda => "lda",
        }
    }
}

impl std::str::FromStr for ModelFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<ModelFamily> {
        match s {
            "vsm" => Ok(ModelFamily::Vsm),
            "lsi" => Ok(ModelFamily::Lsi),
            "lda" => Ok(ModelFamily::Lda),
            other => Err(Error::InvalidConfig(format!("unknown model family {other:?}"))),
        }
    }
}

/// LDA hyperparameters that are fixed across the grid. Omitted fields fall
/// back to the preset defaults when loaded from a grid file.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LdaExtras {
    pub alpha_numerator: f64,
    pub beta: f64,
    pub seed: u64,
    pub max_iterations: usize,
    pub convergence_window: usize,
    pub convergence_tol: f64,
}

impl Default for LdaExtras {
    fn default() -> Self {
        LdaExtras {
            alpha_numerator: 50.0,
            beta: 0.01,
            seed: 42,
            max_iterations: 2000,
            convergence_window: 10,
            convergence_tol: 1e-4,
        }
    }
}

/// One point of the factorial grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifierConfig {
    pub model: ModelFamily,
    pub pipeline: PipelineConfig,
    pub weight: Option<WeightScheme>,
    pub similarity: Option<SimilarityKind>,
    pub topics: Option<usize>,
    pub lda: Option<LdaExtras>,
}

impl ClassifierConfig {
    /// Deterministic, injective id over all fields.
    pub fn id(&self) -> String {
        match self.model {
            ModelFamily::Vsm => format!(
                "vsm-{}-{}-{}",
                self.pipeline.label(),
                self.weight.expect("vsm has a weight").label(),
                self.similarity.expect("vsm has a similarity").label(),
            ),
            ModelFamily::Lsi => format!(
                "lsi-{}-{}-k{}",
                self.pipeline.label(),
                self.weight.expect("lsi has a weight").label(),
                self.topics.expect("lsi has a topic count"),
            ),
            ModelFamily::Lda => {
                let extras = self.lda.expect("lda has extras");
                format!(
                    "lda-{}-k{}-s{}",
                    self.pipeline.label(),
                    self.topics.expect("lda has a topic count"),
                    extras.seed,
                )
            }
        }
    }

    pub fn lda_config(&self) -> LdaConfig {
        let extras = self.lda.unwrap_or_default();
        let topics = self.topics.expect("lda has a topic count");
        LdaConfig {
            topics,
            alpha: extras.alpha_numerator / topics as f64,
            beta: extras.beta,
            max_iterations: extras.max_iterations,
            convergence_window: extras.convergence_window,
            convergence_tol: extras.convergence_tol,
            seed: extras.seed,
            pipeline: self.pipeline,
        }
    }
}

/// The factorial parameter grid. The default value is the full 88-point grid
/// (24 VSM + 48 LSI + 16 LDA).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Grid {
    pub families: Vec<ModelFamily>,
    pub pipelines: Vec<PipelineConfig>,
    pub weights: Vec<WeightScheme>,
    pub similarities: Vec<SimilarityKind>,
    pub topics: Vec<usize>,
    pub lda: LdaExtras,
}

impl Default for Grid {
    fn default() -> Self {
        Grid::paper()
    }
}

impl Grid {
    pub fn paper() -> Grid {
        Grid {
            families: vec![ModelFamily::Vsm, ModelFamily::Lsi, ModelFamily::Lda],
            pipelines: PipelineConfig::ALL.to_vec(),
            weights: WeightScheme::ALL.to_vec(),
            similarities: SimilarityKind::ALL.to_vec(),
            topics: vec![32, 64, 128, 256],
            lda: LdaExtras::default(),
        }
    }

    pub fn from_file(path: &Path) -> Result<Grid> {
        let content = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Ok(serde_json::from_str(&content)?)
    }

    pub fn with_seed(mut self, seed: u64) -> Grid {
        self.lda.seed = seed;
        self
    }
}

/// Full factorial product, deterministic order: model family, then
/// pipeline, then the remaining parameters in grid order.
pub fn enumerate_configs(grid: &Grid) -> Vec<ClassifierConfig> {
    let mut configs = Vec::new();
    for &family in &grid.families {
        for &pipeline in &grid.pipelines {
            match family {
                ModelFamily::Vsm => {
                    for &weight in &grid.weights {
                        for &similarity in &grid.similarities {
                            configs.push(ClassifierConfig {
                                model: family,
                                pipeline,
                                weight: Some(weight),
                                similarity: Some(similarity),
                                topics: None,
                                lda: None,
                            });
                        }
                    }
                }
                ModelFamily::Lsi => {
                    for &weight in &grid.weights {
                        for &topics in &grid.topics {
                            configs.push(ClassifierConfig {
                                model: family,
                                pipeline,
                                weight: Some(weight),
                                similarity: None,
                                topics: Some(topics),
                                lda: None,
                            });
                        }
                    }
                }
                ModelFamily::Lda => {
                    for &topics in &grid.topics {
                        configs.push(ClassifierConfig {
                            model: family,
                            pipeline,
                            weight: None,
                            similarity: None,
                            topics: Some(topics),
                            lda: Some(grid.lda),
                        });
                    }
                }
            }
        }
    }
    configs
}

/// A built, queryable classifier.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Classifier {
    Vsm(VsmIndex),
    Lsi(LsiSpace),
    Lda(LdaModel),
}

impl Classifier {
    pub fn query(&self, query_id: &str, text: &str, limit: usize, stoplist: &Stoplist) -> RankedList {
        match self {
            Classifier::Vsm(index) => {
                let q = vsm::embed_query(text, index, stoplist);
                vsm::score_embedded(index, query_id, &q, limit)
            }
            Classifier::Lsi(space) => {
                let q = vsm::embed_query(text, &space.source, stoplist);
                lsi::score_folded(space, query_id, &q, limit)
            }
            Classifier::Lda(model) => {
                let tokens =
                    crate::textprep::preprocess(text, model.config.pipeline, stoplist);
                lda::score_tokens(model, query_id, &tokens, limit)
            }
        }
    }
}

/// Builds the model named by `config` from the lesson corpus only.
pub fn build_classifier(
    config: &ClassifierConfig,
    lessons: &[LessonRecord],
    stoplist: &Stoplist,
) -> Result<Classifier> {
    match config.model {
        ModelFamily::Vsm => Ok(Classifier::Vsm(vsm::build_vsm_index(
            lessons,
            config.pipeline,
            config.weight.ok_or_else(|| missing("weight"))?,
            config.similarity.ok_or_else(|| missing("similarity"))?,
            stoplist,
        )?)),
        ModelFamily::Lsi => Ok(Classifier::Lsi(lsi::build_lsi(
            lessons,
            &LsiConfig {
                k: config.topics.ok_or_else(|| missing("topics"))?,
                scheme: config.weight.ok_or_else(|| missing("weight"))?,
                pipeline: config.pipeline,
            },
            stoplist,
        )?)),
        ModelFamily::Lda => Ok(Classifier::Lda(lda::train_lda(
            lessons,
            &config.lda_config(),
            stoplist,
        )?)),
    }
}

fn missing(field: &str) -> Error {
    Error::InvalidConfig(format!("classifier config is missing {field}"))
}

/// Per-config sweep outcome; build/evaluate failures are recorded, not fatal.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConfigResult {
    pub config: ClassifierConfig,
    pub config_id: String,
    pub eval: Option<EvalReport>,
    pub rankings: Vec<RankedList>,
    pub error: Option<String>,
    pub wall_ms: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepReport {
    pub results: Vec<ConfigResult>,
    pub corpus_hash: String,
    pub query_hash: String,
    pub gold_hash: String,
    pub tool_version: String,
}

fn sha256_of<T: Serialize>(value: &T) -> String {
    let json = serde_json::to_string(value).expect("serializable");
    let mut hasher = Sha256::new();
    hasher.update(json.as_bytes());
    format!("{:x}", hasher.finalize())
}

fn run_one(
    config: &ClassifierConfig,
    lessons: &[LessonRecord],
    queries: &[QueryRecord],
    gold: &GoldSet,
    metric_config: &MetricConfig,
    limit: usize,
    stoplist: &Stoplist,
) -> ConfigResult {
    let start = Instant::now();
    let config_id = config.id();
    let outcome = build_classifier(config, lessons, stoplist).and_then(|classifier| {
        let rankings: Vec<RankedList> = queries
            .iter()
            .map(|q| classifier.query(&q.id, &q.text, limit, stoplist))
            .collect();
        let eval = metrics::evaluate(&config_id, &rankings, gold, metric_config)?;
        Ok((eval, rankings))
    });
    let wall_ms = start.elapsed().as_millis() as u64;
    match outcome {
        Ok((eval, rankings)) => ConfigResult {
            config: config.clone(),
            config_id,
            eval: Some(eval),
            rankings,
            error: None,
            wall_ms,
        },
        Err(e) => ConfigResult {
            config: config.clone(),
            config_id,
            eval: None,
            rankings: Vec::new(),
            error: Some(e.to_string()),
            wall_ms,
        },
    }
}

/// Builds and evaluates every grid point. `workers` bounds concurrency;
/// results are merged in enumeration order, so the report is independent of
/// the worker count.
pub fn run_sweep(
    lessons: &[LessonRecord],
    queries: &[QueryRecord],
    gold: &GoldSet,
    grid: &Grid,
    metric_config: &MetricConfig,
    limit: usize,
    workers: usize,
    stoplist: &Stoplist,
) -> Result<SweepReport> {
    let configs = enumerate_configs(grid);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidConfig(format!("worker pool: {e}")))?;
    let results: Vec<ConfigResult> = pool.install(|| {
        configs
            .par_iter()
            .map(|c| run_one(c, lessons, queries, gold, metric_config, limit, stoplist))
            .collect()
    });
    Ok(SweepReport {
        results,
        corpus_hash: sha256_of(&lessons),
        query_hash: sha256_of(&queries),
        gold_hash: sha256_of(&gold),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
    })
}

/// Parameters whose impact can be compared within a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parameter {
    Pipeline,
    Weight,
    Similarity,
    Topics,
}

impl Parameter {
    pub fn label(&self) -> &'static str {
        match self {
            Parameter::Pipeline => "pipeline",
            Parameter::Weight => "weight",
            Parameter::Similarity => "similarity",
            Parameter::Topics => "topics",
        }
    }

    fn valid_for(&self, family: ModelFamily) -> bool {
        match self {
            Parameter::Pipeline => true,
            Parameter::Weight => matches!(family, ModelFamily::Vsm | ModelFamily::Lsi),
            Parameter::Similarity => matches!(family, ModelFamily::Vsm),
            Parameter::Topics => matches!(family, ModelFamily::Lsi | ModelFamily::Lda),
        }
    }

    fn value_of(&self, config: &ClassifierConfig) -> String {
        match self {
            Parameter::Pipeline => config.pipeline.label().to_string(),
            Parameter::Weight => config.weight.expect("validated").label().to_string(),
            Parameter::Similarity => config.similarity.expect("validated").label().to_string(),
            Parameter::Topics => config.topics.expect("validated").to_string(),
        }
    }
}

impl std::str::FromStr for Parameter {
    type Err = Error;
    fn from_str(s: &str) -> Result<Parameter> {
        match s {
            "pipeline" => Ok(Parameter::Pipeline),
            "weight" => Ok(Parameter::Weight),
            "similarity" => Ok(Parameter::Similarity),
            "topics" => Ok(Parameter::Topics),
            other => Err(Error::InvalidConfig(format!("unknown parameter {other:?}"))),
        }
    }
}

/// Aggregate metric selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    Top20,
    Map,
    PrecisionAt10,
    RecallAt10,
}

impl Metric {
    pub fn label(&self) -> &'static str {
        match self {
            Metric::Top20 => "top20",
            Metric::Map => "map",
            Metric::PrecisionAt10 => "p_at_10",
            Metric::RecallAt10 => "r_at_10",
        }
    }

    pub fn aggregate(&self, report: &EvalReport) -> f64 {
        match self {
            Metric::Top20 => report.top_k_accuracy,
            Metric::Map => report.map,
            Metric::PrecisionAt10 => report.mean_precision_at_k,
            Metric::RecallAt10 => report.mean_recall_at_k,
        }
    }

    pub fn per_query(&self, report: &EvalReport) -> Vec<f64> {
        report
            .per_query
            .iter()
            .map(|q| match self {
                Metric::Top20 => q.hit_at_k,
                Metric::Map => q.avp,
                Metric::PrecisionAt10 => q.precision_at_k,
                Metric::RecallAt10 => q.recall_at_k,
            })
            .collect()
    }
}

impl std::str::FromStr for Metric {
    type Err = Error;
    fn from_str(s: &str) -> Result<Metric> {
        match s {
            "top20" => Ok(Metric::Top20),
            "map" => Ok(Metric::Map),
            "p_at_10" | "p10" => Ok(Metric::PrecisionAt10),
            "r_at_10" | "r10" => Ok(Metric::RecallAt10),
            other => Err(Error::InvalidConfig(format!("unknown metric {other:?}"))),
        }
    }
}

fn family_results<'a>(
    report: &'a SweepReport,
    family: ModelFamily,
) -> Result<Vec<&'a ConfigResult>> {
    let results: Vec<&ConfigResult> = report
        .results
        .iter()
        .filter(|r| r.config.model == family)
        .collect();
    if results.is_empty() || results.iter().any(|r| r.eval.is_none()) {
        return Err(Error::IncompleteFamily {
            family: family.label().to_string(),
        });
    }
    Ok(results)
}

/// One SampleGroup per parameter value (other parameters varying), compared
/// with Tukey HSD.
pub fn parameter_impact(
    report: &SweepReport,
    family: ModelFamily,
    parameter: Parameter,
    metric: Metric,
) -> Result<HsdResult> {
    if !parameter.valid_for(family) {
        return Err(Error::InvalidConfig(format!(
            "parameter {} is not part of the {} family",
            parameter.label(),
            family.label()
        )));
    }
    let results = family_results(report, family)?;
    let mut groups: Vec<SampleGroup> = Vec::new();
    for r in &results {
        let value = parameter.value_of(&r.config);
        let sample = metric.aggregate(r.eval.as_ref().expect("family complete"));
        match groups.iter_mut().find(|g| g.label == value) {
            Some(g) => g.samples.push(sample),
            None => groups.push(SampleGroup::new(value, vec![sample])),
        }
    }
    stats::tukey_hsd(&groups, 0.05)
}

/// One Wilcoxon comparison: a preprocessing pipeline's top performer versus
/// the no-preprocessing top performer.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TopPerformerComparison {
    pub pipeline: String,
    pub config_id: String,
    pub baseline_config_id: String,
    pub result: WilcoxonResult,
}

fn best_with_pipeline<'a>(
    results: &[&'a ConfigResult],
    pipeline: PipelineConfig,
    metric: Metric,
) -> Option<&'a ConfigResult> {
    results
        .iter()
        .filter(|r| r.config.pipeline == pipeline)
        .copied()
        .max_by(|a, b| {
            let ma = metric.aggregate(a.eval.as_ref().expect("family complete"));
            let mb = metric.aggregate(b.eval.as_ref().expect("family complete"));
            ma.partial_cmp(&mb)
                .unwrap()
                .then_with(|| b.config_id.cmp(&a.config_id)) // lower id wins ties
        })
}

/// For each of {stem, stop, stem+stop}: pair the pipeline's best config with
/// the best unpreprocessed config on per-query metric values.
pub fn top_performer_comparison(
    report: &SweepReport,
    family: ModelFamily,
    metric: Metric,
) -> Result<Vec<TopPerformerComparison>> {
    let results = family_results(report, family)?;
    let baseline = best_with_pipeline(&results, PipelineConfig::NONE, metric)
        .ok_or_else(|| Error::IncompleteFamily {
            family: family.label().to_string(),
        })?;
    let baseline_values = metric.per_query(baseline.eval.as_ref().expect("family complete"));
    let mut out = Vec::new();
    for pipeline in [
        PipelineConfig::STEM,
        PipelineConfig::STOP,
        PipelineConfig::STEM_STOP,
    ] {
        let best = best_with_pipeline(&results, pipeline, metric).ok_or_else(|| {
            Error::IncompleteFamily {
                family: family.label().to_string(),
            }
        })?;
        let values = metric.per_query(best.eval.as_ref().expect("family complete"));
        let result = stats::wilcoxon_signed_rank(&values, &baseline_values)?;
        out.push(TopPerformerComparison {
            pipeline: pipeline.label().to_string(),
            config_id: best.config_id.clone(),
            baseline_config_id: baseline.config_id.clone(),
            result,
        });
    }
    Ok(out)
}

const INDEX_FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct IndexEnvelope {
    format_version: u32,
    checksum: String,
    payload: String,
}

fn payload_checksum(payload: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(payload.as_bytes());
    format!("{:x}", hasher.finalize())
}

/// Writes a versioned, checksummed index file.
pub fn persist_index(classifier: &Classifier, path: &Path) -> Result<()> {
    let payload = serde_json::to_string(classifier)?;
    let envelope = IndexEnvelope {
        format_version: INDEX_FORMAT_VERSION,
        checksum: payload_checksum(&payload),
        payload,
    };
    let bytes = serde_json::to_vec(&envelope)?;
    std::fs::write(path, bytes).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_index(path: &Path) -> Result<Classifier> {
    let content = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let envelope: IndexEnvelope =
        serde_json::from_str(&content).map_err(|e| Error::Persist {
            path: path.to_path_buf(),
            message: format!("not a valid index file: {e}"),
        })?;
    if envelope.format_version != INDEX_FORMAT_VERSION {
        return Err(Error::Persist {
            path: path.to_path_buf(),
            message: format!(
                "format version {} is not supported (expected {})",
                envelope.format_version, INDEX_FORMAT_VERSION
            ),
        });
    }
    if payload_checksum(&envelope.payload) != envelope.checksum {
        return Err(Error::Persist {
            path: path.to_path_buf(),
            message: "checksum mismatch (corrupted file)".into(),
        });
    }
    let mut classifier: Classifier = serde_json::from_str(&envelope.payload)?;
    match &mut classifier {
        Classifier::Vsm(index) => index.vocabulary.rebuild_index(),
        Classifier::Lsi(space) => space.source.vocabulary.rebuild_index(),
        Classifier::Lda(model) => model.vocabulary.rebuild_index(),
    }
    Ok(classifier)
}
