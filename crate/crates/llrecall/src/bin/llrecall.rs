//! Command-line surface: validate data, build/persist classifiers, run
//! queries, evaluate, sweep the factorial grid and emit reports.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use llrecall::corpus;
use llrecall::error::Error;
use llrecall::harness::{
    self, ClassifierConfig, Grid, Metric, ModelFamily, Parameter, SweepReport,
};
use llrecall::metrics::MetricConfig;
use llrecall::report;
use llrecall::textprep::{PipelineConfig, Stoplist};
use llrecall::vsm::{SimilarityKind, WeightScheme};

#[derive(Parser)]
#[command(
    name = "llrecall",
    version,
    about = "Lessons-learned recall engine: VSM/LSI/LDA retrieval and factorial evaluation"
)]
struct Cli {
    /// Override the bundled 175-word stoplist (one lowercase word per line)
    #[arg(long, global = true)]
    stoplist: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct DataArgs {
    /// Lessons file (JSON-Lines: id, project_id, text)
    #[arg(long)]
    lessons: PathBuf,
    /// Query file (JSON-Lines: id, project_id, kind, text)
    #[arg(long)]
    queries: PathBuf,
    /// Gold set file (JSON object: query id -> relevant lesson ids)
    #[arg(long)]
    gold: PathBuf,
}

#[derive(Args)]
struct ClassifierArgs {
    /// Model family: vsm, lsi or lda
    #[arg(long)]
    model: String,
    /// Preprocessing: none, stem, stop or stem_stop
    #[arg(long, default_value = "none")]
    pipeline: String,
    /// Term weighting (vsm, lsi): tfidf, sublinear_tfidf or boolean
    #[arg(long)]
    weight: Option<String>,
    /// Similarity (vsm): cosine or overlap
    #[arg(long)]
    similarity: Option<String>,
    /// Topic count (lsi, lda)
    #[arg(long)]
    topics: Option<usize>,
    /// LDA training seed (falls back to LLRECALL_SEED, then 42)
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Load and validate lessons, queries and the gold set
    Ingest(DataArgs),
    /// Build one classifier and persist it to an index file
    Build {
        /// Lessons file (JSON-Lines)
        #[arg(long)]
        lessons: PathBuf,
        #[command(flatten)]
        classifier: ClassifierArgs,
        /// Output index file
        #[arg(long)]
        out: PathBuf,
    },
    /// Query a persisted index
    Query {
        /// Persisted index file
        #[arg(long)]
        index: PathBuf,
        /// Query text (mutually exclusive with --query-file)
        #[arg(long, conflicts_with = "query_file")]
        text: Option<String>,
        /// Query records to run, in file order (JSON-Lines)
        #[arg(long)]
        query_file: Option<PathBuf>,
        /// Maximum results per query
        #[arg(long, default_value_t = 20)]
        limit: usize,
        /// Lessons file, used to print text snippets next to results
        #[arg(long)]
        lessons: Option<PathBuf>,
        /// Emit machine-readable JSON instead of plain text
        #[arg(long)]
        json: bool,
    },
    /// Evaluate one classifier against a gold set
    Eval {
        /// Persisted index file
        #[arg(long)]
        index: PathBuf,
        #[command(flatten)]
        data: DataArgs,
        /// K for top-K accuracy
        #[arg(long, default_value_t = 20)]
        top_k: usize,
        /// k for precision@k / recall@k
        #[arg(long, default_value_t = 10)]
        pr_k: usize,
        /// Retrieval cutoff per query
        #[arg(long, default_value_t = 20)]
        limit: usize,
    },
    /// Run the factorial configuration sweep
    Sweep {
        #[command(flatten)]
        data: DataArgs,
        /// "paper" for the full 88-point grid, or a path to a grid JSON file
        #[arg(long, default_value = "paper")]
        grid: String,
        /// Concurrent classifier builds
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Retrieval cutoff per query
        #[arg(long, default_value_t = 20)]
        limit: usize,
        /// LDA seed override (falls back to LLRECALL_SEED, then the grid's seed)
        #[arg(long)]
        seed: Option<u64>,
        /// Directory for sweep_report.csv, sweep_details.csv,
        /// sweep_rankings.csv and sweep.json
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Parameter-impact statistics over a finished sweep
    Stats {
        /// sweep.json produced by the sweep subcommand
        #[arg(long)]
        sweep: PathBuf,
        /// Model family: vsm, lsi or lda
        #[arg(long)]
        family: String,
        /// Parameter for Tukey HSD: pipeline, weight, similarity or topics.
        /// Omit together with --top-performers for the Wilcoxon comparisons.
        #[arg(long, conflicts_with = "top_performers")]
        param: Option<String>,
        /// Wilcoxon top-performer comparisons instead of HSD
        #[arg(long)]
        top_performers: bool,
        /// Metric: top20, map, p_at_10 or r_at_10
        #[arg(long, default_value = "top20")]
        metric: String,
        /// Output CSV file (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit ranked, descriptive, HSD and Wilcoxon tables for a sweep
    Report {
        /// sweep.json produced by the sweep subcommand
        #[arg(long)]
        sweep: PathBuf,
        /// Output format: csv or markdown
        #[arg(long, default_value = "markdown")]
        format: String,
        /// Output directory
        #[arg(long)]
        out_dir: PathBuf,
    },
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Io { .. } | Error::Persist { .. } => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    let stoplist = match &cli.stoplist {
        Some(path) => match Stoplist::from_file(path) {
            Ok(s) => s,
            Err(e) => return fail(e),
        },
        None => Stoplist::default(),
    };
    match run(cli.command, &stoplist) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(e),
    }
}

fn fail(e: Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(exit_code_for(&e))
}

fn env_seed() -> Option<u64> {
    std::env::var("LLRECALL_SEED").ok()?.parse().ok()
}

fn parse_pipeline(s: &str) -> Result<PipelineConfig, Error> {
    match s {
        "none" => Ok(PipelineConfig::NONE),
        "stem" => Ok(PipelineConfig::STEM),
        "stop" => Ok(PipelineConfig::STOP),
        "stem_stop" | "stem+stop" => Ok(PipelineConfig::STEM_STOP),
        other => Err(Error::InvalidConfig(format!("unknown pipeline {other:?}"))),
    }
}

fn parse_weight(s: &str) -> Result<WeightScheme, Error> {
    match s {
        "tfidf" | "tf_idf" => Ok(WeightScheme::TfIdf),
        "sublinear_tfidf" | "sublinear" => Ok(WeightScheme::SublinearTfIdf),
        "boolean" => Ok(WeightScheme::Boolean),
        other => Err(Error::InvalidConfig(format!("unknown weight {other:?}"))),
    }
}

fn parse_similarity(s: &str) -> Result<SimilarityKind, Error> {
    match s {
        "cosine" => Ok(SimilarityKind::Cosine),
        "overlap" => Ok(SimilarityKind::Overlap),
        other => Err(Error::InvalidConfig(format!("unknown similarity {other:?}"))),
    }
}

fn classifier_config(args: &ClassifierArgs) -> Result<ClassifierConfig, Error> {
    let model: ModelFamily = args.model.parse()?;
    let pipeline = parse_pipeline(&args.pipeline)?;
    let weight = args.weight.as_deref().map(parse_weight).transpose()?;
    let similarity = args.similarity.as_deref().map(parse_similarity).transpose()?;
    let seed = args.seed.or_else(env_seed).unwrap_or(42);
    let config = match model {
        ModelFamily::Vsm => ClassifierConfig {
            model,
            pipeline,
            weight: Some(weight.ok_or_else(|| Error::InvalidConfig("vsm requires --weight".into()))?),
            similarity: Some(
                similarity
                    .ok_or_else(|| Error::InvalidConfig("vsm requires --similarity".into()))?,
            ),
            topics: None,
            lda: None,
        },
        ModelFamily::Lsi => ClassifierConfig {
            model,
            pipeline,
            weight: Some(weight.ok_or_else(|| Error::InvalidConfig("lsi requires --weight".into()))?),
            similarity: None,
            topics: Some(
                args.topics
                    .ok_or_else(|| Error::InvalidConfig("lsi requires --topics".into()))?,
            ),
            lda: None,
        },
        ModelFamily::Lda => ClassifierConfig {
            model,
            pipeline,
            weight: None,
            similarity: None,
            topics: Some(
                args.topics
                    .ok_or_else(|| Error::InvalidConfig("lda requires --topics".into()))?,
            ),
            lda: Some(harness::LdaExtras {
                seed,
                ..harness::LdaExtras::default()
            }),
        },
    };
    Ok(config)
}

fn write_file(path: &Path, content: &str) -> Result<(), Error> {
    std::fs::write(path, content).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn snippet(text: &str) -> String {
    let flat = text.split_whitespace().collect::<Vec<_>>().join(" ");
    if flat.chars().count() > 72 {
        let cut: String = flat.chars().take(72).collect();
        format!("{cut}...")
    } else {
        flat
    }
}

fn run(command: Command, stoplist: &Stoplist) -> Result<(), Error> {
    match command {
        Command::Ingest(data) => {
            let lessons = corpus::load_lessons(&data.lessons)?;
            let queries = corpus::load_queries(&data.queries)?;
            corpus::load_goldset(&data.gold, &lessons, &queries)?;
            let summary = corpus::summarize(&lessons, &queries);
            println!("lessons: {}", summary.lesson_count);
            println!("queries: {}", summary.query_count);
            for (project, count) in &summary.project_counts {
                println!("project {project}: {count} lessons");
            }
            println!("gold set: valid");
            Ok(())
        }
        Command::Build {
            lessons,
            classifier,
            out,
        } => {
            let lessons = corpus::load_lessons(&lessons)?;
            let config = classifier_config(&classifier)?;
            let built = harness::build_classifier(&config, &lessons, stoplist)?;
            harness::persist_index(&built, &out)?;
            println!("built {} -> {}", config.id(), out.display());
            Ok(())
        }
        Command::Query {
            index,
            text,
            query_file,
            limit,
            lessons,
            json,
        } => {
            let classifier = harness::load_index(&index)?;
            let texts: HashMap<String, String> = match &lessons {
                Some(path) => corpus::load_lessons(path)?
                    .into_iter()
                    .map(|l| (l.id, l.text))
                    .collect(),
                None => HashMap::new(),
            };
            let queries: Vec<(String, String)> = match (text, query_file) {
                (Some(t), None) => vec![("query".to_string(), t)],
                (None, Some(path)) => corpus::load_queries(&path)?
                    .into_iter()
                    .map(|q| (q.id, q.text))
                    .collect(),
                _ => {
                    return Err(Error::InvalidConfig(
                        "provide exactly one of --text or --query-file".into(),
                    ))
                }
            };
            for (qid, qtext) in queries {
                let ranked = classifier.query(&qid, &qtext, limit, stoplist);
                if json {
                    println!("{}", serde_json::to_string(&ranked)?);
                    continue;
                }
                println!("query {qid}:");
                if ranked.is_empty() {
                    println!("  no relevant lessons");
                    continue;
                }
                for (rank, e) in ranked.entries.iter().enumerate() {
                    let extra = texts
                        .get(&e.lesson_id)
                        .map(|t| format!("  {}", snippet(t)))
                        .unwrap_or_default();
                    println!("  {:>2}. {} {:.6}{}", rank + 1, e.lesson_id, e.score, extra);
                }
            }
            Ok(())
        }
        Command::Eval {
            index,
            data,
            top_k,
            pr_k,
            limit,
        } => {
            let lessons = corpus::load_lessons(&data.lessons)?;
            let queries = corpus::load_queries(&data.queries)?;
            let gold = corpus::load_goldset(&data.gold, &lessons, &queries)?;
            let classifier = harness::load_index(&index)?;
            let rankings: Vec<_> = queries
                .iter()
                .map(|q| classifier.query(&q.id, &q.text, limit, stoplist))
                .collect();
            let config = MetricConfig {
                top_k_cutoff: top_k,
                pr_cutoff: pr_k,
            };
            let eval = llrecall::metrics::evaluate("index", &rankings, &gold, &config)?;
            println!("top{}: {:.6}", top_k, eval.top_k_accuracy);
            println!("map: {:.6}", eval.map);
            println!("p@{}: {:.6}", pr_k, eval.mean_precision_at_k);
            println!("r@{}: {:.6}", pr_k, eval.mean_recall_at_k);
            Ok(())
        }
        Command::Sweep {
            data,
            grid,
            workers,
            limit,
            seed,
            out_dir,
        } => {
            let lessons = corpus::load_lessons(&data.lessons)?;
            let queries = corpus::load_queries(&data.queries)?;
            let gold = corpus::load_goldset(&data.gold, &lessons, &queries)?;
            let mut grid = match grid.as_str() {
                "paper" => Grid::paper(),
                path => Grid::from_file(Path::new(path))?,
            };
            if let Some(seed) = seed.or_else(env_seed) {
                grid = grid.with_seed(seed);
            }
            let report_data = harness::run_sweep(
                &lessons,
                &queries,
                &gold,
                &grid,
                &MetricConfig::default(),
                limit,
                workers,
                stoplist,
            )?;
            std::fs::create_dir_all(&out_dir).map_err(|source| Error::Io {
                path: out_dir.clone(),
                source,
            })?;
            write_file(&out_dir.join("sweep_report.csv"), &report::sweep_report_csv(&report_data))?;
            write_file(
                &out_dir.join("sweep_details.csv"),
                &report::sweep_details_csv(&report_data),
            )?;
            write_file(
                &out_dir.join("sweep_rankings.csv"),
                &report::sweep_rankings_csv(&report_data),
            )?;
            write_file(
                &out_dir.join("sweep.json"),
                &serde_json::to_string(&report_data)?,
            )?;
            let failed = report_data.results.iter().filter(|r| r.error.is_some()).count();
            println!(
                "swept {} configurations ({} failed) -> {}",
                report_data.results.len(),
                failed,
                out_dir.display()
            );
            Ok(())
        }
        Command::Stats {
            sweep,
            family,
            param,
            top_performers,
            metric,
            out,
        } => {
            let report_data = load_sweep(&sweep)?;
            let family: ModelFamily = family.parse()?;
            let metric: Metric = metric.parse()?;
            let csv = if top_performers {
                let comparisons =
                    harness::top_performer_comparison(&report_data, family, metric)?;
                report::wilcoxon_csv(&comparisons)
            } else {
                let param: Parameter = param
                    .ok_or_else(|| {
                        Error::InvalidConfig("provide --param or --top-performers".into())
                    })?
                    .parse()?;
                let hsd = harness::parameter_impact(&report_data, family, param, metric)?;
                report::hsd_csv(&hsd)
            };
            match out {
                Some(path) => write_file(&path, &csv)?,
                None => print!("{csv}"),
            }
            Ok(())
        }
        Command::Report {
            sweep,
            format,
            out_dir,
        } => {
            let report_data = load_sweep(&sweep)?;
            std::fs::create_dir_all(&out_dir).map_err(|source| Error::Io {
                path: out_dir.clone(),
                source,
            })?;
            match format.as_str() {
                "markdown" => emit_markdown_report(&report_data, &out_dir),
                "csv" => emit_csv_report(&report_data, &out_dir),
                other => Err(Error::InvalidConfig(format!("unknown format {other:?}"))),
            }
        }
    }
}

fn load_sweep(path: &Path) -> Result<SweepReport, Error> {
    let content = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(serde_json::from_str(&content)?)
}

const REPORT_METRICS: [Metric; 2] = [Metric::Top20, Metric::Map];

fn family_parameters(family: ModelFamily) -> Vec<Parameter> {
    match family {
        ModelFamily::Vsm => vec![Parameter::Pipeline, Parameter::Weight, Parameter::Similarity],
        ModelFamily::Lsi => vec![Parameter::Pipeline, Parameter::Weight, Parameter::Topics],
        ModelFamily::Lda => vec![Parameter::Pipeline, Parameter::Topics],
    }
}

fn emit_markdown_report(data: &SweepReport, out_dir: &Path) -> Result<(), Error> {
    let mut md = String::from("# Sweep report\n\n");
    for metric in REPORT_METRICS {
        md.push_str(&report::ranked_table_markdown(data, metric));
        md.push_str(&report::descriptive_stats_markdown(data, metric));
    }
    md.push_str("## Parameter impact (Tukey HSD)\n\n");
    for family in [ModelFamily::Vsm, ModelFamily::Lsi, ModelFamily::Lda] {
        for param in family_parameters(family) {
            for metric in REPORT_METRICS {
                if let Ok(hsd) = harness::parameter_impact(data, family, param, metric) {
                    let title =
                        format!("{} / {} / {}", family.label(), param.label(), metric.label());
                    md.push_str(&report::hsd_markdown(&hsd, &title));
                }
            }
        }
    }
    md.push_str("## Top-performer comparisons (Wilcoxon)\n\n");
    for family in [ModelFamily::Vsm, ModelFamily::Lsi, ModelFamily::Lda] {
        for metric in REPORT_METRICS {
            if let Ok(cmps) = harness::top_performer_comparison(data, family, metric) {
                let title = format!("{} / {}", family.label(), metric.label());
                md.push_str(&report::wilcoxon_markdown(&cmps, &title));
            }
        }
    }
    let path = out_dir.join("report.md");
    write_file(&path, &md)?;
    println!("wrote {}", path.display());
    Ok(())
}

fn emit_csv_report(data: &SweepReport, out_dir: &Path) -> Result<(), Error> {
    write_file(&out_dir.join("sweep_report.csv"), &report::sweep_report_csv(data))?;
    for family in [ModelFamily::Vsm, ModelFamily::Lsi, ModelFamily::Lda] {
        for param in family_parameters(family) {
            for metric in REPORT_METRICS {
                if let Ok(hsd) = harness::parameter_impact(data, family, param, metric) {
                    let name = format!(
                        "hsd_{}_{}_{}.csv",
                        family.label(),
                        param.label(),
                        metric.label()
                    );
                    write_file(&out_dir.join(name), &report::hsd_csv(&hsd))?;
                }
            }
        }
        for metric in REPORT_METRICS {
            if let Ok(cmps) = harness::top_performer_comparison(data, family, metric) {
                let name = format!("wilcoxon_{}_{}.csv", family.label(), metric.label());
                write_file(&out_dir.join(name), &report::wilcoxon_csv(&cmps))?;
            }
        }
    }
    println!("wrote CSV tables to {}", out_dir.display());
    Ok(())
}
