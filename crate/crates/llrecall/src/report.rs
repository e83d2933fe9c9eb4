//! Report emission: sweep CSVs, ranked classifier tables, descriptive
//! statistics, HSD letter tables and Wilcoxon tables.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::harness::{Metric, ModelFamily, SweepReport, TopPerformerComparison};
use crate::stats::HsdResult;

/// min / quartiles / mean / median / max of a sample, using the inclusive
/// (median-splitting) quartile definition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DescriptiveStats {
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub mean: f64,
    pub q3: f64,
    pub max: f64,
}

fn median_of(sorted: &[f64]) -> f64 {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
    }
}

pub fn descriptive_stats(values: &[f64]) -> Option<DescriptiveStats> {
    if values.is_empty() {
        return None;
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = sorted.len();
    let mid = n / 2;
    // inclusive definition: an odd-length sample keeps the median in both halves
    let (lower, upper) = if n % 2 == 1 {
        (&sorted[..=mid], &sorted[mid..])
    } else {
        (&sorted[..mid], &sorted[mid..])
    };
    Some(DescriptiveStats {
        min: sorted[0],
        q1: median_of(lower),
        median: median_of(&sorted),
        mean: sorted.iter().sum::<f64>() / n as f64,
        q3: median_of(upper),
        max: sorted[n - 1],
    })
}

fn fmt_metric(v: f64) -> String {
    format!("{v:.6}")
}

/// sweep_report.csv: one row per classifier configuration.
pub fn sweep_report_csv(report: &SweepReport) -> String {
    let mut out = String::from(
        "config_id,model,pipeline,weight,similarity,topics,seed,top20,map,p_at_10,r_at_10,wall_ms\n",
    );
    for r in &report.results {
        let c = &r.config;
        let (top20, map, p10, r10) = match &r.eval {
            Some(e) => (
                fmt_metric(e.top_k_accuracy),
                fmt_metric(e.map),
                fmt_metric(e.mean_precision_at_k),
                fmt_metric(e.mean_recall_at_k),
            ),
            None => {
                let err = "error".to_string();
                (err.clone(), err.clone(), err.clone(), err)
            }
        };
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            r.config_id,
            c.model.label(),
            c.pipeline.label(),
            c.weight.map_or("", |w| w.label()),
            c.similarity.map_or("", |s| s.label()),
            c.topics.map_or(String::new(), |t| t.to_string()),
            c.lda.map_or(String::new(), |l| l.seed.to_string()),
            top20,
            map,
            p10,
            r10,
            r.wall_ms,
        );
    }
    out
}

/// sweep_details.csv: per-query metric values for every configuration.
pub fn sweep_details_csv(report: &SweepReport) -> String {
    let mut out = String::from("config_id,query_id,avp,hit_at_20,p_at_10,r_at_10\n");
    for r in &report.results {
        if let Some(eval) = &r.eval {
            for q in &eval.per_query {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    r.config_id,
                    q.query_id,
                    fmt_metric(q.avp),
                    q.hit_at_k as u8,
                    fmt_metric(q.precision_at_k),
                    fmt_metric(q.recall_at_k),
                );
            }
        }
    }
    out
}

/// sweep_rankings.csv: the raw ranked lists behind the metrics, for audit.
pub fn sweep_rankings_csv(report: &SweepReport) -> String {
    let mut out = String::from("config_id,query_id,rank,lesson_id,score\n");
    for r in &report.results {
        for list in &r.rankings {
            for (rank, e) in list.entries.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    r.config_id,
                    list.query_id,
                    rank + 1,
                    e.lesson_id,
                    e.score,
                );
            }
        }
    }
    out
}

/// Classifiers of one family sorted by a metric, best first; ties break on
/// config id.
fn ranked_rows(report: &SweepReport, family: ModelFamily, metric: Metric) -> Vec<(String, f64)> {
    let mut rows: Vec<(String, f64)> = report
        .results
        .iter()
        .filter(|r| r.config.model == family)
        .filter_map(|r| {
            r.eval
                .as_ref()
                .map(|e| (r.config_id.clone(), metric.aggregate(e)))
        })
        .collect();
    rows.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then_with(|| a.0.cmp(&b.0)));
    rows
}

/// Markdown ranked table per family (best and worst ends of the sweep).
pub fn ranked_table_markdown(report: &SweepReport, metric: Metric) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "## Classifier ranking by {}\n", metric.label());
    for family in [ModelFamily::Vsm, ModelFamily::Lsi, ModelFamily::Lda] {
        let rows = ranked_rows(report, family, metric);
        if rows.is_empty() {
            continue;
        }
        let _ = writeln!(out, "### {}\n", family.label());
        let _ = writeln!(out, "| rank | configuration | {} |", metric.label());
        let _ = writeln!(out, "|-----:|---------------|------:|");
        for (i, (id, v)) in rows.iter().enumerate() {
            let _ = writeln!(out, "| {} | {} | {} |", i + 1, id, fmt_metric(*v));
        }
        out.push('\n');
    }
    out
}

/// Markdown descriptive-statistics table per family.
pub fn descriptive_stats_markdown(report: &SweepReport, metric: Metric) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "## Descriptive statistics of {}\n", metric.label());
    let _ = writeln!(out, "| family | min | q1 | median | mean | q3 | max |");
    let _ = writeln!(out, "|--------|----:|---:|-------:|-----:|---:|----:|");
    for family in [ModelFamily::Vsm, ModelFamily::Lsi, ModelFamily::Lda] {
        let values: Vec<f64> = ranked_rows(report, family, metric)
            .into_iter()
            .map(|(_, v)| v)
            .collect();
        if let Some(s) = descriptive_stats(&values) {
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} | {} | {} | {} |",
                family.label(),
                fmt_metric(s.min),
                fmt_metric(s.q1),
                fmt_metric(s.median),
                fmt_metric(s.mean),
                fmt_metric(s.q3),
                fmt_metric(s.max),
            );
        }
    }
    out.push('\n');
    out
}

/// hsd_<family>_<param>_<metric>.csv: letter group, mean, parameter value.
pub fn hsd_csv(result: &HsdResult) -> String {
    let mut out = String::from("letters,mean,value\n");
    for g in &result.groups {
        let _ = writeln!(out, "{},{},{}", g.letters, fmt_metric(g.mean), g.label);
    }
    out
}

pub fn hsd_markdown(result: &HsdResult, title: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "### {title}\n");
    let _ = writeln!(out, "| group | mean | value |");
    let _ = writeln!(out, "|-------|-----:|-------|");
    for g in &result.groups {
        let _ = writeln!(out, "| {} | {} | {} |", g.letters, fmt_metric(g.mean), g.label);
    }
    out.push('\n');
    out
}

/// wilcoxon_<family>_<metric>.csv: one row per preprocessing comparison.
pub fn wilcoxon_csv(comparisons: &[TopPerformerComparison]) -> String {
    let mut out = String::from("comparison,config_id,baseline_config_id,n_effective,w,p_value\n");
    for c in comparisons {
        let _ = writeln!(
            out,
            "{} vs none,{},{},{},{},{}",
            c.pipeline,
            c.config_id,
            c.baseline_config_id,
            c.result.n_effective,
            c.result.statistic,
            fmt_metric(c.result.p_value),
        );
    }
    out
}

pub fn wilcoxon_markdown(comparisons: &[TopPerformerComparison], title: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "### {title}\n");
    let _ = writeln!(out, "| comparison | top performer | baseline | p-value |");
    let _ = writeln!(out, "|------------|---------------|----------|--------:|");
    for c in comparisons {
        let _ = writeln!(
            out,
            "| {} vs none | {} | {} | {} |",
            c.pipeline,
            c.config_id,
            c.baseline_config_id,
            fmt_metric(c.result.p_value),
        );
    }
    out.push('\n');
    out
}
