//! Gold-set evaluation: top-K accuracy, average precision / MAP,
//! precision@k and recall@k.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::corpus::GoldSet;
use crate::error::{Error, Result};
use crate::ranked::RankedList;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricConfig {
    /// K for top-K accuracy (default 20).
    pub top_k_cutoff: usize,
    /// k for precision@k / recall@k (default 10).
    pub pr_cutoff: usize,
}

impl Default for MetricConfig {
    fn default() -> Self {
        MetricConfig {
            top_k_cutoff: 20,
            pr_cutoff: 10,
        }
    }
}

/// Per-query metric values for one classifier.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QueryMetrics {
    pub query_id: String,
    pub avp: f64,
    pub hit_at_k: f64,
    pub precision_at_k: f64,
    pub recall_at_k: f64,
}

/// Metric bundle for one classifier configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub config_id: String,
    pub per_query: Vec<QueryMetrics>,
    pub top_k_accuracy: f64,
    pub map: f64,
    pub mean_precision_at_k: f64,
    pub mean_recall_at_k: f64,
}

fn relevant_in_prefix(ranked: &RankedList, relevant: &BTreeSet<String>, k: usize) -> usize {
    ranked
        .entries
        .iter()
        .take(k)
        .filter(|e| relevant.contains(&e.lesson_id))
        .count()
}

/// 1 iff any of the first min(k, n) entries is relevant.
pub fn topk_hit(ranked: &RankedList, relevant: &BTreeSet<String>, k: usize) -> u8 {
    u8::from(relevant_in_prefix(ranked, relevant, k) > 0)
}

/// Average precision: p(j) summed over relevant ranks, divided by |Rel|.
/// Relevant documents absent from the ranking contribute 0.
pub fn avp(ranked: &RankedList, relevant: &BTreeSet<String>) -> f64 {
    let mut found = 0usize;
    let mut sum = 0.0;
    for (j, entry) in ranked.entries.iter().enumerate() {
        if relevant.contains(&entry.lesson_id) {
            found += 1;
            sum += found as f64 / (j + 1) as f64;
        }
    }
    sum / relevant.len() as f64
}

/// Denominator is k even when fewer than k documents were retrieved.
pub fn precision_at_k(ranked: &RankedList, relevant: &BTreeSet<String>, k: usize) -> f64 {
    relevant_in_prefix(ranked, relevant, k) as f64 / k as f64
}

pub fn recall_at_k(ranked: &RankedList, relevant: &BTreeSet<String>, k: usize) -> f64 {
    relevant_in_prefix(ranked, relevant, k) as f64 / relevant.len() as f64
}

fn mean(values: impl Iterator<Item = f64>) -> f64 {
    let (mut sum, mut n) = (0.0, 0usize);
    for v in values {
        sum += v;
        n += 1;
    }
    sum / n as f64
}

/// Fraction of queries with at least one relevant document in the top k.
pub fn top_k_accuracy(lists: &[RankedList], gold: &GoldSet, k: usize) -> Result<f64> {
    let mut hits = 0usize;
    for list in lists {
        let relevant = gold
            .relevant(&list.query_id)
            .ok_or_else(|| Error::QueryNotInGold {
                id: list.query_id.clone(),
            })?;
        hits += topk_hit(list, relevant, k) as usize;
    }
    Ok(hits as f64 / lists.len() as f64)
}

/// Mean of avp over queries.
pub fn map_metric(lists: &[RankedList], gold: &GoldSet) -> Result<f64> {
    let mut sum = 0.0;
    for list in lists {
        let relevant = gold
            .relevant(&list.query_id)
            .ok_or_else(|| Error::QueryNotInGold {
                id: list.query_id.clone(),
            })?;
        sum += avp(list, relevant);
    }
    Ok(sum / lists.len() as f64)
}

/// Full per-query and aggregate evaluation of one classifier's rankings.
/// Every query must appear in the gold set.
pub fn evaluate(
    config_id: &str,
    lists: &[RankedList],
    gold: &GoldSet,
    config: &MetricConfig,
) -> Result<EvalReport> {
    let mut per_query = Vec::with_capacity(lists.len());
    for list in lists {
        let relevant = gold
            .relevant(&list.query_id)
            .ok_or_else(|| Error::QueryNotInGold {
                id: list.query_id.clone(),
            })?;
        per_query.push(QueryMetrics {
            query_id: list.query_id.clone(),
            avp: avp(list, relevant),
            hit_at_k: topk_hit(list, relevant, config.top_k_cutoff) as f64,
            precision_at_k: precision_at_k(list, relevant, config.pr_cutoff),
            recall_at_k: recall_at_k(list, relevant, config.pr_cutoff),
        });
    }
    Ok(EvalReport {
        config_id: config_id.to_string(),
        top_k_accuracy: mean(per_query.iter().map(|q| q.hit_at_k)),
        map: mean(per_query.iter().map(|q| q.avp)),
        mean_precision_at_k: mean(per_query.iter().map(|q| q.precision_at_k)),
        mean_recall_at_k: mean(per_query.iter().map(|q| q.recall_at_k)),
        per_query,
    })
}
