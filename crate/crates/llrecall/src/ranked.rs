//! Deterministic ranked retrieval results.

use serde::{Deserialize, Serialize};

/// Score-descending result list for one query. Ties are broken by lesson id
/// ascending; zero-score documents are excluded before construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedList {
    pub query_id: String,
    pub entries: Vec<RankedEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedEntry {
    pub lesson_id: String,
    pub score: f64,
}

impl RankedList {
    /// Sorts (score desc, id asc), truncates to `limit`. Callers filter out
    /// zero scores beforehand; scores must be finite.
    pub fn from_scores(query_id: &str, mut scored: Vec<(String, f64)>, limit: usize) -> RankedList {
        scored.sort_by(|a, b| {
            b.1.partial_cmp(&a.1)
                .expect("scores are finite")
                .then_with(|| a.0.cmp(&b.0))
        });
        scored.truncate(limit);
        RankedList {
            query_id: query_id.to_string(),
            entries: scored
                .into_iter()
                .map(|(lesson_id, score)| RankedEntry { lesson_id, score })
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorts_descending_with_id_tiebreak() {
        let list = RankedList::from_scores(
            "Q1",
            vec![
                ("L2".into(), 0.5),
                ("L1".into(), 0.5),
                ("L3".into(), 0.9),
            ],
            10,
        );
        let ids: Vec<&str> = list.entries.iter().map(|e| e.lesson_id.as_str()).collect();
        assert_eq!(ids, ["L3", "L1", "L2"]);
    }

    #[test]
    fn truncates_to_limit() {
        let scored = (0..30).map(|i| (format!("L{i:02}"), 1.0 / (i + 1) as f64)).collect();
        let list = RankedList::from_scores("Q1", scored, 20);
        assert_eq!(list.len(), 20);
    }
}
