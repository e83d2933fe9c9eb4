//! Loading and validation of lesson records, query records and the gold set.
//!
//! Lessons and queries are JSON-Lines (one object per line); the gold set is
//! a single JSON object mapping query ids to relevant lesson ids. Loaded
//! collections are immutable and preserve file order.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LessonRecord {
    pub id: String,
    pub project_id: String,
    pub text: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QueryKind {
    Issue,
    Risk,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryRecord {
    pub id: String,
    pub project_id: String,
    pub kind: QueryKind,
    pub text: String,
}

/// Query id -> non-empty set of relevant lesson ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldSet {
    pub relevance: BTreeMap<String, BTreeSet<String>>,
}

impl GoldSet {
    pub fn relevant(&self, query_id: &str) -> Option<&BTreeSet<String>> {
        self.relevance.get(query_id)
    }

    pub fn len(&self) -> usize {
        self.relevance.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relevance.is_empty()
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorpusSummary {
    pub lesson_count: usize,
    pub query_count: usize,
    pub project_counts: BTreeMap<String, usize>,
}

pub fn summarize(lessons: &[LessonRecord], queries: &[QueryRecord]) -> CorpusSummary {
    let mut project_counts = BTreeMap::new();
    for l in lessons {
        *project_counts.entry(l.project_id.clone()).or_insert(0) += 1;
    }
    CorpusSummary {
        lesson_count: lessons.len(),
        query_count: queries.len(),
        project_counts,
    }
}

fn read_to_string(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn parse_jsonl<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<Vec<(usize, T)>> {
    let content = read_to_string(path)?;
    let mut out = Vec::new();
    for (lineno, line) in content.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let rec = serde_json::from_str(line).map_err(|e| Error::MalformedLine {
            path: path.to_path_buf(),
            line: lineno + 1,
            message: e.to_string(),
        })?;
        out.push((lineno + 1, rec));
    }
    Ok(out)
}

fn check_unique_and_nonempty(id: &str, text: &str, seen: &mut HashSet<String>) -> Result<()> {
    if !seen.insert(id.to_string()) {
        return Err(Error::DuplicateId { id: id.to_string() });
    }
    if text.trim().is_empty() {
        return Err(Error::EmptyText { id: id.to_string() });
    }
    Ok(())
}

pub fn load_lessons(path: &Path) -> Result<Vec<LessonRecord>> {
    let records: Vec<(usize, LessonRecord)> = parse_jsonl(path)?;
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(records.len());
    for (_, rec) in records {
        check_unique_and_nonempty(&rec.id, &rec.text, &mut seen)?;
        out.push(rec);
    }
    Ok(out)
}

pub fn load_queries(path: &Path) -> Result<Vec<QueryRecord>> {
    // kind is validated structurally by serde; map the failure to a clearer
    // error when the line is otherwise well-formed.
    let content = read_to_string(path)?;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (lineno, line) in content.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let rec: QueryRecord = match serde_json::from_str(line) {
            Ok(rec) => rec,
            Err(e) => {
                // distinguish a bad `kind` value from general malformation
                if let Ok(v) = serde_json::from_str::<serde_json::Value>(line) {
                    if let Some(kind) = v.get("kind").and_then(|k| k.as_str()) {
                        if kind != "issue" && kind != "risk" {
                            return Err(Error::InvalidKind {
                                kind: kind.to_string(),
                            });
                        }
                    }
                }
                return Err(Error::MalformedLine {
                    path: path.to_path_buf(),
                    line: lineno + 1,
                    message: e.to_string(),
                });
            }
        };
        check_unique_and_nonempty(&rec.id, &rec.text, &mut seen)?;
        out.push(rec);
    }
    Ok(out)
}

pub fn load_goldset(
    path: &Path,
    lessons: &[LessonRecord],
    queries: &[QueryRecord],
) -> Result<GoldSet> {
    let content = read_to_string(path)?;
    let raw: BTreeMap<String, Vec<String>> = serde_json::from_str(&content)?;
    validate_goldset(raw, lessons, queries)
}

/// Validate an already-parsed relevance map against the loaded corpora.
pub fn validate_goldset(
    raw: BTreeMap<String, Vec<String>>,
    lessons: &[LessonRecord],
    queries: &[QueryRecord],
) -> Result<GoldSet> {
    let lesson_ids: HashSet<&str> = lessons.iter().map(|l| l.id.as_str()).collect();
    let query_ids: HashSet<&str> = queries.iter().map(|q| q.id.as_str()).collect();
    let mut relevance = BTreeMap::new();
    for (qid, rels) in raw {
        if !query_ids.contains(qid.as_str()) {
            return Err(Error::DanglingReference {
                what: "query",
                id: qid,
            });
        }
        if rels.is_empty() {
            return Err(Error::EmptyRelevantSet { id: qid });
        }
        let mut set = BTreeSet::new();
        for lid in rels {
            if !lesson_ids.contains(lid.as_str()) {
                return Err(Error::DanglingReference {
                    what: "lesson",
                    id: lid,
                });
            }
            set.insert(lid);
        }
        relevance.insert(qid, set);
    }
    Ok(GoldSet { relevance })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_tmp(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f
    }

    #[test]
    fn loads_lessons_in_file_order() {
        let f = write_tmp(
            r#"{"id":"L1","project_id":"P1","text":"first lesson"}
{"id":"L2","project_id":"P1","text":"second lesson"}
"#,
        );
        let lessons = load_lessons(f.path()).unwrap();
        assert_eq!(lessons.len(), 2);
        assert_eq!(lessons[0].id, "L1");
        assert_eq!(lessons[1].id, "L2");
    }

    #[test]
    fn duplicate_lesson_id_is_rejected() {
        let f = write_tmp(
            r#"{"id":"L1","project_id":"P1","text":"a"}
{"id":"L1","project_id":"P1","text":"b"}
"#,
        );
        let err = load_lessons(f.path()).unwrap_err();
        assert!(matches!(err, Error::DuplicateId { ref id } if id == "L1"), "{err}");
    }

    #[test]
    fn empty_text_is_rejected() {
        let f = write_tmp(r#"{"id":"L1","project_id":"P1","text":"   "}"#);
        assert!(matches!(
            load_lessons(f.path()).unwrap_err(),
            Error::EmptyText { .. }
        ));
    }

    #[test]
    fn malformed_line_reports_line_number() {
        let f = write_tmp(
            r#"{"id":"L1","project_id":"P1","text":"ok"}
not json
"#,
        );
        match load_lessons(f.path()).unwrap_err() {
            Error::MalformedLine { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn missing_file_is_io_error() {
        assert!(matches!(
            load_lessons(Path::new("/nonexistent/lessons.jsonl")).unwrap_err(),
            Error::Io { .. }
        ));
    }

    #[test]
    fn query_kind_parses() {
        let f = write_tmp(r#"{"id":"Q1","project_id":"P1","kind":"risk","text":"a risk"}"#);
        let queries = load_queries(f.path()).unwrap();
        assert_eq!(queries[0].kind, QueryKind::Risk);
    }

    #[test]
    fn invalid_query_kind_is_rejected() {
        let f = write_tmp(r#"{"id":"Q1","project_id":"P1","kind":"bug","text":"a bug"}"#);
        assert!(matches!(
            load_queries(f.path()).unwrap_err(),
            Error::InvalidKind { ref kind } if kind == "bug"
        ));
    }

    fn small_corpus() -> (Vec<LessonRecord>, Vec<QueryRecord>) {
        let lessons = vec![
            LessonRecord {
                id: "L1".into(),
                project_id: "P1".into(),
                text: "x".into(),
            },
            LessonRecord {
                id: "L3".into(),
                project_id: "P1".into(),
                text: "y".into(),
            },
        ];
        let queries = vec![QueryRecord {
            id: "Q1".into(),
            project_id: "P1".into(),
            kind: QueryKind::Issue,
            text: "z".into(),
        }];
        (lessons, queries)
    }

    #[test]
    fn goldset_resolves_references() {
        let (lessons, queries) = small_corpus();
        let f = write_tmp(r#"{"Q1": ["L1", "L3"]}"#);
        let gold = load_goldset(f.path(), &lessons, &queries).unwrap();
        assert_eq!(gold.len(), 1);
        assert_eq!(gold.relevant("Q1").unwrap().len(), 2);
    }

    #[test]
    fn goldset_rejects_dangling_query() {
        let (lessons, queries) = small_corpus();
        let f = write_tmp(r#"{"Q9": ["L1"]}"#);
        assert!(matches!(
            load_goldset(f.path(), &lessons, &queries).unwrap_err(),
            Error::DanglingReference { what: "query", ref id } if id == "Q9"
        ));
    }

    #[test]
    fn goldset_rejects_dangling_lesson() {
        let (lessons, queries) = small_corpus();
        let f = write_tmp(r#"{"Q1": ["L9"]}"#);
        assert!(matches!(
            load_goldset(f.path(), &lessons, &queries).unwrap_err(),
            Error::DanglingReference { what: "lesson", .. }
        ));
    }

    #[test]
    fn goldset_rejects_empty_relevant_set() {
        let (lessons, queries) = small_corpus();
        let f = write_tmp(r#"{"Q1": []}"#);
        assert!(matches!(
            load_goldset(f.path(), &lessons, &queries).unwrap_err(),
            Error::EmptyRelevantSet { .. }
        ));
    }
}
