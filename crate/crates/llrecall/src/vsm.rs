//! Vector space model: term weighting, document/query vectors, cosine and
//! overlap similarity, ranked retrieval.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::corpus::LessonRecord;
use crate::error::{Error, Result};
use crate::ranked::RankedList;
use crate::textprep::{preprocess, PipelineConfig, Stoplist};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WeightScheme {
    #[serde(rename = "boolean")]
    Boolean,
    #[serde(rename = "tfidf")]
    TfIdf,
    #[serde(rename = "sublinear_tfidf")]
    SublinearTfIdf,
}

impl WeightScheme {
    pub const ALL: [WeightScheme; 3] = [
        WeightScheme::TfIdf,
        WeightScheme::SublinearTfIdf,
        WeightScheme::Boolean,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            WeightScheme::Boolean => "boolean",
            WeightScheme::TfIdf => "tfidf",
            WeightScheme::SublinearTfIdf => "sublinear_tfidf",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SimilarityKind {
    Cosine,
    Overlap,
}

impl SimilarityKind {
    pub const ALL: [SimilarityKind; 2] = [SimilarityKind::Cosine, SimilarityKind::Overlap];

    pub fn label(&self) -> &'static str {
        match self {
            SimilarityKind::Cosine => "cosine",
            SimilarityKind::Overlap => "overlap",
        }
    }
}

/// Dense term index in first-appearance order, with document frequencies.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Vocabulary {
    terms: Vec<String>,
    #[serde(skip)]
    index: HashMap<String, usize>,
    document_frequency: Vec<usize>,
}

impl Vocabulary {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term(&self, idx: usize) -> &str {
        &self.terms[idx]
    }

    pub fn index_of(&self, term: &str) -> Option<usize> {
        self.index.get(term).copied()
    }

    pub fn df(&self, idx: usize) -> usize {
        self.document_frequency[idx]
    }

    /// Rebuilds the term->index map after deserialization.
    pub fn rebuild_index(&mut self) {
        self.index = self
            .terms
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
    }
}

pub fn build_vocabulary(processed_docs: &[Vec<String>]) -> Result<Vocabulary> {
    if processed_docs.iter().all(|d| d.is_empty()) {
        return Err(Error::EmptyCorpus);
    }
    let mut vocab = Vocabulary {
        terms: Vec::new(),
        index: HashMap::new(),
        document_frequency: Vec::new(),
    };
    for doc in processed_docs {
        let mut seen_here = Vec::new();
        for token in doc {
            let idx = match vocab.index.get(token) {
                Some(&i) => i,
                None => {
                    let i = vocab.terms.len();
                    vocab.terms.push(token.clone());
                    vocab.index.insert(token.clone(), i);
                    vocab.document_frequency.push(0);
                    i
                }
            };
            if !seen_here.contains(&idx) {
                seen_here.push(idx);
            }
        }
        for idx in seen_here {
            vocab.document_frequency[idx] += 1;
        }
    }
    Ok(vocab)
}

/// Term weight for one (term, document) cell.
///
/// boolean: 1 if present; tf-idf: tf * log10(N/df); sublinear:
/// (1 + log10 tf) * log10(N/df).
pub fn weight(tf: usize, df: usize, n_docs: usize, scheme: WeightScheme) -> Result<f64> {
    if df == 0 || df > n_docs {
        return Err(Error::InvalidConfig(format!(
            "document frequency {df} out of range 1..={n_docs}"
        )));
    }
    if tf == 0 {
        return Ok(0.0);
    }
    let idf = (n_docs as f64 / df as f64).log10();
    Ok(match scheme {
        WeightScheme::Boolean => 1.0,
        WeightScheme::TfIdf => tf as f64 * idf,
        WeightScheme::SublinearTfIdf => (1.0 + (tf as f64).log10()) * idf,
    })
}

/// One sparse vector: (term index, weight) pairs sorted by term index, with
/// exact zeros dropped.
pub type SparseVec = Vec<(usize, f64)>;

/// Sparse terms-by-documents weight matrix, stored document-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermDocMatrix {
    pub scheme: WeightScheme,
    pub n_terms: usize,
    /// columns[j] = sparse weight vector of document j
    pub columns: Vec<SparseVec>,
}

impl TermDocMatrix {
    pub fn n_docs(&self) -> usize {
        self.columns.len()
    }
}

fn term_counts(tokens: &[String], vocab: &Vocabulary) -> Vec<(usize, usize)> {
    let mut counts: HashMap<usize, usize> = HashMap::new();
    for t in tokens {
        if let Some(idx) = vocab.index_of(t) {
            *counts.entry(idx).or_insert(0) += 1;
        }
    }
    let mut counts: Vec<(usize, usize)> = counts.into_iter().collect();
    counts.sort_unstable();
    counts
}

fn weigh_counts(
    counts: &[(usize, usize)],
    vocab: &Vocabulary,
    n_docs: usize,
    scheme: WeightScheme,
) -> Result<SparseVec> {
    let mut out = Vec::with_capacity(counts.len());
    for &(idx, tf) in counts {
        let w = weight(tf, vocab.df(idx), n_docs, scheme)?;
        if w != 0.0 {
            out.push((idx, w));
        }
    }
    Ok(out)
}

fn norm(v: &SparseVec) -> f64 {
    v.iter().map(|(_, w)| w * w).sum::<f64>().sqrt()
}

/// Built VSM classifier: immutable after construction.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VsmIndex {
    pub vocabulary: Vocabulary,
    pub matrix: TermDocMatrix,
    pub doc_norms: Vec<f64>,
    pub doc_ids: Vec<String>,
    pub similarity: SimilarityKind,
    pub pipeline: PipelineConfig,
}

impl VsmIndex {
    pub fn n_docs(&self) -> usize {
        self.doc_ids.len()
    }
}

pub fn build_vsm_index(
    lessons: &[LessonRecord],
    pipeline: PipelineConfig,
    scheme: WeightScheme,
    similarity: SimilarityKind,
    stoplist: &Stoplist,
) -> Result<VsmIndex> {
    if lessons.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let processed: Vec<Vec<String>> = lessons
        .iter()
        .map(|l| preprocess(&l.text, pipeline, stoplist))
        .collect();
    let vocab = build_vocabulary(&processed)?;
    let n_docs = lessons.len();
    let mut columns = Vec::with_capacity(n_docs);
    for doc in &processed {
        let counts = term_counts(doc, &vocab);
        columns.push(weigh_counts(&counts, &vocab, n_docs, scheme)?);
    }
    let doc_norms = columns.iter().map(norm).collect();
    Ok(VsmIndex {
        matrix: TermDocMatrix {
            scheme,
            n_terms: vocab.len(),
            columns,
        },
        vocabulary: vocab,
        doc_norms,
        doc_ids: lessons.iter().map(|l| l.id.clone()).collect(),
        similarity,
        pipeline,
    })
}

/// Preprocesses the query with the index's recorded pipeline and weights it
/// with the corpus df/N; out-of-vocabulary terms are dropped.
pub fn embed_query(query_text: &str, index: &VsmIndex, stoplist: &Stoplist) -> SparseVec {
    let tokens = preprocess(query_text, index.pipeline, stoplist);
    let counts = term_counts(&tokens, &index.vocabulary);
    weigh_counts(&counts, &index.vocabulary, index.n_docs(), index.matrix.scheme)
        .expect("df from vocabulary is always in range")
}

fn sparse_dot(a: &SparseVec, b: &SparseVec) -> f64 {
    let mut dot = 0.0;
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                dot += a[i].1 * b[j].1;
                i += 1;
                j += 1;
            }
        }
    }
    dot
}

fn support_intersection(a: &SparseVec, b: &SparseVec) -> usize {
    let mut count = 0;
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// Similarity in [0, 1] between two sparse vectors of the same index space.
pub fn similarity(q: &SparseVec, d: &SparseVec, kind: SimilarityKind) -> f64 {
    match kind {
        SimilarityKind::Cosine => {
            let (nq, nd) = (norm(q), norm(d));
            if nq == 0.0 || nd == 0.0 {
                0.0
            } else {
                sparse_dot(q, d) / (nq * nd)
            }
        }
        SimilarityKind::Overlap => {
            if q.is_empty() || d.is_empty() {
                0.0
            } else {
                support_intersection(q, d) as f64 / q.len().min(d.len()) as f64
            }
        }
    }
}

/// Full-scan ranked retrieval; zero-similarity documents are excluded.
pub fn query_vsm(
    index: &VsmIndex,
    query_text: &str,
    limit: usize,
    stoplist: &Stoplist,
) -> RankedList {
    let q = embed_query(query_text, index, stoplist);
    score_embedded(index, "", &q, limit)
}

/// Scores an already-embedded query vector (shared with the harness).
pub fn score_embedded(
    index: &VsmIndex,
    query_id: &str,
    q: &SparseVec,
    limit: usize,
) -> RankedList {
    let mut scored = Vec::new();
    for (j, col) in index.matrix.columns.iter().enumerate() {
        let s = similarity(q, col, index.similarity);
        if s > 0.0 {
            scored.push((index.doc_ids[j].clone(), s));
        }
    }
    RankedList::from_scores(query_id, scored, limit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::LessonRecord;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn lesson(id: &str, text: &str) -> LessonRecord {
        LessonRecord {
            id: id.into(),
            project_id: "P".into(),
            text: text.into(),
        }
    }

    #[test]
    fn vocabulary_counts_documents_not_occurrences() {
        let docs = vec![
            vec!["a".to_string(), "b".to_string()],
            vec!["b".to_string(), "c".to_string()],
        ];
        let v = build_vocabulary(&docs).unwrap();
        assert_eq!(v.len(), 3);
        assert_eq!(v.df(v.index_of("b").unwrap()), 2);
        assert_eq!(v.df(v.index_of("a").unwrap()), 1);
        assert_eq!(v.df(v.index_of("c").unwrap()), 1);

        let docs = vec![vec!["x".to_string(); 3]];
        let v = build_vocabulary(&docs).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v.df(0), 1);
    }

    #[test]
    fn vocabulary_is_first_appearance_ordered() {
        let docs = vec![
            vec!["beta".to_string(), "alpha".to_string()],
            vec!["gamma".to_string(), "alpha".to_string()],
        ];
        let v = build_vocabulary(&docs).unwrap();
        assert_eq!(v.term(0), "beta");
        assert_eq!(v.term(1), "alpha");
        assert_eq!(v.term(2), "gamma");
    }

    #[test]
    fn empty_corpus_rejected() {
        assert!(matches!(
            build_vocabulary(&[vec![], vec![]]).unwrap_err(),
            Error::EmptyCorpus
        ));
    }

    #[test]
    fn weight_formulas() {
        assert_eq!(weight(0, 1, 10, WeightScheme::TfIdf).unwrap(), 0.0);
        assert_eq!(weight(3, 1, 10, WeightScheme::Boolean).unwrap(), 1.0);
        assert_relative_eq!(
            weight(1, 2, 3, WeightScheme::TfIdf).unwrap(),
            1.5f64.log10(),
            max_relative = 1e-15
        );
        assert_relative_eq!(
            weight(1, 2, 3, WeightScheme::TfIdf).unwrap(),
            0.17609,
            epsilon = 1e-5
        );
        // sublinear collapses repeated occurrences
        let w10 = weight(10, 1, 10, WeightScheme::SublinearTfIdf).unwrap();
        assert_relative_eq!(w10, 2.0, max_relative = 1e-12); // (1+1)*1
        assert!(weight(1, 0, 10, WeightScheme::TfIdf).is_err());
        assert!(weight(1, 11, 10, WeightScheme::TfIdf).is_err());
    }

    #[test]
    fn single_doc_tfidf_is_all_zero() {
        let idx = build_vsm_index(
            &[lesson("L1", "alpha beta alpha")],
            PipelineConfig::NONE,
            WeightScheme::TfIdf,
            SimilarityKind::Cosine,
            &Stoplist::default(),
        )
        .unwrap();
        assert!(idx.matrix.columns[0].is_empty());

        let idx = build_vsm_index(
            &[lesson("L1", "alpha beta alpha")],
            PipelineConfig::NONE,
            WeightScheme::Boolean,
            SimilarityKind::Cosine,
            &Stoplist::default(),
        )
        .unwrap();
        assert_eq!(idx.matrix.columns[0].len(), 2);
        assert!(idx.matrix.columns[0].iter().all(|&(_, w)| w == 1.0));
    }

    fn two_doc_index(sim: SimilarityKind) -> VsmIndex {
        build_vsm_index(
            &[
                lesson("L1", "visa delay engineer"),
                lesson("L2", "vendor late delivery delay"),
            ],
            PipelineConfig::NONE,
            WeightScheme::TfIdf,
            SimilarityKind::Cosine,
            &Stoplist::default(),
        )
        .map(|mut i| {
            i.similarity = sim;
            i
        })
        .unwrap()
    }

    #[test]
    fn query_equal_to_document_matches_its_column() {
        let idx = two_doc_index(SimilarityKind::Cosine);
        let q = embed_query("visa delay engineer", &idx, &Stoplist::default());
        assert_eq!(q, idx.matrix.columns[0]);
        let ranked = query_vsm(&idx, "visa delay engineer", 10, &Stoplist::default());
        assert_eq!(ranked.entries[0].lesson_id, "L1");
        assert_relative_eq!(ranked.entries[0].score, 1.0, max_relative = 1e-12);
    }

    #[test]
    fn oov_query_is_empty_ranking() {
        let idx = two_doc_index(SimilarityKind::Cosine);
        assert!(embed_query("zzz qqq", &idx, &Stoplist::default()).is_empty());
        assert!(query_vsm(&idx, "zzz qqq", 10, &Stoplist::default()).is_empty());
    }

    #[test]
    fn overlap_covers_min_set() {
        let q = vec![(0, 1.0), (1, 1.0)];
        let d = vec![(0, 0.3), (1, 0.2), (2, 0.9)];
        assert_eq!(similarity(&q, &d, SimilarityKind::Overlap), 1.0);
        let disjoint = vec![(5, 1.0)];
        assert_eq!(similarity(&q, &disjoint, SimilarityKind::Overlap), 0.0);
        assert_eq!(similarity(&q, &disjoint, SimilarityKind::Cosine), 0.0);
        assert_eq!(similarity(&q, &Vec::new(), SimilarityKind::Overlap), 0.0);
    }

    fn sparse_strategy() -> impl Strategy<Value = SparseVec> {
        proptest::collection::btree_map(0usize..12, 0.1f64..5.0, 0..8)
            .prop_map(|m| m.into_iter().collect())
    }

    proptest! {
        #[test]
        fn similarity_is_symmetric(a in sparse_strategy(), b in sparse_strategy()) {
            for kind in SimilarityKind::ALL {
                let ab = similarity(&a, &b, kind);
                let ba = similarity(&b, &a, kind);
                prop_assert!((ab - ba).abs() < 1e-14);
                prop_assert!((0.0..=1.0 + 1e-12).contains(&ab));
            }
        }

        #[test]
        fn cosine_is_scale_invariant(a in sparse_strategy(), b in sparse_strategy(), scale in 0.01f64..100.0) {
            let scaled: SparseVec = b.iter().map(|&(i, w)| (i, w * scale)).collect();
            let s1 = similarity(&a, &b, SimilarityKind::Cosine);
            let s2 = similarity(&a, &scaled, SimilarityKind::Cosine);
            prop_assert!((s1 - s2).abs() < 1e-10);
        }

        #[test]
        fn boolean_cosine_equals_set_formula(
            qa in proptest::collection::btree_set(0usize..10, 1..6),
            da in proptest::collection::btree_set(0usize..10, 1..6),
        ) {
            let q: SparseVec = qa.iter().map(|&i| (i, 1.0)).collect();
            let d: SparseVec = da.iter().map(|&i| (i, 1.0)).collect();
            let inter = qa.intersection(&da).count() as f64;
            let expected = inter / ((qa.len() as f64) * (da.len() as f64)).sqrt();
            let got = similarity(&q, &d, SimilarityKind::Cosine);
            prop_assert!((got - expected).abs() < 1e-12);
        }
    }
}
