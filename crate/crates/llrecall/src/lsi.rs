//! Latent semantic indexing: rank-k truncated SVD of the term-document
//! matrix, query folding, cosine retrieval in topic space.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::corpus::LessonRecord;
use crate::error::{Error, Result};
use crate::ranked::RankedList;
use crate::textprep::{PipelineConfig, Stoplist};
use crate::vsm::{self, SimilarityKind, SparseVec, VsmIndex, WeightScheme};

/// Singular values below this fraction of the largest one are treated as
/// numerically zero.
const RANK_CUTOFF: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LsiConfig {
    pub k: usize,
    pub scheme: WeightScheme,
    pub pipeline: PipelineConfig,
}

/// Truncated SVD of the source index's matrix: A ~ T * diag(S) * D.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LsiSpace {
    /// t x k_eff term-topic matrix (column-major flattened)
    pub term_topic: Vec<f64>,
    /// k_eff singular values, strictly descending and positive
    pub singular_values: Vec<f64>,
    /// k_eff x d topic-document matrix (column-major flattened)
    pub topic_doc: Vec<f64>,
    pub requested_k: usize,
    pub k_eff: usize,
    /// S-scaled columns of D: doc_coords[j] is document j's topic coordinates
    pub doc_coords: Vec<Vec<f64>>,
    pub source: VsmIndex,
}

impl LsiSpace {
    pub fn term_topic_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_column_slice(self.source.matrix.n_terms, self.k_eff, &self.term_topic)
    }

    pub fn topic_doc_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_column_slice(self.k_eff, self.source.n_docs(), &self.topic_doc)
    }
}

fn dense_matrix(index: &VsmIndex) -> DMatrix<f64> {
    let (t, d) = (index.matrix.n_terms, index.n_docs());
    let mut a = DMatrix::zeros(t, d);
    for (j, col) in index.matrix.columns.iter().enumerate() {
        for &(i, w) in col {
            a[(i, j)] = w;
        }
    }
    a
}

/// Best rank-k_eff approximation of the source matrix, where k_eff is the
/// requested k clamped to the numerical rank.
pub fn truncated_svd(index: &VsmIndex, k: usize) -> Result<LsiSpace> {
    if k == 0 {
        return Err(Error::InvalidConfig("topic count k must be >= 1".into()));
    }
    let a = dense_matrix(index);
    if a.iter().all(|&x| x == 0.0) {
        return Err(Error::DegenerateMatrix);
    }
    let svd = a.svd(true, true);
    let u = svd.u.expect("u requested");
    let vt = svd.v_t.expect("v_t requested");

    // sort singular triplets descending (nalgebra does not guarantee order)
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&i, &j| {
        svd.singular_values[j]
            .partial_cmp(&svd.singular_values[i])
            .unwrap()
    });
    let s_max = svd.singular_values[order[0]];
    let rank = order
        .iter()
        .take_while(|&&i| svd.singular_values[i] > RANK_CUTOFF * s_max)
        .count();
    let k_eff = k.min(rank);
    if k_eff < k {
        log::warn!(
            "requested k={k} exceeds numerical rank {rank}; clamping to k_eff={k_eff}"
        );
    }

    let t_rows = u.nrows();
    let d_cols = vt.ncols();
    let mut term_topic = Vec::with_capacity(t_rows * k_eff);
    let mut singular_values = Vec::with_capacity(k_eff);
    let mut topic_doc = vec![0.0; k_eff * d_cols];
    for (topic, &src) in order[..k_eff].iter().enumerate() {
        singular_values.push(svd.singular_values[src]);
        term_topic.extend(u.column(src).iter().copied());
        for j in 0..d_cols {
            topic_doc[j * k_eff + topic] = vt[(src, j)];
        }
    }
    let doc_coords: Vec<Vec<f64>> = (0..d_cols)
        .map(|j| {
            (0..k_eff)
                .map(|z| singular_values[z] * topic_doc[j * k_eff + z])
                .collect()
        })
        .collect();
    Ok(LsiSpace {
        term_topic,
        singular_values,
        topic_doc,
        requested_k: k,
        k_eff,
        doc_coords,
        source: index.clone(),
    })
}

pub fn build_lsi(
    lessons: &[LessonRecord],
    config: &LsiConfig,
    stoplist: &Stoplist,
) -> Result<LsiSpace> {
    let index = vsm::build_vsm_index(
        lessons,
        config.pipeline,
        config.scheme,
        SimilarityKind::Cosine,
        stoplist,
    )?;
    truncated_svd(&index, config.k)
}

/// Projects a term-space query vector into topic space: T' * q.
pub fn fold_query(query_vector: &SparseVec, space: &LsiSpace) -> Vec<f64> {
    let t = space.source.matrix.n_terms;
    let mut folded = vec![0.0; space.k_eff];
    for z in 0..space.k_eff {
        let col = &space.term_topic[z * t..(z + 1) * t];
        let mut acc = 0.0;
        for &(i, w) in query_vector {
            acc += col[i] * w;
        }
        folded[z] = acc;
    }
    folded
}

fn dense_cosine(a: &[f64], b: &[f64]) -> f64 {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb: f64 = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    if na == 0.0 || nb == 0.0 {
        0.0
    } else {
        dot / (na * nb)
    }
}

pub fn query_lsi(
    space: &LsiSpace,
    query_text: &str,
    limit: usize,
    stoplist: &Stoplist,
) -> RankedList {
    let q = vsm::embed_query(query_text, &space.source, stoplist);
    score_folded(space, "", &q, limit)
}

/// Scores an already-embedded term-space query (shared with the harness).
pub fn score_folded(space: &LsiSpace, query_id: &str, q: &SparseVec, limit: usize) -> RankedList {
    let folded = fold_query(q, space);
    let mut scored = Vec::new();
    for (j, coords) in space.doc_coords.iter().enumerate() {
        let s = dense_cosine(&folded, coords);
        if s > 0.0 {
            scored.push((space.source.doc_ids[j].clone(), s));
        }
    }
    RankedList::from_scores(query_id, scored, limit)
}

/// Relative Frobenius reconstruction error ||A - T S D|| / ||A||.
pub fn reconstruction_error(space: &LsiSpace) -> f64 {
    let a = dense_matrix(&space.source);
    let t = space.term_topic_matrix();
    let d = space.topic_doc_matrix();
    let s = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(space.singular_values.clone()));
    let approx = &t * s * d;
    (&a - approx).norm() / a.norm()
}
