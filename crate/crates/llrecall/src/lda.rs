//! Latent Dirichlet Allocation: collapsed Gibbs training over the lesson
//! corpus and conditional-probability query scoring.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::corpus::LessonRecord;
use crate::error::{Error, Result};
use crate::ranked::RankedList;
use crate::textprep::{preprocess, PipelineConfig, Stoplist};
use crate::vsm::{build_vocabulary, Vocabulary};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LdaConfig {
    pub topics: usize,
    pub alpha: f64,
    pub beta: f64,
    pub max_iterations: usize,
    pub convergence_window: usize,
    pub convergence_tol: f64,
    pub seed: u64,
    pub pipeline: PipelineConfig,
}

impl LdaConfig {
    /// Symmetric alpha = 50/K, beta = 0.01, plateau stopping.
    pub fn with_defaults(topics: usize, seed: u64, pipeline: PipelineConfig) -> LdaConfig {
        LdaConfig {
            topics,
            alpha: 50.0 / topics as f64,
            beta: 0.01,
            max_iterations: 2000,
            convergence_window: 10,
            convergence_tol: 1e-4,
            seed,
            pipeline,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.topics == 0 {
            return Err(Error::InvalidConfig("topics must be >= 1".into()));
        }
        if self.alpha <= 0.0 || self.beta <= 0.0 {
            return Err(Error::InvalidConfig("alpha and beta must be > 0".into()));
        }
        if self.max_iterations < self.convergence_window {
            return Err(Error::InvalidConfig(
                "max_iterations must be >= convergence_window".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LdaModel {
    /// K x V rows: P(word | topic), each row sums to 1
    pub phi: Vec<Vec<f64>>,
    /// d x K rows: P(topic | document), each row sums to 1
    pub theta: Vec<Vec<f64>>,
    /// final topic of every token, per document
    pub assignments: Vec<Vec<usize>>,
    pub log_likelihood_trace: Vec<f64>,
    pub vocabulary: Vocabulary,
    pub doc_ids: Vec<String>,
    pub config: LdaConfig,
}

/// Mutable count tables of the Gibbs chain.
struct GibbsState {
    docs: Vec<Vec<usize>>,
    z: Vec<Vec<usize>>,
    n_dk: Vec<Vec<usize>>,
    n_kw: Vec<Vec<usize>>,
    n_k: Vec<usize>,
    topics: usize,
    vocab_size: usize,
    alpha: f64,
    beta: f64,
}

impl GibbsState {
    fn init(docs: Vec<Vec<usize>>, config: &LdaConfig, vocab_size: usize, rng: &mut ChaCha8Rng) -> GibbsState {
        let topics = config.topics;
        let mut state = GibbsState {
            z: docs.iter().map(|d| vec![0; d.len()]).collect(),
            n_dk: vec![vec![0; topics]; docs.len()],
            n_kw: vec![vec![0; vocab_size]; topics],
            n_k: vec![0; topics],
            docs,
            topics,
            vocab_size,
            alpha: config.alpha,
            beta: config.beta,
        };
        for d in 0..state.docs.len() {
            for i in 0..state.docs[d].len() {
                let k = rng.gen_range(0..topics);
                state.assign(d, i, k);
            }
        }
        state
    }

    fn assign(&mut self, d: usize, i: usize, k: usize) {
        let w = self.docs[d][i];
        self.z[d][i] = k;
        self.n_dk[d][k] += 1;
        self.n_kw[k][w] += 1;
        self.n_k[k] += 1;
    }

    fn unassign(&mut self, d: usize, i: usize) {
        let (w, k) = (self.docs[d][i], self.z[d][i]);
        self.n_dk[d][k] -= 1;
        self.n_kw[k][w] -= 1;
        self.n_k[k] -= 1;
    }

    fn sweep(&mut self, rng: &mut ChaCha8Rng, weights: &mut Vec<f64>) {
        let v_beta = self.vocab_size as f64 * self.beta;
        for d in 0..self.docs.len() {
            for i in 0..self.docs[d].len() {
                self.unassign(d, i);
                let w = self.docs[d][i];
                weights.clear();
                let mut total = 0.0;
                for k in 0..self.topics {
                    let p = (self.n_dk[d][k] as f64 + self.alpha)
                        * (self.n_kw[k][w] as f64 + self.beta)
                        / (self.n_k[k] as f64 + v_beta);
                    total += p;
                    weights.push(total);
                }
                let target = rng.gen::<f64>() * total;
                let k = weights.partition_point(|&cum| cum <= target).min(self.topics - 1);
                self.assign(d, i, k);
            }
        }
    }

    /// Collapsed log P(w | z, beta) + log P(z | alpha).
    fn log_likelihood(&self) -> f64 {
        let v = self.vocab_size as f64;
        let k_f = self.topics as f64;
        let mut ll = 0.0;
        for k in 0..self.topics {
            ll += ln_gamma(v * self.beta) - ln_gamma(self.n_k[k] as f64 + v * self.beta);
            for w in 0..self.vocab_size {
                if self.n_kw[k][w] > 0 {
                    ll += ln_gamma(self.n_kw[k][w] as f64 + self.beta) - ln_gamma(self.beta);
                }
            }
        }
        for d in 0..self.docs.len() {
            let n_d: usize = self.n_dk[d].iter().sum();
            ll += ln_gamma(k_f * self.alpha) - ln_gamma(n_d as f64 + k_f * self.alpha);
            for k in 0..self.topics {
                if self.n_dk[d][k] > 0 {
                    ll += ln_gamma(self.n_dk[d][k] as f64 + self.alpha) - ln_gamma(self.alpha);
                }
            }
        }
        ll
    }
}

pub fn train_lda(
    lessons: &[LessonRecord],
    config: &LdaConfig,
    stoplist: &Stoplist,
) -> Result<LdaModel> {
    config.validate()?;
    let processed: Vec<Vec<String>> = lessons
        .iter()
        .map(|l| preprocess(&l.text, config.pipeline, stoplist))
        .collect();
    let vocab = build_vocabulary(&processed)?;
    let docs: Vec<Vec<usize>> = processed
        .iter()
        .map(|toks| {
            toks.iter()
                .map(|t| vocab.index_of(t).expect("token is in vocabulary"))
                .collect()
        })
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut state = GibbsState::init(docs, config, vocab.len(), &mut rng);
    let mut trace = Vec::new();
    let mut weights = Vec::with_capacity(config.topics);
    for iter in 0..config.max_iterations {
        state.sweep(&mut rng, &mut weights);
        let ll = state.log_likelihood();
        debug_assert!(ll.is_finite());
        trace.push(ll);
        if iter + 1 >= config.convergence_window {
            let prev = trace[iter + 1 - config.convergence_window];
            if (ll - prev).abs() / prev.abs().max(1.0) < config.convergence_tol {
                break;
            }
        }
    }

    let v_beta = vocab.len() as f64 * config.beta;
    let phi: Vec<Vec<f64>> = (0..config.topics)
        .map(|k| {
            let denom = state.n_k[k] as f64 + v_beta;
            (0..vocab.len())
                .map(|w| (state.n_kw[k][w] as f64 + config.beta) / denom)
                .collect()
        })
        .collect();
    let k_alpha = config.topics as f64 * config.alpha;
    let theta: Vec<Vec<f64>> = (0..state.docs.len())
        .map(|d| {
            let n_d: usize = state.n_dk[d].iter().sum();
            let denom = n_d as f64 + k_alpha;
            (0..config.topics)
                .map(|k| (state.n_dk[d][k] as f64 + config.alpha) / denom)
                .collect()
        })
        .collect();

    Ok(LdaModel {
        phi,
        theta,
        assignments: state.z,
        log_likelihood_trace: trace,
        vocabulary: vocab,
        doc_ids: lessons.iter().map(|l| l.id.clone()).collect(),
        config: config.clone(),
    })
}

/// score(q, d) = sum over in-vocabulary query tokens of
/// log sum_z theta[d][z] * phi[z][w]. All-OOV queries yield an empty list.
pub fn query_lda(
    model: &LdaModel,
    query_text: &str,
    limit: usize,
    stoplist: &Stoplist,
) -> RankedList {
    let tokens = preprocess(query_text, model.config.pipeline, stoplist);
    score_tokens(model, "", &tokens, limit)
}

pub fn score_tokens(
    model: &LdaModel,
    query_id: &str,
    tokens: &[String],
    limit: usize,
) -> RankedList {
    let term_ids: Vec<usize> = tokens
        .iter()
        .filter_map(|t| model.vocabulary.index_of(t))
        .collect();
    if term_ids.is_empty() {
        return RankedList {
            query_id: query_id.to_string(),
            entries: Vec::new(),
        };
    }
    let mut scored = Vec::with_capacity(model.doc_ids.len());
    for (d, theta_d) in model.theta.iter().enumerate() {
        let mut score = 0.0;
        for &w in &term_ids {
            let p: f64 = theta_d
                .iter()
                .zip(model.phi.iter())
                .map(|(t, phi_k)| t * phi_k[w])
                .sum();
            score += p.ln();
        }
        scored.push((model.doc_ids[d].clone(), score));
    }
    RankedList::from_scores(query_id, scored, limit)
}
