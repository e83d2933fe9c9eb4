//! Lessons-learned recall engine.
//!
//! Indexes free-text lessons-learned records under three retrieval models
//! (vector space, latent semantic indexing, latent Dirichlet allocation),
//! answers queries built from project issue/risk records, and provides a
//! fully factorial evaluation harness with gold-set metrics and
//! parameter-impact statistics.

pub mod corpus;
pub mod error;
pub mod harness;
pub mod lda;
pub mod lsi;
pub mod metrics;
pub mod ranked;
pub mod report;
pub mod stats;
pub mod textprep;
pub mod vsm;

pub use error::{Error, Result};
