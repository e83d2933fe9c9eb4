//! Deterministic text preprocessing: tokenization, stopword removal and
//! Porter stemming, applied identically to lessons and queries.

mod porter;

pub use porter::porter_stem;

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The four preprocessing combinations: {none, stem, stop, stem+stop}.
/// Serializes as its label ("none" / "stem" / "stop" / "stem_stop") so grid
/// files and persisted indexes stay readable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PipelineConfig {
    pub stop: bool,
    pub stem: bool,
}

impl Serialize for PipelineConfig {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.label())
    }
}

impl<'de> Deserialize<'de> for PipelineConfig {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let label = String::deserialize(deserializer)?;
        match label.as_str() {
            "none" => Ok(PipelineConfig::NONE),
            "stem" => Ok(PipelineConfig::STEM),
            "stop" => Ok(PipelineConfig::STOP),
            "stem_stop" => Ok(PipelineConfig::STEM_STOP),
            other => Err(serde::de::Error::custom(format!(
                "unknown pipeline {other:?} (expected none, stem, stop or stem_stop)"
            ))),
        }
    }
}

impl PipelineConfig {
    pub const NONE: PipelineConfig = PipelineConfig {
        stop: false,
        stem: false,
    };
    pub const STEM: PipelineConfig = PipelineConfig {
        stop: false,
        stem: true,
    };
    pub const STOP: PipelineConfig = PipelineConfig {
        stop: true,
        stem: false,
    };
    pub const STEM_STOP: PipelineConfig = PipelineConfig {
        stop: true,
        stem: true,
    };

    /// All four combinations, in grid order.
    pub const ALL: [PipelineConfig; 4] = [Self::NONE, Self::STEM, Self::STOP, Self::STEM_STOP];

    pub fn label(&self) -> &'static str {
        match (self.stop, self.stem) {
            (false, false) => "none",
            (false, true) => "stem",
            (true, false) => "stop",
            (true, true) => "stem_stop",
        }
    }
}

/// Set of lowercase stop words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stoplist {
    words: BTreeSet<String>,
}

/// The versioned default stoplist shipped with the crate (175 words).
const DEFAULT_STOPWORDS: &str = include_str!("../../fixtures/stopwords.txt");

impl Stoplist {
    pub fn from_words<I: IntoIterator<Item = String>>(words: I) -> Result<Stoplist> {
        let words: BTreeSet<String> = words.into_iter().collect();
        if words.is_empty() {
            return Err(Error::InvalidConfig("stoplist is empty".into()));
        }
        if !words.contains("the") || !words.contains("an") {
            return Err(Error::InvalidConfig(
                "stoplist must contain at least \"the\" and \"an\"".into(),
            ));
        }
        Ok(Stoplist { words })
    }

    /// One lowercase word per line.
    pub fn from_file(path: &Path) -> Result<Stoplist> {
        let content = fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_words(content.split_whitespace().map(|w| w.to_lowercase()))
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }
}

impl Default for Stoplist {
    fn default() -> Self {
        Stoplist::from_words(DEFAULT_STOPWORDS.split_whitespace().map(String::from))
            .expect("bundled stoplist is valid")
    }
}

/// Lowercase maximal runs of ASCII letters and digits; everything else is a
/// delimiter.
pub fn tokenize(text: &str) -> Vec<String> {
    let mut tokens = Vec::new();
    let mut current = String::new();
    for c in text.chars() {
        if c.is_ascii_alphanumeric() {
            current.push(c.to_ascii_lowercase());
        } else if !current.is_empty() {
            tokens.push(std::mem::take(&mut current));
        }
    }
    if !current.is_empty() {
        tokens.push(current);
    }
    tokens
}

pub fn remove_stopwords(tokens: Vec<String>, stoplist: &Stoplist) -> Vec<String> {
    tokens
        .into_iter()
        .filter(|t| !stoplist.contains(t))
        .collect()
}

/// tokenize, then stop (if configured), then stem (if configured).
pub fn preprocess(text: &str, config: PipelineConfig, stoplist: &Stoplist) -> Vec<String> {
    let mut tokens = tokenize(text);
    if config.stop {
        tokens = remove_stopwords(tokens, stoplist);
    }
    if config.stem {
        tokens = tokens.iter().map(|t| porter_stem(t)).collect();
    }
    tokens
}
