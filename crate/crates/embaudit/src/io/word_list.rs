//! Word-list files: UTF-8, one word per line, `#` comments and blank lines
//! ignored.

use std::collections::HashSet;
use std::io::BufRead;

use crate::error::{Error, Result};

/// Target words representing one concept category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategoryWordList {
    pub category: String,
    pub words: Vec<String>,
}

impl CategoryWordList {
    /// Build from an explicit word list, deduplicating while keeping order.
    pub fn new(category: impl Into<String>, words: Vec<String>) -> Result<Self> {
        let category = category.into();
        let mut seen = HashSet::new();
        let words: Vec<String> = words
            .into_iter()
            .filter(|w| !w.is_empty() && seen.insert(w.clone()))
            .collect();
        if words.is_empty() {
            return Err(Error::Empty {
                source_name: category,
                what: "word list",
            });
        }
        Ok(Self { category, words })
    }
}

/// Load a category word list from a line stream.
pub fn load_word_list<R: BufRead>(reader: R, category: &str) -> Result<CategoryWordList> {
    let mut words = Vec::new();
    for line in reader.lines() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        words.push(trimmed.to_string());
    }
    CategoryWordList::new(category, words)
}

/// Which kind of sentiment lexicon an attribute pair comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LexiconKind {
    Propaganda,
    Evaluative,
    UserDefined,
}

impl LexiconKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            LexiconKind::Propaganda => "propaganda",
            LexiconKind::Evaluative => "evaluative",
            LexiconKind::UserDefined => "user-defined",
        }
    }
}

/// Positive (`A`) and negative (`B`) attribute word sets.
#[derive(Debug, Clone)]
pub struct AttributeLexicon {
    pub name: String,
    pub kind: LexiconKind,
    pub positive: Vec<String>,
    pub negative: Vec<String>,
}

impl AttributeLexicon {
    /// Validates that both sets are non-empty and disjoint.
    pub fn new(
        name: impl Into<String>,
        kind: LexiconKind,
        positive: Vec<String>,
        negative: Vec<String>,
    ) -> Result<Self> {
        let name = name.into();
        if positive.is_empty() {
            return Err(Error::Empty {
                source_name: name,
                what: "positive attribute list",
            });
        }
        if negative.is_empty() {
            return Err(Error::Empty {
                source_name: name,
                what: "negative attribute list",
            });
        }
        let pos_set: HashSet<&String> = positive.iter().collect();
        if let Some(word) = negative.iter().find(|w| pos_set.contains(w)) {
            return Err(Error::LexiconOverlap {
                name,
                word: word.clone(),
            });
        }
        Ok(Self {
            name,
            kind,
            positive,
            negative,
        })
    }

    /// Load from two word-list streams.
    pub fn load<R: BufRead>(
        name: &str,
        kind: LexiconKind,
        positive: R,
        negative: R,
    ) -> Result<Self> {
        let pos = load_word_list(positive, &format!("{name}/positive"))?;
        let neg = load_word_list(negative, &format!("{name}/negative"))?;
        AttributeLexicon::new(name, kind, pos.words, neg.words)
    }
}
