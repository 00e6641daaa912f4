//! Labeled headline files: tab-separated `label<TAB>text[<TAB>target_word[<TAB>category]]`.

use std::fmt;
use std::io::BufRead;

use crate::error::{Error, Result};

/// Sentiment polarity, numerically coded -1/0/+1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(i8)]
pub enum Label {
    Negative = -1,
    Neutral = 0,
    Positive = 1,
}

impl Label {
    pub fn as_i8(self) -> i8 {
        self as i8
    }

    pub fn as_f64(self) -> f64 {
        self.as_i8() as f64
    }

    pub fn from_i8(value: i8) -> Option<Self> {
        match value {
            -1 => Some(Label::Negative),
            0 => Some(Label::Neutral),
            1 => Some(Label::Positive),
            _ => None,
        }
    }

    /// Accepts `pos`/`neu`/`neg` as well as `+1`/`1`/`0`/`-1` (ASCII or
    /// U+2212 minus).
    pub fn parse_token(token: &str) -> Option<Self> {
        match token {
            "pos" | "+1" | "1" => Some(Label::Positive),
            "neu" | "0" => Some(Label::Neutral),
            "neg" | "-1" | "\u{2212}1" => Some(Label::Negative),
            _ => None,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_i8())
    }
}

/// One headline with its human label and, for test-set rows, the target word
/// that caused its collection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeadlineRecord {
    pub raw_text: String,
    pub tokens: Vec<String>,
    pub label: Label,
    pub target_word: Option<String>,
    pub category: Option<String>,
}

/// A loaded headline file, with the number of exact-duplicate texts dropped.
#[derive(Debug, Clone)]
pub struct HeadlineSet {
    pub records: Vec<HeadlineRecord>,
    pub duplicates_dropped: usize,
}

/// Load a tab-separated headline stream.
///
/// Column order is `label`, `text`, optional `target_word`, optional
/// `category`. Rows whose text exactly duplicates an earlier row are dropped
/// and counted.
pub fn load_labeled_headlines<R: BufRead>(reader: R, source_name: &str) -> Result<HeadlineSet> {
    let mut records = Vec::new();
    let mut seen_texts = std::collections::HashSet::new();
    let mut duplicates_dropped = 0usize;

    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let line_no = i + 1;
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split('\t');
        let label_token = fields.next().unwrap_or("");
        let label = Label::parse_token(label_token).ok_or_else(|| Error::UnknownLabel {
            source_name: source_name.to_string(),
            line: line_no,
            token: label_token.to_string(),
        })?;
        let text = match fields.next() {
            Some(t) if !t.is_empty() => t,
            _ => {
                return Err(Error::MissingColumn {
                    source_name: source_name.to_string(),
                    line: line_no,
                    column: "text",
                })
            }
        };
        let target_word = fields
            .next()
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(String::from);
        let category = fields
            .next()
            .map(str::trim)
            .filter(|c| !c.is_empty())
            .map(String::from);

        if !seen_texts.insert(text.to_string()) {
            duplicates_dropped += 1;
            continue;
        }
        records.push(HeadlineRecord {
            raw_text: text.to_string(),
            tokens: Vec::new(),
            label,
            target_word,
            category,
        });
    }

    if records.is_empty() {
        return Err(Error::Empty {
            source_name: source_name.to_string(),
            what: "headline file",
        });
    }
    if duplicates_dropped > 0 {
        log::info!("{source_name}: dropped {duplicates_dropped} duplicated headlines");
    }
    Ok(HeadlineSet {
        records,
        duplicates_dropped,
    })
}
