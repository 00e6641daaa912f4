//! Word segmentation for unsegmented CJK text: greedy forward maximal
//! matching against a vocabulary, with a whitespace mode for input that is
//! already tokenized.

use std::collections::HashSet;

/// Strategy for turning a headline into tokens.
#[derive(Debug, Clone)]
pub enum Segmenter {
    /// Greedy forward maximal matching against a vocabulary. Unmatched
    /// single characters come through as singleton tokens; whitespace is
    /// skipped.
    MaxMatch(MaxMatchSegmenter),
    /// Input is already segmented; split on whitespace.
    Whitespace,
}

impl Segmenter {
    pub fn max_match<I, S>(vocab: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Segmenter::MaxMatch(MaxMatchSegmenter::new(vocab))
    }

    pub fn segment(&self, text: &str) -> Vec<String> {
        match self {
            Segmenter::MaxMatch(m) => m.segment(text),
            Segmenter::Whitespace => text.split_whitespace().map(String::from).collect(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct MaxMatchSegmenter {
    words: HashSet<String>,
    max_word_chars: usize,
}

impl MaxMatchSegmenter {
    pub fn new<I, S>(vocab: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let words: HashSet<String> = vocab.into_iter().map(Into::into).collect();
        let max_word_chars = words.iter().map(|w| w.chars().count()).max().unwrap_or(1);
        Self {
            words,
            max_word_chars,
        }
    }

    pub fn segment(&self, text: &str) -> Vec<String> {
        let chars: Vec<char> = text.chars().collect();
        let mut tokens = Vec::new();
        let mut pos = 0;
        while pos < chars.len() {
            if chars[pos].is_whitespace() {
                pos += 1;
                continue;
            }
            let longest = self.max_word_chars.min(chars.len() - pos);
            let mut matched = None;
            for len in (1..=longest).rev() {
                let candidate: String = chars[pos..pos + len].iter().collect();
                if self.words.contains(&candidate) {
                    matched = Some((candidate, len));
                    break;
                }
            }
            match matched {
                Some((word, len)) => {
                    tokens.push(word);
                    pos += len;
                }
                None => {
                    tokens.push(chars[pos].to_string());
                    pos += 1;
                }
            }
        }
        tokens
    }
}
