//! Headline text cleaning: strips agency names and configurable Unicode
//! character classes before segmentation. Whitespace always survives so
//! pre-segmented input stays intact.

use std::sync::OnceLock;

use regex::Regex;

#[derive(Debug, Clone)]
pub struct PreprocessConfig {
    /// News-agency names removed verbatim wherever they appear.
    pub agency_names: Vec<String>,
    /// Strip Unicode punctuation (`\p{P}`).
    pub strip_punctuation: bool,
    /// Strip decimal digits (`\p{Nd}`).
    pub strip_digits: bool,
    /// Strip everything that is not a letter, number, punctuation or
    /// whitespace (symbols, marks, controls).
    pub strip_special: bool,
}

impl Default for PreprocessConfig {
    fn default() -> Self {
        Self {
            agency_names: Vec::new(),
            strip_punctuation: true,
            strip_digits: true,
            strip_special: true,
        }
    }
}

fn punctuation() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"\p{P}").unwrap())
}

fn digit() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"\p{Nd}").unwrap())
}

fn special() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"[^\p{L}\p{N}\p{P}\s]").unwrap())
}

/// Apply `config` to one headline.
pub fn preprocess(raw: &str, config: &PreprocessConfig) -> String {
    let mut text = raw.to_string();
    // Longest agency names first so substrings do not shadow full names.
    let mut agencies: Vec<&String> = config.agency_names.iter().collect();
    agencies.sort_by_key(|a| std::cmp::Reverse(a.chars().count()));
    for agency in agencies {
        if !agency.is_empty() {
            text = text.replace(agency.as_str(), "");
        }
    }
    let mut buf = [0u8; 4];
    text.chars()
        .filter(|&c| {
            let s: &str = c.encode_utf8(&mut buf);
            if config.strip_punctuation && punctuation().is_match(s) {
                return false;
            }
            if config.strip_digits && digit().is_match(s) {
                return false;
            }
            if config.strip_special && special().is_match(s) {
                return false;
            }
            true
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strips_agency_punctuation_and_digits() {
        let config = PreprocessConfig {
            agency_names: vec!["ABC新闻".to_string()],
            ..PreprocessConfig::default()
        };
        assert_eq!(preprocess("ABC新闻：自由万岁!123", &config), "自由万岁");
    }

    #[test]
    fn digits_only_becomes_empty() {
        assert_eq!(preprocess("20200815", &PreprocessConfig::default()), "");
    }

    #[test]
    fn clean_text_is_unchanged() {
        let text = "经济繁荣发展";
        assert_eq!(preprocess(text, &PreprocessConfig::default()), text);
    }

    #[test]
    fn unicode_punctuation_classes_count() {
        let cleaned = preprocess("《新闻》“标题”，！？——…", &PreprocessConfig::default());
        assert_eq!(cleaned, "新闻标题");
    }

    #[test]
    fn whitespace_survives_for_presegmented_input() {
        assert_eq!(
            preprocess("自由 万岁 123", &PreprocessConfig::default()),
            "自由 万岁 "
        );
    }

    #[test]
    fn classes_can_be_kept() {
        let config = PreprocessConfig {
            agency_names: vec![],
            strip_punctuation: false,
            strip_digits: false,
            strip_special: true,
        };
        // Punctuation and digits stay; the emoji (a symbol) goes.
        assert_eq!(preprocess("好消息，2020！😀", &config), "好消息，2020！");
    }

    #[test]
    fn longer_agency_names_take_precedence() {
        let config = PreprocessConfig {
            agency_names: vec!["新华".to_string(), "新华社".to_string()],
            strip_punctuation: false,
            strip_digits: false,
            strip_special: false,
        };
        assert_eq!(preprocess("新华社报道", &config), "报道");
    }
}
