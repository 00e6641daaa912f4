//! Reader and writer for the word2vec text format: a `<vocab_size> <dim>`
//! header line followed by one `word v1 .. vdim` line per word.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::space::EmbeddingSpace;

/// Non-fatal oddities found while parsing; also emitted via `log::warn!`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseWarning {
    /// A word appeared more than once; the first vector was kept.
    DuplicateWord { word: String, line: usize },
    /// The header's vocabulary size disagrees with the actual row count;
    /// the actual count wins.
    VocabSizeMismatch { declared: usize, actual: usize },
}

#[derive(Debug)]
pub struct ParsedEmbedding {
    pub space: EmbeddingSpace,
    pub warnings: Vec<ParseWarning>,
}

/// Parse a word2vec text stream into an [`EmbeddingSpace`] named `name`.
///
/// Duplicate words keep their first occurrence; all numbers are parsed as
/// `f64` regardless of the precision in the file.
pub fn parse_word2vec_text<R: BufRead>(reader: R, name: &str) -> Result<ParsedEmbedding> {
    let mut lines = reader.lines();
    let header = match lines.next() {
        Some(line) => line?,
        None => {
            return Err(Error::Empty {
                source_name: name.to_string(),
                what: "embedding file",
            })
        }
    };
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(Error::MalformedHeader {
            source_name: name.to_string(),
            detail: format!("expected \"<vocab_size> <dim>\", found {:?}", header),
        });
    }
    let declared: usize = fields[0].parse().map_err(|_| Error::MalformedHeader {
        source_name: name.to_string(),
        detail: format!("vocab size {:?} is not an integer", fields[0]),
    })?;
    let dim: usize = fields[1].parse().map_err(|_| Error::MalformedHeader {
        source_name: name.to_string(),
        detail: format!("dimension {:?} is not an integer", fields[1]),
    })?;
    if dim == 0 {
        return Err(Error::MalformedHeader {
            source_name: name.to_string(),
            detail: "dimension must be positive".to_string(),
        });
    }

    let mut vocab: Vec<String> = Vec::with_capacity(declared);
    let mut matrix: Vec<f64> = Vec::with_capacity(declared.saturating_mul(dim));
    let mut seen: std::collections::HashSet<String> = std::collections::HashSet::new();
    let mut warnings = Vec::new();
    let mut data_lines = 0usize;

    for (i, line) in lines.enumerate() {
        let line = line?;
        let line_no = i + 2; // 1-based, after the header
        data_lines += 1;
        let mut fields = line.split_whitespace();
        let word = match fields.next() {
            Some(w) => w,
            None => {
                return Err(Error::WrongFieldCount {
                    source_name: name.to_string(),
                    line: line_no,
                    expected: dim + 1,
                    found: 0,
                })
            }
        };
        let mut row = Vec::with_capacity(dim);
        for token in fields.by_ref() {
            let value: f64 = token.parse().map_err(|_| Error::InvalidNumber {
                source_name: name.to_string(),
                line: line_no,
                token: token.to_string(),
            })?;
            if !value.is_finite() {
                return Err(Error::NonFiniteValue {
                    source_name: name.to_string(),
                    line: line_no,
                    token: token.to_string(),
                });
            }
            row.push(value);
        }
        if row.len() != dim {
            return Err(Error::WrongFieldCount {
                source_name: name.to_string(),
                line: line_no,
                expected: dim + 1,
                found: row.len() + 1,
            });
        }
        if !seen.insert(word.to_string()) {
            log::warn!("{name}:{line_no}: duplicate word {word:?}, keeping first occurrence");
            warnings.push(ParseWarning::DuplicateWord {
                word: word.to_string(),
                line: line_no,
            });
            continue;
        }
        vocab.push(word.to_string());
        matrix.extend_from_slice(&row);
    }

    if vocab.is_empty() {
        return Err(Error::Empty {
            source_name: name.to_string(),
            what: "embedding file",
        });
    }
    if data_lines != declared {
        log::warn!(
            "{name}: header declares {declared} words but {data_lines} lines follow; \
             using the actual count"
        );
        warnings.push(ParseWarning::VocabSizeMismatch {
            declared,
            actual: data_lines,
        });
    }

    let space = EmbeddingSpace::new(name, dim, vocab, matrix, false)?;
    Ok(ParsedEmbedding { space, warnings })
}

/// Write a space back out in word2vec text format.
///
/// Values are printed with Rust's shortest round-trippable float formatting,
/// so parsing the output reproduces the matrix exactly.
pub fn write_word2vec_text<W: Write>(space: &EmbeddingSpace, mut writer: W) -> Result<()> {
    writeln!(writer, "{} {}", space.len(), space.dim())?;
    for (i, word) in space.vocab().iter().enumerate() {
        write!(writer, "{word}")?;
        for value in space.row(i) {
            write!(writer, " {value}")?;
        }
        writeln!(writer)?;
    }
    Ok(())
}
