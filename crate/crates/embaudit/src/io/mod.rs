//! Parsers for embedding files, word lists and labeled headline files.
//!
//! Parsing is single-threaded per file; the resulting structures are
//! immutable and safe to share read-only.

mod headlines;
mod word2vec;
mod word_list;

pub use headlines::{load_labeled_headlines, HeadlineRecord, HeadlineSet, Label};
pub use word2vec::{parse_word2vec_text, write_word2vec_text, ParseWarning, ParsedEmbedding};
pub use word_list::{load_word_list, AttributeLexicon, CategoryWordList, LexiconKind};
