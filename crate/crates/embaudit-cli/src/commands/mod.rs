pub mod assoc_cmd;
pub mod expand;
pub mod sentiment_cmd;
pub mod validate;

use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use embaudit::io::{
    load_word_list, parse_word2vec_text, AttributeLexicon, CategoryWordList,
};
use embaudit::space::EmbeddingSpace;

use crate::config::{EmbeddingEntry, LexiconEntry};
use crate::CliError;

pub fn load_space(entry: &EmbeddingEntry) -> Result<EmbeddingSpace, CliError> {
    let file = File::open(&entry.path)
        .map_err(|e| CliError::data(format!("cannot open {}: {e}", entry.path.display())))?;
    let parsed = parse_word2vec_text(BufReader::new(file), &entry.name)?;
    Ok(parsed.space)
}

/// Load every `<category>.txt` in `dir`, sorted by file name; the category
/// label is the file stem.
pub fn load_categories(dir: &Path) -> Result<Vec<CategoryWordList>, CliError> {
    let mut files: Vec<std::path::PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| CliError::data(format!("cannot read {}: {e}", dir.display())))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "txt"))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(CliError::data(format!(
            "word list directory {} contains no .txt files",
            dir.display()
        )));
    }
    let mut categories = Vec::with_capacity(files.len());
    for path in files {
        let category = path
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or("unnamed")
            .to_string();
        let file = File::open(&path)
            .map_err(|e| CliError::data(format!("cannot open {}: {e}", path.display())))?;
        categories.push(load_word_list(BufReader::new(file), &category)?);
    }
    Ok(categories)
}

pub fn load_lexicons(entries: &[LexiconEntry]) -> Result<Vec<AttributeLexicon>, CliError> {
    if entries.is_empty() {
        return Err(CliError::usage("config lists no lexicons"));
    }
    entries
        .iter()
        .map(|entry| {
            let positive = File::open(&entry.positive).map_err(|e| {
                CliError::data(format!("cannot open {}: {e}", entry.positive.display()))
            })?;
            let negative = File::open(&entry.negative).map_err(|e| {
                CliError::data(format!("cannot open {}: {e}", entry.negative.display()))
            })?;
            AttributeLexicon::load(
                &entry.name,
                entry.kind(),
                BufReader::new(positive),
                BufReader::new(negative),
            )
            .map_err(CliError::from)
        })
        .collect()
}

/// Restrict every space to the vocabulary common to all of them, in the
/// first space's word order, so feature extraction sees identical tokens.
pub fn align_all(spaces: Vec<EmbeddingSpace>) -> Result<Vec<EmbeddingSpace>, CliError> {
    if spaces.len() < 2 {
        return Ok(spaces);
    }
    let shared: Vec<String> = spaces[0]
        .vocab()
        .iter()
        .filter(|word| spaces[1..].iter().all(|s| s.contains(word)))
        .cloned()
        .collect();
    if shared.is_empty() {
        return Err(CliError::data(
            "the configured spaces share no vocabulary".to_string(),
        ));
    }
    spaces
        .into_iter()
        .map(|space| {
            if space.len() == shared.len() && space.vocab() == shared.as_slice() {
                return Ok(space);
            }
            let dim = space.dim();
            let mut matrix = Vec::with_capacity(shared.len() * dim);
            for word in &shared {
                matrix.extend_from_slice(space.vector(word).expect("word is shared"));
            }
            EmbeddingSpace::new(
                space.name(),
                dim,
                shared.clone(),
                matrix,
                space.is_standardized(),
            )
            .map_err(CliError::from)
        })
        .collect()
}
