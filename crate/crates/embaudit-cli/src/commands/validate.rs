//! `validate`: open and parse every configured input, check the spaces
//! agree on dimensionality, and report "ok" or the first named problem.

use std::fs::File;
use std::io::{BufRead, BufReader};

use embaudit::io::load_labeled_headlines;

use crate::config::LoadedConfig;
use crate::{commands, CliError};

pub fn run(loaded: &LoadedConfig) -> Result<(), CliError> {
    let config = &loaded.config;

    let mut dims: Vec<(String, usize)> = Vec::new();
    for entry in &config.embeddings {
        let file = File::open(&entry.path)
            .map_err(|e| CliError::data(format!("cannot open {}: {e}", entry.path.display())))?;
        let mut header = String::new();
        BufReader::new(file).read_line(&mut header)?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let (size, dim): (usize, usize) = match fields.as_slice() {
            [size, dim] => (
                size.parse().map_err(|_| bad_header(entry))?,
                dim.parse().map_err(|_| bad_header(entry))?,
            ),
            _ => return Err(bad_header(entry)),
        };
        println!("ok: embedding {} ({size} words, dim {dim})", entry.name);
        dims.push((entry.name.clone(), dim));
    }
    if let Some(((first_name, first_dim), rest)) = dims.split_first() {
        for (name, dim) in rest {
            if dim != first_dim {
                return Err(CliError::data(format!(
                    "dimension mismatch: {first_name} has dim {first_dim} but {name} has dim {dim}"
                )));
            }
        }
    }

    if let Some(dir) = &config.word_list_dir {
        let categories = commands::load_categories(dir)?;
        println!(
            "ok: {} target categories ({})",
            categories.len(),
            categories
                .iter()
                .map(|c| c.category.as_str())
                .collect::<Vec<_>>()
                .join(", ")
        );
    }

    if !config.lexicons.is_empty() {
        let lexicons = commands::load_lexicons(&config.lexicons)?;
        for lexicon in &lexicons {
            println!(
                "ok: lexicon {} ({} positive, {} negative)",
                lexicon.name,
                lexicon.positive.len(),
                lexicon.negative.len()
            );
        }
    }

    if let Some(headlines) = &config.headlines {
        for (role, path) in [("train", &headlines.train), ("test", &headlines.test)] {
            let file = File::open(path)
                .map_err(|e| CliError::data(format!("cannot open {}: {e}", path.display())))?;
            let set =
                load_labeled_headlines(BufReader::new(file), &path.display().to_string())?;
            println!(
                "ok: {role} headlines ({} records, {} duplicates dropped)",
                set.records.len(),
                set.duplicates_dropped
            );
        }
    }

    if let Some(permutation) = &config.permutation {
        let plan = permutation.plan()?;
        println!(
            "ok: permutation plan ({} seed {})",
            plan.mode.as_str(),
            plan.seed
        );
    }

    for external in &config.external_models {
        for path in [&external.predictions_a, &external.predictions_b] {
            let file = File::open(path)
                .map_err(|e| CliError::data(format!("cannot open {}: {e}", path.display())))?;
            let preds = embaudit::sentiment::import_external_predictions(
                BufReader::new(file),
                &path.display().to_string(),
            )?;
            println!(
                "ok: external predictions {} ({} rows)",
                path.display(),
                preds.len()
            );
        }
    }

    println!("ok");
    Ok(())
}

fn bad_header(entry: &crate::config::EmbeddingEntry) -> CliError {
    CliError::data(format!(
        "embedding {} ({}) does not start with a \"<vocab_size> <dim>\" header",
        entry.name,
        entry.path.display()
    ))
}
