//! `expand-targets`: nearest-neighbor candidate lists for a seed word, one
//! word-list file per space, meant for manual pruning into category lists.

use std::io::Write;

use crate::config::LoadedConfig;
use crate::{commands, report, CliError};

pub fn run(loaded: &LoadedConfig, seed_word: &str, k: usize) -> Result<(), CliError> {
    let config = &loaded.config;
    for entry in &config.embeddings {
        let space = commands::load_space(entry)?;
        let neighbors = space.nearest_neighbors(seed_word, k)?;
        let path = config
            .output_dir
            .join(format!("targets_{}_{}.txt", entry.name, seed_word));
        let mut writer = report::create_stamped(&path, "expand-targets", &loaded.hash, &[])?;
        writeln!(
            writer,
            "# space={} seed_word={seed_word} k={k} (one neighbor per line, ranked)",
            entry.name
        )?;
        for neighbor in &neighbors {
            writeln!(writer, "# cosine {}", neighbor.cosine)?;
            writeln!(writer, "{}", neighbor.word)?;
        }
        println!(
            "wrote {} neighbors of {seed_word} in {} to {}",
            neighbors.len(),
            entry.name,
            path.display()
        );
    }
    Ok(())
}
