//! `audit-assoc`: standardize the configured spaces, align each pair, and
//! write one association CSV per pair.

use embaudit::assoc::{run_audit, write_audit_csv};
use embaudit::space::intersect_vocab;

use crate::config::LoadedConfig;
use crate::{commands, report, CliError};

pub fn run(loaded: &LoadedConfig) -> Result<(), CliError> {
    let config = &loaded.config;
    if config.embeddings.len() < 2 {
        return Err(CliError::usage(
            "audit-assoc needs at least two embeddings in the config",
        ));
    }
    let word_list_dir = config.word_list_dir.as_ref().ok_or_else(|| {
        CliError::usage("audit-assoc needs word_list_dir in the config")
    })?;
    let permutation = config.permutation.as_ref().ok_or_else(|| {
        CliError::usage("audit-assoc needs a permutation section in the config")
    })?;
    let plan = permutation.plan()?;

    let categories = commands::load_categories(word_list_dir)?;
    let lexicons = commands::load_lexicons(&config.lexicons)?;

    let mut spaces = Vec::with_capacity(config.embeddings.len());
    for entry in &config.embeddings {
        let raw = commands::load_space(entry)?;
        spaces.push(raw.standardize()?);
    }

    for i in 0..spaces.len() {
        for j in (i + 1)..spaces.len() {
            let name_a = spaces[i].name().to_string();
            let name_b = spaces[j].name().to_string();
            let pair = intersect_vocab(spaces[i].clone(), spaces[j].clone())?;
            let table = run_audit(&categories, &lexicons, &pair, &plan);
            let failed = table.rows.iter().filter(|r| r.outcome.is_err()).count();

            let path = config
                .output_dir
                .join(format!("assoc_{name_a}_vs_{name_b}.csv"));
            let mut writer = report::create_stamped(
                &path,
                "audit-assoc",
                &loaded.hash,
                &[("perm_seed", plan.seed.to_string())],
            )?;
            write_audit_csv(&table, &mut writer)?;
            println!(
                "wrote {} rows ({failed} failed) to {}",
                table.rows.len(),
                path.display()
            );
        }
    }
    Ok(())
}
