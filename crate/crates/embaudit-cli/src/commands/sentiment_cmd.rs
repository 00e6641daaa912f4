//! `audit-sentiment`: embed headlines under each space, train the configured
//! classifiers on identical labels, and compare per-category
//! misclassification patterns between spaces with random-intercept fits.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::BufReader;

use embaudit::io::{load_labeled_headlines, HeadlineRecord, Label};
use embaudit::mixed::{build_dataset, compare_models, write_comparison_csv, MisclassDataset};
use embaudit::sentiment::{
    accuracy, embed_headlines, import_external_predictions, preprocess, ClassifierModel,
    FeatureMatrix, Segmenter,
};

use crate::config::{ClassifierKindSetting, LoadedConfig, SegmentationMode};
use crate::{commands, report, CliError};

pub fn run(loaded: &LoadedConfig) -> Result<(), CliError> {
    let config = &loaded.config;
    if config.embeddings.len() < 2 {
        return Err(CliError::usage(
            "audit-sentiment needs at least two embeddings in the config",
        ));
    }
    let headlines = config.headlines.as_ref().ok_or_else(|| {
        CliError::usage("audit-sentiment needs a headlines section in the config")
    })?;
    let classifier = config.classifier.as_ref().ok_or_else(|| {
        CliError::usage("audit-sentiment needs a classifier section in the config")
    })?;
    if classifier.kinds.is_empty() {
        return Err(CliError::usage("classifier.kinds is empty"));
    }

    // Load, optionally standardize, then restrict all spaces to their
    // common vocabulary so every space sees identical tokens.
    let mut spaces = Vec::with_capacity(config.embeddings.len());
    for entry in &config.embeddings {
        let raw = commands::load_space(entry)?;
        spaces.push(if classifier.standardize {
            raw.standardize()?
        } else {
            raw
        });
    }
    let spaces = commands::align_all(spaces)?;

    let segmenter = match config.segmentation {
        SegmentationMode::MaxMatch => Segmenter::max_match(spaces[0].vocab().iter().cloned()),
        SegmentationMode::Whitespace => Segmenter::Whitespace,
    };
    let preprocess_config = config.preprocess.to_config();
    let tokenize = |mut set: embaudit::io::HeadlineSet| -> Vec<HeadlineRecord> {
        for record in &mut set.records {
            let cleaned = preprocess(&record.raw_text, &preprocess_config);
            record.tokens = segmenter.segment(&cleaned);
        }
        set.records
    };

    let train_file = File::open(&headlines.train)
        .map_err(|e| CliError::data(format!("cannot open {}: {e}", headlines.train.display())))?;
    let train_records = tokenize(load_labeled_headlines(
        BufReader::new(train_file),
        &headlines.train.display().to_string(),
    )?);
    let test_file = File::open(&headlines.test)
        .map_err(|e| CliError::data(format!("cannot open {}: {e}", headlines.test.display())))?;
    let test_records = tokenize(load_labeled_headlines(
        BufReader::new(test_file),
        &headlines.test.display().to_string(),
    )?);

    let classes: Vec<Label> = if classifier.three_class {
        vec![Label::Negative, Label::Neutral, Label::Positive]
    } else {
        vec![Label::Negative, Label::Positive]
    };

    // Feature matrices per space. Alignment guarantees matching skip sets;
    // assert it anyway since every later join relies on it.
    let mut train_features = Vec::new();
    let mut test_features = Vec::new();
    for space in &spaces {
        train_features.push(embed_headlines(&train_records, space)?.filter_classes(&classes)?);
        test_features.push(embed_headlines(&test_records, space)?);
    }
    for features in &test_features[1..] {
        if features.kept() != test_features[0].kept() {
            return Err(CliError::data(
                "spaces disagree on embeddable headlines after alignment".to_string(),
            ));
        }
    }
    let kept = test_features[0].kept().to_vec();

    let run_stamp = [
        ("classifier_seed", classifier.seed.to_string()),
        ("standardized_features", classifier.standardize.to_string()),
    ];

    // Train and predict per (kind, space).
    let mut predictions: Vec<Vec<Vec<Label>>> = Vec::new(); // [kind][space][row]
    let accuracy_path = config.output_dir.join("accuracy.csv");
    let accuracy_out = report::create_stamped(
        &accuracy_path,
        "audit-sentiment",
        &loaded.hash,
        &run_stamp,
    )?;
    let mut accuracy_csv = csv::Writer::from_writer(accuracy_out);
    accuracy_csv
        .write_record(["classifier", "space", "n_evaluated", "accuracy"])
        .map_err(|e| CliError::data(e.to_string()))?;
    for kind in &classifier.kinds {
        let mut per_space = Vec::new();
        for (idx, space) in spaces.iter().enumerate() {
            let model = train(kind, &train_features[idx], &classes, classifier)?;
            let model_path = config
                .output_dir
                .join(format!("model_{kind}_{}.txt", space.name()));
            let mut model_out = report::create_stamped(
                &model_path,
                "audit-sentiment",
                &loaded.hash,
                &run_stamp,
            )?;
            model.save(&mut model_out)?;

            let preds = model.predict(&test_features[idx])?;
            let (eval_preds, eval_truth): (Vec<Label>, Vec<Label>) = preds
                .iter()
                .zip(test_features[idx].labels())
                .filter(|(_, truth)| classes.contains(truth))
                .unzip();
            let acc = accuracy(&eval_preds, &eval_truth)?;
            accuracy_csv
                .write_record([
                    &kind.to_string(),
                    space.name(),
                    &eval_preds.len().to_string(),
                    &acc.to_string(),
                ])
                .map_err(|e| CliError::data(e.to_string()))?;
            per_space.push(preds);
        }
        predictions.push(per_space);
    }
    accuracy_csv
        .flush()
        .map_err(|e| CliError::data(e.to_string()))?;
    println!("wrote {}", accuracy_path.display());

    // Rows usable for the mixed comparison: embeddable test headlines that
    // carry a target word and a category.
    let analysis_rows: Vec<usize> = (0..kept.len())
        .filter(|&row| {
            let record = &test_records[kept[row]];
            record.target_word.is_some() && record.category.is_some()
        })
        .collect();

    for (kind_idx, kind) in classifier.kinds.iter().enumerate() {
        for i in 0..spaces.len() {
            for j in (i + 1)..spaces.len() {
                let name_a = spaces[i].name();
                let name_b = spaces[j].name();
                let datasets = category_datasets(
                    &analysis_rows,
                    &kept,
                    &test_records,
                    &predictions[kind_idx][i],
                    &predictions[kind_idx][j],
                )?;
                let table = compare_models(
                    &datasets,
                    &format!("{name_a}:{kind}"),
                    &format!("{name_b}:{kind}"),
                );
                let path = config
                    .output_dir
                    .join(format!("mixed_{kind}_{name_a}_vs_{name_b}.csv"));
                let mut writer =
                    report::create_stamped(&path, "audit-sentiment", &loaded.hash, &run_stamp)?;
                write_comparison_csv(&table, &mut writer)?;
                println!("wrote {}", path.display());
            }
        }
    }

    // Externally produced predictions join by 0-based test record index.
    for external in &config.external_models {
        let preds_a = load_external(&external.predictions_a)?;
        let preds_b = load_external(&external.predictions_b)?;
        let mut rows = Vec::new();
        let mut preds_a_vec = Vec::new();
        let mut preds_b_vec = Vec::new();
        let mut missing = 0usize;
        for &row in &analysis_rows {
            let id = kept[row].to_string();
            match (preds_a.get(&id), preds_b.get(&id)) {
                (Some(&a), Some(&b)) => {
                    rows.push(row);
                    preds_a_vec.push(a);
                    preds_b_vec.push(b);
                }
                _ => missing += 1,
            }
        }
        if missing > 0 {
            log::warn!(
                "{}: {missing} analysis rows have no prediction in both files",
                external.name
            );
        }
        let datasets = category_datasets_from_rows(
            &rows,
            &kept,
            &test_records,
            &preds_a_vec,
            &preds_b_vec,
        )?;
        let name_a = spaces[0].name();
        let name_b = spaces[1].name();
        let table = compare_models(
            &datasets,
            &format!("{name_a}:{}", external.name),
            &format!("{name_b}:{}", external.name),
        );
        let path = config
            .output_dir
            .join(format!("mixed_{}_{name_a}_vs_{name_b}.csv", external.name));
        let mut writer =
            report::create_stamped(&path, "audit-sentiment", &loaded.hash, &[])?;
        write_comparison_csv(&table, &mut writer)?;
        println!("wrote {}", path.display());
    }

    Ok(())
}

fn train(
    kind: &ClassifierKindSetting,
    features: &FeatureMatrix,
    classes: &[Label],
    settings: &crate::config::ClassifierConfig,
) -> Result<ClassifierModel, CliError> {
    Ok(match kind {
        ClassifierKindSetting::GaussianNb => ClassifierModel::GaussianNb(
            embaudit::sentiment::train_gaussian_nb(features, classes)?,
        ),
        ClassifierKindSetting::LinearSvm => {
            ClassifierModel::LinearSvm(embaudit::sentiment::train_linear_svm(
                features,
                classes,
                settings.reg,
                settings.epochs,
                settings.seed,
            )?)
        }
    })
}

fn load_external(
    path: &std::path::Path,
) -> Result<std::collections::HashMap<String, Label>, CliError> {
    let file = File::open(path)
        .map_err(|e| CliError::data(format!("cannot open {}: {e}", path.display())))?;
    let preds =
        import_external_predictions(BufReader::new(file), &path.display().to_string())?;
    Ok(preds.into_iter().collect())
}

/// Split analysis rows by category (sorted) and build one stacked dataset
/// per category, with predictions drawn from the per-row vectors.
fn category_datasets(
    analysis_rows: &[usize],
    kept: &[usize],
    records: &[HeadlineRecord],
    preds_a: &[Label],
    preds_b: &[Label],
) -> Result<Vec<MisclassDataset>, CliError> {
    let a: Vec<Label> = analysis_rows.iter().map(|&r| preds_a[r]).collect();
    let b: Vec<Label> = analysis_rows.iter().map(|&r| preds_b[r]).collect();
    category_datasets_from_rows(analysis_rows, kept, records, &a, &b)
}

fn category_datasets_from_rows(
    rows: &[usize],
    kept: &[usize],
    records: &[HeadlineRecord],
    preds_a: &[Label],
    preds_b: &[Label],
) -> Result<Vec<MisclassDataset>, CliError> {
    let mut by_category: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for (pos, &row) in rows.iter().enumerate() {
        let record = &records[kept[row]];
        let category = record
            .category
            .clone()
            .expect("analysis rows carry categories");
        by_category.entry(category).or_default().push(pos);
    }
    let mut datasets = Vec::with_capacity(by_category.len());
    for (category, positions) in by_category {
        let a: Vec<Label> = positions.iter().map(|&p| preds_a[p]).collect();
        let b: Vec<Label> = positions.iter().map(|&p| preds_b[p]).collect();
        let human: Vec<Label> = positions
            .iter()
            .map(|&p| records[kept[rows[p]]].label)
            .collect();
        let target_words: Vec<String> = positions
            .iter()
            .map(|&p| {
                records[kept[rows[p]]]
                    .target_word
                    .clone()
                    .expect("analysis rows carry target words")
            })
            .collect();
        datasets.push(build_dataset(&a, &b, &human, &target_words, &category)?);
    }
    Ok(datasets)
}
