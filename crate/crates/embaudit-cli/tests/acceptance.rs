//! Acceptance suite: every shipped-quality bar as an executable check, one
//! test per criterion, each printing a `ACCEPTANCE <n> ...: PASS/FAIL` line.
//!
//! Run with:
//!
//! ```text
//! cargo test -p embaudit-cli --test acceptance -- --nocapture
//! ```
//!
//! Criterion 9 compares against published pretrained vectors; it is skipped
//! unless `EMBAUDIT_BAIDU_VECTORS` and `EMBAUDIT_WIKI_VECTORS` point at the
//! downloaded word2vec text files.

mod common;

use std::panic::{catch_unwind, UnwindSafe};
use std::time::{Duration, Instant};

use embaudit::assoc::{
    run_audit, AssociationQuery, PermutationPlan, TIE_TOLERANCE,
};
use embaudit::io::{AttributeLexicon, CategoryWordList, Label, LexiconKind};
use embaudit::mixed::{fit_random_intercept, MisclassDataset};
use embaudit::sentiment::{
    binary_objective, train_gaussian_nb, train_linear_svm, FeatureMatrix,
};
use embaudit::space::{intersect_vocab, EmbeddingSpace};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn criterion<F: FnOnce() + UnwindSafe>(id: usize, name: &str, body: F) {
    let start = Instant::now();
    let outcome = catch_unwind(body);
    let elapsed = start.elapsed();
    match outcome {
        Ok(()) => println!("ACCEPTANCE {id} {name}: PASS ({elapsed:.2?})"),
        Err(panic) => {
            println!("ACCEPTANCE {id} {name}: FAIL ({elapsed:.2?})");
            std::panic::resume_unwind(panic);
        }
    }
}

fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

fn random_matrix(rows: usize, dim: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    (0..rows * dim).map(|_| gaussian(rng)).collect()
}

// ---------------------------------------------------------------------------
// 1. Standardization
// ---------------------------------------------------------------------------

#[test]
fn criterion_1_standardization() {
    criterion(1, "standardization", || {
        let vocab_size = 1000;
        let dim = 50;
        let mut budget = Duration::ZERO;
        for seed in 0..5u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let vocab: Vec<String> = (0..vocab_size).map(|i| format!("w{i}")).collect();
            let matrix = random_matrix(vocab_size, dim, &mut rng);
            let space =
                EmbeddingSpace::new(format!("s{seed}"), dim, vocab, matrix, false).unwrap();

            let start = Instant::now();
            let space = space.standardize().unwrap();
            for d in 0..dim {
                let column: Vec<f64> = (0..vocab_size).map(|i| space.row(i)[d]).collect();
                let mean = column.iter().sum::<f64>() / vocab_size as f64;
                let var =
                    column.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / vocab_size as f64;
                assert!(mean.abs() < 1e-9, "coordinate {d}: mean {mean}");
                assert!((var.sqrt() - 1.0).abs() < 1e-9, "coordinate {d}: std off");
            }
            // Idempotence: re-standardizing the standardized values moves
            // nothing beyond 1e-12.
            let again = EmbeddingSpace::new(
                "again",
                dim,
                space.vocab().to_vec(),
                (0..space.len()).flat_map(|i| space.row(i).to_vec()).collect(),
                false,
            )
            .unwrap()
            .standardize()
            .unwrap();
            for i in 0..space.len() {
                for (x, y) in space.row(i).iter().zip(again.row(i)) {
                    assert!((x - y).abs() <= 1e-12);
                }
            }
            budget += start.elapsed();
        }
        assert!(budget < Duration::from_secs(1), "took {budget:.2?}");
    });
}

// ---------------------------------------------------------------------------
// 2. Association oracle
// ---------------------------------------------------------------------------

/// Random query fixture: `n` targets, 4+4 attribute words and 6 fillers in
/// two independently drawn spaces (flagged standardized so the geometry is
/// exactly what the generator wrote).
fn query_fixture(
    seed: u64,
    n: usize,
) -> (EmbeddingSpace, EmbeddingSpace, CategoryWordList, AttributeLexicon) {
    let dim = 8;
    let mut words: Vec<String> = (0..n).map(|i| format!("t{i}")).collect();
    words.extend((0..4).map(|i| format!("a{i}")));
    words.extend((0..4).map(|i| format!("b{i}")));
    words.extend((0..6).map(|i| format!("f{i}")));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let space_a = EmbeddingSpace::new(
        "a",
        dim,
        words.clone(),
        random_matrix(words.len(), dim, &mut rng),
        true,
    )
    .unwrap();
    let space_b = EmbeddingSpace::new(
        "b",
        dim,
        words.clone(),
        random_matrix(words.len(), dim, &mut rng),
        true,
    )
    .unwrap();
    let targets =
        CategoryWordList::new("random", (0..n).map(|i| format!("t{i}")).collect()).unwrap();
    let lexicon = AttributeLexicon::new(
        "toy",
        LexiconKind::UserDefined,
        (0..4).map(|i| format!("a{i}")).collect(),
        (0..4).map(|i| format!("b{i}")).collect(),
    )
    .unwrap();
    (space_a, space_b, targets, lexicon)
}

/// Test-local association math, sharing nothing with the library path.
mod oracle {
    use super::*;

    pub fn cosine(u: &[f64], v: &[f64]) -> f64 {
        let dot: f64 = u.iter().zip(v).map(|(x, y)| x * y).sum();
        let nu: f64 = u.iter().map(|x| x * x).sum::<f64>().sqrt();
        let nv: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        dot / (nu * nv)
    }

    pub fn association(
        space: &EmbeddingSpace,
        target: &str,
        lexicon: &AttributeLexicon,
    ) -> f64 {
        let t = space.vector(target).unwrap();
        let mean = |words: &[String]| -> f64 {
            let total: f64 = words
                .iter()
                .map(|w| cosine(t, space.vector(w).unwrap()))
                .sum();
            total / words.len() as f64
        };
        mean(&lexicon.positive) - mean(&lexicon.negative)
    }

    /// Exhaustive sign-flip enumeration over per-target deltas.
    pub fn enumerate(deltas: &[f64]) -> (u64, u64, f64) {
        let n = deltas.len();
        let observed: f64 = deltas.iter().sum();
        let mut ge = 0u64;
        let mut ties = 0u64;
        for mask in 0..(1u64 << n) {
            let mut stat = 0.0;
            for (i, d) in deltas.iter().enumerate() {
                stat += if (mask >> i) & 1 == 1 { -d } else { *d };
            }
            let tie = (stat - observed).abs() <= TIE_TOLERANCE;
            if tie {
                ties += 1;
            }
            if tie || stat > observed {
                ge += 1;
            }
        }
        (ge, ties, observed)
    }
}

#[test]
fn criterion_2_association_oracle() {
    criterion(2, "association oracle", || {
        let start = Instant::now();
        for query_idx in 0..50u64 {
            let n = 2 + (query_idx as usize % 9); // cycles 2..=10
            let (a, b, targets, lexicon) = query_fixture(100 + query_idx, n);

            // Independent oracle from the raw vectors.
            let deltas: Vec<f64> = targets
                .words
                .iter()
                .map(|t| {
                    oracle::association(&a, t, &lexicon)
                        - oracle::association(&b, t, &lexicon)
                })
                .collect();
            let (oracle_ge, oracle_ties, oracle_obs) = oracle::enumerate(&deltas);

            let pair = intersect_vocab(a, b).unwrap();
            let query = AssociationQuery::new(&targets, &lexicon, &pair).unwrap();
            assert!((query.observed_statistic() - oracle_obs).abs() < 1e-9);
            let exact = query
                .permutation_p_value(&PermutationPlan::exact(0))
                .unwrap();
            assert_eq!(exact.ge_count, oracle_ge, "query {query_idx}: ge counts differ");
            assert_eq!(exact.tie_count, oracle_ties, "query {query_idx}: tie counts differ");

            let mc = query
                .permutation_p_value(&PermutationPlan::monte_carlo(100_000, query_idx).unwrap())
                .unwrap();
            // Tail fractions agree for every n; the smoothed p additionally
            // agrees once 2^n makes the smoothing offset < 0.01.
            let exact_tail = exact.ge_count as f64 / exact.evaluated as f64;
            let mc_tail = mc.ge_count as f64 / mc.evaluated as f64;
            assert!(
                (mc_tail - exact_tail).abs() <= 0.01,
                "query {query_idx}: tails {exact_tail} vs {mc_tail}"
            );
            if n >= 8 {
                assert!(
                    (mc.p_value - exact.p_value).abs() <= 0.01,
                    "query {query_idx}: p {} vs {}",
                    exact.p_value,
                    mc.p_value
                );
            }
        }
        let elapsed = start.elapsed();
        assert!(elapsed < Duration::from_secs(30), "took {elapsed:.2?}");
    });
}

// ---------------------------------------------------------------------------
// 3. Antisymmetry under label swap
// ---------------------------------------------------------------------------

#[test]
fn criterion_3_antisymmetry() {
    criterion(3, "label-swap antisymmetry", || {
        for query_idx in 0..100u64 {
            let n = 2 + (query_idx as usize % 9);
            let (a, b, targets, lexicon) = query_fixture(300 + query_idx, n);
            let fwd_pair = intersect_vocab(a.clone(), b.clone()).unwrap();
            let swp_pair = intersect_vocab(b, a).unwrap();
            let fwd = AssociationQuery::new(&targets, &lexicon, &fwd_pair).unwrap();
            let swp = AssociationQuery::new(&targets, &lexicon, &swp_pair).unwrap();

            let stat_sum = fwd.observed_statistic() + swp.observed_statistic();
            assert!(stat_sum.abs() <= 1e-12, "statistic sum {stat_sum}");
            let effect_sum = fwd.effect_size().unwrap() + swp.effect_size().unwrap();
            assert!(effect_sum.abs() <= 1e-12, "effect sum {effect_sum}");

            let plan = PermutationPlan::exact(0);
            let out_f = fwd.permutation_p_value(&plan).unwrap();
            let out_s = swp.permutation_p_value(&plan).unwrap();
            if out_f.tie_count == 1 && out_s.tie_count == 1 {
                assert_eq!(out_f.ge_count + out_s.ge_count, (1u64 << n) + 1);
                let expected = 1.0 + 2.0 / ((1u64 << n) as f64 + 1.0);
                assert!((out_f.p_value + out_s.p_value - expected).abs() <= 1e-12);
            }
        }
    });
}

// ---------------------------------------------------------------------------
// 4. Planted-bias recovery
// ---------------------------------------------------------------------------

/// Synthetic corpus pair: `planted` moves every target vector toward the
/// negative-attribute mean (and away from the positive one); `clean` leaves
/// them alone. Both spaces are genuinely standardized afterwards.
fn planted_pair(seed: u64) -> (CategoryWordList, AttributeLexicon, EmbeddingSpace, EmbeddingSpace) {
    let dim = 16;
    let n_targets = 8;
    let n_attrs = 8;
    let n_fillers = 150;
    let mut words: Vec<String> = (0..n_targets).map(|i| format!("t{i}")).collect();
    words.extend((0..n_attrs).map(|i| format!("a{i}")));
    words.extend((0..n_attrs).map(|i| format!("b{i}")));
    words.extend((0..n_fillers).map(|i| format!("f{i}")));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let clean_matrix = random_matrix(words.len(), dim, &mut rng);
    let mut planted_matrix = random_matrix(words.len(), dim, &mut rng);

    let mean_of = |matrix: &[f64], start: usize| -> Vec<f64> {
        let mut mean = vec![0.0; dim];
        for row in start..start + n_attrs {
            for (m, v) in mean.iter_mut().zip(&matrix[row * dim..(row + 1) * dim]) {
                *m += v / n_attrs as f64;
            }
        }
        mean
    };
    let pos_mean = mean_of(&planted_matrix, n_targets);
    let neg_mean = mean_of(&planted_matrix, n_targets + n_attrs);
    let strength = 1.5;
    for target in 0..n_targets {
        for d in 0..dim {
            planted_matrix[target * dim + d] += strength * (neg_mean[d] - pos_mean[d]);
        }
    }

    let clean = EmbeddingSpace::new("clean", dim, words.clone(), clean_matrix, false)
        .unwrap()
        .standardize()
        .unwrap();
    let planted = EmbeddingSpace::new("planted", dim, words, planted_matrix, false)
        .unwrap()
        .standardize()
        .unwrap();
    let targets =
        CategoryWordList::new("planted", (0..n_targets).map(|i| format!("t{i}")).collect())
            .unwrap();
    let lexicon = AttributeLexicon::new(
        "toy",
        LexiconKind::UserDefined,
        (0..n_attrs).map(|i| format!("a{i}")).collect(),
        (0..n_attrs).map(|i| format!("b{i}")).collect(),
    )
    .unwrap();
    (targets, lexicon, clean, planted)
}

#[test]
fn criterion_4_planted_bias_recovery() {
    criterion(4, "planted-bias recovery", || {
        let mut successes = 0;
        for rep in 0..100u64 {
            let (targets, lexicon, clean, planted) = planted_pair(4000 + rep);
            let plan = PermutationPlan::monte_carlo(100_000, 9000 + rep).unwrap();

            // Upper-tail significance with the clean corpus as side a...
            let fwd = intersect_vocab(clean.clone(), planted.clone()).unwrap();
            let table = run_audit(
                std::slice::from_ref(&targets),
                std::slice::from_ref(&lexicon),
                &fwd,
                &plan,
            );
            let fwd_row = table.rows[0].outcome.as_ref().unwrap();

            // ...and sign recovery with the planted corpus as side a (the
            // suspect-first orientation used for reporting).
            let rev = intersect_vocab(planted.clone(), clean.clone()).unwrap();
            let table = run_audit(
                std::slice::from_ref(&targets),
                std::slice::from_ref(&lexicon),
                &rev,
                &plan,
            );
            let rev_row = table.rows[0].outcome.as_ref().unwrap();

            if fwd_row.p_value < 0.05 && fwd_row.effect_size > 0.0 && rev_row.effect_size < 0.0
            {
                successes += 1;
            }
        }
        assert!(successes >= 95, "only {successes}/100 replications recovered the plant");
    });
}

// ---------------------------------------------------------------------------
// 5. Classifiers
// ---------------------------------------------------------------------------

fn margin_separable(n_per_side: usize, seed: u64) -> FeatureMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    for _ in 0..n_per_side {
        rows.push(vec![
            2.0 + rng.gen_range(-0.5..0.5),
            2.0 + rng.gen_range(-0.5..0.5),
        ]);
        labels.push(Label::Positive);
        rows.push(vec![
            -2.0 + rng.gen_range(-0.5..0.5),
            -2.0 + rng.gen_range(-0.5..0.5),
        ]);
        labels.push(Label::Negative);
    }
    FeatureMatrix::from_rows(2, rows, labels).unwrap()
}

#[test]
fn criterion_5_classifiers() {
    criterion(5, "classifier oracles and determinism", || {
        // Gaussian NB posteriors against a closed-form oracle.
        let rows = vec![
            vec![0.1, 0.4],
            vec![-0.2, 0.2],
            vec![0.3, -0.1],
            vec![1.9, 1.3],
            vec![2.2, 0.9],
            vec![1.6, 1.7],
        ];
        let labels = vec![
            Label::Negative,
            Label::Negative,
            Label::Negative,
            Label::Positive,
            Label::Positive,
            Label::Positive,
        ];
        let features = FeatureMatrix::from_rows(2, rows.clone(), labels.clone()).unwrap();
        let nb = train_gaussian_nb(&features, &[Label::Negative, Label::Positive]).unwrap();
        for query in [[0.8, 0.7], [1.4, 0.2], [-0.4, 1.0]] {
            let mut oracle_scores = Vec::new();
            for class in [Label::Negative, Label::Positive] {
                let class_rows: Vec<&Vec<f64>> = rows
                    .iter()
                    .zip(&labels)
                    .filter(|(_, l)| **l == class)
                    .map(|(r, _)| r)
                    .collect();
                let n = class_rows.len() as f64;
                let mut score = (n / rows.len() as f64).ln();
                for d in 0..2 {
                    let mean = class_rows.iter().map(|r| r[d]).sum::<f64>() / n;
                    let var =
                        class_rows.iter().map(|r| (r[d] - mean).powi(2)).sum::<f64>() / n;
                    let pdf = (-(query[d] - mean).powi(2) / (2.0 * var)).exp()
                        / (2.0 * std::f64::consts::PI * var).sqrt();
                    score += pdf.ln();
                }
                oracle_scores.push(score);
            }
            let normalize = |scores: &[f64]| -> Vec<f64> {
                let max = scores.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                let z: f64 = scores.iter().map(|s| (s - max).exp()).sum();
                scores.iter().map(|s| (s - max).exp() / z).collect()
            };
            let got = normalize(&nb.log_scores(&query).unwrap());
            let want = normalize(&oracle_scores);
            for (g, w) in got.iter().zip(&want) {
                assert!((g - w).abs() < 1e-9, "posterior {g} vs oracle {w}");
            }
        }

        // SVM: full training accuracy on margin-separable data at defaults.
        let data = margin_separable(20, 7);
        let classes = [Label::Negative, Label::Positive];
        let svm = train_linear_svm(&data, &classes, 1e-4, 50, 42).unwrap();
        for i in 0..data.n_rows() {
            assert_eq!(
                svm.predict_row(data.row(i)).unwrap(),
                data.labels()[i],
                "row {i} misclassified"
            );
        }

        // SVM objective within 5% of a coarse grid-search optimum.
        let grid_data = margin_separable(10, 21);
        let reg = 0.1;
        let model = train_linear_svm(&grid_data, &classes, reg, 400, 3).unwrap();
        let trained = binary_objective(
            &grid_data,
            Label::Positive,
            &model.weights[0],
            model.biases[0],
            reg,
        );
        let grid: Vec<f64> = (-12..=12).map(|i| i as f64 * 0.25).collect();
        let mut best = f64::INFINITY;
        for &w1 in &grid {
            for &w2 in &grid {
                for &b in &grid {
                    let obj = binary_objective(&grid_data, Label::Positive, &[w1, w2], b, reg);
                    best = best.min(obj);
                }
            }
        }
        assert!(
            trained <= best * 1.05,
            "objective {trained} not within 5% of grid optimum {best}"
        );

        // Determinism: identical seeds, identical models.
        let svm2 = train_linear_svm(&data, &classes, 1e-4, 50, 42).unwrap();
        assert_eq!(svm, svm2);
        let nb2 = train_gaussian_nb(&features, &classes).unwrap();
        assert_eq!(nb, nb2);
    });
}

// ---------------------------------------------------------------------------
// 6. Mixed effects
// ---------------------------------------------------------------------------

/// Balanced synthetic dataset: `n_groups` target words, `per_half` headlines
/// per group under each model half.
fn synthetic_mixed(
    seed: u64,
    n_groups: usize,
    per_half: usize,
    beta: f64,
    sigma_alpha: f64,
    sigma_eps: f64,
) -> MisclassDataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut y = Vec::new();
    let mut x = Vec::new();
    let mut group = Vec::new();
    for g in 0..n_groups {
        let alpha = sigma_alpha * gaussian(&mut rng);
        for _ in 0..per_half {
            y.push(beta + alpha + sigma_eps * gaussian(&mut rng));
            x.push(1.0);
            group.push(g);
            y.push(alpha + sigma_eps * gaussian(&mut rng));
            x.push(0.0);
            group.push(g);
        }
    }
    MisclassDataset {
        category: "synthetic".to_string(),
        y,
        x,
        group,
        group_names: (0..n_groups).map(|g| format!("g{g}")).collect(),
        n_headlines: n_groups * per_half,
    }
}

/// Dense-matrix REML oracle: eigendecompose ZZ' once (nalgebra), then grid
/// the profiled criterion over 10^4 log-spaced variance ratios with exact
/// GLS solves in the eigenbasis. Shares no code with the grouped main path.
fn dense_grid_oracle(data: &MisclassDataset) -> f64 {
    use nalgebra::{DMatrix, DVector};
    let n = data.y.len();
    let q = data.group_names.len();
    let mut zzt = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if data.group[i] == data.group[j] {
                zzt[(i, j)] = 1.0;
            }
        }
    }
    let _ = q;
    let eigen = zzt.symmetric_eigen();
    let u = eigen.eigenvectors;
    let d = eigen.eigenvalues;

    let x = DMatrix::<f64>::from_fn(n, 2, |i, c| if c == 0 { 1.0 } else { data.x[i] });
    let y = DVector::<f64>::from_column_slice(&data.y);
    let xt = u.transpose() * &x;
    let yt = u.transpose() * &y;

    let grid_points = 10_000;
    let mut best = (f64::INFINITY, f64::NAN);
    for k in 0..grid_points {
        let log_lambda = -12.0 + 24.0 * k as f64 / (grid_points - 1) as f64;
        let lambda = log_lambda.exp();
        let mut a11 = 0.0;
        let mut a12 = 0.0;
        let mut a22 = 0.0;
        let mut b1 = 0.0;
        let mut b2 = 0.0;
        let mut yhy = 0.0;
        let mut logdet_h = 0.0;
        for i in 0..n {
            let weight = 1.0 / (1.0 + lambda * d[i].max(0.0));
            let (x1, x2, yi) = (xt[(i, 0)], xt[(i, 1)], yt[i]);
            a11 += weight * x1 * x1;
            a12 += weight * x1 * x2;
            a22 += weight * x2 * x2;
            b1 += weight * x1 * yi;
            b2 += weight * x2 * yi;
            yhy += weight * yi * yi;
            logdet_h += (1.0 + lambda * d[i].max(0.0)).ln();
        }
        let det = a11 * a22 - a12 * a12;
        let mu = (a22 * b1 - a12 * b2) / det;
        let beta = (a11 * b2 - a12 * b1) / det;
        let quad = (yhy - b1 * mu - b2 * beta).max(1e-300);
        let objective = (n as f64 - 2.0) * quad.ln() + logdet_h + det.ln();
        if objective < best.0 {
            best = (objective, beta);
        }
    }
    best.1
}

#[test]
fn criterion_6_mixed_effects() {
    criterion(6, "mixed-effects oracle and coverage", || {
        let start = Instant::now();
        let (true_beta, sigma_alpha, sigma_eps) = (0.10, 0.5, 1.0);

        let data = synthetic_mixed(2026, 50, 10, true_beta, sigma_alpha, sigma_eps);
        let fit = fit_random_intercept(&data).unwrap();
        assert!(fit.converged);
        assert!(
            (fit.beta - true_beta).abs() <= 3.0 * fit.se_beta,
            "beta {} strays from truth (se {})",
            fit.beta,
            fit.se_beta
        );
        let oracle_beta = dense_grid_oracle(&data);
        assert!(
            (fit.beta - oracle_beta).abs() < 1e-6,
            "beta {} vs oracle {}",
            fit.beta,
            oracle_beta
        );

        let mut covered = 0;
        for rep in 0..200u64 {
            let data = synthetic_mixed(6000 + rep, 50, 10, true_beta, sigma_alpha, sigma_eps);
            let fit = fit_random_intercept(&data).unwrap();
            if (fit.beta - true_beta).abs() <= 1.96 * fit.se_beta {
                covered += 1;
            }
        }
        assert!(
            (180..=200).contains(&covered),
            "95% Wald interval covered the truth in {covered}/200 runs"
        );

        let elapsed = start.elapsed();
        assert!(elapsed < Duration::from_secs(60), "took {elapsed:.2?}");
    });
}

// ---------------------------------------------------------------------------
// 7. End-to-end CLI determinism
// ---------------------------------------------------------------------------

#[test]
fn criterion_7_cli_determinism() {
    criterion(7, "byte-identical CLI reruns", || {
        let dir = tempfile::TempDir::new().unwrap();

        let assoc = common::assoc_config(dir.path(), 5);
        for out in ["a1", "a2"] {
            let (code, _, stderr) = common::run_cli(&[
                "audit-assoc",
                "--config",
                assoc.to_str().unwrap(),
                "--out",
                dir.path().join(out).to_str().unwrap(),
            ]);
            assert_eq!(code, 0, "stderr: {stderr}");
        }
        let file = "assoc_corpus_a_vs_corpus_b.csv";
        assert_eq!(
            std::fs::read(dir.path().join("a1").join(file)).unwrap(),
            std::fs::read(dir.path().join("a2").join(file)).unwrap(),
            "association CSVs differ between runs"
        );

        let sentiment = common::sentiment_config(dir.path(), true);
        for out in ["s1", "s2"] {
            let (code, _, stderr) = common::run_cli(&[
                "audit-sentiment",
                "--config",
                sentiment.to_str().unwrap(),
                "--out",
                dir.path().join(out).to_str().unwrap(),
            ]);
            assert_eq!(code, 0, "stderr: {stderr}");
        }
        for file in [
            "accuracy.csv",
            "mixed_gaussian_nb_planted_vs_clean.csv",
            "mixed_linear_svm_planted_vs_clean.csv",
        ] {
            assert_eq!(
                std::fs::read(dir.path().join("s1").join(file)).unwrap(),
                std::fs::read(dir.path().join("s2").join(file)).unwrap(),
                "{file} differs between runs"
            );
        }
    });
}

// ---------------------------------------------------------------------------
// 8. Scale
// ---------------------------------------------------------------------------

#[test]
fn criterion_8_scale() {
    criterion(8, "350k-vocabulary audit under 60s", || {
        let vocab_size = 350_000;
        let dim = 300;
        let vocab: Vec<String> = (0..vocab_size).map(|i| format!("w{i}")).collect();
        let uniform = |rng: &mut ChaCha8Rng| -> Vec<f64> {
            (0..vocab_size * dim)
                .map(|_| (rng.next_u64() as f64 / u64::MAX as f64) * 2.0 - 1.0)
                .collect()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(88);
        let space_a =
            EmbeddingSpace::new("big_a", dim, vocab.clone(), uniform(&mut rng), false).unwrap();
        let space_b =
            EmbeddingSpace::new("big_b", dim, vocab.clone(), uniform(&mut rng), false).unwrap();

        let categories: Vec<CategoryWordList> = (0..10)
            .map(|c| {
                CategoryWordList::new(
                    format!("category{c}"),
                    (0..15).map(|t| format!("w{}", 1000 * (c * 15 + t) + 7)).collect(),
                )
                .unwrap()
            })
            .collect();
        let lexicons: Vec<AttributeLexicon> = (0..2)
            .map(|l| {
                AttributeLexicon::new(
                    format!("lexicon{l}"),
                    LexiconKind::UserDefined,
                    (0..16).map(|i| format!("w{}", 200_000 + 100 * (l * 16 + i))).collect(),
                    (0..16).map(|i| format!("w{}", 210_000 + 100 * (l * 16 + i))).collect(),
                )
                .unwrap()
            })
            .collect();
        let plan = PermutationPlan::monte_carlo(100_000, 42).unwrap();

        let start = Instant::now();
        let space_a = space_a.standardize().unwrap();
        let space_b = space_b.standardize().unwrap();
        let pair = intersect_vocab(space_a, space_b).unwrap();
        assert_eq!(pair.shared_vocab().len(), vocab_size);
        let table = run_audit(&categories, &lexicons, &pair, &plan);
        let elapsed = start.elapsed();

        assert_eq!(table.rows.len(), 20);
        for row in &table.rows {
            let result = row.outcome.as_ref().expect("row failed");
            assert!(result.p_value > 0.0 && result.p_value <= 1.0);
            assert!(result.effect_size.is_finite());
            assert_eq!(result.n_targets_used, 15);
        }
        assert!(
            elapsed < Duration::from_secs(60),
            "standardize + intersect + audit took {elapsed:.2?}"
        );
        println!("  criterion 8 audit wall time: {elapsed:.2?}");
    });
}

// ---------------------------------------------------------------------------
// 9. Conditional reproduction against published vectors
// ---------------------------------------------------------------------------

/// Reference effect sizes and p-values for the censored-corpus-first
/// orientation under the propaganda lexicon, keyed by shipped category file.
const REFERENCE_ROWS: [(&str, f64, f64); 10] = [
    ("freedom", -0.62, 0.01),
    ("democracy", -0.50, 0.05),
    ("election", -0.27, 0.13),
    ("collective_action", -0.66, 0.00),
    ("negative_figures", -0.91, 0.00),
    ("social_control", 0.70, 0.04),
    ("surveillance", 0.09, 0.32),
    ("ccp", 1.05, 0.02),
    ("historical_events", 0.14, 0.19),
    ("positive_figures", 0.59, 0.00),
];

#[test]
fn criterion_9_published_vectors_conditional() {
    criterion(9, "published-vector reproduction (conditional)", || {
        let (baidu_path, wiki_path) = match (
            std::env::var("EMBAUDIT_BAIDU_VECTORS"),
            std::env::var("EMBAUDIT_WIKI_VECTORS"),
        ) {
            (Ok(b), Ok(w)) => (b, w),
            _ => {
                println!(
                    "  SKIP: set EMBAUDIT_BAIDU_VECTORS and EMBAUDIT_WIKI_VECTORS to the \
                     downloaded word2vec text files to run this criterion"
                );
                return;
            }
        };

        let data_dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data");
        let load = |path: &str, name: &str| -> EmbeddingSpace {
            let file = std::fs::File::open(path).expect("vector file opens");
            embaudit::io::parse_word2vec_text(std::io::BufReader::new(file), name)
                .expect("vector file parses")
                .space
                .standardize()
                .expect("standardizes")
        };
        let baidu = load(&baidu_path, "baidu");
        let wiki = load(&wiki_path, "wikipedia");

        let mut categories = Vec::new();
        for (stem, _, _) in REFERENCE_ROWS {
            let path = data_dir.join("targets").join(format!("{stem}.txt"));
            let file = std::fs::File::open(&path).expect("target list opens");
            categories
                .push(embaudit::io::load_word_list(std::io::BufReader::new(file), stem).unwrap());
        }
        let open = |name: &str| {
            std::io::BufReader::new(
                std::fs::File::open(data_dir.join("lexicons").join(name)).unwrap(),
            )
        };
        let lexicon = AttributeLexicon::load(
            "propaganda",
            LexiconKind::Propaganda,
            open("propaganda_positive.txt"),
            open("propaganda_negative.txt"),
        )
        .unwrap();

        let plan = PermutationPlan::monte_carlo(100_000, 42).unwrap();
        // Censored corpus as side a for signs; the swapped orientation
        // supplies the other tail for directional significance.
        let fwd = intersect_vocab(baidu.clone(), wiki.clone()).unwrap();
        let fwd_table = run_audit(&categories, std::slice::from_ref(&lexicon), &fwd, &plan);
        let swp = intersect_vocab(wiki, baidu).unwrap();
        let swp_table = run_audit(&categories, std::slice::from_ref(&lexicon), &swp, &plan);

        let mut significance_agreements = 0;
        for (row_idx, (stem, want_effect, want_p)) in REFERENCE_ROWS.iter().enumerate() {
            let got = fwd_table.rows[row_idx].outcome.as_ref().expect("row fits");
            let got_swapped = swp_table.rows[row_idx].outcome.as_ref().expect("row fits");
            assert_eq!(&got.category, stem);
            assert!(
                got.effect_size.signum() == want_effect.signum(),
                "{stem}: effect {} disagrees with reference {want_effect}",
                got.effect_size
            );
            if got.n_targets_used >= 10 {
                assert!(
                    (got.effect_size - want_effect).abs() <= 0.05,
                    "{stem}: effect {} vs reference {want_effect}",
                    got.effect_size
                );
            }
            let directional_p = got.p_value.min(got_swapped.p_value);
            if (directional_p <= 0.05) == (*want_p <= 0.05) {
                significance_agreements += 1;
            }
        }
        assert!(
            significance_agreements >= 9,
            "significance agreed on only {significance_agreements}/10 rows"
        );
    });
}
