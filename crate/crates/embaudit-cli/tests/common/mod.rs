//! Fixture helpers shared by the CLI integration and acceptance suites.
#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Output;

pub fn write_word2vec(path: &Path, dim: usize, entries: &[(String, Vec<f64>)]) {
    let mut text = format!("{} {}\n", entries.len(), dim);
    for (word, values) in entries {
        text.push_str(word);
        for v in values {
            text.push_str(&format!(" {v}"));
        }
        text.push('\n');
    }
    std::fs::write(path, text).unwrap();
}

pub fn write_lines(path: &Path, lines: &[&str]) {
    let mut text = lines.join("\n");
    text.push('\n');
    std::fs::write(path, text).unwrap();
}

pub fn run_cli(args: &[&str]) -> (i32, String, String) {
    let output: Output = std::process::Command::new(env!("CARGO_BIN_EXE_embaudit"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        output.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&output.stdout).to_string(),
        String::from_utf8_lossy(&output.stderr).to_string(),
    )
}

/// Deterministic pseudo-random values in [-1, 1] keyed by (seed, a, b, d);
/// good enough for fixture geometry, independent of the crate's RNG.
pub fn hash_unit(seed: u64, a: u64, b: u64, d: u64) -> f64 {
    let mut z = seed
        .wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(a.wrapping_mul(0xD1B5_4A32_D192_ED03))
        .wrapping_add(b.wrapping_mul(0x8CB9_2BA7_2F3D_8DD7))
        .wrapping_add(d.wrapping_mul(0xA24B_AED4_963E_E407));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^= z >> 31;
    (z as f64 / u64::MAX as f64) * 2.0 - 1.0
}

/// A small random space over `words`, identical for equal seeds.
pub fn random_entries(words: &[&str], dim: usize, seed: u64) -> Vec<(String, Vec<f64>)> {
    words
        .iter()
        .enumerate()
        .map(|(i, w)| {
            let values = (0..dim)
                .map(|d| hash_unit(seed, i as u64, 0, d as u64))
                .collect();
            (w.to_string(), values)
        })
        .collect()
}

fn write_config(path: &Path, json: serde_json::Value) {
    std::fs::write(path, serde_json::to_string_pretty(&json).unwrap()).unwrap();
}

/// Association-audit fixture: two random spaces over a shared vocabulary,
/// one 3-word category and one lexicon. Returns the config path.
pub fn assoc_config(dir: &Path, seed_b: u64) -> PathBuf {
    let words = [
        "民主", "自由", "选举", "稳定", "繁荣", "动荡", "衰退", "改革", "发展", "评论",
        "新闻", "报道",
    ];
    write_word2vec(&dir.join("a.txt"), 6, &random_entries(&words, 6, 1));
    write_word2vec(&dir.join("b.txt"), 6, &random_entries(&words, 6, seed_b));
    let lists = dir.join("lists");
    std::fs::create_dir_all(&lists).unwrap();
    write_lines(&lists.join("demo.txt"), &["民主", "自由", "选举"]);
    write_lines(&dir.join("pos.txt"), &["稳定", "繁荣"]);
    write_lines(&dir.join("neg.txt"), &["动荡", "衰退"]);
    let config = dir.join("config.json");
    write_config(
        &config,
        serde_json::json!({
            "embeddings": [
                {"name": "corpus_a", "path": dir.join("a.txt")},
                {"name": "corpus_b", "path": dir.join("b.txt")},
            ],
            "word_list_dir": lists,
            "lexicons": [
                {"name": "propaganda", "positive": dir.join("pos.txt"),
                 "negative": dir.join("neg.txt")},
            ],
            "permutation": {"mode": "exact", "seed": 42},
            "output_dir": dir.join("out"),
        }),
    );
    config
}

/// Sentiment fixture: space "planted" moves the "sensitive" category's
/// target words toward the negative cue direction; space "clean" keeps them
/// neutral. The "benign" category is identical in both spaces. Returns the
/// config path.
pub fn sentiment_config(dir: &Path, plant: bool) -> PathBuf {
    let dim = 4;
    let mut vocab: Vec<(String, Vec<f64>)> = Vec::new();
    let mut push = |word: &str, x: f64, i: u64| {
        let mut v = vec![x, 0.0, 0.0, 0.0];
        for (d, item) in v.iter_mut().enumerate().skip(1) {
            *item = 0.05 * hash_unit(11, i, d as u64, 0);
        }
        vocab.push((word.to_string(), v));
    };
    push("正面词", 1.0, 1);
    push("负面词", -1.0, 2);
    for i in 0..10 {
        push(&format!("填充{i}"), 0.1 * hash_unit(3, i, 0, 0), 10 + i);
    }
    for i in 0..5 {
        push(&format!("微正{i}"), 0.3, 30 + i);
    }
    push("平常1", 0.4, 50);
    push("平常2", 0.4, 51);

    let mut vocab_a = vocab.clone();
    let mut vocab_b = vocab;
    for (i, target) in ["敏感1", "敏感2"].iter().enumerate() {
        let neutral = vec![0.0, 0.2, -0.1, 0.1 + i as f64 * 0.05];
        let planted = if plant {
            vec![-0.8, 0.2, -0.1, 0.1 + i as f64 * 0.05]
        } else {
            neutral.clone()
        };
        vocab_a.push((target.to_string(), planted));
        vocab_b.push((target.to_string(), neutral));
    }
    write_word2vec(&dir.join("sent_a.txt"), dim, &vocab_a);
    write_word2vec(&dir.join("sent_b.txt"), dim, &vocab_b);

    let mut train = Vec::new();
    for i in 0..10 {
        train.push(format!("pos\t正面词 填充{i}"));
        train.push(format!("neg\t负面词 填充{i}"));
    }
    std::fs::write(dir.join("train.tsv"), train.join("\n") + "\n").unwrap();

    let mut test = Vec::new();
    for target in ["敏感1", "敏感2"] {
        for i in 0..5 {
            test.push(format!("pos\t{target} 微正{i}\t{target}\tsensitive"));
        }
    }
    for target in ["平常1", "平常2"] {
        for i in 0..5 {
            test.push(format!("pos\t{target} 微正{i} 填充{i}\t{target}\tbenign"));
        }
    }
    std::fs::write(dir.join("test.tsv"), test.join("\n") + "\n").unwrap();

    let config = dir.join("sentiment.json");
    write_config(
        &config,
        serde_json::json!({
            "embeddings": [
                {"name": "planted", "path": dir.join("sent_a.txt")},
                {"name": "clean", "path": dir.join("sent_b.txt")},
            ],
            "headlines": {"train": dir.join("train.tsv"), "test": dir.join("test.tsv")},
            "classifier": {
                "kinds": ["gaussian_nb", "linear_svm"],
                "seed": 9, "reg": 0.01, "epochs": 300
            },
            "segmentation": "whitespace",
            "preprocess": {"strip_digits": false},
            "output_dir": dir.join("out"),
        }),
    );
    config
}
