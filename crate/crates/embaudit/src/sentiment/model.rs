//! Classifier wrapper with a plain-text save format, plus accuracy and the
//! external-prediction import path.
//!
//! The model file is line-oriented `key value...` text; `#` lines and blank
//! lines are ignored on load. Floats are written with Rust's shortest
//! round-trippable formatting, so save/load reproduces parameters bit for
//! bit:
//!
//! ```text
//! format embaudit-model 1
//! kind gaussian_nb | linear_svm
//! classes -1 1
//! dim 2
//! # gaussian_nb: per class
//! prior <label> <value>
//! mean <label> <dim values>
//! var <label> <dim values>
//! # linear_svm: training meta then per classifier
//! reg <value>
//! epochs <n>
//! seed <n>
//! weights <positive-label> <dim values>
//! bias <positive-label> <value>
//! ```

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::io::Label;
use crate::sentiment::features::FeatureMatrix;
use crate::sentiment::nb::GaussianNbModel;
use crate::sentiment::svm::{LinearSvmModel, SvmTrainMeta};

#[derive(Debug, Clone, PartialEq)]
pub enum ClassifierModel {
    GaussianNb(GaussianNbModel),
    LinearSvm(LinearSvmModel),
}

impl ClassifierModel {
    pub fn kind(&self) -> &'static str {
        match self {
            ClassifierModel::GaussianNb(_) => "gaussian_nb",
            ClassifierModel::LinearSvm(_) => "linear_svm",
        }
    }

    pub fn classes(&self) -> &[Label] {
        match self {
            ClassifierModel::GaussianNb(m) => &m.classes,
            ClassifierModel::LinearSvm(m) => &m.classes,
        }
    }

    pub fn predict_row(&self, row: &[f64]) -> Result<Label> {
        match self {
            ClassifierModel::GaussianNb(m) => m.predict_row(row),
            ClassifierModel::LinearSvm(m) => m.predict_row(row),
        }
    }

    /// Predict every row of `features`.
    pub fn predict(&self, features: &FeatureMatrix) -> Result<Vec<Label>> {
        (0..features.n_rows())
            .map(|i| self.predict_row(features.row(i)))
            .collect()
    }

    pub fn save<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "format embaudit-model 1")?;
        writeln!(w, "kind {}", self.kind())?;
        let classes: Vec<String> = self.classes().iter().map(|c| c.to_string()).collect();
        writeln!(w, "classes {}", classes.join(" "))?;
        match self {
            ClassifierModel::GaussianNb(m) => {
                writeln!(w, "dim {}", m.dim)?;
                for (k, class) in m.classes.iter().enumerate() {
                    writeln!(w, "prior {class} {}", m.priors[k])?;
                    writeln!(w, "mean {class} {}", join(&m.means[k]))?;
                    writeln!(w, "var {class} {}", join(&m.variances[k]))?;
                }
            }
            ClassifierModel::LinearSvm(m) => {
                writeln!(w, "dim {}", m.dim)?;
                writeln!(w, "reg {}", m.meta.reg)?;
                writeln!(w, "epochs {}", m.meta.epochs)?;
                writeln!(w, "seed {}", m.meta.seed)?;
                let positives: Vec<Label> = if m.classes.len() == 2 {
                    vec![m.classes[1]]
                } else {
                    m.classes.clone()
                };
                for (k, positive) in positives.iter().enumerate() {
                    writeln!(w, "weights {positive} {}", join(&m.weights[k]))?;
                    writeln!(w, "bias {positive} {}", m.biases[k])?;
                }
            }
        }
        Ok(())
    }

    pub fn load<R: BufRead>(reader: R, source_name: &str) -> Result<Self> {
        let fail = |detail: &str| Error::ModelFormat {
            source_name: source_name.to_string(),
            detail: detail.to_string(),
        };
        let mut lines = Vec::new();
        for line in reader.lines() {
            let line = line?;
            let trimmed = line.trim();
            if !trimmed.is_empty() && !trimmed.starts_with('#') {
                lines.push(line);
            }
        }
        let mut iter = lines.iter();
        let header = iter.next().ok_or_else(|| fail("empty file"))?;
        if header.trim() != "format embaudit-model 1" {
            return Err(fail("unrecognized format line"));
        }
        let kind = field(iter.next(), "kind").ok_or_else(|| fail("missing kind"))?;
        let classes_line =
            field(iter.next(), "classes").ok_or_else(|| fail("missing classes"))?;
        let classes = parse_labels(&classes_line).ok_or_else(|| fail("bad classes"))?;
        let dim_line = field(iter.next(), "dim").ok_or_else(|| fail("missing dim"))?;
        let dim: usize = dim_line.trim().parse().map_err(|_| fail("bad dim"))?;

        match kind.as_str() {
            "gaussian_nb" => {
                let mut priors = Vec::new();
                let mut means = Vec::new();
                let mut variances = Vec::new();
                for class in &classes {
                    let prior = field(iter.next(), "prior")
                        .and_then(|rest| labeled_values(&rest, *class))
                        .ok_or_else(|| fail("bad prior line"))?;
                    if prior.len() != 1 {
                        return Err(fail("prior wants one value"));
                    }
                    let mean = field(iter.next(), "mean")
                        .and_then(|rest| labeled_values(&rest, *class))
                        .ok_or_else(|| fail("bad mean line"))?;
                    let var = field(iter.next(), "var")
                        .and_then(|rest| labeled_values(&rest, *class))
                        .ok_or_else(|| fail("bad var line"))?;
                    if mean.len() != dim || var.len() != dim {
                        return Err(fail("parameter length does not match dim"));
                    }
                    priors.push(prior[0]);
                    means.push(mean);
                    variances.push(var);
                }
                Ok(ClassifierModel::GaussianNb(GaussianNbModel {
                    classes,
                    priors,
                    means,
                    variances,
                    dim,
                }))
            }
            "linear_svm" => {
                let reg: f64 = field(iter.next(), "reg")
                    .and_then(|s| s.trim().parse().ok())
                    .ok_or_else(|| fail("bad reg"))?;
                let epochs: usize = field(iter.next(), "epochs")
                    .and_then(|s| s.trim().parse().ok())
                    .ok_or_else(|| fail("bad epochs"))?;
                let seed: u64 = field(iter.next(), "seed")
                    .and_then(|s| s.trim().parse().ok())
                    .ok_or_else(|| fail("bad seed"))?;
                let positives: Vec<Label> = if classes.len() == 2 {
                    vec![classes[1]]
                } else {
                    classes.clone()
                };
                let mut weights = Vec::new();
                let mut biases = Vec::new();
                for positive in &positives {
                    let w = field(iter.next(), "weights")
                        .and_then(|rest| labeled_values(&rest, *positive))
                        .ok_or_else(|| fail("bad weights line"))?;
                    if w.len() != dim {
                        return Err(fail("weights length does not match dim"));
                    }
                    let b = field(iter.next(), "bias")
                        .and_then(|rest| labeled_values(&rest, *positive))
                        .ok_or_else(|| fail("bad bias line"))?;
                    if b.len() != 1 {
                        return Err(fail("bias wants one value"));
                    }
                    weights.push(w);
                    biases.push(b[0]);
                }
                Ok(ClassifierModel::LinearSvm(LinearSvmModel {
                    classes,
                    weights,
                    biases,
                    dim,
                    meta: SvmTrainMeta { reg, epochs, seed },
                }))
            }
            other => Err(fail(&format!("unknown kind {other:?}"))),
        }
    }
}

fn join(values: &[f64]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn field(line: Option<&String>, key: &str) -> Option<String> {
    let line = line?;
    let rest = line.strip_prefix(key)?;
    Some(rest.trim().to_string())
}

fn parse_labels(text: &str) -> Option<Vec<Label>> {
    text.split_whitespace()
        .map(|t| t.parse::<i8>().ok().and_then(Label::from_i8))
        .collect()
}

/// Parse `"<label> v1 v2 ..."`, checking the label matches.
fn labeled_values(rest: &str, expected: Label) -> Option<Vec<f64>> {
    let mut parts = rest.split_whitespace();
    let label: i8 = parts.next()?.parse().ok()?;
    if Label::from_i8(label)? != expected {
        return None;
    }
    parts.map(|t| t.parse::<f64>().ok()).collect()
}

/// Fraction of positions where the two label lists agree.
pub fn accuracy(predicted: &[Label], actual: &[Label]) -> Result<f64> {
    if predicted.len() != actual.len() {
        return Err(Error::LabelLengthMismatch {
            a: predicted.len(),
            b: actual.len(),
        });
    }
    if predicted.is_empty() {
        return Err(Error::Empty {
            source_name: "accuracy".to_string(),
            what: "label list",
        });
    }
    let correct = predicted
        .iter()
        .zip(actual)
        .filter(|(p, a)| p == a)
        .count();
    Ok(correct as f64 / predicted.len() as f64)
}

/// Import externally produced predictions from a `headline_id<TAB>label`
/// stream, e.g. labels from a neural model trained elsewhere.
///
/// Ids are opaque strings (this toolkit writes 0-based record indices) and
/// must be unique.
pub fn import_external_predictions<R: BufRead>(
    reader: R,
    source_name: &str,
) -> Result<Vec<(String, Label)>> {
    let mut out = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let line_no = i + 1;
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split('\t');
        let id = match fields.next() {
            Some(id) if !id.is_empty() => id.to_string(),
            _ => {
                return Err(Error::MissingColumn {
                    source_name: source_name.to_string(),
                    line: line_no,
                    column: "headline_id",
                })
            }
        };
        let token = fields.next().unwrap_or("");
        let label = Label::parse_token(token).ok_or_else(|| Error::UnknownLabel {
            source_name: source_name.to_string(),
            line: line_no,
            token: token.to_string(),
        })?;
        if !seen.insert(id.clone()) {
            return Err(Error::DuplicateId {
                source_name: source_name.to_string(),
                id,
            });
        }
        out.push((id, label));
    }
    if out.is_empty() {
        return Err(Error::Empty {
            source_name: source_name.to_string(),
            what: "prediction file",
        });
    }
    Ok(out)
}
