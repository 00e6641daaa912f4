//! Linear SVM trained by seeded stochastic subgradient descent with the
//! 1/(reg*t) step schedule. Multiclass goes one-vs-rest; the reported model
//! is the average of the iterates, whose regularized hinge objective is the
//! quantity tests track.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::io::Label;
use crate::sentiment::features::FeatureMatrix;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvmTrainMeta {
    pub reg: f64,
    pub epochs: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearSvmModel {
    pub classes: Vec<Label>,
    /// One weight vector per entry of `positive_of`; binary models keep a
    /// single classifier oriented toward the larger class.
    pub weights: Vec<Vec<f64>>,
    pub biases: Vec<f64>,
    pub dim: usize,
    pub meta: SvmTrainMeta,
}

/// Regularized hinge objective `reg/2 ||w||^2 + mean hinge(y (w.x + b))`
/// for a binary problem where `positive` is the +1 class.
pub fn binary_objective(
    features: &FeatureMatrix,
    positive: Label,
    w: &[f64],
    bias: f64,
    reg: f64,
) -> f64 {
    let n = features.n_rows();
    let mut hinge = 0.0;
    for i in 0..n {
        let y = if features.labels()[i] == positive {
            1.0
        } else {
            -1.0
        };
        let margin = y * (dot(w, features.row(i)) + bias);
        hinge += (1.0 - margin).max(0.0);
    }
    0.5 * reg * dot(w, w) + hinge / n as f64
}

/// Per-epoch objective values of the averaged iterate, one series per
/// trained binary classifier.
#[derive(Debug, Clone)]
pub struct SvmTrace {
    pub epoch_objectives: Vec<Vec<f64>>,
}

pub fn train_linear_svm(
    features: &FeatureMatrix,
    classes: &[Label],
    reg: f64,
    epochs: usize,
    seed: u64,
) -> Result<LinearSvmModel> {
    train_linear_svm_traced(features, classes, reg, epochs, seed).map(|(model, _)| model)
}

/// As [`train_linear_svm`], also returning the averaged iterate's objective
/// after each epoch.
pub fn train_linear_svm_traced(
    features: &FeatureMatrix,
    classes: &[Label],
    reg: f64,
    epochs: usize,
    seed: u64,
) -> Result<(LinearSvmModel, SvmTrace)> {
    assert!(reg > 0.0 && epochs > 0, "reg and epochs must be positive");
    let mut classes: Vec<Label> = classes.to_vec();
    classes.sort();
    classes.dedup();
    let present: Vec<Label> = classes
        .iter()
        .copied()
        .filter(|c| features.labels().contains(c))
        .collect();
    if present.len() < 2 {
        return Err(Error::TooFewClasses { n: present.len() });
    }
    let data = features.filter_classes(&present)?;

    // Binary: one classifier oriented toward the larger label. Multiclass:
    // one-vs-rest per class.
    let positives: Vec<Label> = if present.len() == 2 {
        vec![present[1]]
    } else {
        present.clone()
    };

    let mut weights = Vec::with_capacity(positives.len());
    let mut biases = Vec::with_capacity(positives.len());
    let mut epoch_objectives = Vec::with_capacity(positives.len());
    for (k, &positive) in positives.iter().enumerate() {
        let class_seed = mix(seed, k as u64);
        let (w, b, trace) = pegasos_binary(&data, positive, reg, epochs, class_seed);
        weights.push(w);
        biases.push(b);
        epoch_objectives.push(trace);
    }

    Ok((
        LinearSvmModel {
            classes: present,
            weights,
            biases,
            dim: data.dim(),
            meta: SvmTrainMeta { reg, epochs, seed },
        },
        SvmTrace { epoch_objectives },
    ))
}

fn pegasos_binary(
    data: &FeatureMatrix,
    positive: Label,
    reg: f64,
    epochs: usize,
    seed: u64,
) -> (Vec<f64>, f64, Vec<f64>) {
    let n = data.n_rows();
    let dim = data.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut w = vec![0.0; dim];
    let mut b = 0.0;
    let mut w_sum = vec![0.0; dim];
    let mut b_sum = 0.0;
    let mut t = 0u64;
    let mut trace = Vec::with_capacity(epochs);
    // The optimum lies inside ||.|| <= 1/sqrt(reg); projecting onto that
    // ball keeps the huge first steps of the 1/(reg*t) schedule from
    // polluting the average.
    let radius = 1.0 / reg.sqrt();

    for _ in 0..epochs {
        for _ in 0..n {
            t += 1;
            let i = rng.gen_range(0..n);
            let y = if data.labels()[i] == positive { 1.0 } else { -1.0 };
            let x = data.row(i);
            let step = 1.0 / (reg * t as f64);
            let margin = y * (dot(&w, x) + b);
            // The bias rides along as an augmented coordinate, regularized
            // and projected with the weights.
            let shrink = 1.0 - step * reg;
            for v in &mut w {
                *v *= shrink;
            }
            b *= shrink;
            if margin < 1.0 {
                for (v, xi) in w.iter_mut().zip(x) {
                    *v += step * y * xi;
                }
                b += step * y;
            }
            let norm = (dot(&w, &w) + b * b).sqrt();
            if norm > radius {
                let scale = radius / norm;
                for v in &mut w {
                    *v *= scale;
                }
                b *= scale;
            }
            for (s, v) in w_sum.iter_mut().zip(&w) {
                *s += v;
            }
            b_sum += b;
        }
        let avg_w: Vec<f64> = w_sum.iter().map(|s| s / t as f64).collect();
        let avg_b = b_sum / t as f64;
        trace.push(binary_objective(data, positive, &avg_w, avg_b, reg));
    }

    let avg_w: Vec<f64> = w_sum.iter().map(|s| s / t as f64).collect();
    let avg_b = b_sum / t as f64;
    (avg_w, avg_b, trace)
}

impl LinearSvmModel {
    /// One decision value per class, ordered like `classes`. Binary models
    /// report the single classifier's value and its negation.
    pub fn decision_values(&self, row: &[f64]) -> Result<Vec<f64>> {
        if row.len() != self.dim {
            return Err(Error::FeatureDimMismatch {
                expected: self.dim,
                got: row.len(),
            });
        }
        if self.classes.len() == 2 {
            let d = dot(&self.weights[0], row) + self.biases[0];
            Ok(vec![-d, d])
        } else {
            Ok(self
                .weights
                .iter()
                .zip(&self.biases)
                .map(|(w, b)| dot(w, row) + b)
                .collect())
        }
    }

    /// Argmax of the decision values; ties toward the smaller label.
    pub fn predict_row(&self, row: &[f64]) -> Result<Label> {
        let values = self.decision_values(row)?;
        let mut best = 0;
        for (k, value) in values.iter().enumerate().skip(1) {
            if *value > values[best] {
                best = k;
            }
        }
        Ok(self.classes[best])
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn mix(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
