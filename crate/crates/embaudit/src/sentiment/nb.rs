//! Gaussian Naive Bayes over dense embedding features.
//!
//! Priors are class frequencies; each coordinate gets a class-conditional
//! Gaussian with maximum-likelihood mean and variance, floored at
//! [`VARIANCE_FLOOR`] so constant coordinates stay usable.

use crate::error::{Error, Result};
use crate::io::Label;
use crate::sentiment::features::FeatureMatrix;

pub const VARIANCE_FLOOR: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct GaussianNbModel {
    pub classes: Vec<Label>,
    pub priors: Vec<f64>,
    /// Per class, per coordinate.
    pub means: Vec<Vec<f64>>,
    pub variances: Vec<Vec<f64>>,
    pub dim: usize,
}

/// Fit class priors and per-coordinate Gaussians on the rows of `features`
/// whose label is in `classes`. Every requested class present in the data
/// needs at least 2 rows.
pub fn train_gaussian_nb(features: &FeatureMatrix, classes: &[Label]) -> Result<GaussianNbModel> {
    let mut classes: Vec<Label> = classes.to_vec();
    classes.sort();
    classes.dedup();

    let dim = features.dim();
    let rows_of: Vec<Vec<usize>> = classes
        .iter()
        .map(|c| {
            (0..features.n_rows())
                .filter(|&i| features.labels()[i] == *c)
                .collect()
        })
        .collect();

    let present: Vec<usize> = (0..classes.len())
        .filter(|&k| !rows_of[k].is_empty())
        .collect();
    if present.len() < 2 {
        return Err(Error::TooFewClasses { n: present.len() });
    }
    for &k in &present {
        if rows_of[k].len() < 2 {
            return Err(Error::ClassTooSmall {
                label: classes[k].as_i8(),
                n: rows_of[k].len(),
                need: 2,
            });
        }
    }

    let classes: Vec<Label> = present.iter().map(|&k| classes[k]).collect();
    let rows_of: Vec<Vec<usize>> = present.into_iter().map(|k| rows_of[k].clone()).collect();
    let total: usize = rows_of.iter().map(Vec::len).sum();

    let mut priors = Vec::with_capacity(classes.len());
    let mut means = Vec::with_capacity(classes.len());
    let mut variances = Vec::with_capacity(classes.len());
    for rows in &rows_of {
        let n = rows.len() as f64;
        priors.push(n / total as f64);
        let mut mean = vec![0.0; dim];
        for &i in rows {
            for (m, x) in mean.iter_mut().zip(features.row(i)) {
                *m += x;
            }
        }
        for m in &mut mean {
            *m /= n;
        }
        let mut var = vec![0.0; dim];
        for &i in rows {
            for ((v, x), m) in var.iter_mut().zip(features.row(i)).zip(&mean) {
                let d = x - m;
                *v += d * d;
            }
        }
        for v in &mut var {
            *v = (*v / n).max(VARIANCE_FLOOR);
        }
        means.push(mean);
        variances.push(var);
    }

    Ok(GaussianNbModel {
        classes,
        priors,
        means,
        variances,
        dim,
    })
}

impl GaussianNbModel {
    /// Per-class log posterior up to a shared additive constant:
    /// log prior + sum of log Gaussian densities. Order matches `classes`.
    pub fn log_scores(&self, row: &[f64]) -> Result<Vec<f64>> {
        if row.len() != self.dim {
            return Err(Error::FeatureDimMismatch {
                expected: self.dim,
                got: row.len(),
            });
        }
        let ln_2pi = (2.0 * std::f64::consts::PI).ln();
        Ok((0..self.classes.len())
            .map(|k| {
                let mut score = self.priors[k].ln();
                for ((x, m), v) in row.iter().zip(&self.means[k]).zip(&self.variances[k]) {
                    score += -0.5 * (ln_2pi + v.ln()) - (x - m).powi(2) / (2.0 * v);
                }
                score
            })
            .collect())
    }

    /// Argmax of the log scores; ties go to the smaller class label
    /// (classes are stored ascending, so the first winner stands).
    pub fn predict_row(&self, row: &[f64]) -> Result<Label> {
        let scores = self.log_scores(row)?;
        let mut best = 0;
        for (k, score) in scores.iter().enumerate().skip(1) {
            if *score > scores[best] {
                best = k;
            }
        }
        Ok(self.classes[best])
    }
}
