//! Headline feature extraction: one row per headline, the mean of its
//! in-vocabulary token vectors.

use crate::error::{Error, Result};
use crate::io::{HeadlineRecord, Label};
use crate::space::EmbeddingSpace;

/// Dense feature rows with their labels and provenance.
///
/// `kept[i]` is the index of row `i` in the input record list; headlines
/// whose tokens were all out-of-vocabulary are listed in `skipped` instead,
/// so `n_rows() + skipped.len()` equals the input count.
#[derive(Debug, Clone)]
pub struct FeatureMatrix {
    dim: usize,
    data: Vec<f64>,
    labels: Vec<Label>,
    oov_counts: Vec<usize>,
    kept: Vec<usize>,
    skipped: Vec<usize>,
}

impl FeatureMatrix {
    pub fn from_rows(
        dim: usize,
        rows: Vec<Vec<f64>>,
        labels: Vec<Label>,
    ) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::NoFeatures);
        }
        let n = rows.len();
        let mut data = Vec::with_capacity(n * dim);
        for row in &rows {
            if row.len() != dim {
                return Err(Error::FeatureDimMismatch {
                    expected: dim,
                    got: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        if labels.len() != n {
            return Err(Error::LabelLengthMismatch {
                a: labels.len(),
                b: n,
            });
        }
        Ok(Self {
            dim,
            data,
            labels,
            oov_counts: vec![0; n],
            kept: (0..n).collect(),
            skipped: Vec::new(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n_rows(&self) -> usize {
        self.labels.len()
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn oov_counts(&self) -> &[usize] {
        &self.oov_counts
    }

    /// Input indices of the rows, in row order.
    pub fn kept(&self) -> &[usize] {
        &self.kept
    }

    /// Input indices of all-OOV headlines that produced no row.
    pub fn skipped(&self) -> &[usize] {
        &self.skipped
    }

    /// Restrict to rows whose label is in `classes`, preserving order.
    pub fn filter_classes(&self, classes: &[Label]) -> Result<FeatureMatrix> {
        let mut data = Vec::new();
        let mut labels = Vec::new();
        let mut oov_counts = Vec::new();
        let mut kept = Vec::new();
        for i in 0..self.n_rows() {
            if classes.contains(&self.labels[i]) {
                data.extend_from_slice(self.row(i));
                labels.push(self.labels[i]);
                oov_counts.push(self.oov_counts[i]);
                kept.push(self.kept[i]);
            }
        }
        if labels.is_empty() {
            return Err(Error::NoFeatures);
        }
        Ok(FeatureMatrix {
            dim: self.dim,
            data,
            labels,
            oov_counts,
            kept,
            skipped: self.skipped.clone(),
        })
    }
}

/// Embed each record as the mean vector of its tokens.
///
/// The records must already be tokenized. Whether `space` is standardized
/// is the caller's choice; determinism only requires identical inputs.
pub fn embed_headlines(
    records: &[HeadlineRecord],
    space: &EmbeddingSpace,
) -> Result<FeatureMatrix> {
    let dim = space.dim();
    let mut data = Vec::new();
    let mut labels = Vec::new();
    let mut oov_counts = Vec::new();
    let mut kept = Vec::new();
    let mut skipped = Vec::new();
    for (i, record) in records.iter().enumerate() {
        match space.average_vectors(&record.tokens) {
            Ok(mean) => {
                data.extend_from_slice(&mean.values);
                labels.push(record.label);
                oov_counts.push(mean.oov_count);
                kept.push(i);
            }
            Err(Error::AllOutOfVocabulary { .. }) => skipped.push(i),
            Err(other) => return Err(other),
        }
    }
    if labels.is_empty() {
        return Err(Error::NoFeatures);
    }
    Ok(FeatureMatrix {
        dim,
        data,
        labels,
        oov_counts,
        kept,
        skipped,
    })
}
