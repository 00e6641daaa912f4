//! Embedding-space geometry: standardization, cosine similarity, nearest
//! neighbors, cross-space vocabulary alignment and vector averaging.
//!
//! An [`EmbeddingSpace`] is immutable after construction; every operation
//! except [`EmbeddingSpace::standardize`] (which consumes the space and
//! returns a new one) is a pure read, so spaces can be shared freely across
//! threads.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// A named vocabulary with one dense vector per word.
///
/// Row `i` of the matrix is the vector of `vocab[i]`. Construction validates
/// that the vocabulary is unique and non-empty and that every matrix entry is
/// finite.
#[derive(Debug, Clone)]
pub struct EmbeddingSpace {
    name: String,
    dim: usize,
    vocab: Vec<String>,
    index: HashMap<String, usize>,
    matrix: Vec<f64>, // row-major, |vocab| x dim
    standardized: bool,
}

/// Mean of a set of word vectors, with the number of out-of-vocabulary
/// words that were dropped along the way.
#[derive(Debug, Clone, PartialEq)]
pub struct MeanVector {
    pub values: Vec<f64>,
    pub oov_count: usize,
    pub used_count: usize,
}

/// A neighbor returned by [`EmbeddingSpace::nearest_neighbors`].
#[derive(Debug, Clone, PartialEq)]
pub struct Neighbor {
    pub word: String,
    pub cosine: f64,
}

impl EmbeddingSpace {
    /// Build a space from parts, validating the type invariants.
    ///
    /// The `standardized` flag is taken on trust so that pre-standardized
    /// exports can be reloaded; it only gates re-standardization.
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        vocab: Vec<String>,
        matrix: Vec<f64>,
        standardized: bool,
    ) -> Result<Self> {
        let name = name.into();
        if dim == 0 || vocab.is_empty() || matrix.len() != vocab.len() * dim {
            return Err(Error::ShapeMismatch {
                name,
                vocab: vocab.len(),
                rows: matrix.len().checked_div(dim).unwrap_or(0),
            });
        }
        let mut index = HashMap::with_capacity(vocab.len());
        for (i, word) in vocab.iter().enumerate() {
            if word.is_empty() || index.insert(word.clone(), i).is_some() {
                return Err(Error::InvalidVocabEntry {
                    name,
                    word: word.clone(),
                });
            }
        }
        for (row, chunk) in matrix.chunks_exact(dim).enumerate() {
            if chunk.iter().any(|v| !v.is_finite()) {
                return Err(Error::NonFiniteMatrixEntry { name, row });
            }
        }
        Ok(Self {
            name,
            dim,
            vocab,
            index,
            matrix,
            standardized,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Vocabulary size.
    pub fn len(&self) -> usize {
        self.vocab.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vocab.is_empty()
    }

    pub fn is_standardized(&self) -> bool {
        self.standardized
    }

    pub fn vocab(&self) -> &[String] {
        &self.vocab
    }

    pub fn contains(&self, word: &str) -> bool {
        self.index.contains_key(word)
    }

    pub fn position(&self, word: &str) -> Option<usize> {
        self.index.get(word).copied()
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.matrix[i * self.dim..(i + 1) * self.dim]
    }

    pub fn vector(&self, word: &str) -> Option<&[f64]> {
        self.position(word).map(|i| self.row(i))
    }

    fn require(&self, word: &str) -> Result<usize> {
        self.position(word).ok_or_else(|| Error::OutOfVocabulary {
            space: self.name.clone(),
            word: word.to_string(),
        })
    }

    /// Center and scale each coordinate across the vocabulary so that it has
    /// mean 0 and (population) standard deviation 1.
    ///
    /// Consumes the space; the matrix is rescaled in place rather than
    /// copied, which matters for multi-hundred-megabyte vocabularies.
    pub fn standardize(mut self) -> Result<Self> {
        if self.standardized {
            return Err(Error::AlreadyStandardized { space: self.name });
        }
        let n = self.vocab.len();
        if n < 2 {
            return Err(Error::VocabTooSmall {
                space: self.name,
                vocab: n,
            });
        }
        let dim = self.dim;
        let mut means = vec![0.0; dim];
        for row in self.matrix.chunks_exact(dim) {
            for (m, v) in means.iter_mut().zip(row) {
                *m += v;
            }
        }
        for m in &mut means {
            *m /= n as f64;
        }
        let mut variances = vec![0.0; dim];
        for row in self.matrix.chunks_exact(dim) {
            for ((s, v), m) in variances.iter_mut().zip(row).zip(&means) {
                let d = v - m;
                *s += d * d;
            }
        }
        let mut stds = variances;
        for (coordinate, s) in stds.iter_mut().enumerate() {
            *s = (*s / n as f64).sqrt();
            if *s == 0.0 {
                return Err(Error::ZeroVariance {
                    space: self.name,
                    coordinate,
                });
            }
        }
        for row in self.matrix.chunks_exact_mut(dim) {
            for ((v, m), s) in row.iter_mut().zip(&means).zip(&stds) {
                *v = (*v - *m) / *s;
            }
        }
        self.standardized = true;
        Ok(self)
    }

    /// Cosine of the angle between the vectors of two words.
    pub fn cosine(&self, w1: &str, w2: &str) -> Result<f64> {
        let a = self.row(self.require(w1)?);
        let b = self.row(self.require(w2)?);
        let na = norm(a);
        if na == 0.0 {
            return Err(Error::ZeroVector {
                space: self.name.clone(),
                word: w1.to_string(),
            });
        }
        let nb = norm(b);
        if nb == 0.0 {
            return Err(Error::ZeroVector {
                space: self.name.clone(),
                word: w2.to_string(),
            });
        }
        Ok((dot(a, b) / (na * nb)).clamp(-1.0, 1.0))
    }

    /// The `k` words with the highest cosine similarity to `seed`, excluding
    /// the seed itself, in descending order. Ties break by vocabulary order.
    ///
    /// Zero-norm candidates have no defined angle and are skipped.
    pub fn nearest_neighbors(&self, seed: &str, k: usize) -> Result<Vec<Neighbor>> {
        let seed_idx = self.require(seed)?;
        if k >= self.vocab.len() {
            return Err(Error::TooManyNeighbors {
                space: self.name.clone(),
                k,
                available: self.vocab.len().saturating_sub(1),
            });
        }
        let seed_vec = self.row(seed_idx);
        let seed_norm = norm(seed_vec);
        if seed_norm == 0.0 {
            return Err(Error::ZeroVector {
                space: self.name.clone(),
                word: seed.to_string(),
            });
        }
        let mut scored: Vec<(f64, usize)> = Vec::with_capacity(self.vocab.len() - 1);
        for i in 0..self.vocab.len() {
            if i == seed_idx {
                continue;
            }
            let v = self.row(i);
            let nv = norm(v);
            if nv == 0.0 {
                continue;
            }
            let cos = (dot(seed_vec, v) / (seed_norm * nv)).clamp(-1.0, 1.0);
            scored.push((cos, i));
        }
        if scored.len() < k {
            return Err(Error::TooManyNeighbors {
                space: self.name.clone(),
                k,
                available: scored.len(),
            });
        }
        scored.sort_by(|(ca, ia), (cb, ib)| {
            cb.partial_cmp(ca).expect("cosines are finite").then(ia.cmp(ib))
        });
        Ok(scored
            .into_iter()
            .take(k)
            .map(|(cosine, i)| Neighbor {
                word: self.vocab[i].clone(),
                cosine,
            })
            .collect())
    }

    /// Arithmetic mean of the vectors of the in-vocabulary `words`.
    ///
    /// Out-of-vocabulary words are dropped and counted; repeated tokens
    /// contribute once per occurrence.
    pub fn average_vectors<S: AsRef<str>>(&self, words: &[S]) -> Result<MeanVector> {
        let mut sum = vec![0.0; self.dim];
        let mut used = 0usize;
        let mut oov = 0usize;
        for word in words {
            match self.vector(word.as_ref()) {
                Some(v) => {
                    for (s, x) in sum.iter_mut().zip(v) {
                        *s += x;
                    }
                    used += 1;
                }
                None => oov += 1,
            }
        }
        if used == 0 {
            return Err(Error::AllOutOfVocabulary {
                space: self.name.clone(),
            });
        }
        for s in &mut sum {
            *s /= used as f64;
        }
        Ok(MeanVector {
            values: sum,
            oov_count: oov,
            used_count: used,
        })
    }

    /// Restrict the space to `keep` (indices into the current vocabulary),
    /// preserving order.
    fn restrict(self, keep: &[usize]) -> Result<Self> {
        if keep.len() == self.vocab.len() {
            // Intersection kept everything; reuse the allocation.
            return Ok(self);
        }
        let dim = self.dim;
        let mut vocab = Vec::with_capacity(keep.len());
        let mut matrix = Vec::with_capacity(keep.len() * dim);
        for &i in keep {
            vocab.push(self.vocab[i].clone());
            matrix.extend_from_slice(self.row(i));
        }
        EmbeddingSpace::new(self.name, dim, vocab, matrix, self.standardized)
    }
}

/// Two spaces restricted to their shared vocabulary, in identical word order.
#[derive(Debug, Clone)]
pub struct AlignedPair {
    space_a: EmbeddingSpace,
    space_b: EmbeddingSpace,
    pub dropped_from_a: usize,
    pub dropped_from_b: usize,
}

impl AlignedPair {
    pub fn space_a(&self) -> &EmbeddingSpace {
        &self.space_a
    }

    pub fn space_b(&self) -> &EmbeddingSpace {
        &self.space_b
    }

    pub fn shared_vocab(&self) -> &[String] {
        self.space_a.vocab()
    }

    /// Swap the two sides.
    pub fn swapped(self) -> Self {
        AlignedPair {
            space_a: self.space_b,
            space_b: self.space_a,
            dropped_from_a: self.dropped_from_b,
            dropped_from_b: self.dropped_from_a,
        }
    }
}

/// Restrict both spaces to the intersection of their vocabularies, keeping
/// the word order of `a`.
///
/// Takes the spaces by value so that the common no-drop case reuses the
/// existing matrices instead of copying them.
pub fn intersect_vocab(a: EmbeddingSpace, b: EmbeddingSpace) -> Result<AlignedPair> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            a: a.name().to_string(),
            b: b.name().to_string(),
            dim_a: a.dim(),
            dim_b: b.dim(),
        });
    }
    let mut keep_a = Vec::new();
    let mut keep_b = Vec::new();
    for (i, word) in a.vocab().iter().enumerate() {
        if let Some(j) = b.position(word) {
            keep_a.push(i);
            keep_b.push(j);
        }
    }
    if keep_a.is_empty() {
        return Err(Error::EmptyIntersection {
            a: a.name().to_string(),
            b: b.name().to_string(),
        });
    }
    let dropped_from_a = a.len() - keep_a.len();
    let dropped_from_b = b.len() - keep_b.len();
    if dropped_from_a > 0 || dropped_from_b > 0 {
        log::info!(
            "vocabulary intersection: kept {} words, dropped {} from {:?} and {} from {:?}",
            keep_a.len(),
            dropped_from_a,
            a.name(),
            dropped_from_b,
            b.name()
        );
    }
    let space_a = a.restrict(&keep_a)?;
    let space_b = b.restrict(&keep_b)?;
    debug_assert_eq!(space_a.vocab(), space_b.vocab());
    Ok(AlignedPair {
        space_a,
        space_b,
        dropped_from_a,
        dropped_from_b,
    })
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}
