//! Cross-corpus word-association tests.
//!
//! For a category of target words realized in two aligned, standardized
//! embedding spaces, the observed statistic sums each target's association
//! difference between the two spaces, where a single-space association is
//!
//! ```text
//! s(t, A, B) = mean_{p in A} cos(t, p) - mean_{q in B} cos(t, q)
//! ```
//!
//! scored against that space's own attribute vectors. Randomization
//! inference flips, per target, which space's realization counts toward
//! which side; with `n` usable targets there are `2^n` assignments. The
//! one-sided p-value is smoothed as `(#{s >= s_obs} + 1) / (N + 1)` so that
//! identical spaces report p = 1 instead of 0. The effect size divides the
//! mean association difference by the sample standard deviation (n-1
//! divisor) of the 2n pooled per-target associations; 0.2 / 0.5 / 0.8 are
//! the conventional small / medium / large cutoffs.

use std::io::Write;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::io::{AttributeLexicon, CategoryWordList};
use crate::space::{AlignedPair, EmbeddingSpace};

/// Absolute tolerance used when counting permutation ties.
pub const TIE_TOLERANCE: f64 = 1e-12;

/// Largest target count for which exact enumeration is allowed (2^20 assignments).
pub const MAX_EXACT_TARGETS: usize = 20;

/// How the randomization distribution is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PermutationMode {
    /// Enumerate all `2^n` assignments; requires `n <= 20`.
    Exact,
    /// Sample assignments uniformly; each draw's randomness is derived from
    /// `(seed, draw index)` so results are independent of evaluation order.
    MonteCarlo,
}

impl PermutationMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            PermutationMode::Exact => "exact",
            PermutationMode::MonteCarlo => "monte_carlo",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PermutationPlan {
    pub mode: PermutationMode,
    pub n_draws: usize,
    pub seed: u64,
}

impl PermutationPlan {
    pub fn exact(seed: u64) -> Self {
        Self {
            mode: PermutationMode::Exact,
            n_draws: 0,
            seed,
        }
    }

    pub fn monte_carlo(n_draws: usize, seed: u64) -> Result<Self> {
        if n_draws == 0 {
            return Err(Error::InvalidDrawCount);
        }
        Ok(Self {
            mode: PermutationMode::MonteCarlo,
            n_draws,
            seed,
        })
    }
}

/// Which space's realization of a target counts toward side a.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

/// A single-space association value with per-side attribute drop counts.
#[derive(Debug, Clone, PartialEq)]
pub struct Association {
    pub value: f64,
    pub dropped_positive: usize,
    pub dropped_negative: usize,
}

/// Difference of mean cosines from `target` to the in-vocabulary words of
/// `positive` and `negative`. Out-of-vocabulary attribute words are dropped
/// and counted; the target itself must be present.
pub fn word_association(
    space: &EmbeddingSpace,
    target: &str,
    positive: &[String],
    negative: &[String],
) -> Result<Association> {
    let (pos_mean, pos_dropped) = mean_cosine(space, target, positive, "positive")?;
    let (neg_mean, neg_dropped) = mean_cosine(space, target, negative, "negative")?;
    Ok(Association {
        value: pos_mean - neg_mean,
        dropped_positive: pos_dropped,
        dropped_negative: neg_dropped,
    })
}

fn mean_cosine(
    space: &EmbeddingSpace,
    target: &str,
    attributes: &[String],
    side: &'static str,
) -> Result<(f64, usize)> {
    let mut sum = 0.0;
    let mut used = 0usize;
    for attr in attributes {
        if !space.contains(attr) {
            continue;
        }
        sum += space.cosine(target, attr)?;
        used += 1;
    }
    if used == 0 {
        return Err(Error::AttributeSetUnusable {
            side,
            space: space.name().to_string(),
        });
    }
    Ok((sum / used as f64, attributes.len() - used))
}

/// In-vocabulary attribute counts, `(positive, negative)` per space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AttributeCounts {
    pub space_a: (usize, usize),
    pub space_b: (usize, usize),
}

/// One category's targets realized in both spaces of an aligned pair, with
/// per-target associations precomputed against each space's own attribute
/// vectors.
#[derive(Debug, Clone)]
pub struct AssociationQuery {
    category: String,
    lexicon: String,
    assoc_a: Vec<f64>,
    assoc_b: Vec<f64>,
    used_targets: Vec<String>,
    dropped_targets: Vec<String>,
    attribute_counts: AttributeCounts,
}

impl AssociationQuery {
    /// Resolve `targets` and the lexicon inside `pair`.
    ///
    /// Both spaces must be standardized. Targets missing from the shared
    /// vocabulary are dropped and reported; attribute words are dropped per
    /// space independently, and each side must keep at least one word.
    pub fn new(
        targets: &CategoryWordList,
        lexicon: &AttributeLexicon,
        pair: &AlignedPair,
    ) -> Result<Self> {
        let a = pair.space_a();
        let b = pair.space_b();
        if !a.is_standardized() || !b.is_standardized() {
            return Err(Error::NotStandardized);
        }

        let mut assoc_a = Vec::new();
        let mut assoc_b = Vec::new();
        let mut used_targets = Vec::new();
        let mut dropped_targets = Vec::new();
        let mut counts = AttributeCounts {
            space_a: (0, 0),
            space_b: (0, 0),
        };
        for word in &targets.words {
            if !a.contains(word) {
                dropped_targets.push(word.clone());
                continue;
            }
            let in_a = word_association(a, word, &lexicon.positive, &lexicon.negative)?;
            let in_b = word_association(b, word, &lexicon.positive, &lexicon.negative)?;
            counts.space_a = (
                lexicon.positive.len() - in_a.dropped_positive,
                lexicon.negative.len() - in_a.dropped_negative,
            );
            counts.space_b = (
                lexicon.positive.len() - in_b.dropped_positive,
                lexicon.negative.len() - in_b.dropped_negative,
            );
            assoc_a.push(in_a.value);
            assoc_b.push(in_b.value);
            used_targets.push(word.clone());
        }
        if used_targets.is_empty() {
            return Err(Error::NoUsableTargets {
                category: targets.category.clone(),
            });
        }
        Ok(Self {
            category: targets.category.clone(),
            lexicon: lexicon.name.clone(),
            assoc_a,
            assoc_b,
            used_targets,
            dropped_targets,
            attribute_counts: counts,
        })
    }

    pub fn category(&self) -> &str {
        &self.category
    }

    pub fn lexicon(&self) -> &str {
        &self.lexicon
    }

    pub fn n_targets_used(&self) -> usize {
        self.used_targets.len()
    }

    pub fn used_targets(&self) -> &[String] {
        &self.used_targets
    }

    pub fn dropped_targets(&self) -> &[String] {
        &self.dropped_targets
    }

    pub fn attribute_counts(&self) -> AttributeCounts {
        self.attribute_counts
    }

    /// Per-target associations in space a, aligned with [`Self::used_targets`].
    pub fn associations_a(&self) -> &[f64] {
        &self.assoc_a
    }

    /// Per-target associations in space b, aligned with [`Self::used_targets`].
    pub fn associations_b(&self) -> &[f64] {
        &self.assoc_b
    }

    /// The statistic of the identity assignment: every target scored in its
    /// own space, summed association difference.
    pub fn observed_statistic(&self) -> f64 {
        self.assoc_a.iter().sum::<f64>() - self.assoc_b.iter().sum::<f64>()
    }

    /// Statistic of an arbitrary assignment. `assignment[i] == Side::A`
    /// sends target `i`'s space-a realization (vector and attributes) to
    /// side a; `Side::B` swaps the two realizations for that target.
    pub fn test_statistic(&self, assignment: &[Side]) -> Result<f64> {
        if assignment.len() != self.n_targets_used() {
            return Err(Error::AssignmentMismatch {
                expected: self.n_targets_used(),
                got: assignment.len(),
            });
        }
        let mut stat = 0.0;
        for (i, side) in assignment.iter().enumerate() {
            let delta = self.assoc_a[i] - self.assoc_b[i];
            stat += match side {
                Side::A => delta,
                Side::B => -delta,
            };
        }
        Ok(stat)
    }

    fn deltas(&self) -> Vec<f64> {
        self.assoc_a
            .iter()
            .zip(&self.assoc_b)
            .map(|(a, b)| a - b)
            .collect()
    }

    /// Randomization p-value for the observed statistic under `plan`.
    pub fn permutation_p_value(&self, plan: &PermutationPlan) -> Result<PermutationOutcome> {
        let deltas = self.deltas();
        let observed = self.observed_statistic();
        match plan.mode {
            PermutationMode::Exact => exact_permutation(&deltas, observed),
            PermutationMode::MonteCarlo => {
                if plan.n_draws == 0 {
                    return Err(Error::InvalidDrawCount);
                }
                Ok(monte_carlo_permutation(
                    &deltas,
                    observed,
                    plan.n_draws,
                    plan.seed,
                ))
            }
        }
    }

    /// Standardized mean association difference between the two spaces.
    pub fn effect_size(&self) -> Result<f64> {
        if self.n_targets_used() < 2 {
            return Err(Error::TooFewTargets {
                category: self.category.clone(),
                n: self.n_targets_used(),
            });
        }
        effect_size_from_associations(&self.assoc_a, &self.assoc_b).ok_or_else(|| {
            Error::ZeroPooledStd {
                category: self.category.clone(),
            }
        })
    }
}

/// Effect size from per-target associations: mean(a) - mean(b) over the
/// sample standard deviation (n-1 divisor) of the pooled values. Returns
/// `None` when the pooled standard deviation is zero.
pub fn effect_size_from_associations(assoc_a: &[f64], assoc_b: &[f64]) -> Option<f64> {
    let n = assoc_a.len();
    debug_assert_eq!(n, assoc_b.len());
    let mean_a = assoc_a.iter().sum::<f64>() / n as f64;
    let mean_b = assoc_b.iter().sum::<f64>() / n as f64;
    let pooled_n = 2 * n;
    let pooled_mean = (mean_a + mean_b) / 2.0;
    let ss: f64 = assoc_a
        .iter()
        .chain(assoc_b)
        .map(|x| (x - pooled_mean).powi(2))
        .sum();
    let sd = (ss / (pooled_n - 1) as f64).sqrt();
    if sd == 0.0 {
        return None;
    }
    Some((mean_a - mean_b) / sd)
}

/// Counts and smoothed p-value from a permutation evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PermutationOutcome {
    /// `(ge_count + 1) / (evaluated + 1)`.
    pub p_value: f64,
    /// Assignments whose statistic is at least the observed one (ties
    /// within [`TIE_TOLERANCE`] included).
    pub ge_count: u64,
    /// Assignments tying the observed statistic within [`TIE_TOLERANCE`].
    pub tie_count: u64,
    /// Number of assignments evaluated (`2^n` or `n_draws`).
    pub evaluated: u64,
}

fn classify(stat: f64, observed: f64, ge: &mut u64, ties: &mut u64) {
    let tie = (stat - observed).abs() <= TIE_TOLERANCE;
    if tie {
        *ties += 1;
    }
    if tie || stat > observed {
        *ge += 1;
    }
}

fn exact_permutation(deltas: &[f64], observed: f64) -> Result<PermutationOutcome> {
    let n = deltas.len();
    if n > MAX_EXACT_TARGETS {
        return Err(Error::TooManyTargetsForExact { n });
    }
    let total: u64 = 1 << n;
    let mut ge = 0u64;
    let mut ties = 0u64;
    for mask in 0..total {
        let mut stat = 0.0;
        for (i, delta) in deltas.iter().enumerate() {
            if (mask >> i) & 1 == 1 {
                stat -= delta;
            } else {
                stat += delta;
            }
        }
        classify(stat, observed, &mut ge, &mut ties);
    }
    Ok(PermutationOutcome {
        p_value: (ge + 1) as f64 / (total + 1) as f64,
        ge_count: ge,
        tie_count: ties,
        evaluated: total,
    })
}

fn monte_carlo_permutation(
    deltas: &[f64],
    observed: f64,
    n_draws: usize,
    seed: u64,
) -> PermutationOutcome {
    let mut ge = 0u64;
    let mut ties = 0u64;
    for draw in 0..n_draws {
        let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, draw as u64));
        let mut stat = 0.0;
        let mut i = 0;
        while i < deltas.len() {
            let bits = rng.next_u64();
            let take = (deltas.len() - i).min(64);
            for b in 0..take {
                if (bits >> b) & 1 == 1 {
                    stat -= deltas[i + b];
                } else {
                    stat += deltas[i + b];
                }
            }
            i += take;
        }
        classify(stat, observed, &mut ge, &mut ties);
    }
    PermutationOutcome {
        p_value: (ge + 1) as f64 / (n_draws + 1) as f64,
        ge_count: ge,
        tie_count: ties,
        evaluated: n_draws as u64,
    }
}

/// splitmix64-style finalizer deriving one draw's seed from (seed, index).
fn mix_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// One finished category-by-lexicon comparison.
#[derive(Debug, Clone)]
pub struct AssociationResult {
    pub category: String,
    pub lexicon: String,
    pub effect_size: f64,
    pub p_value: f64,
    pub statistic: f64,
    pub n_targets_used: usize,
    pub dropped_targets: Vec<String>,
    pub attribute_counts: AttributeCounts,
    pub tie_count: u64,
    pub evaluated: u64,
    pub plan: PermutationPlan,
}

/// A full audit table; rows that failed carry their error message instead
/// of aborting the table.
#[derive(Debug, Clone)]
pub struct AuditTable {
    pub rows: Vec<AuditRow>,
}

#[derive(Debug, Clone)]
pub struct AuditRow {
    pub category: String,
    pub lexicon: String,
    pub outcome: std::result::Result<AssociationResult, String>,
}

/// Run one [`AssociationResult`] per (category, lexicon) combination.
pub fn run_audit(
    categories: &[CategoryWordList],
    lexicons: &[AttributeLexicon],
    pair: &AlignedPair,
    plan: &PermutationPlan,
) -> AuditTable {
    let mut rows = Vec::with_capacity(categories.len() * lexicons.len());
    for category in categories {
        for lexicon in lexicons {
            let outcome = audit_one(category, lexicon, pair, plan).map_err(|e| e.to_string());
            rows.push(AuditRow {
                category: category.category.clone(),
                lexicon: lexicon.name.clone(),
                outcome,
            });
        }
    }
    AuditTable { rows }
}

fn audit_one(
    category: &CategoryWordList,
    lexicon: &AttributeLexicon,
    pair: &AlignedPair,
    plan: &PermutationPlan,
) -> Result<AssociationResult> {
    let query = AssociationQuery::new(category, lexicon, pair)?;
    let effect_size = query.effect_size()?;
    let permutation = query.permutation_p_value(plan)?;
    Ok(AssociationResult {
        category: query.category().to_string(),
        lexicon: query.lexicon().to_string(),
        effect_size,
        p_value: permutation.p_value,
        statistic: query.observed_statistic(),
        n_targets_used: query.n_targets_used(),
        dropped_targets: query.dropped_targets().to_vec(),
        attribute_counts: query.attribute_counts(),
        tie_count: permutation.tie_count,
        evaluated: permutation.evaluated,
        plan: *plan,
    })
}

/// Export an audit table as RFC-4180 CSV.
///
/// Columns: category, lexicon, effect_size, p_value, statistic, n_targets,
/// dropped_targets (semicolon-joined), mode, n_draws, seed, error. Failed
/// rows leave the numeric columns empty and fill `error`.
pub fn write_audit_csv<W: Write>(table: &AuditTable, writer: W) -> Result<()> {
    let mut csv = csv::Writer::from_writer(writer);
    csv.write_record([
        "category",
        "lexicon",
        "effect_size",
        "p_value",
        "statistic",
        "n_targets",
        "dropped_targets",
        "mode",
        "n_draws",
        "seed",
        "error",
    ])
    .map_err(csv_io)?;
    for row in &table.rows {
        match &row.outcome {
            Ok(result) => csv
                .write_record([
                    row.category.as_str(),
                    row.lexicon.as_str(),
                    &result.effect_size.to_string(),
                    &result.p_value.to_string(),
                    &result.statistic.to_string(),
                    &result.n_targets_used.to_string(),
                    &result.dropped_targets.join(";"),
                    result.plan.mode.as_str(),
                    &result.evaluated.to_string(),
                    &result.plan.seed.to_string(),
                    "",
                ])
                .map_err(csv_io)?,
            Err(message) => csv
                .write_record([
                    row.category.as_str(),
                    row.lexicon.as_str(),
                    "",
                    "",
                    "",
                    "",
                    "",
                    "",
                    "",
                    "",
                    message.as_str(),
                ])
                .map_err(csv_io)?,
        }
    }
    csv.flush()?;
    Ok(())
}

fn csv_io(err: csv::Error) -> Error {
    Error::Io(std::io::Error::other(err))
}
