//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    // ---- parsing ----
    #[error("{source_name}: malformed header: {detail}")]
    MalformedHeader { source_name: String, detail: String },
    #[error("{source_name}:{line}: expected {expected} fields, found {found}")]
    WrongFieldCount {
        source_name: String,
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("{source_name}:{line}: invalid number {token:?}")]
    InvalidNumber {
        source_name: String,
        line: usize,
        token: String,
    },
    #[error("{source_name}:{line}: non-finite value {token:?}")]
    NonFiniteValue {
        source_name: String,
        line: usize,
        token: String,
    },
    #[error("{source_name}:{line}: unknown label {token:?}")]
    UnknownLabel {
        source_name: String,
        line: usize,
        token: String,
    },
    #[error("{source_name}:{line}: missing {column} column")]
    MissingColumn {
        source_name: String,
        line: usize,
        column: &'static str,
    },
    #[error("{source_name}: duplicate id {id:?}")]
    DuplicateId { source_name: String, id: String },
    #[error("{source_name}: {what} is empty")]
    Empty { source_name: String, what: &'static str },

    // ---- construction invariants ----
    #[error("space {name:?}: vocabulary size {vocab} does not match matrix rows {rows}")]
    ShapeMismatch { name: String, vocab: usize, rows: usize },
    #[error("space {name:?}: duplicate or empty vocabulary entry {word:?}")]
    InvalidVocabEntry { name: String, word: String },
    #[error("space {name:?}: non-finite matrix entry at row {row}")]
    NonFiniteMatrixEntry { name: String, row: usize },
    #[error("attribute lexicon {name:?}: positive and negative sets overlap on {word:?}")]
    LexiconOverlap { name: String, word: String },

    // ---- embedding geometry ----
    #[error("space {space:?}: word {word:?} not in vocabulary")]
    OutOfVocabulary { space: String, word: String },
    #[error("space {space:?}: word {word:?} has a zero vector")]
    ZeroVector { space: String, word: String },
    #[error("space {space:?} is already standardized")]
    AlreadyStandardized { space: String },
    #[error("space {space:?}: need at least 2 words to standardize, have {vocab}")]
    VocabTooSmall { space: String, vocab: usize },
    #[error("space {space:?}: coordinate {coordinate} has zero variance")]
    ZeroVariance { space: String, coordinate: usize },
    #[error("spaces {a:?} and {b:?} have no words in common")]
    EmptyIntersection { a: String, b: String },
    #[error("spaces {a:?} and {b:?} have different dimensions ({dim_a} vs {dim_b})")]
    DimensionMismatch {
        a: String,
        b: String,
        dim_a: usize,
        dim_b: usize,
    },
    #[error("space {space:?}: k={k} neighbors requested but only {available} candidates exist")]
    TooManyNeighbors { space: String, k: usize, available: usize },
    #[error("space {space:?}: every requested word is out of vocabulary")]
    AllOutOfVocabulary { space: String },

    // ---- association test ----
    #[error("association query: pair spaces must be standardized")]
    NotStandardized,
    #[error("association query: {side} attribute set has no in-vocabulary words in space {space:?}")]
    AttributeSetUnusable { side: &'static str, space: String },
    #[error("association query: category {category:?} has no usable target words")]
    NoUsableTargets { category: String },
    #[error("category {category:?}: effect size needs at least 2 usable targets, have {n}")]
    TooFewTargets { category: String, n: usize },
    #[error("exact enumeration supports at most 20 targets, have {n}")]
    TooManyTargetsForExact { n: usize },
    #[error("assignment covers {got} targets, expected {expected}")]
    AssignmentMismatch { expected: usize, got: usize },
    #[error("permutation plan: monte carlo draw count must be at least 1")]
    InvalidDrawCount,
    #[error("category {category:?}: pooled association standard deviation is zero")]
    ZeroPooledStd { category: String },

    // ---- classifiers ----
    #[error("class {label} has {n} training rows, need at least {need}")]
    ClassTooSmall {
        label: i8,
        n: usize,
        need: usize,
    },
    #[error("training data covers {n} of the requested classes, need at least 2")]
    TooFewClasses { n: usize },
    #[error("feature matrix is empty (all headlines skipped)")]
    NoFeatures,
    #[error("feature dimension {got} does not match model dimension {expected}")]
    FeatureDimMismatch { expected: usize, got: usize },
    #[error("prediction and reference label lists have different lengths ({a} vs {b})")]
    LabelLengthMismatch { a: usize, b: usize },
    #[error("model file {source_name}: {detail}")]
    ModelFormat { source_name: String, detail: String },

    // ---- mixed model ----
    #[error("misclassification dataset {category:?}: input lists have different lengths")]
    MisclassLengthMismatch { category: String },
    #[error("misclassification dataset {category:?}: no rows")]
    EmptyDataset { category: String },
    #[error("mixed fit {category:?}: need at least {need} {what}, have {n}")]
    TooFewRows {
        category: String,
        what: &'static str,
        n: usize,
        need: usize,
    },
    #[error("mixed fit {category:?}: model indicator is constant")]
    ConstantIndicator { category: String },
    #[error("mixed fit {category:?}: singular design matrix")]
    SingularDesign { category: String },
}

impl Error {
    /// True for failures of numerical procedures (as opposed to bad input data).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::ZeroVariance { .. }
                | Error::ZeroPooledStd { .. }
                | Error::SingularDesign { .. }
        )
    }
}
