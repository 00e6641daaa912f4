//! Downstream sentiment task: preprocess and segment headlines, embed them
//! as mean word vectors, and train/score sentiment classifiers whose only
//! varying input is the pretrained embedding space.
//!
//! Training is deterministic given (data, seed, hyperparameters): the SVM's
//! stochastic order is derived from the seed, and Gaussian NB has no
//! randomness at all. Models for different spaces can be trained in
//! parallel; prediction is read-only.

mod features;
mod model;
mod nb;
mod preprocess;
mod segment;
mod svm;

pub use features::{embed_headlines, FeatureMatrix};
pub use model::{accuracy, import_external_predictions, ClassifierModel};
pub use nb::{train_gaussian_nb, GaussianNbModel, VARIANCE_FLOOR};
pub use preprocess::{preprocess, PreprocessConfig};
pub use segment::{MaxMatchSegmenter, Segmenter};
pub use svm::{
    binary_objective, train_linear_svm, train_linear_svm_traced, LinearSvmModel, SvmTrace,
    SvmTrainMeta,
};
