//! Quantify how two word-embedding corpora differ in their associations
//! between target-word categories and positive/negative attribute words,
//! and measure the downstream effect of the embedding choice on a sentiment
//! classifier.
//!
//! The pipeline has two halves:
//!
//! 1. **Geometry audit** ([`assoc`]): standardize two embedding spaces,
//!    align their vocabularies, and compare per-category word associations
//!    with a randomization test and a standardized effect size.
//! 2. **Downstream audit** ([`sentiment`], [`mixed`]): embed headlines by
//!    averaging word vectors, train the same classifier on top of each
//!    space, and compare the two models' misclassification patterns with a
//!    random-intercept mixed model per category.
//!
//! ```
//! use embaudit::io::{parse_word2vec_text, AttributeLexicon, CategoryWordList, LexiconKind};
//! use embaudit::space::intersect_vocab;
//! use embaudit::assoc::{AssociationQuery, PermutationPlan};
//!
//! let file_a = "4 2\n民主 1 4\n稳定 2 3\n动荡 3 1\n自由 4 2\n";
//! let file_b = "4 2\n民主 4 1\n稳定 3 2\n动荡 1 4\n自由 2 3\n";
//! let a = parse_word2vec_text(file_a.as_bytes(), "a").unwrap().space;
//! let b = parse_word2vec_text(file_b.as_bytes(), "b").unwrap().space;
//! let pair = intersect_vocab(a.standardize().unwrap(), b.standardize().unwrap()).unwrap();
//!
//! let targets = CategoryWordList::new("demo", vec!["民主".into(), "自由".into()]).unwrap();
//! let lexicon = AttributeLexicon::new(
//!     "toy", LexiconKind::UserDefined, vec!["稳定".into()], vec!["动荡".into()],
//! ).unwrap();
//! let query = AssociationQuery::new(&targets, &lexicon, &pair).unwrap();
//! let outcome = query.permutation_p_value(&PermutationPlan::exact(42)).unwrap();
//! assert!(outcome.p_value > 0.0 && outcome.p_value <= 1.0);
//! ```

pub mod assoc;
pub mod error;
pub mod io;
pub mod mixed;
pub mod sentiment;
pub mod space;

pub use error::{Error, Result};
