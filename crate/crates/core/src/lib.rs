//! Scoring of coreference and split-antecedent anaphora resolution.
//!
//! The five standard coreference metrics (MUC, B-cubed, CEAF in its mention
//! and entity variants, LEA, BLANC) are generalized to entities that carry an
//! accommodated set, the antecedent of a plural anaphor such as "they" whose
//! referents were introduced separately. Accommodated sets in key and response
//! are aligned with Kuhn-Munkres on the same metric being computed, and each
//! metric credits aligned sets by scoring their element entities with itself.
//!
//! ```
//! use anascore::metrics::{evaluate, LeaConfig, Metric};
//! use anascore::model::{DocumentSet, Entity, MentionSpan};
//!
//! let m = |s| MentionSpan::new("d", s, s + 1);
//! let key = DocumentSet::new("d", vec![
//!     Entity::new("john", vec![m(0)]),
//!     Entity::new("mary", vec![m(2)]),
//!     Entity::new("they", vec![m(5)]).with_set(["john", "mary"]),
//! ]);
//! let eval = evaluate(Metric::Muc, &key, &key, LeaConfig::default());
//! assert_eq!(eval.score.f1(), 1.0);
//! ```

pub mod assignment;
pub mod io;
pub mod metrics;
pub mod model;
pub mod oracle;

pub use assignment::{align_sets, km_assign, ScoreMatrix, SetAlignment};
pub use metrics::corpus::{score_corpus, score_document, CorpusReport, ScorerConfig};
pub use metrics::{BlancResult, LeaConfig, Metric, MetricResult, Score};
pub use model::{cardinality, flatten, validate, DocumentSet, Entity, MentionSpan};
