//! Lexicon extraction from message-annotated, POS-tagged corpora.
//!
//! The crate is `no_std` and needs only `alloc`. It covers the in-memory
//! corpus model, word-key normalization, the four corpus-frequency
//! extraction measures, Precision/Recall/F-measure/Fallout evaluation, and
//! threshold sweeps with operating-point selection. File formats, reporting
//! and the command-line tool live in the `msglex` crate.
//!
//! ```
//! use msglex_core::{Corpus, Document, FilterConfig, Sentence, Token};
//! use msglex_core::{lexicon, measures, Percent};
//!
//! let doc = Document::new("d1", vec![Sentence::annotated(
//!     "s1",
//!     Some("arrive"),
//!     vec![Token::new("Arrived", Some("arrive"), "VERB"), Token::new("the", None, "DET")],
//! )]);
//! let (corpus, _warnings) = Corpus::new("demo", vec![doc]).unwrap();
//! let config = FilterConfig::default();
//! let index = lexicon::build_index(&corpus, &config);
//! let extracted = measures::extract_collection_freq(&index, Percent::new(100).unwrap());
//! assert!(extracted.contains("arrive"));
//! ```

#![no_std]

extern crate alloc;

pub mod corpus;
pub mod evaluation;
pub mod lexicon;
pub mod measures;
pub mod oracle;
pub mod sweep;

pub use corpus::{Corpus, CorpusError, CorpusStats, CorpusWarning, Document, Sentence, Token};
pub use evaluation::{evaluate, f_measure, EvalError, MetricsRow};
pub use lexicon::{CorpusIndex, FilterConfig, Lexicon, WordKeySource};
pub use measures::{MeasureKind, MeasureSpec, Percent, ThresholdError};
pub use sweep::{run_all_sweeps, run_sweep, OperatingPoint, SweepContext, SweepError, SweepResult};
