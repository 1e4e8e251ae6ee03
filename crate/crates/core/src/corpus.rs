//! Documents, sentences and POS-tagged tokens with sentence-level message
//! annotation.
//!
//! A [`Corpus`] can only be obtained through [`Corpus::new`], which checks
//! every structural invariant. Once built it is immutable.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::lexicon::{self, FilterConfig};

/// One pre-tagged token.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub surface: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lemma: Option<String>,
    pub pos: String,
}

impl Token {
    pub fn new(surface: impl Into<String>, lemma: Option<&str>, pos: impl Into<String>) -> Self {
        Token {
            surface: surface.into(),
            lemma: lemma.map(String::from),
            pos: pos.into(),
        }
    }
}

/// A sentence, flagged when it was annotated with a message instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sentence {
    pub id: String,
    pub annotated: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message_type: Option<String>,
    pub tokens: Vec<Token>,
}

impl Sentence {
    pub fn plain(id: impl Into<String>, tokens: Vec<Token>) -> Self {
        Sentence {
            id: id.into(),
            annotated: false,
            message_type: None,
            tokens,
        }
    }

    pub fn annotated(id: impl Into<String>, message_type: Option<&str>, tokens: Vec<Token>) -> Self {
        Sentence {
            id: id.into(),
            annotated: true,
            message_type: message_type.map(String::from),
            tokens,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub id: String,
    pub sentences: Vec<Sentence>,
}

impl Document {
    pub fn new(id: impl Into<String>, sentences: Vec<Sentence>) -> Self {
        Document {
            id: id.into(),
            sentences,
        }
    }
}

/// Fatal structural problems found while validating a corpus.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CorpusError {
    #[error("corpus contains no documents")]
    NoDocuments,
    #[error("duplicate document id `{0}`")]
    DuplicateDocumentId(String),
    #[error("duplicate sentence id `{sentence}` in document `{document}`")]
    DuplicateSentenceId { document: String, sentence: String },
    #[error("sentence `{sentence}` in document `{document}` carries a message_type but is not annotated")]
    MessageTypeOnUnannotated { document: String, sentence: String },
    #[error("token {token} of sentence `{sentence}` in document `{document}` has an empty surface form")]
    EmptySurface {
        document: String,
        sentence: String,
        token: usize,
    },
    #[error("token {token} of sentence `{sentence}` in document `{document}` has an empty POS tag")]
    EmptyPos {
        document: String,
        sentence: String,
        token: usize,
    },
}

/// Non-fatal findings. The corpus is still usable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CorpusWarning {
    EmptySentence { document: String, sentence: String },
    EmptyDocument { document: String },
}

impl fmt::Display for CorpusWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CorpusWarning::EmptySentence { document, sentence } => {
                write!(f, "sentence `{sentence}` in document `{document}` has no tokens")
            }
            CorpusWarning::EmptyDocument { document } => {
                write!(f, "document `{document}` has no sentences")
            }
        }
    }
}

/// A validated corpus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Corpus {
    name: String,
    documents: Vec<Document>,
}

impl Corpus {
    /// Validates `documents` and builds the corpus, returning any warnings
    /// alongside it.
    pub fn new(
        name: impl Into<String>,
        documents: Vec<Document>,
    ) -> Result<(Corpus, Vec<CorpusWarning>), CorpusError> {
        if documents.is_empty() {
            return Err(CorpusError::NoDocuments);
        }
        let mut warnings = Vec::new();
        let mut doc_ids = BTreeSet::new();
        for doc in &documents {
            if !doc_ids.insert(doc.id.as_str()) {
                return Err(CorpusError::DuplicateDocumentId(doc.id.clone()));
            }
            if doc.sentences.is_empty() {
                warnings.push(CorpusWarning::EmptyDocument {
                    document: doc.id.clone(),
                });
            }
            let mut sentence_ids = BTreeSet::new();
            for sentence in &doc.sentences {
                if !sentence_ids.insert(sentence.id.as_str()) {
                    return Err(CorpusError::DuplicateSentenceId {
                        document: doc.id.clone(),
                        sentence: sentence.id.clone(),
                    });
                }
                if !sentence.annotated && sentence.message_type.is_some() {
                    return Err(CorpusError::MessageTypeOnUnannotated {
                        document: doc.id.clone(),
                        sentence: sentence.id.clone(),
                    });
                }
                if sentence.tokens.is_empty() {
                    warnings.push(CorpusWarning::EmptySentence {
                        document: doc.id.clone(),
                        sentence: sentence.id.clone(),
                    });
                }
                for (i, token) in sentence.tokens.iter().enumerate() {
                    if token.surface.trim().is_empty() {
                        return Err(CorpusError::EmptySurface {
                            document: doc.id.clone(),
                            sentence: sentence.id.clone(),
                            token: i,
                        });
                    }
                    if token.pos.is_empty() {
                        return Err(CorpusError::EmptyPos {
                            document: doc.id.clone(),
                            sentence: sentence.id.clone(),
                            token: i,
                        });
                    }
                }
            }
        }
        Ok((
            Corpus {
                name: name.into(),
                documents,
            },
            warnings,
        ))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn documents(&self) -> &[Document] {
        &self.documents
    }

    pub fn n_documents(&self) -> usize {
        self.documents.len()
    }

    pub fn sentences(&self) -> impl Iterator<Item = &Sentence> {
        self.documents.iter().flat_map(|d| d.sentences.iter())
    }

    pub fn into_documents(self) -> Vec<Document> {
        self.documents
    }
}

/// Corpus-level counts in the layout of a corpus statistics table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CorpusStats {
    pub n_documents: usize,
    pub n_tokens: usize,
    pub n_sentences: usize,
    pub n_annotated_sentences: usize,
    /// |U|: distinct content word keys anywhere in the corpus.
    pub n_distinct_vn_corpus: usize,
    /// |M|: distinct content word keys inside annotated sentences.
    pub n_distinct_vn_messages: usize,
}

pub fn compute_stats(corpus: &Corpus, config: &FilterConfig) -> CorpusStats {
    let n_sentences = corpus.sentences().count();
    let n_annotated_sentences = corpus.sentences().filter(|s| s.annotated).count();
    let n_tokens = corpus.sentences().map(|s| s.tokens.len()).sum();
    CorpusStats {
        n_documents: corpus.n_documents(),
        n_tokens,
        n_sentences,
        n_annotated_sentences,
        n_distinct_vn_corpus: lexicon::build_universe(corpus, config).len(),
        n_distinct_vn_messages: lexicon::build_gold(corpus, config).len(),
    }
}
