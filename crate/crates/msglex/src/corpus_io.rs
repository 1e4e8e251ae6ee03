//! The JSON corpus file.
//!
//! ```json
//! {"name": "...", "documents": [{"id": "...", "sentences": [
//!   {"id": "...", "annotated": true, "message_type": "...",
//!    "tokens": [{"surface": "...", "lemma": "...", "pos": "NOUN"}]}]}]}
//! ```
//!
//! `lemma` and `message_type` are optional. Unknown fields are skipped and
//! reported as warnings.

use std::fmt;
use std::io::{Read, Write};
use std::path::Path;

use msglex_core::corpus::{Corpus, CorpusError, CorpusWarning, Document};
use serde::Deserialize;
use serde_json::Value;

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("corpus is not valid UTF-8 (byte offset {offset})")]
    Utf8 { offset: usize },
    #[error("parse error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid corpus: {0}")]
    Invalid(#[from] CorpusError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LoadWarning {
    Corpus(CorpusWarning),
    UnknownField(String),
}

impl fmt::Display for LoadWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoadWarning::Corpus(w) => w.fmt(f),
            LoadWarning::UnknownField(path) => write!(f, "ignoring unknown field `{path}`"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct LoadedCorpus {
    pub corpus: Corpus,
    pub warnings: Vec<LoadWarning>,
}

#[derive(Deserialize)]
struct CorpusFile {
    name: String,
    documents: Vec<Document>,
}

const CORPUS_FIELDS: &[&str] = &["name", "documents"];
const DOCUMENT_FIELDS: &[&str] = &["id", "sentences"];
const SENTENCE_FIELDS: &[&str] = &["id", "annotated", "message_type", "tokens"];
const TOKEN_FIELDS: &[&str] = &["surface", "lemma", "pos"];

fn unknown_keys(value: &Value, known: &[&str], path: &str, out: &mut Vec<LoadWarning>) {
    if let Value::Object(map) = value {
        for key in map.keys().filter(|k| !known.contains(&k.as_str())) {
            out.push(LoadWarning::UnknownField(format!("{path}{key}")));
        }
    }
}

fn children<'a>(value: &'a Value, field: &str) -> impl Iterator<Item = (usize, &'a Value)> {
    value
        .get(field)
        .and_then(Value::as_array)
        .into_iter()
        .flatten()
        .enumerate()
}

/// Paths of object keys the corpus schema does not define, e.g.
/// `documents.0.sentences.2.tokens.5.offset`.
fn unknown_fields(root: &Value) -> Vec<LoadWarning> {
    let mut out = Vec::new();
    unknown_keys(root, CORPUS_FIELDS, "", &mut out);
    for (d, doc) in children(root, "documents") {
        let doc_path = format!("documents.{d}.");
        unknown_keys(doc, DOCUMENT_FIELDS, &doc_path, &mut out);
        for (s, sentence) in children(doc, "sentences") {
            let sentence_path = format!("{doc_path}sentences.{s}.");
            unknown_keys(sentence, SENTENCE_FIELDS, &sentence_path, &mut out);
            for (t, token) in children(sentence, "tokens") {
                unknown_keys(token, TOKEN_FIELDS, &format!("{sentence_path}tokens.{t}."), &mut out);
            }
        }
    }
    out
}

pub fn parse_corpus_str(text: &str) -> Result<LoadedCorpus, LoadError> {
    let syntax = |e: serde_json::Error| LoadError::Syntax {
        line: e.line(),
        column: e.column(),
        message: strip_position(&e),
    };
    // Typed parse first so type errors keep their position.
    let file: CorpusFile = serde_json::from_str(text).map_err(syntax)?;
    let mut warnings = unknown_fields(&serde_json::from_str(text).map_err(syntax)?);
    let (corpus, corpus_warnings) = Corpus::new(file.name, file.documents)?;
    warnings.extend(corpus_warnings.into_iter().map(LoadWarning::Corpus));
    Ok(LoadedCorpus { corpus, warnings })
}

// serde_json appends " at line L column C"; the position is reported
// separately.
fn strip_position(e: &serde_json::Error) -> String {
    let full = e.to_string();
    match full.rfind(" at line ") {
        Some(i) => full[..i].to_string(),
        None => full,
    }
}

pub fn parse_corpus<R: Read>(mut input: R) -> Result<LoadedCorpus, LoadError> {
    let mut bytes = Vec::new();
    input.read_to_end(&mut bytes).map_err(|source| LoadError::Io {
        path: "<input>".into(),
        source,
    })?;
    let text = String::from_utf8(bytes).map_err(|e| LoadError::Utf8 {
        offset: e.utf8_error().valid_up_to(),
    })?;
    parse_corpus_str(&text)
}

pub fn load_corpus(path: &Path) -> Result<LoadedCorpus, LoadError> {
    let file = std::fs::File::open(path).map_err(|source| LoadError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_corpus(std::io::BufReader::new(file))
}

pub fn write_corpus<W: Write>(corpus: &Corpus, out: W) -> serde_json::Result<()> {
    serde_json::to_writer_pretty(out, corpus)
}
