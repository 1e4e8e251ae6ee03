//! Word-key normalization, content filtering, and the frequency index the
//! extraction measures read from.
//!
//! Three lexicons matter for evaluation: the universe `U` of every content
//! word key in the corpus, the gold set `M` of keys that occur at least once
//! inside an annotated sentence, and an extracted set `E` produced by one of
//! the measures. `M` and `E` are always subsets of `U`.

use alloc::collections::{btree_set, BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use serde::Serialize;

use crate::corpus::{Corpus, Sentence, Token};

/// Where a token's word key comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum WordKeySource {
    /// The lemma when one is present and non-blank, otherwise the surface form.
    #[default]
    LemmaThenSurface,
    SurfaceOnly,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FilterConfigError {
    #[error("at least one content POS tag is required")]
    NoContentPos,
}

/// Which tokens count as content words and how they are keyed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FilterConfig {
    stopwords: BTreeSet<String>,
    content_pos: BTreeSet<String>,
    word_key_source: WordKeySource,
    case_fold: bool,
}

pub const DEFAULT_CONTENT_POS: [&str; 2] = ["VERB", "NOUN"];

impl Default for FilterConfig {
    fn default() -> Self {
        FilterConfig {
            stopwords: BTreeSet::new(),
            content_pos: DEFAULT_CONTENT_POS.iter().map(|s| s.to_string()).collect(),
            word_key_source: WordKeySource::LemmaThenSurface,
            case_fold: true,
        }
    }
}

impl FilterConfig {
    /// Stopwords are matched against normalized keys, so with `case_fold`
    /// they are folded here as well.
    pub fn new<S, P>(
        stopwords: S,
        content_pos: P,
        word_key_source: WordKeySource,
        case_fold: bool,
    ) -> Result<Self, FilterConfigError>
    where
        S: IntoIterator,
        S::Item: AsRef<str>,
        P: IntoIterator,
        P::Item: AsRef<str>,
    {
        let content_pos: BTreeSet<String> = content_pos
            .into_iter()
            .map(|p| p.as_ref().to_string())
            .filter(|p| !p.is_empty())
            .collect();
        if content_pos.is_empty() {
            return Err(FilterConfigError::NoContentPos);
        }
        let stopwords = stopwords
            .into_iter()
            .map(|w| fold(w.as_ref().trim(), case_fold))
            .filter(|w| !w.is_empty())
            .collect();
        Ok(FilterConfig {
            stopwords,
            content_pos,
            word_key_source,
            case_fold,
        })
    }

    pub fn with_stopwords<S>(self, stopwords: S) -> Self
    where
        S: IntoIterator,
        S::Item: AsRef<str>,
    {
        FilterConfig::new(
            stopwords,
            self.content_pos,
            self.word_key_source,
            self.case_fold,
        )
        .expect("content_pos already validated")
    }

    pub fn stopwords(&self) -> &BTreeSet<String> {
        &self.stopwords
    }

    pub fn content_pos(&self) -> &BTreeSet<String> {
        &self.content_pos
    }

    pub fn word_key_source(&self) -> WordKeySource {
        self.word_key_source
    }

    pub fn case_fold(&self) -> bool {
        self.case_fold
    }
}

fn fold(s: &str, case_fold: bool) -> String {
    if case_fold {
        s.to_lowercase()
    } else {
        s.to_string()
    }
}

/// Maps a token to its word key, or `None` when the token is not a content
/// word or its key is a stopword.
pub fn normalize(token: &Token, config: &FilterConfig) -> Option<String> {
    if !config.content_pos.contains(&token.pos) {
        return None;
    }
    let lemma = match config.word_key_source {
        WordKeySource::LemmaThenSurface => token
            .lemma
            .as_deref()
            .map(str::trim)
            .filter(|l| !l.is_empty()),
        WordKeySource::SurfaceOnly => None,
    };
    let raw = lemma.unwrap_or_else(|| token.surface.trim());
    if raw.is_empty() {
        return None;
    }
    let key = fold(raw, config.case_fold);
    if config.stopwords.contains(&key) {
        None
    } else {
        Some(key)
    }
}

fn sentence_keys<'a>(
    sentence: &'a Sentence,
    config: &'a FilterConfig,
) -> impl Iterator<Item = String> + 'a {
    sentence.tokens.iter().filter_map(move |t| normalize(t, config))
}

/// A finite set of normalized word keys.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Lexicon(BTreeSet<String>);

impl Lexicon {
    pub fn new() -> Self {
        Lexicon(BTreeSet::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, word: &str) -> bool {
        self.0.contains(word)
    }

    pub fn insert(&mut self, word: impl Into<String>) -> bool {
        self.0.insert(word.into())
    }

    pub fn remove(&mut self, word: &str) -> bool {
        self.0.remove(word)
    }

    /// Words in ascending code-point order.
    pub fn iter(&self) -> btree_set::Iter<'_, String> {
        self.0.iter()
    }

    pub fn is_subset(&self, other: &Lexicon) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn intersection_len(&self, other: &Lexicon) -> usize {
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        small.iter().filter(|w| large.contains(w)).count()
    }

    pub fn as_set(&self) -> &BTreeSet<String> {
        &self.0
    }
}

impl<S: Into<String>> FromIterator<S> for Lexicon {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        Lexicon(iter.into_iter().map(Into::into).collect())
    }
}

impl<S: Into<String>> Extend<S> for Lexicon {
    fn extend<I: IntoIterator<Item = S>>(&mut self, iter: I) {
        self.0.extend(iter.into_iter().map(Into::into));
    }
}

impl IntoIterator for Lexicon {
    type Item = String;
    type IntoIter = btree_set::IntoIter<String>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<'a> IntoIterator for &'a Lexicon {
    type Item = &'a String;
    type IntoIter = btree_set::Iter<'a, String>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// The universe `U`: every distinct content word key, annotated or not.
pub fn build_universe(corpus: &Corpus, config: &FilterConfig) -> Lexicon {
    corpus
        .sentences()
        .flat_map(|s| sentence_keys(s, config))
        .collect()
}

/// The gold set `M`: keys occurring at least once in an annotated sentence.
pub fn build_gold(corpus: &Corpus, config: &FilterConfig) -> Lexicon {
    corpus
        .sentences()
        .filter(|s| s.annotated)
        .flat_map(|s| sentence_keys(s, config))
        .collect()
}

/// Dense word id. Ids follow the lexicographic order of the keys, so
/// ordering by id is ordering by key.
pub type WordId = u32;

/// Frequency tables over content tokens.
///
/// Words are interned into a sorted vocabulary; per-document term lists are
/// sparse `(word id, count)` pairs sorted by id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusIndex {
    vocab: Vec<String>,
    corpus_freq: Vec<u64>,
    doc_count: Vec<u32>,
    doc_ids: Vec<String>,
    doc_terms: Vec<Vec<(WordId, u32)>>,
}

pub fn build_index(corpus: &Corpus, config: &FilterConfig) -> CorpusIndex {
    let per_doc: Vec<BTreeMap<String, u32>> = corpus
        .documents()
        .iter()
        .map(|doc| {
            let mut counts = BTreeMap::new();
            for key in doc.sentences.iter().flat_map(|s| sentence_keys(s, config)) {
                *counts.entry(key).or_insert(0u32) += 1;
            }
            counts
        })
        .collect();

    let vocab: Vec<String> = per_doc
        .iter()
        .flat_map(|counts| counts.keys())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .cloned()
        .collect();

    let mut corpus_freq = alloc::vec![0u64; vocab.len()];
    let mut doc_count = alloc::vec![0u32; vocab.len()];
    let doc_terms = per_doc
        .iter()
        .map(|counts| {
            counts
                .iter()
                .map(|(word, &count)| {
                    let id = vocab
                        .binary_search(word)
                        .expect("vocabulary built from the same keys");
                    corpus_freq[id] += u64::from(count);
                    doc_count[id] += 1;
                    (id as WordId, count)
                })
                .collect()
        })
        .collect();

    CorpusIndex {
        vocab,
        corpus_freq,
        doc_count,
        doc_ids: corpus.documents().iter().map(|d| d.id.clone()).collect(),
        doc_terms,
    }
}

impl CorpusIndex {
    /// `N`, counting documents with no content words too.
    pub fn n_documents(&self) -> usize {
        self.doc_ids.len()
    }

    pub fn n_words(&self) -> usize {
        self.vocab.len()
    }

    /// Indexed words in ascending order; position is the [`WordId`].
    pub fn words(&self) -> &[String] {
        &self.vocab
    }

    pub fn word(&self, id: WordId) -> &str {
        &self.vocab[id as usize]
    }

    pub fn word_id(&self, word: &str) -> Option<WordId> {
        self.vocab
            .binary_search_by(|w| w.as_str().cmp(word))
            .ok()
            .map(|i| i as WordId)
    }

    pub fn universe(&self) -> Lexicon {
        self.vocab.iter().cloned().collect()
    }

    pub fn document_ids(&self) -> &[String] {
        &self.doc_ids
    }

    /// Token count of `word` over the whole corpus; 0 when not indexed.
    pub fn corpus_freq(&self, word: &str) -> u64 {
        self.word_id(word)
            .map_or(0, |id| self.corpus_freq[id as usize])
    }

    /// Number of documents containing `word`.
    pub fn doc_count(&self, word: &str) -> u32 {
        self.word_id(word).map_or(0, |id| self.doc_count[id as usize])
    }

    /// Token count of `word` within document `doc` (by position).
    pub fn doc_freq(&self, doc: usize, word: &str) -> u32 {
        let Some(id) = self.word_id(word) else {
            return 0;
        };
        let terms = &self.doc_terms[doc];
        terms
            .binary_search_by_key(&id, |&(w, _)| w)
            .map_or(0, |i| terms[i].1)
    }

    pub fn max_doc_count(&self) -> u32 {
        self.doc_count.iter().copied().max().unwrap_or(0)
    }

    pub(crate) fn corpus_freq_by_id(&self) -> &[u64] {
        &self.corpus_freq
    }

    pub(crate) fn doc_count_by_id(&self) -> &[u32] {
        &self.doc_count
    }

    pub(crate) fn doc_terms(&self) -> &[Vec<(WordId, u32)>] {
        &self.doc_terms
    }

    pub(crate) fn ids_to_lexicon(&self, ids: impl IntoIterator<Item = WordId>) -> Lexicon {
        ids.into_iter().map(|id| self.word(id).to_string()).collect()
    }
}
