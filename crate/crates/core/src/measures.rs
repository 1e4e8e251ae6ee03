//! The four corpus-frequency extraction measures.
//!
//! Three measures take a percentage `n` and keep the top `n%` of a ranking:
//! over the whole corpus (collection frequency), or per document by raw
//! frequency (document frequency) or by tf.idf, with the per-document
//! selections unioned. The fourth keeps every word that occurs in at least
//! `n` documents.
//!
//! Rankings order by score descending, then by key ascending in code-point
//! order. A top-`n%` selection over `L` ranked keys keeps exactly
//! `ceil(n * L / 100)` of them, cutting through ties by that order.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use serde::Serialize;

use crate::lexicon::{CorpusIndex, Lexicon, WordId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum MeasureKind {
    CollectionFreq,
    DocumentFreq,
    TfIdf,
    InterdocFreq,
}

impl MeasureKind {
    pub const ALL: [MeasureKind; 4] = [
        MeasureKind::CollectionFreq,
        MeasureKind::DocumentFreq,
        MeasureKind::TfIdf,
        MeasureKind::InterdocFreq,
    ];

    /// Short name used on the command line and in file names.
    pub fn code(self) -> &'static str {
        match self {
            MeasureKind::CollectionFreq => "cf",
            MeasureKind::DocumentFreq => "df",
            MeasureKind::TfIdf => "tfidf",
            MeasureKind::InterdocFreq => "idf",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            MeasureKind::CollectionFreq => "Collection Frequency",
            MeasureKind::DocumentFreq => "Document Frequency",
            MeasureKind::TfIdf => "tf.idf",
            MeasureKind::InterdocFreq => "Inter-document Frequency",
        }
    }

    /// Whether the threshold is a percentage rather than a document count.
    pub fn is_percent(self) -> bool {
        !matches!(self, MeasureKind::InterdocFreq)
    }
}

impl fmt::Display for MeasureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown measure `{0}` (expected cf, df, tfidf or idf)")]
pub struct UnknownMeasure(pub alloc::string::String);

impl FromStr for MeasureKind {
    type Err = UnknownMeasure;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MeasureKind::ALL
            .into_iter()
            .find(|k| k.code() == s)
            .ok_or_else(|| UnknownMeasure(s.into()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum ThresholdError {
    #[error("percent threshold {0} is outside 1..=100")]
    Percent(u32),
    #[error("document threshold {value} is outside 1..={n_documents}")]
    MinDocs { value: u32, n_documents: usize },
}

/// An integer percentage in `1..=100`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Percent(u8);

impl Percent {
    pub const FULL: Percent = Percent(100);

    pub fn new(value: u32) -> Result<Percent, ThresholdError> {
        if (1..=100).contains(&value) {
            Ok(Percent(value as u8))
        } else {
            Err(ThresholdError::Percent(value))
        }
    }

    pub fn get(self) -> u32 {
        u32::from(self.0)
    }

    /// `ceil(percent * len / 100)`.
    pub fn of(self, len: usize) -> usize {
        (len * self.0 as usize).div_ceil(100)
    }

    pub fn all() -> impl Iterator<Item = Percent> {
        (1..=100).map(Percent)
    }
}

/// A measure together with its threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct MeasureSpec {
    pub kind: MeasureKind,
    pub threshold: u32,
}

impl MeasureSpec {
    /// Checks the threshold range: `1..=100` for percent measures and
    /// `1..=n_documents` for inter-document frequency.
    pub fn new(kind: MeasureKind, threshold: u32, n_documents: usize) -> Result<Self, ThresholdError> {
        if kind.is_percent() {
            Percent::new(threshold)?;
        } else if threshold == 0 || threshold as usize > n_documents {
            return Err(ThresholdError::MinDocs {
                value: threshold,
                n_documents,
            });
        }
        Ok(MeasureSpec { kind, threshold })
    }
}

fn by_score_then_key<K: Ord, S: PartialOrd>(a: &(K, S), b: &(K, S)) -> Ordering {
    b.1.partial_cmp(&a.1)
        .unwrap_or(Ordering::Equal)
        .then_with(|| a.0.cmp(&b.0))
}

/// Keeps the first `ceil(percent * L / 100)` keys of `items` under the
/// score-descending, key-ascending order, where `L` is the number of
/// distinct keys. A key listed more than once is ranked by its best score.
pub fn top_fraction<K, S>(items: &[(K, S)], percent: Percent) -> BTreeSet<K>
where
    K: Ord + Clone,
    S: PartialOrd + Copy,
{
    let mut sorted: Vec<(K, S)> = items.to_vec();
    sorted.sort_by(by_score_then_key);
    let mut seen = BTreeSet::new();
    let ranked: Vec<K> = sorted
        .into_iter()
        .filter_map(|(k, _)| seen.insert(k.clone()).then_some(k))
        .collect();
    let k = percent.of(ranked.len());
    ranked.into_iter().take(k).collect()
}

fn rank<S: PartialOrd>(mut items: Vec<(WordId, S)>) -> Vec<WordId> {
    // Ids are unique and ordered like their keys.
    items.sort_by(by_score_then_key);
    items.into_iter().map(|(id, _)| id).collect()
}

/// `tf * ln(N / df)` with raw counts and the natural log.
pub fn tfidf_score(tf: u32, df: u32, n_documents: usize) -> f64 {
    f64::from(tf) * libm::log(n_documents as f64 / f64::from(df))
}

fn cf_ranking(index: &CorpusIndex) -> Vec<WordId> {
    rank(
        index
            .corpus_freq_by_id()
            .iter()
            .enumerate()
            .map(|(id, &f)| (id as WordId, f))
            .collect(),
    )
}

fn df_rankings(index: &CorpusIndex) -> Vec<Vec<WordId>> {
    index
        .doc_terms()
        .iter()
        .map(|terms| rank(terms.to_vec()))
        .collect()
}

fn tfidf_rankings(index: &CorpusIndex) -> Vec<Vec<WordId>> {
    let n = index.n_documents();
    let doc_count = index.doc_count_by_id();
    index
        .doc_terms()
        .iter()
        .map(|terms| {
            rank(
                terms
                    .iter()
                    .map(|&(id, tf)| (id, tfidf_score(tf, doc_count[id as usize], n)))
                    .collect(),
            )
        })
        .collect()
}

fn union_of_prefixes(rankings: &[Vec<WordId>], percent: Percent) -> BTreeSet<WordId> {
    rankings
        .iter()
        .flat_map(|r| r[..percent.of(r.len())].iter().copied())
        .collect()
}

/// Top `percent` of words by corpus-wide token frequency.
pub fn extract_collection_freq(index: &CorpusIndex, percent: Percent) -> Lexicon {
    let ranking = cf_ranking(index);
    let k = percent.of(ranking.len());
    index.ids_to_lexicon(ranking[..k].iter().copied())
}

/// Union over documents of each document's top `percent` words by
/// in-document token frequency.
pub fn extract_document_freq(index: &CorpusIndex, percent: Percent) -> Lexicon {
    index.ids_to_lexicon(union_of_prefixes(&df_rankings(index), percent))
}

/// Union over documents of each document's top `percent` words by tf.idf.
pub fn extract_tfidf(index: &CorpusIndex, percent: Percent) -> Lexicon {
    index.ids_to_lexicon(union_of_prefixes(&tfidf_rankings(index), percent))
}

/// Words occurring in at least `min_docs` documents.
pub fn extract_interdoc_freq(index: &CorpusIndex, min_docs: u32) -> Lexicon {
    index.ids_to_lexicon(
        index
            .doc_count_by_id()
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c >= min_docs)
            .map(|(id, _)| id as WordId),
    )
}

/// Dispatches on `spec.kind`.
///
/// # Panics
///
/// If a percent measure carries a threshold outside `1..=100`. Specs built
/// with [`MeasureSpec::new`] never do.
pub fn extract(index: &CorpusIndex, spec: MeasureSpec) -> Lexicon {
    let percent = || Percent::new(spec.threshold).expect("validated percent threshold");
    match spec.kind {
        MeasureKind::CollectionFreq => extract_collection_freq(index, percent()),
        MeasureKind::DocumentFreq => extract_document_freq(index, percent()),
        MeasureKind::TfIdf => extract_tfidf(index, percent()),
        MeasureKind::InterdocFreq => extract_interdoc_freq(index, spec.threshold),
    }
}

/// An index with all rankings precomputed once, for evaluating many
/// thresholds against the same corpus.
#[derive(Debug, Clone)]
pub struct RankedIndex {
    index: CorpusIndex,
    cf: Vec<WordId>,
    df: Vec<Vec<WordId>>,
    tfidf: Vec<Vec<WordId>>,
}

impl RankedIndex {
    pub fn new(index: CorpusIndex) -> Self {
        RankedIndex {
            cf: cf_ranking(&index),
            df: df_rankings(&index),
            tfidf: tfidf_rankings(&index),
            index,
        }
    }

    pub fn index(&self) -> &CorpusIndex {
        &self.index
    }

    /// Marks the selected word ids in `mask` (cleared first).
    pub(crate) fn mark(&self, spec: MeasureSpec, mask: &mut Vec<bool>) {
        mask.clear();
        mask.resize(self.index.n_words(), false);
        let percent = || Percent::new(spec.threshold).expect("validated percent threshold");
        let prefixes = |rankings: &[Vec<WordId>], mask: &mut Vec<bool>| {
            let p = percent();
            for r in rankings {
                for &id in &r[..p.of(r.len())] {
                    mask[id as usize] = true;
                }
            }
        };
        match spec.kind {
            MeasureKind::CollectionFreq => {
                for &id in &self.cf[..percent().of(self.cf.len())] {
                    mask[id as usize] = true;
                }
            }
            MeasureKind::DocumentFreq => prefixes(&self.df, mask),
            MeasureKind::TfIdf => prefixes(&self.tfidf, mask),
            MeasureKind::InterdocFreq => {
                for (m, &c) in mask.iter_mut().zip(self.index.doc_count_by_id()) {
                    *m = c >= spec.threshold;
                }
            }
        }
    }

    pub fn extract(&self, spec: MeasureSpec) -> Lexicon {
        let mut mask = vec![];
        self.mark(spec, &mut mask);
        self.index.ids_to_lexicon(
            mask.iter()
                .enumerate()
                .filter(|(_, &m)| m)
                .map(|(id, _)| id as WordId),
        )
    }
}
