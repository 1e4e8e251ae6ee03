//! Threshold sweeps and operating-point selection.
//!
//! Percent measures sweep `1..=100`. Inter-document frequency sweeps
//! `1..=max_w doccount(w)`, the largest threshold that can still select a
//! word.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::RangeInclusive;

use serde::Serialize;

use crate::corpus::Corpus;
use crate::evaluation::MetricsRow;
use crate::lexicon::{build_gold, build_index, FilterConfig, Lexicon};
use crate::measures::{MeasureKind, MeasureSpec, RankedIndex};

pub const DEFAULT_FALLOUT_CAP: f64 = 0.10;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SweepError {
    #[error("no content vocabulary: every token was filtered out")]
    NoContentVocabulary,
    #[error("fallout cap {0} is outside [0, 1]")]
    InvalidFalloutCap(f64),
    #[error("sweep rows for `{kind}` must cover thresholds 1..={expected_last} in order")]
    IncompleteRows { kind: MeasureKind, expected_last: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OperatingPoint {
    pub threshold: u32,
    pub row: MetricsRow,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub kind: MeasureKind,
    /// Ascending, one per threshold, no gaps.
    pub rows: Vec<MetricsRow>,
    pub best_f: OperatingPoint,
    pub best_f_under_cap: Option<OperatingPoint>,
    pub fallout_cap: f64,
}

fn check_cap(cap: f64) -> Result<(), SweepError> {
    if (0.0..=1.0).contains(&cap) {
        Ok(())
    } else {
        Err(SweepError::InvalidFalloutCap(cap))
    }
}

/// Highest F-measure among `rows`; the earliest row wins a tie.
fn best_by_f<'a>(rows: impl Iterator<Item = &'a MetricsRow>) -> Option<OperatingPoint> {
    let mut best: Option<&MetricsRow> = None;
    for row in rows {
        if best.is_none_or(|b| row.f_measure > b.f_measure) {
            best = Some(row);
        }
    }
    best.map(|row| OperatingPoint {
        threshold: row.threshold,
        row: *row,
    })
}

impl SweepResult {
    /// Assembles a result from rows and selects the operating points.
    /// `rows` must hold thresholds `1..=n` in order, all of `kind`.
    pub fn from_rows(kind: MeasureKind, rows: Vec<MetricsRow>, fallout_cap: f64) -> Result<Self, SweepError> {
        check_cap(fallout_cap)?;
        let contiguous = rows
            .iter()
            .enumerate()
            .all(|(i, r)| r.kind == kind && r.threshold as usize == i + 1);
        let best_f = best_by_f(rows.iter()).filter(|_| contiguous).ok_or(SweepError::IncompleteRows {
            kind,
            expected_last: rows.len() as u32,
        })?;
        let best_f_under_cap = best_by_f(rows.iter().filter(|r| r.fallout <= fallout_cap));
        Ok(SweepResult {
            kind,
            rows,
            best_f,
            best_f_under_cap,
            fallout_cap,
        })
    }
}

/// Universe, gold set and ranked index for one corpus and filter config,
/// shared by every (measure, threshold) evaluation.
#[derive(Debug, Clone)]
pub struct SweepContext {
    ranked: RankedIndex,
    universe: Lexicon,
    gold: Lexicon,
    gold_mask: Vec<bool>,
}

impl SweepContext {
    pub fn new(corpus: &Corpus, config: &FilterConfig) -> Result<Self, SweepError> {
        let index = build_index(corpus, config);
        if index.n_words() == 0 {
            return Err(SweepError::NoContentVocabulary);
        }
        let universe = index.universe();
        let gold = build_gold(corpus, config);
        let gold_mask = index.words().iter().map(|w| gold.contains(w)).collect();
        Ok(SweepContext {
            ranked: RankedIndex::new(index),
            universe,
            gold,
            gold_mask,
        })
    }

    pub fn universe(&self) -> &Lexicon {
        &self.universe
    }

    pub fn gold(&self) -> &Lexicon {
        &self.gold
    }

    pub fn ranked(&self) -> &RankedIndex {
        &self.ranked
    }

    pub fn thresholds(&self, kind: MeasureKind) -> RangeInclusive<u32> {
        if kind.is_percent() {
            1..=100
        } else {
            1..=self.ranked.index().max_doc_count()
        }
    }

    pub fn extract(&self, spec: MeasureSpec) -> Lexicon {
        self.ranked.extract(spec)
    }

    /// Extracts and scores a single point.
    pub fn row(&self, spec: MeasureSpec) -> MetricsRow {
        let mut mask = vec![];
        self.ranked.mark(spec, &mut mask);
        let (extracted, true_positives) = mask
            .iter()
            .zip(&self.gold_mask)
            .filter(|(&e, _)| e)
            .fold((0, 0), |(e, tp), (_, &g)| (e + 1, tp + usize::from(g)));
        MetricsRow::from_counts(
            spec,
            extracted,
            true_positives,
            self.universe.len(),
            self.gold.len(),
        )
        .expect("extracted and gold sets are drawn from the universe")
    }

    pub fn sweep(&self, kind: MeasureKind, fallout_cap: f64) -> Result<SweepResult, SweepError> {
        check_cap(fallout_cap)?;
        let rows = self
            .thresholds(kind)
            .map(|threshold| self.row(MeasureSpec { kind, threshold }))
            .collect();
        SweepResult::from_rows(kind, rows, fallout_cap)
    }
}

pub fn run_sweep(
    corpus: &Corpus,
    config: &FilterConfig,
    kind: MeasureKind,
    fallout_cap: f64,
) -> Result<SweepResult, SweepError> {
    check_cap(fallout_cap)?;
    SweepContext::new(corpus, config)?.sweep(kind, fallout_cap)
}

/// Sweeps all four measures, in [`MeasureKind::ALL`] order.
pub fn run_all_sweeps(
    corpus: &Corpus,
    config: &FilterConfig,
    fallout_cap: f64,
) -> Result<Vec<SweepResult>, SweepError> {
    check_cap(fallout_cap)?;
    let ctx = SweepContext::new(corpus, config)?;
    MeasureKind::ALL
        .into_iter()
        .map(|kind| ctx.sweep(kind, fallout_cap))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{Document, Sentence, Token};
    use crate::evaluation::evaluate;
    use crate::test_fixture::fixture_corpus;

    #[test]
    fn fixture_collection_freq_sweep() {
        let result = run_sweep(&fixture_corpus(), &FilterConfig::default(), MeasureKind::CollectionFreq, 0.1).unwrap();
        assert_eq!(result.rows.len(), 100);
        let last = result.rows.last().unwrap();
        assert_eq!(last.threshold, 100);
        assert_eq!(last.recall, 1.0);
        assert_eq!(last.fallout, 1.0);
        // 1..=25 select {attack}, 26..=50 {attack, hostage} with F = 1.
        assert_eq!(result.best_f.threshold, 26);
        assert_eq!(result.best_f.row.f_measure, 1.0);
        assert_eq!(result.best_f_under_cap.unwrap().threshold, 26);
    }

    #[test]
    fn fixture_interdoc_sweep_range() {
        let result = run_sweep(&fixture_corpus(), &FilterConfig::default(), MeasureKind::InterdocFreq, 0.1).unwrap();
        let thresholds: Vec<u32> = result.rows.iter().map(|r| r.threshold).collect();
        assert_eq!(thresholds, vec![1, 2]);
        assert_eq!(result.rows[0].extracted_size, 4);
        assert_eq!(result.rows[1].extracted_size, 1);
        // IDF@1 = U: P=1/2, R=1, fallout 1. IDF@2 = {hostage}: P=1, R=1/2,
        // fallout 0. Both have F = 2/3.
        assert_eq!(result.best_f.threshold, 1);
        assert!((result.best_f.row.f_measure - 2.0 / 3.0).abs() < 1e-12);
        assert_eq!(result.best_f_under_cap.unwrap().threshold, 2);
    }

    #[test]
    fn rows_agree_with_set_evaluation() {
        let corpus = fixture_corpus();
        let config = FilterConfig::default();
        let ctx = SweepContext::new(&corpus, &config).unwrap();
        for kind in MeasureKind::ALL {
            for threshold in ctx.thresholds(kind) {
                let spec = MeasureSpec { kind, threshold };
                let expected = evaluate(&ctx.extract(spec), ctx.gold(), ctx.universe(), spec).unwrap();
                assert_eq!(ctx.row(spec), expected);
            }
        }
    }

    #[test]
    fn all_sweeps_cover_each_kind_once() {
        let results = run_all_sweeps(&fixture_corpus(), &FilterConfig::default(), 0.1).unwrap();
        let kinds: Vec<MeasureKind> = results.iter().map(|r| r.kind).collect();
        assert_eq!(kinds, MeasureKind::ALL.to_vec());
    }

    #[test]
    fn empty_vocabulary_is_an_error() {
        let doc = Document::new("d", vec![Sentence::plain("s", vec![Token::new("the", None, "DET")])]);
        let (corpus, _) = Corpus::new("c", vec![doc]).unwrap();
        assert_eq!(
            run_sweep(&corpus, &FilterConfig::default(), MeasureKind::TfIdf, 0.1).unwrap_err(),
            SweepError::NoContentVocabulary
        );
    }

    #[test]
    fn cap_is_validated() {
        let corpus = fixture_corpus();
        assert!(matches!(
            run_all_sweeps(&corpus, &FilterConfig::default(), 1.5),
            Err(SweepError::InvalidFalloutCap(_))
        ));
        assert!(run_all_sweeps(&corpus, &FilterConfig::default(), f64::NAN).is_err());
    }

    fn row(threshold: u32, f_measure: f64, fallout: f64) -> MetricsRow {
        MetricsRow {
            kind: MeasureKind::TfIdf,
            threshold,
            precision: f_measure,
            recall: f_measure,
            f_measure,
            fallout,
            extracted_size: 0,
            true_positives: 0,
            universe_size: 0,
            gold_size: 0,
            precision_by_convention: false,
        }
    }

    #[test]
    fn selection_prefers_smaller_threshold_on_ties() {
        let rows = vec![row(1, 0.2, 0.0), row(2, 0.6, 0.3), row(3, 0.6, 0.05), row(4, 0.5, 0.05)];
        let result = SweepResult::from_rows(MeasureKind::TfIdf, rows, 0.1).unwrap();
        assert_eq!(result.best_f.threshold, 2);
        assert_eq!(result.best_f_under_cap.unwrap().threshold, 3);
    }

    #[test]
    fn no_row_under_cap_gives_none() {
        let rows = vec![row(1, 0.2, 0.5), row(2, 0.3, 0.6)];
        let result = SweepResult::from_rows(MeasureKind::TfIdf, rows, 0.1).unwrap();
        assert!(result.best_f_under_cap.is_none());
    }

    #[test]
    fn gaps_are_rejected() {
        let rows = vec![row(1, 0.2, 0.5), row(3, 0.3, 0.6)];
        assert!(SweepResult::from_rows(MeasureKind::TfIdf, rows, 0.1).is_err());
        assert!(SweepResult::from_rows(MeasureKind::TfIdf, vec![], 0.1).is_err());
        assert!(SweepResult::from_rows(MeasureKind::CollectionFreq, vec![row(1, 0.1, 0.1)], 0.1).is_err());
    }
}
