//! Precision, Recall, F-measure and Fallout of an extracted lexicon `E`
//! against the gold set `M` inside the universe `U`.
//!
//! Zero denominators resolve as follows:
//!
//! | case            | value                                      |
//! |-----------------|--------------------------------------------|
//! | `E` empty       | precision 1 if `M` is empty too, else 0    |
//! | `M` empty       | recall 1                                   |
//! | `P + R == 0`    | F-measure 0                                |
//! | `U == M`        | fallout 0                                  |

use alloc::string::{String, ToString};

use serde::Serialize;

use crate::lexicon::Lexicon;
use crate::measures::{MeasureKind, MeasureSpec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("extracted word `{0}` is not in the universe")]
    ExtractedOutsideUniverse(String),
    #[error("gold word `{0}` is not in the universe")]
    GoldOutsideUniverse(String),
    #[error("inconsistent set sizes: |E|={extracted}, |E∩M|={true_positives}, |U|={universe}, |M|={gold}")]
    InconsistentCounts {
        extracted: usize,
        true_positives: usize,
        universe: usize,
        gold: usize,
    },
}

/// Scores for one (measure, threshold) point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MetricsRow {
    pub kind: MeasureKind,
    pub threshold: u32,
    pub precision: f64,
    pub recall: f64,
    pub f_measure: f64,
    pub fallout: f64,
    pub extracted_size: usize,
    pub true_positives: usize,
    pub universe_size: usize,
    pub gold_size: usize,
    /// Set when `E` was empty and precision came from the convention
    /// rather than a ratio.
    pub precision_by_convention: bool,
}

/// Harmonic mean of precision and recall; 0 when both are 0.
pub fn f_measure(precision: f64, recall: f64) -> f64 {
    if precision + recall == 0.0 {
        0.0
    } else {
        2.0 * precision * recall / (precision + recall)
    }
}

impl MetricsRow {
    /// Builds a row from set cardinalities alone.
    pub fn from_counts(
        spec: MeasureSpec,
        extracted_size: usize,
        true_positives: usize,
        universe_size: usize,
        gold_size: usize,
    ) -> Result<MetricsRow, EvalError> {
        let false_positives = extracted_size.checked_sub(true_positives);
        let non_gold = universe_size.checked_sub(gold_size);
        let consistent = matches!((false_positives, non_gold), (Some(fp), Some(ng)) if fp <= ng)
            && true_positives <= gold_size;
        if !consistent {
            return Err(EvalError::InconsistentCounts {
                extracted: extracted_size,
                true_positives,
                universe: universe_size,
                gold: gold_size,
            });
        }
        let (fp, non_gold) = (extracted_size - true_positives, universe_size - gold_size);

        let precision_by_convention = extracted_size == 0;
        let precision = match (extracted_size, gold_size) {
            (0, 0) => 1.0,
            (0, _) => 0.0,
            (e, _) => true_positives as f64 / e as f64,
        };
        let recall = if gold_size == 0 {
            1.0
        } else {
            true_positives as f64 / gold_size as f64
        };
        let fallout = if non_gold == 0 {
            0.0
        } else {
            fp as f64 / non_gold as f64
        };
        Ok(MetricsRow {
            kind: spec.kind,
            threshold: spec.threshold,
            precision,
            recall,
            f_measure: f_measure(precision, recall),
            fallout,
            extracted_size,
            true_positives,
            universe_size,
            gold_size,
            precision_by_convention,
        })
    }

    pub fn spec(&self) -> MeasureSpec {
        MeasureSpec {
            kind: self.kind,
            threshold: self.threshold,
        }
    }
}

/// Scores `extracted` against `gold`; both must lie inside `universe`.
pub fn evaluate(
    extracted: &Lexicon,
    gold: &Lexicon,
    universe: &Lexicon,
    spec: MeasureSpec,
) -> Result<MetricsRow, EvalError> {
    if let Some(w) = extracted.iter().find(|w| !universe.contains(w)) {
        return Err(EvalError::ExtractedOutsideUniverse(w.to_string()));
    }
    if let Some(w) = gold.iter().find(|w| !universe.contains(w)) {
        return Err(EvalError::GoldOutsideUniverse(w.to_string()));
    }
    MetricsRow::from_counts(
        spec,
        extracted.len(),
        extracted.intersection_len(gold),
        universe.len(),
        gold.len(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const SPEC: MeasureSpec = MeasureSpec {
        kind: MeasureKind::CollectionFreq,
        threshold: 50,
    };

    fn lex(words: &[&str]) -> Lexicon {
        words.iter().copied().collect()
    }

    fn universe() -> Lexicon {
        lex(&["attack", "hostage", "negotiate", "police"])
    }

    #[test]
    fn perfect_extraction() {
        let u = universe();
        let row = evaluate(&u, &u, &u, SPEC).unwrap();
        assert_eq!((row.precision, row.recall, row.f_measure, row.fallout), (1.0, 1.0, 1.0, 0.0));
    }

    #[test]
    fn fixture_set_arithmetic() {
        let e = lex(&["attack", "hostage", "police"]);
        let m = lex(&["attack", "hostage"]);
        let row = evaluate(&e, &m, &universe(), SPEC).unwrap();
        assert!((row.precision - 2.0 / 3.0).abs() < 1e-12);
        assert_eq!(row.recall, 1.0);
        assert!((row.f_measure - 0.8).abs() < 1e-12);
        assert_eq!(row.fallout, 0.5);
        assert_eq!((row.extracted_size, row.true_positives, row.universe_size, row.gold_size), (3, 2, 4, 2));
    }

    #[test]
    fn reported_operating_points_satisfy_harmonic_mean() {
        assert!((f_measure(0.5414, 0.7218) - 0.6187).abs() < 1e-4);
        assert!((f_measure(0.7160, 0.4386) - 0.5440).abs() < 1e-4);
        assert_eq!(f_measure(0.0, 0.0), 0.0);
    }

    #[test]
    fn empty_extraction_conventions() {
        let u = universe();
        let row = evaluate(&Lexicon::new(), &lex(&["attack"]), &u, SPEC).unwrap();
        assert_eq!((row.precision, row.recall, row.fallout, row.f_measure), (0.0, 0.0, 0.0, 0.0));
        assert!(row.precision_by_convention);

        let row = evaluate(&Lexicon::new(), &Lexicon::new(), &u, SPEC).unwrap();
        assert_eq!((row.precision, row.recall), (1.0, 1.0));
        assert!(row.precision_by_convention);
    }

    #[test]
    fn empty_gold_gives_full_recall() {
        let row = evaluate(&lex(&["police"]), &Lexicon::new(), &universe(), SPEC).unwrap();
        assert_eq!((row.precision, row.recall, row.fallout), (0.0, 1.0, 0.25));
    }

    #[test]
    fn gold_equal_to_universe_has_zero_fallout() {
        let u = universe();
        let row = evaluate(&lex(&["police"]), &u, &u, SPEC).unwrap();
        assert_eq!(row.fallout, 0.0);
        assert_eq!(row.recall, 0.25);
    }

    #[test]
    fn extracted_outside_universe_is_an_error() {
        let err = evaluate(&lex(&["bomb"]), &Lexicon::new(), &universe(), SPEC).unwrap_err();
        assert_eq!(err, EvalError::ExtractedOutsideUniverse("bomb".into()));
        let err = evaluate(&Lexicon::new(), &lex(&["bomb"]), &universe(), SPEC).unwrap_err();
        assert_eq!(err, EvalError::GoldOutsideUniverse("bomb".into()));
    }

    #[test]
    fn inconsistent_counts_are_rejected() {
        assert!(MetricsRow::from_counts(SPEC, 2, 3, 10, 5).is_err());
        assert!(MetricsRow::from_counts(SPEC, 2, 1, 4, 5).is_err());
        assert!(MetricsRow::from_counts(SPEC, 9, 0, 10, 5).is_err());
        assert!(MetricsRow::from_counts(SPEC, 5, 0, 10, 5).is_ok());
    }

    proptest! {
        #[test]
        fn f_measure_is_symmetric(p in 0.0f64..=1.0, r in 0.0f64..=1.0) {
            prop_assert!((f_measure(p, r) - f_measure(r, p)).abs() < 1e-15);
            prop_assert!((f_measure(p, p) - p).abs() < 1e-12);
            let f = f_measure(p, r);
            prop_assert!((0.0..=1.0).contains(&f));
            prop_assert!(f <= p.max(r) + 1e-12 && f >= p.min(r) - 1e-12);
        }

        #[test]
        fn metrics_stay_in_unit_interval(
            universe in 0usize..50,
            gold_frac in 0.0f64..=1.0,
            tp_frac in 0.0f64..=1.0,
            fp_frac in 0.0f64..=1.0,
        ) {
            let gold = (universe as f64 * gold_frac) as usize;
            let tp = (gold as f64 * tp_frac) as usize;
            let fp = ((universe - gold) as f64 * fp_frac) as usize;
            let row = MetricsRow::from_counts(SPEC, tp + fp, tp, universe, gold).unwrap();
            for v in [row.precision, row.recall, row.f_measure, row.fallout] {
                prop_assert!((0.0..=1.0).contains(&v));
            }
        }

        #[test]
        fn growing_extraction_never_lowers_recall_or_fallout(
            mask in proptest::collection::vec((any::<bool>(), any::<bool>(), any::<bool>()), 1..40),
        ) {
            // (in gold, in E1, in E2 \ E1) per universe word
            let mut u = Lexicon::new();
            let mut m = Lexicon::new();
            let mut e1 = Lexicon::new();
            let mut e2 = Lexicon::new();
            for (i, &(gold, small, extra)) in mask.iter().enumerate() {
                let w = alloc::format!("w{i}");
                u.insert(w.clone());
                if gold { m.insert(w.clone()); }
                if small { e1.insert(w.clone()); }
                if small || extra { e2.insert(w); }
            }
            let r1 = evaluate(&e1, &m, &u, SPEC).unwrap();
            let r2 = evaluate(&e2, &m, &u, SPEC).unwrap();
            prop_assert!(r2.recall >= r1.recall);
            prop_assert!(r2.fallout >= r1.fallout);
        }
    }
}
