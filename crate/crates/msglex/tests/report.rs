mod common;

use msglex::parallel::{sweep_all_parallel, sweep_parallel};
use msglex::report::{read_csv, render_svg, write_csv, Summary};
use msglex_core::{run_all_sweeps, FilterConfig, MeasureKind, SweepContext};
use proptest::prelude::*;

fn fixture_sweeps() -> Vec<msglex_core::SweepResult> {
    run_all_sweeps(&common::fixture(), &FilterConfig::default(), 0.1).unwrap()
}

#[test]
fn csv_has_header_plus_one_line_per_row() {
    for result in fixture_sweeps() {
        let mut buf = Vec::new();
        let n = write_csv(&result, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(n, result.rows.len());
        assert_eq!(text.lines().count(), n + 1);
        assert!(text.ends_with('\n') && !text.contains('\r'));
        let thresholds: Vec<u32> = read_csv(text.as_bytes()).unwrap().iter().map(|r| r.threshold).collect();
        assert!(thresholds.windows(2).all(|w| w[0] + 1 == w[1]));
    }
}

#[test]
fn svg_structure() {
    for result in fixture_sweeps() {
        let mut buf = Vec::new();
        render_svg(&result, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let doc = roxmltree::Document::parse(&text).expect("well-formed XML");
        let root = doc.root_element();
        assert_eq!(root.tag_name().name(), "svg");
        let polylines: Vec<_> = doc.descendants().filter(|n| n.has_tag_name("polyline")).collect();
        let metrics: Vec<&str> = polylines.iter().map(|p| p.attribute("data-metric").unwrap()).collect();
        assert_eq!(metrics, ["Precision", "Recall", "F-measure", "Fallout"]);
        for p in &polylines {
            assert_eq!(p.attribute("points").unwrap().split(' ').count(), result.rows.len());
        }
        let legend = doc.descendants().find(|n| n.attribute("class") == Some("legend")).unwrap();
        let entries: Vec<&str> = legend.children().filter(|n| n.has_tag_name("text")).map(|n| n.text().unwrap()).collect();
        assert_eq!(entries, ["Precision", "Recall", "F-measure", "Fallout"]);
        assert!(doc.descendants().any(|n| n.attribute("class") == Some("best-f")));
        // self-contained
        assert!(!text.contains("href"));
        assert!(!text.contains("url("));
    }
}

#[test]
fn summary_of_fixture() {
    let summary = Summary::from_results(&fixture_sweeps()).unwrap();
    assert_eq!(summary.best_f.0, MeasureKind::CollectionFreq);
    assert_eq!(summary.best_f.1.threshold, 26);
    assert_eq!(summary.per_measure.len(), 4);
}

#[test]
fn parallel_matches_sequential() {
    for seed in 0..40 {
        let corpus = common::random_small_corpus(seed);
        let config = FilterConfig::default();
        let Ok(ctx) = SweepContext::new(&corpus, &config) else {
            continue;
        };
        let sequential = run_all_sweeps(&corpus, &config, 0.2).unwrap();
        assert_eq!(sweep_all_parallel(&ctx, 0.2).unwrap(), sequential);
        assert_eq!(sweep_parallel(&ctx, MeasureKind::TfIdf, 0.2).unwrap(), sequential[2]);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn csv_round_trip_to_four_decimals(seed in 0u64..10_000) {
        let corpus = common::random_small_corpus(seed);
        let Ok(ctx) = SweepContext::new(&corpus, &FilterConfig::default()) else {
            return Ok(());
        };
        for kind in MeasureKind::ALL {
            let result = ctx.sweep(kind, 0.1).unwrap();
            let mut buf = Vec::new();
            write_csv(&result, &mut buf).unwrap();
            let parsed = read_csv(&buf[..]).unwrap();
            prop_assert_eq!(parsed.len(), result.rows.len());
            for (a, b) in parsed.iter().zip(&result.rows) {
                prop_assert_eq!((a.kind, a.threshold), (b.kind, b.threshold));
                prop_assert_eq!(
                    (a.extracted_size, a.true_positives, a.universe_size, a.gold_size),
                    (b.extracted_size, b.true_positives, b.universe_size, b.gold_size)
                );
                prop_assert_eq!(a.precision_by_convention, b.precision_by_convention);
                for (x, y) in [(a.precision, b.precision), (a.recall, b.recall), (a.f_measure, b.f_measure), (a.fallout, b.fallout)] {
                    prop_assert!((x - y).abs() <= 0.00005 + 1e-12);
                }
            }
        }
    }

    #[test]
    fn corpus_json_round_trip(seed in 0u64..10_000) {
        let corpus = common::random_small_corpus(seed);
        let mut buf = Vec::new();
        msglex::corpus_io::write_corpus(&corpus, &mut buf).unwrap();
        let loaded = msglex::corpus_io::parse_corpus(&buf[..]).unwrap();
        prop_assert_eq!(loaded.corpus, corpus);
    }
}
