//! Brute-force reference for the extraction measures.
//!
//! Recomputes each measure straight from the token stream: no index, no
//! sorting, no shared ranking code. A word is kept by a top-`n%` rule when
//! fewer than `k` words outrank it, with `k` found by counting up. Only
//! [`normalize`] is shared with the fast path.
//!
//! Everything here is quadratic or worse. Keep inputs small (tens of
//! documents, a few hundred distinct words).

use alloc::string::String;
use alloc::vec::Vec;

use crate::corpus::Corpus;
use crate::lexicon::{normalize, FilterConfig, Lexicon};
use crate::measures::{MeasureKind, MeasureSpec};

fn distinct(words: &[String]) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for w in words {
        if !out.contains(w) {
            out.push(w.clone());
        }
    }
    out
}

fn occurrences(stream: &[String], word: &str) -> usize {
    stream.iter().filter(|w| w.as_str() == word).count()
}

fn smallest_k(percent: u32, len: usize) -> usize {
    let mut k = 0;
    while 100 * k < percent as usize * len {
        k += 1;
    }
    k
}

/// Words whose count of strictly better-ranked rivals is below `k`.
fn keep_top(scored: &[(String, f64)], percent: u32) -> Vec<String> {
    let k = smallest_k(percent, scored.len());
    scored
        .iter()
        .filter(|(word, score)| {
            let ahead = scored
                .iter()
                .filter(|(other, s)| s > score || (s == score && other < word))
                .count();
            ahead < k
        })
        .map(|(w, _)| w.clone())
        .collect()
}

/// Recomputes the extraction described by `spec` from raw tokens.
pub fn oracle_extract(corpus: &Corpus, config: &FilterConfig, spec: MeasureSpec) -> Lexicon {
    let streams: Vec<Vec<String>> = corpus
        .documents()
        .iter()
        .map(|doc| {
            let mut stream = Vec::new();
            for sentence in &doc.sentences {
                for token in &sentence.tokens {
                    if let Some(key) = normalize(token, config) {
                        stream.push(key);
                    }
                }
            }
            stream
        })
        .collect();
    let all: Vec<String> = streams.iter().flatten().cloned().collect();
    let n = streams.len();
    let docs_containing = |word: &str| streams.iter().filter(|s| occurrences(s, word) > 0).count();

    let mut result = Lexicon::new();
    match spec.kind {
        MeasureKind::CollectionFreq => {
            let scored: Vec<(String, f64)> = distinct(&all)
                .into_iter()
                .map(|w| {
                    let c = occurrences(&all, &w) as f64;
                    (w, c)
                })
                .collect();
            result.extend(keep_top(&scored, spec.threshold));
        }
        MeasureKind::DocumentFreq => {
            for stream in &streams {
                let scored: Vec<(String, f64)> = distinct(stream)
                    .into_iter()
                    .map(|w| {
                        let c = occurrences(stream, &w) as f64;
                        (w, c)
                    })
                    .collect();
                result.extend(keep_top(&scored, spec.threshold));
            }
        }
        MeasureKind::TfIdf => {
            for stream in &streams {
                let scored: Vec<(String, f64)> = distinct(stream)
                    .into_iter()
                    .map(|w| {
                        let tf = occurrences(stream, &w) as f64;
                        let df = docs_containing(&w) as f64;
                        let score = tf * libm::log((n as f64) / df);
                        (w, score)
                    })
                    .collect();
                result.extend(keep_top(&scored, spec.threshold));
            }
        }
        MeasureKind::InterdocFreq => {
            for w in distinct(&all) {
                if docs_containing(&w) >= spec.threshold as usize {
                    result.insert(w);
                }
            }
        }
    }
    result
}
