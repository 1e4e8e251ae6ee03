#![allow(dead_code)]

use std::path::PathBuf;

use msglex::corpus_io::load_corpus;
use msglex_core::{Corpus, Document, Sentence, Token};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Zipf};

pub fn fixture_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/fixture.json")
}

pub fn fixture() -> Corpus {
    load_corpus(&fixture_path()).unwrap().corpus
}

const FUNCTION_POS: [&str; 3] = ["DET", "ADP", "ADJ"];

/// Up to 10 documents over a 100-word vocabulary, random POS tags,
/// lemmas, letter case and annotation flags.
pub fn random_small_corpus(seed: u64) -> Corpus {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vocab_size = rng.random_range(1..=100);
    let n_docs = rng.random_range(1..=10);
    let documents = (0..n_docs)
        .map(|d| {
            let n_sentences = rng.random_range(1..=4);
            let sentences = (0..n_sentences)
                .map(|s| {
                    let n_tokens = rng.random_range(0..=12);
                    let tokens = (0..n_tokens)
                        .map(|_| {
                            let w = rng.random_range(0..vocab_size);
                            let surface = if rng.random_bool(0.2) { format!("W{w:02}") } else { format!("w{w:02}") };
                            let lemma = rng.random_bool(0.5).then(|| format!("w{w:02}"));
                            let pos = match rng.random_range(0..5) {
                                0 | 1 => "NOUN",
                                2 | 3 => "VERB",
                                _ => FUNCTION_POS[rng.random_range(0..3)],
                            };
                            Token::new(surface, lemma.as_deref(), pos)
                        })
                        .collect();
                    let annotated = rng.random_bool(0.4);
                    Sentence {
                        id: format!("s{s}"),
                        annotated,
                        message_type: annotated.then(|| "m".to_string()),
                        tokens,
                    }
                })
                .collect();
            Document::new(format!("d{d}"), sentences)
        })
        .collect();
    Corpus::new(format!("random-{seed}"), documents).unwrap().0
}

/// A synthetic corpus shaped like a small newswire collection: 163
/// documents, about 72k tokens, several thousand distinct content words
/// drawn from a Zipf distribution.
pub fn paper_scale_corpus(seed: u64) -> Corpus {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let zipf = Zipf::new(11_000.0, 1.0).unwrap();
    let tokens_per_doc = 441;
    let documents = (0..163)
        .map(|d| {
            let mut sentences = Vec::new();
            let mut remaining = tokens_per_doc;
            while remaining > 0 {
                let len = rng.random_range(12..=34).min(remaining);
                remaining -= len;
                let tokens = (0..len)
                    .map(|_| {
                        if rng.random_bool(0.3) {
                            Token::new("the", None, FUNCTION_POS[rng.random_range(0..3)])
                        } else {
                            let rank = zipf.sample(&mut rng) as u32;
                            let pos = if rank.is_multiple_of(3) { "VERB" } else { "NOUN" };
                            Token::new(format!("word{rank}"), None, pos)
                        }
                    })
                    .collect();
                let annotated = rng.random_bool(0.33);
                sentences.push(Sentence {
                    id: format!("s{}", sentences.len()),
                    annotated,
                    message_type: annotated.then(|| "msg".to_string()),
                    tokens,
                });
            }
            Document::new(format!("doc{d:03}"), sentences)
        })
        .collect();
    Corpus::new("paper-scale", documents).unwrap().0
}
