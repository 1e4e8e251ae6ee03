//! One-word-per-line files: stopword lists in, lexicons out.

use std::io::{self, BufRead, Write};

use msglex_core::Lexicon;

/// Reads a stopword list. `#` starts a comment line; blank lines are
/// skipped; surrounding whitespace is trimmed.
pub fn read_stopwords<R: BufRead>(input: R) -> io::Result<Vec<String>> {
    let mut words = Vec::new();
    for line in input.lines() {
        let line = line?;
        let word = line.trim();
        if word.is_empty() || word.starts_with('#') {
            continue;
        }
        words.push(word.to_string());
    }
    Ok(words)
}

/// Writes the lexicon sorted, one word per line, LF-terminated.
pub fn write_lexicon<W: Write>(lexicon: &Lexicon, mut out: W) -> io::Result<()> {
    for word in lexicon {
        writeln!(out, "{word}")?;
    }
    out.flush()
}
