//! Statement normalization, tokenization, stopword removal, lemmatization,
//! stemming and corpus word frequencies.

mod lemma;
mod porter;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dataset::Corpus;
use crate::error::{Error, Result};

pub use lemma::lemmatize;
pub use porter::stem;

/// Shipped English stopword list (179 entries).
pub const DEFAULT_STOPWORDS: &str = include_str!("../../data/stopwords_en.txt");
/// Shipped contraction table, `from<TAB>to` per line.
pub const DEFAULT_CONTRACTIONS: &str = include_str!("../../data/contractions_en.tsv");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrepConfig {
    pub stopwords: BTreeSet<String>,
    pub contractions: BTreeMap<String, String>,
    pub do_lemmatize: bool,
    pub do_stem: bool,
    pub min_token_len: usize,
}

impl Default for PrepConfig {
    fn default() -> Self {
        PrepConfig {
            stopwords: parse_stopwords(DEFAULT_STOPWORDS, "stopwords_en.txt").expect("shipped stopword list"),
            contractions: parse_contractions(DEFAULT_CONTRACTIONS, "contractions_en.tsv")
                .expect("shipped contraction table"),
            do_lemmatize: true,
            do_stem: true,
            min_token_len: 2,
        }
    }
}

impl PrepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.min_token_len == 0 {
            return Err(Error::InvalidConfig("min_token_len must be positive".into()));
        }
        for (from, to) in &self.contractions {
            check_contraction(from, to).map_err(|m| Error::InvalidConfig(format!("contraction {from:?}: {m}")))?;
        }
        Ok(())
    }
}

/// Parses a one-word-per-line stopword list. Blank lines and `#` comments
/// are skipped; entries are lowercased.
pub fn parse_stopwords(text: &str, source_name: &str) -> Result<BTreeSet<String>> {
    let mut out = BTreeSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line.chars().any(char::is_whitespace) {
            return Err(Error::WordList {
                source_name: source_name.to_string(),
                line: i + 1,
                message: format!("stopword {line:?} contains whitespace"),
            });
        }
        out.insert(line.to_lowercase());
    }
    Ok(out)
}

fn check_contraction(from: &str, to: &str) -> std::result::Result<(), &'static str> {
    if !from.contains('\'') {
        return Err("contracted form must contain an apostrophe");
    }
    if !from.bytes().all(|b| b.is_ascii_lowercase() || b == b'\'') {
        return Err("contracted form must be lowercase ASCII letters and apostrophes");
    }
    if to.trim().is_empty() || !to.bytes().all(|b| b.is_ascii_lowercase() || b == b' ') {
        return Err("expansion must be non-empty lowercase ASCII letters and spaces");
    }
    Ok(())
}

/// Parses a `from<TAB>to` contraction table.
pub fn parse_contractions(text: &str, source_name: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| Error::WordList {
            source_name: source_name.to_string(),
            line: i + 1,
            message,
        };
        let (from, to) = line
            .split_once('\t')
            .ok_or_else(|| err("expected `from<TAB>to`".to_string()))?;
        let (from, to) = (from.trim(), to.trim());
        check_contraction(from, to).map_err(|m| err(m.to_string()))?;
        out.insert(from.to_string(), to.to_string());
    }
    Ok(out)
}

pub fn load_stopwords(path: &Path) -> Result<BTreeSet<String>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_stopwords(&text, &path.display().to_string())
}

pub fn load_contractions(path: &Path) -> Result<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_contractions(&text, &path.display().to_string())
}

fn is_apostrophe(c: char) -> bool {
    matches!(c, '\'' | '\u{2018}' | '\u{2019}' | '\u{02bc}' | '`' | '\u{00b4}')
}

/// Single-letter ASCII equivalent of a lowercase non-ASCII letter.
fn transliterate(c: char) -> Option<char> {
    Some(match c {
        'à' | 'á' | 'â' | 'ã' | 'ä' | 'å' | 'ā' | 'ă' | 'ą' => 'a',
        'ç' | 'ć' | 'ĉ' | 'ċ' | 'č' => 'c',
        'ď' | 'đ' => 'd',
        'è' | 'é' | 'ê' | 'ë' | 'ē' | 'ĕ' | 'ė' | 'ę' | 'ě' => 'e',
        'ĝ' | 'ğ' | 'ġ' | 'ģ' => 'g',
        'ĥ' | 'ħ' => 'h',
        'ì' | 'í' | 'î' | 'ï' | 'ĩ' | 'ī' | 'ĭ' | 'į' | 'ı' => 'i',
        'ĵ' => 'j',
        'ķ' => 'k',
        'ĺ' | 'ļ' | 'ľ' | 'ŀ' | 'ł' => 'l',
        'ñ' | 'ń' | 'ņ' | 'ň' => 'n',
        'ò' | 'ó' | 'ô' | 'õ' | 'ö' | 'ø' | 'ō' | 'ŏ' | 'ő' => 'o',
        'ŕ' | 'ŗ' | 'ř' => 'r',
        'ś' | 'ŝ' | 'ş' | 'š' => 's',
        'ţ' | 'ť' | 'ŧ' => 't',
        'ù' | 'ú' | 'û' | 'ü' | 'ũ' | 'ū' | 'ŭ' | 'ů' | 'ű' | 'ų' => 'u',
        'ŵ' => 'w',
        'ý' | 'ÿ' | 'ŷ' => 'y',
        'ź' | 'ż' | 'ž' => 'z',
        _ => return None,
    })
}

/// Lowercases, folds apostrophes and transliterates. Letters without a
/// single-letter ASCII mapping are dropped; other non-ASCII characters
/// become spaces.
fn fold_chars(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars().flat_map(char::to_lowercase) {
        if c.is_ascii() {
            out.push(c);
        } else if is_apostrophe(c) {
            out.push('\'');
        } else if let Some(a) = transliterate(c) {
            out.push(a);
        } else if !c.is_alphabetic() {
            out.push(' ');
        }
    }
    out
}

fn expand_word(word: &str, contractions: &BTreeMap<String, String>, out: &mut String) {
    let core = word.trim_matches('\'');
    if let Some(expansion) = contractions.get(core) {
        out.push_str(expansion);
    } else if let Some(base) = core.strip_suffix("'s") {
        out.push_str(base);
    } else {
        out.push_str(core);
    }
}

/// Lowercases, expands contractions, strips possessive `'s`, replaces every
/// non-letter with a space and collapses whitespace.
pub fn normalize(text: &str, cfg: &PrepConfig) -> String {
    let folded = fold_chars(text);

    let mut expanded = String::with_capacity(folded.len() + 16);
    let mut word = String::new();
    for c in folded.chars() {
        if c.is_ascii_lowercase() || c == '\'' {
            word.push(c);
        } else {
            if !word.is_empty() {
                expand_word(&word, &cfg.contractions, &mut expanded);
                word.clear();
            }
            expanded.push(c);
        }
    }
    if !word.is_empty() {
        expand_word(&word, &cfg.contractions, &mut expanded);
    }

    let mut out = String::with_capacity(expanded.len());
    for piece in expanded
        .split(|c: char| !c.is_ascii_lowercase())
        .filter(|p| !p.is_empty())
    {
        if !out.is_empty() {
            out.push(' ');
        }
        out.push_str(piece);
    }
    out
}

/// Splits normalized text on spaces and drops tokens shorter than
/// `cfg.min_token_len`.
pub fn tokenize(normalized: &str, cfg: &PrepConfig) -> Vec<String> {
    normalized
        .split(' ')
        .filter(|t| !t.is_empty() && t.len() >= cfg.min_token_len)
        .map(str::to_string)
        .collect()
}

pub fn remove_stopwords(tokens: Vec<String>, cfg: &PrepConfig) -> Vec<String> {
    tokens.into_iter().filter(|t| !cfg.stopwords.contains(t)).collect()
}

/// Preprocessed statement: lowercase ASCII tokens, stopword-free, each at
/// least `min_token_len` long.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TokenizedDoc {
    pub tokens: Vec<String>,
}

impl TokenizedDoc {
    pub fn new(tokens: Vec<String>) -> Self {
        TokenizedDoc { tokens }
    }

    pub fn from_strs(tokens: &[&str]) -> Self {
        TokenizedDoc {
            tokens: tokens.iter().map(|t| t.to_string()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn join(&self) -> String {
        self.tokens.join(" ")
    }
}

fn reduce(token: &str, cfg: &PrepConfig) -> String {
    let lemma = if cfg.do_lemmatize {
        lemmatize(token)
    } else {
        token.to_string()
    };
    if cfg.do_stem {
        stem(&lemma)
    } else {
        lemma
    }
}

/// normalize -> tokenize -> remove stopwords -> lemmatize -> stem.
///
/// Reduced forms that land in the stopword list or fall below the minimum
/// length are dropped, so the returned document always satisfies the
/// [`TokenizedDoc`] invariants.
pub fn preprocess(text: &str, cfg: &PrepConfig) -> TokenizedDoc {
    let tokens = remove_stopwords(tokenize(&normalize(text, cfg), cfg), cfg);
    TokenizedDoc {
        tokens: tokens
            .iter()
            .map(|t| reduce(t, cfg))
            .filter(|t| t.len() >= cfg.min_token_len && !cfg.stopwords.contains(t))
            .collect(),
    }
}

pub fn preprocess_corpus(corpus: &Corpus, cfg: &PrepConfig) -> Vec<TokenizedDoc> {
    corpus
        .statements()
        .par_iter()
        .map(|s| preprocess(&s.text, cfg))
        .collect()
}

/// Token counts sorted by count descending, then token ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrequencyTable {
    pub entries: Vec<(String, usize)>,
}

impl FrequencyTable {
    pub fn from_docs<'a>(docs: impl IntoIterator<Item = &'a TokenizedDoc>) -> Self {
        let mut counts: HashMap<&str, usize> = HashMap::new();
        for d in docs {
            for t in &d.tokens {
                *counts.entry(t.as_str()).or_default() += 1;
            }
        }
        let mut entries: Vec<(String, usize)> = counts.into_iter().map(|(t, c)| (t.to_string(), c)).collect();
        entries.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        FrequencyTable { entries }
    }

    pub fn total(&self) -> usize {
        self.entries.iter().map(|(_, c)| c).sum()
    }

    pub fn top(&self) -> Option<&str> {
        self.entries.first().map(|(t, _)| t.as_str())
    }

    pub fn rank_of(&self, token: &str) -> Option<usize> {
        self.entries.iter().position(|(t, _)| t == token)
    }

    /// Writes `token,count` CSV.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "token,count")?;
        for (t, c) in &self.entries {
            writeln!(w, "{t},{c}")?;
        }
        Ok(())
    }
}

pub fn word_frequencies(corpus: &Corpus, cfg: &PrepConfig) -> FrequencyTable {
    FrequencyTable::from_docs(&preprocess_corpus(corpus, cfg))
}
