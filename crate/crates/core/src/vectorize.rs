//! Vocabulary fitting and bag-of-words / TF-IDF feature extraction.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::dataset::Label;
use crate::error::{Error, Result};
use crate::textprep::TokenizedDoc;

/// Content hash of a vocabulary's ordered token list.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint(pub [u8; 16]);

impl Fingerprint {
    pub fn of_tokens<S: AsRef<str>>(tokens: &[S]) -> Self {
        let mut h = Sha256::new();
        h.update((tokens.len() as u64).to_le_bytes());
        for t in tokens {
            h.update(t.as_ref().as_bytes());
            h.update([0u8]);
        }
        let digest = h.finalize();
        let mut out = [0u8; 16];
        out.copy_from_slice(&digest[..16]);
        Fingerprint(out)
    }

    pub fn to_hex(&self) -> String {
        hex::encode(self.0)
    }

    pub fn from_hex(s: &str) -> Option<Self> {
        let bytes = hex::decode(s).ok()?;
        Some(Fingerprint(bytes.try_into().ok()?))
    }
}

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl fmt::Debug for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fingerprint({})", self.to_hex())
    }
}

impl Serialize for Fingerprint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for Fingerprint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Fingerprint::from_hex(&s).ok_or_else(|| serde::de::Error::custom("fingerprint must be 32 hex digits"))
    }
}

/// Token to column mapping; columns follow lexicographic token order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vocabulary {
    tokens: Vec<String>,
    index_of: HashMap<String, usize>,
    fingerprint: Fingerprint,
}

impl Vocabulary {
    /// Builds a vocabulary from arbitrary tokens; duplicates are merged and
    /// the result sorted.
    pub fn from_tokens<I, S>(tokens: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let set: BTreeSet<String> = tokens.into_iter().map(Into::into).collect();
        let tokens: Vec<String> = set.into_iter().collect();
        let index_of = tokens.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        let fingerprint = Fingerprint::of_tokens(&tokens);
        Vocabulary {
            tokens,
            index_of,
            fingerprint,
        }
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn index_of(&self, token: &str) -> Option<usize> {
        self.index_of.get(token).copied()
    }

    pub fn fingerprint(&self) -> Fingerprint {
        self.fingerprint
    }
}

impl Serialize for Vocabulary {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.tokens.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Vocabulary {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let tokens = Vec::<String>::deserialize(d)?;
        if tokens.windows(2).any(|w| w[0] >= w[1]) {
            return Err(serde::de::Error::custom("vocabulary tokens must be strictly ascending"));
        }
        Ok(Vocabulary::from_tokens(tokens))
    }
}

/// Distinct tokens across `docs`, lexicographically indexed.
pub fn build_vocabulary(docs: &[TokenizedDoc]) -> Result<Vocabulary> {
    if docs.iter().all(TokenizedDoc::is_empty) {
        return Err(Error::EmptyDocuments);
    }
    Ok(Vocabulary::from_tokens(
        docs.iter().flat_map(|d| d.tokens.iter().map(String::as_str)),
    ))
}

/// Sparse row: strictly increasing column indices, no explicit zeros.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector {
    dim: usize,
    entries: Vec<(usize, f64)>,
    fingerprint: Fingerprint,
}

impl FeatureVector {
    /// Builds a vector from unordered `(column, value)` pairs. Repeated
    /// columns are summed and zeros dropped.
    pub fn from_entries(dim: usize, mut entries: Vec<(usize, f64)>, fingerprint: Fingerprint) -> Result<Self> {
        if let Some(&(c, _)) = entries.iter().find(|(c, _)| *c >= dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: c + 1,
            });
        }
        entries.sort_by_key(|e| e.0);
        let mut merged: Vec<(usize, f64)> = Vec::with_capacity(entries.len());
        for (c, v) in entries {
            match merged.last_mut() {
                Some(last) if last.0 == c => last.1 += v,
                _ => merged.push((c, v)),
            }
        }
        merged.retain(|e| e.1 != 0.0);
        Ok(FeatureVector {
            dim,
            entries: merged,
            fingerprint,
        })
    }

    pub fn from_dense(values: &[f64], fingerprint: Fingerprint) -> Self {
        FeatureVector {
            dim: values.len(),
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| **v != 0.0)
                .map(|(i, v)| (i, *v))
                .collect(),
            fingerprint,
        }
    }

    pub fn zeros(dim: usize, fingerprint: Fingerprint) -> Self {
        FeatureVector {
            dim,
            entries: Vec::new(),
            fingerprint,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[(usize, f64)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn fingerprint(&self) -> Fingerprint {
        self.fingerprint
    }

    pub fn get(&self, column: usize) -> f64 {
        match self.entries.binary_search_by_key(&column, |e| e.0) {
            Ok(i) => self.entries[i].1,
            Err(_) => 0.0,
        }
    }

    pub fn dot(&self, dense: &[f64]) -> f64 {
        self.entries.iter().map(|&(c, v)| v * dense[c]).sum()
    }

    pub fn norm(&self) -> f64 {
        self.entries.iter().map(|e| e.1 * e.1).sum::<f64>().sqrt()
    }

    pub fn to_dense(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        self.write_dense(&mut out);
        out
    }

    /// Writes the vector into `out` (length `dim`), overwriting everything.
    pub fn write_dense(&self, out: &mut [f64]) {
        out.fill(0.0);
        for &(c, v) in &self.entries {
            out[c] = v;
        }
    }

    pub fn sum(&self, other: &FeatureVector) -> FeatureVector {
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        FeatureVector::from_entries(self.dim, entries, self.fingerprint).expect("same dimension")
    }
}

pub fn bow_transform(doc: &TokenizedDoc, vocab: &Vocabulary) -> FeatureVector {
    let entries = doc
        .tokens
        .iter()
        .filter_map(|t| vocab.index_of(t))
        .map(|c| (c, 1.0))
        .collect();
    FeatureVector::from_entries(vocab.len(), entries, vocab.fingerprint()).expect("indices come from the vocabulary")
}

/// Smoothed inverse document frequencies of a fitted vocabulary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdfModel {
    pub n_docs: usize,
    pub doc_freq: Vec<usize>,
    pub idf: Vec<f64>,
}

pub fn idf_value(n_docs: usize, doc_freq: usize) -> f64 {
    ((1.0 + n_docs as f64) / (1.0 + doc_freq as f64)).ln() + 1.0
}

pub fn tfidf_fit(docs: &[TokenizedDoc], vocab: &Vocabulary) -> Result<IdfModel> {
    if docs.is_empty() {
        return Err(Error::EmptyDocuments);
    }
    let mut doc_freq = vec![0usize; vocab.len()];
    let mut seen = vec![usize::MAX; vocab.len()];
    for (d, doc) in docs.iter().enumerate() {
        for c in doc.tokens.iter().filter_map(|t| vocab.index_of(t)) {
            if seen[c] != d {
                seen[c] = d;
                doc_freq[c] += 1;
            }
        }
    }
    let idf = doc_freq.iter().map(|&df| idf_value(docs.len(), df)).collect();
    Ok(IdfModel {
        n_docs: docs.len(),
        doc_freq,
        idf,
    })
}

pub fn tfidf_transform(doc: &TokenizedDoc, vocab: &Vocabulary, idf: &IdfModel) -> FeatureVector {
    let counts = bow_transform(doc, vocab);
    let mut entries: Vec<(usize, f64)> = counts.entries.iter().map(|&(c, n)| (c, n * idf.idf[c])).collect();
    let norm = entries.iter().map(|e| e.1 * e.1).sum::<f64>().sqrt();
    if norm > 0.0 {
        for e in &mut entries {
            e.1 /= norm;
        }
    }
    FeatureVector {
        dim: counts.dim,
        entries,
        fingerprint: counts.fingerprint,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FeatureKind {
    #[serde(rename = "BoW")]
    Bow,
    #[serde(rename = "TF-IDF")]
    TfIdf,
}

impl FeatureKind {
    pub const ALL: [FeatureKind; 2] = [FeatureKind::Bow, FeatureKind::TfIdf];

    pub fn as_str(self) -> &'static str {
        match self {
            FeatureKind::Bow => "BoW",
            FeatureKind::TfIdf => "TF-IDF",
        }
    }
}

impl fmt::Display for FeatureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for FeatureKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim().to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "bow" => Ok(FeatureKind::Bow),
            "tfidf" => Ok(FeatureKind::TfIdf),
            _ => Err(format!("unknown feature kind {s:?} (expected bow or tfidf)")),
        }
    }
}

/// Labeled rows sharing one vocabulary.
#[derive(Debug, Clone)]
pub struct FeatureMatrix {
    pub rows: Vec<FeatureVector>,
    pub labels: Vec<Label>,
    pub vocabulary: Arc<Vocabulary>,
    pub kind: FeatureKind,
}

impl FeatureMatrix {
    pub fn new(
        rows: Vec<FeatureVector>,
        labels: Vec<Label>,
        vocabulary: Arc<Vocabulary>,
        kind: FeatureKind,
    ) -> Result<Self> {
        if rows.len() != labels.len() {
            return Err(Error::LengthMismatch {
                truth: labels.len(),
                predicted: rows.len(),
            });
        }
        for r in &rows {
            if r.dim != vocabulary.len() {
                return Err(Error::DimensionMismatch {
                    expected: vocabulary.len(),
                    found: r.dim,
                });
            }
            if r.fingerprint != vocabulary.fingerprint() {
                return Err(Error::FingerprintMismatch {
                    expected: vocabulary.fingerprint(),
                    found: r.fingerprint,
                });
            }
        }
        Ok(FeatureMatrix {
            rows,
            labels,
            vocabulary,
            kind,
        })
    }

    /// Matrix over a synthetic vocabulary `f0000..`, mainly for tests and
    /// numeric experiments that bypass text.
    pub fn from_dense(rows: &[Vec<f64>], labels: Vec<Label>) -> Result<Self> {
        let dim = rows.first().map_or(0, Vec::len);
        let vocabulary = Arc::new(synthetic_vocabulary(dim));
        let fp = vocabulary.fingerprint();
        let mut out = Vec::with_capacity(rows.len());
        for r in rows {
            if r.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: r.len(),
                });
            }
            out.push(FeatureVector::from_dense(r, fp));
        }
        FeatureMatrix::new(out, labels, vocabulary, FeatureKind::Bow)
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.vocabulary.len()
    }

    pub fn fingerprint(&self) -> Fingerprint {
        self.vocabulary.fingerprint()
    }

    pub fn select(&self, indices: &[usize]) -> FeatureMatrix {
        FeatureMatrix {
            rows: indices.iter().map(|&i| self.rows[i].clone()).collect(),
            labels: indices.iter().map(|&i| self.labels[i]).collect(),
            vocabulary: Arc::clone(&self.vocabulary),
            kind: self.kind,
        }
    }
}

pub fn synthetic_vocabulary(dim: usize) -> Vocabulary {
    Vocabulary::from_tokens((0..dim).map(|i| format!("f{i:06}")))
}

const VECTORIZER_FORMAT: u32 = 1;

/// A fitted feature extractor: vocabulary plus, for TF-IDF, the idf model.
#[derive(Debug, Clone)]
pub struct Vectorizer {
    pub kind: FeatureKind,
    pub vocabulary: Arc<Vocabulary>,
    pub idf: Option<IdfModel>,
}

#[derive(Serialize, Deserialize)]
struct VectorizerDoc {
    format_version: u32,
    kind: FeatureKind,
    fingerprint: Fingerprint,
    tokens: Vocabulary,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    idf: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    doc_freq: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n_docs: Option<usize>,
}

impl Vectorizer {
    /// Fits on training documents only.
    pub fn fit(docs: &[TokenizedDoc], kind: FeatureKind) -> Result<Self> {
        let vocabulary = Arc::new(build_vocabulary(docs)?);
        let idf = match kind {
            FeatureKind::Bow => None,
            FeatureKind::TfIdf => Some(tfidf_fit(docs, &vocabulary)?),
        };
        Ok(Vectorizer { kind, vocabulary, idf })
    }

    pub fn transform(&self, doc: &TokenizedDoc) -> FeatureVector {
        match &self.idf {
            Some(idf) => tfidf_transform(doc, &self.vocabulary, idf),
            None => bow_transform(doc, &self.vocabulary),
        }
    }

    pub fn transform_all(&self, docs: &[TokenizedDoc], labels: &[Label]) -> Result<FeatureMatrix> {
        FeatureMatrix::new(
            docs.iter().map(|d| self.transform(d)).collect(),
            labels.to_vec(),
            Arc::clone(&self.vocabulary),
            self.kind,
        )
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_doc())?)
    }

    pub fn to_value(&self) -> Result<serde_json::Value> {
        Ok(serde_json::to_value(self.to_doc())?)
    }

    fn to_doc(&self) -> VectorizerDoc {
        VectorizerDoc {
            format_version: VECTORIZER_FORMAT,
            kind: self.kind,
            fingerprint: self.vocabulary.fingerprint(),
            tokens: (*self.vocabulary).clone(),
            idf: self.idf.as_ref().map(|m| m.idf.clone()),
            doc_freq: self.idf.as_ref().map(|m| m.doc_freq.clone()),
            n_docs: self.idf.as_ref().map(|m| m.n_docs),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_value(serde_json::from_str(text)?)
    }

    pub fn from_value(value: serde_json::Value) -> Result<Self> {
        let doc: VectorizerDoc = serde_json::from_value(value)?;
        if doc.format_version != VECTORIZER_FORMAT {
            return Err(Error::FormatVersion {
                what: "vectorizer",
                found: doc.format_version,
                expected: VECTORIZER_FORMAT,
            });
        }
        let vocabulary = Arc::new(doc.tokens);
        if vocabulary.fingerprint() != doc.fingerprint {
            return Err(Error::FingerprintMismatch {
                expected: doc.fingerprint,
                found: vocabulary.fingerprint(),
            });
        }
        let v = vocabulary.len();
        let idf = match (doc.kind, doc.idf, doc.doc_freq, doc.n_docs) {
            (FeatureKind::Bow, _, _, _) => None,
            (FeatureKind::TfIdf, Some(idf), Some(doc_freq), Some(n_docs))
                if idf.len() == v && doc_freq.len() == v && idf.iter().all(|x| x.is_finite() && *x > 0.0) =>
            {
                Some(IdfModel { n_docs, doc_freq, idf })
            }
            (FeatureKind::TfIdf, ..) => {
                return Err(Error::InvalidConfig(
                    "TF-IDF vectorizer needs idf, doc_freq and n_docs aligned with the vocabulary".into(),
                ))
            }
        };
        Ok(Vectorizer {
            kind: doc.kind,
            vocabulary,
            idf,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn doc(t: &[&str]) -> TokenizedDoc {
        TokenizedDoc::from_strs(t)
    }

    #[test]
    fn vocabulary_examples() {
        let v = build_vocabulary(&[doc(&["play", "brain"]), doc(&["play"])]).unwrap();
        assert_eq!(v.tokens(), ["brain", "play"]);
        assert_eq!(v.index_of("brain"), Some(0));
        assert_eq!(v.index_of("play"), Some(1));
        let v = build_vocabulary(&[doc(&["a", "a", "a"])]).unwrap();
        assert_eq!(v.tokens(), ["a"]);
        assert!(matches!(
            build_vocabulary(&[doc(&[]), doc(&[])]),
            Err(Error::EmptyDocuments)
        ));
        assert!(matches!(build_vocabulary(&[]), Err(Error::EmptyDocuments)));
    }

    #[test]
    fn vocabulary_is_order_independent() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let words = ["kid", "brain", "play", "sleep", "talk", "read", "cry", "walk"];
        let mut docs: Vec<TokenizedDoc> = (0..100)
            .map(|i| {
                let n = 1 + i % 5;
                TokenizedDoc::new((0..n).map(|_| words.choose(&mut rng).unwrap().to_string()).collect())
            })
            .collect();
        let a = build_vocabulary(&docs).unwrap();
        docs.shuffle(&mut rng);
        let b = build_vocabulary(&docs).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.fingerprint(), b.fingerprint());
    }

    #[test]
    fn bow_examples() {
        let v = Vocabulary::from_tokens(["brain", "play"]);
        let x = bow_transform(&doc(&["play", "play", "brain"]), &v);
        assert_eq!(x.entries(), &[(0, 1.0), (1, 2.0)]);
        assert_eq!(bow_transform(&doc(&[]), &v).nnz(), 0);
        let oov = bow_transform(&doc(&["zebra", "apple"]), &v);
        assert_eq!(oov.nnz(), 0);
        assert_eq!(oov.dim(), 2);
    }

    #[test]
    fn idf_examples() {
        let v = Vocabulary::from_tokens(["brain", "play"]);
        let m = tfidf_fit(&[doc(&["play"]), doc(&["play", "brain"])], &v).unwrap();
        assert_eq!(m.idf[1], 1.0);
        assert!((m.idf[0] - 1.405465).abs() < 1e-6);
        assert_eq!(m.doc_freq, vec![1, 2]);
        let min = m.idf.iter().cloned().fold(f64::INFINITY, f64::min);
        assert_eq!(min, m.idf[1]);
    }

    #[test]
    fn tfidf_examples() {
        let v = Vocabulary::from_tokens(["brain", "play"]);
        let m = tfidf_fit(&[doc(&["play"]), doc(&["play", "brain"])], &v).unwrap();
        let single = tfidf_transform(&doc(&["play"]), &v, &m);
        assert_eq!(single.entries(), &[(1, 1.0)]);
        let x = tfidf_transform(&doc(&["play", "play", "brain"]), &v, &m);
        assert!((x.get(1) - 0.81818).abs() < 1e-5);
        assert!((x.get(0) - 0.57496).abs() < 1e-5);
        assert_eq!(tfidf_transform(&doc(&[]), &v, &m).norm(), 0.0);
    }

    #[test]
    fn idf_decreases_with_doc_freq() {
        for n in 1..50 {
            for df in 0..n {
                assert!(idf_value(n, df) > idf_value(n, df + 1));
                assert!(idf_value(n, df + 1) > 0.0);
            }
        }
    }

    #[test]
    fn vectorizer_round_trip() {
        let docs = [doc(&["play", "brain"]), doc(&["kid", "play"])];
        for kind in FeatureKind::ALL {
            let v = Vectorizer::fit(&docs, kind).unwrap();
            let back = Vectorizer::from_json(&v.to_json().unwrap()).unwrap();
            let q = doc(&["play", "kid", "kid", "zzz"]);
            assert_eq!(v.transform(&q), back.transform(&q));
            assert_eq!(back.vocabulary.fingerprint(), v.vocabulary.fingerprint());
        }
    }

    #[test]
    fn vectorizer_rejects_bad_documents() {
        let v = Vectorizer::fit(&[doc(&["a", "b"])], FeatureKind::TfIdf).unwrap();
        let mut value = v.to_value().unwrap();
        value["format_version"] = 9.into();
        assert!(matches!(
            Vectorizer::from_value(value),
            Err(Error::FormatVersion { found: 9, .. })
        ));
        let mut value = v.to_value().unwrap();
        value["tokens"] = serde_json::json!(["a", "c"]);
        assert!(matches!(
            Vectorizer::from_value(value),
            Err(Error::FingerprintMismatch { .. })
        ));
        let mut value = v.to_value().unwrap();
        value["tokens"] = serde_json::json!(["b", "a"]);
        assert!(Vectorizer::from_value(value).is_err());
    }

    #[test]
    fn matrix_rejects_foreign_rows() {
        let v = Arc::new(Vocabulary::from_tokens(["a", "b"]));
        let other = Vocabulary::from_tokens(["a", "c"]);
        let row = bow_transform(&doc(&["a"]), &other);
        assert!(matches!(
            FeatureMatrix::new(vec![row], vec![Label::Fact], v, FeatureKind::Bow),
            Err(Error::FingerprintMismatch { .. })
        ));
    }

    #[test]
    fn fingerprint_hex_round_trip() {
        let f = Fingerprint::of_tokens(&["x", "y"]);
        assert_eq!(Fingerprint::from_hex(&f.to_hex()), Some(f));
        assert_ne!(f, Fingerprint::of_tokens(&["xy"]));
        assert_eq!(Fingerprint::from_hex("zz"), None);
    }

    fn arb_doc() -> impl Strategy<Value = TokenizedDoc> {
        prop::collection::vec(prop::sample::select(vec!["aa", "bb", "cc", "dd", "ee", "ff"]), 0..12)
            .prop_map(|t| TokenizedDoc::new(t.into_iter().map(String::from).collect()))
    }

    proptest! {
        #[test]
        fn bow_is_additive(a in arb_doc(), b in arb_doc()) {
            let v = Vocabulary::from_tokens(["aa", "bb", "cc", "dd"]);
            let mut joined = a.tokens.clone();
            joined.extend(b.tokens.iter().cloned());
            let lhs = bow_transform(&TokenizedDoc::new(joined), &v);
            let rhs = bow_transform(&a, &v).sum(&bow_transform(&b, &v));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn tfidf_rows_are_unit_or_zero(train in prop::collection::vec(arb_doc(), 1..10), q in arb_doc()) {
            prop_assume!(train.iter().any(|d| !d.is_empty()));
            let vec = Vectorizer::fit(&train, FeatureKind::TfIdf).unwrap();
            let x = vec.transform(&q);
            prop_assert_eq!(x.dim(), vec.vocabulary.len());
            let n = x.norm();
            prop_assert!(n == 0.0 || (n - 1.0).abs() < 1e-9);
            for &(_, w) in x.entries() {
                prop_assert!(w > 0.0);
            }
            for w in &vec.idf.as_ref().unwrap().idf {
                prop_assert!(*w > 0.0);
            }
        }
    }
}
