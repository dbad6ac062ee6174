//! POS-free rule lemmatizer: an irregular-form table plus plural-noun and
//! -ing/-ed suffix rules.

use super::porter::{ends_cvc, measure};

const IRREGULAR: &[(&str, &str)] = &[
    ("ate", "eat"),
    ("bought", "buy"),
    ("brought", "bring"),
    ("caught", "catch"),
    ("children", "child"),
    ("eaten", "eat"),
    ("fed", "feed"),
    ("feet", "foot"),
    ("fell", "fall"),
    ("felt", "feel"),
    ("geese", "goose"),
    ("gone", "go"),
    ("grew", "grow"),
    ("grown", "grow"),
    ("halves", "half"),
    ("kept", "keep"),
    ("knew", "know"),
    ("knives", "knife"),
    ("known", "know"),
    ("leaves", "leaf"),
    ("lives", "life"),
    ("made", "make"),
    ("men", "man"),
    ("met", "meet"),
    ("mice", "mouse"),
    ("oxen", "ox"),
    ("people", "person"),
    ("ran", "run"),
    ("said", "say"),
    ("sat", "sit"),
    ("saw", "see"),
    ("seen", "see"),
    ("slept", "sleep"),
    ("spoke", "speak"),
    ("spoken", "speak"),
    ("taught", "teach"),
    ("teeth", "tooth"),
    ("thought", "think"),
    ("understood", "understand"),
    ("went", "go"),
    ("wives", "wife"),
    ("women", "woman"),
    ("written", "write"),
    ("wrote", "write"),
];

fn has_vowel(s: &str) -> bool {
    s.bytes().any(|b| matches!(b, b'a' | b'e' | b'i' | b'o' | b'u' | b'y'))
}

/// Restores the base of a verb whose -ing/-ed suffix was cut: undoes a
/// doubled final consonant (hopp -> hop) or re-adds a silent e to short
/// consonant-vowel-consonant bases (hop -> hope).
fn verb_base(base: &str) -> Option<String> {
    if base.len() < 3 || !has_vowel(base) {
        return None;
    }
    let b = base.as_bytes();
    let n = b.len();
    if b[n - 1] == b[n - 2] && !matches!(b[n - 1], b'a' | b'e' | b'i' | b'o' | b'u' | b'l' | b's' | b'z') {
        return Some(base[..n - 1].to_string());
    }
    if measure(b) == 1 && ends_cvc(b) {
        return Some(format!("{base}e"));
    }
    Some(base.to_string())
}

/// Lemmatizes one lowercase token; returns it unchanged when no rule applies.
pub fn lemmatize(token: &str) -> String {
    if let Ok(i) = IRREGULAR.binary_search_by(|(k, _)| k.cmp(&token)) {
        return IRREGULAR[i].1.to_string();
    }
    if token.len() <= 3 {
        return token.to_string();
    }
    if let Some(base) = token.strip_suffix("ies") {
        if token.len() > 4 {
            return format!("{base}y");
        }
    }
    if let Some(base) = token.strip_suffix("ses") {
        return format!("{base}s");
    }
    if let Some(base) = token.strip_suffix("ing") {
        if let Some(v) = verb_base(base) {
            return v;
        }
    }
    if !token.ends_with("eed") {
        if let Some(base) = token.strip_suffix("ed") {
            if let Some(v) = verb_base(base) {
                return v;
            }
        }
    }
    if token.ends_with('s') && !token.ends_with("ss") && !token.ends_with("us") && !token.ends_with("is") {
        return token[..token.len() - 1].to_string();
    }
    token.to_string()
}
