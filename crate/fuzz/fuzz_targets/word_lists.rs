#![no_main]

use libfuzzer_sys::fuzz_target;
use mythlab::textprep::{parse_contractions, parse_stopwords};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(words) = parse_stopwords(text, "fuzz") {
        assert!(words.iter().all(|w| !w.is_empty() && w.trim() == w));
    }
    if let Ok(map) = parse_contractions(text, "fuzz") {
        assert!(map.keys().all(|k| !k.is_empty()));
    }
});
