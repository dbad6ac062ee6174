#![no_main]

use libfuzzer_sys::fuzz_target;
use mythlab::textprep::{normalize, preprocess, PrepConfig};

fuzz_target!(|text: &str| {
    let cfg = PrepConfig::default();
    let once = normalize(text, &cfg);
    assert_eq!(normalize(&once, &cfg), once);
    for t in &preprocess(text, &cfg).tokens {
        assert!(t.len() >= cfg.min_token_len);
        assert!(t.bytes().all(|b| b.is_ascii_lowercase()));
    }
});
