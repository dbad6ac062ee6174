#![no_main]

use libfuzzer_sys::fuzz_target;
use mythlab::dataset::{parse_corpus, Label};

fuzz_target!(|data: &[u8]| {
    if let Ok(corpus) = parse_corpus(data, "fuzz.csv") {
        assert!(!corpus.is_empty());
        let mut out = Vec::new();
        corpus.write_csv(&mut out).unwrap();
        let back = parse_corpus(out.as_slice(), "fuzz.csv").unwrap();
        assert_eq!(back.statements(), corpus.statements());
        for s in corpus.statements() {
            assert!(Label::ALL.contains(&s.label));
            assert!(!s.text.trim().is_empty());
        }
    }
});
