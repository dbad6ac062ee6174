#![no_main]

use libfuzzer_sys::fuzz_target;
use mythlab::classify::TrainedModel;
use mythlab::pipeline::Pipeline;
use mythlab::vectorize::{FeatureVector, Vectorizer};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(model) = TrainedModel::from_json(text) {
        // Any accepted model must predict without panicking.
        let _ = model.predict(&FeatureVector::zeros(model.dim, model.fingerprint));
        let again = TrainedModel::from_json(&model.to_json().unwrap()).unwrap();
        assert_eq!(again.kind(), model.kind());
    }
    if let Ok(v) = Vectorizer::from_json(text) {
        let _ = Vectorizer::from_json(&v.to_json().unwrap()).unwrap();
    }
    if let Ok(p) = Pipeline::from_json(text) {
        let _ = p.predict("Babies learn language by hearing people talk.");
    }
});
