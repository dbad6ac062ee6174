//! Writes the synthetic child-development corpus used by tests and demos.
//!
//! About one statement in fifteen borrows a claim from the other class so
//! the classes are not perfectly separable.
//!
//! Usage: cargo run --example synth_corpus -- [OUT.csv] [SEED]

use std::collections::BTreeSet;
use std::path::PathBuf;

use mythlab::dataset::{Corpus, Label, LabeledStatement};
use mythlab::rng;
use rand::seq::SliceRandom;
use rand::Rng;

const FACT_COUNT: usize = 420;
const MYTH_COUNT: usize = 210;

const SUBJECTS: &[&str] = &[
    "Babies",
    "Infants",
    "Toddlers",
    "Young children",
    "Preschoolers",
    "Newborns",
    "Children",
    "Kids",
    "School-age children",
    "Twins",
];

const FACT_CLAIMS: &[&str] = &[
    "learn language by hearing adults talk with them",
    "benefit from consistent and responsive care",
    "develop motor skills through active play",
    "need plenty of sleep for healthy brain development",
    "develop at different rates within a normal range",
    "build vocabulary when caregivers read aloud daily",
    "develop secure attachment with warm caregivers",
    "learn emotional regulation from calm adults",
    "show developmental progress through play with peers",
    "develop problem solving skills by exploring safely",
    "gain social skills from supervised group play",
    "develop healthy eating habits from family meals",
    "benefit from routines that support development",
    "understand more words than they can say",
    "develop fine motor control by drawing and stacking",
    "learn best when adults follow their interests",
    "need tummy time to strengthen neck muscles",
    "develop early literacy through songs and rhymes",
];

const MYTH_CLAIMS: &[&str] = &[
    "become smarter from listening to classical music",
    "get spoiled if you pick them up when they cry",
    "become hyperactive after eating sugar",
    "stunt their growth by lifting weights",
    "must walk by their first birthday or they are delayed",
    "learn two languages only at the cost of confusion",
    "can be taught to read from flash cards before one",
    "always outgrow speech delays without any help",
    "become independent sooner if left to cry alone",
    "use only ten percent of their brains",
    "are permanently harmed by any screen exposure",
    "need educational videos to develop their brains",
    "will never catch up if they crawl late",
    "are left brained or right brained learners",
    "cannot develop language if parents use baby talk",
    "are damaged for life by a single bad experience",
];

const FACT_TAILS: &[&str] = &[
    "according to developmental research",
    "in the first years of life",
    "when adults respond warmly",
    "during everyday routines",
    "with patient support",
    "as their brains develop",
    "",
];

const MYTH_TAILS: &[&str] = &[
    "as many parents believe",
    "according to a popular claim",
    "which is often repeated online",
    "so parents must act early",
    "no matter what adults do",
    "",
];

fn compose<R: Rng>(rng: &mut R, claims: &[&str], other: &[&str], tails: &[&str]) -> String {
    let subject = SUBJECTS.choose(rng).unwrap();
    let pool = if rng.gen_ratio(1, 15) { other } else { claims };
    let claim = pool.choose(rng).unwrap();
    let tail = tails.choose(rng).unwrap();
    let mut s = format!("{subject} {claim}");
    if !tail.is_empty() {
        s.push(' ');
        s.push_str(tail);
    }
    s.push('.');
    s
}

fn main() {
    let mut args = std::env::args().skip(1);
    let out = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/data/synthetic_corpus.csv")));
    let seed: u64 = args
        .next()
        .map(|s| s.parse().expect("seed must be an integer"))
        .unwrap_or(2024);
    let mut rng = rng::substream(seed, "synthetic-corpus", 0);

    let mut seen = BTreeSet::new();
    let mut statements = Vec::new();
    for (label, count, claims, other, tails) in [
        (Label::Fact, FACT_COUNT, FACT_CLAIMS, MYTH_CLAIMS, FACT_TAILS),
        (Label::Myth, MYTH_COUNT, MYTH_CLAIMS, FACT_CLAIMS, MYTH_TAILS),
    ] {
        let mut made = 0;
        while made < count {
            let text = compose(&mut rng, claims, other, tails);
            if seen.insert(text.clone()) {
                statements.push(LabeledStatement::new(label, &text).unwrap());
                made += 1;
            }
        }
    }
    statements.shuffle(&mut rng);
    let corpus = Corpus::new(statements, &out).unwrap();
    corpus.save(&out).unwrap();
    println!("wrote {} statements to {}", corpus.len(), out.display());
}
