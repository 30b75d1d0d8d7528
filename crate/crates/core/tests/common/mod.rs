#![allow(dead_code)]

use anascore::io::parse_corpus;
use anascore::model::{flatten, validate, DocumentSet};

fn load(text: &str) -> DocumentSet {
    let corpus = parse_corpus(text.as_bytes()).expect("fixture parses");
    let doc = corpus.documents.into_iter().next().expect("one document");
    assert!(validate(&doc).is_empty(), "fixture invalid: {:?}", validate(&doc));
    flatten(&doc).expect("fixture flattens")
}

pub fn raw_key() -> DocumentSet {
    parse_corpus(include_str!("../../fixtures/example_key.json").as_bytes())
        .unwrap()
        .documents
        .remove(0)
}

pub fn key() -> DocumentSet {
    load(include_str!("../../fixtures/example_key.json"))
}

pub fn system(name: char) -> DocumentSet {
    match name {
        'a' => load(include_str!("../../fixtures/example_system_a.json")),
        'b' => load(include_str!("../../fixtures/example_system_b.json")),
        'c' => load(include_str!("../../fixtures/example_system_c.json")),
        'd' => load(include_str!("../../fixtures/example_system_d.json")),
        other => panic!("no system {other}"),
    }
}

pub fn gold_sets() -> DocumentSet {
    load(include_str!("../../fixtures/example_system_gold_sets.json"))
}

pub fn equivalence() -> (DocumentSet, DocumentSet, DocumentSet) {
    (
        load(include_str!("../../fixtures/equivalence_key.json")),
        load(include_str!("../../fixtures/equivalence_r4.json")),
        load(include_str!("../../fixtures/equivalence_r4_prime.json")),
    )
}
