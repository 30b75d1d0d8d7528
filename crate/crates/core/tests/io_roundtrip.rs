mod common;

use anascore::io::{
    parse_corpus, render_report, report_json, write_corpus, CorpusFile, IoError, ReportFormat, ReportJson,
};
use anascore::metrics::Metric;
use anascore::oracle::{generate_instance, RandomInstanceSpec};
use anascore::{score_corpus, ScorerConfig};

#[test]
fn generated_corpora_round_trip() {
    for seed in 0..100 {
        let (k, r) = generate_instance(&RandomInstanceSpec {
            seed,
            ..RandomInstanceSpec::default()
        });
        for doc in [k, r] {
            let file = CorpusFile::new(vec![doc]);
            let text = write_corpus(&file);
            assert_eq!(parse_corpus(text.as_bytes()).unwrap(), file, "seed {seed}");
        }
    }
}

#[test]
fn fixtures_round_trip() {
    let text = include_str!("../fixtures/example_key.json");
    let parsed = parse_corpus(text.as_bytes()).unwrap();
    let again = parse_corpus(write_corpus(&parsed).as_bytes()).unwrap();
    assert_eq!(parsed, again);
}

#[test]
fn unknown_fields_are_rejected() {
    let text = r#"{"format_version": "1.0", "documents": [], "extra": 1}"#;
    assert!(matches!(parse_corpus(text.as_bytes()), Err(IoError::Syntax { .. })));
}

fn example_report(cfg: &ScorerConfig) -> anascore::CorpusReport {
    score_corpus(&[common::raw_key()], &[common::system('a')], cfg).unwrap()
}

#[test]
fn json_f1_matches_counts() {
    let cfg = ScorerConfig {
        split_only: true,
        ..ScorerConfig::default()
    };
    let json = render_report(&example_report(&cfg), ReportFormat::Json);
    let back: ReportJson = serde_json::from_str(&json).unwrap();
    assert_eq!(back, report_json(&example_report(&cfg)));
    for row in back.metrics.iter().chain(&back.split_only.as_ref().unwrap().metrics) {
        let f = |r: f64, p: f64| if r + p == 0.0 { 0.0 } else { 2.0 * r * p / (r + p) };
        if let Some(c) = &row.counts {
            let r = c.recall_num / c.recall_den;
            let p = c.precision_num / c.precision_den;
            assert!((f(r, p) - row.f1).abs() < 1e-12, "{}", row.metric);
        } else {
            assert_eq!(row.metric, Metric::Blanc);
            let (c, n) = (row.coref.as_ref().unwrap(), row.noncoref.as_ref().unwrap());
            assert!(((c.f1 + n.f1) / 2.0 - row.f1).abs() < 1e-12);
        }
    }
}

#[test]
fn corpus_totals_are_micro_averages() {
    let key = common::raw_key();
    let mut k2 = common::equivalence().0;
    k2.doc_id = "second".into();
    for e in &mut k2.entities {
        for m in &mut e.mentions {
            m.doc_id = "second".into();
        }
    }
    let cfg = ScorerConfig::default();
    let report = score_corpus(&[key.clone(), k2.clone()], &[common::system('b'), k2], &cfg).unwrap();
    assert_eq!(report.documents.len(), 2);
    for m in Metric::ALL {
        let parts: Vec<_> = report
            .documents
            .iter()
            .map(|d| d.scores.iter().find(|s| s.0 == m).unwrap().1)
            .collect();
        let mut sum = parts[0];
        sum.add(&parts[1]);
        assert_eq!(&sum, report.total(m).unwrap());
    }
}

#[test]
fn missing_documents_are_reported() {
    let report = score_corpus(&[common::raw_key()], &[], &ScorerConfig::default()).unwrap();
    assert_eq!(report.missing_in_response, vec!["example".to_string()]);
    assert_eq!(report.total(Metric::Muc).unwrap().recall(), 0.0);
    let text = render_report(&report, ReportFormat::Text);
    assert!(text.contains("missing in response: example"));
}
