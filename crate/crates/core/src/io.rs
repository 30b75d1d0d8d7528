//! JSON interchange format for key/response corpora, and report rendering.
//!
//! A corpus file holds one or more documents:
//!
//! ```json
//! {"format_version": "1.0",
//!  "documents": [{"doc_id": "d1",
//!                 "entities": [{"id": "e1", "mentions": [{"start": 0, "end": 2}]},
//!                              {"id": "e2", "mentions": [{"start": 5, "end": 6}],
//!                               "set_elements": ["e1", "e3"]}]}]}
//! ```
//!
//! Spans are token indices, end-exclusive. `set_elements` is omitted for
//! entities without an accommodated set.

use std::collections::HashSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::metrics::corpus::{CorpusReport, Presence};
use crate::metrics::{Metric, MetricResult, Score};
use crate::model::{DocumentSet, Entity, MentionSpan};

pub const FORMAT_VERSION: &str = "1.0";

#[derive(Debug, Error)]
pub enum IoError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unsupported format_version `{0}` (expected `{FORMAT_VERSION}`)")]
    UnsupportedVersion(String),
    #[error("document id `{0}` appears more than once")]
    DuplicateDocument(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusFile {
    pub format_version: String,
    pub documents: Vec<DocumentSet>,
}

impl CorpusFile {
    pub fn new(documents: Vec<DocumentSet>) -> Self {
        Self {
            format_version: FORMAT_VERSION.to_string(),
            documents,
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCorpus {
    format_version: String,
    documents: Vec<RawDocument>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    doc_id: String,
    entities: Vec<RawEntity>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntity {
    id: String,
    mentions: Vec<RawSpan>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    set_elements: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpan {
    start: usize,
    end: usize,
}

/// Parses a corpus file. Model-level checks (repeated mentions, dangling set
/// elements, ...) are left to [`crate::model::validate`].
pub fn parse_corpus(bytes: &[u8]) -> Result<CorpusFile, IoError> {
    let raw: RawCorpus = serde_json::from_slice(bytes).map_err(|e| IoError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if raw.format_version != FORMAT_VERSION {
        return Err(IoError::UnsupportedVersion(raw.format_version));
    }
    let mut seen = HashSet::new();
    let mut documents = Vec::with_capacity(raw.documents.len());
    for d in raw.documents {
        if !seen.insert(d.doc_id.clone()) {
            return Err(IoError::DuplicateDocument(d.doc_id));
        }
        let entities = d
            .entities
            .into_iter()
            .map(|e| Entity {
                id: e.id,
                mentions: e
                    .mentions
                    .into_iter()
                    .map(|s| MentionSpan::new(d.doc_id.clone(), s.start, s.end))
                    .collect(),
                set_elements: e.set_elements,
            })
            .collect();
        documents.push(DocumentSet::new(d.doc_id, entities));
    }
    Ok(CorpusFile {
        format_version: raw.format_version,
        documents,
    })
}

pub fn write_corpus(corpus: &CorpusFile) -> String {
    let raw = RawCorpus {
        format_version: corpus.format_version.clone(),
        documents: corpus
            .documents
            .iter()
            .map(|d| RawDocument {
                doc_id: d.doc_id.clone(),
                entities: d
                    .entities
                    .iter()
                    .map(|e| RawEntity {
                        id: e.id.clone(),
                        mentions: e
                            .mentions
                            .iter()
                            .map(|m| RawSpan {
                                start: m.start,
                                end: m.end,
                            })
                            .collect(),
                        set_elements: e.set_elements.clone(),
                    })
                    .collect(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&raw).expect("corpus serializes")
}

// ---------------------------------------------------------------------------
// Reports

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentJson {
    pub recall_num: f64,
    pub recall_den: f64,
    pub precision_num: f64,
    pub precision_den: f64,
    pub recall: f64,
    pub precision: f64,
    pub f1: f64,
}

impl From<&MetricResult> for ComponentJson {
    fn from(m: &MetricResult) -> Self {
        Self {
            recall_num: m.recall_num,
            recall_den: m.recall_den,
            precision_num: m.precision_num,
            precision_den: m.precision_den,
            recall: m.recall(),
            precision: m.precision(),
            f1: m.f1(),
        }
    }
}

/// One metric row. For BLANC the top-level figures combine the two link
/// components, whose counts are listed separately.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricJson {
    pub metric: Metric,
    pub recall: f64,
    pub precision: f64,
    pub f1: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counts: Option<ComponentJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coref: Option<ComponentJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub noncoref: Option<ComponentJson>,
}

impl MetricJson {
    fn new(metric: Metric, score: &Score) -> Self {
        let (counts, coref, noncoref) = match score {
            Score::Standard(m) => (Some(m.into()), None, None),
            Score::Blanc(b) => (None, Some((&b.coref).into()), Some((&b.noncoref).into())),
        };
        Self {
            metric,
            recall: score.recall(),
            precision: score.precision(),
            f1: score.f1(),
            counts,
            coref,
            noncoref,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DocumentJson {
    pub doc_id: String,
    pub status: String,
    pub metrics: Vec<MetricJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitJson {
    pub key_sets: usize,
    pub response_sets: usize,
    pub metrics: Vec<MetricJson>,
    pub conll: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportJson {
    pub lea_beta: f64,
    pub documents_scored: usize,
    pub missing_in_response: Vec<String>,
    pub missing_in_key: Vec<String>,
    pub metrics: Vec<MetricJson>,
    pub conll: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split_only: Option<SplitJson>,
    pub documents: Vec<DocumentJson>,
}

fn presence_label(p: Presence) -> &'static str {
    match p {
        Presence::Both => "scored",
        Presence::KeyOnly => "missing_in_response",
        Presence::ResponseOnly => "missing_in_key",
    }
}

pub fn report_json(report: &CorpusReport) -> ReportJson {
    let rows = |scores: &[(Metric, Score)]| scores.iter().map(|(m, s)| MetricJson::new(*m, s)).collect();
    ReportJson {
        lea_beta: report.lea_beta,
        documents_scored: report.documents.len(),
        missing_in_response: report.missing_in_response.clone(),
        missing_in_key: report.missing_in_key.clone(),
        metrics: rows(&report.totals),
        conll: report.conll,
        split_only: report.split.as_ref().map(|s| SplitJson {
            key_sets: s.key_sets,
            response_sets: s.response_sets,
            metrics: rows(&s.scores),
            conll: s.conll,
        }),
        documents: report
            .documents
            .iter()
            .map(|d| DocumentJson {
                doc_id: d.doc_id.clone(),
                status: presence_label(d.presence).to_string(),
                metrics: rows(&d.scores),
            })
            .collect(),
    }
}

fn table(out: &mut String, scores: &[(Metric, Score)], conll: Option<f64>) {
    let _ = writeln!(out, "{:<8} {:>8} {:>10} {:>8}", "metric", "recall", "precision", "f1");
    for (m, s) in scores {
        let _ = writeln!(
            out,
            "{:<8} {:>8.2} {:>10.2} {:>8.2}",
            m.name(),
            100.0 * s.recall(),
            100.0 * s.precision(),
            100.0 * s.f1()
        );
    }
    if let Some(c) = conll {
        let _ = writeln!(out, "{:<8} {:>8} {:>10} {:>8.2}", "conll", "", "", 100.0 * c);
    }
}

/// Renders a corpus report. Text output shows percentages; JSON output keeps
/// raw numerators and denominators.
pub fn render_report(report: &CorpusReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(&report_json(report)).expect("report serializes");
            s.push('\n');
            s
        }
        ReportFormat::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "documents scored: {}", report.documents.len());
            for id in &report.missing_in_response {
                let _ = writeln!(out, "missing in response: {id} (zero recall)");
            }
            for id in &report.missing_in_key {
                let _ = writeln!(out, "missing in key: {id} (zero precision)");
            }
            if report.metrics.contains(&Metric::Lea) {
                let _ = writeln!(out, "lea beta: {}", report.lea_beta);
            }
            out.push('\n');
            table(&mut out, &report.totals, report.conll);
            if let Some(split) = &report.split {
                out.push('\n');
                let _ = writeln!(
                    out,
                    "split-antecedent anaphors only (key sets: {}, response sets: {})",
                    split.key_sets, split.response_sets
                );
                if split.key_sets == 0 {
                    let _ = writeln!(out, "no split-antecedent anaphors in key");
                }
                table(&mut out, &split.scores, split.conll);
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::corpus::{score_corpus, ScorerConfig};
    use crate::model::{validate, Rule};

    const SMALL: &str = r#"{
      "format_version": "1.0",
      "documents": [
        {"doc_id": "d", "entities": [
          {"id": "a", "mentions": [{"start": 0, "end": 1}, {"start": 4, "end": 6}]},
          {"id": "b", "mentions": [{"start": 2, "end": 3}]},
          {"id": "c", "mentions": [{"start": 8, "end": 9}], "set_elements": ["a", "b"]}
        ]}
      ]
    }"#;

    #[test]
    fn parses_entities_and_sets() {
        let c = parse_corpus(SMALL.as_bytes()).unwrap();
        assert_eq!(c.documents.len(), 1);
        let d = &c.documents[0];
        assert_eq!(d.entities.len(), 3);
        assert_eq!(d.entities[0].mentions[1], MentionSpan::new("d", 4, 6));
        assert_eq!(
            d.entities[2].set_elements.as_deref(),
            Some(&["a".to_string(), "b".to_string()][..])
        );
        assert!(validate(d).is_empty());
    }

    #[test]
    fn empty_document_list_is_valid() {
        let c = parse_corpus(br#"{"format_version":"1.0","documents":[]}"#).unwrap();
        assert!(c.documents.is_empty());
    }

    #[test]
    fn syntax_errors_carry_a_position() {
        let err = parse_corpus(b"{\n  \"format_version\": \"1.0\",\n  \"documents\": [}\n").unwrap_err();
        match err {
            IoError::Syntax { line, column, .. } => assert_eq!((line, column), (3, 17)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_corpus(br#"{"format_version":"1.0","documents":[{"doc_id":"d","entities":[],"extra":1}]}"#),
            Err(IoError::Syntax { .. })
        ));
    }

    #[test]
    fn rejects_unknown_version_and_duplicate_ids() {
        assert!(matches!(
            parse_corpus(br#"{"format_version":"2.0","documents":[]}"#),
            Err(IoError::UnsupportedVersion(v)) if v == "2.0"
        ));
        let dup =
            br#"{"format_version":"1.0","documents":[{"doc_id":"x","entities":[]},{"doc_id":"x","entities":[]}]}"#;
        assert!(matches!(parse_corpus(dup), Err(IoError::DuplicateDocument(_))));
    }

    #[test]
    fn dangling_reference_parses_then_fails_validation() {
        let text = SMALL.replace(r#"["a", "b"]"#, r#"["a", "zz"]"#);
        let c = parse_corpus(text.as_bytes()).unwrap();
        let v = validate(&c.documents[0]);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].rule, Rule::DanglingElementReference);
    }

    #[test]
    fn written_corpus_parses_back() {
        let c = parse_corpus(SMALL.as_bytes()).unwrap();
        let again = parse_corpus(write_corpus(&c).as_bytes()).unwrap();
        assert_eq!(again, c);
        assert!(!write_corpus(&c).contains("\"set_elements\": null"));
    }

    #[test]
    fn empty_corpus_renders_header_only() {
        let r = score_corpus(&[], &[], &ScorerConfig::default()).unwrap();
        let text = render_report(&r, ReportFormat::Text);
        assert!(text.contains("documents scored: 0"));
        assert!(text.contains("metric"));
    }

    #[test]
    fn perfect_document_renders_all_hundreds() {
        let c = parse_corpus(SMALL.as_bytes()).unwrap();
        let r = score_corpus(&c.documents, &c.documents, &ScorerConfig::default()).unwrap();
        let text = render_report(&r, ReportFormat::Text);
        for line in text.lines().skip_while(|l| !l.starts_with("metric")).skip(1) {
            if line.trim().is_empty() {
                break;
            }
            assert!(line.trim_end().ends_with("100.00"), "{line}");
        }
        let json: ReportJson = serde_json::from_str(&render_report(&r, ReportFormat::Json)).unwrap();
        assert!(json.metrics.iter().all(|m| m.f1 == 1.0));
    }
}
