//! Corpus-level scoring: documents are paired by id, flattened, scored per
//! metric, and micro-averaged by summing numerators and denominators.

use std::collections::BTreeMap;

use super::split::{split_score, SplitReport};
use super::{conll_average, evaluate, Indexed, LeaConfig, Metric, Score};
use crate::model::{flatten, DocumentSet, ModelError};

#[derive(Debug, Clone, PartialEq)]
pub struct ScorerConfig {
    pub metrics: Vec<Metric>,
    pub lea: LeaConfig,
    /// Also compute split-antecedent-only scores.
    pub split_only: bool,
    /// Score only documents whose key contains an accommodated set.
    pub only_docs_with_splits: bool,
}

impl Default for ScorerConfig {
    fn default() -> Self {
        Self {
            metrics: Metric::ALL.to_vec(),
            lea: LeaConfig::default(),
            split_only: false,
            only_docs_with_splits: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Presence {
    Both,
    /// No system output: scored against an empty response.
    KeyOnly,
    /// No gold annotation: scored against an empty key.
    ResponseOnly,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DocumentReport {
    pub doc_id: String,
    pub presence: Presence,
    pub scores: Vec<(Metric, Score)>,
    pub split: Option<Vec<(Metric, Score)>>,
    pub key_sets: usize,
    pub response_sets: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorpusReport {
    pub metrics: Vec<Metric>,
    pub lea_beta: f64,
    pub documents: Vec<DocumentReport>,
    pub totals: Vec<(Metric, Score)>,
    pub conll: Option<f64>,
    pub split: Option<SplitReport>,
    pub missing_in_response: Vec<String>,
    pub missing_in_key: Vec<String>,
}

impl CorpusReport {
    pub fn total(&self, metric: Metric) -> Option<&Score> {
        self.totals.iter().find(|(m, _)| *m == metric).map(|(_, s)| s)
    }
}

fn conll_of(scores: &[(Metric, Score)]) -> Option<f64> {
    let f1 = |m| scores.iter().find(|(x, _)| *x == m).map(|(_, s)| s.f1());
    Some(conll_average(f1(Metric::Muc)?, f1(Metric::BCubed)?, f1(Metric::CeafE)?))
}

/// Scores one document pair with every configured metric.
pub fn score_document(
    key: &DocumentSet,
    response: &DocumentSet,
    cfg: &ScorerConfig,
) -> Result<DocumentReport, ModelError> {
    let key = flatten(key)?;
    let response = flatten(response)?;
    let scores = cfg
        .metrics
        .iter()
        .map(|&m| (m, evaluate(m, &key, &response, cfg.lea).score))
        .collect();
    let split = cfg.split_only.then(|| {
        let k = Indexed::new(&key);
        let r = Indexed::new(&response);
        cfg.metrics.iter().map(|&m| (m, split_score(m, &k, &r))).collect()
    });
    let count = |d: &DocumentSet| d.entities.iter().filter(|e| e.has_set()).count();
    Ok(DocumentReport {
        doc_id: key.doc_id.clone(),
        presence: Presence::Both,
        scores,
        split,
        key_sets: count(&key),
        response_sets: count(&response),
    })
}

/// Scores every document appearing in either corpus, in doc-id order.
pub fn score_corpus(
    key: &[DocumentSet],
    response: &[DocumentSet],
    cfg: &ScorerConfig,
) -> Result<CorpusReport, ModelError> {
    let keys: BTreeMap<&str, &DocumentSet> = key.iter().map(|d| (d.doc_id.as_str(), d)).collect();
    let resps: BTreeMap<&str, &DocumentSet> = response.iter().map(|d| (d.doc_id.as_str(), d)).collect();
    let mut ids: Vec<&str> = keys.keys().chain(resps.keys()).copied().collect();
    ids.sort_unstable();
    ids.dedup();

    let mut documents = Vec::new();
    let mut missing_in_response = Vec::new();
    let mut missing_in_key = Vec::new();
    for id in ids {
        let (k, r, presence) = match (keys.get(id), resps.get(id)) {
            (Some(&k), Some(&r)) => (k.clone(), r.clone(), Presence::Both),
            (Some(&k), None) => (k.clone(), DocumentSet::empty(id), Presence::KeyOnly),
            (None, Some(&r)) => (DocumentSet::empty(id), r.clone(), Presence::ResponseOnly),
            (None, None) => unreachable!(),
        };
        if cfg.only_docs_with_splits && !k.has_sets() {
            continue;
        }
        match presence {
            Presence::KeyOnly => missing_in_response.push(id.to_string()),
            Presence::ResponseOnly => missing_in_key.push(id.to_string()),
            Presence::Both => {}
        }
        let mut doc = score_document(&k, &r, cfg)?;
        doc.presence = presence;
        documents.push(doc);
    }

    let mut totals: Vec<(Metric, Score)> = cfg.metrics.iter().map(|&m| (m, Score::empty(m))).collect();
    let mut split_totals = totals.clone();
    let (mut key_sets, mut response_sets) = (0, 0);
    for doc in &documents {
        for ((_, acc), (_, s)) in totals.iter_mut().zip(&doc.scores) {
            acc.add(s);
        }
        if let Some(split) = &doc.split {
            for ((_, acc), (_, s)) in split_totals.iter_mut().zip(split) {
                acc.add(s);
            }
        }
        key_sets += doc.key_sets;
        response_sets += doc.response_sets;
    }
    let conll = conll_of(&totals);
    Ok(CorpusReport {
        metrics: cfg.metrics.clone(),
        lea_beta: cfg.lea.beta,
        documents,
        totals,
        conll,
        split: cfg
            .split_only
            .then(|| SplitReport::finish(split_totals, key_sets, response_sets)),
        missing_in_response,
        missing_in_key,
    })
}
