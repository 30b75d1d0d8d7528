//! Scores restricted to split-antecedent anaphors.
//!
//! Each aligned pair of accommodated sets is one sub-problem (key elements
//! against response elements); unaligned key sets are scored against an empty
//! response and unaligned response sets against an empty key. Numerators and
//! denominators are summed over all sub-problems before taking ratios.

use super::{conll_average, score_plain, set_alignment, Indexed, Metric, Score};
use crate::model::DocumentSet;

pub(crate) fn split_score(metric: Metric, key: &Indexed<'_>, response: &Indexed<'_>) -> Score {
    let (_, aligned) = set_alignment(key, response, metric);
    let empty = Indexed::atomic(std::iter::empty());
    let mut total = Score::empty(metric);
    for a in &aligned {
        total.add(&a.sub);
    }
    for i in (0..key.entities.len()).filter(|&i| key.entities[i].set.is_some()) {
        if !aligned.iter().any(|a| a.key == i) {
            total.add(&score_plain(metric, &key.elements(i), &empty));
        }
    }
    for j in (0..response.entities.len()).filter(|&j| response.entities[j].set.is_some()) {
        if !aligned.iter().any(|a| a.response == j) {
            total.add(&score_plain(metric, &empty, &response.elements(j)));
        }
    }
    total
}

#[derive(Debug, Clone, PartialEq)]
pub struct SplitReport {
    pub scores: Vec<(Metric, Score)>,
    /// Present when MUC, B-cubed and entity-based CEAF were all computed.
    pub conll: Option<f64>,
    pub key_sets: usize,
    pub response_sets: usize,
}

impl SplitReport {
    pub fn get(&self, metric: Metric) -> Option<&Score> {
        self.scores.iter().find(|(m, _)| *m == metric).map(|(_, s)| s)
    }

    pub(crate) fn finish(scores: Vec<(Metric, Score)>, key_sets: usize, response_sets: usize) -> Self {
        let f1 = |m| {
            scores
                .iter()
                .find(|(x, _)| *x == m)
                .map(|(_, s): &(Metric, Score)| s.f1())
        };
        let conll = match (f1(Metric::Muc), f1(Metric::BCubed), f1(Metric::CeafE)) {
            (Some(a), Some(b), Some(c)) => Some(conll_average(a, b, c)),
            _ => None,
        };
        Self {
            scores,
            conll,
            key_sets,
            response_sets,
        }
    }
}

/// Split-antecedent-only scores of a flattened, validated document pair.
pub fn split_only_report(key: &DocumentSet, response: &DocumentSet, metrics: &[Metric]) -> SplitReport {
    let k = Indexed::new(key);
    let r = Indexed::new(response);
    let scores = metrics.iter().map(|&m| (m, split_score(m, &k, &r))).collect();
    let count = |d: &DocumentSet| d.entities.iter().filter(|e| e.has_set()).count();
    SplitReport::finish(scores, count(key), count(response))
}
