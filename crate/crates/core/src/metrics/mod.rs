//! Coreference metrics generalized to accommodated sets.
//!
//! Every metric keeps its standard formula over regular mentions and adds a
//! credit term (`delta`) wherever a key entity and a response entity carry
//! aligned accommodated sets. That credit is the same metric evaluated on the
//! sets' element entities, treated as a miniature key/response pair. With no
//! accommodated sets in either document every metric reduces to its standard
//! definition.
//!
//! Inputs must be validated and flattened (see [`crate::model`]).

mod b3;
mod blanc;
mod ceaf;
pub mod corpus;
mod lea;
mod muc;
mod split;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::assignment::{km_assign, ScoreMatrix, SetAlignment};
use crate::model::{DocumentSet, Entity, MentionSpan};

pub use split::{split_only_report, SplitReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Muc,
    #[serde(rename = "b3")]
    BCubed,
    #[serde(rename = "ceafm")]
    CeafM,
    #[serde(rename = "ceafe")]
    CeafE,
    Lea,
    Blanc,
}

impl Metric {
    pub const ALL: [Metric; 6] = [
        Metric::Muc,
        Metric::BCubed,
        Metric::CeafM,
        Metric::CeafE,
        Metric::Lea,
        Metric::Blanc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Metric::Muc => "muc",
            Metric::BCubed => "b3",
            Metric::CeafM => "ceafm",
            Metric::CeafE => "ceafe",
            Metric::Lea => "lea",
            Metric::Blanc => "blanc",
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Metric {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "muc" => Ok(Metric::Muc),
            "b3" | "bcub" | "bcubed" => Ok(Metric::BCubed),
            "ceafm" | "ceaf-m" => Ok(Metric::CeafM),
            "ceafe" | "ceaf-e" => Ok(Metric::CeafE),
            "lea" => Ok(Metric::Lea),
            "blanc" => Ok(Metric::Blanc),
            other => Err(format!("unknown metric `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CeafVariant {
    Mention,
    Entity,
}

/// `num / den`, with the empty-denominator convention: a component whose
/// denominator is zero scores 1 if the opposite component's denominator is
/// also zero, and 0 otherwise.
fn ratio(num: f64, den: f64, other_den: f64) -> f64 {
    if den > 0.0 {
        num / den
    } else if other_den > 0.0 {
        0.0
    } else {
        1.0
    }
}

pub(crate) fn harmonic(p: f64, r: f64) -> f64 {
    if p + r > 0.0 {
        2.0 * p * r / (p + r)
    } else {
        0.0
    }
}

/// Recall and precision as numerator/denominator pairs.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct MetricResult {
    pub recall_num: f64,
    pub recall_den: f64,
    pub precision_num: f64,
    pub precision_den: f64,
}

impl MetricResult {
    pub fn new(recall_num: f64, recall_den: f64, precision_num: f64, precision_den: f64) -> Self {
        Self {
            recall_num,
            recall_den,
            precision_num,
            precision_den,
        }
    }

    pub fn recall(&self) -> f64 {
        ratio(self.recall_num, self.recall_den, self.precision_den)
    }

    pub fn precision(&self) -> f64 {
        ratio(self.precision_num, self.precision_den, self.recall_den)
    }

    pub fn f1(&self) -> f64 {
        harmonic(self.precision(), self.recall())
    }

    /// True unless both denominators are zero.
    pub fn is_defined(&self) -> bool {
        self.recall_den > 0.0 || self.precision_den > 0.0
    }

    pub fn add(&mut self, other: &MetricResult) {
        self.recall_num += other.recall_num;
        self.recall_den += other.recall_den;
        self.precision_num += other.precision_num;
        self.precision_den += other.precision_den;
    }
}

/// BLANC keeps coreference and non-coreference links apart.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct BlancResult {
    pub coref: MetricResult,
    pub noncoref: MetricResult,
}

impl BlancResult {
    fn combine(&self, pick: impl Fn(&MetricResult) -> f64) -> f64 {
        match (self.coref.is_defined(), self.noncoref.is_defined()) {
            (true, true) => (pick(&self.coref) + pick(&self.noncoref)) / 2.0,
            (true, false) => pick(&self.coref),
            (false, true) => pick(&self.noncoref),
            (false, false) => 1.0,
        }
    }

    pub fn recall(&self) -> f64 {
        self.combine(MetricResult::recall)
    }

    pub fn precision(&self) -> f64 {
        self.combine(MetricResult::precision)
    }

    /// The BLANC score: mean of the two link-type F1 values.
    pub fn blanc(&self) -> f64 {
        self.combine(MetricResult::f1)
    }

    pub fn add(&mut self, other: &BlancResult) {
        self.coref.add(&other.coref);
        self.noncoref.add(&other.noncoref);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Score {
    Standard(MetricResult),
    Blanc(BlancResult),
}

impl Score {
    pub fn empty(metric: Metric) -> Self {
        match metric {
            Metric::Blanc => Score::Blanc(BlancResult::default()),
            _ => Score::Standard(MetricResult::default()),
        }
    }

    pub fn recall(&self) -> f64 {
        match self {
            Score::Standard(m) => m.recall(),
            Score::Blanc(b) => b.recall(),
        }
    }

    pub fn precision(&self) -> f64 {
        match self {
            Score::Standard(m) => m.precision(),
            Score::Blanc(b) => b.precision(),
        }
    }

    /// F1, or the BLANC score for BLANC.
    pub fn f1(&self) -> f64 {
        match self {
            Score::Standard(m) => m.f1(),
            Score::Blanc(b) => b.blanc(),
        }
    }

    pub fn add(&mut self, other: &Score) {
        match (self, other) {
            (Score::Standard(a), Score::Standard(b)) => a.add(b),
            (Score::Blanc(a), Score::Blanc(b)) => a.add(b),
            _ => panic!("cannot add scores of different metrics"),
        }
    }

    pub fn as_standard(&self) -> Option<&MetricResult> {
        match self {
            Score::Standard(m) => Some(m),
            Score::Blanc(_) => None,
        }
    }

    pub fn as_blanc(&self) -> Option<&BlancResult> {
        match self {
            Score::Blanc(b) => Some(b),
            Score::Standard(_) => None,
        }
    }
}

/// Importance multiplier for LEA entities that carry an accommodated set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LeaConfig {
    pub beta: f64,
}

impl Default for LeaConfig {
    fn default() -> Self {
        Self { beta: 1.0 }
    }
}

impl LeaConfig {
    pub fn with_beta(beta: f64) -> Self {
        Self { beta }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Recall,
    Precision,
    F1,
}

/// Mean of the MUC, B-cubed and entity-based CEAF F1 values.
pub fn conll_average(muc_f1: f64, b3_f1: f64, ceafe_f1: f64) -> f64 {
    (muc_f1 + b3_f1 + ceafe_f1) / 3.0
}

// ---------------------------------------------------------------------------
// Indexed view of a document set

pub(crate) struct IEntity<'a> {
    pub id: &'a str,
    pub mentions: Vec<&'a MentionSpan>,
    /// Indices of the atomic element entities of the accommodated set.
    pub set: Option<Vec<usize>>,
}

impl IEntity<'_> {
    pub fn card(&self) -> usize {
        self.mentions.len() + usize::from(self.set.is_some())
    }
}

pub(crate) struct Indexed<'a> {
    pub entities: Vec<IEntity<'a>>,
    owner: HashMap<&'a MentionSpan, usize>,
}

impl<'a> Indexed<'a> {
    pub fn new(doc: &'a DocumentSet) -> Self {
        let index: HashMap<&str, usize> = doc
            .entities
            .iter()
            .enumerate()
            .map(|(i, e)| (e.id.as_str(), i))
            .collect();
        let entities = doc
            .entities
            .iter()
            .map(|e| IEntity {
                id: &e.id,
                mentions: dedup(&e.mentions),
                set: e
                    .set_elements
                    .as_ref()
                    .map(|els| els.iter().filter_map(|id| index.get(id.as_str()).copied()).collect()),
            })
            .collect();
        Self::build(entities)
    }

    /// A set-free document made of the given entities' regular mentions.
    fn atomic<I>(parts: I) -> Self
    where
        I: IntoIterator<Item = (&'a str, &'a [MentionSpan])>,
    {
        let entities = parts
            .into_iter()
            .map(|(id, mentions)| IEntity {
                id,
                mentions: dedup(mentions),
                set: None,
            })
            .collect();
        Self::build(entities)
    }

    /// The element entities of entity `i`'s accommodated set, as a document.
    fn elements(&self, i: usize) -> Indexed<'a> {
        let els = self.entities[i].set.as_deref().unwrap_or(&[]);
        let entities = els
            .iter()
            .map(|&e| IEntity {
                id: self.entities[e].id,
                mentions: self.entities[e].mentions.clone(),
                set: None,
            })
            .collect();
        Self::build(entities)
    }

    fn build(entities: Vec<IEntity<'a>>) -> Self {
        let mut owner = HashMap::new();
        for (i, e) in entities.iter().enumerate() {
            for &m in &e.mentions {
                owner.entry(m).or_insert(i);
            }
        }
        Self { entities, owner }
    }

    pub fn owner(&self, m: &MentionSpan) -> Option<usize> {
        self.owner.get(m).copied()
    }

    pub fn has_sets(&self) -> bool {
        self.entities.iter().any(|e| e.set.is_some())
    }

    fn set_owners(&self) -> Vec<usize> {
        (0..self.entities.len())
            .filter(|&i| self.entities[i].set.is_some())
            .collect()
    }

    /// Number of regular mentions shared between `self.entities[i]` and
    /// `other.entities[j]`.
    pub fn overlap(&self, i: usize, other: &Indexed<'_>, j: usize) -> usize {
        self.entities[i]
            .mentions
            .iter()
            .filter(|m| other.owner(m) == Some(j))
            .count()
    }

    /// `(j, n)` for every entity of `other` sharing `n > 0` mentions with
    /// entity `i`, ordered by `j`.
    pub fn overlaps(&self, i: usize, other: &Indexed<'_>) -> Vec<(usize, usize)> {
        let mut counts: HashMap<usize, usize> = HashMap::new();
        for m in &self.entities[i].mentions {
            if let Some(j) = other.owner(m) {
                *counts.entry(j).or_default() += 1;
            }
        }
        let mut v: Vec<_> = counts.into_iter().collect();
        v.sort_unstable();
        v
    }
}

fn dedup(mentions: &[MentionSpan]) -> Vec<&MentionSpan> {
    let mut seen = std::collections::HashSet::new();
    mentions.iter().filter(|m| seen.insert(*m)).collect()
}

/// Number of cells in the partition of `mentions` induced by `other`: one per
/// entity of `other` intersecting `mentions`, plus one per mention `other`
/// does not contain.
pub fn partition_count(mentions: &[MentionSpan], other: &DocumentSet) -> usize {
    let other = Indexed::new(other);
    partition_cells(&dedup(mentions), &other)
}

pub(crate) fn partition_cells(mentions: &[&MentionSpan], other: &Indexed<'_>) -> usize {
    let mut hit = std::collections::HashSet::new();
    let mut missing = 0;
    for m in mentions {
        match other.owner(m) {
            Some(j) => {
                hit.insert(j);
            }
            None => missing += 1,
        }
    }
    hit.len() + missing
}

// ---------------------------------------------------------------------------
// Set alignment and sub-problems

/// An aligned pair of accommodated sets and the metric's score between their
/// element entities (key elements as key, response elements as response).
#[derive(Debug, Clone, Copy)]
pub(crate) struct AlignedSets {
    pub key: usize,
    pub response: usize,
    pub sub: Score,
}

/// Scores the element entities of key set `ki` against those of response set
/// `rj` with `metric`.
pub(crate) fn sub_score(key: &Indexed<'_>, ki: usize, response: &Indexed<'_>, rj: usize, metric: Metric) -> Score {
    score_plain(metric, &key.elements(ki), &response.elements(rj))
}

/// Scores a document pair that is known to contain no accommodated sets.
fn score_plain(metric: Metric, key: &Indexed<'_>, response: &Indexed<'_>) -> Score {
    debug_assert!(!key.has_sets() && !response.has_sets());
    score_indexed(metric, key, response, &[], LeaConfig::default())
}

/// Aligns accommodated sets by maximum cumulative sub-problem F1. Zero-F1
/// pairs are never aligned. Returns the aligned pairs ordered by key index
/// together with every computed alignment score.
pub(crate) fn set_alignment(
    key: &Indexed<'_>,
    response: &Indexed<'_>,
    metric: Metric,
) -> (Vec<(usize, usize, f64)>, Vec<AlignedSets>) {
    let rows = key.set_owners();
    let cols = response.set_owners();
    if rows.is_empty() || cols.is_empty() {
        return (Vec::new(), Vec::new());
    }
    let mut subs = vec![vec![Score::empty(metric); cols.len()]; rows.len()];
    let mut m = ScoreMatrix::zeros(rows.len(), cols.len());
    for (r, &ki) in rows.iter().enumerate() {
        for (c, &rj) in cols.iter().enumerate() {
            let s = sub_score(key, ki, response, rj, metric);
            m.set(r, c, s.f1()).expect("sub-metric F1 is finite and non-negative");
            subs[r][c] = s;
        }
    }
    let pairs = km_assign(&m);
    let aligned = pairs
        .iter()
        .map(|&(r, c)| AlignedSets {
            key: rows[r],
            response: cols[c],
            sub: subs[r][c],
        })
        .collect();
    let scored = pairs.iter().map(|&(r, c)| (rows[r], cols[c], m.get(r, c))).collect();
    (scored, aligned)
}

/// Per-side view of the set alignment: for each entity on the gold side, the
/// aligned entity on the system side and the sub-problem score.
pub(crate) struct SetLinks {
    pub to: Vec<Option<(usize, Score)>>,
}

impl SetLinks {
    fn recall_side(n: usize, aligned: &[AlignedSets]) -> Self {
        let mut to = vec![None; n];
        for a in aligned {
            to[a.key] = Some((a.response, a.sub));
        }
        Self { to }
    }

    fn precision_side(n: usize, aligned: &[AlignedSets]) -> Self {
        let mut to = vec![None; n];
        for a in aligned {
            to[a.response] = Some((a.key, a.sub));
        }
        Self { to }
    }
}

/// Which component of a sub-problem score feeds a delta term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Component {
    Recall,
    Precision,
}

impl Component {
    pub fn of(self, s: &MetricResult) -> f64 {
        match self {
            Component::Recall => s.recall(),
            Component::Precision => s.precision(),
        }
    }

    pub fn of_score(self, s: &Score) -> f64 {
        match self {
            Component::Recall => s.recall(),
            Component::Precision => s.precision(),
        }
    }
}

fn score_indexed(
    metric: Metric,
    key: &Indexed<'_>,
    response: &Indexed<'_>,
    aligned: &[AlignedSets],
    lea_cfg: LeaConfig,
) -> Score {
    let rec = SetLinks::recall_side(key.entities.len(), aligned);
    let prec = SetLinks::precision_side(response.entities.len(), aligned);
    match metric {
        Metric::Muc => {
            let (rn, rd) = muc::side(key, response, &rec, Component::Recall);
            let (pn, pd) = muc::side(response, key, &prec, Component::Precision);
            Score::Standard(MetricResult::new(rn, rd, pn, pd))
        }
        Metric::BCubed => {
            let (rn, rd) = b3::side(key, response, &rec, Component::Recall);
            let (pn, pd) = b3::side(response, key, &prec, Component::Precision);
            Score::Standard(MetricResult::new(rn, rd, pn, pd))
        }
        Metric::CeafM => Score::Standard(ceaf::score(key, response, &rec, CeafVariant::Mention)),
        Metric::CeafE => Score::Standard(ceaf::score(key, response, &rec, CeafVariant::Entity)),
        Metric::Lea => {
            let (rn, rd) = lea::side(key, response, &rec, Component::Recall, lea_cfg.beta);
            let (pn, pd) = lea::side(response, key, &prec, Component::Precision, lea_cfg.beta);
            Score::Standard(MetricResult::new(rn, rd, pn, pd))
        }
        Metric::Blanc => Score::Blanc(blanc::score(key, response, &rec, &prec)),
    }
}

/// Result of scoring one document pair with one metric, with the alignment
/// and credit terms that produced it.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub metric: Metric,
    pub score: Score,
    pub alignment: SetAlignment,
    pub deltas: Deltas,
}

/// Scores a flattened, validated document pair.
pub fn evaluate(metric: Metric, key: &DocumentSet, response: &DocumentSet, lea_cfg: LeaConfig) -> Evaluation {
    let k = Indexed::new(key);
    let r = Indexed::new(response);
    let (pairs, aligned) = set_alignment(&k, &r, metric);
    let score = score_indexed(metric, &k, &r, &aligned, lea_cfg);
    let alignment = SetAlignment {
        pairs: pairs
            .iter()
            .map(|&(i, j, s)| (k.entities[i].id.to_string(), r.entities[j].id.to_string(), s))
            .collect(),
    };
    let deltas = collect_deltas(metric, &k, &r, &aligned);
    Evaluation {
        metric,
        score,
        alignment,
        deltas,
    }
}

pub fn muc(key: &DocumentSet, response: &DocumentSet) -> MetricResult {
    standard(evaluate(Metric::Muc, key, response, LeaConfig::default()).score)
}

pub fn b3(key: &DocumentSet, response: &DocumentSet) -> MetricResult {
    standard(evaluate(Metric::BCubed, key, response, LeaConfig::default()).score)
}

pub fn ceaf(key: &DocumentSet, response: &DocumentSet, variant: CeafVariant) -> MetricResult {
    let metric = match variant {
        CeafVariant::Mention => Metric::CeafM,
        CeafVariant::Entity => Metric::CeafE,
    };
    standard(evaluate(metric, key, response, LeaConfig::default()).score)
}

pub fn lea(key: &DocumentSet, response: &DocumentSet, cfg: LeaConfig) -> MetricResult {
    standard(evaluate(Metric::Lea, key, response, cfg).score)
}

pub fn blanc(key: &DocumentSet, response: &DocumentSet) -> BlancResult {
    match evaluate(Metric::Blanc, key, response, LeaConfig::default()).score {
        Score::Blanc(b) => b,
        Score::Standard(_) => unreachable!(),
    }
}

fn standard(s: Score) -> MetricResult {
    *s.as_standard().expect("non-BLANC metric")
}

/// Evaluates `metric` between two collections of atomic entities, as if they
/// were a key and a response document, and returns the requested side.
pub fn sub_metric_eval(key_elements: &[Entity], resp_elements: &[Entity], metric: Metric, side: Side) -> f64 {
    let k = Indexed::atomic(key_elements.iter().map(|e| (e.id.as_str(), e.mentions.as_slice())));
    let r = Indexed::atomic(resp_elements.iter().map(|e| (e.id.as_str(), e.mentions.as_slice())));
    let s = score_plain(metric, &k, &r);
    match side {
        Side::Recall => s.recall(),
        Side::Precision => s.precision(),
        Side::F1 => s.f1(),
    }
}

// ---------------------------------------------------------------------------
// Credit terms exposed for auditing

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeltaKind {
    /// The single credit term of MUC, B-cubed, CEAF and LEA.
    Main,
    /// BLANC credit for coreference links.
    Coref,
    /// BLANC credit for non-coreference links.
    NonCoref,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeltaTerm {
    pub key: Option<String>,
    pub response: Option<String>,
    pub kind: DeltaKind,
    pub value: f64,
}

/// The credit terms a metric used for a document pair.
///
/// MUC lists one term per set-bearing entity (its missing-link penalty,
/// including the full penalty for unaligned sets). The other metrics list one
/// term per aligned pair; every unlisted pair has credit 0.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Deltas {
    pub recall: Vec<DeltaTerm>,
    pub precision: Vec<DeltaTerm>,
}

impl Deltas {
    pub fn recall_for(&self, key: &str, response: Option<&str>, kind: DeltaKind) -> f64 {
        find_delta(&self.recall, key, response, kind, true)
    }

    pub fn precision_for(&self, response: &str, key: Option<&str>, kind: DeltaKind) -> f64 {
        find_delta(&self.precision, response, key, kind, false)
    }
}

fn find_delta(terms: &[DeltaTerm], owner: &str, other: Option<&str>, kind: DeltaKind, owner_is_key: bool) -> f64 {
    terms
        .iter()
        .find(|t| {
            let (o, x) = if owner_is_key {
                (&t.key, &t.response)
            } else {
                (&t.response, &t.key)
            };
            t.kind == kind && o.as_deref() == Some(owner) && (other.is_none() || x.as_deref() == other)
        })
        .map_or(0.0, |t| t.value)
}

fn collect_deltas(metric: Metric, key: &Indexed<'_>, response: &Indexed<'_>, aligned: &[AlignedSets]) -> Deltas {
    let id = |d: &Indexed<'_>, i: usize| d.entities[i].id.to_string();
    let mut out = Deltas::default();
    match metric {
        Metric::Muc => {
            let rec = SetLinks::recall_side(key.entities.len(), aligned);
            let prec = SetLinks::precision_side(response.entities.len(), aligned);
            for i in key.set_owners() {
                out.recall.push(DeltaTerm {
                    key: Some(id(key, i)),
                    response: rec.to[i].map(|(j, _)| id(response, j)),
                    kind: DeltaKind::Main,
                    value: muc::delta(key, i, response, &rec, Component::Recall),
                });
            }
            for j in response.set_owners() {
                out.precision.push(DeltaTerm {
                    key: prec.to[j].map(|(i, _)| id(key, i)),
                    response: Some(id(response, j)),
                    kind: DeltaKind::Main,
                    value: muc::delta(response, j, key, &prec, Component::Precision),
                });
            }
        }
        _ => {
            for a in aligned {
                let mk = |kind, value| DeltaTerm {
                    key: Some(id(key, a.key)),
                    response: Some(id(response, a.response)),
                    kind,
                    value,
                };
                match &a.sub {
                    Score::Standard(s) => {
                        out.recall.push(mk(DeltaKind::Main, s.recall()));
                        out.precision.push(mk(DeltaKind::Main, s.precision()));
                    }
                    Score::Blanc(b) => {
                        out.recall.push(mk(DeltaKind::Coref, b.coref.recall()));
                        out.recall.push(mk(DeltaKind::NonCoref, b.noncoref.recall()));
                        out.precision.push(mk(DeltaKind::Coref, b.coref.precision()));
                        out.precision.push(mk(DeltaKind::NonCoref, b.noncoref.precision()));
                    }
                }
            }
        }
    }
    out
}

pub(crate) fn choose2(n: usize) -> f64 {
    (n * n.saturating_sub(1) / 2) as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::MentionSpan;

    fn ent(id: &str, spans: &[usize]) -> Entity {
        Entity::new(id, spans.iter().map(|&s| MentionSpan::new("d", s, s + 1)).collect())
    }

    #[test]
    fn ratio_conventions() {
        let both_empty = MetricResult::new(0.0, 0.0, 0.0, 0.0);
        assert_eq!(
            (both_empty.recall(), both_empty.precision(), both_empty.f1()),
            (1.0, 1.0, 1.0)
        );
        let one_empty = MetricResult::new(0.0, 0.0, 0.0, 2.0);
        assert_eq!(
            (one_empty.recall(), one_empty.precision(), one_empty.f1()),
            (0.0, 0.0, 0.0)
        );
    }

    #[test]
    fn blanc_falls_back_to_the_defined_component() {
        let b = BlancResult {
            coref: MetricResult::default(),
            noncoref: MetricResult::new(1.0, 2.0, 1.0, 1.0),
        };
        assert!((b.blanc() - harmonic(1.0, 0.5)).abs() < 1e-12);
        assert_eq!(BlancResult::default().blanc(), 1.0);
    }

    #[test]
    fn conll_average_examples() {
        assert_eq!(conll_average(1.0, 1.0, 1.0), 1.0);
        assert_eq!(conll_average(0.0, 0.0, 0.0), 0.0);
        assert!((conll_average(0.769, 0.775, 0.761) - 0.768).abs() < 5e-4);
    }

    #[test]
    fn partition_counts() {
        let mentions: Vec<MentionSpan> = (0..3).map(|s| MentionSpan::new("d", s, s + 1)).collect();
        let inside = DocumentSet::new("d", vec![ent("r", &[0, 1, 2, 7])]);
        assert_eq!(partition_count(&mentions, &inside), 1);
        let split = DocumentSet::new("d", vec![ent("r1", &[0]), ent("r2", &[2])]);
        assert_eq!(partition_count(&mentions, &split), 3);
        assert_eq!(partition_count(&mentions, &DocumentSet::empty("d")), 3);
    }

    #[test]
    fn metric_names_round_trip() {
        for m in Metric::ALL {
            assert_eq!(m.name().parse::<Metric>().unwrap(), m);
        }
        assert!("rouge".parse::<Metric>().is_err());
    }

    #[test]
    fn sub_metric_on_identical_collections_is_perfect() {
        let els = vec![ent("a", &[0, 1]), ent("b", &[2]), ent("c", &[3, 4, 5])];
        for m in Metric::ALL {
            for side in [Side::Recall, Side::Precision, Side::F1] {
                assert!(
                    (sub_metric_eval(&els, &els, m, side) - 1.0).abs() < 1e-12,
                    "{m} {side:?}"
                );
            }
        }
    }
}
