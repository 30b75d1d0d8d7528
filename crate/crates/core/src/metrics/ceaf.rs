//! Entity-level CEAF. Key and response entities are aligned one-to-one by
//! Kuhn-Munkres on the similarity function; aligned accommodated sets add
//! their sub-problem score to the overlap count.

use super::{CeafVariant, Component, Indexed, MetricResult, SetLinks};
use crate::assignment::{km_assign, ScoreMatrix};

fn phi(variant: CeafVariant, overlap: f64, gold_card: usize, sys_card: usize) -> f64 {
    match variant {
        CeafVariant::Mention => overlap,
        CeafVariant::Entity => {
            let size = (gold_card + sys_card) as f64;
            if size > 0.0 {
                2.0 * overlap / size
            } else {
                0.0
            }
        }
    }
}

/// Sub-problem credit between key entity `i` and response entity `j`, or 0
/// when their sets are not aligned to each other.
fn credit(rec: &SetLinks, i: usize, j: usize, pick: impl Fn(&super::Score) -> f64) -> f64 {
    match rec.to[i] {
        Some((lj, sub)) if lj == j => pick(&sub),
        _ => 0.0,
    }
}

pub(super) fn score(key: &Indexed<'_>, response: &Indexed<'_>, rec: &SetLinks, variant: CeafVariant) -> MetricResult {
    let mut m = ScoreMatrix::zeros(key.entities.len(), response.entities.len());
    let mut overlap = Vec::with_capacity(key.entities.len());
    for i in 0..key.entities.len() {
        let mut cells = key.overlaps(i, response);
        if let Some((j, _)) = rec.to[i] {
            if !cells.iter().any(|&(c, _)| c == j) {
                cells.push((j, 0));
            }
        }
        for &(j, n) in &cells {
            // One alignment serves both recall and precision, so it is built
            // with the F1 of the sub-problem.
            let d = credit(rec, i, j, |s| s.f1());
            let s = phi(
                variant,
                n as f64 + d,
                key.entities[i].card(),
                response.entities[j].card(),
            );
            m.set(i, j, s).expect("similarity is finite and non-negative");
        }
        overlap.push(cells);
    }

    let mut recall_num = 0.0;
    let mut precision_num = 0.0;
    for (i, j) in km_assign(&m) {
        let n = overlap[i].iter().find(|c| c.0 == j).map_or(0, |c| c.1) as f64;
        let (gc, sc) = (key.entities[i].card(), response.entities[j].card());
        recall_num += phi(
            variant,
            n + credit(rec, i, j, |s| Component::Recall.of_score(s)),
            gc,
            sc,
        );
        precision_num += phi(
            variant,
            n + credit(rec, i, j, |s| Component::Precision.of_score(s)),
            gc,
            sc,
        );
    }

    let self_sim = |d: &Indexed<'_>| -> f64 {
        d.entities
            .iter()
            .filter(|e| e.card() > 0)
            .map(|e| phi(variant, e.card() as f64, e.card(), e.card()))
            .sum()
    };
    MetricResult::new(recall_num, self_sim(key), precision_num, self_sim(response))
}
