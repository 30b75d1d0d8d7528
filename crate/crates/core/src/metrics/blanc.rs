//! BLANC over coreference and non-coreference links.
//!
//! Each entity contributes its regular mentions plus, if present, one node for
//! its accommodated set. A gold link earns credit from the system link joining
//! the images of its two nodes: a regular mention maps to the same mention, a
//! set node to the aligned system set. The credit is the product of the node
//! weights, where mentions weigh 1 and a set node weighs the BLANC sub-problem
//! component for the link type and side being computed. Well-formed input maps
//! distinct nodes to distinct nodes, so every gold link has at most one
//! matching system link and the credits can be summed per group.

use std::collections::BTreeMap;

use super::{choose2, BlancResult, Component, Indexed, MetricResult, SetLinks};

/// Sum of `w_u * w_v` over unordered pairs drawn from `weights`.
#[derive(Debug, Default, Clone, Copy)]
struct PairSum {
    sum: f64,
    sum_sq: f64,
}

impl PairSum {
    fn push(&mut self, w: f64) {
        self.sum += w;
        self.sum_sq += w * w;
    }

    fn pairs(&self) -> f64 {
        (self.sum * self.sum - self.sum_sq) / 2.0
    }
}

/// Credited coreference and non-coreference links of `gold` found in `sys`.
fn credits(gold: &Indexed<'_>, sys: &Indexed<'_>, links: &SetLinks, comp: Component) -> (f64, f64) {
    // (gold entity, sys entity) -> weights for coref and non-coref credit.
    let mut groups: BTreeMap<(usize, usize), (PairSum, PairSum)> = BTreeMap::new();
    for (i, e) in gold.entities.iter().enumerate() {
        for m in &e.mentions {
            if let Some(j) = sys.owner(m) {
                let g = groups.entry((i, j)).or_default();
                g.0.push(1.0);
                g.1.push(1.0);
            }
        }
        if let Some((j, sub)) = links.to[i] {
            let b = sub.as_blanc().expect("BLANC sub-problem");
            let g = groups.entry((i, j)).or_default();
            g.0.push(comp.of(&b.coref));
            g.1.push(comp.of(&b.noncoref));
        }
    }

    let mut coref = 0.0;
    let mut all = PairSum::default();
    let mut by_gold: BTreeMap<usize, PairSum> = BTreeMap::new();
    let mut by_sys: BTreeMap<usize, PairSum> = BTreeMap::new();
    let mut both = 0.0;
    for (&(i, j), (c, n)) in &groups {
        coref += c.pairs();
        both += n.pairs();
        all.sum += n.sum;
        all.sum_sq += n.sum_sq;
        let g = by_gold.entry(i).or_default();
        g.sum += n.sum;
        g.sum_sq += n.sum_sq;
        let s = by_sys.entry(j).or_default();
        s.sum += n.sum;
        s.sum_sq += n.sum_sq;
    }
    let same_gold: f64 = by_gold.values().map(PairSum::pairs).sum();
    let same_sys: f64 = by_sys.values().map(PairSum::pairs).sum();
    let noncoref = all.pairs() - same_gold - same_sys + both;
    (coref, noncoref.max(0.0))
}

/// Sizes of the coreference and non-coreference link sets.
fn link_counts(d: &Indexed<'_>) -> (f64, f64) {
    let coref: f64 = d.entities.iter().map(|e| choose2(e.card())).sum();
    let nodes: usize = d.entities.iter().map(|e| e.card()).sum();
    (coref, choose2(nodes) - coref)
}

pub(super) fn score(key: &Indexed<'_>, response: &Indexed<'_>, rec: &SetLinks, prec: &SetLinks) -> BlancResult {
    let (rc, rn) = credits(key, response, rec, Component::Recall);
    let (pc, pn) = credits(response, key, prec, Component::Precision);
    let (kc, kn) = link_counts(key);
    let (sc, sn) = link_counts(response);
    BlancResult {
        coref: MetricResult::new(rc, kc, pc, sc),
        noncoref: MetricResult::new(rn, kn, pn, sn),
    }
}
