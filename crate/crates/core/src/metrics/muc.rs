//! Link-based MUC with a missing-link penalty for accommodated sets.

use super::{partition_cells, Component, Indexed, SetLinks};

/// Penalty for gold entity `i`'s link to its accommodated set. Zero for
/// entities without a set; otherwise one minus the sub-problem component when
/// the aligned system set is owned by an entity sharing a regular mention with
/// entity `i`, and the full penalty of 1 in every other case.
pub(super) fn delta(gold: &Indexed<'_>, i: usize, sys: &Indexed<'_>, links: &SetLinks, side: Component) -> f64 {
    if gold.entities[i].set.is_none() {
        return 0.0;
    }
    match links.to[i] {
        Some((j, sub)) if gold.overlap(i, sys, j) > 0 => 1.0 - side.of_score(&sub),
        _ => 1.0,
    }
}

/// Numerator and denominator of MUC recall of `gold` against `sys`; precision
/// is the same computation with the roles swapped.
pub(super) fn side(gold: &Indexed<'_>, sys: &Indexed<'_>, links: &SetLinks, comp: Component) -> (f64, f64) {
    let mut num = 0.0;
    let mut den = 0.0;
    for (i, e) in gold.entities.iter().enumerate() {
        let card = e.card() as f64;
        let cells = partition_cells(&e.mentions, sys) as f64;
        if card == 0.0 {
            continue;
        }
        num += card - cells - delta(gold, i, sys, links, comp);
        den += card - 1.0;
    }
    (num, den)
}
