//! Link-based entity-aware LEA with set-aware link counting.

use super::{choose2, Component, Indexed, SetLinks};

/// Numerator and denominator of LEA recall of `gold` against `sys`.
///
/// Importance is `beta * |K|` for set-bearing entities and `|K|` otherwise.
/// Links shared with system entity `j` are `C(n, 2) + delta * n`, where `n`
/// counts shared regular mentions and `delta` is the sub-problem credit of an
/// aligned set, so a perfectly resolved set yields `C(n + 1, 2)`. Singleton
/// entities carry one self-link, recovered when the system has the same
/// mention as a singleton.
pub(super) fn side(gold: &Indexed<'_>, sys: &Indexed<'_>, links: &SetLinks, comp: Component, beta: f64) -> (f64, f64) {
    let mut num = 0.0;
    let mut den = 0.0;
    for (i, e) in gold.entities.iter().enumerate() {
        let card = e.card();
        if card == 0 {
            continue;
        }
        let importance = if e.set.is_some() { beta } else { 1.0 } * card as f64;

        let resolution = if card == 1 {
            let recovered = e
                .mentions
                .first()
                .and_then(|m| sys.owner(m))
                .is_some_and(|j| sys.entities[j].card() == 1);
            f64::from(u8::from(recovered))
        } else {
            let linked = links.to[i].map(|(j, sub)| (j, comp.of_score(&sub)));
            let common: f64 = gold
                .overlaps(i, sys)
                .into_iter()
                .map(|(j, n)| {
                    let d = match linked {
                        Some((lj, d)) if lj == j => d,
                        _ => 0.0,
                    };
                    choose2(n) + d * n as f64
                })
                .sum();
            common / choose2(card)
        };
        num += importance * resolution;
        den += importance;
    }
    (num, den)
}
