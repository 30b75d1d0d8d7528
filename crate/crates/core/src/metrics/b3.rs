//! Mention-based B-cubed; aligned accommodated sets count as one more shared
//! element, weighted by how well their element entities match.

use super::{Component, Indexed, SetLinks};

pub(super) fn side(gold: &Indexed<'_>, sys: &Indexed<'_>, links: &SetLinks, comp: Component) -> (f64, f64) {
    let mut num = 0.0;
    let mut den = 0.0;
    for (i, e) in gold.entities.iter().enumerate() {
        let card = e.card() as f64;
        if card == 0.0 {
            continue;
        }
        den += card;
        let linked = links.to[i].map(|(j, sub)| (j, comp.of_score(&sub)));
        let mut seen_linked = false;
        for (j, n) in gold.overlaps(i, sys) {
            let d = match linked {
                Some((lj, d)) if lj == j => {
                    seen_linked = true;
                    d
                }
                _ => 0.0,
            };
            num += (n as f64 + d).powi(2) / card;
        }
        if let (Some((_, d)), false) = (linked, seen_linked) {
            num += d * d / card;
        }
    }
    (num, den)
}
