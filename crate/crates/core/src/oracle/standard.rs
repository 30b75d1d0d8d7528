use std::collections::BTreeSet;

use super::{brute_force_assignment, OracleError};
use crate::assignment::ScoreMatrix;
use crate::metrics::Metric;
use crate::model::DocumentSet;

type Mention = (usize, usize);
type Cluster = BTreeSet<Mention>;
type Links = BTreeSet<(Mention, Mention)>;

/// A reference score. `parts` holds `(recall_num, recall_den, precision_num,
/// precision_den)` per component: one for most metrics, coreference then
/// non-coreference links for BLANC.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleScore {
    pub recall: f64,
    pub precision: f64,
    pub f1: f64,
    pub parts: Vec<[f64; 4]>,
}

fn clusters(doc: &DocumentSet) -> Result<Vec<Cluster>, OracleError> {
    let mut out = Vec::new();
    for e in &doc.entities {
        if e.set_elements.is_some() {
            return Err(OracleError::HasSets(e.id.clone()));
        }
        let c: Cluster = e.mentions.iter().map(|m| (m.start, m.end)).collect();
        if !c.is_empty() {
            out.push(c);
        }
    }
    Ok(out)
}

fn divide(num: f64, den: f64, other_den: f64) -> f64 {
    if den == 0.0 {
        if other_den == 0.0 {
            1.0
        } else {
            0.0
        }
    } else {
        num / den
    }
}

fn f_measure(p: f64, r: f64) -> f64 {
    if p == 0.0 && r == 0.0 {
        0.0
    } else {
        2.0 * p * r / (p + r)
    }
}

fn single(part: [f64; 4]) -> OracleScore {
    let recall = divide(part[0], part[1], part[3]);
    let precision = divide(part[2], part[3], part[1]);
    OracleScore {
        recall,
        precision,
        f1: f_measure(precision, recall),
        parts: vec![part],
    }
}

fn muc_recall(key: &[Cluster], response: &[Cluster]) -> (f64, f64) {
    let mut num = 0.0;
    let mut den = 0.0;
    for k in key {
        let mut cells: Vec<Cluster> = Vec::new();
        for r in response {
            let common: Cluster = k.intersection(r).copied().collect();
            if !common.is_empty() {
                cells.push(common);
            }
        }
        for m in k {
            if !response.iter().any(|r| r.contains(m)) {
                cells.push(BTreeSet::from([*m]));
            }
        }
        num += (k.len() - cells.len()) as f64;
        den += (k.len() - 1) as f64;
    }
    (num, den)
}

fn b3_recall(key: &[Cluster], response: &[Cluster]) -> (f64, f64) {
    let mut num = 0.0;
    let mut den = 0.0;
    for k in key {
        for r in response {
            let n = k.intersection(r).count() as f64;
            num += n * n / k.len() as f64;
        }
        den += k.len() as f64;
    }
    (num, den)
}

fn ceaf(key: &[Cluster], response: &[Cluster], entity_based: bool) -> Result<[f64; 4], OracleError> {
    let phi = |a: &Cluster, b: &Cluster| {
        let n = a.intersection(b).count() as f64;
        if entity_based {
            2.0 * n / (a.len() + b.len()) as f64
        } else {
            n
        }
    };
    let rows: Vec<Vec<f64>> = key
        .iter()
        .map(|k| response.iter().map(|r| phi(k, r)).collect())
        .collect();
    let best = if key.is_empty() || response.is_empty() {
        0.0
    } else {
        brute_force_assignment(&ScoreMatrix::from_rows(&rows).expect("rectangular, finite"))?
    };
    let self_sum = |cs: &[Cluster]| cs.iter().map(|c| phi(c, c)).sum::<f64>();
    Ok([best, self_sum(key), best, self_sum(response)])
}

fn lea_recall(key: &[Cluster], response: &[Cluster]) -> (f64, f64) {
    let links = |n: usize| (n * n.saturating_sub(1) / 2) as f64;
    let mut num = 0.0;
    let mut den = 0.0;
    for k in key {
        let size = k.len() as f64;
        let resolution = if k.len() == 1 {
            let m = k.iter().next().unwrap();
            if response.iter().any(|r| r.len() == 1 && r.contains(m)) {
                1.0
            } else {
                0.0
            }
        } else {
            let common: f64 = response.iter().map(|r| links(k.intersection(r).count())).sum();
            common / links(k.len())
        };
        num += size * resolution;
        den += size;
    }
    (num, den)
}

fn blanc(key: &[Cluster], response: &[Cluster]) -> OracleScore {
    fn link_sets(cs: &[Cluster]) -> (Links, Links) {
        let mut coref = BTreeSet::new();
        let mut non = BTreeSet::new();
        let all: Vec<(usize, Mention)> = cs
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.iter().map(move |m| (i, *m)))
            .collect();
        for a in 0..all.len() {
            for b in a + 1..all.len() {
                let (x, y) = (all[a].1.min(all[b].1), all[a].1.max(all[b].1));
                if all[a].0 == all[b].0 {
                    coref.insert((x, y));
                } else {
                    non.insert((x, y));
                }
            }
        }
        (coref, non)
    }
    let (kc, kn) = link_sets(key);
    let (rc, rn) = link_sets(response);
    let c_common = kc.intersection(&rc).count() as f64;
    let n_common = kn.intersection(&rn).count() as f64;
    let c = [c_common, kc.len() as f64, c_common, rc.len() as f64];
    let n = [n_common, kn.len() as f64, n_common, rn.len() as f64];
    let c_defined = !kc.is_empty() || !rc.is_empty();
    let n_defined = !kn.is_empty() || !rn.is_empty();
    let sc = single(c);
    let sn = single(n);
    let mix = |a: f64, b: f64| match (c_defined, n_defined) {
        (true, true) => (a + b) / 2.0,
        (true, false) => a,
        (false, true) => b,
        (false, false) => 1.0,
    };
    OracleScore {
        recall: mix(sc.recall, sn.recall),
        precision: mix(sc.precision, sn.precision),
        f1: mix(sc.f1, sn.f1),
        parts: vec![c, n],
    }
}

/// Standard (set-free) value of `metric` for `response` against `key`.
pub fn standard_metric(metric: Metric, key: &DocumentSet, response: &DocumentSet) -> Result<OracleScore, OracleError> {
    let k = clusters(key)?;
    let r = clusters(response)?;
    let by_recall = |f: fn(&[Cluster], &[Cluster]) -> (f64, f64)| {
        let (rn, rd) = f(&k, &r);
        let (pn, pd) = f(&r, &k);
        single([rn, rd, pn, pd])
    };
    Ok(match metric {
        Metric::Muc => by_recall(muc_recall),
        Metric::BCubed => by_recall(b3_recall),
        Metric::CeafM => single(ceaf(&k, &r, false)?),
        Metric::CeafE => single(ceaf(&k, &r, true)?),
        Metric::Lea => by_recall(lea_recall),
        Metric::Blanc => blanc(&k, &r),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Entity, MentionSpan};

    fn doc(chains: &[&[usize]]) -> DocumentSet {
        DocumentSet::new(
            "d",
            chains
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    Entity::new(
                        format!("e{i}"),
                        c.iter().map(|&s| MentionSpan::new("d", s, s + 1)).collect(),
                    )
                })
                .collect(),
        )
    }

    #[test]
    fn identity_is_perfect() {
        let d = doc(&[&[0, 1, 2], &[3], &[4, 5]]);
        for m in Metric::ALL {
            let s = standard_metric(m, &d, &d).unwrap();
            assert_eq!((s.recall, s.precision, s.f1), (1.0, 1.0, 1.0), "{m}");
        }
    }

    #[test]
    fn muc_split_chain() {
        let key = doc(&[&[0, 1, 2]]);
        let resp = doc(&[&[0, 1], &[2]]);
        let s = standard_metric(Metric::Muc, &key, &resp).unwrap();
        assert_eq!((s.recall, s.precision), (0.5, 1.0));
        // B3: key chain of 3 split 2+1 gives (4 + 1) / 3 / 3 recall.
        let s = standard_metric(Metric::BCubed, &key, &resp).unwrap();
        assert!((s.recall - 5.0 / 9.0).abs() < 1e-12);
        assert_eq!(s.precision, 1.0);
    }

    #[test]
    fn rejects_sets() {
        let d = DocumentSet::new(
            "d",
            vec![
                Entity::new("a", vec![MentionSpan::new("d", 0, 1)]),
                Entity::new("b", vec![MentionSpan::new("d", 1, 2)]),
                Entity::new("c", vec![MentionSpan::new("d", 2, 3)]).with_set(["a", "b"]),
            ],
        );
        assert_eq!(
            standard_metric(Metric::Muc, &d, &d),
            Err(OracleError::HasSets("c".into()))
        );
    }
}
