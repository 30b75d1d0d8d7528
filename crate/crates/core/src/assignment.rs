//! Maximum-score one-to-one assignment and accommodated-set alignment.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::metrics::{self, Indexed, Metric};
use crate::model::DocumentSet;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MatrixError {
    #[error("row {row} has {got} columns, expected {expected}")]
    Ragged { row: usize, got: usize, expected: usize },
    #[error("score at ({row}, {col}) is {value}; scores must be finite and non-negative")]
    BadScore { row: usize, col: usize, value: f64 },
}

/// Dense key-by-response score matrix.
///
/// Set-alignment scores are F1 values in `[0, 1]`; entity alignment in CEAF
/// uses unnormalized overlap counts, so only finiteness and non-negativity are
/// enforced here.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl ScoreMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, MatrixError> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(MatrixError::Ragged {
                    row: r,
                    got: row.len(),
                    expected: cols,
                });
            }
            for (c, &v) in row.iter().enumerate() {
                m.set(r, c, v)?;
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: f64) -> Result<(), MatrixError> {
        if !value.is_finite() || value < 0.0 {
            return Err(MatrixError::BadScore { row, col, value });
        }
        self.data[row * self.cols + col] = value;
        Ok(())
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    /// Sum of the scores of `pairs`, added in the given order.
    pub fn total(&self, pairs: &[(usize, usize)]) -> f64 {
        pairs.iter().map(|&(r, c)| self.get(r, c)).sum()
    }
}

/// Relative tolerance used when comparing cumulative scores for ties.
const TIE_EPS: f64 = 1e-9;

fn same_total(a: f64, b: f64) -> bool {
    (a - b).abs() <= TIE_EPS * a.abs().max(b.abs()).max(1.0)
}

/// Hungarian algorithm (shortest augmenting path with potentials) for a
/// maximization problem over `rows` x `cols` with `rows <= cols`. Returns the
/// column assigned to each row.
fn hungarian(rows: usize, cols: usize, score: impl Fn(usize, usize) -> f64) -> Vec<usize> {
    debug_assert!(rows <= cols);
    if rows == 0 {
        return Vec::new();
    }
    // 1-based arrays; index 0 is the virtual source column.
    let mut u = vec![0.0f64; rows + 1];
    let mut v = vec![0.0f64; cols + 1];
    let mut col_row = vec![0usize; cols + 1];
    let mut way = vec![0usize; cols + 1];

    for i in 1..=rows {
        col_row[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![f64::INFINITY; cols + 1];
        let mut used = vec![false; cols + 1];
        loop {
            used[j0] = true;
            let i0 = col_row[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0usize;
            for j in 1..=cols {
                if used[j] {
                    continue;
                }
                let cur = -score(i0 - 1, j - 1) - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=cols {
                if used[j] {
                    u[col_row[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if col_row[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            col_row[j0] = col_row[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut row_col = vec![0usize; rows];
    for j in 1..=cols {
        if col_row[j] != 0 {
            row_col[col_row[j] - 1] = j - 1;
        }
    }
    row_col
}

/// Optimal assignment restricted to the given rows and columns. Returns the
/// positive-score pairs (as original indices) and their total.
fn solve_subset(m: &ScoreMatrix, rows: &[usize], cols: &[usize]) -> (Vec<(usize, usize)>, f64) {
    if rows.is_empty() || cols.is_empty() {
        return (Vec::new(), 0.0);
    }
    let mut pairs: Vec<(usize, usize)> = if rows.len() <= cols.len() {
        hungarian(rows.len(), cols.len(), |r, c| m.get(rows[r], cols[c]))
            .into_iter()
            .enumerate()
            .map(|(r, c)| (rows[r], cols[c]))
            .collect()
    } else {
        hungarian(cols.len(), rows.len(), |c, r| m.get(rows[r], cols[c]))
            .into_iter()
            .enumerate()
            .map(|(c, r)| (rows[r], cols[c]))
            .collect()
    };
    pairs.retain(|&(r, c)| m.get(r, c) > 0.0);
    pairs.sort_unstable();
    let total = m.total(&pairs);
    (pairs, total)
}

/// Splits rows and columns into connected components of the bipartite graph
/// whose edges are the positive-score cells.
fn components(m: &ScoreMatrix) -> Vec<(Vec<usize>, Vec<usize>)> {
    let n = m.rows + m.cols;
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut root = x;
        while parent[root] != root {
            root = parent[root];
        }
        let mut cur = x;
        while parent[cur] != root {
            let next = parent[cur];
            parent[cur] = root;
            cur = next;
        }
        root
    }
    for r in 0..m.rows {
        for c in 0..m.cols {
            if m.get(r, c) > 0.0 {
                let a = find(&mut parent, r);
                let b = find(&mut parent, m.rows + c);
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for r in 0..m.rows {
        let root = find(&mut parent, r);
        groups.entry(root).or_default().0.push(r);
    }
    for c in 0..m.cols {
        let root = find(&mut parent, m.rows + c);
        groups.entry(root).or_default().1.push(c);
    }
    groups
        .into_values()
        .filter(|(rs, cs)| !rs.is_empty() && !cs.is_empty())
        .collect()
}

/// Finds the one-to-one pairing of rows and columns with maximum total score.
///
/// Zero-score pairs are left out of the result. Among optimal pairings the
/// lexicographically smallest sorted pair list is returned, so a row prefers
/// being matched, and to the lowest column it can take without losing score.
pub fn km_assign(m: &ScoreMatrix) -> Vec<(usize, usize)> {
    let mut result = Vec::new();
    for (rows, cols) in components(m) {
        result.extend(lexicographic_optimum(m, &rows, &cols));
    }
    result.sort_unstable();
    result
}

fn lexicographic_optimum(m: &ScoreMatrix, rows: &[usize], cols: &[usize]) -> Vec<(usize, usize)> {
    let (mut current, best) = solve_subset(m, rows, cols);
    let mut fixed: Vec<(usize, usize)> = Vec::new();
    let mut fixed_total = 0.0;
    let mut free_cols: Vec<usize> = cols.to_vec();

    for (k, &r) in rows.iter().enumerate() {
        let rest_rows = &rows[k + 1..];
        let assigned = current.iter().find(|p| p.0 == r).map(|p| p.1);
        let mut choice = assigned;
        for &c in &free_cols {
            if Some(c) == assigned {
                break;
            }
            let s = m.get(r, c);
            if s <= 0.0 {
                continue;
            }
            let others: Vec<usize> = free_cols.iter().copied().filter(|&x| x != c).collect();
            let (sub, sub_total) = solve_subset(m, rest_rows, &others);
            if same_total(fixed_total + s + sub_total, best) {
                choice = Some(c);
                let mut next = fixed.clone();
                next.push((r, c));
                next.extend(sub);
                current = next;
                break;
            }
        }
        if let Some(c) = choice {
            fixed.push((r, c));
            fixed_total += m.get(r, c);
            free_cols.retain(|&x| x != c);
        }
    }
    fixed
}

/// Partial one-to-one mapping between key and response accommodated sets,
/// identified by the ids of the entities that own them.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SetAlignment {
    /// `(key owner id, response owner id, alignment score)`, ordered by key.
    pub pairs: Vec<(String, String, f64)>,
}

impl SetAlignment {
    pub fn response_for(&self, key_id: &str) -> Option<&str> {
        self.pairs.iter().find(|p| p.0 == key_id).map(|p| p.1.as_str())
    }

    pub fn key_for(&self, response_id: &str) -> Option<&str> {
        self.pairs.iter().find(|p| p.1 == response_id).map(|p| p.0.as_str())
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Aligns the accommodated sets of `key` and `response` by maximizing the
/// summed `metric` F1 between their element entities. Both sides must be
/// validated and flattened.
pub fn align_sets(key: &DocumentSet, response: &DocumentSet, metric: Metric) -> SetAlignment {
    let k = Indexed::new(key);
    let r = Indexed::new(response);
    let (pairs, _) = metrics::set_alignment(&k, &r, metric);
    SetAlignment {
        pairs: pairs
            .into_iter()
            .map(|(i, j, s)| (k.entities[i].id.to_string(), r.entities[j].id.to_string(), s))
            .collect(),
    }
}
