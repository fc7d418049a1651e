//! Sparse integer matrices with exact rank over the rationals.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Row-major sparse matrix; each row is sorted by column with no zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, i64)>>,
}

impl SparseIntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    /// Builds from `(row, col, value)` triplets, summing repeats.
    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, i64)>,
    {
        let mut acc: Vec<BTreeMap<usize, i64>> = vec![BTreeMap::new(); rows];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "entry ({r},{c}) outside {rows}x{cols}");
            *acc[r].entry(c).or_insert(0) += v;
        }
        let data = acc
            .into_iter()
            .map(|row| row.into_iter().filter(|(_, v)| *v != 0).collect())
            .collect();
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r]
            .binary_search_by_key(&c, |(k, _)| *k)
            .map(|i| self.data[r][i].1)
            .unwrap_or(0)
    }

    pub fn row(&self, r: usize) -> &[(usize, i64)] {
        &self.data[r]
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |&(c, v)| (r, c, v)))
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "shape mismatch");
        let triplets = self.entries().flat_map(|(r, k, v)| {
            rhs.data[k].iter().map(move |&(c, w)| (r, c, v * w))
        });
        Self::from_triplets(self.rows, rhs.cols, triplets)
    }

    /// Rank over Q.
    ///
    /// Integer elimination on unit (+-1) pivots comes first; it keeps entries
    /// integral and is exact. Rows left without a unit entry, or whose entries
    /// would overflow, go through rational elimination.
    pub fn rank(&self) -> usize {
        let mut elim = UnitEliminator::new(self);
        let rank = elim.run();
        rank + rational_rank(elim.into_remaining())
    }

    /// Rank by rational row reduction alone.
    pub fn rank_rational(&self) -> usize {
        rational_rank(self.data.clone())
    }
}

struct UnitEliminator {
    rows: Vec<Vec<(usize, i64)>>,
    col_rows: Vec<BTreeSet<usize>>,
    by_len: BTreeSet<(usize, usize)>,
}

impl UnitEliminator {
    fn new(m: &SparseIntMatrix) -> Self {
        let mut col_rows = vec![BTreeSet::new(); m.cols];
        let mut by_len = BTreeSet::new();
        for (r, row) in m.data.iter().enumerate() {
            for &(c, _) in row {
                col_rows[c].insert(r);
            }
            if !row.is_empty() {
                by_len.insert((row.len(), r));
            }
        }
        Self {
            rows: m.data.clone(),
            col_rows,
            by_len,
        }
    }

    /// Shortest row with a unit entry; within it, the sparsest column.
    fn pick(&self) -> Option<(usize, usize, i64)> {
        for &(_, r) in &self.by_len {
            let best = self.rows[r]
                .iter()
                .filter(|(_, v)| v.abs() == 1)
                .min_by_key(|(c, _)| self.col_rows[*c].len());
            if let Some(&(c, v)) = best {
                return Some((r, c, v));
            }
        }
        None
    }

    fn run(&mut self) -> usize {
        let mut rank = 0;
        while let Some((pr, pc, pv)) = self.pick() {
            let pivot = std::mem::take(&mut self.rows[pr]);
            self.by_len.remove(&(pivot.len(), pr));
            for &(c, _) in &pivot {
                self.col_rows[c].remove(&pr);
            }
            let targets: Vec<usize> = self.col_rows[pc].iter().copied().collect();
            for r in targets {
                let v = self.rows[r]
                    .binary_search_by_key(&pc, |e| e.0)
                    .map(|i| self.rows[r][i].1)
                    .expect("column index is in sync");
                let done = v.checked_mul(pv).is_some_and(|k| self.eliminate(r, k, &pivot));
                if !done {
                    // overflow: hand the pivot back for the rational pass
                    self.rows[pr] = pivot;
                    return rank;
                }
            }
            rank += 1;
        }
        rank
    }

    /// `row[r] -= k * pivot`; false (row untouched) on overflow.
    fn eliminate(&mut self, r: usize, k: i64, pivot: &[(usize, i64)]) -> bool {
        let old = &self.rows[r];
        let mut out = Vec::with_capacity(old.len() + pivot.len());
        let (mut i, mut j) = (0, 0);
        while i < old.len() || j < pivot.len() {
            if j >= pivot.len() || (i < old.len() && old[i].0 < pivot[j].0) {
                out.push(old[i]);
                i += 1;
                continue;
            }
            let Some(kp) = k.checked_mul(pivot[j].1) else {
                return false;
            };
            if i >= old.len() || pivot[j].0 < old[i].0 {
                let Some(v) = 0i64.checked_sub(kp) else {
                    return false;
                };
                out.push((pivot[j].0, v));
                j += 1;
            } else {
                let Some(v) = old[i].1.checked_sub(kp) else {
                    return false;
                };
                if v != 0 {
                    out.push((old[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        let old = std::mem::replace(&mut self.rows[r], out);
        self.by_len.remove(&(old.len(), r));
        for &(c, _) in &old {
            self.col_rows[c].remove(&r);
        }
        for &(c, _) in &self.rows[r] {
            self.col_rows[c].insert(r);
        }
        if !self.rows[r].is_empty() {
            self.by_len.insert((self.rows[r].len(), r));
        }
        true
    }

    fn into_remaining(self) -> Vec<Vec<(usize, i64)>> {
        self.rows.into_iter().filter(|r| !r.is_empty()).collect()
    }
}

fn rational_rank(rows: Vec<Vec<(usize, i64)>>) -> usize {
    let mut pivots: HashMap<usize, Vec<(usize, BigRational)>> = HashMap::new();
    let mut rank = 0;
    for row in rows {
        let mut r: Vec<(usize, BigRational)> = row
            .into_iter()
            .map(|(c, v)| (c, BigRational::from_integer(BigInt::from(v))))
            .collect();
        while let Some((lead, lead_val)) = r.first().cloned() {
            match pivots.get(&lead) {
                Some(p) => r = axpy(&r, &lead_val, p),
                None => {
                    let inv = lead_val.recip();
                    for (_, v) in r.iter_mut() {
                        *v *= &inv;
                    }
                    pivots.insert(lead, r);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

/// `r - k * p` for rows sorted by column; the result drops exact zeros.
fn axpy(
    r: &[(usize, BigRational)],
    k: &BigRational,
    p: &[(usize, BigRational)],
) -> Vec<(usize, BigRational)> {
    debug_assert!(p.first().map(|(_, v)| v.is_one()).unwrap_or(false));
    let mut out = Vec::with_capacity(r.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < p.len() {
        let take_r = j >= p.len() || (i < r.len() && r[i].0 < p[j].0);
        let take_p = i >= r.len() || (j < p.len() && p[j].0 < r[i].0);
        if take_r {
            out.push(r[i].clone());
            i += 1;
        } else if take_p {
            out.push((p[j].0, -(k * &p[j].1)));
            j += 1;
        } else {
            let v = &r[i].1 - k * &p[j].1;
            if !v.is_zero() {
                out.push((r[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rank_of_small_matrices() {
        let m = SparseIntMatrix::from_triplets(
            3,
            3,
            [(0, 0, 1), (0, 1, 2), (1, 0, 2), (1, 1, 4), (2, 2, -1)],
        );
        assert_eq!(m.rank(), 2);
        assert_eq!(SparseIntMatrix::zeros(4, 2).rank(), 0);
        let id = SparseIntMatrix::from_triplets(3, 3, (0..3).map(|i| (i, i, 1)));
        assert_eq!(id.rank(), 3);
    }

    #[test]
    fn rank_needs_rationals() {
        // rows (2,3), (3,2): determinant -5, rank 2
        let m = SparseIntMatrix::from_triplets(2, 2, [(0, 0, 2), (0, 1, 3), (1, 0, 3), (1, 1, 2)]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn duplicate_triplets_sum() {
        let m = SparseIntMatrix::from_triplets(1, 2, [(0, 0, 1), (0, 0, -1), (0, 1, 1), (0, 1, 1)]);
        assert_eq!(m.get(0, 0), 0);
        assert_eq!(m.get(0, 1), 2);
        assert_eq!(m.nnz(), 1);
    }

    #[test]
    fn overflow_falls_back_to_rationals() {
        let big = i64::MAX / 2 + 7;
        let m = SparseIntMatrix::from_triplets(
            3,
            3,
            [(0, 0, 1), (0, 1, big), (1, 0, 3), (1, 1, 1), (1, 2, 1), (2, 1, big), (2, 2, 5)],
        );
        assert_eq!(m.rank(), m.rank_rational());
    }

    proptest! {
        #[test]
        fn unit_elimination_agrees_with_rational_rank(
            entries in proptest::collection::vec((0usize..7, 0usize..6, -2i64..=2), 0..30)
        ) {
            let m = SparseIntMatrix::from_triplets(7, 6, entries);
            prop_assert_eq!(m.rank(), m.rank_rational());
        }
    }

    #[test]
    fn product() {
        let a = SparseIntMatrix::from_triplets(1, 2, [(0, 0, 1), (0, 1, 1)]);
        let b = SparseIntMatrix::from_triplets(2, 1, [(0, 0, 1), (1, 0, -1)]);
        assert!(a.mul(&b).is_zero());
    }
}
