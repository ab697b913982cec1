//! Sparse Gaussian elimination with Markowitz pivoting, generic over the
//! row arithmetic (prime field or fraction-free integers).

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::modular::Prime;

/// Columns with the minimal count examined per Markowitz search.
const MARKOWITZ_CANDIDATES: usize = 4;

pub(crate) trait RowArith {
    type E: Clone;

    fn is_zero(&self, e: &Self::E) -> bool;

    /// Brings a freshly chosen pivot row into the form `eliminate` expects.
    fn prepare_pivot(&self, row: &mut [(usize, Self::E)], col: usize);

    /// Removes column `col` from `target` using the prepared pivot row.
    fn eliminate(
        &self,
        pivot: &[(usize, Self::E)],
        target: &[(usize, Self::E)],
        col: usize,
    ) -> Vec<(usize, Self::E)>;
}

/// Elimination over `GF(p)`; pivot rows are scaled to a unit pivot.
pub(crate) struct ModArith(pub Prime);

impl RowArith for ModArith {
    type E = u64;

    fn is_zero(&self, e: &u64) -> bool {
        *e == 0
    }

    fn prepare_pivot(&self, row: &mut [(usize, u64)], col: usize) {
        let inv = self.0.inv(value_at(row, col));
        if inv == 1 {
            return;
        }
        for (_, v) in row.iter_mut() {
            *v = self.0.mul(*v, inv);
        }
    }

    fn eliminate(&self, pivot: &[(usize, u64)], target: &[(usize, u64)], col: usize) -> Vec<(usize, u64)> {
        let p = &self.0;
        let f = p.neg(*value_at(target, col));
        let scale = |a: u64| match f {
            1 => a,
            f if f == p.value() - 1 => p.neg(a),
            f => p.mul(a, f),
        };
        merge(pivot, target, |a, b| match (a, b) {
            (Some(a), Some(b)) => p.add(*b, scale(*a)),
            (Some(a), None) => scale(*a),
            (None, Some(b)) => *b,
            (None, None) => 0,
        }, |v| *v == 0)
    }
}

/// Integer-preserving elimination: `target ← a·target − b·pivot` with the
/// common factor of `a, b` removed, then the row content divided out.
pub(crate) struct FractionFree;

impl RowArith for FractionFree {
    type E = BigInt;

    fn is_zero(&self, e: &BigInt) -> bool {
        e.is_zero()
    }

    fn prepare_pivot(&self, row: &mut [(usize, BigInt)], _col: usize) {
        make_primitive(row);
    }

    fn eliminate(&self, pivot: &[(usize, BigInt)], target: &[(usize, BigInt)], col: usize) -> Vec<(usize, BigInt)> {
        let a = value_at(pivot, col);
        let b = value_at(target, col);
        let g = a.gcd(b);
        let (sa, sb) = (a / &g, b / &g);
        let mut out = merge(pivot, target, |p, t| {
            let mut acc = BigInt::zero();
            if let Some(t) = t {
                acc += &sa * t;
            }
            if let Some(p) = p {
                acc -= &sb * p;
            }
            acc
        }, Zero::is_zero);
        make_primitive(&mut out);
        out
    }
}

fn make_primitive(row: &mut [(usize, BigInt)]) {
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() {
        return;
    }
    for (_, v) in row.iter_mut() {
        *v /= &g;
    }
}

fn value_at<E>(row: &[(usize, E)], col: usize) -> &E {
    let i = row
        .binary_search_by_key(&col, |(c, _)| *c)
        .expect("pivot column present in row");
    &row[i].1
}

fn contains<E>(row: &[(usize, E)], col: usize) -> bool {
    row.binary_search_by_key(&col, |(c, _)| *c).is_ok()
}

type SparseVec<E> = Vec<(usize, E)>;

/// Merges two sorted rows column by column, dropping results that are zero.
fn merge<E, F, Z>(pivot: &[(usize, E)], target: &[(usize, E)], mut f: F, is_zero: Z) -> Vec<(usize, E)>
where
    F: FnMut(Option<&E>, Option<&E>) -> E,
    Z: Fn(&E) -> bool,
{
    let mut out = Vec::with_capacity(pivot.len() + target.len());
    let (mut i, mut j) = (0, 0);
    while i < pivot.len() || j < target.len() {
        let (col, v) = match (pivot.get(i), target.get(j)) {
            (Some((cp, p)), Some((ct, t))) if cp == ct => {
                i += 1;
                j += 1;
                (*cp, f(Some(p), Some(t)))
            }
            (Some((cp, p)), Some((ct, _))) if cp < ct => {
                i += 1;
                (*cp, f(Some(p), None))
            }
            (Some((cp, p)), None) => {
                i += 1;
                (*cp, f(Some(p), None))
            }
            (_, Some((ct, t))) => {
                j += 1;
                (*ct, f(None, Some(t)))
            }
            (None, None) => unreachable!(),
        };
        if !is_zero(&v) {
            out.push((col, v));
        }
    }
    out
}

/// Result of an elimination: pivot rows in the order they were chosen.
/// Each pivot row has no entries in columns pivoted before it.
#[derive(Debug, Clone)]
pub(crate) struct Echelon<E> {
    pub n_cols: usize,
    pub pivots: Vec<(usize, Vec<(usize, E)>)>,
    /// Input row index of each pivot row.
    pub sources: Vec<usize>,
}

impl<E> Echelon<E> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Columns without a pivot, ascending.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut pivoted = vec![false; self.n_cols];
        for (c, _) in &self.pivots {
            pivoted[*c] = true;
        }
        (0..self.n_cols).filter(|&c| !pivoted[c]).collect()
    }
}

pub(crate) fn eliminate<A: RowArith>(arith: &A, rows: Vec<Vec<(usize, A::E)>>, n_cols: usize) -> Echelon<A::E> {
    let mut rows: Vec<Option<SparseVec<A::E>>> =
        rows.into_iter().map(|r| (!r.is_empty()).then_some(r)).collect();
    let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); n_cols];
    let mut col_count = vec![0usize; n_cols];
    for (r, row) in rows.iter().enumerate() {
        for (c, _) in row.iter().flatten() {
            col_rows[*c].push(r);
            col_count[*c] += 1;
        }
    }
    let mut pivoted = vec![false; n_cols];
    let mut heap: BinaryHeap<Reverse<(usize, usize)>> = (0..n_cols)
        .filter(|&c| col_count[c] > 0)
        .map(|c| Reverse((col_count[c], c)))
        .collect();
    let mut pivots = Vec::new();
    let mut sources = Vec::new();

    loop {
        // Markowitz search over the columns of minimal count
        let mut candidates = Vec::new();
        while let Some(Reverse((count, col))) = heap.pop() {
            if pivoted[col] || col_count[col] != count || count == 0 {
                continue;
            }
            if let Some(&(first, _)) = candidates.first() {
                if count != first || candidates.len() >= MARKOWITZ_CANDIDATES {
                    heap.push(Reverse((count, col)));
                    break;
                }
            }
            candidates.push((count, col));
        }
        if candidates.is_empty() {
            break;
        }
        let mut best: Option<(usize, usize, usize, usize)> = None; // (cost, col, row_len, row)
        for &(count, col) in &candidates {
            col_rows[col].retain(|&r| rows[r].as_ref().is_some_and(|row| contains(row, col)));
            col_rows[col].sort_unstable();
            col_rows[col].dedup();
            debug_assert_eq!(col_rows[col].len(), count);
            for &r in &col_rows[col] {
                let len = rows[r].as_ref().map_or(0, Vec::len);
                let cost = (len - 1) * (count - 1);
                let key = (cost, col, len, r);
                if best.is_none_or(|b| key < b) {
                    best = Some(key);
                }
            }
        }
        let (_, pcol, _, prow) = best.expect("candidate column has a row");
        for &(count, col) in &candidates {
            if col != pcol {
                heap.push(Reverse((count, col)));
            }
        }

        let mut pivot = rows[prow].take().expect("pivot row active");
        arith.prepare_pivot(&mut pivot, pcol);
        pivoted[pcol] = true;
        for (c, _) in &pivot {
            col_count[*c] -= 1;
        }
        let targets: Vec<usize> = col_rows[pcol].iter().copied().filter(|&r| r != prow).collect();
        let mut touched = Vec::new();
        for r in targets {
            let old = rows[r].take().expect("target row active");
            let new = arith.eliminate(&pivot, &old, pcol);
            update_counts(&old, &new, r, &mut col_count, &mut col_rows, &mut touched);
            rows[r] = (!new.is_empty()).then_some(new);
        }
        col_rows[pcol].clear();
        touched.extend(pivot.iter().map(|(c, _)| *c));
        touched.sort_unstable();
        touched.dedup();
        for c in touched {
            if !pivoted[c] && col_count[c] > 0 {
                heap.push(Reverse((col_count[c], c)));
            }
        }
        debug_assert_eq!(col_count[pcol], 0);
        debug_assert!(!arith.is_zero(value_at(&pivot, pcol)));
        pivots.push((pcol, pivot));
        sources.push(prow);
    }
    Echelon { n_cols, pivots, sources }
}

/// Left-looking elimination over `GF(p)`: rows are reduced one at a time by
/// the pivot rows found so far, and a row that survives is pivoted on its
/// entry of lowest `priority`. Much cheaper than a Markowitz search; the fill
/// depends on the static priorities.
pub(crate) fn eliminate_online(
    arith: &ModArith,
    rows: &[Vec<(usize, u64)>],
    row_order: &[usize],
    priority: &[usize],
    n_cols: usize,
) -> Echelon<u64> {
    let p = &arith.0;
    // pivot_of[c] = index into `pivots` of the row pivoted on column c
    let mut pivot_of = vec![usize::MAX; n_cols];
    let mut dense = vec![0u64; n_cols];
    let mut support: Vec<usize> = Vec::new();
    let mut in_support = vec![false; n_cols];
    let mut pivots: Vec<(usize, Vec<(usize, u64)>)> = Vec::new();
    let mut sources = Vec::new();
    let mut queue: BinaryHeap<Reverse<(usize, usize)>> = BinaryHeap::new();
    for &src in row_order {
        for &(c, v) in &rows[src] {
            dense[c] = v;
            in_support[c] = true;
            support.push(c);
            if pivot_of[c] != usize::MAX {
                queue.push(Reverse((priority[c], c)));
            }
        }
        while let Some(Reverse((_, pc))) = queue.pop() {
            let f = dense[pc];
            if f == 0 {
                continue;
            }
            let f = p.neg(f);
            for &(c, v) in &pivots[pivot_of[pc]].1 {
                dense[c] = p.add(dense[c], p.mul(v, f));
                if !in_support[c] {
                    in_support[c] = true;
                    support.push(c);
                    if pivot_of[c] != usize::MAX {
                        queue.push(Reverse((priority[c], c)));
                    }
                }
            }
        }
        let lead = support
            .iter()
            .copied()
            .filter(|&c| dense[c] != 0)
            .min_by_key(|&c| priority[c]);
        if let Some(col) = lead {
            support.sort_unstable();
            let inv = p.inv(&dense[col]);
            let row: Vec<(usize, u64)> = support
                .iter()
                .filter(|&&c| dense[c] != 0)
                .map(|&c| (c, p.mul(dense[c], inv)))
                .collect();
            pivot_of[col] = pivots.len();
            pivots.push((col, row));
            sources.push(src);
        }
        for c in support.drain(..) {
            dense[c] = 0;
            in_support[c] = false;
        }
    }
    Echelon { n_cols, pivots, sources }
}

/// Re-runs a known pivot sequence over `GF(p)` without any pivot search:
/// input row `sources[k]` is reduced left-looking by the earlier pivot rows
/// and must keep a nonzero entry in column `cols[k]`. Returns `None` as soon
/// as a pivot vanishes. Only the pivot rows are processed, so success proves
/// the rank is at least the sequence length.
pub(crate) fn replay(
    arith: &ModArith,
    rows: &[Vec<(usize, u64)>],
    cols: &[usize],
    sources: &[usize],
    n_cols: usize,
) -> Option<Echelon<u64>> {
    let p = &arith.0;
    let mut position = vec![usize::MAX; n_cols];
    for (k, &c) in cols.iter().enumerate() {
        position[c] = k;
    }
    let mut dense = vec![0u64; n_cols];
    let mut support: Vec<usize> = Vec::new();
    let mut in_support = vec![false; n_cols];
    let mut pivots: Vec<(usize, Vec<(usize, u64)>)> = Vec::with_capacity(cols.len());
    // earlier pivots to apply, smallest position first
    let mut queue: BinaryHeap<Reverse<usize>> = BinaryHeap::new();
    for (k, (&col, &src)) in cols.iter().zip(sources).enumerate() {
        for &(c, v) in &rows[src] {
            dense[c] = v;
            in_support[c] = true;
            support.push(c);
            if position[c] < k {
                queue.push(Reverse(position[c]));
            }
        }
        while let Some(Reverse(j)) = queue.pop() {
            let (pc, prow) = &pivots[j];
            let f = dense[*pc];
            if f == 0 {
                continue;
            }
            let f = p.neg(f);
            for &(c, v) in prow {
                dense[c] = p.add(dense[c], p.mul(v, f));
                if !in_support[c] {
                    in_support[c] = true;
                    support.push(c);
                    if position[c] < k {
                        queue.push(Reverse(position[c]));
                    }
                }
            }
        }
        let lead = dense[col];
        let ok = lead != 0;
        let mut row = Vec::new();
        if ok {
            support.sort_unstable();
            let inv = p.inv(&lead);
            for &c in &support {
                if dense[c] != 0 && position[c] >= k {
                    row.push((c, p.mul(dense[c], inv)));
                }
            }
        }
        for c in support.drain(..) {
            dense[c] = 0;
            in_support[c] = false;
        }
        if !ok {
            return None;
        }
        pivots.push((col, row));
    }
    Some(Echelon { n_cols, pivots, sources: sources.to_vec() })
}

fn update_counts<E>(
    old: &[(usize, E)],
    new: &[(usize, E)],
    row: usize,
    col_count: &mut [usize],
    col_rows: &mut [Vec<usize>],
    touched: &mut Vec<usize>,
) {
    let (mut i, mut j) = (0, 0);
    loop {
        match (old.get(i), new.get(j)) {
            (Some((co, _)), Some((cn, _))) if co == cn => {
                i += 1;
                j += 1;
            }
            (Some((co, _)), Some((cn, _))) if co < cn => {
                col_count[*co] -= 1;
                touched.push(*co);
                i += 1;
            }
            (Some((co, _)), None) => {
                col_count[*co] -= 1;
                touched.push(*co);
                i += 1;
            }
            (_, Some((cn, _))) => {
                col_count[*cn] += 1;
                col_rows[*cn].push(row);
                touched.push(*cn);
                j += 1;
            }
            (None, None) => break,
        }
    }
}

/// Sparse back-substitution: for each listed free column `f`, the kernel vector
/// with a one at `f`, zeros at the other free columns, solved for the pivot
/// columns.
///
/// `solve(row, pivot_col, value)` returns the pivot-column value given the
/// current solution lookup.
pub(crate) fn kernel_vectors<E, V, S>(echelon: &Echelon<E>, free: &[usize], one: V, mut solve: S) -> Vec<Vec<(usize, V)>>
where
    V: Clone,
    S: FnMut(&[(usize, E)], usize, &dyn Fn(usize) -> Option<V>) -> Option<V>,
{
    let n_cols = echelon.n_cols;
    // users[c] = pivots whose row has a non-pivot entry in column c
    let mut users: Vec<Vec<usize>> = vec![Vec::new(); n_cols];
    for (k, (pc, row)) in echelon.pivots.iter().enumerate() {
        for (c, _) in row {
            if c != pc {
                users[*c].push(k);
            }
        }
    }

    // dense scratch reused across free columns; `touched` lists what to reset
    let mut values: Vec<Option<V>> = vec![None; n_cols];
    let mut seen = vec![false; echelon.pivots.len()];
    let mut touched = Vec::new();
    let mut queued = Vec::new();
    let mut out = Vec::new();
    for &f in free {
        values[f] = Some(one.clone());
        touched.push(f);
        let mut queue = BinaryHeap::new();
        for &k in &users[f] {
            if !seen[k] {
                seen[k] = true;
                queued.push(k);
                queue.push(k);
            }
        }
        while let Some(k) = queue.pop() {
            let (pc, row) = &echelon.pivots[k];
            let lookup = |c: usize| values[c].clone();
            if let Some(v) = solve(row, *pc, &lookup) {
                values[*pc] = Some(v);
                touched.push(*pc);
                for &u in &users[*pc] {
                    if !seen[u] {
                        seen[u] = true;
                        queued.push(u);
                        queue.push(u);
                    }
                }
            }
        }
        touched.sort_unstable();
        let vec: Vec<(usize, V)> = touched
            .drain(..)
            .map(|c| (c, values[c].take().expect("touched column has a value")))
            .collect();
        for k in queued.drain(..) {
            seen[k] = false;
        }
        out.push(vec);
    }
    out
}
