use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::block::BlockKind;
use super::coboundary::require_z3_trivial;
use super::cochain::{Cochain2, CochainKey};
use crate::algebra::{ColorLieAlgebra, Vector};
use crate::error::Result;
use crate::linalg::{SparseIntMatrix, SparseRow};
use crate::scalar::Scalar;

/// Which cochain coordinates enter the system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SystemOptions {
    /// Drop every coordinate with `X_0` as a source.
    pub vanish_on_x0: bool,
    /// Keep `X_0` as a target of the `L_0`-valued blocks A and E.
    pub allow_x0_target: bool,
}

impl Default for SystemOptions {
    fn default() -> Self {
        Self {
            vanish_on_x0: true,
            allow_x0_target: false,
        }
    }
}

impl SystemOptions {
    /// Every degree-0 coordinate, no constraints.
    pub fn unconstrained() -> Self {
        Self {
            vanish_on_x0: false,
            allow_x0_target: true,
        }
    }
}

/// Which cocycle condition (1)–(10) a triple instance belongs to, by the
/// families of its arguments: XXX, XXY, XXZ, XYY, XYZ, XZZ, YYY, YYZ, YZZ, ZZZ.
pub fn condition_number(degrees: [u32; 3]) -> u8 {
    let mut d = degrees;
    d.sort_unstable();
    match d {
        [0, 0, 0] => 1,
        [0, 0, 1] => 2,
        [0, 0, 2] => 3,
        [0, 1, 1] => 4,
        [0, 1, 2] => 5,
        [0, 2, 2] => 6,
        [1, 1, 1] => 7,
        [1, 1, 2] => 8,
        [1, 2, 2] => 9,
        [2, 2, 2] => 10,
        _ => unreachable!("degrees are in ℤ₃"),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RowLabel {
    pub condition: u8,
    pub triple: [usize; 3],
    /// Basis element whose coefficient this row extracts.
    pub target: usize,
}

/// The cocycle conditions as a sparse integer system whose kernel is the
/// space of 2-cocycles supported on the selected coordinates.
#[derive(Debug, Clone)]
pub struct ConstraintSystem {
    pub matrix: SparseIntMatrix,
    pub columns: Vec<CochainKey>,
    pub rows: Vec<RowLabel>,
}

impl ConstraintSystem {
    /// Interprets a kernel vector as a cochain.
    pub fn cochain(&self, vector: &[(usize, Scalar)]) -> Cochain2 {
        Cochain2::from_terms(vector.iter().map(|(c, v)| (self.columns[*c], v.clone())))
    }

    /// Coordinates of a cochain in this system's columns; `None` if it has
    /// support outside them.
    pub fn coordinates(&self, psi: &Cochain2) -> Option<Vec<(usize, Scalar)>> {
        let index: HashMap<&CochainKey, usize> =
            self.columns.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let mut out = Vec::with_capacity(psi.len());
        for (k, v) in psi.terms() {
            out.push((*index.get(k)?, v.clone()));
        }
        out.sort_by_key(|(c, _)| *c);
        Some(out)
    }
}

/// Cochain coordinates of the requested blocks, ordered by block, then by
/// source pair and target.
pub fn cochain_columns(alg: &ColorLieAlgebra, blocks: &[BlockKind], opts: SystemOptions) -> Vec<CochainKey> {
    let mut blocks = blocks.to_vec();
    blocks.sort_unstable();
    blocks.dedup();
    let mut out = Vec::new();
    for block in blocks {
        let (g, h) = block.sources();
        let x0_target_banned = block.targets_l0() && !opts.allow_x0_target;
        for u in alg.component(g) {
            if opts.vanish_on_x0 && u == 0 {
                continue;
            }
            for v in alg.component(h) {
                if v <= u {
                    continue;
                }
                for t in alg.component(block.target()) {
                    if x0_target_banned && t == 0 {
                        continue;
                    }
                    out.push(CochainKey::new(u, v, t));
                }
            }
        }
    }
    out
}

/// Assembles the cocycle conditions over all sorted triples of distinct basis
/// elements, one row per (triple, target basis element), restricted to the
/// coordinates of `blocks`. Identical rows are merged.
pub fn assemble_z2_system(alg: &ColorLieAlgebra, blocks: &[BlockKind], opts: SystemOptions) -> Result<ConstraintSystem> {
    require_z3_trivial(alg)?;
    let columns = cochain_columns(alg, blocks, opts);
    let (matrix, rows) = assemble_rows(alg, &columns);
    Ok(ConstraintSystem { matrix, columns, rows })
}

fn assemble_rows(alg: &ColorLieAlgebra, columns: &[CochainKey]) -> (SparseIntMatrix, Vec<RowLabel>) {
    let n = alg.dim();
    let table = alg.bracket_table();
    // pair_cols[u * n + v] = (column, target) for u < v
    let mut pair_cols: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n * n];
    for (col, key) in columns.iter().enumerate() {
        pair_cols[key.first * n + key.second].push((col, key.target));
    }
    let psi_cols = |u: usize, v: usize| -> (&[(usize, usize)], bool) {
        match u.cmp(&v) {
            std::cmp::Ordering::Less => (&pair_cols[u * n + v], false),
            std::cmp::Ordering::Greater => (&pair_cols[v * n + u], true),
            std::cmp::Ordering::Equal => (&[], false),
        }
    };

    let per_first: Vec<Vec<(RowLabel, SparseRow)>> = (0..n)
        .into_par_iter()
        .map(|a| {
            let mut out = Vec::new();
            for b in a + 1..n {
                for c in b + 1..n {
                    let mut acc: BTreeMap<usize, BTreeMap<usize, Scalar>> = BTreeMap::new();
                    let mut add = |t: usize, col: usize, v: Scalar| {
                        let e = acc.entry(t).or_default().entry(col).or_insert_with(Scalar::zero);
                        *e += v;
                    };
                    // ±[x, ψ(u, v)]
                    for (x, u, v, sign) in [(a, b, c, 1i64), (b, a, c, -1), (c, a, b, 1)] {
                        let (cols, flip) = psi_cols(u, v);
                        let sign = if flip { -sign } else { sign };
                        for &(col, s) in cols {
                            for (t, coeff) in table[x * n + s].iter() {
                                add(t, col, coeff * Scalar::from_integer(sign.into()));
                            }
                        }
                    }
                    // ±ψ([u, v], w) and ψ(a, [b, c])
                    let inner: [(&Vector, usize, bool, i64); 3] = [
                        (&table[a * n + b], c, true, -1),
                        (&table[a * n + c], b, true, 1),
                        (&table[b * n + c], a, false, 1),
                    ];
                    for (bracket, w, bracket_first, sign) in inner {
                        for (k, coeff) in bracket.iter() {
                            let (cols, flip) = if bracket_first { psi_cols(k, w) } else { psi_cols(w, k) };
                            let sign = if flip { -sign } else { sign };
                            for &(col, s) in cols {
                                add(s, col, coeff * Scalar::from_integer(sign.into()));
                            }
                        }
                    }
                    let condition = condition_number([alg.degree(a), alg.degree(b), alg.degree(c)]);
                    for (t, entries) in acc {
                        let row = integer_row(entries);
                        if !row.is_empty() {
                            out.push((RowLabel { condition, triple: [a, b, c], target: t }, row));
                        }
                    }
                }
            }
            out
        })
        .collect();

    let mut matrix = SparseIntMatrix::zeros(0, columns.len());
    let mut labels = Vec::new();
    let mut seen: HashSet<SparseRow> = HashSet::new();
    for (label, row) in per_first.into_iter().flatten() {
        if seen.insert(row.clone()) {
            matrix.push_row(row);
            labels.push(label);
        }
    }
    (matrix, labels)
}

/// Clears denominators and normalizes to a primitive row with positive
/// leading entry, so equal constraints compare equal.
fn integer_row(entries: BTreeMap<usize, Scalar>) -> SparseRow {
    let entries: Vec<(usize, Scalar)> = entries.into_iter().filter(|(_, v)| !v.is_zero()).collect();
    let lcm = entries.iter().fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    let mut row: SparseRow = entries
        .into_iter()
        .map(|(c, v)| (c, v.numer() * (&lcm / v.denom())))
        .collect();
    let g = row.iter().fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
    if g.is_zero() {
        return row;
    }
    let negate = row[0].1.is_negative();
    for (_, v) in row.iter_mut() {
        *v /= &g;
        if negate {
            *v = -&*v;
        }
    }
    row
}
