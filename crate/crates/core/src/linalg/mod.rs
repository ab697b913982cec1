//! Exact sparse linear algebra over ℤ and ℚ.
//!
//! Two elimination routes: a prime-field route (left-looking with static
//! pivot priorities, run under two independent primes) and a fraction-free
//! integer route with Markowitz pivoting (the reference). [`rank_certified`]
//! only ever returns a modular rank after proving it exactly: the pivot rows
//! survive both primes, and a rational kernel basis of the complementary
//! dimension is lifted and checked over ℤ. Otherwise it falls back to the
//! reference route.

mod eliminate;
mod market;
mod matrix;
mod modular;

use std::cell::OnceCell;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use eliminate::{eliminate, eliminate_online, kernel_vectors, replay, Echelon, FractionFree, ModArith};
pub use market::{read_matrix_market, write_matrix_market};
pub use matrix::{SparseIntMatrix, SparseRow};
use modular::{reconstruct, Lifter};
pub use modular::{crt, is_prime, rational_reconstruct, Prime};

use crate::error::{Error, Result};

/// The two primes of the modular fast path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Primes {
    pub first: Prime,
    pub second: Prime,
}

impl Primes {
    pub const DEFAULT: (u64, u64) = (2305843009213693951, 2305843009213693921);

    pub fn new(first: u64, second: u64) -> Result<Self> {
        if first == second {
            return Err(Error::InvalidParams("the two primes must differ".into()));
        }
        Ok(Self {
            first: Prime::new(first)?,
            second: Prime::new(second)?,
        })
    }

    /// Parses `"p1,p2"`.
    pub fn parse(text: &str) -> Result<Self> {
        let (a, b) = text
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected two comma-separated primes, got {text:?}")))?;
        let parse = |s: &str| {
            s.trim()
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad prime {s:?}")))
        };
        Self::new(parse(a)?, parse(b)?)
    }
}

impl Default for Primes {
    fn default() -> Self {
        Self::new(Self::DEFAULT.0, Self::DEFAULT.1).expect("default primes are valid")
    }
}

/// How [`rank_certified_with`] obtained its answer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RankPath {
    /// Both primes agreed and the lifted kernel was verified over ℤ.
    Certified,
    /// The modular route could not be certified; the reference route answered.
    Fallback(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankOutcome {
    pub rank: usize,
    pub path: RankPath,
}

fn reduce_rows(m: &SparseIntMatrix, p: Prime) -> Vec<Vec<(usize, u64)>> {
    m.rows()
        .iter()
        .map(|row| {
            row.iter()
                .map(|(c, v)| (*c, p.reduce(v)))
                .filter(|(_, v)| *v != 0)
                .collect()
        })
        .collect()
}

fn echelon_mod(m: &SparseIntMatrix, p: Prime) -> Echelon<u64> {
    let rows = reduce_rows(m, p);
    let (order, priority) = online_order(&rows, m.n_cols());
    eliminate_online(&ModArith(p), &rows, &order, &priority, m.n_cols())
}

/// Sparse rows first; pivot on the least used columns. Depends only on the
/// support, so every prime gets the same order.
fn online_order(rows: &[Vec<(usize, u64)>], n_cols: usize) -> (Vec<usize>, Vec<usize>) {
    let mut count = vec![0usize; n_cols];
    for row in rows {
        for (c, _) in row {
            count[*c] += 1;
        }
    }
    let mut by_count: Vec<usize> = (0..n_cols).collect();
    by_count.sort_by_key(|&c| (count[c], c));
    let mut priority = vec![0; n_cols];
    for (k, c) in by_count.into_iter().enumerate() {
        priority[c] = k;
    }
    let mut order: Vec<usize> = (0..rows.len()).collect();
    order.sort_by_key(|&r| (rows[r].len(), r));
    (order, priority)
}

fn echelon_exact(m: &SparseIntMatrix) -> Echelon<BigInt> {
    eliminate(&FractionFree, m.rows().to_vec(), m.n_cols())
}

/// Rank over `GF(p)`. Never exceeds the rank over ℚ.
pub fn rank_mod(m: &SparseIntMatrix, p: Prime) -> usize {
    echelon_mod(m, p).rank()
}

/// Rank over ℚ by fraction-free elimination on exact integers.
pub fn rank_fraction_free(m: &SparseIntMatrix) -> usize {
    echelon_exact(m).rank()
}

pub fn rank_certified(m: &SparseIntMatrix) -> usize {
    rank_certified_with(m, Primes::default()).rank
}

/// Rank over ℚ certified by two primes and an exact kernel check.
///
/// Elimination modulo the first prime gives `r ≤ rank(M)`. The second prime
/// replays the same pivot sequence (a full elimination is run if a pivot
/// vanishes there) and must reach the same rank and free columns. The rank is
/// accepted once `n_cols - r` independent integer vectors, lifted from the
/// modular kernels, satisfy `M v = 0` exactly, which proves `rank(M) ≤ r`.
/// Any failed check falls back to fraction-free elimination.
pub fn rank_certified_with(m: &SparseIntMatrix, primes: Primes) -> RankOutcome {
    let e1 = echelon_mod(m, primes.first);
    match certify(m, &e1, primes) {
        Ok(()) => RankOutcome {
            rank: e1.rank(),
            path: RankPath::Certified,
        },
        Err(reason) => RankOutcome {
            rank: rank_fraction_free(m),
            path: RankPath::Fallback(reason),
        },
    }
}

fn certify(m: &SparseIntMatrix, e1: &Echelon<u64>, primes: Primes) -> Result<(), String> {
    let rows = reduce_rows(m, primes.second);
    let cols: Vec<usize> = e1.pivots.iter().map(|(c, _)| *c).collect();
    let arith = ModArith(primes.second);
    let e2 = match replay(&arith, &rows, &cols, &e1.sources, m.n_cols()) {
        Some(e2) => e2,
        None => {
            let (order, priority) = online_order(&rows, m.n_cols());
            let e2 = eliminate_online(&arith, &rows, &order, &priority, m.n_cols());
            if e1.rank() != e2.rank() {
                return Err(format!("modular ranks disagree ({} vs {})", e1.rank(), e2.rank()));
            }
            if e1.free_columns() != e2.free_columns() {
                return Err("free columns differ between primes".into());
            }
            e2
        }
    };

    let lifter = Lifter::new(primes.first.value(), primes.second.value());
    let mut columns = ColumnMajor::new(m);
    let free = e1.free_columns();
    let k1 = kernel_mod(e1, primes.first, &free);
    // Small rational entries are read off the first prime alone; the exact
    // check makes the guess safe.
    let todo: Vec<usize> = (0..k1.len())
        .filter(|&i| lifter.guess_vector(&k1[i]).and_then(|v| columns.annihilates_small(&v)) != Some(true))
        .collect();
    if todo.is_empty() {
        return Ok(());
    }

    let k2 = kernel_mod(&e2, primes.second, &todo.iter().map(|&i| free[i]).collect::<Vec<_>>());
    let mut pending = Vec::new();
    for (&i, v2) in todo.iter().zip(&k2) {
        let v1 = &k1[i];
        if lifter.lift_vector(v1, v2).and_then(|v| columns.annihilates_small(&v)) == Some(true)
            || lift(v1, v2, &lifter).is_some_and(|v| columns.annihilates(&v))
        {
            continue;
        }
        let mut acc = MultiLift::default();
        acc.push(primes.first, v1);
        acc.push(primes.second, v2);
        pending.push((free[i], acc));
    }

    // Entries too large for two residues: keep adding primes until every
    // remaining vector reconstructs and verifies.
    for p in extra_primes(primes) {
        if pending.is_empty() {
            return Ok(());
        }
        let rows = reduce_rows(m, p);
        let Some(e) = replay(&ModArith(p), &rows, &cols, &e1.sources, m.n_cols()) else {
            continue;
        };
        let wanted: Vec<usize> = pending.iter().map(|(f, _)| *f).collect();
        let k = kernel_mod(&e, p, &wanted);
        for ((_, acc), v) in pending.iter_mut().zip(&k) {
            acc.push(p, v);
        }
        pending.retain(|(_, acc)| !acc.solve().is_some_and(|v| columns.annihilates(&v)));
    }
    if pending.is_empty() {
        return Ok(());
    }
    Err("a lifted kernel vector fails exact verification".into())
}

/// How many primes beyond the certificate pair a hard kernel vector may use.
const EXTRA_PRIMES: usize = 24;

/// Primes just below `2^61`, excluding the pair already used.
fn extra_primes(primes: Primes) -> impl Iterator<Item = Prime> {
    let used = [primes.first.value(), primes.second.value()];
    (1u64..)
        .map(|k| (1u64 << 61) - k)
        .filter(move |p| !used.contains(p))
        .filter_map(|p| Prime::new(p).ok())
        .take(EXTRA_PRIMES)
}

/// Chinese remaindering of one kernel vector over a growing set of primes.
#[derive(Default)]
struct MultiLift {
    modulus: Option<BigInt>,
    entries: BTreeMap<usize, BigInt>,
}

impl MultiLift {
    fn push(&mut self, p: Prime, v: &[(usize, u64)]) {
        let Some(modulus) = self.modulus.take() else {
            self.entries = v.iter().map(|(c, a)| (*c, BigInt::from(*a))).collect();
            self.modulus = Some(BigInt::from(p.value()));
            return;
        };
        let pb = BigInt::from(p.value());
        let inv = p.inv(&(&modulus % &pb).to_u64().expect("reduced"));
        for (c, _) in v {
            self.entries.entry(*c).or_default();
        }
        let get = |c: usize| v.binary_search_by_key(&c, |(k, _)| *k).map(|i| v[i].1).unwrap_or(0);
        for (c, x) in self.entries.iter_mut() {
            let xr = (&*x % &pb).to_u64().expect("reduced");
            let t = p.mul(p.add(get(*c), p.neg(xr)), inv);
            *x += &modulus * t;
        }
        self.modulus = Some(modulus * pb);
    }

    /// The integer vector with denominators cleared, if every entry
    /// reconstructs within the current modulus.
    fn solve(&self) -> Option<Vec<(usize, BigInt)>> {
        let modulus = self.modulus.as_ref()?;
        let bound = (modulus >> 1u32).sqrt();
        let mut fracs = Vec::with_capacity(self.entries.len());
        let mut lcm = BigInt::one();
        for (c, x) in &self.entries {
            let (num, den) = reconstruct(x, modulus, &bound)?;
            if !num.is_zero() {
                lcm = lcm.lcm(&den);
                fracs.push((*c, num, den));
            }
        }
        Some(fracs.into_iter().map(|(c, num, den)| (c, num * (&lcm / den))).collect())
    }
}

/// Kernel vectors for the given free columns.
fn kernel_mod(e: &Echelon<u64>, p: Prime, free: &[usize]) -> Vec<Vec<(usize, u64)>> {
    kernel_vectors(e, free, 1u64, |row, pc, lookup| {
        // pivot rows are scaled so the pivot entry is one
        let mut s = 0u64;
        for (c, a) in row {
            if *c != pc {
                if let Some(v) = lookup(*c) {
                    s = p.add(s, p.mul(*a, v));
                }
            }
        }
        (s != 0).then(|| p.neg(s))
    })
}

/// Merges two residue vectors into one integer vector (denominators cleared).
fn lift(v1: &[(usize, u64)], v2: &[(usize, u64)], lifter: &Lifter) -> Option<Vec<(usize, BigInt)>> {
    let mut cols: Vec<usize> = v1.iter().chain(v2).map(|(c, _)| *c).collect();
    cols.sort_unstable();
    cols.dedup();
    let get = |v: &[(usize, u64)], c: usize| {
        v.binary_search_by_key(&c, |(k, _)| *k).map(|i| v[i].1).unwrap_or(0)
    };
    let mut fracs = Vec::with_capacity(cols.len());
    let mut lcm = BigInt::one();
    for c in cols {
        let (num, den) = lifter.lift(get(v1, c), get(v2, c))?;
        if !num.is_zero() {
            lcm = lcm.lcm(&den);
            fracs.push((c, num, den));
        }
    }
    Some(fracs.into_iter().map(|(c, num, den)| (c, num * (&lcm / den))).collect())
}

/// Column-major view of a matrix for computing `M v` by scattering.
struct ColumnMajor<'a> {
    m: &'a SparseIntMatrix,
    cols: OnceCell<Vec<Vec<(usize, BigInt)>>>,
    small: Option<Vec<Vec<(usize, i64)>>>,
    acc: Vec<i128>,
    touched: Vec<usize>,
}

impl<'a> ColumnMajor<'a> {
    fn new(m: &'a SparseIntMatrix) -> Self {
        let mut small = Some(vec![Vec::new(); m.n_cols()]);
        for (r, row) in m.rows().iter().enumerate() {
            for (c, v) in row {
                match (small.as_mut(), v.to_i64()) {
                    (Some(cols), Some(v)) => cols[*c].push((r, v)),
                    _ => small = None,
                }
            }
        }
        Self {
            m,
            cols: OnceCell::new(),
            small,
            acc: vec![0; m.n_rows()],
            touched: Vec::new(),
        }
    }

    fn annihilates(&self, v: &[(usize, BigInt)]) -> bool {
        let cols = self.cols.get_or_init(|| {
            let mut cols = vec![Vec::new(); self.m.n_cols()];
            for (r, row) in self.m.rows().iter().enumerate() {
                for (c, v) in row {
                    cols[*c].push((r, v.clone()));
                }
            }
            cols
        });
        let mut terms: Vec<(usize, BigInt)> = v
            .iter()
            .flat_map(|(c, x)| cols[*c].iter().map(move |(r, a)| (*r, a * x)))
            .collect();
        terms.sort_unstable_by_key(|(r, _)| *r);
        terms
            .chunk_by(|a, b| a.0 == b.0)
            .all(|run| run.iter().map(|(_, x)| x).sum::<BigInt>().is_zero())
    }

    /// `Some(M v == 0)`, or `None` if `i128` arithmetic would overflow.
    fn annihilates_small(&mut self, v: &[(usize, i128)]) -> Option<bool> {
        let small = self.small.as_ref()?;
        let mut overflow = false;
        'scatter: for (c, x) in v {
            for (r, a) in &small[*c] {
                let Some(t) = (*a as i128).checked_mul(*x).and_then(|t| self.acc[*r].checked_add(t)) else {
                    overflow = true;
                    break 'scatter;
                };
                if self.acc[*r] == 0 {
                    self.touched.push(*r);
                }
                self.acc[*r] = t;
            }
        }
        let mut zero = true;
        for r in self.touched.drain(..) {
            zero &= self.acc[r] == 0;
            self.acc[r] = 0;
        }
        (!overflow).then_some(zero)
    }
}

/// `n_cols - rank`, with the rank certified.
pub fn nullity(m: &SparseIntMatrix) -> usize {
    m.n_cols() - rank_certified(m)
}

pub fn nullity_with(m: &SparseIntMatrix, primes: Primes) -> usize {
    m.n_cols() - rank_certified_with(m, primes).rank
}

/// A basis of the right kernel with exact rational entries.
///
/// Vectors are sparse `(column, value)` lists, normalized so the first nonzero
/// entry is positive, and sorted by leading column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelBasis {
    pub dim: usize,
    pub vectors: Vec<Vec<(usize, BigRational)>>,
}

/// Exact kernel basis via fraction-free elimination and rational
/// back-substitution.
pub fn kernel_basis(m: &SparseIntMatrix) -> KernelBasis {
    let e = echelon_exact(m);
    let mut vectors = kernel_vectors(&e, &e.free_columns(), BigRational::one(), |row, pc, lookup| {
        let mut s = BigRational::zero();
        let mut pivot = None;
        for (c, a) in row {
            if *c == pc {
                pivot = Some(a);
            } else if let Some(v) = lookup(*c) {
                s += v * BigRational::from_integer(a.clone());
            }
        }
        let pivot = BigRational::from_integer(pivot.expect("pivot entry").clone());
        (!s.is_zero()).then(|| -s / pivot)
    });
    for v in &mut vectors {
        if v.first().is_some_and(|(_, x)| x.is_negative()) {
            for (_, x) in v.iter_mut() {
                *x = -x.clone();
            }
        }
    }
    vectors.sort_by(|a, b| a.first().map(|x| x.0).cmp(&b.first().map(|x| x.0)));
    KernelBasis {
        dim: vectors.len(),
        vectors,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn assert_kernel(m: &SparseIntMatrix, k: &KernelBasis) {
        for v in &k.vectors {
            assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn identity_and_zero() {
        let id = SparseIntMatrix::identity(3);
        assert_eq!(nullity(&id), 0);
        assert_eq!(kernel_basis(&id).dim, 0);
        assert_eq!(nullity(&SparseIntMatrix::zeros(2, 4)), 4);
        let k = kernel_basis(&SparseIntMatrix::zeros(1, 3));
        assert_eq!(k.dim, 3);
        for (i, v) in k.vectors.iter().enumerate() {
            assert_eq!(v, &vec![(i, int(1))]);
        }
        assert_eq!(rank_certified(&SparseIntMatrix::identity(5)), 5);
    }

    #[test]
    fn rank_one_two_by_two() {
        let m = SparseIntMatrix::from_dense(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(nullity(&m), 1);
        let k = kernel_basis(&m);
        assert_eq!(k.dim, 1);
        // proportional to (-2, 1)
        let v = &k.vectors[0];
        assert_eq!(v.len(), 2);
        assert_eq!(&v[0].1 / &v[1].1, int(-2));
        assert!(v[0].1.is_positive());
        assert_kernel(&m, &k);
    }

    #[test]
    fn rational_kernel_entries() {
        let m = SparseIntMatrix::from_dense(&[vec![2, 3, 0], vec![0, 4, 5]]);
        let k = kernel_basis(&m);
        assert_eq!(k.dim, 1);
        assert_kernel(&m, &k);
    }

    #[test]
    fn adversarial_prime_multiples_fall_back() {
        let p = 1_000_000_007u64;
        let q = 998_244_353u64;
        let primes = Primes::new(p, q).unwrap();
        let mut m = SparseIntMatrix::zeros(0, 3);
        m.push_row([(0, BigInt::from(p))]);
        m.push_row([(1, BigInt::from(p) * q)]);
        m.push_row([(2, BigInt::from(1))]);
        let out = rank_certified_with(&m, primes);
        assert_eq!(out.rank, 3);
        assert!(matches!(out.path, RankPath::Fallback(_)));
        assert!(rank_mod(&m, primes.first) < 3);
    }

    fn wide_row(a: BigInt, b: BigInt) -> SparseIntMatrix {
        let mut m = SparseIntMatrix::zeros(0, 2);
        m.push_row([(0, a), (1, b)]);
        m
    }

    #[test]
    fn large_kernel_entries_take_more_primes() {
        // the kernel is spanned by (-b, a), far beyond two 61-bit residues
        let m = wide_row(BigInt::from(3).pow(70u32), BigInt::from(7).pow(40u32));
        let out = rank_certified_with(&m, Primes::default());
        assert_eq!(out.rank, 1);
        assert_eq!(out.path, RankPath::Certified);
    }

    #[test]
    fn kernel_entries_beyond_every_prime_fall_back() {
        let m = wide_row(BigInt::from(3).pow(1000u32), BigInt::from(7).pow(600u32));
        let out = rank_certified_with(&m, Primes::default());
        assert_eq!(out.rank, 1);
        assert!(matches!(out.path, RankPath::Fallback(_)));
    }

    #[test]
    fn prime_pair_parsing() {
        assert!(Primes::parse("1000000007, 998244353").is_ok());
        assert!(Primes::parse("7,7").is_err());
        assert!(Primes::parse("8,7").is_err());
        assert!(Primes::parse("7").is_err());
    }
}
