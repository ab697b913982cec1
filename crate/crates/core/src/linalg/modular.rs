use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arithmetic modulo a prime below 2^63.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 63 || !is_prime(p) {
            return Err(Error::InvalidParams(format!("{p} is not a prime below 2^63")));
        }
        Ok(Self(p))
    }

    pub fn value(&self) -> u64 {
        self.0
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let x = a as u128 * b as u128;
        // primes 2^61 - c with small c reduce by shifts instead of division
        let c = (1u64 << 61).wrapping_sub(self.0);
        if c < 1 << 16 {
            const MASK: u128 = (1 << 61) - 1;
            let y = (x & MASK) + (x >> 61) * c as u128;
            let z = (y & MASK) as u64 + (y >> 61) as u64 * c;
            return if z >= self.0 { z - self.0 } else { z };
        }
        (x % self.0 as u128) as u64
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        if *a == 1 || *a == self.0 - 1 {
            return *a;
        }
        let (g, x, _) = ext_gcd(*a as i128, self.0 as i128);
        debug_assert_eq!(g, 1);
        x.rem_euclid(self.0 as i128) as u64
    }

    pub fn reduce(&self, v: &BigInt) -> u64 {
        if let Some(x) = v.to_i64() {
            return (x as i128).rem_euclid(self.0 as i128) as u64;
        }
        v.mod_floor(&BigInt::from(self.0)).to_u64().expect("residue fits")
    }
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    (old_r, old_s, old_t)
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for w in WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let s = (n - 1).trailing_zeros();
    'witness: for a in WITNESSES {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Chinese remaindering of `a mod p` and `b mod q` into `[0, pq)`.
pub fn crt(a: u64, p: u64, b: u64, q: u64) -> BigInt {
    Lifter::new(p, q).crt(a, b)
}

/// Finds `num/den ≡ x (mod modulus)` with `|num|, den ≤ sqrt(modulus / 2)`.
pub fn rational_reconstruct(x: &BigInt, modulus: &BigInt) -> Option<(BigInt, BigInt)> {
    reconstruct(x, modulus, &(modulus / 2u32).sqrt())
}

pub(crate) fn reconstruct(x: &BigInt, modulus: &BigInt, bound: &BigInt) -> Option<(BigInt, BigInt)> {
    let x = x.mod_floor(modulus);
    if x.is_zero() {
        return Some((BigInt::zero(), BigInt::from(1)));
    }
    let (mut r0, mut r1) = (modulus.clone(), x);
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::from(1));
    while &r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        (r0, r1) = (r1, r2);
        (t0, t1) = (t1, t2);
    }
    if t1.is_zero() || t1.magnitude() > bound.magnitude() {
        return None;
    }
    let (num, den) = if t1 < BigInt::zero() { (-r1, -t1) } else { (r1, t1) };
    (num.gcd(&den) == BigInt::from(1)).then_some((num, den))
}

/// `num/den ≡ a (mod p)` with `|num|, den < 2^30`, if any.
fn small_rational(a: u64, p: u64) -> Option<(i64, u64)> {
    const BOUND: i128 = 1 << 30;
    if a == 0 {
        return Some((0, 1));
    }
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 >= BOUND {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if t1 == 0 || t1.abs() >= BOUND {
        return None;
    }
    let (num, den) = if t1 < 0 { (-r1, -t1) } else { (r1, t1) };
    Some((num as i64, den as u64))
}

fn scale(v: &mut [(usize, i128)], d: i128) -> Option<()> {
    for (_, x) in v.iter_mut() {
        *x = x.checked_mul(d)?;
    }
    Some(())
}

/// Rational reconstruction modulo `modulus < 2^127` with both parts bounded
/// by `bound`.
fn rational_u128(x: u128, modulus: u128, bound: i128) -> Option<(i128, i128)> {
    let (mut r0, mut r1) = (modulus as i128, x as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 > bound {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if t1 == 0 || t1.abs() > bound {
        return None;
    }
    Some(if t1 < 0 { (-r1, -t1) } else { (r1, t1) })
}

/// Residue pairs modulo two fixed primes, lifted to rationals.
pub(crate) struct Lifter {
    p: u64,
    q: u64,
    inv_p: u64,
    modulus: BigInt,
    bound: BigInt,
    small_bound: Option<i128>,
}

impl Lifter {
    pub fn new(p: u64, q: u64) -> Self {
        let (_, inv_p, _) = ext_gcd(p as i128 % q as i128, q as i128);
        let modulus = BigInt::from(p) * q;
        let bound = (&modulus / 2u32).sqrt();
        let small_bound = i128::try_from(&bound).ok();
        Self {
            p,
            q,
            inv_p: inv_p.rem_euclid(q as i128) as u64,
            modulus,
            bound,
            small_bound,
        }
    }

    pub fn crt(&self, a: u64, b: u64) -> BigInt {
        // x = a + p * ((b - a) * p^{-1} mod q)
        let diff = (b as i128 - a as i128).rem_euclid(self.q as i128) as u64;
        let t = ((diff as u128 * self.inv_p as u128) % self.q as u128) as u64;
        (BigInt::from(a) + BigInt::from(self.p) * t).mod_floor(&self.modulus)
    }

    /// A small integer vector proportional to the residue vector `v` modulo
    /// the first prime, found by growing a common denominator entry by entry.
    /// Only a candidate; callers verify it exactly.
    pub fn guess_vector(&self, v: &[(usize, u64)]) -> Option<Vec<(usize, i128)>> {
        let p = Prime(self.p);
        let mut den = 1u64;
        let mut out: Vec<(usize, i128)> = Vec::with_capacity(v.len());
        for &(c, a) in v {
            let (num, d) = small_rational(p.mul(a, den), self.p)?;
            if d != 1 {
                scale(&mut out, d as i128)?;
                den = den.checked_mul(d)?;
            }
            out.push((c, num as i128));
        }
        Some(out)
    }

    /// As [`Lifter::guess_vector`], but combining both residue vectors by
    /// Chinese remaindering, in 128-bit arithmetic. The vectors must have the
    /// same support.
    pub fn lift_vector(&self, v1: &[(usize, u64)], v2: &[(usize, u64)]) -> Option<Vec<(usize, i128)>> {
        if v1.len() != v2.len() {
            return None;
        }
        let (p, q) = (Prime(self.p), Prime(self.q));
        let modulus = self.p as u128 * self.q as u128;
        let bound = self.small_bound?;
        // the common denominator so far, reduced modulo each prime
        let (mut den_p, mut den_q) = (1u64, 1u64);
        let mut out: Vec<(usize, i128)> = Vec::with_capacity(v1.len());
        for (&(c, a), &(c2, b)) in v1.iter().zip(v2) {
            if c != c2 {
                return None;
            }
            let x = self.crt_u128(p.mul(a, den_p), q.mul(b, den_q));
            let sym = if x > modulus / 2 { x as i128 - modulus as i128 } else { x as i128 };
            if sym.abs() <= bound {
                out.push((c, sym));
                continue;
            }
            let (num, d) = rational_u128(x, modulus, bound)?;
            scale(&mut out, d)?;
            let d = u64::try_from(d).ok()?;
            den_p = p.mul(den_p, d % self.p);
            den_q = q.mul(den_q, d % self.q);
            out.push((c, num));
        }
        Some(out)
    }

    fn crt_u128(&self, a: u64, b: u64) -> u128 {
        let diff = (b as i128 - a as i128).rem_euclid(self.q as i128) as u64;
        let t = ((diff as u128 * self.inv_p as u128) % self.q as u128) as u64;
        a as u128 + self.p as u128 * t as u128
    }

    /// The integer `s` with `|s|` within the reconstruction bound and both
    /// residues, if there is one that fits an `i64`.
    pub fn lift_small(&self, a: u64, b: u64) -> Option<i64> {
        let sym = |x: u64, m: u64| if x > m / 2 { x as i128 - m as i128 } else { x as i128 };
        let s = sym(a, self.p);
        (s == sym(b, self.q) && self.small_bound.is_some_and(|b| s.abs() <= b))
            .then(|| i64::try_from(s).ok())
            .flatten()
    }

    /// The rational `num/den` with both residues, within the reconstruction
    /// bound, or `None`.
    pub fn lift(&self, a: u64, b: u64) -> Option<(BigInt, BigInt)> {
        // Small integers are recognized directly from the symmetric residues;
        // rational reconstruction would return the same `(s, 1)`.
        if let Some(s) = self.lift_small(a, b) {
            return Some((BigInt::from(s), BigInt::from(1)));
        }
        reconstruct(&self.crt(a, b), &self.modulus, &self.bound)
    }
}
