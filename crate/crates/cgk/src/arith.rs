//! Exact integer and modular arithmetic on `u128`, plus the factored-integer
//! type used to carry group orders around without re-factorizing.
//!
//! Everything here is exact for moduli below 2^127. Modular products use the
//! native width when the modulus fits in 64 bits and Montgomery reduction with
//! a 256-bit intermediate otherwise (big even moduli, which have no Montgomery
//! form, fall back to big-integer arithmetic; they only occur in cold paths).

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};

pub const MAX_VALUE_BITS: u32 = 127;

/// Iteration budget for the rho stage of `factorize`.
pub const RHO_BUDGET: u64 = 8_000_000;

const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

pub fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u128, b: u128) -> Option<u128> {
    if a == 0 || b == 0 {
        return Some(0);
    }
    (a / gcd(a, b)).checked_mul(b)
}

/// Modular inverse of `a` mod `m`, or None when gcd(a, m) != 1.
pub fn inv_mod(a: u128, m: u128) -> Option<u128> {
    if m <= 1 {
        return if m == 1 { Some(0) } else { None };
    }
    // extended Euclid with signs tracked separately to stay in u128
    let (mut r0, mut r1) = (m, a % m);
    let (mut t0, mut t1): (u128, u128) = (0, 1);
    let (mut n0, mut n1) = (false, false); // negativity flags for t0, t1
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        let qt = q * t1;
        let (nt, nn) = if n0 == n1 {
            if t0 >= qt {
                (t0 - qt, n0)
            } else {
                (qt - t0, !n0)
            }
        } else {
            (t0 + qt, n0)
        };
        (t0, n0) = (t1, n1);
        (t1, n1) = (nt, nn);
    }
    if r0 != 1 {
        return None;
    }
    Some(if n0 { m - t0 % m } else { t0 % m })
}

fn mul_wide(a: u128, b: u128) -> (u128, u128) {
    let (a1, a0) = (a >> 64, a & u64::MAX as u128);
    let (b1, b0) = (b >> 64, b & u64::MAX as u128);
    let ll = a0 * b0;
    let lh = a0 * b1;
    let hl = a1 * b0;
    let hh = a1 * b1;
    let mid = (ll >> 64) + (lh & u64::MAX as u128) + (hl & u64::MAX as u128);
    let lo = (mid << 64) | (ll & u64::MAX as u128);
    let hi = hh + (lh >> 64) + (hl >> 64) + (mid >> 64);
    (hi, lo)
}

/// Montgomery context for an odd modulus; exact for any odd n < 2^127.
#[derive(Clone, Copy)]
pub(crate) struct Mont {
    n: u128,
    neg_inv: u128, // -n^{-1} mod 2^128
    r2: u128,      // 2^256 mod n
    pub one: u128, // 2^128 mod n
}

impl Mont {
    pub fn new(n: u128) -> Mont {
        debug_assert!(n & 1 == 1 && n > 1);
        // Newton iteration for n^{-1} mod 2^128; odd n is its own inverse mod 8
        let mut inv = n;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u128.wrapping_sub(n.wrapping_mul(inv)));
        }
        let one = (u128::MAX % n) + 1; // 2^128 mod n (n < 2^127, so no wrap to n)
        let mut r2 = one;
        for _ in 0..128 {
            r2 += r2;
            if r2 >= n {
                r2 -= n;
            }
        }
        Mont { n, neg_inv: inv.wrapping_neg(), r2, one }
    }

    #[inline]
    pub fn mul(&self, a: u128, b: u128) -> u128 {
        let (t_hi, t_lo) = mul_wide(a, b);
        let m = t_lo.wrapping_mul(self.neg_inv);
        let (mn_hi, mn_lo) = mul_wide(m, self.n);
        let carry = (t_lo != 0 || mn_lo != 0) as u128;
        debug_assert!(t_lo.wrapping_add(mn_lo) == 0);
        let mut u = t_hi + mn_hi + carry;
        if u >= self.n {
            u -= self.n;
        }
        u
    }

    #[inline]
    pub fn to_mont(self, a: u128) -> u128 {
        self.mul(a % self.n, self.r2)
    }

    // the Montgomery-form name outweighs the constructor naming convention
    #[allow(clippy::wrong_self_convention)]
    #[inline]
    pub fn from_mont(self, a: u128) -> u128 {
        self.mul(a, 1)
    }

    pub fn pow(&self, a_mont: u128, mut e: u128) -> u128 {
        let mut base = a_mont;
        let mut acc = self.one;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

/// `a * b mod m`, exact for any m < 2^127.
pub fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    if m == 0 {
        panic!("modulus zero");
    }
    let (a, b) = (a % m, b % m);
    if m <= u64::MAX as u128 {
        return a * b % m;
    }
    if m & 1 == 1 {
        let ctx = Mont::new(m);
        return ctx.from_mont(ctx.mul(ctx.to_mont(a), ctx.to_mont(b)));
    }
    // big even modulus: rare, correctness over speed
    let r = BigUint::from(a) * BigUint::from(b) % BigUint::from(m);
    r.to_u128().unwrap()
}

/// `base^exp mod m`, exact for any m < 2^127.
pub fn pow_mod(base: u128, mut exp: u128, m: u128) -> u128 {
    if m == 1 {
        return 0;
    }
    if m <= u64::MAX as u128 {
        let mut b = base % m;
        let mut acc: u128 = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * b % m;
            }
            b = b * b % m;
            exp >>= 1;
        }
        return acc;
    }
    if m & 1 == 1 {
        let ctx = Mont::new(m);
        return ctx.from_mont(ctx.pow(ctx.to_mont(base), exp));
    }
    let r = BigUint::from(base % m).modpow(&BigUint::from(exp), &BigUint::from(m));
    r.to_u128().unwrap()
}

fn strong_probable_prime(n: u128, base: u128, d: u128, s: u32, ctx: &Mont) -> bool {
    let base = base % n;
    if base == 0 {
        return true;
    }
    let one = ctx.one;
    let minus_one = ctx.to_mont(n - 1);
    let mut x = ctx.pow(ctx.to_mont(base), d);
    if x == one || x == minus_one {
        return true;
    }
    for _ in 1..s {
        x = ctx.mul(x, x);
        if x == minus_one {
            return true;
        }
    }
    false
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Deterministic below 3.3*10^24 (fixed witness set); above that, 64 extra
/// pseudorandom witnesses derived from n push the error probability below 2^-128.
pub fn is_prime(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    let ctx = Mont::new(n);
    // proven for all n < 3_317_044_064_679_887_385_961_981
    const FIXED: [u128; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for b in FIXED {
        if !strong_probable_prime(n, b, d, s, &ctx) {
            return false;
        }
    }
    if n < 3_317_044_064_679_887_385_961_981 {
        return true;
    }
    let mut state = (n as u64) ^ ((n >> 64) as u64) ^ 0xd1b54a32d192ed03;
    for _ in 0..64 {
        let b = (splitmix64(&mut state) as u128) % (n - 3) + 2;
        if !strong_probable_prime(n, b, d, s, &ctx) {
            return false;
        }
    }
    true
}

fn primes_to_million() -> &'static [u32] {
    static SIEVE: OnceLock<Vec<u32>> = OnceLock::new();
    SIEVE.get_or_init(|| {
        let limit = TRIAL_DIVISION_LIMIT as usize;
        let mut composite = vec![false; limit + 1];
        let mut primes = Vec::with_capacity(78_498);
        for i in 2..=limit {
            if !composite[i] {
                primes.push(i as u32);
                let mut j = i * i;
                while j <= limit {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        primes
    })
}

/// Brent's variant of Pollard rho; returns a nontrivial factor of odd composite n,
/// or None once `budget` iterations are spent.
fn pollard_brent(n: u128, budget: &mut u64) -> Option<u128> {
    debug_assert!(n & 1 == 1 && n > 1 && !is_prime(n));
    let ctx = Mont::new(n);
    let mut state = (n as u64) ^ ((n >> 64) as u64) ^ 0x243f6a8885a308d3;
    loop {
        if *budget == 0 {
            return None;
        }
        let c = ctx.to_mont((splitmix64(&mut state) as u128) % (n - 1) + 1);
        let step = |x: u128| {
            let mut v = ctx.mul(x, x) + c;
            if v >= n {
                v -= n;
            }
            v
        };
        let mut y: u128 = ctx.to_mont((splitmix64(&mut state) as u128) % n);
        let (mut x, mut ys) = (y, y);
        let mut q = ctx.one;
        let mut g: u128 = 1;
        let mut r: u64 = 1;
        'outer: while g == 1 {
            x = y;
            for _ in 0..r {
                y = step(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                let batch = 128.min(r - k);
                if *budget < batch {
                    *budget = 0;
                    break 'outer;
                }
                *budget -= batch;
                for _ in 0..batch {
                    y = step(y);
                    q = ctx.mul(q, x.abs_diff(y));
                }
                g = gcd(ctx.from_mont(q), n);
                k += batch;
            }
            r *= 2;
        }
        if g == n || g == 1 {
            // backtrack one batch, or retry with a new constant
            g = 1;
            while g == 1 && *budget > 0 {
                *budget -= 1;
                ys = step(ys);
                g = gcd(ctx.from_mont(ctx.to_mont(x.abs_diff(ys))), n);
                if ys == x {
                    break;
                }
            }
        }
        if g > 1 && g < n {
            return Some(g);
        }
    }
}

/// Prime factorization of n, smallest prime first. Trial division below 10^6,
/// then rho with a hard iteration budget.
pub fn factorize(n: u128) -> Result<Vec<(u128, u32)>> {
    if n == 0 || n >> MAX_VALUE_BITS != 0 {
        return Err(Error::OutOfRange(format!("cannot factor {n}")));
    }
    let mut n = n;
    let mut factors: Vec<(u128, u32)> = Vec::new();
    for &p in primes_to_million() {
        let p = p as u128;
        if p * p > n {
            break;
        }
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            factors.push((p, e));
        }
    }
    if n > 1 {
        if n <= TRIAL_DIVISION_LIMIT as u128 * TRIAL_DIVISION_LIMIT as u128 || is_prime(n) {
            // cofactor below 10^12 survived trial division to 10^6, so it is prime
            factors.push((n, 1));
        } else {
            let mut budget = RHO_BUDGET;
            let mut stack = vec![n];
            let mut found: Vec<u128> = Vec::new();
            while let Some(m) = stack.pop() {
                if is_prime(m) {
                    found.push(m);
                    continue;
                }
                match pollard_brent(m, &mut budget) {
                    Some(f) => {
                        stack.push(f);
                        stack.push(m / f);
                    }
                    None => return Err(Error::FactorizationTimeout(m)),
                }
            }
            found.sort_unstable();
            let mut i = 0;
            while i < found.len() {
                let p = found[i];
                let mut e = 0;
                while i < found.len() && found[i] == p {
                    e += 1;
                    i += 1;
                }
                factors.push((p, e));
            }
        }
    }
    factors.sort_unstable_by_key(|&(p, _)| p);
    Ok(factors)
}

/// A positive integer carried together with its prime factorization.
/// The value is kept as a big integer so that factored input far beyond the
/// 2^127 operational width can still be counted and enumerated.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FactoredInt {
    value: BigUint,
    factors: Vec<(u128, u32)>,
}

impl FactoredInt {
    pub fn one() -> FactoredInt {
        FactoredInt { value: BigUint::one(), factors: Vec::new() }
    }

    pub fn factorize(n: u128) -> Result<FactoredInt> {
        Ok(FactoredInt { value: BigUint::from(n), factors: factorize(n)? })
    }

    /// Build from explicit (prime, exponent) pairs; primes must be distinct,
    /// ascending and actually prime, exponents positive.
    pub fn from_factors(factors: Vec<(u128, u32)>) -> Result<FactoredInt> {
        let mut value = BigUint::one();
        for (i, &(p, e)) in factors.iter().enumerate() {
            if e == 0 {
                return Err(Error::InvalidArgument(format!("zero exponent on {p}")));
            }
            if i > 0 && factors[i - 1].0 >= p {
                return Err(Error::InvalidArgument("factors not strictly ascending".into()));
            }
            if !is_prime(p) {
                return Err(Error::InvalidArgument(format!("{p} is not prime")));
            }
            value *= BigUint::from(p).pow(e);
        }
        Ok(FactoredInt { value, factors })
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn factors(&self) -> &[(u128, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u128> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn exponent_of(&self, p: u128) -> u32 {
        self.factors
            .binary_search_by_key(&p, |&(q, _)| q)
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    /// The sub-product over a subset of prime indices (full prime powers).
    pub(crate) fn sub_product(&self, indices: &[usize]) -> FactoredInt {
        let factors: Vec<_> = indices.iter().map(|&i| self.factors[i]).collect();
        let mut value = BigUint::one();
        for &(p, e) in &factors {
            value *= BigUint::from(p).pow(e);
        }
        FactoredInt { value, factors }
    }

    /// Value as u128 when it fits the operational width.
    pub fn to_u128(&self) -> Option<u128> {
        let v = self.value.to_u128()?;
        (v >> MAX_VALUE_BITS == 0).then_some(v)
    }
}

impl PartialOrd for FactoredInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FactoredInt {
    fn cmp(&self, other: &Self) -> Ordering {
        self.value.cmp(&other.value)
    }
}

impl fmt::Display for FactoredInt {
    /// Factored text form, e.g. `2^2*3*5*13`; `1` for the empty product.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for &(p, e) in &self.factors {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FactoredInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (= {})", self.value)
    }
}

impl FromStr for FactoredInt {
    type Err = Error;

    /// Parses `2^2*3*5*13` (also plain `780`); primes must be ascending.
    fn from_str(s: &str) -> Result<FactoredInt> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty integer".into()));
        }
        if !s.contains(['*', '^']) {
            if s == "1" {
                return Ok(FactoredInt::one());
            }
            let n: u128 = s.parse().map_err(|_| Error::Parse(format!("bad integer {s:?}")))?;
            return FactoredInt::factorize(n);
        }
        let mut factors = Vec::new();
        for part in s.split('*') {
            let (p, e) = match part.split_once('^') {
                Some((p, e)) => (
                    p.trim().parse().map_err(|_| Error::Parse(format!("bad prime {p:?}")))?,
                    e.trim().parse().map_err(|_| Error::Parse(format!("bad exponent {e:?}")))?,
                ),
                None => (
                    part.trim().parse().map_err(|_| Error::Parse(format!("bad prime {part:?}")))?,
                    1,
                ),
            };
            factors.push((p, e));
        }
        FactoredInt::from_factors(factors).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl serde::Serialize for FactoredInt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for FactoredInt {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Multiplicative order of t modulo q^m (q an odd prime).
pub fn mul_order(t: u128, q: u128, m: u32) -> Result<u128> {
    let modulus = prime_power(q, m)?;
    let t = t % modulus;
    if gcd(t, modulus) != 1 {
        return Err(Error::NotCoprime(t, modulus));
    }
    let phi = modulus / q * (q - 1);
    let mut order = phi;
    for (p, _) in factorize(phi)? {
        while order.is_multiple_of(p) && pow_mod(t, order / p, modulus) == 1 {
            order /= p;
        }
    }
    Ok(order)
}

/// Smallest primitive root modulo q^m (q an odd prime).
pub fn smallest_primitive_root(q: u128, m: u32) -> Result<u128> {
    if q == 2 || !is_prime(q) {
        return Err(Error::InvalidArgument(format!("{q} is not an odd prime")));
    }
    let modulus = prime_power(q, m)?;
    let phi = modulus / q * (q - 1);
    let prime_divs: Vec<u128> = factorize(phi)?.into_iter().map(|(p, _)| p).collect();
    let mut g = 2u128;
    loop {
        if !g.is_multiple_of(q) && prime_divs.iter().all(|&p| pow_mod(g, phi / p, modulus) != 1) {
            return Ok(g);
        }
        g += 1;
        debug_assert!(g < modulus);
    }
}

pub(crate) fn prime_power(q: u128, m: u32) -> Result<u128> {
    q.checked_pow(m)
        .filter(|v| v >> MAX_VALUE_BITS == 0)
        .ok_or_else(|| Error::OutOfRange(format!("{q}^{m} exceeds the supported width")))
}

/// Baby-step giant-step for x with base^x = target in a cyclic subgroup of the
/// given order modulo `modulus`.
fn bsgs(base: u128, target: u128, order: u128, modulus: u128) -> Result<u128> {
    let m = (order as f64).sqrt().ceil() as u128 + 1;
    let mut table = std::collections::HashMap::with_capacity(m as usize);
    let mut e: u128 = 1;
    for j in 0..m {
        table.entry(e).or_insert(j);
        e = mul_mod(e, base, modulus);
    }
    let giant = inv_mod(pow_mod(base, m, modulus), modulus).ok_or(Error::NotGenerator)?;
    let mut cur = target % modulus;
    for i in 0..=m {
        if let Some(&j) = table.get(&cur) {
            return Ok((i * m + j) % order);
        }
        cur = mul_mod(cur, giant, modulus);
    }
    Err(Error::NotGenerator)
}

/// Discrete log base g (a primitive root) of t modulo q^m, via Pohlig-Hellman
/// over the factorization of the unit group order.
pub fn discrete_log(g: u128, t: u128, q: u128, m: u32) -> Result<u128> {
    let modulus = prime_power(q, m)?;
    let t = t % modulus;
    if gcd(t, modulus) != 1 {
        return Err(Error::NotCoprime(t, modulus));
    }
    let phi = modulus / q * (q - 1);
    let mut residues = Vec::new();
    for (p, a) in factorize(phi)? {
        let pe = p.pow(a);
        let gp = pow_mod(g, phi / pe, modulus);
        let tp = pow_mod(t, phi / pe, modulus);
        // digit lifting: solve in the order-p^a subgroup one base-p digit at a time
        let gamma = pow_mod(gp, p.pow(a - 1), modulus); // order p
        let gp_inv = inv_mod(gp, modulus).ok_or(Error::NotGenerator)?;
        let mut x: u128 = 0;
        for i in 0..a {
            let h = pow_mod(
                mul_mod(tp, pow_mod(gp_inv, x, modulus), modulus),
                p.pow(a - 1 - i),
                modulus,
            );
            let d = bsgs(gamma, h, p, modulus)?;
            x += d * p.pow(i);
        }
        residues.push((x, pe));
    }
    let x = crt(&residues)?;
    if pow_mod(g, x, modulus) != t {
        return Err(Error::NotGenerator);
    }
    Ok(x)
}

/// Chinese remainder: unique x in [0, prod m_i) with x = r_i mod m_i.
pub fn crt(residues: &[(u128, u128)]) -> Result<u128> {
    let mut x: u128 = 0;
    let mut modulus: u128 = 1;
    for &(r, m) in residues {
        if m == 0 {
            return Err(Error::InvalidArgument("zero modulus".into()));
        }
        let inv = match inv_mod(modulus % m, m) {
            Some(v) => v,
            None if m == 1 => 0,
            None => return Err(Error::ModuliNotCoprime),
        };
        let delta = (r % m + m - x % m) % m;
        let x2 = x + modulus * mul_mod(delta, inv, m);
        modulus = modulus
            .checked_mul(m)
            .filter(|v| v >> MAX_VALUE_BITS == 0)
            .ok_or_else(|| Error::OutOfRange("crt modulus exceeds supported width".into()))?;
        x = x2 % modulus;
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(780).unwrap(), vec![(2, 2), (3, 1), (5, 1), (13, 1)]);
        assert_eq!(factorize(561).unwrap(), vec![(3, 1), (11, 1), (17, 1)]);
        assert_eq!(factorize(1).unwrap(), vec![]);
        assert_eq!(factorize(2u128.pow(40)).unwrap(), vec![(2, 40)]);
        assert!(matches!(factorize(0), Err(Error::OutOfRange(_))));
        assert!(matches!(factorize(1 << 127), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn factorize_large() {
        // prime factors straddling the trial-division limit
        let n = 1_000_003u128 * 1_000_033;
        assert_eq!(factorize(n).unwrap(), vec![(1_000_003, 1), (1_000_033, 1)]);
        let n = 4_294_967_291u128 * 4_294_967_311; // two ~2^32 primes, needs rho
        assert_eq!(factorize(n).unwrap(), vec![(4_294_967_291, 1), (4_294_967_311, 1)]);
    }

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(3));
        assert!(!is_prime(561)); // Carmichael
        assert!(is_prime(1_000_003));
        assert!(is_prime((1u128 << 127) - 1)); // Mersenne prime 2^127-1
        assert!(!is_prime((1u128 << 101) - 1));
        assert!(is_prime(2u128.pow(89) - 1));
    }

    #[test]
    fn mont_matches_naive() {
        let m = (1u128 << 126) + 11; // odd
        let ctx = Mont::new(m);
        for (a, b) in [(3u128, 5u128), (1 << 100, 1 << 99), (m - 1, m - 1), (12345, 1 << 125)] {
            let want = (BigUint::from(a) * BigUint::from(b) % BigUint::from(m))
                .to_u128()
                .unwrap();
            assert_eq!(ctx.from_mont(ctx.mul(ctx.to_mont(a), ctx.to_mont(b))), want);
            assert_eq!(mul_mod(a, b, m), want);
        }
    }

    #[test]
    fn pow_and_inverse() {
        assert_eq!(pow_mod(2, 10, 1000), 24);
        assert_eq!(pow_mod(3, 100, (1 << 126) + 11), {
            let m = BigUint::from((1u128 << 126) + 11);
            BigUint::from(3u32).modpow(&BigUint::from(100u32), &m).to_u128().unwrap()
        });
        for a in [1u128, 2, 3, 97, 12345] {
            let m = 99991;
            let inv = inv_mod(a, m).unwrap();
            assert_eq!(mul_mod(a, inv, m), 1);
        }
        assert_eq!(inv_mod(6, 9), None);
    }

    #[test]
    fn orders_and_roots() {
        assert_eq!(mul_order(8, 13, 1).unwrap(), 4);
        assert_eq!(mul_order(2, 3, 2).unwrap(), 6);
        assert_eq!(smallest_primitive_root(7, 1).unwrap(), 3);
        assert_eq!(smallest_primitive_root(3, 2).unwrap(), 2);
        assert!(matches!(mul_order(3, 3, 2), Err(Error::NotCoprime(..))));
    }

    #[test]
    fn dlog_examples() {
        assert_eq!(discrete_log(2, 8, 13, 1).unwrap(), 3);
        // exhaustive agreement for a prime power modulus
        let (q, m) = (7u128, 3u32);
        let modulus = q.pow(m);
        let g = smallest_primitive_root(q, m).unwrap();
        let mut pw = 1u128;
        for x in 0..modulus / q * (q - 1) {
            assert_eq!(discrete_log(g, pw, q, m).unwrap(), x);
            pw = mul_mod(pw, g, modulus);
        }
        assert!(discrete_log(2, 3, 13, 1).is_ok());
        assert!(matches!(discrete_log(2, 13, 13, 1), Err(Error::NotCoprime(..))));
    }

    #[test]
    fn crt_examples() {
        assert_eq!(crt(&[(2, 3), (3, 5)]).unwrap(), 8);
        assert_eq!(crt(&[]).unwrap(), 0);
        assert_eq!(crt(&[(5, 7)]).unwrap(), 5);
        assert!(matches!(crt(&[(1, 6), (2, 4)]), Err(Error::ModuliNotCoprime)));
        let r = crt(&[(1, 1 << 40), (7, 3u128.pow(25))]).unwrap();
        assert_eq!(r % (1 << 40), 1);
        assert_eq!(r % 3u128.pow(25), 7);
    }

    #[test]
    fn factored_int_round_trip() {
        let n: FactoredInt = "2^2*3*5*13".parse().unwrap();
        assert_eq!(n.to_string(), "2^2*3*5*13");
        assert_eq!(n.value(), &BigUint::from(780u32));
        assert_eq!(n, FactoredInt::factorize(780).unwrap());
        assert_eq!("780".parse::<FactoredInt>().unwrap(), n);
        assert_eq!("1".parse::<FactoredInt>().unwrap(), FactoredInt::one());
        assert!("4*3".parse::<FactoredInt>().is_err()); // 4 not prime
        assert!("3*2".parse::<FactoredInt>().is_err()); // not ascending
        assert!("5^0".parse::<FactoredInt>().is_err());
        // beyond-width value is fine when given factored
        let huge: FactoredInt = "5^5*7^5*11^5*13^5*197^7*251^4*677^8*727^4".parse().unwrap();
        assert!(huge.to_u128().is_none());
        assert_eq!(huge.exponent_of(677), 8);
    }
}
