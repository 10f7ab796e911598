//! Closed-form counting of groups with all Sylow subgroups cyclic.
//!
//! Every such group of order n splits n into coprime parts d*e where the
//! Sylow subgroups over d act faithfully-by-conjugation on the cyclic Hall
//! subgroup over e. The count is a sum over those splittings of an exactly
//! divisible product, evaluated here purely on factored forms so that orders
//! far beyond the native integer width still count in microseconds.

use crate::arith::{prime_power, FactoredInt};
use crate::clusters::Cluster;
use crate::error::{Error, Result};
use crate::structure::action_choice_count;

/// Largest number of distinct primes the splitting enumeration will walk.
const MAX_PRIMES: u32 = 26;

pub(crate) fn padic_val(p: u128, mut x: u128) -> u32 {
    debug_assert!(p >= 2);
    let mut v = 0;
    while x != 0 && x.is_multiple_of(p) {
        x /= p;
        v += 1;
    }
    v
}

/// Exponent nu such that p^nu = prod over primes q of e of gcd(p^j, q - 1):
/// how much room the cyclic group over e leaves for an action of order p^j.
pub fn action_capacity(p: u128, j: u32, e: &FactoredInt) -> u32 {
    let eprimes: Vec<u128> = e.primes().collect();
    capacity(p, j, &eprimes)
}

fn capacity(p: u128, j: u32, eprimes: &[u128]) -> u32 {
    eprimes.iter().map(|&q| j.min(padic_val(p, q - 1))).sum()
}

fn add(a: u128, b: u128) -> Result<u128> {
    a.checked_add(b)
        .ok_or_else(|| Error::OutOfRange("count exceeds the supported width".into()))
}

fn mul(a: u128, b: u128) -> Result<u128> {
    a.checked_mul(b)
        .ok_or_else(|| Error::OutOfRange("count exceeds the supported width".into()))
}

/// Count of groups whose acting part has order exactly p^j; the division is
/// always exact.
fn order_term(p: u128, j: u32, eprimes: &[u128]) -> Result<u128> {
    let hi = prime_power(p, capacity(p, j, eprimes))?;
    let lo = prime_power(p, capacity(p, j - 1, eprimes))?;
    let den = mul(prime_power(p, j - 1)?, p - 1)?;
    debug_assert_eq!((hi - lo) % den, 0);
    Ok((hi - lo) / den)
}

fn prime_part_count(p: u128, alpha: u32, eprimes: &[u128]) -> Result<u128> {
    let mut total: u128 = 0;
    for j in 1..=alpha {
        total = add(total, order_term(p, j, eprimes)?)?;
    }
    Ok(total)
}

fn check_width(n: &FactoredInt) -> Result<()> {
    if n.factors().len() as u32 > MAX_PRIMES {
        return Err(Error::OutOfRange(format!(
            "{} distinct primes exceed the supported {MAX_PRIMES}",
            n.factors().len()
        )));
    }
    Ok(())
}

/// d must be a product of full prime-power parts of n, excluding the part of
/// the largest prime (which can never act on anything).
pub(crate) fn check_divisor(n: &FactoredInt, d: &FactoredInt) -> Result<()> {
    let unitary = d.factors().iter().all(|&(p, a)| n.exponent_of(p) == a);
    let skips_largest = match (d.factors().last(), n.factors().last()) {
        (Some(&(p, _)), Some(&(q, _))) => p != q,
        _ => true,
    };
    if unitary && skips_largest {
        Ok(())
    } else {
        Err(Error::InvalidDivisor { d: d.to_string(), n: n.to_string() })
    }
}

pub(crate) fn complement_primes(n: &FactoredInt, d: &FactoredInt) -> Vec<u128> {
    n.primes().filter(|&p| d.exponent_of(p) == 0).collect()
}

/// Number of isomorphism classes of groups of order n with all Sylow
/// subgroups cyclic (1 for n = 1: the trivial group).
pub fn count_all(n: &FactoredInt) -> Result<u128> {
    check_width(n)?;
    let k = n.factors().len();
    let acting = k.saturating_sub(1); // largest prime contributes nothing
    let mut total: u128 = 0;
    for mask in 0u64..1 << acting {
        let mut term: u128 = 1;
        for i in 0..acting {
            if mask >> i & 1 == 1 {
                let (p, a) = n.factors()[i];
                let eprimes: Vec<u128> = (0..k)
                    .filter(|&j| mask >> j & 1 == 0 || j >= acting)
                    .map(|j| n.factors()[j].0)
                    .collect();
                term = mul(term, prime_part_count(p, a, &eprimes)?)?;
                if term == 0 {
                    break;
                }
            }
        }
        total = add(total, term)?;
    }
    Ok(total)
}

/// The divisors of n whose Sylow subgroups can act on the rest: products of
/// full prime-power parts over subsets of all primes but the largest,
/// ascending by value.
pub fn acting_divisors(n: &FactoredInt) -> Result<Vec<FactoredInt>> {
    check_width(n)?;
    let acting = n.factors().len().saturating_sub(1);
    let mut out = Vec::with_capacity(1 << acting);
    for mask in 0u64..1 << acting {
        let indices: Vec<usize> = (0..acting).filter(|&i| mask >> i & 1 == 1).collect();
        out.push(n.sub_product(&indices));
    }
    out.sort();
    Ok(out)
}

/// Count of groups of order n whose acting part is exactly d.
pub fn count_by_divisor(n: &FactoredInt, d: &FactoredInt) -> Result<u128> {
    check_divisor(n, d)?;
    let eprimes = complement_primes(n, d);
    let mut prod: u128 = 1;
    for &(p, a) in d.factors() {
        prod = mul(prod, prime_part_count(p, a, &eprimes)?)?;
        if prod == 0 {
            break;
        }
    }
    Ok(prod)
}

/// The possible orders of the induced acting group for divisor d of n:
/// multiples of the radical of d dividing both d and the automorphism room
/// of the acted-on part, ascending. Empty when d cannot act faithfully.
pub fn acting_group_orders(n: &FactoredInt, d: &FactoredInt) -> Result<Vec<u128>> {
    check_divisor(n, d)?;
    let eprimes = complement_primes(n, d);
    let mut caps = Vec::with_capacity(d.factors().len());
    for &(p, a) in d.factors() {
        let cap = a.min(eprimes.iter().map(|&q| padic_val(p, q - 1)).sum());
        if cap == 0 {
            return Ok(Vec::new());
        }
        caps.push((p, cap));
    }
    let mut out: Vec<u128> = vec![1];
    for (p, cap) in caps {
        let mut next = Vec::with_capacity(out.len() * cap as usize);
        for m in out {
            let mut pj = p;
            for _ in 1..=cap {
                next.push(mul(m, pj)?);
                pj = mul(pj, p).unwrap_or(0); // only the last value may overflow, unused then
            }
        }
        out = next;
    }
    out.sort_unstable();
    Ok(out)
}

/// Count of groups of order n with acting part d inducing an acting group of
/// order exactly m. Candidates from `acting_group_orders` may count zero.
pub fn count_by_divisor_and_order(n: &FactoredInt, d: &FactoredInt, m: u128) -> Result<u128> {
    check_divisor(n, d)?;
    let mfs = crate::arith::factorize(m)
        .map_err(|_| Error::InvalidActingOrder { m, d: d.to_string(), n: n.to_string() })?;
    let compatible = mfs.len() == d.factors().len()
        && mfs
            .iter()
            .zip(d.factors())
            .all(|(&(p, j), &(dp, da))| p == dp && j <= da);
    if !compatible {
        return Err(Error::InvalidActingOrder { m, d: d.to_string(), n: n.to_string() });
    }
    let eprimes = complement_primes(n, d);
    let mut prod: u128 = 1;
    for (p, j) in mfs {
        prod = mul(prod, order_term(p, j, &eprimes)?)?;
        if prod == 0 {
            break;
        }
    }
    Ok(prod)
}

/// Count of groups realizing one cluster of action triples: the product of
/// the per-triple choice counts in canonical triple order.
pub fn count_by_cluster(cluster: &Cluster) -> Result<u128> {
    let mut prod: u128 = 1;
    for (triple, c) in cluster.with_contexts() {
        prod = mul(prod, action_choice_count(triple.p, triple.e, c)?)?;
    }
    Ok(prod)
}

/// Per-divisor counts, ascending by divisor, plus the total.
#[derive(Clone, Debug)]
pub struct CountBreakdown {
    pub n: FactoredInt,
    pub by_divisor: Vec<(FactoredInt, u128)>,
    pub total: u128,
}

pub fn count_breakdown(n: &FactoredInt) -> Result<CountBreakdown> {
    let mut by_divisor = Vec::new();
    let mut total: u128 = 0;
    for d in acting_divisors(n)? {
        let c = count_by_divisor(n, &d)?;
        total = add(total, c)?;
        by_divisor.push((d, c));
    }
    Ok(CountBreakdown { n: n.clone(), by_divisor, total })
}
