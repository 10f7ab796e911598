//! Identification: map a group, however presented, to its canonical id, and
//! decide isomorphism of metacyclic parameter pairs directly.

use num_traits::{One, ToPrimitive};

use crate::arith::{
    discrete_log, factorize, gcd, inv_mod, mul_mod, prime_power, smallest_primitive_root,
};
use crate::counting::{
    acting_divisors, acting_group_orders, count_by_cluster, count_by_divisor,
    count_by_divisor_and_order,
};
use crate::clusters::clusters_for;
use crate::enumerate::GroupId;
use crate::error::{Error, Result};
use crate::structure::{
    choice_radices, metacyclic_to_descriptor, unit_rank, validate_metacyclic, CGroupDescriptor,
    MetacyclicParams,
};

fn add(a: u128, b: u128) -> Result<u128> {
    a.checked_add(b)
        .ok_or_else(|| Error::OutOfRange("id exceeds the supported width".into()))
}

/// Normalized choice digits for a descriptor, aligned with its triples.
///
/// Raw k values select an automorphism relative to a fixed primitive root,
/// but replacing the generator of an acting Sylow subgroup rescales all its
/// k values by a common unit. Dividing each acting prime's k values by the
/// first one (suitably reduced) cancels that freedom; the digits returned
/// here are equal for descriptors of isomorphic groups.
fn normalized_digits(desc: &CGroupDescriptor) -> Result<Vec<u128>> {
    let mut digits = Vec::with_capacity(desc.action_choices().len());
    let mut state: Vec<(u128, u128, u32)> = Vec::new(); // (p, v, largest e so far)
    for (t, &k) in desc.cluster().triples().iter().zip(desc.action_choices()) {
        let pe = prime_power(t.p, t.e)?;
        match state.iter_mut().find(|(p, _, _)| *p == t.p) {
            None => {
                let v = inv_mod(k, pe).expect("descriptor k values are units");
                state.push((t.p, v, t.e));
                digits.push(0);
            }
            Some((_, v, cap)) => {
                if t.e <= *cap {
                    let kappa = mul_mod(k % pe, *v % pe, pe);
                    digits.push(unit_rank(t.p, kappa));
                } else {
                    let pcap = prime_power(t.p, *cap)?;
                    let kappa = mul_mod(k % pcap, *v % pcap, pcap);
                    digits.push(unit_rank(t.p, kappa));
                    let kinv = inv_mod(k, pe).expect("descriptor k values are units");
                    *v = mul_mod(kappa, kinv, pe);
                    *cap = t.e;
                }
            }
        }
    }
    Ok(digits)
}

/// The canonical id of the group a descriptor presents. Descriptors of
/// isomorphic groups get the same id even when their raw k values differ.
pub fn id_of_descriptor(desc: &CGroupDescriptor) -> Result<GroupId> {
    let n = desc.order();
    let cluster = desc.cluster();
    let mut i: u128 = 0;

    let d = cluster.acting_divisor();
    let mut found = false;
    for other in acting_divisors(n)? {
        if other == d {
            found = true;
            break;
        }
        i = add(i, count_by_divisor(n, &other)?)?;
    }
    debug_assert!(found, "a valid cluster's acting divisor is enumerated");

    let m = cluster.acting_order()?;
    for other in acting_group_orders(n, &d)? {
        if other == m {
            break;
        }
        i = add(i, count_by_divisor_and_order(n, &d, other)?)?;
    }

    for other in clusters_for(n, &d, m)? {
        if other == *cluster {
            break;
        }
        i = add(i, count_by_cluster(&other)?)?;
    }

    let mut s: u128 = 0;
    for (tc, digit) in choice_radices(cluster)?.iter().zip(normalized_digits(desc)?) {
        s = add(
            s.checked_mul(tc.radix)
                .ok_or_else(|| Error::OutOfRange("id exceeds the supported width".into()))?,
            digit,
        )?;
    }

    Ok(GroupId::new(n.value().clone(), add(i, add(s, 1)?)?))
}

/// Canonical id of the group with metacyclic parameters (a, b, r).
pub fn id_of_metacyclic(params: &MetacyclicParams) -> Result<GroupId> {
    id_of_descriptor(&metacyclic_to_descriptor(params)?)
}

/// Merge x = r1 mod m1 with x = r2 mod m2; None when they conflict.
fn merge_congruence(r1: u128, m1: u128, r2: u128, m2: u128) -> Option<(u128, u128)> {
    let g = gcd(m1, m2);
    if r1 % g != r2 % g {
        return None;
    }
    let m2g = m2 / g;
    let l = m1 * m2g;
    let t = if m2g == 1 {
        0
    } else {
        let dm = ((r2 % m2) + m2 - (r1 % m2)) % m2;
        mul_mod((dm / g) % m2g, inv_mod((m1 / g) % m2g, m2g)?, m2g)
    };
    Some(((r1 + m1 * t) % l, l))
}

/// Whether two metacyclic parameter triples present isomorphic groups:
/// (a, b, r) and (a, b, r') do exactly when r' is a power of r with unit
/// exponent, tested here one acted-on Sylow subgroup at a time through
/// discrete logarithms, merging the per-part exponent constraints.
pub fn is_isomorphic(x: &MetacyclicParams, y: &MetacyclicParams) -> Result<bool> {
    for params in [x, y] {
        if !validate_metacyclic(params) {
            return Err(Error::InvalidParams(params.to_string()));
        }
    }
    if x.a != y.a || x.b != y.b {
        return Ok(false);
    }
    if x.b.is_one() {
        return Ok(true);
    }
    let b = x
        .b
        .to_u128()
        .ok_or_else(|| Error::OutOfRange(format!("b = {} exceeds the supported width", x.b)))?;
    let mut merged: Option<(u128, u128)> = None;
    for (q, gamma) in factorize(b)? {
        let modulus = prime_power(q, gamma)?;
        let phi = modulus / q * (q - 1);
        let rho = smallest_primitive_root(q, gamma)?;
        let r1 = (&x.r % modulus).to_u128().expect("reduced residue fits");
        let r2 = (&y.r % modulus).to_u128().expect("reduced residue fits");
        let x1 = discrete_log(rho, r1, q, gamma)?;
        let x2 = discrete_log(rho, r2, q, gamma)?;
        let g1 = gcd(x1, phi);
        if g1 != gcd(x2, phi) {
            return Ok(false); // different orders of r in this Sylow subgroup
        }
        let m = phi / g1;
        let beta = if m == 1 {
            0
        } else {
            mul_mod(
                (x2 / g1) % m,
                inv_mod((x1 / g1) % m, m).expect("cofactor is a unit"),
                m,
            )
        };
        merged = Some(match merged {
            None => (beta % m.max(1), m.max(1)),
            Some((r0, m0)) => match merge_congruence(r0, m0, beta, m.max(1)) {
                Some(next) => next,
                None => return Ok(false),
            },
        });
    }
    Ok(true)
}
