//! From combinatorial data to groups: canonical action representatives,
//! group descriptors, and conversions to metacyclic and polycyclic forms.
//!
//! A descriptor pins down one group as a cluster plus, per triple (p, q, e),
//! a unit k below p^e selecting which automorphism of order p^e the Sylow
//! p-subgroup induces. Different k vectors can give isomorphic groups; the
//! normalization in `identify` quotients that out.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{
    discrete_log, factorize, inv_mod, mul_mod, mul_order, pow_mod, prime_power,
    smallest_primitive_root, FactoredInt,
};
use crate::clusters::{ActionTriple, Cluster};
use crate::counting::padic_val;
use crate::error::{Error, Result};

/// How many canonical choices of k exist for a triple with exponent e when
/// the largest exponent already seen for the same acting prime is c.
pub fn action_choice_count(p: u128, e: u32, c: u32) -> Result<u128> {
    if p < 2 || e == 0 {
        return Err(Error::InvalidArgument(format!(
            "need a prime p and a positive exponent, got p = {p}, e = {e}"
        )));
    }
    let width = if c == 0 {
        return Ok(1);
    } else if e <= c {
        e
    } else {
        c
    };
    prime_power(p, width - 1)?
        .checked_mul(p - 1)
        .ok_or_else(|| Error::OutOfRange("choice count exceeds the supported width".into()))
}

/// The idx-th (0-based) positive integer coprime to p, ascending.
fn unit_at(p: u128, idx: u128) -> u128 {
    idx + 1 + idx / (p - 1)
}

/// Inverse of `unit_at`: the 0-based rank of the unit v among units.
pub(crate) fn unit_rank(p: u128, v: u128) -> u128 {
    debug_assert!(v >= 1 && !v.is_multiple_of(p));
    v - 1 - (v - 1) / p
}

/// The idx-th canonical representative k for a triple (p, ., e) in context c.
pub(crate) fn rep_at(p: u128, e: u32, c: u32, idx: u128) -> Result<u128> {
    let count = action_choice_count(p, e, c)?;
    if idx >= count {
        return Err(Error::InvalidArgument(format!(
            "representative index {idx} out of {count}"
        )));
    }
    Ok(if c == 0 { 1 } else { unit_at(p, idx) })
}

/// All canonical k values for a triple with exponent e in context c: [1] for
/// the first triple of its acting prime, otherwise the units below
/// p^min(e, c), ascending.
pub fn canonical_action_reps(p: u128, e: u32, c: u32) -> Result<Vec<u128>> {
    let count = action_choice_count(p, e, c)?;
    if count > 1 << 24 {
        return Err(Error::OutOfRange(format!(
            "{count} representatives are too many to materialize"
        )));
    }
    (0..count).map(|i| rep_at(p, e, c, i)).collect()
}

/// The canonical automorphism exponent for choice k of a triple (p, q, e)
/// acting on the Sylow subgroup of order q^m: t = rho^(k * phi / p^e) with
/// rho the smallest primitive root modulo q^m, so t has order exactly p^e.
pub fn action_exponent(q: u128, m: u32, p: u128, e: u32, k: u128) -> Result<u128> {
    let modulus = prime_power(q, m)?;
    let phi = modulus / q * (q - 1);
    let pe = prime_power(p, e)?;
    if e == 0 || !phi.is_multiple_of(pe) {
        return Err(Error::ExponentTooLarge { p, e, q, m });
    }
    if k == 0 || k >= pe || k.is_multiple_of(p) {
        return Err(Error::InvalidArgument(format!(
            "k = {k} is not a unit below {p}^{e}"
        )));
    }
    let rho = smallest_primitive_root(q, m)?;
    Ok(pow_mod(rho, k * (phi / pe), modulus)) // k < p^e, so the product stays below phi
}

/// One group with all Sylow subgroups cyclic: a cluster plus one unit k per
/// triple choosing the induced automorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CGroupDescriptor {
    cluster: Cluster,
    ks: Vec<u128>,
}

impl CGroupDescriptor {
    pub fn new(cluster: Cluster, ks: Vec<u128>) -> Result<CGroupDescriptor> {
        if ks.len() != cluster.triples().len() {
            return Err(Error::InvalidDescriptor(format!(
                "{} choices for {} triples",
                ks.len(),
                cluster.triples().len()
            )));
        }
        for (t, &k) in cluster.triples().iter().zip(&ks) {
            let pe = prime_power(t.p, t.e)?;
            if k == 0 || k >= pe || k % t.p == 0 {
                return Err(Error::InvalidDescriptor(format!(
                    "k = {k} is not a unit below {}^{}",
                    t.p, t.e
                )));
            }
        }
        Ok(CGroupDescriptor { cluster, ks })
    }

    pub fn cyclic(n: FactoredInt) -> CGroupDescriptor {
        CGroupDescriptor {
            cluster: Cluster::new(n, Vec::new()).expect("empty cluster is permissible"),
            ks: Vec::new(),
        }
    }

    pub fn cluster(&self) -> &Cluster {
        &self.cluster
    }

    /// Automorphism choices, aligned with `cluster().triples()`.
    pub fn action_choices(&self) -> &[u128] {
        &self.ks
    }

    pub fn order(&self) -> &FactoredInt {
        self.cluster.order()
    }

    pub fn is_abelian(&self) -> bool {
        self.cluster.triples().is_empty()
    }
}

impl serde::Serialize for CGroupDescriptor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("CGroupDescriptor", 3)?;
        st.serialize_field("n", &self.order().to_string())?;
        st.serialize_field("cluster", self.cluster.triples())?;
        let ks: Vec<(u128, u128, u128)> = self
            .cluster
            .triples()
            .iter()
            .zip(&self.ks)
            .map(|(t, &k)| (t.p, t.q, k))
            .collect();
        st.serialize_field("k", &ks)?;
        st.end()
    }
}

/// Triple choices with their canonical context and radix, in canonical order.
pub(crate) struct TripleChoice {
    pub triple: ActionTriple,
    pub context: u32,
    pub radix: u128,
}

pub(crate) fn choice_radices(cluster: &Cluster) -> Result<Vec<TripleChoice>> {
    cluster
        .with_contexts()
        .map(|(t, c)| {
            Ok(TripleChoice {
                triple: *t,
                context: c,
                radix: action_choice_count(t.p, t.e, c)?,
            })
        })
        .collect()
}

/// Parameters of the presentation x^a = y^b = 1, x^-1 y x = y^r. Kept as big
/// integers so groups of any order can at least be named.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetacyclicParams {
    pub a: BigUint,
    pub b: BigUint,
    pub r: BigUint,
}

impl MetacyclicParams {
    pub fn new(a: BigUint, b: BigUint, r: BigUint) -> MetacyclicParams {
        MetacyclicParams { a, b, r }
    }

    pub fn from_u128(a: u128, b: u128, r: u128) -> MetacyclicParams {
        MetacyclicParams {
            a: BigUint::from(a),
            b: BigUint::from(b),
            r: BigUint::from(r),
        }
    }

    pub fn order(&self) -> BigUint {
        &self.a * &self.b
    }
}

impl std::fmt::Display for MetacyclicParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "a={} b={} r={}", self.a, self.b, self.r)
    }
}

/// Whether (a, b, r) defines a group with all Sylow subgroups cyclic, with
/// every such group hit exactly by the parameters this accepts: a, b >= 1,
/// b odd, gcd(a, b) = 1, and r a unit with r^a = 1 and gcd(r - 1, b) = 1
/// (r = 0 exactly when b = 1).
pub fn validate_metacyclic(params: &MetacyclicParams) -> bool {
    let MetacyclicParams { a, b, r } = params;
    let one = BigUint::one();
    if a.is_zero() || b.is_zero() {
        return false;
    }
    if b.is_one() {
        return r.is_zero();
    }
    if (b % 2u32).is_zero() || r >= b || r.is_zero() {
        return false;
    }
    a.gcd(b).is_one()
        && r.gcd(b).is_one()
        && (r - &one).gcd(b).is_one()
        && r.modpow(a, b).is_one()
}

/// Chinese remainder over pairwise coprime word-sized moduli, combined into a
/// big integer.
fn crt_big(residues: &[(u128, u128)]) -> BigUint {
    let mut x = BigUint::zero();
    let mut modulus = BigUint::one();
    for &(r, m) in residues {
        let cur = (&x % m).to_u128().expect("residue below a word-sized modulus");
        let delta = (r % m + m - cur) % m;
        let inv = inv_mod(
            (&modulus % m).to_u128().expect("reduced modulus fits"),
            m,
        )
        .expect("moduli are pairwise coprime");
        x += &modulus * mul_mod(delta, inv, m);
        modulus *= m;
    }
    x
}

/// The metacyclic parameters of a descriptor: b collects the acted-on Sylow
/// subgroups, a the rest, and r acts on y as the combination of the chosen
/// canonical automorphisms.
pub fn descriptor_to_metacyclic(desc: &CGroupDescriptor) -> Result<MetacyclicParams> {
    let n = desc.order();
    let mut residues: Vec<(u128, u128)> = Vec::new();
    let mut b = BigUint::one();
    for &(q, exp) in n.factors() {
        if !desc.cluster().triples().iter().any(|t| t.q == q) {
            continue;
        }
        let modulus = prime_power(q, exp)?;
        let mut rq: u128 = 1;
        for (t, &k) in desc.cluster().triples().iter().zip(desc.action_choices()) {
            if t.q == q {
                rq = mul_mod(rq, action_exponent(q, exp, t.p, t.e, k)?, modulus);
            }
        }
        residues.push((rq, modulus));
        b *= modulus;
    }
    let a = n.value() / &b;
    let r = if residues.is_empty() { BigUint::zero() } else { crt_big(&residues) };
    Ok(MetacyclicParams { a, b, r })
}

/// Rebuild a descriptor from per-part data: the acting prime powers, the
/// acted-on prime powers, and the action residue modulo each acted-on part.
/// The recovered k values are raw, not canonical; identification normalizes.
pub(crate) fn parts_to_descriptor(
    n: &FactoredInt,
    acting: &[(u128, u32)],
    acted: &[(u128, u32)],
    residues: &[(u128, u128)],
) -> Result<CGroupDescriptor> {
    debug_assert_eq!(acted.len(), residues.len());
    let mut found: Vec<(ActionTriple, u128)> = Vec::new();
    for (&(q, qexp), &(rq_prime, rq)) in acted.iter().zip(residues) {
        debug_assert_eq!(q, rq_prime);
        let modulus = prime_power(q, qexp)?;
        let phi = modulus / q * (q - 1);
        let mut acted_on = false;
        for &(p, _) in acting {
            // (a / p^(a_p)) mod phi, taken prime power by prime power
            let mut exp: u128 = 1;
            for &(p2, a2) in acting {
                if p2 != p {
                    exp = mul_mod(exp, pow_mod(p2, a2 as u128, phi), phi);
                }
            }
            let tp = pow_mod(rq, exp, modulus);
            if tp == 1 {
                continue;
            }
            let o = mul_order(tp, q, qexp)?;
            let e = padic_val(p, o);
            if prime_power(p, e)? != o {
                return Err(Error::InvalidParams(format!(
                    "the action of the {p}-part on the {q}-part has composite order {o}"
                )));
            }
            let rho = smallest_primitive_root(q, qexp)?;
            let x = discrete_log(rho, tp, q, qexp)?;
            let chunk = phi / prime_power(p, e)?;
            debug_assert_eq!(x % chunk, 0);
            found.push((ActionTriple::new(p, q, e), x / chunk));
            acted_on = true;
        }
        if !acted_on {
            return Err(Error::InvalidParams(format!(
                "nothing acts on the {q}-part"
            )));
        }
    }
    found.sort_unstable_by_key(|&(t, _)| (t.p, t.q));
    let (triples, ks): (Vec<ActionTriple>, Vec<u128>) = found.into_iter().unzip();
    CGroupDescriptor::new(Cluster::new(n.clone(), triples)?, ks)
}

/// Recover a descriptor from metacyclic parameters; the inverse of
/// `descriptor_to_metacyclic` up to isomorphism. Both a and b must fit the
/// operational width so their parts can be factored.
pub fn metacyclic_to_descriptor(params: &MetacyclicParams) -> Result<CGroupDescriptor> {
    if !validate_metacyclic(params) {
        return Err(Error::InvalidParams(params.to_string()));
    }
    let a = params
        .a
        .to_u128()
        .ok_or_else(|| Error::OutOfRange(format!("a = {} exceeds the supported width", params.a)))?;
    let b = params
        .b
        .to_u128()
        .ok_or_else(|| Error::OutOfRange(format!("b = {} exceeds the supported width", params.b)))?;
    let acting = factorize(a)?;
    let acted = factorize(b)?;
    let mut merged = [acting.clone(), acted.clone()].concat();
    merged.sort_unstable_by_key(|&(p, _)| p);
    let n = FactoredInt::from_factors(merged)?;
    let residues: Vec<(u128, u128)> = acted
        .iter()
        .map(|&(q, exp)| {
            let modulus = prime_power(q, exp)?;
            let rq = (&params.r % modulus).to_u128().expect("reduced below a word-sized modulus");
            Ok((q, rq))
        })
        .collect::<Result<_>>()?;
    parts_to_descriptor(&n, &acting, &acted, &residues)
}

/// A polycyclic presentation: one generator per prime, cyclic of its full
/// prime-power order, with conjugation relations g_j^(g_i) = g_j^t between
/// them; absent pairs commute.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcPresentation {
    /// (prime, order of the generator = prime^exponent), ascending in prime.
    pub generators: Vec<(u128, u128)>,
    /// (i, j, t), 1-based indices into `generators`: g_j^(g_i) = g_j^t.
    pub relations: Vec<(usize, usize, u128)>,
}

impl std::fmt::Display for PcPresentation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "<")?;
        for (i, _) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "g{}", i + 1)?;
        }
        write!(f, " | ")?;
        for (i, (_, order)) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "g{}^{}", i + 1, order)?;
        }
        for &(i, j, t) in &self.relations {
            write!(f, ", g{j}^g{i} = g{j}^{t}")?;
        }
        write!(f, ">")
    }
}

/// The polycyclic presentation realizing a descriptor, with the canonical
/// automorphism exponent spelled out for each triple.
pub fn descriptor_to_presentation(desc: &CGroupDescriptor) -> Result<PcPresentation> {
    let n = desc.order();
    let generators: Vec<(u128, u128)> = n
        .factors()
        .iter()
        .map(|&(p, a)| Ok((p, prime_power(p, a)?)))
        .collect::<Result<_>>()?;
    let index_of = |prime: u128| {
        n.factors()
            .iter()
            .position(|&(p, _)| p == prime)
            .expect("triple primes divide the order")
            + 1
    };
    let relations: Vec<(usize, usize, u128)> = desc
        .cluster()
        .triples()
        .iter()
        .zip(desc.action_choices())
        .map(|(t, &k)| {
            let t_exp = action_exponent(t.q, n.exponent_of(t.q), t.p, t.e, k)?;
            Ok((index_of(t.p), index_of(t.q), t_exp))
        })
        .collect::<Result<_>>()?;
    Ok(PcPresentation { generators, relations })
}

/// Recover a descriptor from a polycyclic presentation of the above shape.
pub fn presentation_to_descriptor(pres: &PcPresentation) -> Result<CGroupDescriptor> {
    let bad = |msg: String| Err(Error::InvalidDescriptor(msg));
    let mut parts: Vec<(u128, u32)> = Vec::with_capacity(pres.generators.len());
    for &(p, order) in &pres.generators {
        if !crate::arith::is_prime(p) {
            return bad(format!("generator prime {p} is not prime"));
        }
        let a = padic_val(p, order);
        if a == 0 || prime_power(p, a)? != order {
            return bad(format!("generator order {order} is not a power of {p}"));
        }
        parts.push((p, a));
    }
    let mut sorted = parts.clone();
    sorted.sort_unstable_by_key(|&(p, _)| p);
    if sorted.windows(2).any(|w| w[0].0 == w[1].0) {
        return bad("duplicate generator primes".into());
    }
    let n = FactoredInt::from_factors(sorted)?;
    let mut seen_pairs = Vec::new();
    for &(i, j, t) in &pres.relations {
        if i == 0 || j == 0 || i > parts.len() || j > parts.len() || i == j {
            return bad(format!("relation indices ({i}, {j}) out of range"));
        }
        if seen_pairs.contains(&(i, j)) {
            return bad(format!("duplicate relation for pair ({i}, {j})"));
        }
        seen_pairs.push((i, j));
        let (p, ap) = parts[i - 1];
        let (q, aq) = parts[j - 1];
        let modulus = prime_power(q, aq)?;
        if t == 0 || t % q == 0 {
            return bad(format!("conjugation exponent {t} is not a unit modulo {q}^{aq}"));
        }
        // consistency: conjugating by g_i^(its order) must act trivially
        if pow_mod(t, prime_power(p, ap)?, modulus) != 1 {
            return bad(format!(
                "conjugation exponent {t} has order not dividing {p}^{ap}"
            ));
        }
    }
    let sources: Vec<usize> = pres.relations.iter().map(|&(i, _, _)| i).collect();
    let targets: Vec<usize> = pres.relations.iter().map(|&(_, j, _)| j).collect();
    if let Some(&x) = sources.iter().find(|i| targets.contains(i)) {
        return bad(format!("generator g{x} both acts and is acted on"));
    }
    let acted: Vec<(u128, u32)> = {
        let mut v: Vec<(u128, u32)> = targets
            .iter()
            .map(|&j| parts[j - 1])
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        v.sort_unstable_by_key(|&(q, _)| q);
        v
    };
    let acting: Vec<(u128, u32)> = n
        .factors()
        .iter()
        .copied()
        .filter(|&(p, _)| !acted.iter().any(|&(q, _)| q == p))
        .collect();
    let residues: Vec<(u128, u128)> = acted
        .iter()
        .map(|&(q, aq)| {
            let modulus = prime_power(q, aq)?;
            let mut rq: u128 = 1;
            for &(j, t) in pres
                .relations
                .iter()
                .filter(|&&(_, j, _)| parts[j - 1].0 == q)
                .map(|&(_, j, t)| (j, t))
                .collect::<Vec<_>>()
                .iter()
            {
                debug_assert_eq!(parts[j - 1].0, q);
                rq = mul_mod(rq, t, modulus);
            }
            Ok((q, rq))
        })
        .collect::<Result<_>>()?;
    parts_to_descriptor(&n, &acting, &acted, &residues)
        .map_err(|e| Error::InvalidDescriptor(e.to_string()))
}

/// Modular inverse for big integers (helper for quotient exponents).
pub(crate) fn big_inv_mod(a: &BigUint, m: &BigUint) -> Option<BigUint> {
    if m.is_one() {
        return Some(BigUint::zero());
    }
    let ext = BigInt::from(a % m).extended_gcd(&BigInt::from(m.clone()));
    if !ext.gcd.is_one() {
        return None;
    }
    let m_int = BigInt::from(m.clone());
    let x = ((ext.x % &m_int) + &m_int) % &m_int;
    Some(x.to_biguint().expect("reduced to a nonnegative residue"))
}
