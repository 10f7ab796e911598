//! Action clusters: which Sylow subgroup acts on which, and how strongly.
//!
//! A cluster is a set of triples (p, q, e) meaning the Sylow p-subgroup acts
//! on the Sylow q-subgroup with image of order p^e. Clusters sharing the same
//! order, acting divisor and acting-group order form one enumeration context
//! with a canonical total order; `clusters_for` generates them in exactly that
//! order and `compare_clusters` reproduces it pairwise.

use std::cmp::Ordering;

use serde::ser::SerializeSeq;

use crate::arith::{prime_power, FactoredInt};
use crate::counting::padic_val;
use crate::error::{Error, Result};

/// One conjugation action: the Sylow p-subgroup acts on the Sylow q-subgroup
/// through an automorphism group of order p^e.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ActionTriple {
    pub p: u128,
    pub q: u128,
    pub e: u32,
}

impl ActionTriple {
    pub fn new(p: u128, q: u128, e: u32) -> ActionTriple {
        ActionTriple { p, q, e }
    }
}

impl serde::Serialize for ActionTriple {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(3))?;
        seq.serialize_element(&self.p)?;
        seq.serialize_element(&self.q)?;
        seq.serialize_element(&self.e)?;
        seq.end()
    }
}

/// A permissible set of action triples for one group order, kept sorted by
/// (p, q). The empty cluster stands for the cyclic group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cluster {
    n: FactoredInt,
    triples: Vec<ActionTriple>,
}

impl Cluster {
    pub fn new(n: FactoredInt, mut triples: Vec<ActionTriple>) -> Result<Cluster> {
        triples.sort_unstable();
        check_permissible(&n, &triples)?;
        Ok(Cluster { n, triples })
    }

    pub fn order(&self) -> &FactoredInt {
        &self.n
    }

    pub fn triples(&self) -> &[ActionTriple] {
        &self.triples
    }

    /// The acting divisor: full prime-power parts of the acting primes.
    pub fn acting_divisor(&self) -> FactoredInt {
        let indices: Vec<usize> = self
            .n
            .factors()
            .iter()
            .enumerate()
            .filter(|(_, &(p, _))| self.triples.iter().any(|t| t.p == p))
            .map(|(i, _)| i)
            .collect();
        self.n.sub_product(&indices)
    }

    /// The order of the induced acting group: the product over acting primes
    /// of p to the largest exponent appearing for p.
    pub fn acting_order(&self) -> Result<u128> {
        let mut m: u128 = 1;
        for (p, j, _) in per_prime_blocks(self) {
            m = m
                .checked_mul(prime_power(p, j)?)
                .ok_or_else(|| Error::OutOfRange("acting order overflow".into()))?;
        }
        Ok(m)
    }

    /// Triples in canonical order, each with the largest exponent seen so far
    /// for the same acting prime (0 for its first triple).
    pub(crate) fn with_contexts(&self) -> impl Iterator<Item = (&ActionTriple, u32)> {
        let mut cur_p: u128 = 0;
        let mut max_e: u32 = 0;
        self.triples.iter().map(move |t| {
            if t.p != cur_p {
                cur_p = t.p;
                max_e = 0;
            }
            let c = max_e;
            max_e = max_e.max(t.e);
            (t, c)
        })
    }
}

fn check_permissible(n: &FactoredInt, triples: &[ActionTriple]) -> Result<()> {
    let fail = |msg: String| Err(Error::NotPermissible(msg));
    for (i, t) in triples.iter().enumerate() {
        let ActionTriple { p, q, e } = *t;
        if n.exponent_of(p) == 0 || n.exponent_of(q) == 0 {
            return fail(format!("({p}, {q}, {e}): primes must divide {n}"));
        }
        if p >= q {
            return fail(format!("({p}, {q}, {e}): acting prime must be smaller"));
        }
        if e == 0 {
            return fail(format!("({p}, {q}, {e}): trivial action"));
        }
        if e > n.exponent_of(p) {
            return fail(format!("({p}, {q}, {e}): exponent exceeds the Sylow rank"));
        }
        if padic_val(p, q - 1) < e {
            return fail(format!("({p}, {q}, {e}): {p}^{e} does not divide {q} - 1"));
        }
        if i > 0 && (triples[i - 1].p, triples[i - 1].q) == (p, q) {
            return fail(format!("duplicate action pair ({p}, {q})"));
        }
    }
    let acts = |x: u128| triples.iter().any(|t| t.p == x);
    if let Some(t) = triples.iter().find(|t| acts(t.q)) {
        return fail(format!("prime {} both acts and is acted on", t.q));
    }
    Ok(())
}

/// Per-prime candidate list: acted-on primes q with p dividing q - 1, paired
/// with the largest usable exponent min(j, v_p(q - 1)); ascending in q.
fn candidates(p: u128, j: u32, eprimes: &[u128]) -> Vec<(u128, u32)> {
    eprimes
        .iter()
        .filter_map(|&q| {
            let cap = j.min(padic_val(p, q - 1));
            (cap >= 1).then_some((q, cap))
        })
        .collect()
}

/// All exponent assignments for acting prime p with maximum exponent exactly
/// j, in canonical order. Each choice lists (q, e) pairs sorted by q.
fn per_prime_choices(p: u128, j: u32, eprimes: &[u128]) -> Vec<Vec<(u128, u32)>> {
    let cands = candidates(p, j, eprimes);
    let mut out = Vec::new();
    for &(anchor, cap) in &cands {
        if cap < j {
            continue; // cannot reach the maximum exponent
        }
        // significance order: below the anchor descending, above ascending;
        // digits below the anchor may not reach j (the anchor is the smallest
        // prime attaining it)
        let mut seq: Vec<(u128, u32)> = cands
            .iter()
            .rev()
            .filter(|&&(q, _)| q < anchor)
            .map(|&(q, c)| (q, c.min(j - 1)))
            .collect();
        seq.extend(cands.iter().filter(|&&(q, _)| q > anchor).copied());
        let mut digits = vec![0u32; seq.len()];
        'odometer: loop {
            let mut choice: Vec<(u128, u32)> = vec![(anchor, j)];
            choice.extend(
                seq.iter()
                    .zip(&digits)
                    .filter(|(_, &d)| d > 0)
                    .map(|(&(q, _), &d)| (q, d)),
            );
            choice.sort_unstable();
            out.push(choice);
            // advance the odometer, last position fastest
            let mut i = seq.len();
            loop {
                if i == 0 {
                    break 'odometer;
                }
                i -= 1;
                if digits[i] < seq[i].1 {
                    digits[i] += 1;
                    break;
                }
                digits[i] = 0;
            }
        }
    }
    out
}

/// All clusters for order n with acting divisor d and acting-group order m,
/// in canonical order.
pub fn clusters_for(n: &FactoredInt, d: &FactoredInt, m: u128) -> Result<Vec<Cluster>> {
    crate::counting::check_divisor(n, d)?;
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
    let eprimes = crate::counting::complement_primes(n, d);
    let mut clusters: Vec<Vec<ActionTriple>> = vec![Vec::new()];
    for &(p, j) in &mfs {
        let choices = per_prime_choices(p, j, &eprimes);
        let mut next = Vec::with_capacity(clusters.len() * choices.len());
        for prefix in &clusters {
            for choice in &choices {
                let mut triples = prefix.clone();
                triples.extend(choice.iter().map(|&(q, e)| ActionTriple { p, q, e }));
                next.push(triples);
            }
        }
        clusters = next;
    }
    clusters
        .into_iter()
        .map(|mut triples| {
            triples.sort_unstable();
            debug_assert!(check_permissible(n, &triples).is_ok());
            Ok(Cluster { n: n.clone(), triples })
        })
        .collect()
}

/// Canonical order between clusters of the same context (same order, acting
/// divisor and acting-group order); `ContextMismatch` otherwise.
pub fn compare_clusters(a: &Cluster, b: &Cluster) -> Result<Ordering> {
    if a.n != b.n {
        return Err(Error::ContextMismatch);
    }
    let blocks_a = per_prime_blocks(a);
    let blocks_b = per_prime_blocks(b);
    if blocks_a.len() != blocks_b.len() {
        return Err(Error::ContextMismatch);
    }
    let acting: Vec<u128> = blocks_a.iter().map(|&(p, _, _)| p).collect();
    let eprimes: Vec<u128> = a.n.primes().filter(|p| !acting.contains(p)).collect();
    for (&(p, j, ref qa), &(pb, jb, ref qb)) in blocks_a.iter().zip(&blocks_b) {
        if p != pb || j != jb {
            return Err(Error::ContextMismatch);
        }
        let anchor_a = anchor(qa, j);
        let anchor_b = anchor(qb, j);
        if anchor_a != anchor_b {
            return Ok(anchor_a.cmp(&anchor_b));
        }
        let exp = |qs: &[(u128, u32)], q: u128| {
            qs.iter().find(|&&(qq, _)| qq == q).map_or(0, |&(_, e)| e)
        };
        let cands = candidates(p, j, &eprimes);
        let below = cands.iter().rev().filter(|&&(q, _)| q < anchor_a);
        let above = cands.iter().filter(|&&(q, _)| q > anchor_a);
        for &(q, _) in below.chain(above) {
            let (da, db) = (exp(qa, q), exp(qb, q));
            if da != db {
                return Ok(da.cmp(&db));
            }
        }
    }
    Ok(Ordering::Equal)
}

/// Per acting prime: (p, max exponent, [(q, e)] ascending in q).
type PrimeBlocks = Vec<(u128, u32, Vec<(u128, u32)>)>;

/// Group a cluster's triples by acting prime, ascending.
fn per_prime_blocks(c: &Cluster) -> PrimeBlocks {
    let mut blocks: PrimeBlocks = Vec::new();
    for t in &c.triples {
        match blocks.last_mut() {
            Some((p, j, qs)) if *p == t.p => {
                *j = (*j).max(t.e);
                qs.push((t.q, t.e));
            }
            _ => blocks.push((t.p, t.e, vec![(t.q, t.e)])),
        }
    }
    blocks
}

/// The smallest acted-on prime attaining the maximum exponent.
fn anchor(qs: &[(u128, u32)], j: u32) -> u128 {
    qs.iter().find(|&&(_, e)| e == j).map(|&(q, _)| q).expect("max exponent attained")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(n: u128) -> FactoredInt {
        FactoredInt::factorize(n).unwrap()
    }

    fn triples(spec: &[(u128, u128, u32)]) -> Vec<ActionTriple> {
        spec.iter().map(|&(p, q, e)| ActionTriple { p, q, e }).collect()
    }

    #[test]
    fn golden_order_780() {
        let golden: Vec<Vec<(u128, u128, u32)>> = vec![
            vec![(2, 5, 2)],
            vec![(2, 5, 2), (2, 13, 1)],
            vec![(2, 5, 2), (2, 13, 2)],
            vec![(2, 3, 1), (2, 5, 2)],
            vec![(2, 3, 1), (2, 5, 2), (2, 13, 1)],
            vec![(2, 3, 1), (2, 5, 2), (2, 13, 2)],
            vec![(2, 13, 2)],
            vec![(2, 3, 1), (2, 13, 2)],
            vec![(2, 5, 1), (2, 13, 2)],
            vec![(2, 3, 1), (2, 5, 1), (2, 13, 2)],
        ];
        let got = clusters_for(&f(780), &f(4), 4).unwrap();
        let got_triples: Vec<Vec<(u128, u128, u32)>> = got
            .iter()
            .map(|c| c.triples().iter().map(|t| (t.p, t.q, t.e)).collect())
            .collect();
        let golden_sorted: Vec<Vec<(u128, u128, u32)>> = golden
            .iter()
            .map(|v| {
                let mut v = v.clone();
                v.sort_unstable();
                v
            })
            .collect();
        assert_eq!(got_triples, golden_sorted);
    }

    #[test]
    fn generation_matches_comparator() {
        for (n, d, m) in [(780u128, 4u128, 4u128), (780, 4, 2), (780, 12, 12), (780, 12, 6)] {
            let cs = clusters_for(&f(n), &f(d), m).unwrap();
            for i in 0..cs.len() {
                for j in 0..cs.len() {
                    assert_eq!(
                        compare_clusters(&cs[i], &cs[j]).unwrap(),
                        i.cmp(&j),
                        "(n, d, m) = ({n}, {d}, {m}), positions {i} and {j}"
                    );
                }
            }
        }
    }

    #[test]
    fn abelian_context() {
        let cs = clusters_for(&f(780), &f(1), 1).unwrap();
        assert_eq!(cs.len(), 1);
        assert!(cs[0].triples().is_empty());
        assert_eq!(cs[0].acting_order().unwrap(), 1);
        assert!(cs[0].acting_divisor().is_one());
    }

    #[test]
    fn divisor_and_order_accessors() {
        let c = Cluster::new(f(780), triples(&[(2, 5, 2), (2, 13, 1)])).unwrap();
        assert_eq!(c.acting_divisor().to_string(), "2^2");
        assert_eq!(c.acting_order().unwrap(), 4);
        let c = Cluster::new(f(780), triples(&[(2, 13, 1), (3, 13, 1)])).unwrap();
        assert_eq!(c.acting_divisor().to_string(), "2^2*3");
        assert_eq!(c.acting_order().unwrap(), 6);
    }

    #[test]
    fn permissibility() {
        let n = f(780);
        let bad = [
            triples(&[(2, 7, 1)]),         // 7 does not divide 780
            triples(&[(5, 3, 1)]),         // acting prime not smaller
            triples(&[(2, 3, 0)]),         // trivial action
            triples(&[(2, 3, 2)]),         // 4 does not divide 2
            triples(&[(2, 13, 3)]),        // exceeds Sylow rank of 2
            triples(&[(2, 13, 1), (2, 13, 2)]), // duplicate pair
            triples(&[(2, 3, 1), (3, 13, 1)]),  // 3 acts and is acted on
        ];
        for t in bad {
            assert!(
                matches!(Cluster::new(n.clone(), t.clone()), Err(Error::NotPermissible(_))),
                "{t:?}"
            );
        }
        assert!(Cluster::new(n.clone(), triples(&[(2, 13, 2), (3, 13, 1)])).is_ok());
        assert!(Cluster::new(n, Vec::new()).is_ok());
    }

    #[test]
    fn context_mismatch() {
        let a = Cluster::new(f(780), triples(&[(2, 5, 2)])).unwrap();
        let b = Cluster::new(f(780), triples(&[(2, 5, 1)])).unwrap(); // different m
        let c = Cluster::new(f(780), triples(&[(3, 13, 1)])).unwrap(); // different d
        let d = Cluster::new(f(1560), triples(&[(2, 5, 2)])).unwrap(); // different n
        assert!(matches!(compare_clusters(&a, &b), Err(Error::ContextMismatch)));
        assert!(matches!(compare_clusters(&a, &c), Err(Error::ContextMismatch)));
        assert!(matches!(compare_clusters(&a, &d), Err(Error::ContextMismatch)));
        assert_eq!(compare_clusters(&a, &a).unwrap(), Ordering::Equal);
    }

    #[test]
    fn cluster_counts() {
        use crate::counting::count_by_cluster;
        let c = Cluster::new(f(780), triples(&[(2, 5, 2), (2, 13, 2)])).unwrap();
        assert_eq!(count_by_cluster(&c).unwrap(), 2);
        let c = Cluster::new(f(780), triples(&[(2, 3, 1), (2, 13, 2)])).unwrap();
        assert_eq!(count_by_cluster(&c).unwrap(), 1);
        // ladder: per-cluster counts refine the (divisor, order) count
        for (d, m) in [(4u128, 4u128), (4, 2), (12, 6), (12, 12)] {
            let total: u128 = clusters_for(&f(780), &f(d), m)
                .unwrap()
                .iter()
                .map(|c| count_by_cluster(c).unwrap())
                .sum();
            assert_eq!(
                total,
                crate::counting::count_by_divisor_and_order(&f(780), &f(d), m).unwrap()
            );
        }
    }
}
