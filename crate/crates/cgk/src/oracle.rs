//! An independent check: for small orders, find the groups by direct search
//! over metacyclic parameters and compare against counting, enumeration and
//! identification.

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{gcd, pow_mod, prime_power, FactoredInt};
use crate::counting::count_all;
use crate::enumerate::{all_groups, group_by_id};
use crate::error::{Error, Result};
use crate::identify::{id_of_descriptor, is_isomorphic};
use crate::structure::{
    descriptor_to_metacyclic, metacyclic_to_descriptor, validate_metacyclic, MetacyclicParams,
};

/// Largest order the direct search accepts.
pub const ORACLE_BOUND: u64 = 100_000;

/// Multiplicative order of r modulo b by direct iteration (b need not be a
/// prime power here, unlike the pipeline's moduli).
fn order_mod(r: u64, b: u64) -> u64 {
    let mut t = r % b;
    let mut o = 1;
    while t != 1 {
        t = t * r % b;
        o += 1;
    }
    o
}

/// One metacyclic representative per isomorphism class of order n, found by
/// scanning all valid (a, b, r) and keeping the smallest r of each power
/// orbit; sorted by (b, r). Only orders up to `ORACLE_BOUND` are searched.
pub fn brute_force_reps(n: u64) -> Result<Vec<MetacyclicParams>> {
    if n == 0 {
        return Err(Error::InvalidArgument("the order must be positive".into()));
    }
    if n > ORACLE_BOUND {
        return Err(Error::BoundExceeded(n, ORACLE_BOUND));
    }
    let parts: Vec<u64> = crate::arith::factorize(n as u128)?
        .iter()
        .map(|&(p, a)| prime_power(p, a).map(|pp| pp as u64))
        .collect::<Result<_>>()?;
    let mut found: Vec<(u64, u64, u64)> = Vec::new();
    for mask in 0..(1u32 << parts.len()) {
        let b: u64 = parts
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &pp)| pp)
            .product();
        if b.is_multiple_of(2) {
            continue;
        }
        let a = n / b;
        if b == 1 {
            found.push((a, 1, 0));
            continue;
        }
        let mut seen = vec![false; b as usize];
        for r in 2..b {
            if seen[r as usize]
                || gcd(r as u128, b as u128) != 1
                || gcd((r - 1) as u128, b as u128) != 1
                || pow_mod(r as u128, a as u128, b as u128) != 1
            {
                continue;
            }
            // r is the least member of its orbit; mark every unit power of r
            let o = order_mod(r, b);
            let mut t = r;
            for k in 1..=o {
                if gcd(k as u128, o as u128) == 1 {
                    seen[t as usize] = true;
                }
                t = t * r % b;
            }
            found.push((a, b, r));
        }
    }
    found.sort_unstable_by_key(|&(_, b, r)| (b, r));
    Ok(found
        .into_iter()
        .map(|(a, b, r)| MetacyclicParams::from_u128(a as u128, b as u128, r as u128))
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
}

/// Outcome of cross-checking one order.
#[derive(Clone, Debug, serde::Serialize)]
pub struct CrossCheckReport {
    pub n: u64,
    #[serde(serialize_with = "crate::oracle::serialize_count")]
    pub count: u128,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

pub(crate) fn serialize_count<S: serde::Serializer>(
    count: &u128,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match u64::try_from(*count) {
        Ok(small) => s.serialize_u64(small),
        Err(_) => s.serialize_str(&count.to_string()),
    }
}

impl CrossCheckReport {
    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

fn cross_check_inner(n: u64, seed: Option<u64>) -> std::result::Result<u128, String> {
    fn err(stage: &str) -> impl Fn(Error) -> String + '_ {
        move |e| format!("{stage}: {e}")
    }
    let nf = FactoredInt::factorize(n as u128).map_err(err("factorize"))?;
    let reps = brute_force_reps(n).map_err(err("direct search"))?;
    let count = count_all(&nf).map_err(err("count"))?;
    ensure!(
        count == reps.len() as u128,
        "count {count} disagrees with {} groups found by direct search",
        reps.len()
    );

    // every representative identifies, and the ids are exactly 1..=count
    let mut ids = Vec::with_capacity(reps.len());
    for params in &reps {
        let desc = metacyclic_to_descriptor(params).map_err(err("recover descriptor"))?;
        let id = id_of_descriptor(&desc).map_err(err("identify"))?;
        ensure!(id.n == BigUint::from(n), "{params} identified under wrong order {}", id.n);
        ids.push(id.i);
    }
    ids.sort_unstable();
    ensure!(
        ids == (1..=count).collect::<Vec<_>>(),
        "ids of the direct-search groups are not a bijection onto 1..={count}: {ids:?}"
    );

    // construction by id round trips, in both group forms, and matches the stream
    let stream: Vec<_> = all_groups(&nf)
        .map_err(err("enumerate"))?
        .collect::<Result<_>>()
        .map_err(err("enumerate"))?;
    ensure!(
        stream.len() as u128 == count,
        "enumeration produced {} groups instead of {count}",
        stream.len()
    );
    for i in 1..=count {
        let desc = group_by_id(&nf, i).map_err(err("construct by id"))?;
        ensure!(
            desc == stream[(i - 1) as usize],
            "group {i} from the stream differs from direct construction"
        );
        let id = id_of_descriptor(&desc).map_err(err("identify"))?;
        ensure!(id.i == i, "group {i} identifies as {}", id.i);
        let params = descriptor_to_metacyclic(&desc).map_err(err("present"))?;
        ensure!(validate_metacyclic(&params), "group {i} yields invalid parameters {params}");
        let back = metacyclic_to_descriptor(&params).map_err(err("recover descriptor"))?;
        let back_id = id_of_descriptor(&back).map_err(err("identify"))?;
        ensure!(
            back_id.i == i,
            "group {i} comes back as {} after a metacyclic round trip",
            back_id.i
        );
    }

    // isomorphism decisions agree with id equality on a sample of pairs
    let sample = reps.len().min(25);
    for (i, x) in reps.iter().take(sample).enumerate() {
        for y in reps.iter().take(sample).skip(i + 1) {
            match is_isomorphic(x, y) {
                Ok(false) => {}
                Ok(true) => return Err(format!("{x} and {y} claimed isomorphic")),
                Err(e) => return Err(format!("isomorphism test: {e}")),
            }
        }
    }

    // replacing r by a unit power must not change the id
    if let Some(seed) = seed {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let twisted: Vec<&MetacyclicParams> =
            reps.iter().filter(|p| !p.b.is_one()).collect();
        for params in twisted.iter().take(8) {
            let a = u64::try_from(&params.a).expect("searched orders fit");
            let b = u64::try_from(&params.b).expect("searched orders fit");
            let r = u64::try_from(&params.r).expect("searched orders fit");
            let o = order_mod(r, b);
            let alpha = loop {
                let candidate = rng.gen_range(1..=a);
                if gcd(candidate as u128, o as u128) == 1 {
                    break candidate;
                }
            };
            let twist = MetacyclicParams::from_u128(
                a as u128,
                b as u128,
                pow_mod(r as u128, alpha as u128, b as u128),
            );
            match is_isomorphic(params, &twist) {
                Ok(true) => {}
                Ok(false) => return Err(format!("{params} not isomorphic to its twist {twist}")),
                Err(e) => return Err(format!("isomorphism test: {e}")),
            }
            let id1 = id_of_descriptor(&metacyclic_to_descriptor(params).map_err(err("twist"))?)
                .map_err(err("twist"))?;
            let id2 = id_of_descriptor(&metacyclic_to_descriptor(&twist).map_err(err("twist"))?)
                .map_err(err("twist"))?;
            ensure!(
                id1 == id2,
                "{params} and its twist {twist} get different ids {id1} and {id2}"
            );
        }
    }

    Ok(count)
}

/// Run every consistency check for one order: direct search vs count, id
/// bijectivity, round trips through ids and metacyclic parameters, stream
/// agreement, isomorphism decisions, and (when seeded) r-twist invariance.
pub fn cross_check(n: u64, seed: Option<u64>) -> CrossCheckReport {
    match cross_check_inner(n, seed) {
        Ok(count) => CrossCheckReport { n, count, status: CheckStatus::Pass, counterexample: None },
        Err(msg) => CrossCheckReport {
            n,
            count: 0,
            status: CheckStatus::Fail,
            counterexample: Some(msg),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tuples(n: u64) -> Vec<(u128, u128, u128)> {
        brute_force_reps(n)
            .unwrap()
            .iter()
            .map(|p| {
                (
                    u128::try_from(&p.a).unwrap(),
                    u128::try_from(&p.b).unwrap(),
                    u128::try_from(&p.r).unwrap(),
                )
            })
            .collect()
    }

    #[test]
    fn direct_search_small_orders() {
        assert_eq!(tuples(1), [(1, 1, 0)]);
        assert_eq!(tuples(6), [(6, 1, 0), (2, 3, 2)]);
        assert_eq!(tuples(12), [(12, 1, 0), (4, 3, 2)]);
        assert_eq!(tuples(8), [(8, 1, 0)]);
        // order 21: cyclic and the nonabelian 7:3
        assert_eq!(tuples(21), [(21, 1, 0), (3, 7, 2)]);
        // order 30: all Sylow subgroups cyclic in all four groups
        assert_eq!(tuples(30).len(), 4);
    }

    #[test]
    fn bound_is_enforced() {
        assert!(matches!(
            brute_force_reps(ORACLE_BOUND + 1),
            Err(Error::BoundExceeded(_, ORACLE_BOUND))
        ));
        assert!(brute_force_reps(ORACLE_BOUND).is_ok());
    }

    #[test]
    fn cross_check_small_range() {
        for n in 1..=120 {
            let report = cross_check(n, Some(7));
            assert!(
                report.passed(),
                "n = {n}: {}",
                report.counterexample.unwrap_or_default()
            );
        }
    }

    #[test]
    fn report_serialization() {
        let report = cross_check(12, None);
        assert_eq!(
            serde_json::to_string(&report).unwrap(),
            r#"{"n":12,"count":2,"status":"pass"}"#
        );
    }
}
