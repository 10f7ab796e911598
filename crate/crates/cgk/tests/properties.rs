//! Randomized invariants over the counting tree, the enumeration, and the
//! modular arithmetic kernels.

use cgk::arith::{discrete_log, gcd, mul_mod, pow_mod, smallest_primitive_root, FactoredInt};
use cgk::clusters::compare_clusters;
use cgk::counting::{acting_divisors, acting_group_orders, count_by_divisor, count_by_divisor_and_order};
use cgk::structure::descriptor_to_metacyclic;
use cgk::{
    clusters_for, count_all, count_breakdown, group_by_id, id_of_descriptor, id_of_metacyclic,
    is_isomorphic, MetacyclicParams,
};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use std::cmp::Ordering;

/// The first unit mod a at or after the seed position, wrapping around.
fn unit_near(seed: u128, a: u128) -> u128 {
    let mut alpha = seed % a + 1;
    while gcd(alpha, a) != 1 {
        alpha = alpha % a + 1;
    }
    alpha
}

proptest! {
    /// Factored text survives a display/parse round trip.
    #[test]
    fn factored_display_round_trips(n in 1u128..1_000_000_000_000) {
        let f = FactoredInt::factorize(n).unwrap();
        let text = f.to_string();
        let back: FactoredInt = text.parse().unwrap();
        prop_assert_eq!(&back, &f);
        prop_assert_eq!(back.value().to_u128().unwrap(), n);
    }

    /// mul_mod agrees with wide-integer arithmetic for any modulus < 2^127.
    #[test]
    fn mul_mod_matches_wide_arithmetic(a: u128, b: u128, m in 2u128..(1u128 << 127)) {
        let got = mul_mod(a, b, m);
        let want = BigUint::from(a) * BigUint::from(b) % BigUint::from(m);
        prop_assert_eq!(BigUint::from(got), want);
    }

    /// pow_mod agrees with wide-integer arithmetic for any modulus < 2^127.
    #[test]
    fn pow_mod_matches_wide_arithmetic(base: u128, exp: u64, m in 2u128..(1u128 << 127)) {
        let got = pow_mod(base, exp as u128, m);
        let want = BigUint::from(base).modpow(&BigUint::from(exp), &BigUint::from(m));
        prop_assert_eq!(BigUint::from(got), want);
    }

    /// discrete_log inverts exponentiation by a primitive root.
    #[test]
    fn discrete_log_recovers_the_exponent(
        qi in 0usize..8,
        m in 1u32..=3,
        x: u64,
    ) {
        let q = [3u128, 5, 7, 11, 13, 17, 19, 1009][qi];
        let modulus = q.pow(m);
        let phi = modulus / q * (q - 1);
        let x = x as u128 % phi;
        let g = smallest_primitive_root(q, m).unwrap();
        let t = pow_mod(g, x, modulus);
        prop_assert_eq!(discrete_log(g, t, q, m).unwrap(), x);
    }

    /// Counts add up the same through every refinement: total, per acting
    /// divisor, per acting order, per cluster.
    #[test]
    fn counting_ladder_is_consistent(n in 2u128..30_000) {
        let n = FactoredInt::factorize(n).unwrap();
        let total = count_all(&n).unwrap();
        let breakdown = count_breakdown(&n).unwrap();
        prop_assert_eq!(breakdown.total, total);

        let mut by_divisor_sum = 0u128;
        for d in acting_divisors(&n).unwrap() {
            let d_count = count_by_divisor(&n, &d).unwrap();
            by_divisor_sum += d_count;

            let mut by_order_sum = 0u128;
            for m in acting_group_orders(&n, &d).unwrap() {
                let m_count = count_by_divisor_and_order(&n, &d, m).unwrap();
                by_order_sum += m_count;

                let clusters = clusters_for(&n, &d, m).unwrap();
                let cluster_sum: u128 = clusters
                    .iter()
                    .map(|c| cgk::counting::count_by_cluster(c).unwrap())
                    .sum();
                prop_assert_eq!(cluster_sum, m_count);
                for pair in clusters.windows(2) {
                    prop_assert_eq!(
                        compare_clusters(&pair[0], &pair[1]).unwrap(),
                        Ordering::Less
                    );
                }
            }
            prop_assert_eq!(by_order_sum, d_count);
        }
        prop_assert_eq!(by_divisor_sum, total);
    }

    /// Every id decodes to a group that encodes back to the same id.
    #[test]
    fn ids_round_trip(n in 2u128..30_000, sel: u64) {
        let f = FactoredInt::factorize(n).unwrap();
        let count = count_all(&f).unwrap();
        let i = 1 + sel as u128 % count;
        let desc = group_by_id(&f, i).unwrap();
        let id = id_of_descriptor(&desc).unwrap();
        prop_assert_eq!(id.i, i);
        prop_assert_eq!(id.n, BigUint::from(n));
    }

    /// Two groups of the same order are isomorphic exactly when their ids match.
    #[test]
    fn isomorphism_agrees_with_id_equality(n in 2u128..5_000, s1: u64, s2: u64) {
        let f = FactoredInt::factorize(n).unwrap();
        let count = count_all(&f).unwrap();
        let i1 = 1 + s1 as u128 % count;
        let i2 = 1 + s2 as u128 % count;
        let m1 = descriptor_to_metacyclic(&group_by_id(&f, i1).unwrap()).unwrap();
        let m2 = descriptor_to_metacyclic(&group_by_id(&f, i2).unwrap()).unwrap();
        prop_assert_eq!(is_isomorphic(&m1, &m2).unwrap(), i1 == i2);
        prop_assert_eq!(is_isomorphic(&m2, &m1).unwrap(), i1 == i2);
    }

    /// Replacing the acting generator x by x^alpha (alpha a unit) rewrites
    /// r to r^alpha without changing which group it is.
    #[test]
    fn generator_twists_keep_the_id(n in 2u128..5_000, sel: u64, twist: u64) {
        let f = FactoredInt::factorize(n).unwrap();
        let count = count_all(&f).unwrap();
        let i = 1 + sel as u128 % count;
        let desc = group_by_id(&f, i).unwrap();
        let params = descriptor_to_metacyclic(&desc).unwrap();
        let a = params.a.to_u128().unwrap();
        let b = params.b.to_u128().unwrap();
        let r = params.r.to_u128().unwrap();
        let alpha = unit_near(twist as u128, a);
        let twisted = MetacyclicParams::from_u128(a, b, pow_mod(r, alpha, b.max(1)));
        prop_assert_eq!(id_of_metacyclic(&twisted).unwrap(), id_of_metacyclic(&params).unwrap());
        prop_assert_eq!(id_of_metacyclic(&params).unwrap().i, i);
    }
}
