//! End-to-end acceptance checks: frozen totals, catalog tables, ordering,
//! round trips, oracle agreement, and permutation-group recognition.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see one
//! PASS/FAIL line per criterion.

use cgk::arith::{pow_mod, FactoredInt};
use cgk::clusters::compare_clusters;
use cgk::counting::{
    acting_divisors, acting_group_orders, count_by_cluster, count_by_divisor,
    count_by_divisor_and_order,
};
use cgk::structure::descriptor_to_metacyclic;
use cgk::{
    all_groups, clusters_for, count_all, count_range, count_range_squarefree, cross_check,
    group_by_id, id_of_descriptor, id_of_metacyclic, id_of_permutation_group,
    regular_representation, verify_range, ConcreteOptions, Error, GroupId, MetacyclicParams,
    Perm, PermutationGroup,
};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::panic::{catch_unwind, resume_unwind, UnwindSafe};

fn check<F: FnOnce() + UnwindSafe>(name: &str, f: F) {
    match catch_unwind(f) {
        Ok(()) => println!("PASS  {name}"),
        Err(cause) => {
            println!("FAIL  {name}");
            resume_unwind(cause);
        }
    }
}

fn f(n: u128) -> FactoredInt {
    FactoredInt::factorize(n).unwrap()
}

#[test]
fn global_count_to_100000() {
    check("count over all orders up to 100000 is 576093", || {
        assert_eq!(count_range(1, 100_000).unwrap(), 576_093);
    });
}

#[test]
fn squarefree_counts() {
    check("squarefree counts up to 250000 and 100000 are 566801 and 208014", || {
        assert_eq!(count_range_squarefree(1, 250_000).unwrap(), 566_801);
        assert_eq!(count_range_squarefree(1, 100_000).unwrap(), 208_014);
    });
}

#[test]
fn large_composite_orders() {
    check("eight large composite orders have the expected counts", || {
        let rows: [(&str, u128); 8] = [
            ("5^5*7^5*11^5*13^5*197^7*251^4*677^8*727^4", 225),
            ("2^2*31^2*113^3*227^4*293^4*373", 276),
            ("2^5*3^5*101^3*103*313^2*367^5", 840),
            ("2^3*173^2*233^4*241^2*307^2*337^2", 1168),
            ("3^3*5^3*7^2*11^3*23^2*43^2*101^2*127^2", 1305),
            ("2^4*5^4*73*101^2*113^3*349^3", 2720),
            ("2^2*3^5*5*61^2*73^5*349^4", 4128),
            ("3^3*5^2*7^3*29^3*43^3*59^2*173^3*233^3*431^2", 6006),
        ];
        for (text, want) in rows {
            let n: FactoredInt = text.parse().unwrap();
            assert_eq!(count_all(&n).unwrap(), want, "order {text}");
        }
    });
}

#[test]
fn large_squarefree_orders() {
    check("seven large squarefree orders factor and count correctly", || {
        let rows: [(u128, &[u128], u128); 7] = [
            (
                4140806021907601450474046095,
                &[5, 7, 17, 59, 307, 1789, 4817, 16369, 17551, 155191],
                126,
            ),
            (
                1054578325689038795758113,
                &[3, 7, 11, 13, 293, 347, 701, 4649, 5521, 191969],
                299,
            ),
            (
                18246294181628283634185,
                &[3, 5, 7, 373, 449, 1289, 4957, 9281, 17497],
                1678,
            ),
            (
                288580601323668153539638920527445,
                &[3, 5, 19, 23, 379, 479, 2927, 4547, 10601, 930409, 1847359],
                110,
            ),
            (
                4100698523844820373769891971054,
                &[2, 11, 17, 29, 311, 347, 2689, 3847, 6569, 216761, 237851],
                1024,
            ),
            (24898143467617960290, &[2, 3, 5, 17, 179, 3067, 16097, 5524399], 384),
            (
                2533036924228662499419966,
                &[2, 3, 17, 29, 271, 383, 1543, 2087, 12911, 198439],
                3840,
            ),
        ];
        for (n, primes, want) in rows {
            let factored = f(n);
            assert!(factored.is_squarefree(), "order {n}");
            let got_primes: Vec<u128> = factored.primes().collect();
            assert_eq!(got_primes, primes, "order {n}");
            assert_eq!(factored.value().to_u128().unwrap(), n);
            assert_eq!(count_all(&factored).unwrap(), want, "order {n}");
        }
    });
}

#[test]
fn cluster_order_780() {
    check("the ten clusters of order 780 under d=4, m=4 come out in canonical order", || {
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
        for pair in got.windows(2) {
            assert_eq!(
                compare_clusters(&pair[0], &pair[1]).unwrap(),
                std::cmp::Ordering::Less
            );
        }
    });
}

#[test]
fn id_round_trips_to_3000() {
    check("every id up to order 3000 round trips; 9946 groups in total", || {
        let mut total: u128 = 0;
        for n in 1u128..=3000 {
            let factored = f(n);
            let count = count_all(&factored).unwrap();
            total += count;
            let mut streamed = 0u128;
            for (idx, item) in all_groups(&factored).unwrap().enumerate() {
                let desc = item.unwrap();
                let i = idx as u128 + 1;
                streamed += 1;
                let id = id_of_descriptor(&desc).unwrap();
                assert_eq!(id, GroupId::new(BigUint::from(n), i), "n={n}");
                assert_eq!(&group_by_id(&factored, i).unwrap(), &desc, "n={n} i={i}");
            }
            assert_eq!(streamed, count, "n={n}");
        }
        assert_eq!(total, 9946);
    });
}

#[test]
fn oracle_agreement() {
    check("direct search agrees for all orders up to 2000 and 200 sampled orders up to 100000", || {
        let reports = verify_range(1, 2000, Some(20260816));
        for report in &reports {
            assert!(report.passed(), "order {}: {:?}", report.n, report.counterexample);
        }
        assert_eq!(reports.len(), 2000);

        let mut rng = ChaCha8Rng::seed_from_u64(20260816);
        for _ in 0..200 {
            let n = rng.gen_range(2001..=100_000u64);
            let report = cross_check(n, Some(rng.gen()));
            assert!(report.passed(), "order {n}: {:?}", report.counterexample);
        }
    });
}

#[test]
fn twist_invariance() {
    check("1000 random generator twists r -> r^alpha keep the id", || {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut trials = 0;
        while trials < 1000 {
            let n = rng.gen_range(2u128..=1_000_000);
            let factored = f(n);
            let count = count_all(&factored).unwrap();
            if count < 2 {
                continue;
            }
            // ids above 1 are exactly the nonabelian groups, so b > 1
            let i = rng.gen_range(2..=count);
            let desc = group_by_id(&factored, i).unwrap();
            let params = descriptor_to_metacyclic(&desc).unwrap();
            let a = params.a.to_u128().unwrap();
            let b = params.b.to_u128().unwrap();
            let r = params.r.to_u128().unwrap();
            let alpha = loop {
                let alpha = rng.gen_range(1..=a);
                if cgk::arith::gcd(alpha, a) == 1 {
                    break alpha;
                }
            };
            let twisted = MetacyclicParams::from_u128(a, b, pow_mod(r, alpha, b));
            let id = id_of_metacyclic(&params).unwrap();
            assert_eq!(id_of_metacyclic(&twisted).unwrap(), id, "n={n} i={i} alpha={alpha}");
            assert_eq!(id.i, i);
            trials += 1;
        }
    });
}

#[test]
fn permutation_round_trip() {
    check("regular representations of all groups up to order 200 identify back; A4 is rejected", || {
        let options = ConcreteOptions::default();
        for n in 1u128..=200 {
            let factored = f(n);
            let count = count_all(&factored).unwrap();
            for i in 1..=count {
                let desc = group_by_id(&factored, i).unwrap();
                let want = id_of_descriptor(&desc).unwrap();
                let group = regular_representation(&desc, &options).unwrap();
                let got = id_of_permutation_group(&group, &options).unwrap();
                assert_eq!(got, want, "n={n} i={i}");
            }
        }

        let a4 = PermutationGroup::new(
            4,
            vec![
                Perm::from_images(vec![1, 2, 0, 3]).unwrap(),
                Perm::from_images(vec![0, 2, 3, 1]).unwrap(),
            ],
        )
        .unwrap();
        match id_of_permutation_group(&a4, &options) {
            Err(Error::NotCGroup(_)) => {}
            other => panic!("A4 should be rejected, got {other:?}"),
        }
    });
}

#[test]
fn refinement_sums() {
    check("per-divisor, per-order and per-cluster counts add up for 500 sampled orders", || {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..500 {
            let n = f(rng.gen_range(2u128..=100_000));
            let total = count_all(&n).unwrap();
            let mut divisor_sum = 0u128;
            for d in acting_divisors(&n).unwrap() {
                let d_count = count_by_divisor(&n, &d).unwrap();
                divisor_sum += d_count;
                let mut order_sum = 0u128;
                for m in acting_group_orders(&n, &d).unwrap() {
                    let m_count = count_by_divisor_and_order(&n, &d, m).unwrap();
                    order_sum += m_count;
                    let cluster_sum: u128 = clusters_for(&n, &d, m)
                        .unwrap()
                        .iter()
                        .map(|c| count_by_cluster(c).unwrap())
                        .sum();
                    assert_eq!(cluster_sum, m_count, "n={} d={} m={m}", n.value(), d.value());
                }
                assert_eq!(order_sum, d_count, "n={} d={}", n.value(), d.value());
            }
            assert_eq!(divisor_sum, total, "n={}", n.value());
        }
    });
}
