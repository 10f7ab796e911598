//! The canonical enumeration: every group of order n with all Sylow
//! subgroups cyclic gets an id (n, i) with 1 <= i <= count, and ids can be
//! decoded back to groups without materializing the whole list.
//!
//! Order of enumeration: acting divisors ascending, then acting orders
//! ascending, then clusters in canonical order, then automorphism choices in
//! mixed radix with the last triple varying fastest. The identity map in
//! `identify` inverts this.

use num_bigint::BigUint;

use crate::arith::FactoredInt;
use crate::clusters::{clusters_for, Cluster};
use crate::counting::{
    acting_divisors, acting_group_orders, count_all, count_by_cluster, count_by_divisor,
    count_by_divisor_and_order,
};
use crate::error::{Error, Result};
use crate::structure::{choice_radices, rep_at, CGroupDescriptor, TripleChoice};

/// Position of a group in the canonical enumeration of its order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupId {
    pub n: BigUint,
    pub i: u128,
}

impl GroupId {
    pub fn new(n: BigUint, i: u128) -> GroupId {
        GroupId { n, i }
    }
}

impl std::fmt::Display for GroupId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "n={} i={}", self.n, self.i)
    }
}

impl serde::Serialize for GroupId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("GroupId", 2)?;
        st.serialize_field("n", &self.n.to_string())?;
        if let Ok(small) = u64::try_from(self.i) {
            st.serialize_field("i", &small)?;
        } else {
            st.serialize_field("i", &self.i.to_string())?;
        }
        st.end()
    }
}

fn id_out_of_range(n: &FactoredInt, i: u128) -> Result<Error> {
    Ok(Error::IdOutOfRange {
        n: n.value().to_string(),
        i,
        count: count_all(n)?,
    })
}

/// Decode the choice part s (0-based within a cluster) into one k per triple.
fn decode_choices(radices: &[TripleChoice], mut s: u128) -> Result<Vec<u128>> {
    let mut ks = vec![0u128; radices.len()];
    for (slot, tc) in ks.iter_mut().zip(radices).rev() {
        let digit = s % tc.radix;
        s /= tc.radix;
        *slot = rep_at(tc.triple.p, tc.triple.e, tc.context, digit)?;
    }
    debug_assert_eq!(s, 0);
    Ok(ks)
}

/// The group with id (n, i): walks the enumeration prefix sums down to one
/// cluster, then decodes the remaining index as automorphism choices.
pub fn group_by_id(n: &FactoredInt, i: u128) -> Result<CGroupDescriptor> {
    if i == 0 {
        return Err(id_out_of_range(n, i)?);
    }
    let mut rem = i - 1;
    for d in acting_divisors(n)? {
        let in_d = count_by_divisor(n, &d)?;
        if rem >= in_d {
            rem -= in_d;
            continue;
        }
        for m in acting_group_orders(n, &d)? {
            let in_m = count_by_divisor_and_order(n, &d, m)?;
            if rem >= in_m {
                rem -= in_m;
                continue;
            }
            for cluster in clusters_for(n, &d, m)? {
                let in_cluster = count_by_cluster(&cluster)?;
                if rem >= in_cluster {
                    rem -= in_cluster;
                    continue;
                }
                let radices = choice_radices(&cluster)?;
                let ks = decode_choices(&radices, rem)?;
                return CGroupDescriptor::new(cluster, ks);
            }
            unreachable!("cluster counts sum to the (d, m) count");
        }
        unreachable!("acting order counts sum to the divisor count");
    }
    Err(id_out_of_range(n, i)?)
}

/// Streaming enumeration of all groups of order n in canonical order.
/// Construction validates n; per-item errors are reported in the stream.
pub fn all_groups(n: &FactoredInt) -> Result<AllGroups> {
    Ok(AllGroups {
        n: n.clone(),
        divisors: acting_divisors(n)?.into_iter(),
        orders: Vec::new().into_iter(),
        current_divisor: None,
        clusters: Vec::new().into_iter(),
        decode: None,
    })
}

pub struct AllGroups {
    n: FactoredInt,
    divisors: std::vec::IntoIter<FactoredInt>,
    orders: std::vec::IntoIter<u128>,
    current_divisor: Option<FactoredInt>,
    clusters: std::vec::IntoIter<Cluster>,
    decode: Option<ClusterDecode>,
}

struct ClusterDecode {
    cluster: Cluster,
    radices: Vec<TripleChoice>,
    next: u128,
    total: u128,
}

impl Iterator for AllGroups {
    type Item = Result<CGroupDescriptor>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            if let Some(state) = &mut self.decode {
                if state.next < state.total {
                    let s = state.next;
                    state.next += 1;
                    let item = decode_choices(&state.radices, s)
                        .and_then(|ks| CGroupDescriptor::new(state.cluster.clone(), ks));
                    return Some(item);
                }
                self.decode = None;
            }
            if let Some(cluster) = self.clusters.next() {
                match cluster_decode(cluster) {
                    Ok(state) => {
                        self.decode = Some(state);
                        continue;
                    }
                    Err(e) => return Some(Err(e)),
                }
            }
            if let Some(m) = self.orders.next() {
                let d = self.current_divisor.as_ref().expect("divisor set before orders");
                match clusters_for(&self.n, d, m) {
                    Ok(list) => {
                        self.clusters = list.into_iter();
                        continue;
                    }
                    Err(e) => return Some(Err(e)),
                }
            }
            let d = self.divisors.next()?;
            match acting_group_orders(&self.n, &d) {
                Ok(orders) => {
                    self.orders = orders.into_iter();
                    self.current_divisor = Some(d);
                }
                Err(e) => return Some(Err(e)),
            }
        }
    }
}

fn cluster_decode(cluster: Cluster) -> Result<ClusterDecode> {
    let radices = choice_radices(&cluster)?;
    let mut total: u128 = 1;
    for tc in &radices {
        total = total
            .checked_mul(tc.radix)
            .ok_or_else(|| Error::OutOfRange("choice count exceeds the supported width".into()))?;
    }
    Ok(ClusterDecode { cluster, radices, next: 0, total })
}
