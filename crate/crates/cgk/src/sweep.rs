//! Sweeps over ranges of orders: totals of the count function and batch
//! cross-checks. The `parallel` feature (on by default) makes the undecorated
//! entry points fan out with rayon; the `_serial` twins are always available.

use crate::arith::FactoredInt;
use crate::counting::count_all;
use crate::error::{Error, Result};
use crate::oracle::{cross_check, CrossCheckReport};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

fn add(a: u128, b: u128) -> Result<u128> {
    a.checked_add(b)
        .ok_or_else(|| Error::OutOfRange("range total exceeds the supported width".into()))
}

fn count_one(n: u64) -> Result<u128> {
    count_all(&FactoredInt::factorize(n as u128)?)
}

fn count_one_squarefree(n: u64) -> Result<u128> {
    let nf = FactoredInt::factorize(n as u128)?;
    if nf.is_squarefree() {
        count_all(&nf)
    } else {
        Ok(0)
    }
}

/// Sum of the group counts over all orders in lo..=hi.
pub fn count_range(lo: u64, hi: u64) -> Result<u128> {
    #[cfg(feature = "parallel")]
    {
        count_range_parallel(lo, hi)
    }
    #[cfg(not(feature = "parallel"))]
    {
        count_range_serial(lo, hi)
    }
}

pub fn count_range_serial(lo: u64, hi: u64) -> Result<u128> {
    let mut total: u128 = 0;
    for n in lo.max(1)..=hi {
        total = add(total, count_one(n)?)?;
    }
    Ok(total)
}

#[cfg(feature = "parallel")]
pub fn count_range_parallel(lo: u64, hi: u64) -> Result<u128> {
    (lo.max(1)..=hi)
        .into_par_iter()
        .map(count_one)
        .try_reduce(|| 0, add)
}

/// Sum of the group counts over the squarefree orders in lo..=hi.
pub fn count_range_squarefree(lo: u64, hi: u64) -> Result<u128> {
    #[cfg(feature = "parallel")]
    {
        count_range_squarefree_parallel(lo, hi)
    }
    #[cfg(not(feature = "parallel"))]
    {
        count_range_squarefree_serial(lo, hi)
    }
}

pub fn count_range_squarefree_serial(lo: u64, hi: u64) -> Result<u128> {
    let mut total: u128 = 0;
    for n in lo.max(1)..=hi {
        total = add(total, count_one_squarefree(n)?)?;
    }
    Ok(total)
}

#[cfg(feature = "parallel")]
pub fn count_range_squarefree_parallel(lo: u64, hi: u64) -> Result<u128> {
    (lo.max(1)..=hi)
        .into_par_iter()
        .map(count_one_squarefree)
        .try_reduce(|| 0, add)
}

/// Cross-check every order in lo..=hi, in order; see `oracle::cross_check`.
pub fn verify_range(lo: u64, hi: u64, seed: Option<u64>) -> Vec<CrossCheckReport> {
    #[cfg(feature = "parallel")]
    {
        verify_range_parallel(lo, hi, seed)
    }
    #[cfg(not(feature = "parallel"))]
    {
        verify_range_serial(lo, hi, seed)
    }
}

pub fn verify_range_serial(lo: u64, hi: u64, seed: Option<u64>) -> Vec<CrossCheckReport> {
    (lo.max(1)..=hi).map(|n| cross_check(n, seed)).collect()
}

#[cfg(feature = "parallel")]
pub fn verify_range_parallel(lo: u64, hi: u64, seed: Option<u64>) -> Vec<CrossCheckReport> {
    (lo.max(1)..=hi)
        .into_par_iter()
        .map(|n| cross_check(n, seed))
        .collect()
}
