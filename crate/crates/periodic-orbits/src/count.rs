//! Exact counts of periodic points and cycles for degree-`d` Henon-like maps.
//!
//! There are `d^n` points of period dividing `n`, so the number of points of
//! exact period `n` is the Moebius inversion `sum_{m | n} mu(n/m) d^m`.

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleCount {
    pub period: u32,
    /// Points of exact period `period`, counted with multiplicity.
    pub points: BigUint,
    pub cycles: BigUint,
}

impl CycleCount {
    pub fn cycles_u64(&self) -> Option<u64> {
        self.cycles.to_u64()
    }
}

pub fn divisors(n: u32) -> Vec<u32> {
    let mut v: Vec<u32> = (1..=n).filter(|m| n % m == 0).collect();
    v.sort_unstable();
    v
}

/// Moebius function.
pub fn mobius(mut n: u32) -> i32 {
    assert!(n >= 1);
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

fn points_u128(d: u64, n: u32) -> Option<u128> {
    let mut acc: i128 = 0;
    for m in divisors(n) {
        let mu = mobius(n / m);
        if mu == 0 {
            continue;
        }
        let t = i128::try_from((d as u128).checked_pow(m)?).ok()?;
        acc = if mu > 0 { acc.checked_add(t)? } else { acc.checked_sub(t)? };
    }
    u128::try_from(acc).ok()
}

fn points_big(d: u64, n: u32) -> BigUint {
    let mut acc = BigInt::zero();
    for m in divisors(n) {
        let mu = mobius(n / m);
        let t = BigInt::from(d).pow(m);
        if mu > 0 {
            acc += t;
        } else if mu < 0 {
            acc -= t;
        }
    }
    acc.to_biguint().expect("exact-period count is nonnegative")
}

/// Points of exact period `n` and the number of `n`-cycles.
pub fn count_cycles(d: u64, n: u32) -> CycleCount {
    assert!(d >= 2, "degree must be at least 2");
    assert!(n >= 1, "period must be positive");
    let points = match points_u128(d, n) {
        Some(v) => BigUint::from(v),
        None => points_big(d, n),
    };
    let cycles = &points / BigUint::from(n);
    debug_assert!((&cycles * BigUint::from(n)) == points);
    CycleCount { period: n, points, cycles }
}

/// The same counts through the recursion `P_n = d^n - sum_{m | n, m < n} P_m`.
pub fn points_recursive(d: u64, n: u32) -> BigUint {
    let mut table: Vec<BigUint> = vec![BigUint::zero(); n as usize + 1];
    for k in 1..=n {
        let mut v = BigUint::from(d).pow(k);
        for m in divisors(k) {
            if m < k {
                v -= &table[m as usize];
            }
        }
        table[k as usize] = v;
    }
    table[n as usize].clone()
}

/// Table of cycle counts for periods `1..=max_period`.
pub fn cycle_table(d: u64, max_period: u32) -> Vec<CycleCount> {
    (1..=max_period).map(|n| count_cycles(d, n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mobius_values() {
        let want = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0];
        for (k, w) in want.iter().enumerate() {
            assert_eq!(mobius(k as u32 + 1), *w, "mu({})", k + 1);
        }
    }

    #[test]
    fn big_fallback_matches_fast_path() {
        for n in 1..=30 {
            assert_eq!(BigUint::from(points_u128(3, n).unwrap()), points_big(3, n));
        }
        // 7^200 overflows u128 and must take the big path.
        assert!(points_u128(7, 200).is_none());
        assert_eq!(count_cycles(7, 200).points, points_recursive(7, 200));
    }
}
