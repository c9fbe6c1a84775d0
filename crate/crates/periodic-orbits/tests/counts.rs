use num_bigint::BigUint;
use periodic_orbits::*;
use proptest::prelude::*;

#[test]
fn degree_two_table() {
    let want = [2u64, 1, 2, 3, 6, 9, 18, 30, 56, 99, 186, 335];
    let got: Vec<u64> = cycle_table(2, 12).iter().map(|c| c.cycles_u64().unwrap()).collect();
    assert_eq!(got, want);
}

#[test]
fn prime_period_formula() {
    // d (d^{p-1} - 1) / p
    for (d, p) in [(2u64, 7u32), (3, 5), (2, 11), (5, 3)] {
        let want = d * (d.pow(p - 1) - 1) / p as u64;
        assert_eq!(count_cycles(d, p).cycles_u64(), Some(want));
    }
}

#[test]
fn d_fixed_points() {
    assert_eq!(count_cycles(3, 1).cycles_u64(), Some(3));
    assert_eq!(count_cycles(2, 1).cycles_u64(), Some(2));
}

#[test]
fn divisor_sums_recover_powers() {
    for d in 2u64..=4 {
        for n in 1u32..=12 {
            let total: BigUint = divisors(n).into_iter().map(|m| count_cycles(d, m).points).sum();
            assert_eq!(total, BigUint::from(d).pow(n), "d={d} n={n}");
        }
    }
}

/// Aperiodic necklaces of length `n` over `d` beads, by brute force: count
/// words that are strictly smaller than all their nontrivial rotations.
fn primitive_necklaces(d: u32, n: u32) -> u64 {
    let total = (d as u64).pow(n);
    let mut count = 0;
    for code in 0..total {
        let mut w = Vec::with_capacity(n as usize);
        let mut c = code;
        for _ in 0..n {
            w.push((c % d as u64) as u8);
            c /= d as u64;
        }
        let minimal = (1..n as usize).all(|r| {
            let rot: Vec<u8> = w[r..].iter().chain(w[..r].iter()).copied().collect();
            w < rot
        });
        if minimal {
            count += 1;
        }
    }
    count
}

#[test]
fn cycles_are_binary_necklaces() {
    for n in 1..=14 {
        assert_eq!(count_cycles(2, n).cycles_u64(), Some(primitive_necklaces(2, n)), "n={n}");
    }
    for n in 1..=7 {
        assert_eq!(count_cycles(3, n).cycles_u64(), Some(primitive_necklaces(3, n)), "n={n}");
    }
}

proptest! {
    #[test]
    fn mobius_and_recursion_agree(d in 2u64..9, n in 1u32..40) {
        prop_assert_eq!(count_cycles(d, n).points, points_recursive(d, n));
    }

    #[test]
    fn cycles_times_period_is_points(d in 2u64..20, n in 1u32..60) {
        let c = count_cycles(d, n);
        prop_assert_eq!(&c.cycles * BigUint::from(n), c.points);
    }
}
