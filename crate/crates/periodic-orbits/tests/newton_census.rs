use henon_core::{Bidisc, HenonMap, Point2};
use periodic_orbits::*;

fn horseshoe() -> (HenonMap, Bidisc) {
    (HenonMap::quadratic(1.0, -10.0), Bidisc::centered(4.4))
}

#[test]
fn period_two_census() {
    let (f, b) = horseshoe();
    let e = enumerate_periodic(&f, 2, &b, 24, 1e-10);
    assert_eq!(e.points.len(), 4);
    let two: Vec<_> = e.with_period(2).collect();
    assert_eq!(two.len(), 2);
    let s7 = 7f64.sqrt();
    let want = [Point2::real(-1.0 - s7, -1.0 + s7), Point2::real(-1.0 + s7, -1.0 - s7)];
    for w in want {
        assert!(two.iter().any(|p| p.z.dist(&w) < 1e-10));
    }
}

#[test]
fn census_matches_powers_of_two() {
    let (f, b) = horseshoe();
    for n in 1..=4u32 {
        let e = enumerate_periodic(&f, n, &b, 40, 1e-10);
        assert_eq!(e.points.len(), 1 << n, "period dividing {n}");
        assert_eq!(e.flagged, 0);
        for p in &e.points {
            assert!(p.residual <= 1e-10);
            assert!(p.is_saddle(), "{:?}", p.multipliers);
        }
        let exact: Vec<_> = e.with_period(n).cloned().collect();
        let cycles = group_cycles(&f, &exact);
        assert_eq!(cycles.len() as u64, count_cycles(2, n).cycles_u64().unwrap());
        assert!(cycles.iter().all(|c| c.len() == n as usize));
    }
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let (f, b) = horseshoe();
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let a = one.install(|| enumerate_periodic(&f, 3, &b, 20, 1e-10));
    let c = enumerate_periodic(&f, 3, &b, 20, 1e-10);
    assert_eq!(a.points, c.points);
}
