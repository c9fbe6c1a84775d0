use henon_core::{escape_radius, re, Bidisc, Complex64, HenonMap, Point2};
use horseshoe_cert::{fiber_samples, slice_raster, Direction};
use periodic_orbits::{enumerate_periodic, group_cycles};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;
use symbolic_dynamics::*;

fn setup() -> (HenonMap, ComponentLabeling) {
    let f = HenonMap::quadratic(1.0, -10.0);
    let lab = build_labeling(&f, &Bidisc::centered(4.4), 256).unwrap();
    (f, lab)
}

fn fixed_point() -> Point2 {
    let s = 1.0 + 11f64.sqrt();
    Point2::real(s, s)
}

fn two_cycle() -> (Point2, Point2) {
    let s = 7f64.sqrt();
    (Point2::real(-1.0 + s, -1.0 - s), Point2::real(-1.0 - s, -1.0 + s))
}

#[test]
fn labels_follow_the_real_part() {
    let (f, lab) = setup();
    assert_eq!(lab.d, 2);
    assert!(lab.centroids[0].re < 0.0 && lab.centroids[1].re > 0.0);
    assert_eq!(lab.label(&f, fixed_point()), Ok(1));
    let s = 1.0 - 11f64.sqrt();
    assert_eq!(lab.label(&f, Point2::real(s, s)), Ok(0));
}

#[test]
fn fixed_point_has_constant_itinerary() {
    let (f, lab) = setup();
    let w = itinerary(&f, fixed_point(), 5, 5, &lab).unwrap();
    assert_eq!(w.to_string(), "11111^111111");
}

#[test]
fn two_cycle_alternates() {
    let (f, lab) = setup();
    let (p, q) = two_cycle();
    let wp = itinerary(&f, p, 3, 4, &lab).unwrap();
    let wq = itinerary(&f, q, 3, 4, &lab).unwrap();
    assert_eq!(wp.to_string(), "010^10101");
    assert_eq!(wq.to_string(), "101^01010");
}

#[test]
fn escaping_points_are_reported() {
    let (f, lab) = setup();
    let err = itinerary(&f, Point2::real(0.0, 0.0), 2, 2, &lab).unwrap_err();
    assert!(matches!(err, ItineraryError::Escaped { .. }), "{err:?}");
}

#[test]
fn constant_word_refines_to_the_fixed_point() {
    let (f, lab) = setup();
    let cyc = refine_point(&f, &lab, &SymbolWord::periodic(vec![1]).unwrap(), 100).unwrap();
    assert!(cyc.z.dist(&fixed_point()) < 1e-8);
    let fin = refine_point(&f, &lab, &"1111111111^1111111111".parse().unwrap(), 100).unwrap();
    assert!(fin.z.dist(&fixed_point()) < 1e-8, "{}", fin.z);
    assert!(fin.radius < 1e-8);
}

#[test]
fn alternating_word_refines_to_the_two_cycle() {
    let (f, lab) = setup();
    let (p, q) = two_cycle();
    let a = refine_point(&f, &lab, &SymbolWord::periodic(vec![1, 0]).unwrap(), 100).unwrap();
    let b = refine_point(&f, &lab, &SymbolWord::periodic(vec![0, 1]).unwrap(), 100).unwrap();
    // p = (-1 + sqrt 7, .) has positive x, hence symbol 1.
    assert!(a.z.dist(&p) < 1e-8, "{}", a.z);
    assert!(b.z.dist(&q) < 1e-8, "{}", b.z);
}

fn random_k_points(f: &HenonMap, lab: &ComponentLabeling, n: usize, half: usize, seed: u64) -> Vec<Point2> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let symbols: Vec<u8> = (0..2 * half + 1).map(|_| rng.gen_range(0..2u8)).collect();
            let w = SymbolWord::new(symbols, half).unwrap();
            refine_point(f, lab, &w, 200).unwrap().z
        })
        .collect()
}

#[test]
fn itineraries_are_shift_equivariant() {
    let (f, lab) = setup();
    for z in random_k_points(&f, &lab, 100, 14, 7) {
        let w = itinerary(&f, z, 10, 10, &lab).unwrap();
        let fw = itinerary(&f, f.apply(z).unwrap(), 10, 10, &lab).unwrap();
        let shifted = w.shift().unwrap();
        for k in -9..=9 {
            assert_eq!(fw.get(k), shifted.get(k), "z={z} k={k}");
        }
    }
}

#[test]
fn all_forward_words_occur() {
    let (f, lab) = setup();
    let b = lab.b;
    for n in 1..=6u32 {
        let mut words = HashSet::new();
        for y in [Complex64::new(0.0, 0.0), Complex64::new(1.5, -0.7)] {
            for x in fiber_samples(&f, &b, y, n, 256, 64).unwrap() {
                let w = itinerary(&f, Point2::new(x, y), 0, n as usize - 1, &lab).unwrap();
                words.insert(w.symbols);
            }
        }
        assert_eq!(words.len(), 1 << n, "depth {n}");
    }
}

#[test]
fn periodic_points_round_trip() {
    let (f, lab) = setup();
    let e = enumerate_periodic(&f, 4, &lab.b, 16, 1e-10);
    assert_eq!(e.points.len(), 16);
    let mut seen = HashSet::new();
    for p in &e.points {
        let w = itinerary(&f, p.z, 8, 8, &lab).unwrap();
        let r = refine_point(&f, &lab, &w, 200).unwrap();
        assert!(r.z.dist(&p.z) <= r.radius + 1e-12, "{} vs {} radius {}", r.z, p.z, r.radius);
        assert!(seen.insert(w.symbols.clone()), "duplicate itinerary {w}");
    }
    // Separation between orbits at window width 8.
    let cycles = group_cycles(&f, &e.points);
    let mut windows = HashSet::new();
    for c in &cycles {
        let w = itinerary(&f, e.points[c[0]].z, 4, 3, &lab).unwrap();
        windows.insert(w.symbols);
    }
    assert_eq!(windows.len(), cycles.len());
}

#[test]
fn enclosure_radius_decays_geometrically() {
    let (f, lab) = setup();
    let pattern = [1u8, 0, 0, 1, 0, 1, 1, 1, 0, 1, 0, 0, 1, 1, 0, 1, 0];
    let mut radii = Vec::new();
    for n in 1..=6usize {
        let sym: Vec<u8> = pattern[8 - n..=8 + n].to_vec();
        let w = SymbolWord::new(sym, n).unwrap();
        radii.push(refine_point(&f, &lab, &w, 200).unwrap().radius);
    }
    for r in radii.windows(2) {
        assert!(r[1] < r[0], "{radii:?}");
    }
    let k = radii.windows(2).map(|r| r[1] / r[0]).fold(0.0, f64::max);
    assert!(k < 0.5, "{radii:?}");
}

#[test]
fn swapping_labels_swaps_itineraries() {
    let (f, lab) = setup();
    let swapped = lab.permuted(&[1, 0]);
    for z in random_k_points(&f, &lab, 10, 8, 11) {
        let a = itinerary(&f, z, 5, 5, &lab).unwrap();
        let b = itinerary(&f, z, 5, 5, &swapped).unwrap();
        assert_eq!(a.swap01(), b);
    }
}

#[test]
fn image_components_carry_matching_labels() {
    let (f, lab) = setup();
    // Components of F(B) ∩ B on the vertical slice x = 0.3.
    let r = slice_raster(&f, &lab.b, Direction::Fwd, Complex64::new(0.3, 0.0), 96);
    assert_eq!(r.count(), 2);
    let mut by_component = vec![HashSet::new(); 2];
    for j in (0..96).step_by(3) {
        for i in (0..96).step_by(3) {
            if let Some(l) = r.labels.at(i, j) {
                let z = Point2::new(Complex64::new(0.3, 0.0), r.pixel_center(i, j));
                if let Ok(s) = lab.image_label(&f, z) {
                    by_component[l as usize].insert(s);
                }
            }
        }
    }
    assert_eq!(by_component[0].len(), 1);
    assert_eq!(by_component[1].len(), 1);
    assert_ne!(by_component[0], by_component[1]);
}

#[test]
fn cubic_has_three_ordered_labels() {
    let f = HenonMap::normal(3, re(1.0), re(-30.0)).unwrap();
    let b = Bidisc::centered(escape_radius(&f) * 1.02);
    let lab = build_labeling(&f, &b, 256).unwrap();
    assert_eq!(lab.d, 3);
    assert!(lab.centroids.windows(2).all(|c| c[0].re <= c[1].re));
    let fixed = refine_point(&f, &lab, &SymbolWord::periodic(vec![2]).unwrap(), 100).unwrap();
    assert!(fixed.z.dist(&f.apply(fixed.z).unwrap()) < 1e-10);
    let w = itinerary(&f, fixed.z, 3, 3, &lab).unwrap();
    assert!(w.symbols.iter().all(|&s| s == 2));
}

#[test]
fn zoomed_labels_match_full_raster_labels() {
    let (f, lab) = setup();
    let zoomed = build_labeling_zoomed(&f, &Bidisc::centered(4.4), 128, 24).unwrap();
    assert_eq!(zoomed.d, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    while checked < 40 {
        let z = Point2::new(
            Complex64::new(rng.gen_range(-4.4..4.4), rng.gen_range(-1.0..1.0)),
            Complex64::new(rng.gen_range(-4.4..4.4), rng.gen_range(-1.0..1.0)),
        );
        if let (Ok(a), Ok(b)) = (lab.label(&f, z), zoomed.label(&f, z)) {
            assert_eq!(a, b, "{z:?}");
            checked += 1;
        }
    }
}
