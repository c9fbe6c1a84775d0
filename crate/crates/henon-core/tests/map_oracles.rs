use approx::assert_relative_eq;
use henon_core::*;

fn sqrt(x: f64) -> f64 {
    x.sqrt()
}

#[test]
fn fixed_point_of_the_horseshoe_map() {
    // x^2 - (1 + a) x + c = 0 with a = 1, c = -10.
    let f = HenonMap::quadratic(1.0, -10.0);
    let x = 1.0 + sqrt(11.0);
    let z = Point2::real(x, x);
    let w = f.apply(z).unwrap();
    assert!(w.dist(&z) < 1e-13);
    let back = f.apply_inverse(z).unwrap();
    assert!(back.dist(&z) < 1e-13);
}

#[test]
fn origin_is_fixed_when_c_vanishes() {
    let f = HenonMap::quadratic(1.0, 0.0);
    assert_eq!(f.apply(Point2::real(0.0, 0.0)).unwrap(), Point2::real(0.0, 0.0));
}

#[test]
fn resonant_fixed_point() {
    let f = HenonMap::quadratic(0.125, 9.0 / 32.0);
    let z = Point2::real(0.375, 0.375);
    assert!(f.apply(z).unwrap().dist(&z) < 1e-15);
    let j = f.jacobian(z);
    assert_relative_eq!(j.m[0][0].re, 0.75);
    assert_relative_eq!(j.m[0][1].re, -0.125);
    let [s, b] = j.eigenvalues();
    assert!((s - re(0.25)).norm() < 1e-14);
    assert!((b - re(0.5)).norm() < 1e-14);
}

#[test]
fn inverse_maps_period_two_point_to_its_partner() {
    // x + y = -(1 + a), 2y = x^2 + c for a = 1, c = -10.
    let f = HenonMap::quadratic(1.0, -10.0);
    let (u, v) = (-1.0 + sqrt(7.0), -1.0 - sqrt(7.0));
    let w = f.apply_inverse(Point2::real(u, v)).unwrap();
    assert!(w.dist(&Point2::real(v, u)) < 1e-13);
}

#[test]
fn jacobian_at_origin() {
    let f = HenonMap::quadratic(0.7, 2.0);
    let j = f.jacobian(Point2::real(0.0, 3.0));
    assert_eq!(j.m[0][0], re(0.0));
    assert_eq!(j.m[0][1], re(-0.7));
    assert_eq!(j.m[1][0], re(1.0));
}

#[test]
fn escape_radius_examples() {
    assert_relative_eq!(escape_radius(&HenonMap::quadratic(1.0, -10.0)), 4.316624790355400, epsilon = 1e-12);
    assert_relative_eq!(escape_radius(&HenonMap::quadratic(1.0, -6.0)), 3.6457513110645907, epsilon = 1e-12);
    assert_relative_eq!(escape_radius(&HenonMap::quadratic(2.5, 0.0)), 3.5, epsilon = 1e-14);
}

#[test]
fn quasi_henon_like_horizontal_above_escape_radius() {
    let f = HenonMap::quadratic(1.0, -10.0);
    let chk = check_quasi_henon_like(&f, &Bidisc::centered(4.5), Orientation::Horizontal);
    assert_eq!(chk.verdict, Verdict::Yes);
    assert!(chk.margin > 0.0);
}

#[test]
fn small_bidisc_fails() {
    let f = HenonMap::quadratic(1.0, -10.0);
    let chk = check_quasi_henon_like(&f, &Bidisc::centered(1.0), Orientation::Horizontal);
    // Everything leaves: the boundary is clear but the slice degree is 0.
    assert_eq!(chk.verdict, Verdict::No);
    assert_eq!(chk.degree, Some(0));
    let chk = check_quasi_henon_like(&f, &Bidisc::centered(3.0), Orientation::Horizontal);
    assert_eq!(chk.verdict, Verdict::No);
    assert!(chk.margin <= 1e-9);
}

#[test]
fn cubic_map_is_horizontal_with_degree_three() {
    let f = HenonMap::normal(3, re(1.0), re(-10.0)).unwrap();
    let b = Bidisc::centered(4.5);
    assert_eq!(check_quasi_henon_like(&f, &b, Orientation::Horizontal).verdict, Verdict::Yes);
    assert_eq!(boundary_degree(&f, &b, re(0.0)), Ok(3));
}

#[test]
fn quadratic_degree_is_two() {
    let f = HenonMap::quadratic(1.0, -10.0);
    assert_eq!(boundary_degree(&f, &Bidisc::centered(4.5), re(0.0)), Ok(2));
}

#[test]
fn horseshoe_bidisc_is_not_vertical() {
    // x is the expanding direction, so the vertical conditions must fail.
    let f = HenonMap::quadratic(1.0, -10.0);
    let chk = check_quasi_henon_like(&f, &Bidisc::centered(4.5), Orientation::Vertical);
    assert_eq!(chk.verdict, Verdict::No);
}

#[test]
fn sampled_check_agrees_on_the_horseshoe_bidisc() {
    let f = HenonMap::quadratic(1.0, -10.0);
    let s = check_quasi_henon_like_sampled(&f, &Bidisc::centered(4.5), Orientation::Horizontal, 64, 6);
    assert!(s.passed);
    let s = check_quasi_henon_like_sampled(&f, &Bidisc::centered(1.0), Orientation::Horizontal, 64, 6);
    assert!(!s.passed);
}

#[test]
fn degree_is_independent_of_the_slice() {
    let f = HenonMap::quadratic(1.0, -10.0);
    let b = Bidisc::centered(4.5);
    for k in 0..32 {
        let y = Complex64::from_polar(4.5 * (k % 4) as f64 / 4.0, 0.7 * k as f64);
        assert_eq!(boundary_degree(&f, &b, y), Ok(2), "slice {k}");
    }
}
