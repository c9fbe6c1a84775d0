use henon_core::{re, Complex64, HenonMap, Point2, Verdict};
use homoclinic::*;
use proptest::prelude::*;
use std::sync::OnceLock;

struct Fixture {
    f: HenonMap,
    s: SaddleData,
    q: HomoclinicPoint,
    h2: Horseshoe,
}

fn fixture() -> &'static Fixture {
    static F: OnceLock<Fixture> = OnceLock::new();
    F.get_or_init(|| {
        let f = HenonMap::quadratic(0.3, -1.4);
        let s = find_saddle(&f, 1).unwrap();
        let q = find_homoclinic(&f, &s, true).unwrap();
        let h2 = build_horseshoe(&f, &s, &q, 2).unwrap();
        Fixture { f, s, q, h2 }
    })
}

#[test]
fn saddle_multipliers_match_the_fixed_point_jacobian() {
    // Fixed points solve x^2 - 2x - 10 = 0; the Jacobian has trace 2x and det 1.
    let f = HenonMap::quadratic(1.0, -10.0);
    let s = find_saddle(&f, 1).unwrap();
    let x = 1.0 + 11f64.sqrt();
    assert!(s.p.dist(&Point2::real(x, x)) < 1e-12);
    assert!((s.lambda * s.mu - re(1.0)).norm() < 1e-12);
    assert!((s.lambda + s.mu - re(2.0 * x)).norm() < 1e-12);
    assert!(s.is_real());
}

#[test]
fn real_parameters_give_a_real_saddle() {
    let s = &fixture().s;
    assert!(s.is_real());
    assert!(s.p.dist(&Point2::real(2.0, 2.0)) < 1e-12);
    assert!((s.lambda.re - (2.0 + 3.7f64.sqrt())).abs() < 1e-12);
}

#[test]
fn parabolic_fixed_point_is_not_a_saddle() {
    // x^2 + 1 - x = x has the double root 1 and both multipliers equal 1.
    let f = HenonMap::quadratic(1.0, 1.0);
    assert_eq!(find_saddle(&f, 1), Err(HomoclinicError::NoSaddle { k: 1 }));
}

#[test]
fn manifolds_are_tangent_to_the_eigenvectors() {
    let fx = fixture();
    for (m, e) in [(&fx.q.unstable, fx.s.eigvec_u), (&fx.q.stable, fx.s.eigvec_s)] {
        assert_eq!(m.p(), fx.s.p);
        assert!(m.derivative(re(0.0)).dist(&e) < 1e-14);
        assert!(m.residual(&fx.f, m.valid_radius) <= RESIDUAL_TOL);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn manifold_functional_equation_holds_inside_the_valid_disc(rho in 0.0..1.0f64, theta in 0.0..std::f64::consts::TAU, stable in any::<bool>()) {
        let fx = fixture();
        let m = if stable { &fx.q.stable } else { &fx.q.unstable };
        let t = Complex64::from_polar(rho * m.valid_radius, theta);
        let w = fx.f.apply(m.eval(t)).unwrap();
        prop_assert!(w.dist(&m.eval(m.eigenvalue * t)) <= RESIDUAL_TOL);
    }

    #[test]
    fn stable_manifold_is_invariant_under_the_inverse(rho in 0.0..1.0f64, theta in 0.0..std::f64::consts::TAU) {
        let fx = fixture();
        let m = &fx.q.stable;
        let t = Complex64::from_polar(rho * m.valid_radius, theta);
        let w = fx.f.apply_inverse(m.eval(m.eigenvalue * t)).unwrap();
        prop_assert!(w.dist(&m.eval(t)) <= RESIDUAL_TOL);
    }
}

#[test]
fn homoclinic_point_is_transverse_and_nontrivial() {
    let fx = fixture();
    assert!(fx.q.transversality_angle > 1e-2);
    assert!(fx.q.q.dist(&fx.s.p) > 1e-3);
    assert!(fx.q.stable.eval(fx.q.t_s).dist(&fx.q.q) < 1e-14);
    let w = fx.f.iterate(fx.q.unstable.eval(fx.q.t_u), fx.q.iterates as i64).unwrap();
    assert!(w.dist(&fx.q.q) < 1e-10);
}

#[test]
fn homoclinic_orbit_tends_to_the_saddle_both_ways() {
    let fx = fixture();
    let n = 20;
    let o = fx.q.orbit(&fx.f, n).unwrap();
    let dist: Vec<f64> = o.iter().map(|z| z.dist(&fx.s.p)).collect();
    assert!(dist[0] < 1e-8 && dist[2 * n] < 1e-8, "{dist:?}");
    // Monotone in |i| once past a burn-in of 5 steps.
    for i in 5..n {
        assert!(dist[n + i + 1] <= dist[n + i], "forward {i}: {dist:?}");
        assert!(dist[n - i - 1] <= dist[n - i], "backward {i}: {dist:?}");
    }
    // Consecutive orbit points are images of one another.
    for w in o.windows(2).skip(5).take(2 * n - 10) {
        let g = fx.f.apply(w[0]).unwrap();
        assert!(g.dist(&w[1]) < 1e-9 * (1.0 + w[1].norm()));
    }
}

#[test]
fn complex_search_is_not_supported() {
    let fx = fixture();
    assert!(matches!(find_homoclinic(&fx.f, &fx.s, false), Err(HomoclinicError::NotReal)));
}

#[test]
fn large_parameter_map_has_a_transverse_homoclinic_point() {
    let f = HenonMap::quadratic(1.0, -10.0);
    let s = find_saddle(&f, 1).unwrap();
    let q = find_homoclinic(&f, &s, true).unwrap();
    assert!(q.transversality_angle > 1e-2);
    let o = q.orbit(&f, 20).unwrap();
    assert!(o[0].dist(&s.p) < 1e-8 && o[40].dist(&s.p) < 1e-8);
}

#[test]
fn degree_two_horseshoe_passes_its_checks() {
    let h = &fixture().h2;
    assert_eq!(h.d, 2);
    assert_eq!(h.big_n, h.n + h.m);
    assert!(h.check.passed);
    assert!(h.check.bwd_counts.iter().chain(&h.check.fwd_counts).all(|&c| c == 2));
    assert!(h.check.cone_margin > 0.0 && h.check.boundary_margin > 0.0);
    assert_eq!(h.certificate.verdict, Verdict::Yes);
    assert!(h.chart.is_valid());
}

#[test]
fn degree_three_needs_at_least_as_many_iterates_for_the_intersections() {
    let fx = fixture();
    let h3 = build_horseshoe(&fx.f, &fx.s, &fx.q, 3).unwrap();
    assert!(h3.check.passed);
    assert!(h3.check.bwd_counts.iter().chain(&h3.check.fwd_counts).all(|&c| c == 3));
    assert!(h3.n >= fx.h2.n);
    // Before D_u is shrunk, the trimmed D_s meets the n-th image in exactly d points.
    let r_u = h3.chart.r_u * fx.s.lambda.norm().powi(h3.m as i32);
    assert_eq!(intersection_heights(&fx.f, &fx.s, &h3.chart.with_radii(r_u, h3.chart.r_s), h3.n).len(), 3);
    assert_eq!(intersection_heights(&fx.f, &fx.s, &fx.h2.chart.with_radii(r_u, fx.h2.chart.r_s), fx.h2.n).len(), 2);
}

#[test]
fn degree_one_is_rejected() {
    let fx = fixture();
    assert!(matches!(build_horseshoe(&fx.f, &fx.s, &fx.q, 1), Err(HomoclinicError::Degree(1))));
}

#[test]
fn constructed_horseshoe_codes_by_the_full_shift() {
    let h = &fixture().h2;
    let lab = chart_labeling(h).unwrap();
    assert_eq!(lab.d, 2);
    for n in 1..=3 {
        assert_eq!(forward_words(h, &lab, n).unwrap().len(), 1 << n);
    }
    let rep = check_equivariance(h, &lab, 100, 4, 7);
    assert!(rep.passed(), "{rep:?}");
    assert!(rep.max_residual < 1e-26);
}
