//! One function per subcommand. Each writes its artifacts and returns the
//! exit code: 0 success or yes, 1 definite no, 2 unknown or inconclusive.

use crate::args::*;
use crate::overlay;
use henon_core::{escape_radius, Bidisc, HenonMap, Point2, Verdict};
use homoclinic::{
    build_horseshoe, chart_labeling, check_equivariance, find_homoclinic_with, find_saddle, parametrize_manifold,
    EquivarianceReport, HomoclinicError, Which,
};
use horseshoe_cert::{
    certify_components, certify_cone_sweep, certify_inequality, default_slices, fiber_diameter_decay_on,
    optimize_aperture, ApertureSearch, Certificate, ComponentReport, ConeField, DecayReport, Direction,
};
use invariant_sets::{render_slice, Plane, SliceSpec, Window};
use periodic_orbits::{cycle_table, enumerate_periodic, group_cycles};
use serde::Serialize;
use std::io::Write;
use std::path::Path;
use symbolic_dynamics::{build_labeling, itinerary, refine_point, ItineraryError, Refinement, SymbolWord};

pub enum Failure {
    /// Bad input: exit 64.
    Usage(String),
    /// The computation could not decide: exit 2.
    Inconclusive(String),
}

pub type Run = Result<i32, Failure>;

pub struct Context<'a> {
    pub config: RunConfig<'a>,
}

#[derive(Serialize)]
struct Artifact<'a, T: Serialize> {
    config: &'a RunConfig<'a>,
    #[serde(flatten)]
    payload: T,
}

fn io(e: std::io::Error) -> Failure {
    Failure::Inconclusive(format!("write failed: {e}"))
}

fn write_bytes(out: Option<&Path>, bytes: &[u8]) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, bytes).map_err(io),
        None => std::io::stdout().write_all(bytes).map_err(io),
    }
}

fn config_json(ctx: &Context) -> String {
    serde_json::to_string(&ctx.config).expect("config serializes")
}

fn write_json<T: Serialize>(ctx: &Context, payload: T, out: Option<&Path>) -> Result<(), Failure> {
    let mut s = serde_json::to_string_pretty(&Artifact { config: &ctx.config, payload }).map_err(|e| Failure::Inconclusive(e.to_string()))?;
    s.push('\n');
    write_bytes(out, s.as_bytes())
}

/// CSV with the run configuration on a leading `#` line.
/// Shortest round-trip form, with an exponent for very small or large values.
fn num(x: f64) -> String {
    format!("{x:?}")
}

fn write_csv(ctx: &Context, header: &[&str], rows: &[Vec<String>], out: Option<&Path>) -> Result<(), Failure> {
    let mut buf = format!("# config: {}\n", config_json(ctx)).into_bytes();
    {
        let mut w = csv::Writer::from_writer(&mut buf);
        w.write_record(header).map_err(|e| Failure::Inconclusive(e.to_string()))?;
        for r in rows {
            w.write_record(r).map_err(|e| Failure::Inconclusive(e.to_string()))?;
        }
        w.flush().map_err(io)?;
    }
    write_bytes(out, &buf)
}

fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::Yes => 0,
        Verdict::No => 1,
        Verdict::Unknown => 2,
    }
}

fn default_radius(map: &HenonMap, alpha: f64) -> f64 {
    2.0 * alpha * escape_radius(map)
}

#[derive(Serialize)]
struct Aperture {
    gamma: f64,
    alpha: f64,
}

#[derive(Serialize)]
struct CertifyOut {
    certificate: Certificate,
    #[serde(skip_serializing_if = "Option::is_none")]
    aperture: Option<Aperture>,
    #[serde(skip_serializing_if = "Option::is_none")]
    components: Option<Vec<ComponentReport>>,
}

pub fn certify(ctx: &Context, args: &CertifyArgs) -> Run {
    let map = args.system.build().map_err(Failure::Usage)?;
    let method = match args.method {
        CertifyMethod::Auto if map.degree() == 2 && map.normal_form_c().is_some() => CertifyMethod::Inequality,
        CertifyMethod::Auto => CertifyMethod::Sweep,
        m => m,
    };
    let b = Bidisc::centered(args.radius.unwrap_or_else(|| default_radius(&map, args.alpha)));
    let mut out = match method {
        CertifyMethod::Inequality if args.optimize => {
            let (gamma, alpha, certificate) =
                optimize_aperture(&map, &ApertureSearch::default()).map_err(|e| Failure::Usage(e.to_string()))?;
            CertifyOut { certificate, aperture: Some(Aperture { gamma, alpha }), components: None }
        }
        CertifyMethod::Inequality => {
            let certificate = certify_inequality(&map, args.gamma, args.alpha).map_err(|e| Failure::Usage(e.to_string()))?;
            CertifyOut { certificate, aperture: None, components: None }
        }
        CertifyMethod::Sweep => {
            let cones = ConeField::new(args.gamma)
                .ok_or_else(|| Failure::Usage(format!("gamma must lie in (0, 1], got {}", args.gamma)))?;
            CertifyOut { certificate: certify_cone_sweep(&map, &b, cones, args.depth), aperture: None, components: None }
        }
        CertifyMethod::Components | CertifyMethod::Auto => {
            let (certificate, reports) = certify_components(&map, &b, args.resolution);
            CertifyOut { certificate, aperture: None, components: Some(reports) }
        }
    };
    if !ctx.config.timing {
        out.certificate.wall_ms = 0;
    }
    let code = verdict_code(out.certificate.verdict);
    write_json(ctx, out, args.out.as_deref())?;
    Ok(code)
}

pub fn cycles(ctx: &Context, args: &CyclesArgs) -> Run {
    let rows: Vec<Vec<String>> = cycle_table(args.d, args.max_period)
        .into_iter()
        .map(|c| vec![c.period.to_string(), c.points.to_string(), c.cycles.to_string()])
        .collect();
    write_csv(ctx, &["period", "points", "cycles"], &rows, args.out.as_deref())?;
    Ok(0)
}

pub fn enumerate(ctx: &Context, args: &EnumerateArgs) -> Run {
    let map = args.system.build().map_err(Failure::Usage)?;
    let r = args.radius.unwrap_or_else(|| escape_radius(&map) * (1.0 + 1e-9));
    let e = enumerate_periodic(&map, args.period, &Bidisc::centered(r), args.grid, args.tol);
    let mut cycle_of = vec![0usize; e.points.len()];
    for (ci, c) in group_cycles(&map, &e.points).iter().enumerate() {
        for &i in c {
            cycle_of[i] = ci;
        }
    }
    let rows: Vec<Vec<String>> = e
        .points
        .iter()
        .zip(&cycle_of)
        .map(|(p, ci)| {
            let [m0, m1] = p.multipliers;
            vec![
                num(p.z.x.re),
                num(p.z.x.im),
                num(p.z.y.re),
                num(p.z.y.im),
                p.period.to_string(),
                ci.to_string(),
                num(p.residual),
                num(m0.re),
                num(m0.im),
                num(m1.re),
                num(m1.im),
                p.is_saddle().to_string(),
                p.near_singular.to_string(),
            ]
        })
        .collect();
    let header = [
        "re(x)", "im(x)", "re(y)", "im(y)", "period", "cycle", "residual", "re(mu1)", "im(mu1)", "re(mu2)", "im(mu2)",
        "saddle", "near_singular",
    ];
    write_csv(ctx, &header, &rows, args.out.as_deref())?;
    Ok(if e.flagged > 0 { 2 } else { 0 })
}

#[derive(Serialize)]
struct ItineraryOut<'a> {
    point: Option<Point2>,
    itinerary: Option<String>,
    refinement: Option<&'a Refinement>,
}

pub fn itinerary_cmd(ctx: &Context, args: &ItineraryArgs) -> Run {
    let map = args.system.build().map_err(Failure::Usage)?;
    let r = args.radius.unwrap_or_else(|| default_radius(&map, horseshoe_cert::DEFAULT_ALPHA));
    let lab = build_labeling(&map, &Bidisc::centered(r), args.resolution)
        .map_err(|e| Failure::Inconclusive(format!("labeling: {e}")))?;
    if let Some(w) = &args.word {
        let word: SymbolWord = w.parse().map_err(|e| Failure::Usage(format!("--word: {e}")))?;
        let refined = refine_point(&map, &lab, &word, 200).map_err(|e| Failure::Inconclusive(e.to_string()))?;
        println!("{}", refined.z);
        if let Some(out) = &args.out {
            write_json(ctx, ItineraryOut { point: Some(refined.z), itinerary: Some(word.to_string()), refinement: Some(&refined) }, Some(out))?;
        }
        return Ok(0);
    }
    let (Some(x), Some(y)) = (args.x, args.y) else {
        return Err(Failure::Usage("--x and --y are required without --word".into()));
    };
    let z = Point2::new(x.0, y.0);
    match itinerary(&map, z, args.depth, args.depth, &lab) {
        Ok(w) => {
            println!("{w}");
            if let Some(out) = &args.out {
                write_json(ctx, ItineraryOut { point: Some(z), itinerary: Some(w.to_string()), refinement: None }, Some(out))?;
            }
            Ok(0)
        }
        Err(e @ ItineraryError::Escaped { .. }) => {
            eprintln!("{e}");
            Ok(1)
        }
        Err(e) => Err(Failure::Inconclusive(e.to_string())),
    }
}

#[derive(Serialize)]
struct SliceOut {
    forward_bounded_fraction: f64,
    conditioning_warning: bool,
    ppm: String,
}

pub fn slice(ctx: &Context, args: &SliceArgs) -> Run {
    let map = args.system.build().map_err(Failure::Usage)?;
    let r = args.radius.unwrap_or_else(|| escape_radius(&map) * (1.0 + 1e-9));
    let plane = match args.plane {
        PlaneArg::FixY => Plane::FixY(args.fixed.0),
        PlaneArg::FixX => Plane::FixX(args.fixed.0),
        PlaneArg::Real => Plane::RealPlane,
    };
    let half = args.window.unwrap_or(1.1 * escape_radius(&map));
    let spec = SliceSpec::new(plane, Window::square(half), args.resolution, args.resolution)
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let img = render_slice(&map, &spec, r, args.horizon);
    let ppm = overlay::ppm(&config_json(ctx), spec.width, spec.height, &img.pixels());
    write_bytes(Some(&args.out), &ppm)?;
    if let Some(path) = &args.csv {
        let s = format!("# config: {}\n{}", config_json(ctx), img.to_csv());
        write_bytes(Some(path), s.as_bytes())?;
    }
    let summary = SliceOut {
        forward_bounded_fraction: img.forward_bounded_fraction(),
        conditioning_warning: img.conditioning_warning(),
        ppm: args.out.display().to_string(),
    };
    write_json(ctx, summary, None)?;
    Ok(0)
}

#[derive(Serialize)]
struct HomoclinicOut<'a> {
    saddle: &'a homoclinic::SaddleData,
    q: &'a homoclinic::HomoclinicPoint,
    angle: f64,
    #[serde(rename = "N")]
    big_n: u32,
    n: u32,
    m: u32,
    chart: &'a homoclinic::EmbeddedBidiscChart,
    check: &'a homoclinic::ChartCheck,
    certificate: &'a Certificate,
    #[serde(skip_serializing_if = "Option::is_none")]
    coding: Option<EquivarianceReport>,
}

fn homoclinic_failure(e: HomoclinicError) -> Failure {
    match e {
        HomoclinicError::Degree(_) => Failure::Usage(e.to_string()),
        e => Failure::Inconclusive(e.to_string()),
    }
}

pub fn homoclinic_cmd(ctx: &Context, args: &HomoclinicArgs) -> Run {
    if args.d < 2 {
        return Err(Failure::Usage(format!("--d must be at least 2, got {}", args.d)));
    }
    if args.a == 0.0 || !args.a.is_finite() || !args.c.is_finite() {
        return Err(Failure::Usage("--a must be nonzero and --a, --c finite".into()));
    }
    let map = HenonMap::quadratic(args.a, args.c);
    let saddle = find_saddle(&map, args.k).map_err(homoclinic_failure)?;
    if !saddle.is_real() {
        return Err(homoclinic_failure(HomoclinicError::NotReal));
    }
    let wu = parametrize_manifold(&map, &saddle, Which::Unstable, args.order).map_err(homoclinic_failure)?;
    let ws = parametrize_manifold(&map, &saddle, Which::Stable, args.order).map_err(homoclinic_failure)?;
    let q = find_homoclinic_with(&map, &saddle, wu, ws).map_err(homoclinic_failure)?;
    let mut h = build_horseshoe(&map, &saddle, &q, args.d).map_err(homoclinic_failure)?;
    if !ctx.config.timing {
        h.certificate.wall_ms = 0;
    }
    let coding = if args.samples > 0 {
        let lab = chart_labeling(&h).map_err(homoclinic_failure)?;
        Some(check_equivariance(&h, &lab, args.samples, args.coding_depth, ctx.config.seed))
    } else {
        None
    };
    if let Some(path) = &args.ppm {
        let img = overlay::homoclinic_overlay(&map, &saddle, &q, &h.chart, args.resolution);
        write_bytes(Some(path), &overlay::ppm(&config_json(ctx), args.resolution, args.resolution, &img))?;
    }
    let ok = h.check.passed && coding.as_ref().is_none_or(|c| c.passed());
    let out = HomoclinicOut {
        saddle: &saddle,
        q: &q,
        angle: q.transversality_angle,
        big_n: h.big_n,
        n: h.n,
        m: h.m,
        chart: &h.chart,
        check: &h.check,
        certificate: &h.certificate,
        coding,
    };
    write_json(ctx, out, args.out.as_deref())?;
    Ok(if ok { 0 } else { 2 })
}

#[derive(Serialize)]
struct DecayOut {
    report: DecayReport,
    ratios: Vec<f64>,
    max_ratio: Option<f64>,
}

pub fn decay(ctx: &Context, args: &DecayArgs) -> Run {
    let map = args.system.build().map_err(Failure::Usage)?;
    let b = Bidisc::centered(args.radius.unwrap_or_else(|| default_radius(&map, horseshoe_cert::DEFAULT_ALPHA)));
    let report = fiber_diameter_decay_on(&map, &b, args.depth, &default_slices(&b, Direction::Bwd), args.resolution, args.zoom);
    let truncated = report.truncated.is_some();
    let out = DecayOut { ratios: report.ratios(), max_ratio: report.max_ratio(), report };
    write_json(ctx, out, args.out.as_deref())?;
    Ok(if truncated { 2 } else { 0 })
}
