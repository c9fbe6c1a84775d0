//! Command-line surface. Every parsed value is serialized verbatim into the
//! artifacts, so a run can be replayed from its output.

use clap::{Args, Parser, Subcommand, ValueEnum};
use henon_core::{format_complex, parse_complex, Complex64, HenonMap};
use horseshoe_cert::DEFAULT_ALPHA;
use serde::{Serialize, Serializer};
use std::path::PathBuf;

/// A complex flag value, written as `re+imi`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cx(pub Complex64);

impl Serialize for Cx {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_complex(self.0))
    }
}

fn parse_cx(s: &str) -> Result<Cx, String> {
    parse_complex(s).map(Cx).map_err(|e| e.to_string())
}

fn positive_usize(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(format!("expected a positive integer, got {s:?}")),
    }
}

fn positive_u32(s: &str) -> Result<u32, String> {
    positive_usize(s).and_then(|n| u32::try_from(n).map_err(|e| e.to_string()))
}

fn positive_f64(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        _ => Err(format!("expected a positive number, got {s:?}")),
    }
}

#[derive(Parser, Debug)]
#[command(name = "horseshoe", version, about = "Complex Henon maps: horseshoe certificates, periodic orbits, symbolic coding")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Seed for every sampled quantity.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (HORSESHOE_WORKERS takes precedence). Results do not depend on it.
    #[arg(long, global = true, value_parser = positive_usize)]
    pub workers: Option<usize>,
    /// Record wall-clock times in certificates (otherwise 0, so reruns are byte-identical).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Command {
    /// Certify that the map is a horseshoe on a bidisc.
    Certify(CertifyArgs),
    /// Exact counts of periodic points and cycles (CSV).
    Cycles(CyclesArgs),
    /// Periodic points of period dividing n by Newton's method (CSV).
    Enumerate(EnumerateArgs),
    /// Itinerary of a point, or the point with a given itinerary.
    Itinerary(ItineraryArgs),
    /// Escape-time picture of a slice (PPM).
    Slice(SliceArgs),
    /// Saddle, transverse homoclinic point and the horseshoe it generates.
    Homoclinic(HomoclinicArgs),
    /// Fiber diameters of the nested pullbacks.
    Decay(DecayArgs),
}

/// The map, given either as a descriptor or as normal-form parameters.
#[derive(Args, Debug, Clone, Serialize)]
pub struct MapArgs {
    /// `henon d=2 a=1+0i c=-10+0i` or `poly [c0,c1,...,cd] a=<complex>`; replaces --a/--c/--d.
    #[arg(long, allow_hyphen_values = true)]
    pub map: Option<String>,
    /// Jacobian parameter of `x^d + c - a y`.
    #[arg(long, default_value = "1", value_parser = parse_cx, allow_hyphen_values = true)]
    pub a: Cx,
    #[arg(long, value_parser = parse_cx, allow_hyphen_values = true, required_unless_present = "map")]
    pub c: Option<Cx>,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(2..))]
    pub d: u32,
}

impl MapArgs {
    pub fn build(&self) -> Result<HenonMap, String> {
        if let Some(m) = &self.map {
            return m.parse().map_err(|e| format!("--map: {e}"));
        }
        let c = self.c.ok_or("--c is required without --map")?;
        HenonMap::normal(self.d as usize, self.a.0, c.0).map_err(|e| e.to_string())
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CertifyMethod {
    /// Inequality for quadratic normal forms, cone sweep otherwise.
    Auto,
    Inequality,
    Sweep,
    Components,
}

#[derive(Args, Debug, Serialize)]
pub struct CertifyArgs {
    #[command(flatten)]
    pub system: MapArgs,
    #[arg(long, value_enum, default_value_t = CertifyMethod::Auto)]
    pub method: CertifyMethod,
    /// Cone aperture in (0, 1].
    #[arg(long, default_value_t = 1.0)]
    pub gamma: f64,
    /// Radius factor of the inequality certificate; must exceed 1/2.
    #[arg(long, default_value_t = DEFAULT_ALPHA)]
    pub alpha: f64,
    /// Search over (gamma, alpha) for the largest inequality margin.
    #[arg(long)]
    pub optimize: bool,
    /// Bidisc radius for the sweep and component methods [default: 2·alpha·escape radius].
    #[arg(long, value_parser = positive_f64)]
    pub radius: Option<f64>,
    /// Bisection depth of the cone sweep.
    #[arg(long, default_value_t = 12)]
    pub depth: u32,
    /// Raster resolution of the component count.
    #[arg(long, default_value_t = 512, value_parser = positive_usize)]
    pub resolution: usize,
    /// JSON output path [default: stdout].
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct CyclesArgs {
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
    pub d: u64,
    #[arg(long, default_value_t = 12, value_parser = positive_u32)]
    pub max_period: u32,
    /// CSV output path [default: stdout].
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub system: MapArgs,
    /// Period n: points of every period dividing n are listed.
    #[arg(long, default_value_t = 1, value_parser = positive_u32)]
    pub period: u32,
    /// Bidisc radius searched [default: escape radius].
    #[arg(long, value_parser = positive_f64)]
    pub radius: Option<f64>,
    /// Newton seeds per complex axis (the grid is grid^4).
    #[arg(long, default_value_t = 24, value_parser = positive_usize)]
    pub grid: usize,
    #[arg(long, default_value_t = 1e-10, value_parser = positive_f64)]
    pub tol: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct ItineraryArgs {
    #[command(flatten)]
    pub system: MapArgs,
    #[arg(long, value_parser = parse_cx, allow_hyphen_values = true, required_unless_present = "word")]
    pub x: Option<Cx>,
    #[arg(long, value_parser = parse_cx, allow_hyphen_values = true, required_unless_present = "word")]
    pub y: Option<Cx>,
    /// Symbols on each side of position 0.
    #[arg(long, default_value_t = 12)]
    pub depth: usize,
    /// Refine this word (`1011^0110`, or `(10)` for a periodic word) to a point instead.
    #[arg(long, conflicts_with_all = ["x", "y"])]
    pub word: Option<String>,
    #[arg(long, value_parser = positive_f64)]
    pub radius: Option<f64>,
    /// Raster resolution of the labeling.
    #[arg(long, default_value_t = 512, value_parser = positive_usize)]
    pub resolution: usize,
    /// JSON output path; the word alone goes to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PlaneArg {
    /// Free x at fixed y.
    FixY,
    /// Free y at fixed x.
    FixX,
    /// Real (x, y) plane.
    Real,
}

#[derive(Args, Debug, Serialize)]
pub struct SliceArgs {
    #[command(flatten)]
    pub system: MapArgs,
    #[arg(long, value_enum, default_value_t = PlaneArg::FixY)]
    pub plane: PlaneArg,
    /// Value of the fixed coordinate.
    #[arg(long, default_value = "0", value_parser = parse_cx, allow_hyphen_values = true)]
    pub fixed: Cx,
    /// Half-width of the square window [default: 1.1 · escape radius].
    #[arg(long, value_parser = positive_f64)]
    pub window: Option<f64>,
    #[arg(long, default_value_t = 512, value_parser = positive_usize)]
    pub resolution: usize,
    #[arg(long, default_value_t = 100)]
    pub horizon: u32,
    /// Escape radius used for classification [default: escape radius].
    #[arg(long, value_parser = positive_f64)]
    pub radius: Option<f64>,
    #[arg(long, default_value = "slice.ppm")]
    pub out: PathBuf,
    /// Optional per-pixel CSV dump.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct HomoclinicArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub a: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub c: f64,
    /// Period of the saddle.
    #[arg(long, default_value_t = 1, value_parser = positive_u32)]
    pub k: u32,
    /// Degree of the horseshoe.
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    /// Taylor order of the manifold parametrizations.
    #[arg(long, default_value_t = homoclinic::MANIFOLD_ORDER, value_parser = positive_usize)]
    pub order: usize,
    /// Periodic orbits sampled for the shift-equivariance check (0 skips it).
    #[arg(long, default_value_t = 0)]
    pub samples: usize,
    /// Depth of the equivariance check.
    #[arg(long, default_value_t = 4)]
    pub coding_depth: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Real-slice picture of the manifolds, q and the chart.
    #[arg(long)]
    pub ppm: Option<PathBuf>,
    #[arg(long, default_value_t = 512, value_parser = positive_usize)]
    pub resolution: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct DecayArgs {
    #[command(flatten)]
    pub system: MapArgs,
    #[arg(long, value_parser = positive_f64)]
    pub radius: Option<f64>,
    #[arg(long, default_value_t = 12, value_parser = positive_u32)]
    pub depth: u32,
    /// Raster resolution at depth 1.
    #[arg(long, default_value_t = 512, value_parser = positive_usize)]
    pub resolution: usize,
    /// Raster resolution of each zoomed fiber window.
    #[arg(long, default_value_t = 64, value_parser = positive_usize)]
    pub zoom: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// What gets embedded in every artifact.
#[derive(Serialize)]
pub struct RunConfig<'a> {
    #[serde(flatten)]
    pub command: &'a Command,
    pub seed: u64,
    pub timing: bool,
}
