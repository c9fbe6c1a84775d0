use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HomoclinicError {
    #[error("no hyperbolic periodic point of period {k} found")]
    NoSaddle { k: u32 },
    #[error("resonance at order {n}: (dF^k(p) - ev^n I) is nearly singular")]
    Resonance { n: usize },
    #[error("manifold parametrization has no radius with residual <= {tol:e}")]
    NoValidRadius { tol: f64 },
    #[error("homoclinic search needs real parameters and a real saddle")]
    NotReal,
    #[error("no crossing of W^u and W^s within {generations} generations")]
    NoCrossing { generations: usize },
    #[error("tangency suspected: best transversality angle {angle:.3e} rad is below the floor")]
    Tangency { angle: f64 },
    #[error("sample budget of {budget} points exhausted at generation {generation}")]
    Budget { budget: usize, generation: usize },
    #[error("horseshoe degree must be at least 2, got {0}")]
    Degree(usize),
    #[error("no iterate count n <= {n_max} gives {d} intersections of F^n(D_u) with D_s")]
    NoIntersections { d: usize, n_max: usize },
    #[error("intersections {d} and {next} are equally far in D_s; cannot trim to exactly {d}")]
    Tie { d: usize, next: usize },
    #[error("no chart passed the checks after {halvings} halvings: {diagnostics}")]
    ChecksFailed { halvings: usize, diagnostics: String },
    #[error("periodic point of the chart map did not converge: {0}")]
    Shooting(String),
}
