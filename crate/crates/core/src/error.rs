use thiserror::Error;

/// Failures raised by plane construction, curve validation and analysis.
///
/// Scalars are reported as `f64` regardless of the working precision.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("boundary is not strictly convex near theta = {theta}: turning {value}")]
    ConvexityViolation { theta: f64, value: f64 },
    #[error("radial function is not positive at theta = {theta}: r = {value}")]
    PositivityViolation { theta: f64, value: f64 },
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("zero vector where a nonzero vector is required")]
    ZeroVector,
    #[error("vector is not unit in the plane norm (norm = {norm})")]
    NotUnit { norm: f64 },
    #[error("no convergence: {0}")]
    NoConvergence(String),
    #[error("parameter {t} outside domain [{lo}, {hi}]")]
    OutOfDomain { t: f64, lo: f64, hi: f64 },
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("curve is singular at t = {t}")]
    SingularPoint { t: f64 },
    #[error("one-sided tangent directions disagree at t = {t} (angle {angle})")]
    LimitsDisagree { t: f64, angle: f64 },
    #[error("pair is not a Legendre curve: residual {residual}")]
    NotLegendre { residual: f64 },
    #[error("degenerate frame [eta, xi] at t = {t}")]
    DegenerateFrame { t: f64 },
    #[error("not a front: alpha and kappa vanish together near t = {t}")]
    NotAFront { t: f64 },
    #[error("curve is not closed")]
    NotClosed,
    #[error("Maslov methods disagree: word {word_reduction}, flip/flop {flip_flop}, rotation {rotation}")]
    MethodsDisagree {
        word_reduction: i64,
        flip_flop: i64,
        rotation: i64,
    },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("map is not an isometry of the plane (deviation {deviation})")]
    NotAnIsometry { deviation: f64 },
    #[error("kappa vanishes near t = {t}")]
    KappaVanishes { t: f64 },
    #[error("rho degenerates near t = {t}")]
    RhoDegenerate { t: f64 },
    #[error("pedal line is undefined at t = {t}")]
    DegenerateLine { t: f64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
