use thiserror::Error;

/// Errors raised by the response, scattering, Green-tensor and potential
/// routines. Numerical payloads are carried as `f64` regardless of the
/// scalar type the computation ran in.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what} out of domain: {value}")]
    Domain { what: &'static str, value: f64 },

    #[error("invalid parameter {what}: {reason}")]
    InvalidParameter { what: &'static str, reason: String },

    #[error("Green tensor is singular at coincident points (|rho| = {rho})")]
    Coincident { rho: f64 },

    #[error(
        "singular sphere-in-cavity configuration: multiple-reflection denominator {denominator:e}"
    )]
    SingularConfiguration { denominator: f64 },

    #[error("small-sphere approximation violated: {which} = {value} (must be < 1)")]
    SmallSphere { which: &'static str, value: f64 },

    #[error("separation {separation} lies inside the exclusion radius {limit} of the scatterer")]
    Validity { separation: f64, limit: f64 },

    #[error(
        "Clausius-Mossotti inversion impossible at xi = {xi}: alpha/(3 eps0 V) = {ratio} >= 1"
    )]
    ClausiusMossotti { xi: f64, ratio: f64 },

    #[error("quadrature did not converge: best estimate {best:e}, error estimate {error:e}")]
    Quadrature { best: f64, error: f64 },

    #[error("configuration outside the closed-form restriction: {0}")]
    Restriction(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Non-fatal notice that a configuration sits close to the edge of the
/// approximations it relies on.
#[derive(Debug, Clone, PartialEq)]
pub enum ValidityWarning {
    /// Separation is within the warning band (but outside the error band)
    /// of the scatterer's effective radius.
    CloseSeparation {
        separation: f64,
        effective_radius: f64,
    },
    /// |k R| or |k_S R| is above the comfortable small-sphere bound.
    LargeSizeParameter { which: &'static str, value: f64 },
}

impl std::fmt::Display for ValidityWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ValidityWarning::CloseSeparation {
                separation,
                effective_radius,
            } => write!(
                f,
                "separation {separation} is less than 5x the effective radius {effective_radius}"
            ),
            ValidityWarning::LargeSizeParameter { which, value } => {
                write!(f, "size parameter {which} = {value} exceeds 0.1")
            }
        }
    }
}
