use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("quadrature did not converge: error estimate {estimate:.3e} exceeds tolerance {tolerance:.3e}")]
    QuadratureNoConvergence { estimate: f64, tolerance: f64 },
    #[error("no sign change on [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },
    #[error("root finder did not converge after {0} iterations")]
    RootNoConvergence(usize),
    #[error("no guided mode: {0}")]
    NoMode(String),
    #[error("material pole: {0}")]
    Pole(String),
    #[error("invalid region: {0}")]
    InvalidRegion(String),
    #[error("missing input: {0}")]
    Missing(String),
    #[error("electron position ({x}, {y}) lies outside the mode grid")]
    OutsideGrid { x: f64, y: f64 },
    #[error("normalization integral is zero")]
    ZeroNormalization,
    #[error("cannot classify dispersion regime: {0}")]
    AmbiguousRegime(String),
    #[error("bandwidth overlap: {0}")]
    BandwidthOverlap(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("at {point}: {source}")]
    AtPoint { point: String, source: Box<Error> },
}

impl Error {
    /// True for errors caused by bad inputs rather than failed numerics.
    pub fn is_input_error(&self) -> bool {
        if let Error::AtPoint { source, .. } = self {
            return source.is_input_error();
        }
        matches!(
            self,
            Error::Domain(_)
                | Error::InvalidRegion(_)
                | Error::Missing(_)
                | Error::Parse(_)
                | Error::OutsideGrid { .. }
                | Error::Pole(_)
        )
    }

    /// Tags the error with the grid point that produced it.
    pub fn at(self, point: impl Into<String>) -> Self {
        Error::AtPoint {
            point: point.into(),
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
