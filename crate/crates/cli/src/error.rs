use gausslab::biharmonic::BiharmonicError;
use gausslab::geometry::GeometryError;
use gausslab::hypercone::HyperconeError;
use gausslab::isoparametric::IsoError;
use gausslab::roots::RootError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("config error: {0}")]
    Config(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Config(_) | CliError::Io(_) => 2,
            CliError::Parse(_) => 3,
            CliError::Numerical(_) => 4,
        }
    }
}

impl From<GeometryError> for CliError {
    fn from(e: GeometryError) -> Self {
        match e {
            GeometryError::Parse(_) => CliError::Parse(e.to_string()),
            GeometryError::InvalidChart(_) | GeometryError::Precondition(_) => CliError::Config(e.to_string()),
            GeometryError::Jet(_)
            | GeometryError::SingularImmersion { .. }
            | GeometryError::SphereConstraint { .. }
            | GeometryError::OutOfDomain { .. } => CliError::Numerical(e.to_string()),
        }
    }
}

impl From<BiharmonicError> for CliError {
    fn from(e: BiharmonicError) -> Self {
        match e {
            BiharmonicError::Geometry(g) => g.into(),
            BiharmonicError::Precondition(_) | BiharmonicError::DimensionMismatch(_) => CliError::Config(e.to_string()),
        }
    }
}

impl From<HyperconeError> for CliError {
    fn from(e: HyperconeError) -> Self {
        match e {
            HyperconeError::Geometry(g) => g.into(),
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl From<IsoError> for CliError {
    fn from(e: IsoError) -> Self {
        match e {
            IsoError::Hypercone(h) => h.into(),
            IsoError::PoleProximity { .. } | IsoError::Roots(_) => CliError::Numerical(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl From<RootError> for CliError {
    fn from(e: RootError) -> Self {
        CliError::Config(e.to_string())
    }
}
