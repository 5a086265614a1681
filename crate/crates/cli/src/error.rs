use holofol::expr::ExprError;
use holofol::first_integral::FirstIntegralError;
use holofol::foliation::FoliationError;
use holofol::normal_forms::NormalFormError;
use holofol::tracer::TraceError;

/// A failure together with the exit status it maps to.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("gate failure: {0}")]
    Gate(String),
    #[error("symbolic mismatch: {0}")]
    Mismatch(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Gate(_) => 2,
            CliError::Mismatch(_) => 3,
            CliError::Numerical(_) => 4,
        }
    }
}

impl From<ExprError> for CliError {
    fn from(e: ExprError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<NormalFormError> for CliError {
    fn from(e: NormalFormError) -> Self {
        match e {
            NormalFormError::GateFailure(_) => CliError::Gate(e.to_string()),
            NormalFormError::ShapeMismatch(_) | NormalFormError::NotRiccati(_) | NormalFormError::NotMonomial => {
                CliError::Mismatch(e.to_string())
            }
            NormalFormError::InvalidParams(_) | NormalFormError::BaseOnInvariantLine => CliError::Usage(e.to_string()),
        }
    }
}

impl From<FoliationError> for CliError {
    fn from(e: FoliationError) -> Self {
        match e {
            FoliationError::InvalidParams(_) | FoliationError::CoordinateMismatch => CliError::Usage(e.to_string()),
            _ => CliError::Mismatch(e.to_string()),
        }
    }
}

impl From<FirstIntegralError> for CliError {
    fn from(e: FirstIntegralError) -> Self {
        match e {
            FirstIntegralError::GateFailure(_) | FirstIntegralError::IrrationalLambda1(_) => {
                CliError::Gate(e.to_string())
            }
            FirstIntegralError::NormalForm(inner) => inner.into(),
            FirstIntegralError::Foliation(inner) => inner.into(),
            FirstIntegralError::InvalidForm(_) => CliError::Usage(e.to_string()),
            FirstIntegralError::Algebra(_) => CliError::Mismatch(e.to_string()),
        }
    }
}

impl From<TraceError> for CliError {
    fn from(e: TraceError) -> Self {
        match e {
            TraceError::InvalidTolerance(_)
            | TraceError::InvalidConfig(_)
            | TraceError::InvalidInput(_)
            | TraceError::WrongChart => CliError::Usage(e.to_string()),
            _ => CliError::Numerical(e.to_string()),
        }
    }
}
