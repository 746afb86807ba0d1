use std::fmt;

use sp6flags::census::CensusError;
use sp6flags::checks::CheckError;
use sp6flags::composition::CompositionError;
use sp6flags::flags::FlagError;
use sp6flags::freudenthal::FreudenthalError;
use sp6flags::invariants::InvariantError;
use sp6flags::orbits::OrbitError;
use sp6flags::qforms::QFormError;
use sp6flags::scalars::ScalarError;
use sp6flags::wedge::WedgeError;

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Precondition(String),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::Internal(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Precondition(m) => write!(f, "precondition violated: {m}"),
            CliError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn parse_err(e: impl fmt::Display) -> CliError {
    CliError::Parse(e.to_string())
}

pub fn pre(e: impl fmt::Display) -> CliError {
    CliError::Precondition(e.to_string())
}

impl From<ScalarError> for CliError {
    fn from(e: ScalarError) -> Self {
        match e {
            ScalarError::Parse(..) | ScalarError::InvalidContext(_) | ScalarError::ContextMismatch => parse_err(e),
            _ => pre(e),
        }
    }
}

impl From<WedgeError> for CliError {
    fn from(e: WedgeError) -> Self {
        match e {
            WedgeError::Parse(..) | WedgeError::Scalar(_) => parse_err(e),
            _ => pre(e),
        }
    }
}

impl From<InvariantError> for CliError {
    fn from(e: InvariantError) -> Self {
        CliError::Internal(e.to_string())
    }
}

impl From<OrbitError> for CliError {
    fn from(e: OrbitError) -> Self {
        match e {
            OrbitError::Invariant(_) => CliError::Internal(e.to_string()),
            _ => pre(e),
        }
    }
}

impl From<QFormError> for CliError {
    fn from(e: QFormError) -> Self {
        pre(e)
    }
}

impl From<CompositionError> for CliError {
    fn from(e: CompositionError) -> Self {
        pre(e)
    }
}

impl From<FlagError> for CliError {
    fn from(e: FlagError) -> Self {
        match e {
            FlagError::Inconsistent(_) => CliError::Internal(e.to_string()),
            _ => pre(e),
        }
    }
}

impl From<FreudenthalError> for CliError {
    fn from(e: FreudenthalError) -> Self {
        match e {
            FreudenthalError::IdentityFailed(_) | FreudenthalError::CertificationFailed { .. } => {
                CliError::Internal(e.to_string())
            }
            _ => pre(e),
        }
    }
}

impl From<CensusError> for CliError {
    fn from(e: CensusError) -> Self {
        match e {
            CensusError::ThreadPool(_) => CliError::Internal(e.to_string()),
            _ => pre(e),
        }
    }
}

impl From<CheckError> for CliError {
    fn from(e: CheckError) -> Self {
        parse_err(e)
    }
}
