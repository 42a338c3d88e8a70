use hyperrad::Error;

/// Result code of every fallible entry point. `HR_STATUS_OK` is zero.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HrStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    SingularSystem = 3,
    NonUniqueSteadyState = 4,
    IntegrationFailure = 5,
    CutoffExhausted = 6,
    ReferenceDark = 7,
    SemiclassicalSingularity = 8,
    Config = 9,
    Io = 10,
    Panic = 11,
}

impl From<&Error> for HrStatus {
    fn from(err: &Error) -> Self {
        match err {
            Error::InvalidArgument(_) | Error::DimensionMismatch { .. } | Error::IndexOutOfRange { .. } => {
                HrStatus::InvalidArgument
            }
            Error::SingularSystem(_) => HrStatus::SingularSystem,
            Error::NonUniqueSteadyState { .. } => HrStatus::NonUniqueSteadyState,
            Error::IntegrationFailure(_) => HrStatus::IntegrationFailure,
            Error::CutoffExhausted { .. } => HrStatus::CutoffExhausted,
            Error::ReferenceDark { .. } => HrStatus::ReferenceDark,
            Error::SemiclassicalSingularity { .. } => HrStatus::SemiclassicalSingularity,
            Error::Config(_) => HrStatus::Config,
            Error::Io { .. } => HrStatus::Io,
        }
    }
}
