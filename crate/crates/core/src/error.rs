use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Failure modes shared by every numerical routine in the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Error {
    /// An argument violated a documented precondition.
    Domain {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },
    /// The requested value is infinite (e.g. `K` at parameter 1).
    Divergence { name: &'static str, value: f64 },
    /// An integrand produced a non-finite sample.
    Evaluation { abscissa: f64, value: f64 },
    /// Quadrature could not reach the tolerance within its evaluation budget.
    Accuracy {
        estimate: f64,
        abs_error: f64,
        evaluations: usize,
    },
}

impl Error {
    pub(crate) fn domain(name: &'static str, value: f64, expected: &'static str) -> Self {
        Error::Domain {
            name,
            value,
            expected,
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Error::Domain {
                name,
                value,
                expected,
            } => write!(f, "domain error: {name} = {value} violates {expected}"),
            Error::Divergence { name, value } => {
                write!(f, "divergence: result is infinite at {name} = {value}")
            }
            Error::Evaluation { abscissa, value } => {
                write!(f, "integrand returned {value} at abscissa {abscissa}")
            }
            Error::Accuracy {
                estimate,
                abs_error,
                evaluations,
            } => write!(
                f,
                "tolerance not met within the evaluation budget ({evaluations} evaluations used) \
                 (best estimate {estimate}, error estimate {abs_error:e})"
            ),
        }
    }
}

impl core::error::Error for Error {}
