use thiserror::Error;

/// Errors raised by the simulator library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input fell outside the domain on which a model is defined.
    #[error("{quantity} = {value} is outside the admissible range {range}")]
    Domain {
        quantity: &'static str,
        value: f64,
        range: String,
    },

    /// A precondition of an operation was not met.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Inconsistent or forbidden configuration.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// Parameter table could not be parsed or validated.
    #[error("parameter table line {line}: {message}")]
    Table { line: usize, message: String },

    /// The requested (environment, elevation, band) has no entry.
    #[error("no channel parameters for {0}")]
    NotAvailable(String),

    /// A sweep row could not be evaluated.
    #[error("sweep row ({variable} = {value}, alpha = {alpha_deg} deg): {source}")]
    Row {
        variable: &'static str,
        value: f64,
        alpha_deg: f64,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(quantity: &'static str, value: f64, range: impl Into<String>) -> Error {
    Error::Domain {
        quantity,
        value,
        range: range.into(),
    }
}
