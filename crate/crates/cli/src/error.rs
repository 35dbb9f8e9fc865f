use std::fmt;

pub const EXIT_INVALID: u8 = 1;
pub const EXIT_IO: u8 = 2;
pub const EXIT_FIT: u8 = 3;
pub const EXIT_TOLERANCE: u8 = 4;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn invalid(message: impl Into<String>) -> Self {
        Self { code: EXIT_INVALID, message: message.into() }
    }

    pub fn io(message: impl Into<String>) -> Self {
        Self { code: EXIT_IO, message: message.into() }
    }

    pub fn tolerance(message: impl Into<String>) -> Self {
        Self { code: EXIT_TOLERANCE, message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<lrk_qfi::Error> for CliError {
    fn from(e: lrk_qfi::Error) -> Self {
        use lrk_qfi::Error as E;
        let code = match &e {
            E::Domain(_) | E::SingularMode { .. } | E::Resource(_) => EXIT_INVALID,
            E::Fit { .. } => EXIT_FIT,
            E::Numeric(_) => EXIT_TOLERANCE,
        };
        Self { code, message: e.to_string() }
    }
}

pub type CliResult<T> = Result<T, CliError>;
