use thiserror::Error;

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{path}: {source}")]
    InFile {
        path: String,
        #[source]
        source: Box<CliError>,
    },

    #[error("{path}: {message}")]
    Io { path: String, message: String },

    #[error("{0}")]
    Input(String),

    #[error(transparent)]
    Core(#[from] semiloop::Error),
}

impl CliError {
    pub(crate) fn in_file(self, path: &str) -> CliError {
        CliError::InFile {
            path: path.to_string(),
            source: Box::new(self),
        }
    }
}
