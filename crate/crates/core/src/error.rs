use std::fmt;

use thiserror::Error;

/// A single config violation, addressed by its dotted key path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub path: String,
    pub message: String,
}

impl Diagnostic {
    pub fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        Self { path: path.into(), message: message.into() }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

/// Every diagnostic collected while validating a config.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Diagnostics(pub Vec<Diagnostic>);

impl Diagnostics {
    pub fn push(&mut self, path: impl Into<String>, message: impl Into<String>) {
        self.0.push(Diagnostic::new(path, message));
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Diagnostic> {
        self.0.iter()
    }

    /// True if any diagnostic mentions `path`.
    pub fn mentions(&self, path: &str) -> bool {
        self.0.iter().any(|d| d.path == path)
    }

    pub fn into_result(self) -> Result<()> {
        if self.0.is_empty() {
            Ok(())
        } else {
            Err(Error::ConfigInvalid(self))
        }
    }
}

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid carrier: {0}")]
    InvalidCarrier(String),
    #[error("invalid bandwidth: {0} Hz (must be > 0)")]
    InvalidBandwidth(f64),
    #[error("invalid noise power: {0} W (must be > 0)")]
    InvalidNoise(f64),
    #[error("invalid received power: {0} W (must be > 0)")]
    InvalidPower(f64),
    #[error("invalid probability: {0} (must lie in [0, 1])")]
    InvalidProbability(f64),
    #[error("zero throughput: link is unreachable, delay is undefined")]
    ZeroThroughput,
    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),
    #[error("node is on or behind the reflecting surface: {0}")]
    BehindSurface(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("non-finite value in {0}")]
    NonFinite(String),
    #[error("unknown sweep parameter `{0}`")]
    UnknownParameter(String),
    #[error("invalid config: {0}")]
    ConfigInvalid(Diagnostics),
    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn io(path: impl fmt::Display, source: std::io::Error) -> Self {
        Error::Io { path: path.to_string(), source }
    }

    pub fn config(path: impl Into<String>, message: impl Into<String>) -> Self {
        let mut d = Diagnostics::default();
        d.push(path, message);
        Error::ConfigInvalid(d)
    }

    /// Process exit code: 2 config, 3 numeric/domain, 4 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ConfigInvalid(_) | Error::UnknownParameter(_) => 2,
            Error::Io { .. } => 4,
            _ => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
