use thiserror::Error;

/// Errors raised by the engine.
///
/// Variants are grouped by the exit status the command-line front end maps
/// them to: argument/domain problems, resonances of the spectral data, and
/// numerical convergence failures.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("pole of the q-Gamma function at {0}")]
    Pole(i64),

    #[error("q-Gamma pole at {at} in the factor of the root e{i} - e{j}", i = .root.0, j = .root.1)]
    RootPole { root: (usize, usize), at: i64 },

    #[error("singular configuration: {0}")]
    Singular(String),

    #[error("point outside the convergence zone: {0}")]
    Zone(String),

    #[error("nondegeneracy violated at multi-index {p:?} (divisor {divisor:e})")]
    Nondegeneracy { p: Vec<u32>, divisor: f64 },

    #[error("resonance: {0}")]
    Resonance(String),

    #[error("convergence failure: {0}")]
    Convergence(String),

    #[error("numerically degenerate interpolation system after {0} attempts")]
    NumericDegeneracy(usize),
}

impl Error {
    /// Short machine-readable tag for the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::Pole(_) | Error::RootPole { .. } => "pole",
            Error::Singular(_) => "singular",
            Error::Zone(_) => "zone",
            Error::Nondegeneracy { .. } => "nondegeneracy",
            Error::Resonance(_) => "resonance",
            Error::Convergence(_) => "convergence",
            Error::NumericDegeneracy(_) => "numeric_degeneracy",
        }
    }

    /// Process exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_)
            | Error::Pole(_)
            | Error::RootPole { .. }
            | Error::Singular(_)
            | Error::Zone(_) => 2,
            Error::Nondegeneracy { .. } | Error::Resonance(_) => 3,
            Error::Convergence(_) | Error::NumericDegeneracy(_) => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
