use crate::numerics::SolveDiagnostics;

/// Errors shared across the library.
///
/// Each variant carries a stable machine-readable code (see [`Error::code`])
/// so front ends can classify failures without string matching.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("judge {judge}: alternative {label:?} compared with itself")]
    SelfComparison { judge: usize, label: String },

    #[error("judge {judge}: pair ({a:?}, {b:?}) compared more than once in one ballot")]
    DuplicatePair { judge: usize, a: String, b: String },

    #[error("judge {judge}: unknown alternative {label:?}")]
    UnknownAlternative { judge: usize, label: String },

    #[error("alternative {label:?} listed more than once")]
    DuplicateAlternative { label: String },

    #[error("profile must have at least one alternative and one judge")]
    Empty,

    #[error("no convergence after {} iterations (residual {:.3e})", diag.iterations, diag.residual)]
    NoConvergence { diag: SolveDiagnostics },

    #[error("linear system is singular or too ill-conditioned (pivot {pivot:.3e})")]
    Singular { pivot: f64 },

    #[error("iterate left the feasible region at iteration {iteration}")]
    DomainExit { iteration: usize },

    #[error("profile is not indivisible: nothing scored by {{{}}} against {{{}}}", fmt_group(j2), fmt_group(j1))]
    NotIndivisible { j1: Vec<usize>, j2: Vec<usize> },

    #[error("loss score of alternative {index} is zero; ratio combination undefined")]
    DivideByZero { index: usize },

    #[error("epsilon {epsilon} outside the admissible range ({min}, {max}]")]
    EpsilonOutOfRange { epsilon: f64, min: f64, max: f64 },

    #[error("comparison multigraph is disconnected")]
    Disconnected,

    #[error("alternative {index} was never compared")]
    IsolatedAlternative { index: usize },

    #[error("{{{}}} is not a macrovertex of the profile", fmt_group(members))]
    NotAMacrovertex { members: Vec<usize> },

    #[error("exhaustive scan limited to {limit} alternatives, profile has {n}")]
    TooLarge { n: usize, limit: usize },

    #[error("unknown fixture {name:?}")]
    UnknownFixture { name: String },
}

fn fmt_group(indices: &[usize]) -> String {
    indices
        .iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

impl Error {
    /// Stable identifier used in CLI error reports and exit-code mapping.
    pub fn code(&self) -> &'static str {
        match self {
            Error::SelfComparison { .. } => "SELF_COMPARISON",
            Error::DuplicatePair { .. } => "DUPLICATE_PAIR",
            Error::UnknownAlternative { .. } => "UNKNOWN_ALTERNATIVE",
            Error::DuplicateAlternative { .. } => "DUPLICATE_ALTERNATIVE",
            Error::Empty => "EMPTY",
            Error::NoConvergence { .. } => "NO_CONVERGENCE",
            Error::Singular { .. } => "SINGULAR",
            Error::DomainExit { .. } => "DOMAIN_EXIT",
            Error::NotIndivisible { .. } => "NOT_INDIVISIBLE",
            Error::DivideByZero { .. } => "DIVIDE_BY_ZERO",
            Error::EpsilonOutOfRange { .. } => "EPSILON_OUT_OF_RANGE",
            Error::Disconnected => "DISCONNECTED",
            Error::IsolatedAlternative { .. } => "ISOLATED_ALTERNATIVE",
            Error::NotAMacrovertex { .. } => "NOT_A_MACROVERTEX",
            Error::TooLarge { .. } => "TOO_LARGE",
            Error::UnknownFixture { .. } => "UNKNOWN_FIXTURE",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
