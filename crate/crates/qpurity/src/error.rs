//! Error type shared by all modules.

use thiserror::Error;

/// Everything that can go wrong when constructing states or conditioning on
/// measurement outcomes. Formulas themselves are total on valid inputs.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max asymmetry {max_asym:.3e})")]
    NotHermitian { max_asym: f64 },

    #[error("matrix trace {trace:.17} is not 1 within tolerance")]
    NotUnitTrace { trace: f64 },

    #[error("matrix has eigenvalue {min_eig:.3e} below the PSD tolerance")]
    NotPositive { min_eig: f64 },

    #[error("Bloch vector norm {norm:.17} exceeds 1 beyond tolerance")]
    BlochNormTooLarge { norm: f64 },

    #[error("measurement direction must be a unit vector (norm {norm:.17})")]
    NonUnitDirection { norm: f64 },

    #[error("parameter {name} = {value:.17} outside its valid range")]
    ParameterOutOfRange { name: &'static str, value: f64 },

    #[error("cannot condition on the '{outcome}' outcome: its probability {prob:.3e} is zero within tolerance")]
    ZeroProbabilityOutcome { outcome: char, prob: f64 },

    #[error(
        "the Bloch aperture between the second qubit's pure states ({got:.12} rad) \
         does not match the first qubit's ({expected:.12} rad); only equal-aperture \
         product mixtures admit the canonical form"
    )]
    ApertureMismatch { expected: f64, got: f64 },

    #[error("state specification is not normalizable (norm {norm:.3e})")]
    NonNormalizable { norm: f64 },

    #[error("custom entropy function must vanish at 0 and 1 (f(0)={at_zero:.3e}, f(1)={at_one:.3e})")]
    EntropyBoundary { at_zero: f64, at_one: f64 },

    #[error("objective returned a non-finite value at parameter {at:.17}")]
    NonFiniteObjective { at: f64 },

    #[error("count record holds no events; estimation needs N > 0")]
    EmptyCountRecord,
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
