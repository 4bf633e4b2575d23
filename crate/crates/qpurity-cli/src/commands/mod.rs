pub mod experiment;
pub mod figure;
pub mod report;
pub mod scan;
pub mod verify;

use qpurity::states::ThetaPState;

use crate::CliError;

/// Build the validated family state for a resolved config.
pub fn state(theta: f64, p: f64) -> Result<ThetaPState<f64>, CliError> {
    ThetaPState::new(theta, p).map_err(|e| CliError::Usage(e.to_string()))
}
