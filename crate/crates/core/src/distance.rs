//! Fidelity and trace distance between density operators.

use crate::error::{QError, Result};
use crate::linalg::{clamp_psd, hermitian_eigenvalues, psd_sqrt};
use crate::state::{DensityOperator, QuantumState};

fn same_layout(rho: &DensityOperator, sigma: &DensityOperator) -> Result<()> {
    if rho.layout() != sigma.layout() {
        return Err(QError::DimensionMismatch(
            "states are over different layouts".into(),
        ));
    }
    Ok(())
}

/// Squared Uhlmann fidelity `(Tr |sqrt(rho) sqrt(sigma)|)^2`, clamped to `[0, 1]`.
pub fn fidelity(rho: &DensityOperator, sigma: &DensityOperator) -> Result<f64> {
    same_layout(rho, sigma)?;
    let prod = psd_sqrt(rho.matrix()) * psd_sqrt(sigma.matrix());
    let nuclear: f64 = prod.singular_values().iter().sum();
    Ok((nuclear * nuclear).clamp(0.0, 1.0))
}

/// Half the trace norm of `rho - sigma`, clamped to `[0, 1]`.
pub fn trace_distance(rho: &DensityOperator, sigma: &DensityOperator) -> Result<f64> {
    same_layout(rho, sigma)?;
    let diff = rho.matrix() - sigma.matrix();
    let sum: f64 = hermitian_eigenvalues(&diff).iter().map(|v| v.abs()).sum();
    Ok(clamp_psd(0.5 * sum).min(1.0))
}
