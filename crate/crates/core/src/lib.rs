//! Partial-information quantities and a desk-scale simulator for quantum state
//! merging.
//!
//! - [`state`], [`layout`], [`channel`], [`measure`], [`distance`]: dense
//!   linear algebra over labelled multipartite systems.
//! - [`entropy`]: von Neumann entropies in bits, with signed conditional
//!   entropy and coherent information.
//! - [`merging`]: the random-measurement merging protocol with decoupling
//!   diagnostics, Uhlmann recovery, and EPR / classical-bit accounting.
//! - [`applications`]: distributed-compression and multiple-access rate
//!   regions, entanglement of assistance, and side-information rates with an
//!   entanglement-of-purification upper bound.
//!
//! All logarithms are base 2.

pub mod applications;
pub mod channel;
pub mod distance;
pub mod entropy;
pub mod error;
pub mod layout;
pub mod linalg;
pub mod measure;
pub mod merging;
pub mod presets;
pub mod random;
pub mod state;

pub use channel::{apply_channel, ChannelSpec};
pub use distance::{fidelity, trace_distance};
pub use entropy::{
    coherent_information, coherent_information_clamped, conditional_entropy, mutual_information,
    ssa_margin, subset_entropy, von_neumann_entropy, EntropyCalc, EntropyReport,
};
pub use error::{QError, Result};
pub use layout::{Subsystem, SubsystemLayout};
pub use linalg::{haar_unitary, CMatrix, CVector, C64};
pub use measure::{block_measure, block_probabilities, block_project, BlockMeasurement};
pub use state::{purify, DensityOperator, PureState, QuantumState};

/// Dimension guard rails for desk-scale runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Caps {
    /// Maximum number of amplitudes of any pure state built internally.
    pub pure_dim: usize,
    /// Maximum side length of any density matrix built internally.
    pub density_side: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            pure_dim: 1 << 20,
            density_side: 1 << 12,
        }
    }
}

impl Caps {
    pub fn check_pure(&self, dim: usize) -> Result<()> {
        if dim > self.pure_dim {
            return Err(QError::DimensionCap {
                requested: dim,
                cap: self.pure_dim,
            });
        }
        Ok(())
    }

    pub fn check_density(&self, side: usize) -> Result<()> {
        if side > self.density_side {
            return Err(QError::DimensionCap {
                requested: side,
                cap: self.density_side,
            });
        }
        Ok(())
    }
}
