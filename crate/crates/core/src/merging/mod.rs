//! State merging by coarse-grained random measurement on Alice's copies.
//!
//! A tripartite pure state on Alice (A), Bob (B) and a reference (R) is
//! copied `n` times. When `S(A|B) > 0` Alice and Bob first share extra EPR
//! pairs, which lowers the conditional entropy by one bit each. Alice then
//! measures her whole block in a Haar-random basis, coarse-grained into
//! `N = D / L` outcomes of dimension `L`, and announces the outcome. Bob
//! applies the Uhlmann-optimal isometry on his side; what remains shared with
//! Alice's residual `L`-dimensional system is counted as `log2 L` ebits.

mod plan;
mod recovery;
mod run;
mod sweep;

pub use plan::{epr_boost, plan_merge, BoostedState, MergePlan};
pub use recovery::{recovery_isometry, Recovery};
pub use run::{
    ensemble_reference_check, run_merge, MergeBasis, MergeOutcome, MergeSetup, MAX_EXHAUSTIVE,
};
pub use sweep::{monte_carlo_merge, run_trials, trial_stream, CurveRow, SweepConfig};

use serde::{Deserialize, Serialize};

use crate::error::{QError, Result};
use crate::state::{PureState, QuantumState};

/// Which labels belong to Alice and Bob; every other label is reference.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Roles {
    pub alice: Vec<String>,
    pub bob: Vec<String>,
}

impl Default for Roles {
    fn default() -> Self {
        Self {
            alice: vec!["A".into()],
            bob: vec!["B".into()],
        }
    }
}

/// Fuses the role groups of `psi` into single subsystems `A`, `B`, `R`
/// (a one-dimensional `R` is added when there is no reference).
pub(crate) fn canonical_abr(psi: &PureState, roles: &Roles) -> Result<PureState> {
    if roles.alice.is_empty() || roles.bob.is_empty() {
        return Err(QError::EmptySelection);
    }
    crate::layout::check_disjoint(&roles.alice, &roles.bob)?;
    let layout = psi.layout();
    layout.positions(&roles.alice)?;
    layout.positions(&roles.bob)?;
    let reference: Vec<String> = layout
        .labels()
        .filter(|l| !roles.alice.iter().any(|a| a == l) && !roles.bob.iter().any(|b| b == l))
        .map(str::to_string)
        .collect();
    let mut s = psi.fuse(&roles.alice, "__alice")?;
    s = s.fuse(&roles.bob, "__bob")?;
    s = if reference.is_empty() {
        let trivial = PureState::basis(crate::layout::SubsystemLayout::new([("__ref", 1)])?, &[0])?;
        s.tensor(&trivial)?
    } else {
        s.fuse(&reference, "__ref")?
    };
    s = s.permute(&["__alice", "__bob", "__ref"])?;
    s.relabel("__alice", "A")?.relabel("__bob", "B")?.relabel("__ref", "R")
}
