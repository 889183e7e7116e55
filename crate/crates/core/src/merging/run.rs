use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::distance::{fidelity, trace_distance};
use crate::error::{QError, Result};
use crate::layout::SubsystemLayout;
use crate::linalg::{fourier, haar_unitary, kron, CMatrix};
use crate::measure::{block_probabilities, block_project, sample_outcome, POST_LABEL};
use crate::state::{DensityOperator, PureState, QuantumState};
use crate::Caps;

use super::plan::{epr_boost, MergePlan};
use super::recovery::recovery_isometry;
use super::{canonical_abr, Roles};

/// Largest outcome count for exhaustive enumeration.
pub const MAX_EXHAUSTIVE: usize = 256;

const ALICE: &str = "Alice";
const BOB_HALF: &str = "B1";
const JUNK: &str = "J";

/// Basis for Alice's measurement.
#[derive(Debug, Clone, PartialEq)]
pub enum MergeBasis {
    /// Fresh Haar-random unitary per run.
    Haar,
    /// Tensor product of Fourier transforms on each of Alice's subsystems
    /// (Hadamard for qubits).
    Fourier,
    /// Explicit unitary on Alice's measured space.
    Given(CMatrix),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MergeOutcome {
    pub copies: usize,
    pub trial: usize,
    pub outcome_index: usize,
    pub probability: f64,
    /// Trace distance between `σ_{A1 R}` and `I/L ⊗ ρ_R^{⊗n}`.
    pub decoupling_error: f64,
    /// Fidelity between `σ_{A1 R}` and `I/L ⊗ ρ_R^{⊗n}`.
    pub uhlmann_fidelity: f64,
    /// Fidelity of Bob's recovered state with the merged target.
    pub achieved_fidelity: f64,
    /// `log2 L - k_boost`
    pub epr_net_bits: f64,
    /// `log2 N`
    pub cbits: f64,
}

/// Everything about one merge that does not depend on Alice's basis.
#[derive(Debug, Clone)]
pub struct MergeSetup {
    plan: MergePlan,
    /// Boosted `n`-copy state with Alice's group fused into one subsystem.
    measured: PureState,
    alice_labels: Vec<String>,
    alice_dims: Vec<usize>,
    bob_labels: Vec<String>,
    reference_labels: Vec<String>,
    target: PureState,
    target_bob: Vec<String>,
    /// `I/L ⊗ ρ_R^{⊗n}` on `A1` and the reference copies.
    ideal: DensityOperator,
    reference_state: DensityOperator,
}

impl MergeSetup {
    pub fn new(psi: &PureState, roles: &Roles, plan: &MergePlan, caps: &Caps) -> Result<Self> {
        let base = canonical_abr(psi, roles)?;
        let n = plan.copies;
        let dims = base.layout().dims();
        let copy_dim = dims
            .iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d.checked_pow(n as u32)?))
            .ok_or(QError::DimensionCap {
                requested: usize::MAX,
                cap: caps.pure_dim,
            })?;
        let boosted_dim = copy_dim.saturating_mul(1usize << plan.epr_boost.min(63));
        caps.check_pure(boosted_dim)?;

        let copies = base.copies(n)?;
        let group = |x: &str| (0..n).map(|i| format!("{x}.{i}")).collect::<Vec<_>>();
        let copy_roles = Roles {
            alice: group("A"),
            bob: group("B"),
        };
        let reference_labels = group("R");
        let boosted = epr_boost(&copies, &copy_roles, plan.epr_boost)?;
        let alice_dim = boosted.state.layout().dim_of_set(&boosted.alice)?;
        if alice_dim != plan.alice_dim || plan.block * plan.outcomes != alice_dim {
            return Err(QError::InvalidArgument("plan does not match the state".into()));
        }
        let alice_dims = boosted
            .alice
            .iter()
            .map(|l| boosted.state.layout().dim_of(l))
            .collect::<Result<Vec<_>>>()?;
        let measured = boosted.state.fuse(&boosted.alice, ALICE)?;
        let bob_labels = boosted.bob.clone();

        let l = plan.block;
        let post_bob_dim = measured.layout().dim_of_set(&bob_labels)?;
        let mut target = PureState::max_entangled(POST_LABEL, BOB_HALF, l)?;
        let mut merged = copies;
        let mut target_bob = Vec::new();
        for i in 0..n {
            let prime = format!("A'.{i}");
            merged = merged.relabel(&format!("A.{i}"), &prime)?;
            target_bob.push(prime);
        }
        target_bob.extend(group("B"));
        target_bob.push(BOB_HALF.to_string());
        target = target.tensor(&merged)?;
        let target_bob_dim = target.layout().dim_of_set(&target_bob)?;
        if target_bob_dim < post_bob_dim {
            // Bob ends up holding more than the target describes (leftover
            // invested pairs); give the target a blank register for them.
            let junk = post_bob_dim.div_ceil(target_bob_dim);
            target = target.tensor(&PureState::basis(SubsystemLayout::new([(JUNK, junk)])?, &[0])?)?;
            target_bob.push(JUNK.to_string());
        }
        caps.check_pure(target.dim())?;
        let sigma_side = l * target.layout().dim_of_set(&reference_labels)?;
        caps.check_density(sigma_side)?;

        let reference_state = target.reduced(&reference_labels)?;
        let ideal = DensityOperator::maximally_mixed(SubsystemLayout::new([(POST_LABEL, l)])?)
            .tensor(&reference_state)?;

        Ok(Self {
            plan: plan.clone(),
            measured,
            alice_labels: boosted.alice,
            alice_dims,
            bob_labels,
            reference_labels,
            target,
            target_bob,
            ideal,
            reference_state,
        })
    }

    pub fn plan(&self) -> &MergePlan {
        &self.plan
    }

    /// Alice's individual subsystems (copies then EPR halves) before fusion.
    pub fn alice_labels(&self) -> &[String] {
        &self.alice_labels
    }

    pub fn bob_labels(&self) -> &[String] {
        &self.bob_labels
    }

    pub fn reference_labels(&self) -> &[String] {
        &self.reference_labels
    }

    pub fn target(&self) -> &PureState {
        &self.target
    }

    /// `ρ_R^{⊗n}`
    pub fn reference_state(&self) -> &DensityOperator {
        &self.reference_state
    }

    /// The unitary for `basis`, drawing from `rng` only for [`MergeBasis::Haar`].
    pub fn unitary<R: Rng + ?Sized>(&self, basis: &MergeBasis, rng: &mut R) -> Result<CMatrix> {
        let d = self.plan.alice_dim;
        let w = match basis {
            MergeBasis::Haar => haar_unitary(d, rng),
            MergeBasis::Fourier => self
                .alice_dims
                .iter()
                .fold(CMatrix::identity(1, 1), |acc, &k| kron(&acc, &fourier(k))),
            MergeBasis::Given(w) => w.clone(),
        };
        if w.nrows() != d || w.ncols() != d {
            return Err(QError::DimensionMismatch(format!(
                "basis unitary is {}x{}, Alice has dimension {d}",
                w.nrows(),
                w.ncols()
            )));
        }
        Ok(w)
    }

    pub fn probabilities(&self, w: &CMatrix) -> Result<Vec<f64>> {
        block_probabilities(&self.measured, ALICE, w, self.plan.block)
    }

    /// Full record of outcome `k` under basis `w`, or `None` for a
    /// zero-probability branch.
    pub fn outcome(&self, w: &CMatrix, k: usize, trial: usize) -> Result<Option<MergeOutcome>> {
        let Some((post, probability)) = block_project(&self.measured, ALICE, w, self.plan.block, k)?
        else {
            return Ok(None);
        };
        let mut shared = vec![POST_LABEL.to_string()];
        shared.extend(self.reference_labels.iter().cloned());
        let sigma = post.reduced(&shared)?;
        let decoupling_error = trace_distance(&sigma, &self.ideal)?;
        let uhlmann_fidelity = fidelity(&sigma, &self.ideal)?;
        let rec = recovery_isometry(&post, &self.bob_labels, &self.target, &self.target_bob)?;
        let recovered = rec.apply(&post, &self.target)?;
        let achieved_fidelity = self.target.inner(&recovered)?.norm_sqr().clamp(0.0, 1.0);
        Ok(Some(MergeOutcome {
            copies: self.plan.copies,
            trial,
            outcome_index: k,
            probability,
            decoupling_error,
            uhlmann_fidelity,
            achieved_fidelity,
            epr_net_bits: self.plan.epr_net_bits(),
            cbits: self.plan.predicted_cbits,
        }))
    }

    /// One Born-rule sample.
    pub fn sample<R: Rng + ?Sized>(&self, w: &CMatrix, trial: usize, rng: &mut R) -> Result<MergeOutcome> {
        let probs = self.probabilities(w)?;
        let k = sample_outcome(&probs, rng);
        self.outcome(w, k, trial)?
            .ok_or_else(|| QError::InvalidState("sampled a zero-probability branch".into()))
    }

    /// Every outcome with nonzero probability.
    pub fn exhaustive(&self, w: &CMatrix, trial: usize) -> Result<Vec<MergeOutcome>> {
        if self.plan.outcomes > MAX_EXHAUSTIVE {
            return Err(QError::DimensionCap {
                requested: self.plan.outcomes,
                cap: MAX_EXHAUSTIVE,
            });
        }
        let mut out = Vec::new();
        for k in 0..self.plan.outcomes {
            if let Some(o) = self.outcome(w, k, trial)? {
                out.push(o);
            }
        }
        Ok(out)
    }

    /// Trace distance between `Σ_k p_k σ_R^(k)` and `ρ_R^{⊗n}`.
    pub fn ensemble_reference_distance(&self, w: &CMatrix, max_outcomes: usize) -> Result<f64> {
        if self.plan.outcomes > max_outcomes {
            return Err(QError::DimensionCap {
                requested: self.plan.outcomes,
                cap: max_outcomes,
            });
        }
        let side = self.reference_state.dim();
        let mut avg = CMatrix::zeros(side, side);
        for k in 0..self.plan.outcomes {
            if let Some((post, p)) = block_project(&self.measured, ALICE, w, self.plan.block, k)? {
                avg += post.reduced(&self.reference_labels)?.matrix() * crate::linalg::c(p, 0.0);
            }
        }
        let avg = DensityOperator::from_parts_unchecked(self.reference_state.layout().clone(), avg);
        trace_distance(&avg, &self.reference_state)
    }
}

/// One merging run: unitary from `basis` (Haar draws from `rng`), then a
/// Born-rule outcome.
pub fn run_merge<R: Rng + ?Sized>(
    psi: &PureState,
    roles: &Roles,
    plan: &MergePlan,
    basis: &MergeBasis,
    caps: &Caps,
    rng: &mut R,
) -> Result<MergeOutcome> {
    let setup = MergeSetup::new(psi, roles, plan, caps)?;
    let w = setup.unitary(basis, rng)?;
    setup.sample(&w, 0, rng)
}

/// Trace distance of the outcome-averaged reference state from `ρ_R^{⊗n}`.
pub fn ensemble_reference_check(
    psi: &PureState,
    roles: &Roles,
    plan: &MergePlan,
    w: &CMatrix,
    caps: &Caps,
) -> Result<f64> {
    MergeSetup::new(psi, roles, plan, caps)?.ensemble_reference_distance(w, caps.pure_dim)
}
