//! Seeded random states and the splittable seeding scheme.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::layout::SubsystemLayout;
use crate::linalg::{c, gaussian, trace, CMatrix, CVector};
use crate::state::{DensityOperator, PureState};

/// Generator for stream `stream` of master seed `seed`.
///
/// Every consumer of randomness gets its own (seed, stream) pair, so adding
/// trials or restarts never perturbs the draws of earlier ones.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Haar-random pure state (normalized complex Gaussian vector).
pub fn random_pure<R: Rng + ?Sized>(layout: SubsystemLayout, rng: &mut R) -> PureState {
    let n = layout.total_dim();
    let v = CVector::from_fn(n, |_, _| gaussian(rng));
    PureState::normalized(layout, v).expect("gaussian vector is nonzero")
}

/// Full-rank random density operator `G G^dagger / Tr(G G^dagger)` with
/// `G` a square complex Ginibre matrix.
pub fn random_density<R: Rng + ?Sized>(layout: SubsystemLayout, rng: &mut R) -> DensityOperator {
    let n = layout.total_dim();
    random_density_rank(layout, n, rng)
}

/// Random density operator of rank at most `rank` (induced measure).
pub fn random_density_rank<R: Rng + ?Sized>(
    layout: SubsystemLayout,
    rank: usize,
    rng: &mut R,
) -> DensityOperator {
    let n = layout.total_dim();
    let g = CMatrix::from_fn(n, rank.max(1), |_, _| gaussian(rng));
    let p = &g * g.adjoint();
    let t = trace(&p).re;
    let mut m = p * c(1.0 / t, 0.0);
    // exact Hermitian symmetry
    m = (&m + m.adjoint()) * c(0.5, 0.0);
    DensityOperator::from_parts_unchecked(layout, m)
}
