use crate::error::{QError, Result};
use crate::linalg::{CMatrix, CVector};
use crate::state::{PureState, QuantumState};

/// Bob's Uhlmann-optimal isometry and the overlap it attains.
#[derive(Debug, Clone)]
pub struct Recovery {
    /// Maps Bob's post-measurement space (columns, post layout order) into
    /// Bob's target space (rows, target layout order).
    pub isometry: CMatrix,
    /// `(sum of singular values of the cross-overlap operator)^2`.
    pub overlap_sq: f64,
    /// Shared (non-Bob) labels in the order used for the contraction.
    pub shared: Vec<String>,
}

/// Isometry `V` on Bob's labels maximising `|<target| (I ⊗ V) |post>|`.
///
/// Writing both states as matrices `P[x, b]`, `T[x, c]` over the shared labels
/// `x` and Bob's labels, the overlap is `Tr(V K)` with `K = P^T conj(T)`. The
/// maximum over isometries is the trace norm of `K`, attained by the adjoint
/// of the unitary polar factor of `K`.
pub fn recovery_isometry<S: AsRef<str>, T: AsRef<str>>(
    post: &PureState,
    post_bob: &[S],
    target: &PureState,
    target_bob: &[T],
) -> Result<Recovery> {
    let shared = shared_labels(post, post_bob, target, target_bob)?;
    let (p, _, _) = post.split_matrix(&shared)?;
    let (t, _, _) = target.split_matrix(&shared)?;
    let (bp, bt) = (p.ncols(), t.ncols());
    if bt < bp {
        return Err(QError::DimensionMismatch(format!(
            "target Bob dimension {bt} is smaller than post Bob dimension {bp}"
        )));
    }
    let k = p.transpose() * t.conjugate();
    let svd = k.svd(true, true);
    let u = svd.u.expect("requested");
    let v_t = svd.v_t.expect("requested");
    let nuclear: f64 = svd.singular_values.iter().sum();
    let isometry = v_t.adjoint() * u.adjoint();
    Ok(Recovery {
        isometry,
        overlap_sq: nuclear * nuclear,
        shared,
    })
}

fn shared_labels<S: AsRef<str>, T: AsRef<str>>(
    post: &PureState,
    post_bob: &[S],
    target: &PureState,
    target_bob: &[T],
) -> Result<Vec<String>> {
    let pl = post.layout();
    let tl = target.layout();
    pl.positions(post_bob)?;
    tl.positions(target_bob)?;
    let shared: Vec<String> = pl
        .labels()
        .filter(|l| !post_bob.iter().any(|b| b.as_ref() == *l))
        .map(str::to_string)
        .collect();
    let target_shared = tl
        .labels()
        .filter(|l| !target_bob.iter().any(|b| b.as_ref() == *l))
        .count();
    if target_shared != shared.len() {
        return Err(QError::DimensionMismatch("shared subsystems differ".into()));
    }
    for l in &shared {
        if tl.dim_of(l).map_err(|_| QError::DimensionMismatch(format!("target lacks `{l}`")))?
            != pl.dim_of(l)?
            || target_bob.iter().any(|b| b.as_ref() == l)
        {
            return Err(QError::DimensionMismatch(format!("shared subsystem `{l}` differs")));
        }
    }
    Ok(shared)
}

impl Recovery {
    /// Applies the isometry to `post`, returning the state in `target`'s layout.
    pub fn apply(&self, post: &PureState, target: &PureState) -> Result<PureState> {
        let (p, _, _) = post.split_matrix(&self.shared)?;
        let (_, rpos, cpos) = target.split_matrix(&self.shared)?;
        if self.isometry.ncols() != p.ncols() {
            return Err(QError::DimensionMismatch("isometry does not match post state".into()));
        }
        let q = p * self.isometry.transpose();
        let tl = target.layout();
        let ro = tl.offsets(&rpos);
        let co = tl.offsets(&cpos);
        let mut amps = CVector::zeros(tl.total_dim());
        for (i, &r) in ro.iter().enumerate() {
            for (j, &cc) in co.iter().enumerate() {
                amps[r + cc] = q[(i, j)];
            }
        }
        PureState::normalized(tl.clone(), amps)
    }
}
