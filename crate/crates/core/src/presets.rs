//! The worked-example states and a few standard families.

use crate::error::{QError, Result};
use crate::layout::SubsystemLayout;
use crate::linalg::{c, CVector};
use crate::random::{random_pure, stream_rng};
use crate::state::{DensityOperator, PureState};

/// Default labels for `k` parties: `A`, `B`, then `R` when `k == 3`, else
/// helpers `C1, C2, ...`.
pub fn default_labels(k: usize) -> Vec<String> {
    match k {
        0 => Vec::new(),
        1 => vec!["A".into()],
        3 => vec!["A".into(), "B".into(), "R".into()],
        _ => {
            let mut v = vec!["A".to_string(), "B".to_string()];
            v.extend((1..=k - 2).map(|i| format!("C{i}")));
            v
        }
    }
}

/// `(|00> + |11>)/sqrt(2)` on A, B.
pub fn epr() -> PureState {
    PureState::max_entangled("A", "B", 2).expect("valid")
}

/// `(|00><00| + |11><11|)/2` on A, B.
pub fn classically_correlated() -> DensityOperator {
    let l = SubsystemLayout::new([("A", 2), ("B", 2)]).expect("valid");
    DensityOperator::diagonal(l, &[0.5, 0.0, 0.0, 0.5]).expect("valid")
}

/// `(|000> + |111>)/sqrt(2)` on A, B, R.
pub fn cc_pure() -> PureState {
    let l = SubsystemLayout::new([("A", 2), ("B", 2), ("R", 2)]).expect("valid");
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut v = CVector::zeros(8);
    v[0] = c(h, 0.0);
    v[7] = c(h, 0.0);
    PureState::new(l, v).expect("valid")
}

/// Maximally mixed A with B in `|0>`.
pub fn example1() -> DensityOperator {
    let l = SubsystemLayout::new([("A", 2), ("B", 2)]).expect("valid");
    DensityOperator::diagonal(l, &[0.5, 0.0, 0.5, 0.0]).expect("valid")
}

/// `m`-qubit GHZ state on [`default_labels`]`(m)`.
pub fn ghz(m: usize) -> Result<PureState> {
    if m < 2 {
        return Err(QError::InvalidArgument("ghz needs at least 2 parties".into()));
    }
    let labels = default_labels(m);
    let layout = SubsystemLayout::new(labels.into_iter().map(|l| (l, 2)))?;
    let n = layout.total_dim();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut v = CVector::zeros(n);
    v[0] = c(h, 0.0);
    v[n - 1] = c(h, 0.0);
    PureState::new(layout, v)
}

/// Haar-random pure state on [`default_labels`] with the given dims, drawn
/// from stream 0 of `seed`.
pub fn random_pure_state(dims: &[usize], seed: u64) -> Result<PureState> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(QError::InvalidArgument("dims must be positive".into()));
    }
    let labels = default_labels(dims.len());
    let layout = SubsystemLayout::new(labels.into_iter().zip(dims.iter().copied()))?;
    let mut rng = stream_rng(seed, 0);
    Ok(random_pure(layout, &mut rng))
}
