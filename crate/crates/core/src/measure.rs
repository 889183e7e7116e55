//! Coarse-grained measurements in a rotated basis.
//!
//! With `W` a unitary on the measured party of dimension `D` and a block size
//! `L` dividing `D`, outcome `k` projects onto `W^dagger Π_k W` where `Π_k`
//! spans computational indices `[kL, (k+1)L)`. The post-measurement party is
//! re-expressed in the `L`-dimensional block coordinates of `W` and labelled
//! [`POST_LABEL`].

use rand::Rng;

use crate::error::{QError, Result};
use crate::linalg::{c, CMatrix};
use crate::state::{PureState, QuantumState};

pub const POST_LABEL: &str = "A1";
/// Branches below this probability are never sampled.
pub const MIN_BRANCH_PROB: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct BlockMeasurement {
    pub outcome: usize,
    pub probability: f64,
    pub post: PureState,
}

fn check(psi: &PureState, party: &str, w: &CMatrix, block: usize) -> Result<usize> {
    let d = psi.layout().dim_of(party)?;
    if w.nrows() != d || w.ncols() != d {
        return Err(QError::DimensionMismatch(format!(
            "unitary is {}x{}, party `{party}` has dimension {d}",
            w.nrows(),
            w.ncols()
        )));
    }
    if block == 0 || d % block != 0 {
        return Err(QError::BlockSize { dim: d, block });
    }
    if party != POST_LABEL && psi.layout().contains(POST_LABEL) {
        return Err(QError::DuplicateLabel(POST_LABEL.into()));
    }
    Ok(d)
}

/// Born probabilities of all `D / L` outcomes.
pub fn block_probabilities(psi: &PureState, party: &str, w: &CMatrix, block: usize) -> Result<Vec<f64>> {
    let d = check(psi, party, w, block)?;
    let (layout, rotated) = psi.apply_local(party, w, None)?;
    let pos = layout.position(party).expect("checked");
    let stride = layout.strides()[pos];
    let mut probs = vec![0.0; d / block];
    for (idx, z) in rotated.iter().enumerate() {
        let digit = (idx / stride) % d;
        probs[digit / block] += z.norm_sqr();
    }
    Ok(probs)
}

/// Normalized post-measurement state of outcome `k` and its probability, or
/// `None` for a branch below [`MIN_BRANCH_PROB`].
pub fn block_project(
    psi: &PureState,
    party: &str,
    w: &CMatrix,
    block: usize,
    k: usize,
) -> Result<Option<(PureState, f64)>> {
    let d = check(psi, party, w, block)?;
    if k >= d / block {
        return Err(QError::InvalidArgument(format!("outcome {k} out of range")));
    }
    let rows = w.rows(k * block, block).into_owned();
    let (layout, v) = psi.apply_local(party, &rows, Some(POST_LABEL))?;
    let p = v.norm_squared();
    if p < MIN_BRANCH_PROB {
        return Ok(None);
    }
    let post = PureState::new(layout, v / c(p.sqrt(), 0.0))?;
    Ok(Some((post, p)))
}

/// Samples one outcome by the Born rule over branches with `p >= 1e-12`.
pub fn block_measure<R: Rng + ?Sized>(
    psi: &PureState,
    party: &str,
    w: &CMatrix,
    block: usize,
    rng: &mut R,
) -> Result<BlockMeasurement> {
    let probs = block_probabilities(psi, party, w, block)?;
    let k = sample_outcome(&probs, rng);
    let (post, probability) = block_project(psi, party, w, block, k)?
        .ok_or_else(|| QError::InvalidState("sampled a zero-probability branch".into()))?;
    Ok(BlockMeasurement {
        outcome: k,
        probability,
        post,
    })
}

pub(crate) fn sample_outcome<R: Rng + ?Sized>(probs: &[f64], rng: &mut R) -> usize {
    let total: f64 = probs.iter().filter(|&&p| p >= MIN_BRANCH_PROB).sum();
    let mut x = rng.random::<f64>() * total;
    let mut last = 0;
    for (k, &p) in probs.iter().enumerate() {
        if p < MIN_BRANCH_PROB {
            continue;
        }
        last = k;
        if x < p {
            return k;
        }
        x -= p;
    }
    last
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layout::SubsystemLayout;
    use crate::linalg::haar_unitary;
    use crate::random::random_pure;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn id2() -> CMatrix {
        CMatrix::identity(2, 2)
    }

    #[test]
    fn product_state_identity_basis() {
        let l = SubsystemLayout::new([("A", 2), ("B", 2)]).unwrap();
        let psi = PureState::basis(l, &[0, 0]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let m = block_measure(&psi, "A", &id2(), 1, &mut rng).unwrap();
        assert_eq!(m.outcome, 0);
        assert!((m.probability - 1.0).abs() < 1e-15);
        assert_eq!(m.post.layout().labels().collect::<Vec<_>>(), vec!["A1", "B"]);
        assert_eq!(m.post.layout().dims(), vec![1, 2]);
        assert_eq!(m.post.amplitudes()[0], c(1.0, 0.0));
    }

    #[test]
    fn full_block_is_no_measurement() {
        let psi = PureState::max_entangled("A", "B", 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let m = block_measure(&psi, "A", &id2(), 2, &mut rng).unwrap();
        assert_eq!(m.outcome, 0);
        assert!((m.probability - 1.0).abs() < 1e-15);
        assert_eq!(m.post.amplitudes(), psi.amplitudes());
    }

    #[test]
    fn epr_complete_measurement() {
        let psi = PureState::max_entangled("A", "B", 2).unwrap();
        let probs = block_probabilities(&psi, "A", &id2(), 1).unwrap();
        assert!((probs[0] - 0.5).abs() < 1e-15 && (probs[1] - 0.5).abs() < 1e-15);
        for k in 0..2 {
            let (post, p) = block_project(&psi, "A", &id2(), 1, k).unwrap().unwrap();
            assert!((p - 0.5).abs() < 1e-15);
            assert!((post.amplitudes()[k].norm() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn zero_branch_is_never_sampled() {
        let l = SubsystemLayout::new([("A", 2), ("B", 2)]).unwrap();
        let psi = PureState::basis(l, &[1, 0]).unwrap();
        assert!(block_project(&psi, "A", &id2(), 1, 0).unwrap().is_none());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            assert_eq!(block_measure(&psi, "A", &id2(), 1, &mut rng).unwrap().outcome, 1);
        }
    }

    #[test]
    fn probabilities_sum_to_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for (da, block) in [(4usize, 1usize), (4, 2), (6, 3), (8, 2)] {
            let l = SubsystemLayout::new([("B", 3), ("A", da), ("R", 2)]).unwrap();
            let psi = random_pure(l, &mut rng);
            let w = haar_unitary(da, &mut rng);
            let probs = block_probabilities(&psi, "A", &w, block).unwrap();
            assert_eq!(probs.len(), da / block);
            assert!((probs.iter().sum::<f64>() - 1.0).abs() < 1e-10);
            for (k, &p) in probs.iter().enumerate() {
                let (_, q) = block_project(&psi, "A", &w, block, k).unwrap().unwrap();
                assert!((p - q).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn rejects_non_divisor_blocks() {
        let psi = PureState::max_entangled("A", "B", 3).unwrap();
        let w = CMatrix::identity(3, 3);
        assert_eq!(
            block_probabilities(&psi, "A", &w, 2),
            Err(QError::BlockSize { dim: 3, block: 2 })
        );
    }
}
