use serde::{Deserialize, Serialize};

use crate::entropy::conditional_entropy;
use crate::error::{QError, Result};
use crate::state::{PureState, QuantumState};

use super::{canonical_abr, Roles};

/// Tolerance for integer rounding of entropic rate budgets.
const RATE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MergePlan {
    /// Number of copies `n`.
    pub copies: usize,
    /// Alice's residual dimension `L` after the measurement.
    pub block: usize,
    /// Outcome count `N = D / L`.
    pub outcomes: usize,
    /// Alice's measured dimension `D` (after any EPR boost).
    pub alice_dim: usize,
    /// EPR pairs invested before measuring.
    pub epr_boost: usize,
    /// Per-copy `S(A|B)` of the input.
    pub conditional_entropy: f64,
    pub slack_bits: f64,
    /// `log2 L`
    pub predicted_epr_bits: f64,
    /// `log2 N`
    pub predicted_cbits: f64,
    /// `-n S(A|B)`
    pub target_rate: f64,
    /// Set when no block size meets the rate budget and `L = 1` was used.
    pub below_budget: bool,
}

impl MergePlan {
    pub fn epr_net_bits(&self) -> f64 {
        self.predicted_epr_bits - self.epr_boost as f64
    }
}

/// State with `k` EPR pairs appended and the role groups extended by their
/// halves.
#[derive(Debug, Clone)]
pub struct BoostedState {
    pub state: PureState,
    pub alice: Vec<String>,
    pub bob: Vec<String>,
}

/// Appends `k` EPR pairs, Alice's halves labelled `A0.j` and Bob's `B0.j`.
pub fn epr_boost(psi: &PureState, roles: &Roles, k: usize) -> Result<BoostedState> {
    let mut state = psi.clone();
    let mut alice = roles.alice.clone();
    let mut bob = roles.bob.clone();
    for j in 0..k {
        let a = state.layout().fresh_label(&format!("A0.{j}"));
        let b = state.layout().fresh_label(&format!("B0.{j}"));
        state = state.tensor(&PureState::max_entangled(&a, &b, 2)?)?;
        alice.push(a);
        bob.push(b);
    }
    Ok(BoostedState { state, alice, bob })
}

fn smallest_prime_factor(d: usize) -> usize {
    if d < 2 {
        return 2;
    }
    (2..=d).find(|p| d.is_multiple_of(*p)).expect("d is its own factor")
}

/// Chooses the EPR boost and block size for `n` copies of `psi`.
///
/// For `S(A|B) > 0`, `ceil(n S(A|B)) + ceil(slack)` EPR pairs are invested.
/// `L` is the largest power of the smallest prime factor of Alice's local
/// dimension that divides `D` with `log2 L <= -n S'(A|B) - slack`, where
/// `S'` is the boosted conditional entropy.
pub fn plan_merge(psi: &PureState, roles: &Roles, n: usize, slack_bits: f64) -> Result<MergePlan> {
    if n == 0 {
        return Err(QError::InvalidArgument("need at least one copy".into()));
    }
    if !slack_bits.is_finite() || slack_bits < 0.0 {
        return Err(QError::InvalidArgument("slack must be a finite number >= 0".into()));
    }
    let base = canonical_abr(psi, roles)?;
    let s = conditional_entropy(&base, &["A"], &["B"])?;
    let d_a = base.layout().dim_of("A")?;
    let total = n as f64 * s;
    let boost = if s > RATE_TOL {
        ((total - RATE_TOL).ceil() + (slack_bits - RATE_TOL).ceil().max(0.0)) as usize
    } else {
        0
    };
    let alice_dim = d_a
        .checked_pow(n as u32)
        .and_then(|x| x.checked_mul(1usize.checked_shl(boost as u32)?))
        .ok_or(QError::DimensionCap {
            requested: usize::MAX,
            cap: usize::MAX,
        })?;
    let budget = -(total - boost as f64) - slack_bits;
    let p = smallest_prime_factor(d_a);
    let mut block = 1usize;
    while alice_dim % (block * p) == 0 && ((block * p) as f64).log2() <= budget + RATE_TOL {
        block *= p;
    }
    let below_budget = budget < -RATE_TOL;
    let outcomes = alice_dim / block;
    Ok(MergePlan {
        copies: n,
        block,
        outcomes,
        alice_dim,
        epr_boost: boost,
        conditional_entropy: s,
        slack_bits,
        predicted_epr_bits: (block as f64).log2(),
        predicted_cbits: (outcomes as f64).log2(),
        target_rate: 0.0 - total,
        below_budget,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;
    use crate::state::purify;

    #[test]
    fn boost_lowers_conditional_entropy_by_one_per_pair() {
        let psi = purify(&presets::example1(), "R").unwrap();
        let roles = Roles::default();
        let b0 = epr_boost(&psi, &roles, 0).unwrap();
        assert_eq!(b0.state, psi);
        let b1 = epr_boost(&psi, &roles, 1).unwrap();
        let s1 = conditional_entropy(&b1.state, &b1.alice, &b1.bob).unwrap();
        assert!(s1.abs() < 1e-9);

        let cc = presets::cc_pure();
        let b2 = epr_boost(&cc, &roles, 2).unwrap();
        let s2 = conditional_entropy(&b2.state, &b2.alice, &b2.bob).unwrap();
        assert!((s2 + 2.0).abs() < 1e-9);
        assert_eq!(b2.alice, vec!["A", "A0.0", "A0.1"]);
    }

    #[test]
    fn plan_for_epr_keeps_everything() {
        let p = plan_merge(&presets::epr(), &Roles::default(), 3, 0.0).unwrap();
        assert_eq!((p.epr_boost, p.block, p.outcomes, p.alice_dim), (0, 8, 1, 8));
        assert_eq!(p.predicted_cbits, 0.0);
        assert!(!p.below_budget);
    }

    #[test]
    fn plan_for_classically_correlated_is_rate_zero() {
        let p = plan_merge(&presets::cc_pure(), &Roles::default(), 2, 0.0).unwrap();
        assert_eq!((p.epr_boost, p.block, p.outcomes), (0, 1, 4));
        assert_eq!(p.predicted_cbits, 2.0);
    }

    #[test]
    fn plan_for_example1_boosts_once() {
        let psi = purify(&presets::example1(), "R").unwrap();
        let p = plan_merge(&psi, &Roles::default(), 1, 0.0).unwrap();
        assert_eq!((p.epr_boost, p.block, p.outcomes, p.alice_dim), (1, 1, 4, 4));
        assert_eq!(p.epr_net_bits(), -1.0);
    }

    #[test]
    fn plan_flags_an_unreachable_budget() {
        let p = plan_merge(&presets::cc_pure(), &Roles::default(), 1, 1.0).unwrap();
        assert!(p.below_budget);
        assert_eq!(p.block, 1);
    }

    #[test]
    fn plan_uses_prime_powers_of_the_local_dimension() {
        let psi = PureState::max_entangled("A", "B", 3).unwrap();
        let p = plan_merge(&psi, &Roles::default(), 2, 0.5).unwrap();
        // -n S(A|B) - slack = 2 log2 3 - 0.5 ~ 2.67 bits: L = 3 (9 would need 3.17).
        assert_eq!((p.block, p.outcomes), (3, 3));
    }

    #[test]
    fn plan_rejects_bad_inputs() {
        assert!(plan_merge(&presets::epr(), &Roles::default(), 0, 0.0).is_err());
        assert!(plan_merge(&presets::epr(), &Roles::default(), 1, -1.0).is_err());
        let roles = Roles {
            alice: vec!["X".into()],
            bob: vec!["B".into()],
        };
        assert!(plan_merge(&presets::epr(), &roles, 1, 0.0).is_err());
    }
}
