use serde::{Deserialize, Serialize};

use crate::entropy::EntropyCalc;
use crate::error::{QError, Result};
use crate::layout::check_disjoint;
use crate::state::{PureState, QuantumState};

pub const MAX_HELPERS: usize = 12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CutValue {
    /// Helpers grouped with Alice; the rest go with Bob.
    pub with_alice: Vec<String>,
    pub alice_side: f64,
    pub bob_side: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EoAResult {
    pub value: f64,
    pub argmin: Vec<String>,
    pub cuts: Vec<CutValue>,
}

/// Entanglement of assistance as the minimum over helper partitions `T` of
/// `min{S(A T), S(B T̄)}`. Every label outside `alice` and `bob` is a helper.
/// Partitions are visited in binary-counting order over the helpers (layout
/// order, first helper = lowest bit) and ties keep the first minimum.
pub fn eoa<S: AsRef<str>>(psi: &PureState, alice: &[S], bob: &[S]) -> Result<EoAResult> {
    if alice.is_empty() || bob.is_empty() {
        return Err(QError::EmptySelection);
    }
    check_disjoint(alice, bob)?;
    let layout = psi.layout();
    layout.positions(alice)?;
    layout.positions(bob)?;
    let helpers: Vec<String> = layout
        .labels()
        .filter(|l| !alice.iter().any(|a| a.as_ref() == *l) && !bob.iter().any(|b| b.as_ref() == *l))
        .map(str::to_string)
        .collect();
    if helpers.len() > MAX_HELPERS {
        return Err(QError::DimensionCap {
            requested: helpers.len(),
            cap: MAX_HELPERS,
        });
    }
    let calc = EntropyCalc::new(psi);
    let mut cuts = Vec::with_capacity(1 << helpers.len());
    let mut best = (0usize, f64::INFINITY);
    for mask in 0usize..(1 << helpers.len()) {
        let mut a_side: Vec<String> = alice.iter().map(|s| s.as_ref().to_string()).collect();
        let mut b_side: Vec<String> = bob.iter().map(|s| s.as_ref().to_string()).collect();
        let mut with_alice = Vec::new();
        for (i, h) in helpers.iter().enumerate() {
            if mask >> i & 1 == 1 {
                a_side.push(h.clone());
                with_alice.push(h.clone());
            } else {
                b_side.push(h.clone());
            }
        }
        let alice_side = calc.entropy(&a_side)?;
        let bob_side = calc.entropy(&b_side)?;
        let value = alice_side.min(bob_side);
        if value < best.1 {
            best = (cuts.len(), value);
        }
        cuts.push(CutValue {
            with_alice,
            alice_side,
            bob_side,
            value,
        });
    }
    let b = best.0;
    Ok(EoAResult {
        value: cuts[b].value,
        argmin: cuts[b].with_alice.clone(),
        cuts,
    })
}
