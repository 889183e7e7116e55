//! Von Neumann entropies (base 2) and the signed quantities built from them.

use std::collections::BTreeMap;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::error::{QError, Result};
use crate::layout::check_disjoint;
use crate::state::{DensityOperator, QuantumState};

/// `-Σ λ log2 λ` over clamped eigenvalues, with `0 log 0 = 0`.
pub fn von_neumann_entropy(rho: &DensityOperator) -> f64 {
    entropy_of_spectrum(&rho.eigenvalues())
}

pub fn entropy_of_spectrum(values: &[f64]) -> f64 {
    let h: f64 = values
        .iter()
        .filter(|&&l| l > 0.0)
        .map(|&l| -l * l.log2())
        .sum();
    h.max(0.0)
}

/// Entropy of the reduced state on `labels`; the empty set has entropy 0.
///
/// For a pure global state the smaller of the set and its complement is
/// diagonalised, since both have the same spectrum away from zero.
pub fn subset_entropy<Q: QuantumState, S: AsRef<str>>(state: &Q, labels: &[S]) -> Result<f64> {
    if labels.is_empty() {
        return Ok(0.0);
    }
    let layout = state.layout();
    let pos = layout.positions(labels)?;
    if state.is_pure() {
        let comp = layout.complement(&pos);
        if comp.is_empty() {
            return Ok(0.0);
        }
        let d_set: usize = pos.iter().map(|&i| layout.parts()[i].dim).product();
        let d_comp: usize = comp.iter().map(|&i| layout.parts()[i].dim).product();
        if d_comp < d_set {
            let names: Vec<&str> = comp.iter().map(|&i| layout.parts()[i].label.as_str()).collect();
            return Ok(von_neumann_entropy(&state.reduced(&names)?));
        }
    }
    Ok(von_neumann_entropy(&state.reduced(labels)?))
}

fn union<S: AsRef<str>, T: AsRef<str>>(a: &[S], b: &[T]) -> Vec<String> {
    a.iter()
        .map(|x| x.as_ref().to_string())
        .chain(b.iter().map(|x| x.as_ref().to_string()))
        .collect()
}

/// `S(a|b) = S(ab) - S(b)`; may be negative.
pub fn conditional_entropy<Q: QuantumState, S: AsRef<str>, T: AsRef<str>>(
    state: &Q,
    a: &[S],
    b: &[T],
) -> Result<f64> {
    check_disjoint(a, b)?;
    Ok(subset_entropy(state, &union(a, b))? - subset_entropy(state, b)?)
}

/// `I(a:b) = S(a) + S(b) - S(ab)`.
pub fn mutual_information<Q: QuantumState, S: AsRef<str>, T: AsRef<str>>(
    state: &Q,
    a: &[S],
    b: &[T],
) -> Result<f64> {
    check_disjoint(a, b)?;
    Ok(subset_entropy(state, a)? + subset_entropy(state, b)? - subset_entropy(state, &union(a, b))?)
}

/// Signed coherent information `I(a>b) = -S(a|b)`.
pub fn coherent_information<Q: QuantumState, S: AsRef<str>, T: AsRef<str>>(
    state: &Q,
    a: &[S],
    b: &[T],
) -> Result<f64> {
    Ok(-conditional_entropy(state, a, b)?)
}

/// The older clamped form `max{S(b) - S(ab), 0}`.
pub fn coherent_information_clamped<Q: QuantumState, S: AsRef<str>, T: AsRef<str>>(
    state: &Q,
    a: &[S],
    b: &[T],
) -> Result<f64> {
    Ok(coherent_information(state, a, b)?.max(0.0))
}

/// `S(a|b) - S(a|bc)`, nonnegative by strong subadditivity.
pub fn ssa_margin<Q: QuantumState, S: AsRef<str>, T: AsRef<str>, U: AsRef<str>>(
    state: &Q,
    a: &[S],
    b: &[T],
    c: &[U],
) -> Result<f64> {
    if a.is_empty() || b.is_empty() || c.is_empty() {
        return Err(QError::EmptySelection);
    }
    check_disjoint(a, b)?;
    check_disjoint(a, c)?;
    check_disjoint(b, c)?;
    let bc = union(b, c);
    Ok(conditional_entropy(state, a, b)? - conditional_entropy(state, a, &bc)?)
}

/// Memoized subset entropies of one state, keyed by the subset in layout order.
pub struct EntropyCalc<'a, Q: QuantumState> {
    state: &'a Q,
    cache: Mutex<BTreeMap<Vec<String>, f64>>,
}

impl<'a, Q: QuantumState> EntropyCalc<'a, Q> {
    pub fn new(state: &'a Q) -> Self {
        Self {
            state,
            cache: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn state(&self) -> &Q {
        self.state
    }

    fn key<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<String>> {
        let layout = self.state.layout();
        let mut pos = layout.positions(labels)?;
        pos.sort_unstable();
        Ok(pos.iter().map(|&i| layout.parts()[i].label.clone()).collect())
    }

    pub fn entropy<S: AsRef<str>>(&self, labels: &[S]) -> Result<f64> {
        let key = self.key(labels)?;
        if let Some(&v) = self.cache.lock().expect("poisoned").get(&key) {
            return Ok(v);
        }
        let v = subset_entropy(self.state, &key)?;
        self.cache.lock().expect("poisoned").insert(key, v);
        Ok(v)
    }

    pub fn conditional<S: AsRef<str>, T: AsRef<str>>(&self, a: &[S], b: &[T]) -> Result<f64> {
        check_disjoint(a, b)?;
        Ok(self.entropy(&union(a, b))? - self.entropy(b)?)
    }

    pub fn mutual<S: AsRef<str>, T: AsRef<str>>(&self, a: &[S], b: &[T]) -> Result<f64> {
        check_disjoint(a, b)?;
        Ok(self.entropy(a)? + self.entropy(b)? - self.entropy(&union(a, b))?)
    }

    pub fn coherent<S: AsRef<str>, T: AsRef<str>>(&self, a: &[S], b: &[T]) -> Result<f64> {
        Ok(-self.conditional(a, b)?)
    }

    pub fn cached_subsets(&self) -> usize {
        self.cache.lock().expect("poisoned").len()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubsetEntropy {
    pub subset: Vec<String>,
    pub bits: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairQuantity {
    pub a: String,
    pub b: String,
    pub conditional_entropy: f64,
    pub mutual_information: f64,
    pub coherent_information: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyReport {
    pub labels: Vec<String>,
    pub entropies: Vec<SubsetEntropy>,
    pub pairs: Vec<PairQuantity>,
}

impl EntropyReport {
    /// Entropies of every non-empty subset of at most `max_size` labels (in
    /// binary-counting order), plus the pairwise quantities of single labels.
    pub fn build<Q: QuantumState>(state: &Q, max_size: usize) -> Result<Self> {
        let labels: Vec<String> = state.layout().labels().map(str::to_string).collect();
        let m = labels.len();
        if m > 20 {
            return Err(QError::InvalidArgument(format!("{m} subsystems is too many to enumerate")));
        }
        let calc = EntropyCalc::new(state);
        let mut entropies = Vec::new();
        for mask in 1usize..(1 << m) {
            if mask.count_ones() as usize > max_size {
                continue;
            }
            let subset: Vec<String> = (0..m)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| labels[i].clone())
                .collect();
            let bits = calc.entropy(&subset)?;
            let bound = (state.layout().dim_of_set(&subset)? as f64).log2();
            debug_assert!(bits >= -1e-9 && bits <= bound + 1e-9);
            entropies.push(SubsetEntropy { subset, bits });
        }
        let mut pairs = Vec::new();
        for a in &labels {
            for b in &labels {
                if a == b {
                    continue;
                }
                let (sa, sb) = (std::slice::from_ref(a), std::slice::from_ref(b));
                pairs.push(PairQuantity {
                    a: a.clone(),
                    b: b.clone(),
                    conditional_entropy: calc.conditional(sa, sb)?,
                    mutual_information: calc.mutual(sa, sb)?,
                    coherent_information: calc.coherent(sa, sb)?,
                });
            }
        }
        Ok(Self {
            labels,
            entropies,
            pairs,
        })
    }
}
