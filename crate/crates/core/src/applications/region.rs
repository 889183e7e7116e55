use serde::{Deserialize, Serialize};

use crate::entropy::EntropyCalc;
use crate::error::{QError, Result};
use crate::layout::check_disjoint;
use crate::state::QuantumState;

pub const MEMBERSHIP_TOL: f64 = 1e-9;
const MAX_PARTIES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegionKind {
    /// Constraints are lower bounds `R_T >= bound`.
    Compression,
    /// Constraints are upper bounds `R_T <= bound`.
    MultipleAccess,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateConstraint {
    pub subset: Vec<String>,
    pub bound: f64,
}

/// Half-space description of a rate region, one constraint per non-empty
/// subset of parties in binary-counting order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateRegion {
    pub kind: RegionKind,
    pub parties: Vec<String>,
    pub constraints: Vec<RateConstraint>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Membership {
    pub contained: bool,
    pub violated: Vec<Vec<String>>,
}

fn subset_of(parties: &[String], mask: usize) -> Vec<String> {
    (0..parties.len())
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| parties[i].clone())
        .collect()
}

/// Distributed compression: `R_T >= S(T|T̄) = S(all) - S(T̄)` for every
/// non-empty subset `T` of the state's subsystems.
pub fn compression_region<Q: QuantumState>(state: &Q) -> Result<RateRegion> {
    let parties: Vec<String> = state.layout().labels().map(str::to_string).collect();
    let m = parties.len();
    if m < 2 {
        return Err(QError::InvalidArgument("need at least two parties".into()));
    }
    if m > MAX_PARTIES {
        return Err(QError::DimensionCap {
            requested: m,
            cap: MAX_PARTIES,
        });
    }
    let calc = EntropyCalc::new(state);
    let full = calc.entropy(&parties)?;
    let all = (1usize << m) - 1;
    let constraints = (1..=all)
        .map(|mask| {
            let rest = subset_of(&parties, all & !mask);
            Ok(RateConstraint {
                subset: subset_of(&parties, mask),
                bound: full - calc.entropy(&rest)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RateRegion {
        kind: RegionKind::Compression,
        parties,
        constraints,
    })
}

/// Multiple-access rates for senders `a`, `b` and decoder `c`:
/// `R_A <= I(A>CB)`, `R_B <= I(B>CA)`, `R_A + R_B <= I(AB>C)`, all signed.
pub fn mac_region<Q: QuantumState, S: AsRef<str>>(state: &Q, a: &[S], b: &[S], c: &[S]) -> Result<RateRegion> {
    if a.is_empty() || b.is_empty() || c.is_empty() {
        return Err(QError::EmptySelection);
    }
    check_disjoint(a, b)?;
    check_disjoint(a, c)?;
    check_disjoint(b, c)?;
    let own = |x: &[S]| x.iter().map(|s| s.as_ref().to_string()).collect::<Vec<_>>();
    let (a, b, c) = (own(a), own(b), own(c));
    let calc = EntropyCalc::new(state);
    let cb: Vec<String> = c.iter().chain(&b).cloned().collect();
    let ca: Vec<String> = c.iter().chain(&a).cloned().collect();
    let ab: Vec<String> = a.iter().chain(&b).cloned().collect();
    let name = |x: &[String]| x.join("+");
    let (pa, pb) = (name(&a), name(&b));
    Ok(RateRegion {
        kind: RegionKind::MultipleAccess,
        parties: vec![pa.clone(), pb.clone()],
        constraints: vec![
            RateConstraint {
                subset: vec![pa.clone()],
                bound: calc.coherent(&a, &cb)?,
            },
            RateConstraint {
                subset: vec![pb.clone()],
                bound: calc.coherent(&b, &ca)?,
            },
            RateConstraint {
                subset: vec![pa, pb],
                bound: calc.coherent(&ab, &c)?,
            },
        ],
    })
}

impl RateRegion {
    pub fn bound(&self, subset: &[&str]) -> Option<f64> {
        self.constraints
            .iter()
            .find(|c| c.subset.len() == subset.len() && subset.iter().all(|s| c.subset.iter().any(|x| x == s)))
            .map(|c| c.bound)
    }

    /// Checks every constraint with [`MEMBERSHIP_TOL`] slack.
    pub fn contains(&self, rates: &[f64]) -> Result<Membership> {
        if rates.len() != self.parties.len() {
            return Err(QError::DimensionMismatch(format!(
                "{} rates for {} parties",
                rates.len(),
                self.parties.len()
            )));
        }
        let violated: Vec<Vec<String>> = self
            .constraints
            .iter()
            .filter(|c| {
                let sum: f64 = c
                    .subset
                    .iter()
                    .map(|p| rates[self.parties.iter().position(|q| q == p).expect("own party")])
                    .sum();
                match self.kind {
                    RegionKind::Compression => sum < c.bound - MEMBERSHIP_TOL,
                    RegionKind::MultipleAccess => sum > c.bound + MEMBERSHIP_TOL,
                }
            })
            .map(|c| c.subset.clone())
            .collect();
        Ok(Membership {
            contained: violated.is_empty(),
            violated,
        })
    }

    /// The two corners `(S(A|B), S(B))` and `(S(A), S(B|A))` of a two-party
    /// compression region.
    pub fn corner_points(&self) -> Result<[(f64, f64); 2]> {
        if self.kind != RegionKind::Compression || self.parties.len() != 2 {
            return Err(QError::InvalidArgument("corner points need a two-party compression region".into()));
        }
        let (a, b) = (self.parties[0].as_str(), self.parties[1].as_str());
        let s_a_given_b = self.bound(&[a]).expect("present");
        let s_b_given_a = self.bound(&[b]).expect("present");
        let s_ab = self.bound(&[a, b]).expect("present");
        Ok([(s_a_given_b, s_ab - s_a_given_b), (s_ab - s_b_given_a, s_b_given_a)])
    }
}
