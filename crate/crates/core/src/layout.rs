//! Named subsystems and the composite basis-index convention.
//!
//! A composite basis index is lexicographic in the listed subsystems, with the
//! first subsystem most significant: for dims `[d0, d1, d2]` the index of
//! `|i0 i1 i2>` is `(i0 * d1 + i1) * d2 + i2`.

use serde::{Deserialize, Serialize};

use crate::error::{QError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subsystem {
    pub label: String,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Subsystem>", into = "Vec<Subsystem>")]
pub struct SubsystemLayout {
    parts: Vec<Subsystem>,
}

impl TryFrom<Vec<Subsystem>> for SubsystemLayout {
    type Error = QError;

    fn try_from(parts: Vec<Subsystem>) -> Result<Self> {
        for (i, p) in parts.iter().enumerate() {
            if p.label.is_empty() {
                return Err(QError::InvalidLabel(p.label.clone()));
            }
            if p.dim == 0 {
                return Err(QError::InvalidArgument(format!(
                    "subsystem `{}` has dimension 0",
                    p.label
                )));
            }
            if parts[..i].iter().any(|q| q.label == p.label) {
                return Err(QError::DuplicateLabel(p.label.clone()));
            }
        }
        Ok(Self { parts })
    }
}

impl From<SubsystemLayout> for Vec<Subsystem> {
    fn from(layout: SubsystemLayout) -> Self {
        layout.parts
    }
}

impl SubsystemLayout {
    pub fn new<S: Into<String>>(parts: impl IntoIterator<Item = (S, usize)>) -> Result<Self> {
        let parts = parts
            .into_iter()
            .map(|(label, dim)| Subsystem {
                label: label.into(),
                dim,
            })
            .collect::<Vec<_>>();
        Self::try_from(parts)
    }

    /// Layout with no subsystems (total dimension 1).
    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[Subsystem] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.parts.iter().map(|p| p.label.as_str())
    }

    pub fn dims(&self) -> Vec<usize> {
        self.parts.iter().map(|p| p.dim).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.parts.iter().map(|p| p.dim).product()
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.parts.iter().position(|p| p.label == label)
    }

    pub fn contains(&self, label: &str) -> bool {
        self.position(label).is_some()
    }

    pub fn dim_of(&self, label: &str) -> Result<usize> {
        self.position(label)
            .map(|i| self.parts[i].dim)
            .ok_or_else(|| QError::UnknownLabel(label.to_string()))
    }

    /// Product of the dimensions of the given labels.
    pub fn dim_of_set<S: AsRef<str>>(&self, labels: &[S]) -> Result<usize> {
        labels
            .iter()
            .try_fold(1usize, |acc, l| Ok(acc * self.dim_of(l.as_ref())?))
    }

    /// Positions of `labels` in this layout, rejecting unknown or repeated labels.
    pub fn positions<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<usize>> {
        let mut out: Vec<usize> = Vec::with_capacity(labels.len());
        for l in labels {
            let l = l.as_ref();
            let p = self
                .position(l)
                .ok_or_else(|| QError::UnknownLabel(l.to_string()))?;
            if out.contains(&p) {
                return Err(QError::DuplicateLabel(l.to_string()));
            }
            out.push(p);
        }
        Ok(out)
    }

    /// Row-major strides under the first-most-significant convention.
    pub fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1usize; self.parts.len()];
        for i in (0..self.parts.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * self.parts[i + 1].dim;
        }
        strides
    }

    /// Layout formed by `self` followed by `other`.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        let mut parts = self.parts.clone();
        parts.extend(other.parts.iter().cloned());
        Self::try_from(parts)
    }

    /// Sub-layout of the selected positions, in the order given.
    pub fn select(&self, positions: &[usize]) -> Self {
        Self {
            parts: positions.iter().map(|&i| self.parts[i].clone()).collect(),
        }
    }

    pub fn relabel(&self, from: &str, to: &str) -> Result<Self> {
        let mut parts = self.parts.clone();
        let i = self
            .position(from)
            .ok_or_else(|| QError::UnknownLabel(from.to_string()))?;
        parts[i].label = to.to_string();
        Self::try_from(parts)
    }

    pub fn with_dim(&self, label: &str, dim: usize) -> Result<Self> {
        let mut parts = self.parts.clone();
        let i = self
            .position(label)
            .ok_or_else(|| QError::UnknownLabel(label.to_string()))?;
        parts[i].dim = dim;
        Self::try_from(parts)
    }

    /// Offsets of every basis index of the selected positions (in their given
    /// order) within the full composite index.
    pub(crate) fn offsets(&self, positions: &[usize]) -> Vec<usize> {
        let strides = self.strides();
        let mut offs = vec![0usize];
        for &p in positions {
            let d = self.parts[p].dim;
            let s = strides[p];
            let mut next = Vec::with_capacity(offs.len() * d);
            for &o in &offs {
                for i in 0..d {
                    next.push(o + i * s);
                }
            }
            offs = next;
        }
        offs
    }

    /// Positions not in `positions`, in layout order.
    pub(crate) fn complement(&self, positions: &[usize]) -> Vec<usize> {
        (0..self.parts.len())
            .filter(|i| !positions.contains(i))
            .collect()
    }

    /// A label not present in the layout, derived from `base`.
    pub fn fresh_label(&self, base: &str) -> String {
        if !self.contains(base) {
            return base.to_string();
        }
        (0..)
            .map(|i| format!("{base}#{i}"))
            .find(|l| !self.contains(l))
            .expect("unbounded search")
    }
}

pub(crate) fn check_disjoint<S: AsRef<str>, T: AsRef<str>>(a: &[S], b: &[T]) -> Result<()> {
    for x in a {
        if b.iter().any(|y| y.as_ref() == x.as_ref()) {
            return Err(QError::OverlappingSets(x.as_ref().to_string()));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_zero_dims() {
        assert_eq!(
            SubsystemLayout::new([("A", 2), ("A", 2)]),
            Err(QError::DuplicateLabel("A".into()))
        );
        assert!(SubsystemLayout::new([("A", 0)]).is_err());
        assert!(SubsystemLayout::new([("", 2)]).is_err());
    }

    #[test]
    fn strides_first_label_most_significant() {
        let l = SubsystemLayout::new([("A", 2), ("B", 3), ("C", 4)]).unwrap();
        assert_eq!(l.strides(), vec![12, 4, 1]);
        assert_eq!(l.total_dim(), 24);
        assert_eq!(l.offsets(&[1]), vec![0, 4, 8]);
        assert_eq!(l.offsets(&[2, 0]), vec![0, 12, 1, 13, 2, 14, 3, 15]);
    }

    #[test]
    fn fresh_label_avoids_collisions() {
        let l = SubsystemLayout::new([("R", 2), ("R#0", 2)]).unwrap();
        assert_eq!(l.fresh_label("R"), "R#1");
        assert_eq!(l.fresh_label("E"), "E");
    }
}
