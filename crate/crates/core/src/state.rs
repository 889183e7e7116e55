//! Pure states and density operators over a [`SubsystemLayout`].

use crate::error::{QError, Result};
use crate::layout::SubsystemLayout;
use crate::linalg::{
    c, clamp_psd, hermitian_eigen, hermitian_eigenvalues, hermiticity_residual, kron, kron_vec,
    trace, CMatrix, CVector, C64,
};

pub const NORM_TOL: f64 = 1e-10;
pub const TRACE_TOL: f64 = 1e-10;
pub const HERMITIAN_TOL: f64 = 1e-10;
pub const MIN_EIGENVALUE: f64 = -1e-9;
/// Eigenvalues above this count toward the rank of a density operator.
pub const RANK_TOL: f64 = 1e-12;

/// Anything that can be reduced to a density operator on a subset of labels.
pub trait QuantumState {
    fn layout(&self) -> &SubsystemLayout;

    /// Reduced operator on `keep`, returned in layout order.
    fn reduced<S: AsRef<str>>(&self, keep: &[S]) -> Result<DensityOperator>;

    /// Whether the global state is known to be pure.
    fn is_pure(&self) -> bool {
        false
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    layout: SubsystemLayout,
    amplitudes: CVector,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    layout: SubsystemLayout,
    matrix: CMatrix,
}

fn sorted_positions<S: AsRef<str>>(layout: &SubsystemLayout, keep: &[S]) -> Result<Vec<usize>> {
    if keep.is_empty() {
        return Err(QError::EmptySelection);
    }
    let mut pos = layout.positions(keep)?;
    pos.sort_unstable();
    Ok(pos)
}

fn permutation_positions<S: AsRef<str>>(
    layout: &SubsystemLayout,
    order: &[S],
) -> Result<Vec<usize>> {
    if order.len() != layout.len() {
        return Err(QError::NotAPermutation);
    }
    layout.positions(order).map_err(|e| match e {
        QError::UnknownLabel(_) | QError::DuplicateLabel(_) => QError::NotAPermutation,
        other => other,
    })
}

/// Applies `op` (rows = new dim, cols = old dim) to subsystem `pos` of a vector.
pub(crate) fn apply_local_vec(
    layout: &SubsystemLayout,
    v: &CVector,
    pos: usize,
    op: &CMatrix,
) -> CVector {
    let dims = layout.dims();
    let outer: usize = dims[..pos].iter().product();
    let inner: usize = dims[pos + 1..].iter().product();
    let d_in = dims[pos];
    let d_out = op.nrows();
    debug_assert_eq!(op.ncols(), d_in);
    let mut out = CVector::zeros(outer * d_out * inner);
    for o in 0..outer {
        for ci in 0..d_in {
            let src_base = (o * d_in + ci) * inner;
            for r in 0..d_out {
                let m = op[(r, ci)];
                if m == C64::new(0.0, 0.0) {
                    continue;
                }
                let dst_base = (o * d_out + r) * inner;
                for i in 0..inner {
                    out[dst_base + i] += m * v[src_base + i];
                }
            }
        }
    }
    out
}

impl PureState {
    /// Builds a pure state, requiring unit norm within [`NORM_TOL`].
    pub fn new(layout: SubsystemLayout, amplitudes: CVector) -> Result<Self> {
        if amplitudes.len() != layout.total_dim() {
            return Err(QError::DimensionMismatch(format!(
                "{} amplitudes for total dimension {}",
                amplitudes.len(),
                layout.total_dim()
            )));
        }
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(QError::InvalidState(format!("norm {norm} is not 1")));
        }
        Ok(Self { layout, amplitudes })
    }

    /// Builds a pure state from an unnormalized nonzero vector.
    pub fn normalized(layout: SubsystemLayout, amplitudes: CVector) -> Result<Self> {
        let norm = amplitudes.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(QError::InvalidState("zero or non-finite vector".into()));
        }
        Self::new(layout, amplitudes / c(norm, 0.0))
    }

    /// Computational basis state with the given per-subsystem digits.
    pub fn basis(layout: SubsystemLayout, digits: &[usize]) -> Result<Self> {
        if digits.len() != layout.len() {
            return Err(QError::DimensionMismatch("digit count".into()));
        }
        let strides = layout.strides();
        let mut idx = 0;
        for ((d, s), part) in digits.iter().zip(&strides).zip(layout.parts()) {
            if *d >= part.dim {
                return Err(QError::InvalidArgument(format!(
                    "digit {d} out of range for `{}`",
                    part.label
                )));
            }
            idx += d * s;
        }
        let mut amps = CVector::zeros(layout.total_dim());
        amps[idx] = c(1.0, 0.0);
        Self::new(layout, amps)
    }

    /// Maximally entangled state `sum_i |ii> / sqrt(d)` on two labels.
    pub fn max_entangled(a: &str, b: &str, dim: usize) -> Result<Self> {
        let layout = SubsystemLayout::new([(a, dim), (b, dim)])?;
        let amp = c((1.0 / dim as f64).sqrt(), 0.0);
        let mut amps = CVector::zeros(dim * dim);
        for i in 0..dim {
            amps[i * dim + i] = amp;
        }
        Self::new(layout, amps)
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let layout = self.layout.concat(&other.layout)?;
        Ok(Self {
            layout,
            amplitudes: kron_vec(&self.amplitudes, &other.amplitudes),
        })
    }

    /// `n` copies with label `X` of copy `i` renamed to `X.i`.
    pub fn copies(&self, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(QError::InvalidArgument("zero copies".into()));
        }
        let mut acc: Option<Self> = None;
        for i in 0..n {
            let mut copy = self.clone();
            for label in self.layout.labels() {
                copy = copy.relabel(label, &format!("{label}.{i}"))?;
            }
            acc = Some(match acc {
                None => copy,
                Some(a) => a.tensor(&copy)?,
            });
        }
        Ok(acc.expect("n >= 1"))
    }

    pub fn relabel(&self, from: &str, to: &str) -> Result<Self> {
        Ok(Self {
            layout: self.layout.relabel(from, to)?,
            amplitudes: self.amplitudes.clone(),
        })
    }

    pub fn permute<S: AsRef<str>>(&self, order: &[S]) -> Result<Self> {
        let pos = permutation_positions(&self.layout, order)?;
        let offs = self.layout.offsets(&pos);
        let amplitudes = CVector::from_iterator(offs.len(), offs.iter().map(|&o| self.amplitudes[o]));
        Ok(Self {
            layout: self.layout.select(&pos),
            amplitudes,
        })
    }

    /// Moves `labels` to the front and fuses them into one subsystem `new_label`.
    pub fn fuse<S: AsRef<str>>(&self, labels: &[S], new_label: &str) -> Result<Self> {
        if labels.is_empty() {
            return Err(QError::EmptySelection);
        }
        let pos = self.layout.positions(labels)?;
        let mut order = pos.clone();
        order.extend(self.layout.complement(&pos));
        let names: Vec<&str> = order
            .iter()
            .map(|&i| self.layout.parts()[i].label.as_str())
            .collect();
        let permuted = self.permute(&names)?;
        let fused_dim = self.layout.dim_of_set(labels)?;
        let rest = permuted.layout.parts()[labels.len()..]
            .iter()
            .map(|p| (p.label.clone(), p.dim));
        let layout =
            SubsystemLayout::new(std::iter::once((new_label.to_string(), fused_dim)).chain(rest))?;
        Ok(Self {
            layout,
            amplitudes: permuted.amplitudes,
        })
    }

    /// Applies a local operator (rows = output dim) to one subsystem and
    /// returns the unnormalized vector together with the new layout.
    pub fn apply_local(
        &self,
        label: &str,
        op: &CMatrix,
        new_label: Option<&str>,
    ) -> Result<(SubsystemLayout, CVector)> {
        let pos = self
            .layout
            .position(label)
            .ok_or_else(|| QError::UnknownLabel(label.into()))?;
        if op.ncols() != self.layout.parts()[pos].dim {
            return Err(QError::DimensionMismatch(format!(
                "operator has {} columns, `{label}` has dimension {}",
                op.ncols(),
                self.layout.parts()[pos].dim
            )));
        }
        let v = apply_local_vec(&self.layout, &self.amplitudes, pos, op);
        let mut layout = self.layout.with_dim(label, op.nrows())?;
        if let Some(nl) = new_label {
            layout = layout.relabel(label, nl)?;
        }
        Ok((layout, v))
    }

    /// Applies a local isometry; the result stays normalized.
    pub fn apply_isometry(&self, label: &str, op: &CMatrix, new_label: Option<&str>) -> Result<Self> {
        let (layout, v) = self.apply_local(label, op, new_label)?;
        Self::new(layout, v)
    }

    pub fn inner(&self, other: &Self) -> Result<C64> {
        if self.layout != other.layout {
            return Err(QError::DimensionMismatch("inner product over different layouts".into()));
        }
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }

    pub fn to_density(&self) -> DensityOperator {
        DensityOperator {
            layout: self.layout.clone(),
            matrix: &self.amplitudes * self.amplitudes.adjoint(),
        }
    }

    /// Amplitudes reshaped into a `(rows labels) x (remaining labels)` matrix,
    /// both sides in the given/layout order.
    pub fn split_matrix<S: AsRef<str>>(&self, rows: &[S]) -> Result<(CMatrix, Vec<usize>, Vec<usize>)> {
        let rpos = self.layout.positions(rows)?;
        let cpos = self.layout.complement(&rpos);
        let ro = self.layout.offsets(&rpos);
        let co = self.layout.offsets(&cpos);
        let m = CMatrix::from_fn(ro.len(), co.len(), |i, j| self.amplitudes[ro[i] + co[j]]);
        Ok((m, rpos, cpos))
    }
}

impl QuantumState for PureState {
    fn layout(&self) -> &SubsystemLayout {
        &self.layout
    }

    fn reduced<S: AsRef<str>>(&self, keep: &[S]) -> Result<DensityOperator> {
        let pos = sorted_positions(&self.layout, keep)?;
        let names: Vec<&str> = pos
            .iter()
            .map(|&i| self.layout.parts()[i].label.as_str())
            .collect();
        let (m, _, _) = self.split_matrix(&names)?;
        Ok(DensityOperator {
            layout: self.layout.select(&pos),
            matrix: &m * m.adjoint(),
        })
    }

    fn is_pure(&self) -> bool {
        true
    }
}

impl DensityOperator {
    /// Builds a density operator, checking Hermiticity, unit trace and
    /// positivity within the crate tolerances.
    pub fn new(layout: SubsystemLayout, matrix: CMatrix) -> Result<Self> {
        let n = layout.total_dim();
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(QError::DimensionMismatch(format!(
                "{}x{} matrix for total dimension {n}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let herm = hermiticity_residual(&matrix);
        if herm > HERMITIAN_TOL {
            return Err(QError::InvalidState(format!("not Hermitian (residual {herm:.3e})")));
        }
        let tr = trace(&matrix);
        if (tr - c(1.0, 0.0)).norm() > TRACE_TOL {
            return Err(QError::InvalidState(format!("trace {tr} is not 1")));
        }
        let min = hermitian_eigenvalues(&matrix).last().copied().unwrap_or(0.0);
        if min < MIN_EIGENVALUE {
            return Err(QError::InvalidState(format!("negative eigenvalue {min:.3e}")));
        }
        Ok(Self { layout, matrix })
    }

    pub(crate) fn from_parts_unchecked(layout: SubsystemLayout, matrix: CMatrix) -> Self {
        Self { layout, matrix }
    }

    pub fn maximally_mixed(layout: SubsystemLayout) -> Self {
        let n = layout.total_dim();
        Self {
            layout,
            matrix: CMatrix::identity(n, n) * c(1.0 / n as f64, 0.0),
        }
    }

    /// Diagonal (classical) state from a probability vector.
    pub fn diagonal(layout: SubsystemLayout, probs: &[f64]) -> Result<Self> {
        let d = CVector::from_iterator(probs.len(), probs.iter().map(|&p| c(p, 0.0)));
        Self::new(layout, CMatrix::from_diagonal(&d))
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Eigenvalues sorted descending, with small negative drift clamped to 0.
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.matrix)
            .into_iter()
            .map(clamp_psd)
            .collect()
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let layout = self.layout.concat(&other.layout)?;
        Ok(Self {
            layout,
            matrix: kron(&self.matrix, &other.matrix),
        })
    }

    pub fn relabel(&self, from: &str, to: &str) -> Result<Self> {
        Ok(Self {
            layout: self.layout.relabel(from, to)?,
            matrix: self.matrix.clone(),
        })
    }

    /// Partial trace keeping `keep` (returned in layout order).
    pub fn partial_trace<S: AsRef<str>>(&self, keep: &[S]) -> Result<Self> {
        let pos = sorted_positions(&self.layout, keep)?;
        let traced = self.layout.complement(&pos);
        let ko = self.layout.offsets(&pos);
        let to = self.layout.offsets(&traced);
        let m = CMatrix::from_fn(ko.len(), ko.len(), |i, j| {
            to.iter()
                .map(|&t| self.matrix[(ko[i] + t, ko[j] + t)])
                .sum::<C64>()
        });
        Ok(Self {
            layout: self.layout.select(&pos),
            matrix: m,
        })
    }

    pub fn permute<S: AsRef<str>>(&self, order: &[S]) -> Result<Self> {
        let pos = permutation_positions(&self.layout, order)?;
        let offs = self.layout.offsets(&pos);
        let m = CMatrix::from_fn(offs.len(), offs.len(), |i, j| self.matrix[(offs[i], offs[j])]);
        Ok(Self {
            layout: self.layout.select(&pos),
            matrix: m,
        })
    }

    /// `(I ⊗ op ⊗ I) rho (I ⊗ op ⊗ I)^dagger` with `op` acting on `label`.
    pub(crate) fn conjugate_local(&self, label: &str, op: &CMatrix) -> Result<(SubsystemLayout, CMatrix)> {
        let pos = self
            .layout
            .position(label)
            .ok_or_else(|| QError::UnknownLabel(label.into()))?;
        if op.ncols() != self.layout.parts()[pos].dim {
            return Err(QError::DimensionMismatch(format!(
                "operator has {} columns, `{label}` has dimension {}",
                op.ncols(),
                self.layout.parts()[pos].dim
            )));
        }
        let new_layout = self.layout.with_dim(label, op.nrows())?;
        let n_old = self.layout.total_dim();
        let n_new = new_layout.total_dim();
        // Left multiplication column by column, then the same on the adjoint.
        let mut left = CMatrix::zeros(n_new, n_old);
        for j in 0..n_old {
            let col = self.matrix.column(j).into_owned();
            left.set_column(j, &apply_local_vec(&self.layout, &col, pos, op));
        }
        let left_adj = left.adjoint();
        let mut out = CMatrix::zeros(n_new, n_new);
        for j in 0..n_new {
            let col = left_adj.column(j).into_owned();
            out.set_column(j, &apply_local_vec(&self.layout, &col, pos, op));
        }
        Ok((new_layout, out.adjoint()))
    }

    /// Unitary/isometric conjugation of one subsystem.
    pub fn apply_local_isometry(&self, label: &str, op: &CMatrix) -> Result<Self> {
        let (layout, m) = self.conjugate_local(label, op)?;
        Ok(Self { layout, matrix: m })
    }
}

impl QuantumState for DensityOperator {
    fn layout(&self) -> &SubsystemLayout {
        &self.layout
    }

    fn reduced<S: AsRef<str>>(&self, keep: &[S]) -> Result<DensityOperator> {
        self.partial_trace(keep)
    }
}

/// Canonical purification: eigenvalues sorted descending, purifier dimension
/// equal to the rank (at least 1), and each eigenvector phased so that its
/// first nonzero component is real positive.
pub fn purify(rho: &DensityOperator, new_label: &str) -> Result<PureState> {
    if rho.layout.contains(new_label) {
        return Err(QError::DuplicateLabel(new_label.to_string()));
    }
    let (vals, vecs) = hermitian_eigen(&rho.matrix);
    let rank = vals.iter().filter(|&&v| v > RANK_TOL).count().max(1);
    let n = rho.dim();
    let mut amps = CVector::zeros(n * rank);
    for k in 0..rank {
        let lambda = clamp_psd(vals[k]);
        let v = vecs.column(k);
        let lead = v.iter().find(|z| z.norm() > 1e-12).copied().unwrap_or(c(1.0, 0.0));
        let phase = lead.conj() / lead.norm();
        let w = lambda.sqrt();
        for i in 0..n {
            amps[i * rank + k] = v[i] * phase * w;
        }
    }
    let purifier = SubsystemLayout::new([(new_label, rank)])?;
    let layout = rho.layout.concat(&purifier)?;
    PureState::normalized(layout, amps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::trace_distance;
    use crate::random::{random_density, random_pure};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn phi_plus() -> PureState {
        PureState::max_entangled("A", "B", 2).unwrap()
    }

    fn qubit(label: &str) -> SubsystemLayout {
        SubsystemLayout::new([(label, 2)]).unwrap()
    }

    #[test]
    fn tensor_of_basis_states() {
        let a = PureState::basis(qubit("A"), &[0]).unwrap();
        let b = PureState::basis(qubit("B"), &[0]).unwrap();
        let ab = a.tensor(&b).unwrap();
        let expect = [1.0, 0.0, 0.0, 0.0];
        for (z, e) in ab.amplitudes().iter().zip(expect) {
            assert_eq!(*z, c(e, 0.0));
        }
        assert_eq!(a.tensor(&a), Err(QError::DuplicateLabel("A".into())));
    }

    #[test]
    fn tensor_of_mixed_and_pure_is_diagonal() {
        let mixed = DensityOperator::maximally_mixed(qubit("A"));
        let zero = PureState::basis(qubit("B"), &[0]).unwrap().to_density();
        let m = mixed.tensor(&zero).unwrap();
        let diag = [0.5, 0.0, 0.5, 0.0];
        for i in 0..4 {
            for j in 0..4 {
                let e = if i == j { diag[i] } else { 0.0 };
                assert!((m.matrix()[(i, j)] - c(e, 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn two_epr_pairs_reduce_to_one() {
        let ab = phi_plus();
        let cd = PureState::max_entangled("C", "D", 2).unwrap();
        let rho = ab.tensor(&cd).unwrap().to_density();
        let red = rho.partial_trace(&["A", "B"]).unwrap();
        assert!((red.matrix() - ab.to_density().matrix()).norm() < 1e-14);
    }

    #[test]
    fn partial_trace_examples() {
        let red = phi_plus().to_density().partial_trace(&["A"]).unwrap();
        assert!((red.matrix() - DensityOperator::maximally_mixed(qubit("A")).matrix()).norm() < 1e-15);

        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let ra = random_density(qubit("A"), &mut rng);
        let sb = random_density(SubsystemLayout::new([("B", 3)]).unwrap(), &mut rng);
        let back = ra.tensor(&sb).unwrap().partial_trace(&["A"]).unwrap();
        assert!((back.matrix() - ra.matrix()).norm() < 1e-14);
    }

    #[test]
    fn partial_trace_errors() {
        let rho = phi_plus().to_density();
        assert_eq!(rho.partial_trace::<&str>(&[]), Err(QError::EmptySelection));
        assert_eq!(rho.partial_trace(&["Z"]), Err(QError::UnknownLabel("Z".into())));
    }

    #[test]
    fn partial_trace_keeps_layout_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let l = SubsystemLayout::new([("A", 2), ("B", 3), ("C", 2)]).unwrap();
        let psi = random_pure(l, &mut rng);
        let r1 = psi.reduced(&["C", "A"]).unwrap();
        let r2 = psi.to_density().partial_trace(&["A", "C"]).unwrap();
        assert_eq!(r1.layout().labels().collect::<Vec<_>>(), vec!["A", "C"]);
        assert!((r1.matrix() - r2.matrix()).norm() < 1e-13);
    }

    #[test]
    fn purify_maximally_mixed_qubit() {
        let psi = purify(&DensityOperator::maximally_mixed(qubit("A")), "R").unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let expect = [h, 0.0, 0.0, h];
        for (z, e) in psi.amplitudes().iter().zip(expect) {
            assert!((z - c(e, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn purify_pure_state_uses_one_dim_purifier() {
        let rho = PureState::basis(qubit("A"), &[0]).unwrap().to_density();
        let psi = purify(&rho, "R").unwrap();
        assert_eq!(psi.layout().dim_of("R").unwrap(), 1);
        assert!((psi.reduced(&["A"]).unwrap().matrix() - rho.matrix()).norm() < 1e-12);
        assert_eq!(purify(&rho, "A"), Err(QError::DuplicateLabel("A".into())));
    }

    #[test]
    fn purify_round_trip_seed_7() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let l = SubsystemLayout::new([("A", 2), ("B", 2)]).unwrap();
        let rho = random_density(l, &mut rng);
        let psi = purify(&rho, "R").unwrap();
        let back = psi.reduced(&["A", "B"]).unwrap();
        assert!(trace_distance(&back, &rho).unwrap() <= 1e-8);
    }

    #[test]
    fn permute_examples() {
        let psi = phi_plus();
        assert_eq!(psi.permute(&["A", "B"]).unwrap(), psi);
        let swapped = psi.permute(&["B", "A"]).unwrap();
        assert_eq!(swapped.amplitudes(), psi.amplitudes());

        let l = SubsystemLayout::new([("A", 2), ("B", 2)]).unwrap();
        let s01 = PureState::basis(l.clone(), &[0, 1]).unwrap();
        let s10 = s01.permute(&["B", "A"]).unwrap();
        assert_eq!(s10.amplitudes()[2], c(1.0, 0.0));
        assert_eq!(psi.permute(&["A"]), Err(QError::NotAPermutation));
        assert_eq!(psi.permute(&["A", "A"]), Err(QError::NotAPermutation));
    }

    #[test]
    fn fuse_groups_labels_at_front() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let l = SubsystemLayout::new([("A", 2), ("B", 3), ("C", 2)]).unwrap();
        let psi = random_pure(l, &mut rng);
        let fused = psi.fuse(&["C", "A"], "X").unwrap();
        assert_eq!(fused.layout().dims(), vec![4, 3]);
        let b1 = psi.reduced(&["B"]).unwrap();
        let b2 = fused.reduced(&["B"]).unwrap();
        assert!((b1.matrix() - b2.matrix()).norm() < 1e-13);
    }

    #[test]
    fn copies_use_dotted_labels() {
        let psi = phi_plus().copies(2).unwrap();
        assert_eq!(
            psi.layout().labels().collect::<Vec<_>>(),
            vec!["A.0", "B.0", "A.1", "B.1"]
        );
    }

    #[test]
    fn density_constructor_validates() {
        let l = qubit("A");
        let bad_trace = CMatrix::identity(2, 2);
        assert!(DensityOperator::new(l.clone(), bad_trace).is_err());
        let non_psd = CMatrix::from_diagonal(&CVector::from_vec(vec![c(1.5, 0.0), c(-0.5, 0.0)]));
        assert!(DensityOperator::new(l.clone(), non_psd).is_err());
        let mut non_herm = CMatrix::identity(2, 2) * c(0.5, 0.0);
        non_herm[(0, 1)] = c(0.1, 0.0);
        assert!(DensityOperator::new(l, non_herm).is_err());
    }
}
