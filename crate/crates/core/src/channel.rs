//! Channels given by a Stinespring isometry with the environment discarded.

use serde::{Deserialize, Serialize};

use crate::error::{QError, Result};
use crate::layout::{Subsystem, SubsystemLayout};
use crate::linalg::{c, isometry_residual, CMatrix};
use crate::state::{DensityOperator, QuantumState};

pub const ISOMETRY_TOL: f64 = 1e-10;

/// A channel `input -> output` realised by an isometry into `output ⊗ env`.
///
/// Rows of the isometry are indexed `out * env_dim + env` (output most
/// significant); columns by the input basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ChannelFile", into = "ChannelFile")]
pub struct ChannelSpec {
    input: String,
    output: String,
    out_dim: usize,
    env_dim: usize,
    isometry: CMatrix,
}

impl ChannelSpec {
    pub fn new(
        input: impl Into<String>,
        output: impl Into<String>,
        out_dim: usize,
        env_dim: usize,
        isometry: CMatrix,
    ) -> Result<Self> {
        if out_dim == 0 || env_dim == 0 {
            return Err(QError::InvalidArgument("channel dimensions must be >= 1".into()));
        }
        if isometry.nrows() != out_dim * env_dim || isometry.ncols() == 0 {
            return Err(QError::DimensionMismatch(format!(
                "isometry is {}x{}, expected {} rows",
                isometry.nrows(),
                isometry.ncols(),
                out_dim * env_dim
            )));
        }
        let res = isometry_residual(&isometry);
        if res > ISOMETRY_TOL {
            return Err(QError::NotIsometry(res));
        }
        let (input, output) = (input.into(), output.into());
        if input.is_empty() || output.is_empty() {
            return Err(QError::InvalidLabel(String::new()));
        }
        Ok(Self {
            input,
            output,
            out_dim,
            env_dim,
            isometry,
        })
    }

    pub fn identity(input: &str, output: &str, dim: usize) -> Result<Self> {
        Self::new(input, output, dim, 1, CMatrix::identity(dim, dim))
    }

    /// Discards the input entirely (output dimension 1).
    pub fn full_trace(input: &str, dim: usize) -> Result<Self> {
        Self::new(input, input, 1, dim, CMatrix::identity(dim, dim))
    }

    /// Copies the computational basis into the environment: `|i> -> |i>|i>`.
    pub fn dephasing(input: &str, output: &str, dim: usize) -> Result<Self> {
        let mut v = CMatrix::zeros(dim * dim, dim);
        for i in 0..dim {
            v[(i * dim + i, i)] = c(1.0, 0.0);
        }
        Self::new(input, output, dim, dim, v)
    }

    pub fn input(&self) -> &str {
        &self.input
    }

    pub fn output(&self) -> &str {
        &self.output
    }

    pub fn in_dim(&self) -> usize {
        self.isometry.ncols()
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn env_dim(&self) -> usize {
        self.env_dim
    }

    pub fn isometry(&self) -> &CMatrix {
        &self.isometry
    }
}

/// On-disk form: the isometry as parallel real/imaginary arrays in
/// column-major order, one column per input basis state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelFile {
    pub input: String,
    pub output: String,
    pub out_dim: usize,
    pub env_dim: usize,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl TryFrom<ChannelFile> for ChannelSpec {
    type Error = QError;

    fn try_from(f: ChannelFile) -> Result<Self> {
        let rows = f.out_dim * f.env_dim;
        if f.re.len() != f.im.len() || rows == 0 || !f.re.len().is_multiple_of(rows) {
            return Err(QError::DimensionMismatch(format!(
                "{} real and {} imaginary entries for {rows} rows",
                f.re.len(),
                f.im.len()
            )));
        }
        let cols = f.re.len() / rows;
        let m = CMatrix::from_fn(rows, cols, |r, col| c(f.re[col * rows + r], f.im[col * rows + r]));
        Self::new(f.input, f.output, f.out_dim, f.env_dim, m)
    }
}

impl From<ChannelSpec> for ChannelFile {
    fn from(ch: ChannelSpec) -> Self {
        // nalgebra storage is already column-major
        Self {
            re: ch.isometry.iter().map(|z| z.re).collect(),
            im: ch.isometry.iter().map(|z| z.im).collect(),
            input: ch.input,
            output: ch.output,
            out_dim: ch.out_dim,
            env_dim: ch.env_dim,
        }
    }
}

/// Applies `ch` to its input subsystem and traces out the environment. The
/// output keeps the input's position; an output of dimension 1 is dropped.
pub fn apply_channel(rho: &DensityOperator, ch: &ChannelSpec) -> Result<DensityOperator> {
    let layout = rho.layout();
    let pos = layout
        .position(&ch.input)
        .ok_or_else(|| QError::UnknownLabel(ch.input.clone()))?;
    if layout.parts()[pos].dim != ch.in_dim() {
        return Err(QError::DimensionMismatch(format!(
            "channel expects dimension {} on `{}`, state has {}",
            ch.in_dim(),
            ch.input,
            layout.parts()[pos].dim
        )));
    }
    if ch.output != ch.input && layout.contains(&ch.output) {
        return Err(QError::DuplicateLabel(ch.output.clone()));
    }
    let (_, m) = rho.conjugate_local(&ch.input, &ch.isometry)?;
    let env_label = layout.fresh_label("__env");
    let mut parts: Vec<Subsystem> = Vec::with_capacity(layout.len() + 1);
    for (i, p) in layout.parts().iter().enumerate() {
        if i == pos {
            parts.push(Subsystem {
                label: ch.output.clone(),
                dim: ch.out_dim,
            });
            parts.push(Subsystem {
                label: env_label.clone(),
                dim: ch.env_dim,
            });
        } else {
            parts.push(p.clone());
        }
    }
    let expanded = DensityOperator::from_parts_unchecked(SubsystemLayout::try_from(parts)?, m);
    let keep: Vec<String> = expanded
        .layout()
        .labels()
        .filter(|l| *l != env_label && !(ch.out_dim == 1 && *l == ch.output))
        .map(str::to_string)
        .collect();
    if keep.is_empty() {
        return Ok(DensityOperator::from_parts_unchecked(
            SubsystemLayout::empty(),
            CMatrix::identity(1, 1),
        ));
    }
    expanded.partial_trace(&keep)
}
