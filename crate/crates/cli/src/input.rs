//! State and channel construction from preset names, JSON text, or files.

use std::path::Path;

use nalgebra::DVector;
use num_complex::Complex64;
use qmerge_core::linalg::{hermitian_eigen, isometry_residual};
use qmerge_core::{presets, purify, ChannelSpec, CMatrix, DensityOperator, PureState, QuantumState, SubsystemLayout};
use serde::Deserialize;

use crate::error::CliError;

/// Input files may deviate from exact normalization by this much; the value
/// is then renormalized.
pub const INPUT_TOL: f64 = 1e-6;

#[derive(Debug, Clone)]
pub enum State {
    Pure(PureState),
    Mixed(DensityOperator),
}

impl State {
    pub fn layout(&self) -> &SubsystemLayout {
        match self {
            State::Pure(p) => p.layout(),
            State::Mixed(m) => m.layout(),
        }
    }

    pub fn to_density(&self) -> DensityOperator {
        match self {
            State::Pure(p) => p.to_density(),
            State::Mixed(m) => m.clone(),
        }
    }

    /// The pure state itself, or a purification on a fresh label.
    pub fn purified(&self) -> Result<(PureState, Option<String>), CliError> {
        match self {
            State::Pure(p) => Ok((p.clone(), None)),
            State::Mixed(m) => {
                let label = m.layout().fresh_label("R");
                Ok((purify(m, &label)?, Some(label)))
            }
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct StateFile {
    labels: Vec<String>,
    dims: Vec<usize>,
    kind: Kind,
    re: Vec<f64>,
    im: Vec<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Kind {
    Pure,
    Mixed,
}

/// Resolves `spec` as a preset, inline JSON text, or a path to a JSON file.
pub fn parse_state(spec: &str) -> Result<State, CliError> {
    let spec = spec.trim();
    if spec.starts_with('{') {
        return state_from_json(spec, "<inline>");
    }
    if let Some(s) = preset(spec)? {
        return Ok(s);
    }
    let path = Path::new(spec);
    if !path.is_file() {
        return Err(CliError::Usage(format!("unknown preset or missing file `{spec}`")));
    }
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read `{spec}`: {e}")))?;
    state_from_json(&text, spec)
}

fn preset(name: &str) -> Result<Option<State>, CliError> {
    let state = match name {
        "epr" => State::Pure(presets::epr()),
        "cc" => State::Mixed(presets::classically_correlated()),
        "cc-pure" => State::Pure(presets::cc_pure()),
        "example1" => State::Mixed(presets::example1()),
        _ => {
            if let Some(m) = name.strip_prefix("ghz:") {
                let m: usize = m
                    .parse()
                    .map_err(|_| CliError::Usage(format!("bad party count in `{name}`")))?;
                return Ok(Some(State::Pure(presets::ghz(m)?)));
            }
            if let Some(rest) = name.strip_prefix("random-pure:") {
                let (dims, seed) = rest
                    .rsplit_once(':')
                    .ok_or_else(|| CliError::Usage(format!("expected random-pure:d1xd2x...:seed, got `{name}`")))?;
                let dims = dims
                    .split('x')
                    .map(|d| d.parse::<usize>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| CliError::Usage(format!("bad dimensions in `{name}`")))?;
                let seed: u64 = seed
                    .parse()
                    .map_err(|_| CliError::Usage(format!("bad seed in `{name}`")))?;
                return Ok(Some(State::Pure(presets::random_pure_state(&dims, seed)?)));
            }
            return Ok(None);
        }
    };
    Ok(Some(state))
}

fn json_error(source: &str, e: &serde_json::Error) -> CliError {
    let mut message = e.to_string();
    if let Some(i) = message.rfind(" at line ") {
        message.truncate(i);
    }
    CliError::Parse {
        origin: source.to_string(),
        line: e.line(),
        column: e.column(),
        message,
    }
}

fn invalid(source: &str, message: impl Into<String>) -> CliError {
    CliError::Invalid {
        origin: source.to_string(),
        message: message.into(),
    }
}

pub fn state_from_json(text: &str, source: &str) -> Result<State, CliError> {
    let f: StateFile = serde_json::from_str(text).map_err(|e| json_error(source, &e))?;
    if f.labels.len() != f.dims.len() {
        return Err(invalid(source, format!("{} labels but {} dims", f.labels.len(), f.dims.len())));
    }
    let layout = SubsystemLayout::new(f.labels.iter().cloned().zip(f.dims.iter().copied()))?;
    if f.re.len() != f.im.len() {
        return Err(invalid(source, "`re` and `im` differ in length"));
    }
    let n = layout.total_dim();
    let entries: Vec<Complex64> = f.re.iter().zip(&f.im).map(|(&r, &i)| Complex64::new(r, i)).collect();
    if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(invalid(source, "non-finite entry"));
    }
    match f.kind {
        Kind::Pure => {
            if entries.len() != n {
                return Err(invalid(source, format!("{} amplitudes for dimension {n}", entries.len())));
            }
            let v = DVector::from_vec(entries);
            let norm = v.norm();
            if (norm - 1.0).abs() > INPUT_TOL {
                return Err(invalid(source, format!("norm {norm} differs from 1 by more than {INPUT_TOL}")));
            }
            // exact input is kept bit for bit
            match PureState::new(layout.clone(), v.clone()) {
                Ok(p) => Ok(State::Pure(p)),
                Err(_) => Ok(State::Pure(PureState::normalized(layout, v)?)),
            }
        }
        Kind::Mixed => {
            if entries.len() != n * n {
                return Err(invalid(source, format!("{} matrix entries for dimension {n}", entries.len())));
            }
            let m = CMatrix::from_row_slice(n, n, &entries);
            Ok(State::Mixed(density_within_tolerance(layout, m, source)?))
        }
    }
}

fn density_within_tolerance(layout: SubsystemLayout, m: CMatrix, source: &str) -> Result<DensityOperator, CliError> {
    let herm = (&m - m.adjoint()).iter().fold(0.0f64, |a, z| a.max(z.norm()));
    if herm > INPUT_TOL {
        return Err(invalid(source, format!("matrix is not Hermitian (residual {herm:e})")));
    }
    if let Ok(rho) = DensityOperator::new(layout.clone(), m.clone()) {
        return Ok(rho);
    }
    let h = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let tr: f64 = (0..h.nrows()).map(|i| h[(i, i)].re).sum();
    if (tr - 1.0).abs() > INPUT_TOL {
        return Err(invalid(source, format!("trace {tr} differs from 1 by more than {INPUT_TOL}")));
    }
    let (vals, vecs) = hermitian_eigen(&h);
    let min = vals.last().copied().unwrap_or(0.0);
    if min < -INPUT_TOL {
        return Err(invalid(source, format!("negative eigenvalue {min}")));
    }
    // clip tiny negative eigenvalues and renormalize
    let clipped: Vec<f64> = vals.iter().map(|&v| v.max(0.0)).collect();
    let total: f64 = clipped.iter().sum();
    let mut scaled = vecs.clone();
    for (k, v) in clipped.iter().enumerate() {
        let s = Complex64::new(v / total, 0.0);
        for r in 0..scaled.nrows() {
            scaled[(r, k)] *= s;
        }
    }
    let rho = &scaled * vecs.adjoint();
    let rho = (&rho + rho.adjoint()) * Complex64::new(0.5, 0.0);
    Ok(DensityOperator::new(layout, rho)?)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChannelFileIn {
    input: String,
    output: String,
    out_dim: usize,
    env_dim: usize,
    re: Vec<f64>,
    im: Vec<f64>,
}

/// Reads a channel file; an isometry within [`INPUT_TOL`] is snapped to the
/// nearest exact isometry.
pub fn parse_channel(path: &str) -> Result<ChannelSpec, CliError> {
    let text = if path.trim_start().starts_with('{') {
        path.to_string()
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read `{path}`: {e}")))?
    };
    let source = if text == path { "<inline>" } else { path };
    let f: ChannelFileIn = serde_json::from_str(&text).map_err(|e| json_error(source, &e))?;
    let rows = f.out_dim * f.env_dim;
    if rows == 0 || f.re.len() != f.im.len() || !f.re.len().is_multiple_of(rows) || f.re.is_empty() {
        return Err(invalid(source, format!("{} entries do not fill columns of length {rows}", f.re.len())));
    }
    let cols = f.re.len() / rows;
    let m = CMatrix::from_fn(rows, cols, |r, c| Complex64::new(f.re[c * rows + r], f.im[c * rows + r]));
    let res = isometry_residual(&m);
    if res.is_nan() || res > INPUT_TOL {
        return Err(invalid(source, format!("not an isometry (residual {res:e})")));
    }
    let m = if res <= qmerge_core::channel::ISOMETRY_TOL {
        m
    } else {
        let svd = m.svd(true, true);
        svd.u.expect("requested") * svd.v_t.expect("requested")
    };
    Ok(ChannelSpec::new(f.input, f.output, f.out_dim, f.env_dim, m)?)
}
