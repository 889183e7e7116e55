//! Brute-force reference computations shared by the integration tests.
#![allow(dead_code)]

use nalgebra::DMatrix;
use qmerge_core::{CMatrix, DensityOperator, PureState, QuantumState};

/// Mixed-radix digits of `idx`, first subsystem most significant.
pub fn digits(mut idx: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for k in (0..dims.len()).rev() {
        out[k] = idx % dims[k];
        idx /= dims[k];
    }
    out
}

fn index(digs: &[usize], dims: &[usize]) -> usize {
    digs.iter().zip(dims).fold(0, |acc, (d, n)| acc * n + d)
}

/// Partial trace by explicit summation over every pair of basis indices.
pub fn naive_reduce(matrix: &CMatrix, dims: &[usize], keep: &[usize]) -> CMatrix {
    let total: usize = dims.iter().product();
    let kdims: Vec<usize> = keep.iter().map(|&k| dims[k]).collect();
    let kd: usize = kdims.iter().product();
    let mut out = CMatrix::zeros(kd, kd);
    for i in 0..total {
        let di = digits(i, dims);
        for j in 0..total {
            let dj = digits(j, dims);
            let traced_equal = (0..dims.len())
                .filter(|k| !keep.contains(k))
                .all(|k| di[k] == dj[k]);
            if !traced_equal {
                continue;
            }
            let ri: Vec<usize> = keep.iter().map(|&k| di[k]).collect();
            let rj: Vec<usize> = keep.iter().map(|&k| dj[k]).collect();
            out[(index(&ri, &kdims), index(&rj, &kdims))] += matrix[(i, j)];
        }
    }
    out
}

/// Entropy in bits from the real symmetric embedding `[[Re, -Im], [Im, Re]]`,
/// whose spectrum is the Hermitian spectrum with every value doubled.
pub fn naive_entropy(m: &CMatrix) -> f64 {
    let n = m.nrows();
    if n == 0 {
        return 0.0;
    }
    let real = DMatrix::<f64>::from_fn(2 * n, 2 * n, |i, j| {
        let z = m[(i % n, j % n)];
        match (i < n, j < n) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    });
    let sym = (&real + real.transpose()) * 0.5;
    let mut ev: Vec<f64> = sym.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    // each eigenvalue appears twice; take every other one
    ev.iter()
        .step_by(2)
        .map(|&x| if x > 1e-15 { -x * x.log2() } else { 0.0 })
        .sum()
}

pub fn outer(psi: &PureState) -> CMatrix {
    let v = psi.amplitudes();
    v * v.adjoint()
}

/// Entropy of the subsystems at `keep` positions, computed by brute force.
pub fn oracle_entropy_pure(psi: &PureState, keep: &[usize]) -> f64 {
    if keep.is_empty() {
        return 0.0;
    }
    naive_entropy(&naive_reduce(&outer(psi), &psi.layout().dims(), keep))
}

pub fn oracle_entropy_mixed(rho: &DensityOperator, keep: &[usize]) -> f64 {
    if keep.is_empty() {
        return 0.0;
    }
    naive_entropy(&naive_reduce(rho.matrix(), &rho.layout().dims(), keep))
}

pub fn mask_positions(mask: usize, m: usize) -> Vec<usize> {
    (0..m).filter(|i| mask >> i & 1 == 1).collect()
}
