//! Brute-force reference computations for the CLI-level tests.
#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type M = DMatrix<Complex64>;

fn digits(mut idx: usize, dims: &[usize]) -> Vec<usize> {
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

/// Partial trace onto `keep` (sorted positions) by explicit index summation.
pub fn reduce(matrix: &M, dims: &[usize], keep: &[usize]) -> M {
    let total: usize = dims.iter().product();
    let kdims: Vec<usize> = keep.iter().map(|&k| dims[k]).collect();
    let kd: usize = kdims.iter().product();
    let mut out = M::zeros(kd, kd);
    for i in 0..total {
        let di = digits(i, dims);
        for j in 0..total {
            let dj = digits(j, dims);
            if (0..dims.len()).any(|k| !keep.contains(&k) && di[k] != dj[k]) {
                continue;
            }
            let ri: Vec<usize> = keep.iter().map(|&k| di[k]).collect();
            let rj: Vec<usize> = keep.iter().map(|&k| dj[k]).collect();
            out[(index(&ri, &kdims), index(&rj, &kdims))] += matrix[(i, j)];
        }
    }
    out
}

/// Entropy in bits via the real symmetric embedding of a Hermitian matrix.
pub fn entropy(m: &M) -> f64 {
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
    ev.iter()
        .step_by(2)
        .map(|&x| if x > 1e-15 { -x * x.log2() } else { 0.0 })
        .sum()
}

pub fn subset_entropy(matrix: &M, dims: &[usize], keep: &[usize]) -> f64 {
    if keep.is_empty() {
        return 0.0;
    }
    entropy(&reduce(matrix, dims, keep))
}

pub fn kron(a: &M, b: &M) -> M {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    M::from_fn(ar * br, ac * bc, |i, j| a[(i / br, j / bc)] * b[(i % br, j % bc)])
}
