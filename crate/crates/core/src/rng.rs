//! Seeded random instances: complex entries, matrices, unitaries, states.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::Result;
use crate::model::matc::{DenseMatrix, C64};

pub type TrialRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> TrialRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// 64-bit FNV-1a, used to derive stable per-law seeds.
pub fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in bytes {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// Seed for one trial of one law, independent of scheduling order.
pub fn trial_seed(label: &str, seed: u64, trial: usize) -> u64 {
    let mut h = fnv1a(label.as_bytes()) ^ seed.rotate_left(17);
    h = h.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ (trial as u64);
    fnv1a(&h.to_le_bytes())
}

/// Uniform on the square `[-1, 1] × [-1, 1]`.
pub fn random_c64(rng: &mut TrialRng) -> C64 {
    C64::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0))
}

pub fn random_gaussian_c64(rng: &mut TrialRng) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn random_dense(rows: usize, cols: usize, rng: &mut TrialRng) -> Result<DenseMatrix> {
    let entries = (0..rows * cols).map(|_| random_c64(rng)).collect();
    DenseMatrix::from_vec(rows, cols, entries)
}

/// Orthonormalizes the columns of a Gaussian matrix (modified Gram–Schmidt).
/// Returns an `n × k` isometry with `k ≤ n`.
pub fn random_isometry(n: usize, k: usize, rng: &mut TrialRng) -> Result<DenseMatrix> {
    assert!(k <= n, "an isometry C^{k} → C^{n} needs k ≤ n");
    loop {
        let mut cols: Vec<Vec<C64>> = Vec::with_capacity(k);
        let mut degenerate = false;
        for _ in 0..k {
            let mut v: Vec<C64> = (0..n).map(|_| random_gaussian_c64(rng)).collect();
            for u in &cols {
                let proj: C64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, ui) in v.iter_mut().zip(u) {
                    *vi -= proj * ui;
                }
            }
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-8 {
                degenerate = true;
                break;
            }
            v.iter_mut().for_each(|z| *z /= norm);
            cols.push(v);
        }
        if degenerate {
            continue;
        }
        let mut m = DenseMatrix::zeros(n, k)?;
        for (j, col) in cols.iter().enumerate() {
            for (i, z) in col.iter().enumerate() {
                m[(i, j)] = *z;
            }
        }
        return Ok(m);
    }
}

pub fn random_unitary(n: usize, rng: &mut TrialRng) -> Result<DenseMatrix> {
    random_isometry(n, n, rng)
}

/// A random full-rank density matrix `G G† / Tr(G G†)`.
pub fn random_density(n: usize, rng: &mut TrialRng) -> Result<DenseMatrix> {
    let g = random_dense(n, n, rng)?;
    let p = g.matmul(&g.dagger())?;
    let tr = p.trace()?;
    Ok(p.scale(C64::new(1.0 / tr.re, 0.0)))
}

/// A random Hermitian matrix `(G + G†) / 2`.
pub fn random_hermitian(n: usize, rng: &mut TrialRng) -> Result<DenseMatrix> {
    let g = random_dense(n, n, rng)?;
    Ok(g.add(&g.dagger())?.scale(C64::new(0.5, 0.0)))
}
