//! Hermitian eigendecomposition by the cyclic complex Jacobi method.

use super::matrix::{DenseMatrix, C64, ZERO};
use crate::error::{Error, Result};

/// Off-diagonal Frobenius norm (relative to the matrix norm) at which a sweep
/// sequence stops.
pub const JACOBI_THRESHOLD: f64 = 1e-12;
pub const JACOBI_MAX_SWEEPS: usize = 50;
/// Accepted departure from Hermiticity on input.
pub const HERMITIAN_TOL: f64 = 1e-9;

/// Returns eigenvalues in descending order and the matching unitary `V` with
/// `H = V · diag(λ) · V†`; column `j` of `V` is the eigenvector of `λ[j]`.
pub fn hermitian_eig(h: &DenseMatrix) -> Result<(Vec<f64>, DenseMatrix)> {
    let dev = h.hermitian_deviation()?;
    if dev > HERMITIAN_TOL * h.max_abs().max(1.0) {
        return Err(Error::NotHermitian(dev));
    }
    let n = h.rows();
    let mut a = h.add(&h.dagger())?.scale(C64::new(0.5, 0.0));
    let mut v = DenseMatrix::identity(n)?;
    let scale = frobenius(&a).max(f64::MIN_POSITIVE);

    let mut converged = off_diagonal(&a) <= JACOBI_THRESHOLD * scale;
    let mut sweeps = 0;
    while !converged {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence(JACOBI_MAX_SWEEPS));
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        sweeps += 1;
        converged = off_diagonal(&a) <= JACOBI_THRESHOLD * scale;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = DenseMatrix::zeros(n, n)?;
    for (new_col, &old_col) in order.iter().enumerate() {
        for row in 0..n {
            vectors[(row, new_col)] = v[(row, old_col)];
        }
    }
    Ok((values, vectors))
}

fn frobenius(a: &DenseMatrix) -> f64 {
    a.entries().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn off_diagonal(a: &DenseMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// One Jacobi rotation zeroing `a[p][q]`. The rotation is
/// `J = [[c, s], [-s·ω̄, c·ω̄]]` on the `(p, q)` plane with `ω = a_pq / |a_pq|`.
fn rotate(a: &mut DenseMatrix, v: &mut DenseMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag <= f64::MIN_POSITIVE {
        return;
    }
    let omega = apq / mag;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let tau = (aqq - app) / (2.0 * mag);
    let t = if tau == 0.0 {
        1.0
    } else {
        tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let jpp = C64::new(c, 0.0);
    let jpq = C64::new(s, 0.0);
    let jqp = -omega.conj() * s;
    let jqq = omega.conj() * c;

    let n = a.rows();
    // columns: A ← A·J, V ← V·J
    for m in [&mut *a, &mut *v] {
        for i in 0..n {
            let (xp, xq) = (m[(i, p)], m[(i, q)]);
            m[(i, p)] = xp * jpp + xq * jqp;
            m[(i, q)] = xp * jpq + xq * jqq;
        }
    }
    // rows: A ← J†·A
    for j in 0..n {
        let (xp, xq) = (a[(p, j)], a[(q, j)]);
        a[(p, j)] = jpp.conj() * xp + jqp.conj() * xq;
        a[(q, j)] = jpq.conj() * xp + jqq.conj() * xq;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
}

/// `V · diag(λ) · V†`.
pub fn reconstruct(values: &[f64], vectors: &DenseMatrix) -> Result<DenseMatrix> {
    let n = values.len();
    let mut scaled = vectors.clone();
    for j in 0..n {
        for i in 0..n {
            scaled[(i, j)] *= values[j];
        }
    }
    scaled.matmul(&vectors.dagger())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::matc::matrix::ONE;
    use crate::rng::{random_hermitian, rng_from_seed};

    fn is_identity(m: &DenseMatrix, tol: f64) -> bool {
        let n = m.rows();
        (0..n).all(|i| (0..n).all(|j| (m[(i, j)] - if i == j { ONE } else { ZERO }).norm() <= tol))
    }

    #[test]
    fn diagonal_input() {
        let h = DenseMatrix::from_real_rows(&[&[3.0, 0.0], &[0.0, 1.0]]).unwrap();
        let (vals, vecs) = hermitian_eig(&h).unwrap();
        assert_eq!(vals, vec![3.0, 1.0]);
        assert!(is_identity(&vecs, 0.0));
    }

    #[test]
    fn pauli_x() {
        // det(X - λI) = λ² - 1
        let h = DenseMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        let (vals, _) = hermitian_eig(&h).unwrap();
        assert!((vals[0] - 1.0).abs() < 1e-14);
        assert!((vals[1] + 1.0).abs() < 1e-14);
    }

    #[test]
    fn pauli_y_is_handled_with_complex_rotations() {
        let h = DenseMatrix::from_rows(&[
            vec![ZERO, C64::new(0.0, -1.0)],
            vec![C64::new(0.0, 1.0), ZERO],
        ])
        .unwrap();
        let (vals, vecs) = hermitian_eig(&h).unwrap();
        assert!((vals[0] - 1.0).abs() < 1e-14 && (vals[1] + 1.0).abs() < 1e-14);
        let back = reconstruct(&vals, &vecs).unwrap();
        assert!(back.max_abs_diff(&h).unwrap() < 1e-14);
    }

    #[test]
    fn residual_on_random_input() {
        let mut rng = rng_from_seed(11);
        for n in [1, 2, 6, 16] {
            let h = random_hermitian(n, &mut rng).unwrap();
            let (vals, vecs) = hermitian_eig(&h).unwrap();
            let back = reconstruct(&vals, &vecs).unwrap();
            assert!(back.max_abs_diff(&h).unwrap() <= 1e-8);
            let gram = vecs.dagger().matmul(&vecs).unwrap();
            assert!(is_identity(&gram, 1e-8));
            assert!(vals.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let h = DenseMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        assert!(matches!(hermitian_eig(&h), Err(Error::NotHermitian(_))));
    }
}
