//! Choi matrices, pure decompositions and purification.

use super::{kraus_new, KrausMorphism};
use crate::error::{Error, Result};
use crate::model::matc::{hermitian_eig, DenseMatrix, MatModel, C64};
use crate::model::ModelKind;
use crate::morphism::Morphism;
use crate::object::ObjectExpr;

/// Eigenvalues below `-PSD_FLOOR · max(1, ‖C‖)` reject a Choi matrix.
pub const PSD_FLOOR: f64 = 1e-9;
/// Eigenvalues at most `RANK_EPS · max(1, λ_max)` are dropped when purifying.
pub const RANK_EPS: f64 = 1e-12;

/// `C[(b,a),(b',a')] = Σ_i M_i[b,a] · conj(M_i[b',a'])`, row index `b·dim A + a`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChoiMatrix {
    pub a: usize,
    pub b: usize,
    pub matrix: DenseMatrix,
}

impl ChoiMatrix {
    pub fn new(a: usize, b: usize, matrix: DenseMatrix) -> Result<Self> {
        if matrix.shape() != (a * b, a * b) {
            return Err(Error::ShapeMismatch(format!(
                "Choi matrix for {a} → {b} must be {n}×{n}, got {}×{}",
                matrix.rows(),
                matrix.cols(),
                n = a * b
            )));
        }
        Ok(ChoiMatrix { a, b, matrix })
    }

    pub fn max_abs_diff(&self, other: &ChoiMatrix) -> Result<f64> {
        if (self.a, self.b) != (other.a, other.b) {
            return Err(Error::DomCodMismatch(format!(
                "{} → {} vs {} → {}",
                self.a, self.b, other.a, other.b
            )));
        }
        self.matrix.max_abs_diff(&other.matrix)
    }
}

/// Choi matrix of a finite matrix-backed channel.
pub fn to_choi(k: &KrausMorphism) -> Result<ChoiMatrix> {
    let (f, u) = k.dense_body()?;
    let a = f.cols();
    let b = f.rows() / u;
    let n = a * b;
    let mut c = DenseMatrix::zeros(n, n)?;
    // M_i flattened row-major is exactly the vector indexed by b·a_dim + a
    for i in 0..u {
        let v = &f.entries()[i * n..(i + 1) * n];
        for r in 0..n {
            if v[r] == C64::new(0.0, 0.0) {
                continue;
            }
            for s in 0..n {
                c[(r, s)] += v[r] * v[s].conj();
            }
        }
    }
    ChoiMatrix::new(a, b, c)
}

/// The Kraus operators `M_i : A → B` as matrix-model morphisms.
pub fn pure_decomposition(k: &KrausMorphism) -> Result<Vec<Morphism>> {
    if k.model() != ModelKind::Mat {
        return Err(Error::unsupported(k.model().id(), "pure decomposition"));
    }
    let m = MatModel::new();
    k.blocks()?
        .into_iter()
        .map(|block| m.arrow(k.dom(), k.cod(), block))
        .collect()
}

/// Stinespring representative of a Choi matrix: ancilla dimension the rank,
/// `M_i = unvec(√λ_i · v_i)`. The zero channel gets one zero Kraus operator.
pub fn purify(c: &ChoiMatrix) -> Result<KrausMorphism> {
    let (values, vectors) = hermitian_eig(&c.matrix)?;
    let scale = c.matrix.max_abs().max(1.0);
    if let Some(&min) = values.last() {
        if min < -PSD_FLOOR * scale {
            return Err(Error::NotPsd(min));
        }
    }
    let cutoff = RANK_EPS * values.first().copied().unwrap_or(0.0).max(1.0);
    let n = c.a * c.b;
    let mut blocks = Vec::new();
    for (j, &lambda) in values.iter().enumerate() {
        if lambda <= cutoff {
            continue;
        }
        let s = lambda.sqrt();
        let entries = (0..n).map(|r| vectors[(r, j)] * s).collect();
        blocks.push(DenseMatrix::from_vec(c.b, c.a, entries)?);
    }
    if blocks.is_empty() {
        blocks.push(DenseMatrix::zeros(c.b, c.a)?);
    }
    let u = ObjectExpr::dim(blocks.len());
    let body = MatModel::new().arrow(
        &ObjectExpr::dim(c.a),
        &u.par(&ObjectExpr::dim(c.b)),
        DenseMatrix::vstack(&blocks)?,
    )?;
    kraus_new(body, &u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cpinf::{kraus_apply, kraus_identity};
    use crate::cpinf::env::env_discard;
    use crate::rng::{random_dense, random_density, rng_from_seed};

    #[test]
    fn identity_channel_choi_is_the_bell_projector() {
        let k = kraus_identity(ModelKind::Mat, &ObjectExpr::dim(2)).unwrap();
        let c = to_choi(&k).unwrap();
        // brute force vec(I) vec(I)† with vec index b·2 + a
        let vec_i = [1.0, 0.0, 0.0, 1.0];
        for r in 0..4 {
            for s in 0..4 {
                assert_eq!(c.matrix[(r, s)], C64::new(vec_i[r] * vec_i[s], 0.0));
            }
        }
    }

    #[test]
    fn discard_choi_is_identity() {
        let k = env_discard(ModelKind::Mat, &ObjectExpr::dim(2)).unwrap();
        let c = to_choi(&k).unwrap();
        assert_eq!((c.a, c.b), (2, 1));
        assert_eq!(c.matrix, DenseMatrix::identity(2).unwrap());
    }

    #[test]
    fn purification_round_trip() {
        let mut rng = rng_from_seed(8);
        let (u, b, a) = (3, 2, 2);
        let f = random_dense(u * b, a, &mut rng).unwrap();
        let (uo, bo, ao) = (ObjectExpr::dim(u), ObjectExpr::dim(b), ObjectExpr::dim(a));
        let k = kraus_new(MatModel::new().arrow(&ao, &uo.par(&bo), f).unwrap(), &uo).unwrap();
        let c = to_choi(&k).unwrap();
        let p = purify(&c).unwrap();
        assert!(to_choi(&p).unwrap().max_abs_diff(&c).unwrap() < 1e-8);
        let rho = random_density(2, &mut rng).unwrap();
        let lhs = kraus_apply(&p, &rho).unwrap();
        let rhs = kraus_apply(&k, &rho).unwrap();
        assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-8);
    }

    #[test]
    fn identity_purifies_to_one_operator() {
        let c = to_choi(&kraus_identity(ModelKind::Mat, &ObjectExpr::dim(3)).unwrap()).unwrap();
        let p = purify(&c).unwrap();
        let ops = pure_decomposition(&p).unwrap();
        assert_eq!(ops.len(), 1);
        // the single operator is a phase times the identity
        let m = ops[0].dense().unwrap();
        let phase = m[(0, 0)];
        assert!((phase.norm() - 1.0).abs() < 1e-10);
        let want = DenseMatrix::identity(3).unwrap().scale(phase);
        assert!(m.max_abs_diff(&want).unwrap() < 1e-10);
    }

    #[test]
    fn rejects_indefinite_input() {
        let h = DenseMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]]).unwrap();
        let c = ChoiMatrix::new(2, 1, h).unwrap();
        assert!(matches!(purify(&c), Err(Error::NotPsd(_))));
    }
}
