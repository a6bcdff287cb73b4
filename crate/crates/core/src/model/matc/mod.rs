//! The unitary category of finite complex matrices.
//!
//! Objects are dimensions; `⊗` and `⊕` both act as the Kronecker product and
//! the dagger is stationary on objects. Every structural map is an identity
//! matrix except the symmetries (commutation permutations) and the unit and
//! counit of the self-duality (Bell vectors).

pub mod channel;
pub mod eig;
pub mod matrix;

use rand::Rng;

pub use channel::{apply_channel, kraus_blocks};
pub use eig::hermitian_eig;
pub use matrix::{bell_counit, bell_unit, commutation_perm, mat_dagger, mat_kron, DenseMatrix, C64, MAX_ENTRIES};

use crate::error::{Error, Result};
use crate::model::{Model, ModelKind, ObjectKind};
use crate::morphism::{Morphism, Payload};
use crate::object::{Atom, ObjectExpr};
use crate::rng::{random_dense, random_unitary, TrialRng};
use crate::structural::StructuralMapName;

/// Deliberate corruptions used to check that the law suite notices broken
/// structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MatMutation {
    /// `λ⊗_{A,B}` realized as the commutation permutation `P_{a,b}`.
    SwapLaxorArgs,
    /// `λ⊗_{A,B}` scaled by `dim A`.
    ScaleLaxor,
    /// The dagger transposes without conjugating.
    DropConjugation,
    /// The mix map is `2` instead of `1`.
    ScaleMix,
    /// `c⊗_{A,B}` realized as `P_{b,a}`.
    TransposeSymmetry,
}

impl MatMutation {
    pub const ALL: [MatMutation; 5] = [
        MatMutation::SwapLaxorArgs,
        MatMutation::ScaleLaxor,
        MatMutation::DropConjugation,
        MatMutation::ScaleMix,
        MatMutation::TransposeSymmetry,
    ];

    pub fn id(self) -> &'static str {
        match self {
            MatMutation::SwapLaxorArgs => "swap-laxor-args",
            MatMutation::ScaleLaxor => "scale-laxor",
            MatMutation::DropConjugation => "drop-conjugation",
            MatMutation::ScaleMix => "scale-mix",
            MatMutation::TransposeSymmetry => "transpose-symmetry",
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MatModel {
    mutation: Option<MatMutation>,
}

impl MatModel {
    pub const fn new() -> Self {
        MatModel { mutation: None }
    }

    pub const fn mutated(mutation: MatMutation) -> Self {
        MatModel {
            mutation: Some(mutation),
        }
    }

    pub fn mutation(&self) -> Option<MatMutation> {
        self.mutation
    }

    /// Dimension of the space an object expression denotes.
    pub fn dim(&self, a: &ObjectExpr) -> Result<usize> {
        let n = match a {
            ObjectExpr::Base(Atom::Dim(n)) => {
                if *n == 0 {
                    return Err(Error::InvalidValue("dimension 0 is not an object".into()));
                }
                *n
            }
            ObjectExpr::Base(other) => {
                return Err(Error::unsupported("mat", format!("base object {other}")))
            }
            ObjectExpr::Tensor(l, r) | ObjectExpr::Par(l, r) => self
                .dim(l)?
                .checked_mul(self.dim(r)?)
                .ok_or(Error::TooLarge(usize::MAX))?,
            ObjectExpr::TensorUnit | ObjectExpr::ParUnit => 1,
            ObjectExpr::Dagger(x) | ObjectExpr::Dual(x) => self.dim(x)?,
        };
        if n > MAX_ENTRIES {
            return Err(Error::TooLarge(n));
        }
        Ok(n)
    }

    /// Wraps a matrix as an arrow `dom → cod`, checking its shape.
    pub fn arrow(&self, dom: &ObjectExpr, cod: &ObjectExpr, m: DenseMatrix) -> Result<Morphism> {
        let (d, c) = (self.dim(dom)?, self.dim(cod)?);
        if m.shape() != (c, d) {
            return Err(Error::ShapeMismatch(format!(
                "{dom} → {cod} needs a {c}×{d} matrix, got {}×{}",
                m.rows(),
                m.cols()
            )));
        }
        Ok(Morphism::new(ModelKind::Mat, dom.clone(), cod.clone(), Payload::Dense(m)))
    }

    fn matrix(f: &Morphism) -> Result<&DenseMatrix> {
        f.dense().ok_or_else(|| Error::ModelMismatch {
            left: "mat".into(),
            right: f.model().to_string(),
        })
    }

    /// The payload realizing a structural map at the given arguments.
    pub fn structural_matrix(&self, name: StructuralMapName, args: &[ObjectExpr]) -> Result<DenseMatrix> {
        use StructuralMapName as S;
        let (dom, _) = name.signature(args)?;
        let dims: Vec<usize> = args.iter().map(|a| self.dim(a)).collect::<Result<_>>()?;
        let mutation = self.mutation;
        Ok(match name {
            S::SymTensor => {
                if mutation == Some(MatMutation::TransposeSymmetry) {
                    commutation_perm(dims[1], dims[0])?
                } else {
                    commutation_perm(dims[0], dims[1])?
                }
            }
            S::SymPar => commutation_perm(dims[0], dims[1])?,
            S::DualUnit => bell_unit(dims[0])?,
            S::DualCounit => bell_counit(dims[0])?,
            S::LaxTensor if mutation == Some(MatMutation::SwapLaxorArgs) => commutation_perm(dims[0], dims[1])?,
            S::LaxTensor if mutation == Some(MatMutation::ScaleLaxor) => {
                DenseMatrix::identity(dims[0] * dims[1])?.scale(C64::new(dims[0] as f64, 0.0))
            }
            S::Mix if mutation == Some(MatMutation::ScaleMix) => DenseMatrix::scalar(C64::new(2.0, 0.0)),
            _ => DenseMatrix::identity(self.dim(&dom)?)?,
        })
    }
}

impl Model for MatModel {
    fn kind(&self) -> ModelKind {
        ModelKind::Mat
    }

    fn name(&self) -> String {
        match self.mutation {
            None => "mat".into(),
            Some(m) => format!("mat+{}", m.id()),
        }
    }

    fn check_object(&self, a: &ObjectExpr) -> Result<()> {
        self.dim(a).map(|_| ())
    }

    fn same_object(&self, a: &ObjectExpr, b: &ObjectExpr) -> Result<bool> {
        Ok(self.dim(a)? == self.dim(b)?)
    }

    fn is_unitary(&self, a: &ObjectExpr) -> Result<bool> {
        self.dim(a).map(|_| true)
    }

    fn identity(&self, a: &ObjectExpr) -> Result<Morphism> {
        self.arrow(a, a, DenseMatrix::identity(self.dim(a)?)?)
    }

    fn compose(&self, f: &Morphism, g: &Morphism) -> Result<Morphism> {
        f.check_composable(g)?;
        let m = Self::matrix(g)?.matmul(Self::matrix(f)?)?;
        Ok(Morphism::new(ModelKind::Mat, f.dom().clone(), g.cod().clone(), Payload::Dense(m)))
    }

    fn tensor(&self, f: &Morphism, g: &Morphism) -> Result<Morphism> {
        let m = Self::matrix(f)?.kron(Self::matrix(g)?)?;
        Ok(Morphism::new(
            ModelKind::Mat,
            f.dom().tensor(g.dom()),
            f.cod().tensor(g.cod()),
            Payload::Dense(m),
        ))
    }

    fn par(&self, f: &Morphism, g: &Morphism) -> Result<Morphism> {
        let m = Self::matrix(f)?.kron(Self::matrix(g)?)?;
        Ok(Morphism::new(
            ModelKind::Mat,
            f.dom().par(g.dom()),
            f.cod().par(g.cod()),
            Payload::Dense(m),
        ))
    }

    fn dagger(&self, f: &Morphism) -> Result<Morphism> {
        let m = Self::matrix(f)?;
        let d = if self.mutation == Some(MatMutation::DropConjugation) {
            m.transpose()
        } else {
            m.dagger()
        };
        Ok(Morphism::new(ModelKind::Mat, f.cod().dag(), f.dom().dag(), Payload::Dense(d)))
    }

    fn structural(&self, name: StructuralMapName, args: &[ObjectExpr]) -> Result<Morphism> {
        let (dom, cod) = name.signature(args)?;
        let m = self.structural_matrix(name, args)?;
        self.arrow(&dom, &cod, m)
    }

    fn structural_inv(&self, name: StructuralMapName, args: &[ObjectExpr]) -> Result<Morphism> {
        let (dom, cod) = name.inverse_signature(args)?;
        let m = self.structural_matrix(name, args)?.inverse()?;
        self.arrow(&dom, &cod, m)
    }

    fn deviation(&self, f: &Morphism, g: &Morphism) -> Result<f64> {
        if !self.same_object(f.dom(), g.dom())? || !self.same_object(f.cod(), g.cod())? {
            return Err(Error::DomCodMismatch(format!(
                "{} → {} vs {} → {}",
                f.dom(),
                f.cod(),
                g.dom(),
                g.cod()
            )));
        }
        Self::matrix(f)?.max_abs_diff(Self::matrix(g)?)
    }

    fn include(&self, f: &Morphism) -> Result<Morphism> {
        Self::matrix(f)?;
        Ok(f.clone())
    }

    fn base(&self) -> &dyn Model {
        self
    }

    fn sample_object(&self, _kind: ObjectKind, rng: &mut TrialRng) -> ObjectExpr {
        ObjectExpr::dim(rng.random_range(1..=3))
    }

    fn sample_arrow(&self, dom: &ObjectExpr, rng: &mut TrialRng) -> Result<Morphism> {
        let cod = ObjectExpr::dim(rng.random_range(1..=3));
        self.sample_arrow_to(dom, &cod, rng)
    }

    fn sample_arrow_to(&self, dom: &ObjectExpr, cod: &ObjectExpr, rng: &mut TrialRng) -> Result<Morphism> {
        let m = random_dense(self.dim(cod)?, self.dim(dom)?, rng)?;
        self.arrow(dom, cod, m)
    }

    fn sample_unitary(&self, a: &ObjectExpr, rng: &mut TrialRng) -> Result<Morphism> {
        let u = random_unitary(self.dim(a)?, rng)?;
        self.arrow(a, a, u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mix_is_one() {
        let m = MatModel::new().structural(StructuralMapName::Mix, &[]).unwrap();
        assert_eq!(m.dense().unwrap(), &DenseMatrix::scalar(C64::new(1.0, 0.0)));
    }

    #[test]
    fn symmetry_is_commutation_permutation() {
        let (a, b) = (ObjectExpr::dim(2), ObjectExpr::dim(3));
        let c = MatModel::new().structural(StructuralMapName::SymTensor, &[a, b]).unwrap();
        let p = c.dense().unwrap();
        // σ(i·3 + j) = j·2 + i
        for i in 0..2 {
            for j in 0..3 {
                for row in 0..6 {
                    let want = if row == j * 2 + i { 1.0 } else { 0.0 };
                    assert_eq!(p[(row, i * 3 + j)], C64::new(want, 0.0));
                }
            }
        }
    }

    #[test]
    fn dimensions_of_compound_objects() {
        let m = MatModel::new();
        let a = ObjectExpr::dim(2).tensor(&ObjectExpr::dim(3).par(&ObjectExpr::bot())).dag();
        assert_eq!(m.dim(&a).unwrap(), 6);
        assert_eq!(m.dim(&ObjectExpr::dim(4).dual()).unwrap(), 4);
        assert!(m.dim(&ObjectExpr::dim(0)).is_err());
    }

    #[test]
    fn arrow_shape_is_checked() {
        let m = MatModel::new();
        let bad = m.arrow(&ObjectExpr::dim(2), &ObjectExpr::dim(3), DenseMatrix::identity(2).unwrap());
        assert!(matches!(bad, Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn duality_maps_have_no_inverse() {
        let err = MatModel::new().structural_inv(StructuralMapName::DualUnit, &[ObjectExpr::dim(2)]);
        assert!(matches!(err, Err(Error::TypingError(_))));
    }
}
