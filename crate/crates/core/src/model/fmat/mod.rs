//! A desk-scale fragment of finiteness matrices.
//!
//! Objects are finiteness spaces. Dimensions embed as `({0..n-1}, P, P)`,
//! both monoidal products are the product space (finite carriers only) and
//! the dagger swaps the two families. Structural maps carry the same entries
//! as in the matrix model, retyped onto the interpreted spaces; this makes
//! the inclusion of matrices strict.

pub mod space;
pub mod sparse;

use std::sync::Arc;

use rand::seq::index::sample;
use rand::Rng;

pub use space::{
    check_finiteness_relation, check_finiteness_space, check_finiteness_space_with, perp, perp_with,
    FinitenessSpace, IndexSet, SetFamily, Subset,
};
pub use sparse::{fmat_compose, fmat_dagger, include_mat, SparseMatrix};

use crate::error::{Error, Result};
use crate::model::matc::{MatModel, MAX_ENTRIES};
use crate::model::{standard_model, Model, ModelKind, ObjectKind};
use crate::morphism::{Morphism, Payload};
use crate::object::{Atom, ObjectExpr};
use crate::rng::{random_dense, random_unitary, TrialRng};
use crate::structural::StructuralMapName;

/// Labels of sampled spaces are drawn from `0..LABEL_RANGE`.
const LABEL_RANGE: usize = 10;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FMatModel {
    skip_perp_closure: bool,
}

impl FMatModel {
    pub const fn new() -> Self {
        FMatModel {
            skip_perp_closure: false,
        }
    }

    /// A corrupted instance whose `perp` on finite carriers forgets to close
    /// downward.
    pub const fn skip_closure() -> Self {
        FMatModel {
            skip_perp_closure: true,
        }
    }

    pub fn interpret(&self, a: &ObjectExpr) -> Result<FinitenessSpace> {
        let s = match a {
            ObjectExpr::Base(Atom::Dim(0)) => {
                return Err(Error::InvalidValue("dimension 0 is not an object".into()))
            }
            ObjectExpr::Base(Atom::Dim(n)) => FinitenessSpace::range(*n),
            ObjectExpr::Base(Atom::Space(s)) => s.as_ref().clone(),
            ObjectExpr::Base(other) => {
                return Err(Error::unsupported("fmat", format!("base object {other}")))
            }
            ObjectExpr::Tensor(l, r) | ObjectExpr::Par(l, r) => self.interpret(l)?.product(&self.interpret(r)?)?,
            ObjectExpr::TensorUnit | ObjectExpr::ParUnit => FinitenessSpace::range(1),
            ObjectExpr::Dagger(x) | ObjectExpr::Dual(x) => self.interpret(x)?.dagger(),
        };
        if s.size().is_some_and(|n| n > MAX_ENTRIES) {
            return Err(Error::TooLarge(s.size().unwrap_or(0)));
        }
        Ok(s)
    }

    /// The same expression with every finite base space replaced by its size.
    fn as_dims(&self, a: &ObjectExpr) -> Result<ObjectExpr> {
        Ok(match a {
            ObjectExpr::Base(Atom::Space(s)) => {
                let n = s
                    .size()
                    .ok_or_else(|| Error::unsupported("fmat", format!("structural maps at {s}")))?;
                ObjectExpr::dim(n)
            }
            ObjectExpr::Base(_) | ObjectExpr::TensorUnit | ObjectExpr::ParUnit => a.clone(),
            ObjectExpr::Tensor(l, r) => self.as_dims(l)?.tensor(&self.as_dims(r)?),
            ObjectExpr::Par(l, r) => self.as_dims(l)?.par(&self.as_dims(r)?),
            ObjectExpr::Dagger(x) => self.as_dims(x)?.dag(),
            ObjectExpr::Dual(x) => self.as_dims(x)?.dual(),
        })
    }

    /// Wraps a sparse matrix as an arrow, checking it sits on the interpreted
    /// endpoints.
    pub fn arrow(&self, dom: &ObjectExpr, cod: &ObjectExpr, m: SparseMatrix) -> Result<Morphism> {
        let (s, t) = (self.interpret(dom)?, self.interpret(cod)?);
        if m.src() != &s || m.tgt() != &t {
            return Err(Error::SpaceMismatch(format!(
                "matrix {} → {} used as {dom} → {cod}",
                m.src(),
                m.tgt()
            )));
        }
        Ok(Morphism::new(ModelKind::FMat, dom.clone(), cod.clone(), Payload::Sparse(m)))
    }

    fn matrix(f: &Morphism) -> Result<&SparseMatrix> {
        f.sparse().ok_or_else(|| Error::ModelMismatch {
            left: "fmat".into(),
            right: f.model().to_string(),
        })
    }

    fn arrow_from_dense(&self, dom: &ObjectExpr, cod: &ObjectExpr, d: &crate::model::matc::DenseMatrix) -> Result<Morphism> {
        let m = SparseMatrix::from_dense(self.interpret(dom)?, self.interpret(cod)?, d)?;
        Ok(Morphism::new(ModelKind::FMat, dom.clone(), cod.clone(), Payload::Sparse(m)))
    }

    fn structural_dense(&self, name: StructuralMapName, args: &[ObjectExpr], inverse: bool) -> Result<Morphism> {
        let (dom, cod) = if inverse {
            name.inverse_signature(args)?
        } else {
            name.signature(args)?
        };
        let dims: Vec<ObjectExpr> = args.iter().map(|a| self.as_dims(a)).collect::<Result<_>>()?;
        let mut d = MatModel::new().structural_matrix(name, &dims)?;
        if inverse {
            d = d.inverse()?;
        }
        self.arrow_from_dense(&dom, &cod, &d)
    }

    fn random_space(rng: &mut TrialRng) -> FinitenessSpace {
        let n = rng.random_range(1..=3);
        let labels = sample(rng, LABEL_RANGE, n).into_iter().map(|i| i as u64).collect();
        FinitenessSpace::finite(labels).unwrap_or_else(|_| FinitenessSpace::range(n))
    }
}

impl Model for FMatModel {
    fn kind(&self) -> ModelKind {
        ModelKind::FMat
    }

    fn name(&self) -> String {
        if self.skip_perp_closure {
            "fmat+skip-closure".into()
        } else {
            "fmat".into()
        }
    }

    fn check_object(&self, a: &ObjectExpr) -> Result<()> {
        self.interpret(a).map(|_| ())
    }

    fn same_object(&self, a: &ObjectExpr, b: &ObjectExpr) -> Result<bool> {
        Ok(self.interpret(a)? == self.interpret(b)?)
    }

    fn is_unitary(&self, a: &ObjectExpr) -> Result<bool> {
        Ok(self.interpret(a)?.is_finite())
    }

    fn identity(&self, a: &ObjectExpr) -> Result<Morphism> {
        let m = SparseMatrix::identity(&self.interpret(a)?)?;
        Ok(Morphism::new(ModelKind::FMat, a.clone(), a.clone(), Payload::Sparse(m)))
    }

    fn compose(&self, f: &Morphism, g: &Morphism) -> Result<Morphism> {
        f.check_composable(g)?;
        let m = fmat_compose(Self::matrix(f)?, Self::matrix(g)?)?;
        Ok(Morphism::new(ModelKind::FMat, f.dom().clone(), g.cod().clone(), Payload::Sparse(m)))
    }

    fn tensor(&self, f: &Morphism, g: &Morphism) -> Result<Morphism> {
        let m = Self::matrix(f)?.kron(Self::matrix(g)?)?;
        Ok(Morphism::new(
            ModelKind::FMat,
            f.dom().tensor(g.dom()),
            f.cod().tensor(g.cod()),
            Payload::Sparse(m),
        ))
    }

    fn par(&self, f: &Morphism, g: &Morphism) -> Result<Morphism> {
        let m = Self::matrix(f)?.kron(Self::matrix(g)?)?;
        Ok(Morphism::new(
            ModelKind::FMat,
            f.dom().par(g.dom()),
            f.cod().par(g.cod()),
            Payload::Sparse(m),
        ))
    }

    fn dagger(&self, f: &Morphism) -> Result<Morphism> {
        let m = fmat_dagger(Self::matrix(f)?);
        Ok(Morphism::new(ModelKind::FMat, f.cod().dag(), f.dom().dag(), Payload::Sparse(m)))
    }

    fn structural(&self, name: StructuralMapName, args: &[ObjectExpr]) -> Result<Morphism> {
        self.structural_dense(name, args, false)
    }

    fn structural_inv(&self, name: StructuralMapName, args: &[ObjectExpr]) -> Result<Morphism> {
        self.structural_dense(name, args, true)
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
        let (a, b) = (Self::matrix(f)?, Self::matrix(g)?);
        // carriers agree, so labels line up
        Ok(a.max_abs_diff(b))
    }

    fn include(&self, f: &Morphism) -> Result<Morphism> {
        let d = f.dense().ok_or_else(|| Error::ModelMismatch {
            left: "mat".into(),
            right: f.model().to_string(),
        })?;
        self.arrow_from_dense(f.dom(), f.cod(), d)
    }

    fn base(&self) -> &dyn Model {
        standard_model(ModelKind::Mat)
    }

    fn object_defect(&self, a: &ObjectExpr) -> Result<f64> {
        let s = self.interpret(a)?;
        let ok = check_finiteness_space_with(s.carrier(), s.family_a(), s.family_b(), !self.skip_perp_closure);
        Ok(if ok { 0.0 } else { 1.0 })
    }

    fn sample_object(&self, kind: ObjectKind, rng: &mut TrialRng) -> ObjectExpr {
        match kind {
            ObjectKind::Base => ObjectExpr::dim(rng.random_range(1..=3)),
            ObjectKind::Any | ObjectKind::Unitary => ObjectExpr::Base(Atom::Space(Arc::new(Self::random_space(rng)))),
        }
    }

    fn sample_arrow(&self, dom: &ObjectExpr, rng: &mut TrialRng) -> Result<Morphism> {
        let cod = self.sample_object(ObjectKind::Any, rng);
        self.sample_arrow_to(dom, &cod, rng)
    }

    fn sample_arrow_to(&self, dom: &ObjectExpr, cod: &ObjectExpr, rng: &mut TrialRng) -> Result<Morphism> {
        let (s, t) = (self.interpret(dom)?, self.interpret(cod)?);
        match (s.size(), t.size()) {
            (Some(n), Some(m)) => {
                let d = random_dense(m, n, rng)?;
                let sm = SparseMatrix::from_dense(s, t, &d)?;
                Ok(Morphism::new(ModelKind::FMat, dom.clone(), cod.clone(), Payload::Sparse(sm)))
            }
            _ => Err(Error::unsupported("fmat", "random arrows between infinite spaces")),
        }
    }

    fn sample_unitary(&self, a: &ObjectExpr, rng: &mut TrialRng) -> Result<Morphism> {
        let s = self.interpret(a)?;
        let n = s
            .size()
            .ok_or_else(|| Error::unsupported("fmat", "unitaries on infinite spaces"))?;
        let u = random_unitary(n, rng)?;
        self.arrow_from_dense(a, a, &u)
    }
}
