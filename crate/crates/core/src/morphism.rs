//! Model-tagged arrows and the model-independent morphism algebra.
//!
//! The free functions here dispatch on the model tag of their arguments to the
//! standard instance of that model. Code that needs a mutated model (mutation
//! tests) calls the [`Model`] trait directly.

use crate::error::{Error, Result};
use crate::model::cplane::CNum;
use crate::model::fmat::SparseMatrix;
use crate::model::matc::DenseMatrix;
use crate::model::{standard_model, ModelKind};
use crate::object::ObjectExpr;
use crate::structural::StructuralMapName;

/// An arrow of the discrete plane, recorded by the numbers its endpoints
/// denote. `defect` tracks the largest relative mismatch accepted so far.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointArrow {
    pub dom: CNum,
    pub cod: CNum,
    pub defect: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Payload {
    Dense(DenseMatrix),
    Sparse(SparseMatrix),
    Point(PointArrow),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Morphism {
    model: ModelKind,
    dom: ObjectExpr,
    cod: ObjectExpr,
    payload: Payload,
}

impl Morphism {
    /// Assembles a morphism without validating the payload; models call this
    /// after checking shapes.
    pub(crate) fn new(model: ModelKind, dom: ObjectExpr, cod: ObjectExpr, payload: Payload) -> Self {
        Morphism {
            model,
            dom,
            cod,
            payload,
        }
    }

    pub fn model(&self) -> ModelKind {
        self.model
    }

    pub fn dom(&self) -> &ObjectExpr {
        &self.dom
    }

    pub fn cod(&self) -> &ObjectExpr {
        &self.cod
    }

    pub fn payload(&self) -> &Payload {
        &self.payload
    }

    pub fn dense(&self) -> Option<&DenseMatrix> {
        match &self.payload {
            Payload::Dense(m) => Some(m),
            _ => None,
        }
    }

    pub fn sparse(&self) -> Option<&SparseMatrix> {
        match &self.payload {
            Payload::Sparse(m) => Some(m),
            _ => None,
        }
    }

    pub(crate) fn check_same_model(&self, other: &Morphism) -> Result<()> {
        if self.model != other.model {
            return Err(Error::ModelMismatch {
                left: self.model.to_string(),
                right: other.model.to_string(),
            });
        }
        Ok(())
    }

    /// `self ; next` is defined when the codomain of `self` is syntactically
    /// the domain of `next`.
    pub(crate) fn check_composable(&self, next: &Morphism) -> Result<()> {
        self.check_same_model(next)?;
        if self.cod != next.dom {
            return Err(Error::ShapeMismatch(format!(
                "cannot compose: codomain {} is not domain {}",
                self.cod, next.dom
            )));
        }
        Ok(())
    }
}

/// Diagrammatic composition `f ; g`.
pub fn compose(f: &Morphism, g: &Morphism) -> Result<Morphism> {
    f.check_same_model(g)?;
    standard_model(f.model).compose(f, g)
}

/// Composes a non-empty chain left to right.
pub fn compose_all(chain: &[&Morphism]) -> Result<Morphism> {
    let (first, rest) = chain
        .split_first()
        .ok_or_else(|| Error::InvalidValue("empty composition chain".into()))?;
    rest.iter()
        .try_fold((*first).clone(), |acc, g| compose(&acc, g))
}

pub fn tensor(f: &Morphism, g: &Morphism) -> Result<Morphism> {
    f.check_same_model(g)?;
    standard_model(f.model).tensor(f, g)
}

pub fn par(f: &Morphism, g: &Morphism) -> Result<Morphism> {
    f.check_same_model(g)?;
    standard_model(f.model).par(f, g)
}

pub fn dagger(f: &Morphism) -> Result<Morphism> {
    standard_model(f.model).dagger(f)
}

pub fn identity(model: ModelKind, a: &ObjectExpr) -> Result<Morphism> {
    standard_model(model).identity(a)
}

pub fn structural(model: ModelKind, name: StructuralMapName, args: &[ObjectExpr]) -> Result<Morphism> {
    standard_model(model).structural(name, args)
}

pub fn structural_inv(model: ModelKind, name: StructuralMapName, args: &[ObjectExpr]) -> Result<Morphism> {
    standard_model(model).structural_inv(name, args)
}

/// True when `f` and `g` agree within `tol`: entrywise for matrix models,
/// as relative distance of the denoted numbers in the discrete plane.
pub fn equal_up_to(f: &Morphism, g: &Morphism, tol: f64) -> Result<bool> {
    f.check_same_model(g)?;
    Ok(standard_model(f.model).deviation(f, g)? <= tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::matc::{MatModel, C64};

    fn scalar(z: f64) -> Morphism {
        MatModel::new()
            .arrow(&ObjectExpr::dim(1), &ObjectExpr::dim(1), DenseMatrix::scalar(C64::new(z, 0.0)))
            .unwrap()
    }

    #[test]
    fn scalar_composition() {
        let f = scalar(2.0);
        let g = scalar(3.0);
        assert_eq!(compose(&f, &g).unwrap(), scalar(6.0));
    }

    #[test]
    fn identity_laws() {
        let a = ObjectExpr::dim(2);
        let b = ObjectExpr::dim(3);
        let m = DenseMatrix::from_real_rows(&[&[1.0, 2.0], &[3.0, 4.0], &[5.0, 6.0]]).unwrap();
        let f = MatModel::new().arrow(&a, &b, m).unwrap();
        let ida = identity(ModelKind::Mat, &a).unwrap();
        let idb = identity(ModelKind::Mat, &b).unwrap();
        assert_eq!(compose(&ida, &f).unwrap(), f);
        assert_eq!(compose(&f, &idb).unwrap(), f);
    }

    #[test]
    fn composition_requires_matching_syntax() {
        let a = ObjectExpr::dim(2);
        let f = identity(ModelKind::Mat, &a).unwrap();
        let g = identity(ModelKind::Mat, &a.dag()).unwrap();
        assert!(matches!(compose(&f, &g), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn models_do_not_mix() {
        let f = scalar(1.0);
        let g = standard_model(ModelKind::Cplane)
            .identity(&ObjectExpr::num(CNum::ONE))
            .unwrap();
        assert!(matches!(compose(&f, &g), Err(Error::ModelMismatch { .. })));
        assert!(matches!(tensor(&f, &g), Err(Error::ModelMismatch { .. })));
    }

    #[test]
    fn tolerance_comparisons() {
        let f = scalar(1.0);
        assert!(equal_up_to(&f, &f, 1e-9).unwrap());
        assert!(equal_up_to(&f, &scalar(1.0 + 2e-10), 1e-9).unwrap());
        assert!(!equal_up_to(&f, &scalar(1.1), 1e-9).unwrap());
    }

    #[test]
    fn tensor_of_identities() {
        let (a, b) = (ObjectExpr::dim(2), ObjectExpr::dim(3));
        let lhs = tensor(&identity(ModelKind::Mat, &a).unwrap(), &identity(ModelKind::Mat, &b).unwrap())
            .unwrap();
        assert_eq!(lhs, identity(ModelKind::Mat, &a.tensor(&b)).unwrap());
    }

    #[test]
    fn dagger_retypes_and_conjugates() {
        let a = ObjectExpr::dim(2);
        let m = DenseMatrix::from_rows(&[
            vec![C64::new(0.0, 1.0), C64::new(0.0, 0.0)],
            vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0)],
        ])
        .unwrap();
        let f = MatModel::new().arrow(&a, &a, m).unwrap();
        let d = dagger(&f).unwrap();
        assert_eq!(d.dom(), &a.dag());
        assert_eq!(d.dense().unwrap()[(0, 0)], C64::new(0.0, -1.0));
    }
}
