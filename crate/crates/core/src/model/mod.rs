//! Concrete models of a mixed unitary category.
//!
//! A model interprets [`ObjectExpr`] syntax, realizes the morphism algebra on
//! its payloads, supplies every structural map, and knows its unitary
//! subcategory together with the inclusion functor `M`.

pub mod cplane;
pub mod fmat;
pub mod matc;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::morphism::Morphism;
use crate::object::ObjectExpr;
use crate::rng::TrialRng;
use crate::structural::StructuralMapName;

pub use cplane::CplaneModel;
pub use fmat::FMatModel;
pub use matc::MatModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Mat,
    FMat,
    Cplane,
}

impl ModelKind {
    pub const ALL: [ModelKind; 3] = [ModelKind::Mat, ModelKind::FMat, ModelKind::Cplane];

    pub fn id(self) -> &'static str {
        match self {
            ModelKind::Mat => "mat",
            ModelKind::FMat => "fmat",
            ModelKind::Cplane => "cplane",
        }
    }

    /// Default comparison tolerance for law checks in this model.
    pub fn default_tolerance(self) -> f64 {
        match self {
            ModelKind::Mat | ModelKind::FMat => 1e-9,
            ModelKind::Cplane => cplane::CPLANE_TOL,
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "mat" => Ok(ModelKind::Mat),
            "fmat" => Ok(ModelKind::FMat),
            "cplane" => Ok(ModelKind::Cplane),
            _ => Err(Error::UnknownModel(s.to_string())),
        }
    }
}

/// Which kind of object a law argument ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ObjectKind {
    /// Any object of the ambient category.
    Any,
    /// An object carrying unitary structure.
    Unitary,
    /// An object of the unitary subcategory, to be pushed through `M`.
    Base,
}

pub trait Model: Send + Sync {
    fn kind(&self) -> ModelKind;

    /// Identifier used in reports; mutated fixtures append a suffix.
    fn name(&self) -> String;

    fn check_object(&self, a: &ObjectExpr) -> Result<()>;

    /// Whether two expressions denote the same object.
    fn same_object(&self, a: &ObjectExpr, b: &ObjectExpr) -> Result<bool>;

    fn is_unitary(&self, a: &ObjectExpr) -> Result<bool>;

    fn identity(&self, a: &ObjectExpr) -> Result<Morphism>;

    fn compose(&self, f: &Morphism, g: &Morphism) -> Result<Morphism>;

    fn tensor(&self, f: &Morphism, g: &Morphism) -> Result<Morphism>;

    fn par(&self, f: &Morphism, g: &Morphism) -> Result<Morphism>;

    fn dagger(&self, f: &Morphism) -> Result<Morphism>;

    fn structural(&self, name: StructuralMapName, args: &[ObjectExpr]) -> Result<Morphism>;

    fn structural_inv(&self, name: StructuralMapName, args: &[ObjectExpr]) -> Result<Morphism>;

    /// Distance between two parallel morphisms.
    fn deviation(&self, f: &Morphism, g: &Morphism) -> Result<f64>;

    /// The functor `M` on a morphism of [`Model::base`].
    fn include(&self, f: &Morphism) -> Result<Morphism>;

    /// The unitary category `M` starts from.
    fn base(&self) -> &dyn Model;

    /// Nonzero when the model's interpretation of `a` violates an object-level
    /// invariant; only meaningful for models with such invariants.
    fn object_defect(&self, _a: &ObjectExpr) -> Result<f64> {
        Ok(0.0)
    }

    fn sample_object(&self, kind: ObjectKind, rng: &mut TrialRng) -> ObjectExpr;

    /// A random arrow out of `dom` with a freshly sampled codomain.
    fn sample_arrow(&self, dom: &ObjectExpr, rng: &mut TrialRng) -> Result<Morphism>;

    fn sample_arrow_to(&self, dom: &ObjectExpr, cod: &ObjectExpr, rng: &mut TrialRng) -> Result<Morphism>;

    /// A random unitary isomorphism `a → a`.
    fn sample_unitary(&self, a: &ObjectExpr, rng: &mut TrialRng) -> Result<Morphism>;

    /// Composes a non-empty chain left to right.
    fn chain(&self, chain: &[&Morphism]) -> Result<Morphism> {
        let (first, rest) = chain
            .split_first()
            .ok_or_else(|| Error::InvalidValue("empty composition chain".into()))?;
        rest.iter()
            .try_fold((*first).clone(), |acc, g| self.compose(&acc, g))
    }
}

static MAT: MatModel = MatModel::new();
static FMAT: FMatModel = FMatModel::new();
static CPLANE: CplaneModel = CplaneModel::new();

/// The unmutated instance of a model.
pub fn standard_model(kind: ModelKind) -> &'static dyn Model {
    match kind {
        ModelKind::Mat => &MAT,
        ModelKind::FMat => &FMAT,
        ModelKind::Cplane => &CPLANE,
    }
}
