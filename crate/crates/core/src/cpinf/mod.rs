//! Channels over a model: Kraus morphisms `(f : A → U ⊕ B, U)` up to
//! indistinguishability, with the category, monoidal and dagger structure,
//! the functors `Q` and `N`, Choi matrices and environment structures.
//!
//! Every operation here works over the standard instance of the morphism's
//! model. Ancillas are compared only through the equivalence relation.

pub mod choi;
pub mod env;
pub mod equiv;
pub mod sample;

use crate::error::{Error, Result};
use crate::model::matc::{kraus_blocks, DenseMatrix, MatModel};
use crate::model::{standard_model, Model, ModelKind};
use crate::morphism::Morphism;
use crate::object::ObjectExpr;
use crate::structural::StructuralMapName as S;

pub use choi::{pure_decomposition, purify, to_choi, ChoiMatrix, PSD_FLOOR};
pub use env::{discard_through, env_check, env_discard, initiality_probe, EnvStructure, InitialityReport};
pub use equiv::{
    channel_deviation, equiv_decide, equiv_decide_tol, equiv_testmap_oracle, Channel, ChannelForm, OracleOutcome,
    TestMapSampler, TestMapWitness,
};
pub use sample::{isometric_padding, perturbed, sample_kraus, unitarily_equivalent};

/// A channel representative: body `f : A → U ⊕ B` with unitary ancilla `U`.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausMorphism {
    dom: ObjectExpr,
    cod: ObjectExpr,
    ancilla: ObjectExpr,
    body: Morphism,
}

impl KrausMorphism {
    pub fn model(&self) -> ModelKind {
        self.body.model()
    }

    pub fn dom(&self) -> &ObjectExpr {
        &self.dom
    }

    pub fn cod(&self) -> &ObjectExpr {
        &self.cod
    }

    pub fn ancilla(&self) -> &ObjectExpr {
        &self.ancilla
    }

    pub fn body(&self) -> &Morphism {
        &self.body
    }

    /// Body matrix and ancilla dimension, for matrix-backed finite channels.
    pub fn dense_body(&self) -> Result<(DenseMatrix, usize)> {
        match self.model() {
            ModelKind::Mat => {
                let u = MatModel::new().dim(&self.ancilla)?;
                let f = self.body.dense().ok_or_else(|| Error::ModelMismatch {
                    left: "mat".into(),
                    right: self.model().to_string(),
                })?;
                Ok((f.clone(), u))
            }
            ModelKind::FMat => {
                let m = self.body.sparse().ok_or_else(|| Error::ModelMismatch {
                    left: "fmat".into(),
                    right: self.model().to_string(),
                })?;
                let fm = crate::model::FMatModel::new();
                let u = fm
                    .interpret(&self.ancilla)?
                    .size()
                    .ok_or_else(|| Error::unsupported("fmat", "infinite ancilla"))?;
                Ok((m.to_dense()?, u))
            }
            ModelKind::Cplane => Err(Error::unsupported("cplane", "matrix bodies")),
        }
    }

    /// Kraus blocks `M_i : A → B`, one per ancilla basis vector.
    pub fn blocks(&self) -> Result<Vec<DenseMatrix>> {
        let (f, u) = self.dense_body()?;
        kraus_blocks(&f, u)
    }
}

fn model_of(f: &Morphism) -> &'static dyn Model {
    standard_model(f.model())
}

/// Validates `f : A → U ⊕ B` as a Kraus map with ancilla `U`.
pub fn kraus_new(f: Morphism, u: &ObjectExpr) -> Result<KrausMorphism> {
    let (head, b) = f
        .cod()
        .as_par()
        .ok_or_else(|| Error::TypingError(format!("Kraus body codomain {} is not of the form U ⊕ B", f.cod())))?;
    if head != u {
        return Err(Error::TypingError(format!("body codomain {} does not start with ancilla {u}", f.cod())));
    }
    let m = model_of(&f);
    if !m.is_unitary(u)? {
        return Err(Error::TypingError(format!("ancilla {u} is not a unitary object")));
    }
    let (dom, cod) = (f.dom().clone(), b.clone());
    Ok(KrausMorphism {
        dom,
        cod,
        ancilla: u.clone(),
        body: f,
    })
}

/// `Q(f) = [f ; (u⊕ᴸ)⁻¹ ; ((n⊥)⁻¹ ⊕ 1), ⊥]`.
pub fn functor_q(f: &Morphism) -> Result<KrausMorphism> {
    let m = model_of(f);
    let b = f.cod();
    let bot = ObjectExpr::bot();
    let body = m.chain(&[
        f,
        &m.structural_inv(S::UnitParLeft, std::slice::from_ref(b))?,
        &m.par(&m.structural_inv(S::StrengthBot, &[])?, &m.identity(b)?)?,
    ])?;
    kraus_new(body, &bot)
}

/// `1_A = Q(1_A)`.
pub fn kraus_identity(model: ModelKind, a: &ObjectExpr) -> Result<KrausMorphism> {
    functor_q(&standard_model(model).identity(a)?)
}

/// `N = Q ∘ M` on a morphism of the unitary subcategory.
pub fn functor_n(model: ModelKind, f: &Morphism) -> Result<KrausMorphism> {
    functor_q(&standard_model(model).include(f)?)
}

fn check_pair(k1: &KrausMorphism, k2: &KrausMorphism) -> Result<&'static dyn Model> {
    if k1.model() != k2.model() {
        return Err(Error::ModelMismatch {
            left: k1.model().to_string(),
            right: k2.model().to_string(),
        });
    }
    Ok(standard_model(k1.model()))
}

/// `[(f, U)] ; [(g, V)] = [f ; (1 ⊕ g) ; a⊕, U ⊕ V]`.
pub fn kraus_compose(k1: &KrausMorphism, k2: &KrausMorphism) -> Result<KrausMorphism> {
    let m = check_pair(k1, k2)?;
    if k1.cod != k2.dom {
        return Err(Error::TypingError(format!("cannot compose channels: {} is not {}", k1.cod, k2.dom)));
    }
    let (u, v, c) = (&k1.ancilla, &k2.ancilla, &k2.cod);
    let body = m.chain(&[
        &k1.body,
        &m.par(&m.identity(u)?, &k2.body)?,
        &m.structural(S::AssocPar, &[u.clone(), v.clone(), c.clone()])?,
    ])?;
    kraus_new(body, &u.par(v))
}

/// Composes a non-empty chain of channels left to right.
pub fn kraus_compose_all(chain: &[&KrausMorphism]) -> Result<KrausMorphism> {
    let (first, rest) = chain
        .split_first()
        .ok_or_else(|| Error::InvalidValue("empty composition chain".into()))?;
    rest.iter().try_fold((*first).clone(), |acc, k| kraus_compose(&acc, k))
}

/// `k₁ ⊗̂ k₂`: the bodies side by side, the ancillas pulled to the front
/// through the mixor and gathered with the associators and `c⊗`.
pub fn kraus_tensor(k1: &KrausMorphism, k2: &KrausMorphism) -> Result<KrausMorphism> {
    let m = check_pair(k1, k2)?;
    let (u1, b1, u2, b2) = (&k1.ancilla, &k1.cod, &k2.ancilla, &k2.cod);
    let id = |x: &ObjectExpr| m.identity(x);
    let steps = [
        m.tensor(&k1.body, &k2.body)?,
        m.tensor(
            &m.structural_inv(S::Mixor, &[u1.clone(), b1.clone()])?,
            &m.structural_inv(S::Mixor, &[u2.clone(), b2.clone()])?,
        )?,
        m.structural_inv(S::AssocTensor, &[u1.clone(), b1.clone(), u2.tensor(b2)])?,
        m.tensor(&id(u1)?, &m.structural(S::AssocTensor, &[b1.clone(), u2.clone(), b2.clone()])?)?,
        m.tensor(
            &id(u1)?,
            &m.tensor(&m.structural(S::SymTensor, &[b1.clone(), u2.clone()])?, &id(b2)?)?,
        )?,
        m.tensor(&id(u1)?, &m.structural_inv(S::AssocTensor, &[u2.clone(), b1.clone(), b2.clone()])?)?,
        m.structural(S::AssocTensor, &[u1.clone(), u2.clone(), b1.tensor(b2)])?,
        m.tensor(&m.structural(S::Mixor, &[u1.clone(), u2.clone()])?, &id(&b1.tensor(b2))?)?,
        m.structural(S::Mixor, &[u1.par(u2), b1.tensor(b2)])?,
    ];
    let refs: Vec<&Morphism> = steps.iter().collect();
    kraus_new(m.chain(&refs)?, &u1.par(u2))
}

/// `k₁ ⊕̂ k₂`: as [`kraus_tensor`] with `⊕` throughout.
pub fn kraus_par(k1: &KrausMorphism, k2: &KrausMorphism) -> Result<KrausMorphism> {
    let m = check_pair(k1, k2)?;
    let (u1, b1, u2, b2) = (&k1.ancilla, &k1.cod, &k2.ancilla, &k2.cod);
    let id = |x: &ObjectExpr| m.identity(x);
    let steps = [
        m.par(&k1.body, &k2.body)?,
        m.structural_inv(S::AssocPar, &[u1.clone(), b1.clone(), u2.par(b2)])?,
        m.par(&id(u1)?, &m.structural(S::AssocPar, &[b1.clone(), u2.clone(), b2.clone()])?)?,
        m.par(
            &id(u1)?,
            &m.par(&m.structural(S::SymPar, &[b1.clone(), u2.clone()])?, &id(b2)?)?,
        )?,
        m.par(&id(u1)?, &m.structural_inv(S::AssocPar, &[u2.clone(), b1.clone(), b2.clone()])?)?,
        m.structural(S::AssocPar, &[u1.clone(), u2.clone(), b1.par(b2)])?,
    ];
    let refs: Vec<&Morphism> = steps.iter().collect();
    kraus_new(m.chain(&refs)?, &u1.par(u2))
}

/// The adjoint channel `B† → A†` with ancilla `U*`. In the matrix model the
/// body is `Σ_i e_i ⊗ M_i†`; elsewhere it is [`kraus_dagger_wired`].
pub fn kraus_dagger(k: &KrausMorphism) -> Result<KrausMorphism> {
    if k.model() != ModelKind::Mat {
        return kraus_dagger_wired(k);
    }
    let blocks = k.blocks()?;
    let daggers: Vec<DenseMatrix> = blocks.iter().map(DenseMatrix::dagger).collect();
    let ancilla = k.ancilla.dual();
    let body = MatModel::new().arrow(&k.cod.dag(), &ancilla.par(&k.dom.dag()), DenseMatrix::vstack(&daggers)?)?;
    kraus_new(body, &ancilla)
}

/// The adjoint channel built from the unitary duality `(η, ε)` on `U`:
/// `(u⊗ᴸ)⁻¹ ; (η_U ⊗ 1) ; δᴿ ; (1 ⊕ (φ_U ⊗ 1)) ; (1 ⊕ λ⊗) ; (1 ⊕ f†)`.
pub fn kraus_dagger_wired(k: &KrausMorphism) -> Result<KrausMorphism> {
    let m = standard_model(k.model());
    let (u, b) = (&k.ancilla, &k.cod);
    let us = u.dual();
    let bd = b.dag();
    let ius = m.identity(&us)?;
    let body = m.chain(&[
        &m.structural_inv(S::UnitTensorLeft, std::slice::from_ref(&bd))?,
        &m.tensor(&m.structural(S::DualUnit, std::slice::from_ref(u))?, &m.identity(&bd)?)?,
        &m.structural(S::DistRight, &[us.clone(), u.clone(), bd.clone()])?,
        &m.par(&ius, &m.tensor(&m.structural(S::Unitary, std::slice::from_ref(u))?, &m.identity(&bd)?)?)?,
        &m.par(&ius, &m.structural(S::LaxTensor, &[u.clone(), b.clone()])?)?,
        &m.par(&ius, &m.dagger(&k.body)?)?,
    ])?;
    kraus_new(body, &us)
}

/// Channel action `ρ ↦ Σ_i M_i ρ M_i†` in the matrix model.
pub fn kraus_apply(k: &KrausMorphism, rho: &DenseMatrix) -> Result<DenseMatrix> {
    if k.model() != ModelKind::Mat {
        return Err(Error::unsupported(k.model().id(), "applying channels to states"));
    }
    let (f, u) = k.dense_body()?;
    crate::model::matc::apply_channel(&f, u, rho)
}
