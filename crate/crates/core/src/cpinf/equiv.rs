//! Deciding when two Kraus morphisms are the same channel.

use rand::seq::IndexedRandom;

use super::choi::{to_choi, ChoiMatrix};
use super::KrausMorphism;
use crate::error::{Error, Result};
use crate::model::cplane::{rel_defect, CNum, CplaneModel};
use crate::model::matc::DenseMatrix;
use crate::model::{standard_model, ModelKind};
use crate::rng::{random_dense, TrialRng};

/// Canonical form of a channel.
#[derive(Debug, Clone, PartialEq)]
pub enum ChannelForm {
    Choi(ChoiMatrix),
    /// `(c, c', r)` for a map `(=, r) : c → c'`; the ratio is irrelevant when
    /// `c' = 0` and recorded as `None`.
    Plane { dom: CNum, cod: CNum, ratio: Option<f64> },
}

/// An equivalence class of Kraus morphisms, with one representative.
#[derive(Debug, Clone)]
pub struct Channel {
    form: ChannelForm,
    representative: KrausMorphism,
}

impl Channel {
    pub fn of(k: &KrausMorphism) -> Result<Channel> {
        let form = match k.model() {
            ModelKind::Mat | ModelKind::FMat => ChannelForm::Choi(to_choi(k)?),
            ModelKind::Cplane => {
                let p = CplaneModel::new().kraus_of(k.dom(), k.cod(), k.ancilla())?;
                ChannelForm::Plane {
                    dom: p.dom,
                    cod: p.cod,
                    ratio: (!p.cod.is_zero()).then_some(p.ancilla),
                }
            }
        };
        Ok(Channel {
            form,
            representative: k.clone(),
        })
    }

    pub fn form(&self) -> &ChannelForm {
        &self.form
    }

    pub fn representative(&self) -> &KrausMorphism {
        &self.representative
    }

    /// Distance between canonical forms.
    pub fn distance(&self, other: &Channel) -> Result<f64> {
        match (&self.form, &other.form) {
            (ChannelForm::Choi(c1), ChannelForm::Choi(c2)) => c1.max_abs_diff(c2),
            (
                ChannelForm::Plane { dom: d1, cod: c1, ratio: r1 },
                ChannelForm::Plane { dom: d2, cod: c2, ratio: r2 },
            ) => {
                let ends = rel_defect(*d1, *d2).max(rel_defect(*c1, *c2));
                if ends > crate::model::cplane::CPLANE_TOL {
                    return Err(Error::DomCodMismatch(format!("{d1} → {c1} vs {d2} → {c2}")));
                }
                Ok(match (r1, r2) {
                    (Some(x), Some(y)) => rel_defect(CNum::real(*x), CNum::real(*y)),
                    _ => 0.0,
                })
            }
            _ => Err(Error::ModelMismatch {
                left: self.representative.model().to_string(),
                right: other.representative.model().to_string(),
            }),
        }
    }
}

/// Distance between the channels of two Kraus morphisms with the same
/// (interpreted) endpoints.
pub fn channel_deviation(k1: &KrausMorphism, k2: &KrausMorphism) -> Result<f64> {
    if k1.model() != k2.model() {
        return Err(Error::ModelMismatch {
            left: k1.model().to_string(),
            right: k2.model().to_string(),
        });
    }
    let m = standard_model(k1.model());
    if !m.same_object(k1.dom(), k2.dom())? || !m.same_object(k1.cod(), k2.cod())? {
        return Err(Error::DomCodMismatch(format!(
            "{} → {} vs {} → {}",
            k1.dom(),
            k1.cod(),
            k2.dom(),
            k2.cod()
        )));
    }
    Channel::of(k1)?.distance(&Channel::of(k2)?)
}

/// `k₁ ∼ k₂` at the model's default tolerance.
pub fn equiv_decide(k1: &KrausMorphism, k2: &KrausMorphism) -> Result<bool> {
    equiv_decide_tol(k1, k2, k1.model().default_tolerance())
}

pub fn equiv_decide_tol(k1: &KrausMorphism, k2: &KrausMorphism, tol: f64) -> Result<bool> {
    Ok(channel_deviation(k1, k2)? <= tol)
}

/// Ranges for the test maps `h : B ⊗ C → X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestMapSampler {
    pub c_dims: Vec<usize>,
    pub x_dims: Vec<usize>,
}

impl Default for TestMapSampler {
    fn default() -> Self {
        TestMapSampler {
            c_dims: vec![1, 2, 3],
            x_dims: vec![1, 2],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TestMapWitness {
    pub trial: usize,
    pub c: usize,
    pub x: usize,
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleOutcome {
    pub consistent: bool,
    pub witness: Option<TestMapWitness>,
}

/// Relative tolerance of the test-map comparison.
pub const ORACLE_TOL: f64 = 1e-9;

/// Samples test maps `h : B ⊗ C → X` and compares, for each, the two glued
/// composites `(f ⊗ 1_C)† (1_U ⊗ h†h) (f ⊗ 1_C)` on `A ⊗ C`. In the matrix
/// model the mixors, unitary structure, preservator and laxors in the chain
/// are identities, so the chain reduces to these products.
pub fn equiv_testmap_oracle(
    k1: &KrausMorphism,
    k2: &KrausMorphism,
    trials: usize,
    sampler: &TestMapSampler,
    rng: &mut TrialRng,
) -> Result<OracleOutcome> {
    if k1.model() != ModelKind::Mat || k2.model() != ModelKind::Mat {
        return Err(Error::unsupported(k1.model().id(), "the test-map oracle"));
    }
    let (f1, u1) = k1.dense_body()?;
    let (f2, u2) = k2.dense_body()?;
    let (a, b) = (f1.cols(), f1.rows() / u1);
    if f2.cols() != a || f2.rows() / u2 != b {
        return Err(Error::DomCodMismatch(format!(
            "{} → {} vs {} → {}",
            k1.dom(),
            k1.cod(),
            k2.dom(),
            k2.cod()
        )));
    }
    for trial in 0..trials {
        let c = *sampler.c_dims.choose(rng).unwrap_or(&1);
        let x = *sampler.x_dims.choose(rng).unwrap_or(&1);
        let h = random_dense(x, b * c, rng)?;
        let hh = h.dagger().matmul(&h)?;
        let lhs = glued(&f1, u1, c, &hh)?;
        let rhs = glued(&f2, u2, c, &hh)?;
        let dev = lhs.max_abs_diff(&rhs)?;
        if dev > ORACLE_TOL * lhs.max_abs().max(rhs.max_abs()).max(1.0) {
            return Ok(OracleOutcome {
                consistent: false,
                witness: Some(TestMapWitness {
                    trial,
                    c,
                    x,
                    deviation: dev,
                }),
            });
        }
    }
    Ok(OracleOutcome {
        consistent: true,
        witness: None,
    })
}

fn glued(f: &DenseMatrix, u: usize, c: usize, hh: &DenseMatrix) -> Result<DenseMatrix> {
    let fc = f.kron(&DenseMatrix::identity(c)?)?;
    let mid = DenseMatrix::identity(u)?.kron(hh)?;
    fc.dagger().matmul(&mid)?.matmul(&fc)
}
