//! Environment structures: a functor into channels plus a discard family
//! `⫠_U : U → ⊥`, with the axioms checked on samples.

use std::fmt;

use rand::Rng;

use super::{
    channel_deviation, equiv_decide, functor_q, isometric_padding, kraus_compose_all, kraus_identity, kraus_new,
    kraus_par, kraus_tensor, perturbed, purify, sample_kraus, to_choi, unitarily_equivalent, KrausMorphism,
};
use crate::error::{Error, Result};
use crate::laws::report::{run_trials, LawCheckReport};
use crate::model::matc::{DenseMatrix, MatModel, C64};
use crate::model::{standard_model, Model, ModelKind, ObjectKind};
use crate::morphism::Morphism;
use crate::object::ObjectExpr;
use crate::rng::TrialRng;
use crate::structural::StructuralMapName as S;

type FunctorFn = dyn Fn(&Morphism) -> Result<KrausMorphism> + Send + Sync;
type DiscardFn = dyn Fn(&ObjectExpr) -> Result<KrausMorphism> + Send + Sync;

/// Distinct channels must differ by more than this after discarding.
pub const SEPARATION: f64 = 1e-6;

/// `⫠_U = [(u⊕ᴿ)⁻¹, U]`: everything goes into the ancilla. In the matrix
/// model its action is the trace.
pub fn env_discard(model: ModelKind, u: &ObjectExpr) -> Result<KrausMorphism> {
    let m = standard_model(model);
    if !m.is_unitary(u)? {
        return Err(Error::TypingError(format!("cannot discard non-unitary object {u}")));
    }
    kraus_new(m.structural_inv(S::UnitParRight, std::slice::from_ref(u))?, u)
}

pub struct EnvStructure {
    name: String,
    model: ModelKind,
    functor: Box<FunctorFn>,
    discard: Box<DiscardFn>,
}

impl fmt::Debug for EnvStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EnvStructure")
            .field("name", &self.name)
            .field("model", &self.model)
            .finish_non_exhaustive()
    }
}

impl EnvStructure {
    pub fn new<F, D>(name: impl Into<String>, model: ModelKind, functor: F, discard: D) -> Self
    where
        F: Fn(&Morphism) -> Result<KrausMorphism> + Send + Sync + 'static,
        D: Fn(&ObjectExpr) -> Result<KrausMorphism> + Send + Sync + 'static,
    {
        EnvStructure {
            name: name.into(),
            model,
            functor: Box::new(functor),
            discard: Box::new(discard),
        }
    }

    /// `F = Q`, `⫠ = env_discard`.
    pub fn canonical(model: ModelKind) -> Self {
        EnvStructure::new("canonical", model, functor_q, move |u: &ObjectExpr| env_discard(model, u))
    }

    /// The matrix discard scaled so that it computes half the trace.
    pub fn trace_halving() -> Self {
        EnvStructure::new("trace-halving", ModelKind::Mat, functor_q, |u: &ObjectExpr| {
            let k = env_discard(ModelKind::Mat, u)?;
            let (f, _) = k.dense_body()?;
            let body = MatModel::new().arrow(k.dom(), k.body().cod(), f.scale(C64::new(0.5f64.sqrt(), 0.0)))?;
            kraus_new(body, u)
        })
    }

    /// The matrix discard with the ancilla basis listed in reverse. It is the
    /// same channel presented differently.
    pub fn permuted_ancilla() -> Self {
        EnvStructure::new("permuted-ancilla", ModelKind::Mat, functor_q, |u: &ObjectExpr| {
            let n = MatModel::new().dim(u)?;
            let mut p = DenseMatrix::zeros(n, n)?;
            for i in 0..n {
                p[(n - 1 - i, i)] = C64::new(1.0, 0.0);
            }
            kraus_new(MatModel::new().arrow(u, &u.par(&ObjectExpr::bot()), p)?, u)
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn model(&self) -> ModelKind {
        self.model
    }

    pub fn functor(&self, f: &Morphism) -> Result<KrausMorphism> {
        (self.functor)(f)
    }

    pub fn discard(&self, u: &ObjectExpr) -> Result<KrausMorphism> {
        (self.discard)(u)
    }
}

/// `F(f) ; (⫠_U ⊕̂ 1_B) ; F(u⊕ᴸ)` for a body `f : A → U ⊕ B`.
pub fn discard_through(env: &EnvStructure, f: &Morphism, u: &ObjectExpr) -> Result<KrausMorphism> {
    let (head, b) = f
        .cod()
        .as_par()
        .ok_or_else(|| Error::TypingError(format!("{} is not of the form U ⊕ B", f.cod())))?;
    if head != u {
        return Err(Error::TypingError(format!("{} does not start with {u}", f.cod())));
    }
    let m = standard_model(env.model);
    let first = env.functor(f)?;
    let drop = kraus_par(&env.discard(u)?, &kraus_identity(env.model, b)?)?;
    let unit = env.functor(&m.structural(S::UnitParLeft, std::slice::from_ref(b))?)?;
    kraus_compose_all(&[&first, &drop, &unit])
}

/// Both sides of `Q(m⊗_{U,V}) ; ⫠_{U⊗V} ∼ Q(mx_{U,V}) ; (⫠_U ⊕̂ ⫠_V) ; Q(u⊕ᴸ_⊥)`.
pub fn env1a_sides(env: &EnvStructure, u: &ObjectExpr, v: &ObjectExpr) -> Result<(KrausMorphism, KrausMorphism)> {
    let m = standard_model(env.model);
    let uv = [u.clone(), v.clone()];
    let lhs = kraus_compose_all(&[&env.functor(&m.structural(S::StrengthTensor, &uv)?)?, &env.discard(&u.tensor(v))?])?;
    let rhs = kraus_compose_all(&[
        &env.functor(&m.structural(S::Mixor, &uv)?)?,
        &kraus_par(&env.discard(u)?, &env.discard(v)?)?,
        &env.functor(&m.structural(S::UnitParLeft, &[ObjectExpr::bot()])?)?,
    ])?;
    Ok((lhs, rhs))
}

/// Both sides of `⫠_{U⊕V} ∼ Q(n⊕_{U,V}) ; (⫠_U ⊕̂ ⫠_V) ; Q(u⊕ᴸ_⊥)`.
pub fn env1b_sides(env: &EnvStructure, u: &ObjectExpr, v: &ObjectExpr) -> Result<(KrausMorphism, KrausMorphism)> {
    let m = standard_model(env.model);
    let lhs = env.discard(&u.par(v))?;
    let rhs = kraus_compose_all(&[
        &env.functor(&m.structural(S::StrengthPar, &[u.clone(), v.clone()])?)?,
        &kraus_par(&env.discard(u)?, &env.discard(v)?)?,
        &env.functor(&m.structural(S::UnitParLeft, &[ObjectExpr::bot()])?)?,
    ])?;
    Ok((lhs, rhs))
}

/// Two Kraus maps out of `a` are equivalent exactly when discarding their
/// ancillas gives the same channel. Checks one constructed-equivalent and
/// one perturbed partner of a random map; returns the equivalent pair's
/// deviation, or 1 if either direction disagrees.
pub fn env2_deviation(env: &EnvStructure, a: &ObjectExpr, rng: &mut TrialRng) -> Result<f64> {
    let m = standard_model(env.model);
    let k = sample_kraus(m, a, rng)?;
    let same = if rng.random_bool(0.5) {
        unitarily_equivalent(&k, rng)?
    } else {
        isometric_padding(&k, rng.random_range(1..=2), rng)?
    };
    let other = perturbed(&k, 0.5, rng)?;
    let through = |x: &KrausMorphism| discard_through(env, x.body(), x.ancilla());
    let base = through(&k)?;
    let d_same = channel_deviation(&base, &through(&same)?)?;
    let d_other = channel_deviation(&base, &through(&other)?)?;
    let tol = env.model.default_tolerance();
    let agree = equiv_decide(&k, &same)? == (d_same <= tol) && equiv_decide(&k, &other)? == (d_other <= tol);
    Ok(if agree && d_other > SEPARATION { d_same } else { 1.0 })
}

/// Both sides of the purification axiom for `k`: the purified body pushed
/// through `F` with its ancilla discarded, and `k` itself.
pub fn env3_sides(env: &EnvStructure, k: &KrausMorphism) -> Result<(KrausMorphism, KrausMorphism)> {
    let p = purify(&to_choi(k)?)?;
    Ok((discard_through(env, p.body(), p.ancilla())?, k.clone()))
}

/// Randomized checks of the environment axioms on a matrix-backed structure.
pub fn env_check(env: &EnvStructure, trials: usize, seed: u64) -> Vec<LawCheckReport> {
    let model = env.model;
    let m = standard_model(model);
    let tol = model.default_tolerance();
    let name = format!("{model}:{}", env.name);
    let pair = |sides: fn(&EnvStructure, &ObjectExpr, &ObjectExpr) -> Result<(KrausMorphism, KrausMorphism)>| {
        move |rng: &mut TrialRng| {
            let u = m.sample_object(ObjectKind::Unitary, rng);
            let v = m.sample_object(ObjectKind::Unitary, rng);
            let objects = vec![u.to_string(), v.to_string()];
            let dev = sides(env, &u, &v).and_then(|(l, r)| channel_deviation(&l, &r));
            (objects, dev)
        }
    };
    vec![
        run_trials("ENV1a", &name, trials, seed, tol, false, pair(env1a_sides)),
        run_trials("ENV1b", &name, trials, seed, tol, false, pair(env1b_sides)),
        run_trials("ENV2", &name, trials, seed, tol, false, |rng| {
            let a = m.sample_object(ObjectKind::Any, rng);
            (vec![a.to_string()], env2_deviation(env, &a, rng))
        }),
        run_trials("ENV3", &name, trials, seed, tol, false, |rng| {
            let a = m.sample_object(ObjectKind::Any, rng);
            let dev = sample_kraus(m, &a, rng)
                .and_then(|k| env3_sides(env, &k))
                .and_then(|(l, r)| channel_deviation(&l, &r));
            (vec![a.to_string()], dev)
        }),
    ]
}

#[derive(Debug, Clone, PartialEq)]
pub struct InitialityReport {
    pub samples: usize,
    pub tolerance: f64,
    /// Largest deviation in the functoriality, unit, tensor and
    /// well-definedness equations.
    pub max_deviation: f64,
    /// Largest distance between `F(k)` and `k`.
    pub max_identity_deviation: f64,
    pub consistent: bool,
}

/// Builds the comparison functor from `src` to `tgt` on sampled channels
/// (purify in `src`, push the pure body through `tgt`, discard) and checks
/// it on those samples.
pub fn initiality_probe(src: &EnvStructure, tgt: &EnvStructure, samples: usize, seed: u64) -> Result<InitialityReport> {
    if src.model != tgt.model {
        return Err(Error::ModelMismatch {
            left: src.model.to_string(),
            right: tgt.model.to_string(),
        });
    }
    let model = src.model;
    let m = standard_model(model);
    let tol = model.default_tolerance();
    // purification in src: its discard must recover every channel
    let functor = |k: &KrausMorphism| -> Result<KrausMorphism> {
        let p = purify(&to_choi(k)?)?;
        let back = discard_through(src, p.body(), p.ancilla())?;
        if channel_deviation(&back, k)? > tol {
            return Err(Error::InvalidValue(format!("{} does not purify", src.name)));
        }
        discard_through(tgt, p.body(), p.ancilla())
    };
    let report = run_trials("INITIALITY", &format!("{}->{}", src.name, tgt.name), samples, seed, tol, false, |rng| {
        let a = m.sample_object(ObjectKind::Any, rng);
        let dev = probe_sample(&functor, tgt, m, &a, rng);
        (vec![a.to_string()], dev)
    });
    let max_identity_deviation = identity_deviations(src, tgt, samples, seed, &functor)?;
    Ok(InitialityReport {
        samples,
        tolerance: tol,
        max_deviation: report.max_abs_deviation.unwrap_or(f64::INFINITY),
        max_identity_deviation,
        consistent: report.pass,
    })
}

fn probe_sample(
    functor: &dyn Fn(&KrausMorphism) -> Result<KrausMorphism>,
    tgt: &EnvStructure,
    m: &dyn Model,
    a: &ObjectExpr,
    rng: &mut TrialRng,
) -> Result<f64> {
    let model = m.kind();
    let k1 = sample_kraus(m, a, rng)?;
    let k2 = sample_kraus(m, k1.cod(), rng)?;
    let k3 = sample_kraus(m, &m.sample_object(ObjectKind::Any, rng), rng)?;
    let (f1, f2, f3) = (functor(&k1)?, functor(&k2)?, functor(&k3)?);
    let composite = channel_deviation(&functor(&kraus_compose_all(&[&k1, &k2])?)?, &kraus_compose_all(&[&f1, &f2])?)?;
    let id = kraus_identity(model, a)?;
    let unit = channel_deviation(&functor(&id)?, &id)?;
    let tensor = channel_deviation(&functor(&kraus_tensor(&k1, &k3)?)?, &kraus_tensor(&f1, &f3)?)?;
    // well-defined: the body k1 came with gives the same image as its purification
    let own = channel_deviation(&discard_through(tgt, k1.body(), k1.ancilla())?, &f1)?;
    Ok(composite.max(unit).max(tensor).max(own))
}

fn identity_deviations(
    src: &EnvStructure,
    tgt: &EnvStructure,
    samples: usize,
    seed: u64,
    functor: &(dyn Fn(&KrausMorphism) -> Result<KrausMorphism> + Sync),
) -> Result<f64> {
    let m: &dyn Model = standard_model(src.model);
    let report = run_trials(
        "INITIALITY-ID",
        &format!("{}->{}", src.name, tgt.name),
        samples,
        seed,
        f64::INFINITY,
        false,
        |rng| {
            let a = m.sample_object(ObjectKind::Any, rng);
            let dev = sample_kraus(m, &a, rng).and_then(|k| channel_deviation(&functor(&k)?, &k));
            (vec![a.to_string()], dev)
        },
    );
    report
        .max_abs_deviation
        .ok_or_else(|| Error::InvalidValue(report.witness.and_then(|w| w.error).unwrap_or_default()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cpinf::kraus_apply;
    use crate::rng::{random_density, rng_from_seed};

    #[test]
    fn discard_computes_the_trace() {
        let k = env_discard(ModelKind::Mat, &ObjectExpr::dim(2)).unwrap();
        let rho = random_density(2, &mut rng_from_seed(1)).unwrap();
        let out = kraus_apply(&k, &rho).unwrap();
        assert_eq!(out.shape(), (1, 1));
        assert!((out[(0, 0)] - rho.trace().unwrap()).norm() < 1e-12);
    }

    #[test]
    fn discard_is_multiplicative() {
        let env = EnvStructure::canonical(ModelKind::Mat);
        let (l, r) = env1a_sides(&env, &ObjectExpr::dim(2), &ObjectExpr::dim(3)).unwrap();
        assert!(channel_deviation(&l, &r).unwrap() < 1e-12);
    }

    #[test]
    fn canonical_structure_passes() {
        for model in [ModelKind::Mat] {
            let reports = env_check(&EnvStructure::canonical(model), 20, 3);
            for r in &reports {
                assert!(r.pass, "{r:?}");
            }
        }
        let reports = env_check(&EnvStructure::permuted_ancilla(), 10, 3);
        assert!(reports.iter().all(|r| r.pass));
    }

    #[test]
    fn halving_breaks_the_unit_law() {
        let reports = env_check(&EnvStructure::trace_halving(), 10, 3);
        assert!(!reports[0].pass);
        assert_eq!(reports[0].law, "ENV1a");
    }

    #[test]
    fn zero_trials_pass() {
        assert!(env_check(&EnvStructure::trace_halving(), 0, 3).iter().all(|r| r.pass));
    }

    #[test]
    fn initiality_between_presentations() {
        let can = EnvStructure::canonical(ModelKind::Mat);
        let r = initiality_probe(&can, &can, 10, 5).unwrap();
        assert!(r.consistent && r.max_identity_deviation < 1e-9, "{r:?}");
        let r = initiality_probe(&can, &EnvStructure::permuted_ancilla(), 10, 5).unwrap();
        assert!(r.consistent, "{r:?}");
        let r = initiality_probe(&can, &can, 0, 5).unwrap();
        assert!(r.consistent);
    }
}
