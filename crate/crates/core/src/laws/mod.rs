//! Coherence laws as data: each law builds both sides of an equation on
//! sampled objects and morphisms, and a checker compares them over seeded
//! trials.

pub mod catalog;
pub mod report;

use crate::cpinf::{channel_deviation, sample_kraus, KrausMorphism};
use crate::error::{Error, Result};
use crate::model::{standard_model, Model, ModelKind, ObjectKind};
use crate::morphism::Morphism;
use crate::object::ObjectExpr;
use crate::rng::TrialRng;
use crate::structural::StructuralMapName;

pub use catalog::{catalog, find_law};
pub use report::{run_trials, LawCheckReport, TrialOutcome, Witness};

/// What a law produces on one instance.
#[derive(Debug, Clone)]
pub enum Sides {
    Morphisms(Morphism, Morphism),
    Channels(KrausMorphism, KrausMorphism),
    /// A law that computes its own deviation.
    Deviation(f64),
}

/// Sampling and construction context handed to law builders.
pub struct Ctx<'a> {
    pub model: &'a dyn Model,
    pub rng: &'a mut TrialRng,
}

impl Ctx<'_> {
    pub fn s(&self, name: StructuralMapName, args: &[ObjectExpr]) -> Result<Morphism> {
        self.model.structural(name, args)
    }

    pub fn si(&self, name: StructuralMapName, args: &[ObjectExpr]) -> Result<Morphism> {
        self.model.structural_inv(name, args)
    }

    /// `M` applied to a structural map of the unitary category.
    pub fn ms(&self, name: StructuralMapName, args: &[ObjectExpr]) -> Result<Morphism> {
        self.model.include(&self.model.base().structural(name, args)?)
    }

    pub fn msi(&self, name: StructuralMapName, args: &[ObjectExpr]) -> Result<Morphism> {
        self.model.include(&self.model.base().structural_inv(name, args)?)
    }

    pub fn id(&self, a: &ObjectExpr) -> Result<Morphism> {
        self.model.identity(a)
    }

    pub fn seq(&self, chain: &[&Morphism]) -> Result<Morphism> {
        self.model.chain(chain)
    }

    pub fn t(&self, f: &Morphism, g: &Morphism) -> Result<Morphism> {
        self.model.tensor(f, g)
    }

    pub fn p(&self, f: &Morphism, g: &Morphism) -> Result<Morphism> {
        self.model.par(f, g)
    }

    pub fn dag(&self, f: &Morphism) -> Result<Morphism> {
        self.model.dagger(f)
    }

    pub fn inc(&self, f: &Morphism) -> Result<Morphism> {
        self.model.include(f)
    }

    pub fn arrow(&mut self, dom: &ObjectExpr) -> Result<Morphism> {
        self.model.sample_arrow(dom, self.rng)
    }

    pub fn unitary(&mut self, a: &ObjectExpr) -> Result<Morphism> {
        self.model.sample_unitary(a, self.rng)
    }

    pub fn base_arrow(&mut self, dom: &ObjectExpr) -> Result<Morphism> {
        self.model.base().sample_arrow(dom, self.rng)
    }

    pub fn object(&mut self, kind: ObjectKind) -> ObjectExpr {
        self.model.sample_object(kind, self.rng)
    }

    /// A random channel out of `dom` in the standard instance of the model.
    pub fn kraus(&mut self, dom: &ObjectExpr) -> Result<KrausMorphism> {
        sample_kraus(standard_model(self.model.kind()), dom, self.rng)
    }
}

pub type Builder = fn(&mut Ctx<'_>, &[ObjectExpr]) -> Result<Sides>;

pub struct Law {
    pub id: &'static str,
    /// The equation, written out.
    pub anchor: &'static str,
    pub args: &'static [ObjectKind],
    pub models: &'static [ModelKind],
    /// Set when the stated form rests on an interpretation choice.
    pub flagged: bool,
    pub build: Builder,
}

impl std::fmt::Debug for Law {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Law").field("id", &self.id).field("anchor", &self.anchor).finish()
    }
}

impl Law {
    pub fn arity(&self) -> usize {
        self.args.len()
    }

    pub fn supports(&self, kind: ModelKind) -> bool {
        self.models.contains(&kind)
    }
}

fn evaluate(model: &dyn Model, sides: &Sides) -> Result<f64> {
    match sides {
        Sides::Morphisms(l, r) => model.deviation(l, r),
        Sides::Channels(l, r) => channel_deviation(l, r),
        Sides::Deviation(d) => Ok(*d),
    }
}

/// One instance of `law` on `objects` with randomness from `rng`.
pub fn law_deviation(law: &Law, model: &dyn Model, objects: &[ObjectExpr], rng: &mut TrialRng) -> Result<f64> {
    let sides = (law.build)(&mut Ctx { model, rng }, objects)?;
    evaluate(model, &sides)
}

/// Checks `law` over `trials` seeded trials. Objects are resampled each
/// trial unless given explicitly.
pub fn check_law(
    law: &Law,
    model: &dyn Model,
    objects: Option<&[ObjectExpr]>,
    trials: usize,
    seed: u64,
    tolerance: Option<f64>,
) -> Result<LawCheckReport> {
    if !law.supports(model.kind()) {
        return Err(Error::unsupported(model.kind().id(), format!("law {}", law.id)));
    }
    if let Some(objs) = objects {
        if objs.len() != law.arity() {
            return Err(Error::ArityError {
                name: law.id.to_string(),
                expected: law.arity(),
                got: objs.len(),
            });
        }
        for a in objs {
            model.check_object(a)?;
        }
    }
    let tol = tolerance.unwrap_or_else(|| model.kind().default_tolerance());
    Ok(run_trials(law.id, &model.name(), trials, seed, tol, law.flagged, |rng| {
        let objs: Vec<ObjectExpr> = match objects {
            Some(o) => o.to_vec(),
            None => law.args.iter().map(|&k| model.sample_object(k, rng)).collect(),
        };
        let names = objs.iter().map(ToString::to_string).collect();
        (names, law_deviation(law, model, &objs, rng))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn explicit_objects_are_checked() {
        let law = find_law("DLDC1a").unwrap();
        let m = standard_model(ModelKind::Mat);
        let objs = [ObjectExpr::dim(2), ObjectExpr::dim(3)];
        assert!(matches!(check_law(law, m, Some(&objs), 1, 0, None), Err(Error::ArityError { .. })));
        let objs = [ObjectExpr::dim(2), ObjectExpr::dim(3), ObjectExpr::dim(1)];
        let r = check_law(law, m, Some(&objs), 5, 0, None).unwrap();
        assert!(r.pass);
        assert_eq!(r.witness, None);
    }

    #[test]
    fn unsupported_models_are_refused() {
        let law = find_law("FSPACE").unwrap();
        let m = standard_model(ModelKind::Cplane);
        assert!(matches!(check_law(law, m, None, 1, 0, None), Err(Error::UnsupportedInModel { .. })));
    }

    #[test]
    fn every_law_passes_on_its_models() {
        let mut failures = Vec::new();
        for law in catalog() {
            for &kind in law.models {
                let r = check_law(law, standard_model(kind), None, 25, 11, None).unwrap();
                if !r.pass {
                    failures.push(format!("{} {}: {:?}", law.id, kind, r.witness));
                }
            }
        }
        assert!(failures.is_empty(), "{}", failures.join("\n"));
    }
}
