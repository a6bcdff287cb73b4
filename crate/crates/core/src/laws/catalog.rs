//! The law catalog.

// `o!` clones single objects into argument slices
#![allow(clippy::cloned_ref_to_slice_refs)]

use super::{Ctx, Law, Sides};
use crate::cpinf::{
    env::{env1a_sides, env1b_sides, env2_deviation, env3_sides},
    equiv_decide, equiv_testmap_oracle, functor_n, functor_q, kraus_compose, kraus_dagger,
    kraus_dagger_wired, kraus_identity, kraus_new, kraus_par, kraus_tensor, perturbed, unitarily_equivalent, EnvStructure,
    KrausMorphism, TestMapSampler,
};
use rand::Rng;
use crate::error::{Error, Result};
use crate::model::{standard_model, ModelKind, ObjectKind};
use crate::object::ObjectExpr;
use crate::structural::StructuralMapName as S;

use ModelKind::{Cplane, FMat, Mat};
use ObjectKind::{Any, Base, Unitary};

const ALL: &[ModelKind] = &[Mat, FMat, Cplane];
const MAT_CPLANE: &[ModelKind] = &[Mat, Cplane];
const MAT: &[ModelKind] = &[Mat];
const FMAT: &[ModelKind] = &[FMat];

macro_rules! o {
    ($($x:expr),* $(,)?) => {
        &[$($x.clone()),*]
    };
}

type R = Result<Sides>;

fn mm(l: crate::morphism::Morphism, r: crate::morphism::Morphism) -> R {
    Ok(Sides::Morphisms(l, r))
}

// dagger–laxor coherence

fn dldc1a(c: &mut Ctx, x: &[ObjectExpr]) -> R {
    let (a, b, cc) = (&x[0], &x[1], &x[2]);
    let l = c.seq(&[
        &c.t(&c.id(&a.dag())?, &c.s(S::LaxTensor, o![b, cc])?)?,
        &c.s(S::LaxTensor, o![a, b.par(cc)])?,
        &c.dag(&c.si(S::AssocPar, o![a, b, cc])?)?,
    ])?;
    let r = c.seq(&[
        &c.s(S::AssocTensor, o![a.dag(), b.dag(), cc.dag()])?,
        &c.t(&c.s(S::LaxTensor, o![a, b])?, &c.id(&cc.dag())?)?,
        &c.s(S::LaxTensor, o![a.par(b), cc])?,
    ])?;
    mm(l, r)
}

fn dldc1b(c: &mut Ctx, x: &[ObjectExpr]) -> R {
    let (a, b, cc) = (&x[0], &x[1], &x[2]);
    let l = c.seq(&[
        &c.p(&c.id(&a.dag())?, &c.s(S::LaxPar, o![b, cc])?)?,
        &c.s(S::LaxPar, o![a, b.tensor(cc)])?,
        &c.dag(&c.si(S::AssocTensor, o![a, b, cc])?)?,
    ])?;
    let r = c.seq(&[
        &c.s(S::AssocPar, o![a.dag(), b.dag(), cc.dag()])?,
        &c.p(&c.s(S::LaxPar, o![a, b])?, &c.id(&cc.dag())?)?,
        &c.s(S::LaxPar, o![a.tensor(b), cc])?,
    ])?;
    mm(l, r)
}

fn dldc2a(c: &mut Ctx, x: &[ObjectExpr]) -> R {
    let a = &x[0];
    let l = c.seq(&[
        &c.t(&c.s(S::LaxTop, &[])?, &c.id(&a.dag())?)?,
        &c.s(S::LaxTensor, o![ObjectExpr::bot(), a])?,
    ])?;
    let r = c.seq(&[&c.s(S::UnitTensorLeft, o![a.dag()])?, &c.dag(&c.s(S::UnitParLeft, o![a])?)?])?;
    mm(l, r)
}

fn dldc2b(c: &mut Ctx, x: &[ObjectExpr]) -> R {
    let a = &x[0];
    let l = c.seq(&[
        &c.p(&c.s(S::LaxBot, &[])?, &c.id(&a.dag())?)?,
        &c.s(S::LaxPar, o![ObjectExpr::top(), a])?,
    ])?;
    let r = c.seq(&[&c.s(S::UnitParLeft, o![a.dag()])?, &c.dag(&c.s(S::UnitTensorLeft, o![a])?)?])?;
    mm(l, r)
}

fn dldc2c(c: &mut Ctx, x: &[ObjectExpr]) -> R {
    let a = &x[0];
    let l = c.seq(&[
        &c.t(&c.id(&a.dag())?, &c.s(S::LaxTop, &[])?)?,
        &c.s(S::LaxTensor, o![a, ObjectExpr::bot()])?,
    ])?;
    let r = c.seq(&[&c.s(S::UnitTensorRight, o![a.dag()])?, &c.dag(&c.s(S::UnitParRight, o![a])?)?])?;
    mm(l, r)
}

fn dldc2d(c: &mut Ctx, x: &[ObjectExpr]) -> R {
    let a = &x[0];
    let l = c.seq(&[
        &c.p(&c.id(&a.dag())?, &c.s(S::LaxBot, &[])?)?,
        &c.s(S::LaxPar, o![a, ObjectExpr::top()])?,
    ])?;
    let r = c.seq(&[&c.s(S::UnitParRight, o![a.dag()])?, &c.dag(&c.s(S::UnitTensorRight, o![a])?)?])?;
    mm(l, r)
}

fn dldc3a(c: &mut Ctx, x: &[ObjectExpr]) -> R {
    let (a, b, cc) = (&x[0], &x[1], &x[2]);
    let l = c.seq(&[
        &c.t(&c.id(&a.dag())?, &c.s(S::LaxPar, o![b, cc])?)?,
        &c.s(S::LaxTensor, o![a, b.tensor(cc)])?,
        &c.dag(&c.s(S::DistRight, o![a, b, cc])?)?,
    ])?;
    let r = c.seq(&[
        &c.s(S::DistLeft, o![a.dag(), b.dag(), cc.dag()])?,
        &c.p(&c.s(S::LaxTensor, o![a, b])?, &c.id(&cc.dag())?)?,
        &c.s(S::LaxPar, o![a.par(b), cc])?,
    ])?;
    mm(l, r)
}

fn dldc3b(c: &mut Ctx, x: &[ObjectExpr]) -> R {
    let (a, b, cc) = (&x[0], &x[1], &x[2]);
    let l = c.seq(&[
        &c.t(&c.s(S::LaxPar, o![a, b])?, &c.id(&cc.dag())?)?,
        &c.s(S::LaxTensor, o![a.tensor(b), cc])?,
        &c.dag(&c.s(S::DistLeft, o![a, b, cc])?)?,
    ])?;
    let r = c.seq(&[
        &c.s(S::DistRight, o![a.dag(), b.dag(), cc.dag()])?,
        &c.p(&c.id(&a.dag())?, &c.s(S::LaxTensor, o![b, cc])?)?,
        &c.s(S::LaxPar, o![a, b.par(cc)])?,
    ])?;
    mm(l, r)
}

fn dldc4a(c: &mut Ctx, x: &[ObjectExpr]) -> R {
    let (a, b) = (&x[0], &x[1]);
    let l = c.seq(&[&c.s(S::Involutor, o![a.par(b)])?, &c.dag(&c.s(S::LaxTensor, o![a, b])?)?])?;
    let r = c.seq(&[
        &c.p(&c.s(S::Involutor, o![a])?, &c.s(S::Involutor, o![b])?)?,
        &c.s(S::LaxPar, o![a.dag(), b.dag()])?,
    ])?;
    mm(l, r)
}

fn dldc4b(c: &mut Ctx, x: &[ObjectExpr]) -> R {
    let (a, b) = (&x[0], &x[1]);
    let l = c.seq(&[&c.s(S::Involutor, o![a.tensor(b)])?, &c.dag(&c.s(S::LaxPar, o![a, b])?)?])?;
    let r = c.seq(&[
        &c.t(&c.s(S::Involutor, o![a])?, &c.s(S::Involutor, o![b])?)?,
        &c.s(S::LaxTensor, o![a.dag(), b.dag()])?,
    ])?;
    mm(l, r)
}

fn dldc5a(c: &mut Ctx, _: &[ObjectExpr]) -> R {
    let l = c.seq(&[&c.s(S::Involutor, o![ObjectExpr::bot()])?, &c.dag(&c.s(S::LaxTop, &[])?)?])?;
    mm(l, c.s(S::LaxBot, &[])?)
}

fn dldc5b(c: &mut Ctx, _: &[ObjectExpr]) -> R {
    let l = c.seq(&[&c.s(S::Involutor, o![ObjectExpr::top()])?, &c.dag(&c.s(S::LaxBot, &[])?)?])?;
    mm(l, c.s(S::LaxTop, &[])?)
}

fn dldc6(c: &mut Ctx, x: &[ObjectExpr]) -> R {
    let a = &x[0];
    mm(c.s(S::Involutor, o![a.dag()])?, c.dag(&c.si(S::Involutor, o![a])?)?)
}

fn dldc7a(c: &mut Ctx, x: &[ObjectExpr]) -> R {
    let (a, b) = (&x[0], &x[1]);
    let l = c.seq(&[&c.s(S::LaxTensor, o![a, b])?, &c.dag(&c.s(S::SymPar, o![b, a])?)?])?;
    let r = c.seq(&[&c.s(S::SymTensor, o![a.dag(), b.dag()])?, &c.s(S::LaxTensor, o![b, a])?])?;
    mm(l, r)
}

fn dldc7b(c: &mut Ctx, x: &[ObjectExpr]) -> R {
    let (a, b) = (&x[0], &x[1]);
    let l = c.seq(&[&c.s(S::LaxPar, o![a, b])?, &c.dag(&c.s(S::SymTensor, o![b, a])?)?])?;
    let r = c.seq(&[&c.s(S::SymPar, o![a.dag(), b.dag()])?, &c.s(S::LaxPar, o![b, a])?])?;
    mm(l, r)
}

// mix and mixor

fn dmix(c: &mut Ctx, _: &[ObjectExpr]) -> R {
    let l = c.seq(&[&c.s(S::Mix, &[])?, &c.s(S::LaxTop, &[])?])?;
    let r = c.seq(&[&c.s(S::LaxBot, &[])?, &c.dag(&c.s(S::Mix, &[])?)?])?;
    mm(l, r)
}

fn mxdag(c: &mut Ctx, x: &[ObjectExpr]) -> R {
    let (a, b) = (&x[0], &x[1]);
    let l = c.seq(&[&c.s(S::Mixor, o![a.dag(), b.dag()])?, &c.s(S::LaxPar, o![a, b])?])?;
    let r = c.seq(&[&c.s(S::LaxTensor, o![a, b])?, &c.dag(&c.s(S::Mixor, o![a, b])?)?])?;
    mm(l, r)
}

fn mxdef_l(c: &mut Ctx, x: &[ObjectExpr]) -> R {
    let (a, b) = (&x[0], &x[1]);
    let ia = c.id(a)?;
    let l = c.seq(&[
        &c.t(&ia, &c.si(S::UnitParLeft, o![b])?)?,
        &c.t(&ia, &c.p(&c.s(S::Mix, &[])?, &c.id(b)?)?)?,
        &c.s(S::DistLeft, o![a, ObjectExpr::top(), b])?,
        &c.p(&c.s(S::UnitTensorRight, o![a])?, &c.id(b)?)?,
    ])?;
    mm(l, c.s(S::Mixor, o![a, b])?)
}

fn mxdef_r(c: &mut Ctx, x: &[ObjectExpr]) -> R {
    let (a, b) = (&x[0], &x[1]);
    let ib = c.id(b)?;
    let l = c.seq(&[
        &c.t(&c.si(S::UnitParRight, o![a])?, &ib)?,
        &c.t(&c.p(&c.id(a)?, &c.s(S::Mix, &[])?)?, &ib)?,
        &c.s(S::DistRight, o![a, ObjectExpr::top(), b])?,
        &c.p(&c.id(a)?, &c.s(S::UnitTensorLeft, o![b])?)?,
    ])?;
    mm(l, c.s(S::Mixor, o![a, b])?)
}

fn id_unit(c: &mut Ctx, x: &[ObjectExpr]) -> R {
    let u = &x[0];
    let l = c.seq(&[&c.s(S::UnitTensorLeft, o![u])?, &c.si(S::UnitParLeft, o![u])?])?;
    let r = c.seq(&[
        &c.t(&c.si(S::Mix, &[])?, &c.id(u)?)?,
        &c.s(S::Mixor, o![ObjectExpr::bot(), u])?,
    ])?;
    mm(l, r)
}

fn mxslide_a(c: &mut Ctx, x: &[ObjectExpr]) -> R {
    let (a, b) = (&x[0], &x[1]);
    let (f, g) = (c.base_arrow(a)?, c.base_arrow(b)?);
    let (mf, mg) = (c.inc(&f)?, c.inc(&g)?);
    let l = c.seq(&[&c.p(&mf, &mg)?, &c.si(S::Mixor, o![f.cod(), g.cod()])?])?;
    let r = c.seq(&[&c.si(S::Mixor, o![a, b])?, &c.t(&mf, &mg)?])?;
    mm(l, r)
}

fn mxslide_b(c: &mut Ctx, x: &[ObjectExpr]) -> R {
    let (a, b, cc) = (&x[0], &x[1], &x[2]);
    let l = c.seq(&[
        &c.p(&c.id(a)?, &c.si(S::Mixor, o![b, cc])?)?,
        &c.si(S::Mixor, o![a, b.tensor(cc)])?,
    ])?;
    let r = c.seq(&[
        &c.si(S::Mixor, o![a, b.par(cc)])?,
        &c.t(&c.id(a)?, &c.si(S::Mixor, o![b, cc])?)?,
    ])?;
    mm(l, r)
}

// duals

fn snake_l(c: &mut Ctx, x: &[ObjectExpr]) -> R {
    let a = &x[0];
    let l = c.seq(&[
        &c.si(S::UnitTensorRight, o![a])?,
        &c.t(&c.id(a)?, &c.s(S::DualUnit, o![a])?)?,
        &c.s(S::DistLeft, o![a, a.dual(), a])?,
        &c.p(&c.s(S::DualCounit, o![a])?, &c.id(a)?)?,
        &c.s(S::UnitParLeft, o![a])?,
    ])?;
    mm(l, c.id(a)?)
}

fn snake_r(c: &mut Ctx, x: &[ObjectExpr]) -> R {
    let a = &x[0];
    let s = a.dual();
    let l = c.seq(&[
        &c.si(S::UnitTensorLeft, o![s])?,
        &c.t(&c.s(S::DualUnit, o![a])?, &c.id(&s)?)?,
        &c.s(S::DistRight, o![s, a, s])?,
        &c.p(&c.id(&s)?, &c.s(S::DualCounit, o![a])?)?,
        &c.s(S::UnitParRight, o![s])?,
    ])?;
    mm(l, c.id(&s)?)
}

// unitary structure

fn u2(c: &mut Ctx, x: &[ObjectExpr]) -> R {
    let a = &x[0];
    mm(c.s(S::Unitary, o![a.dag()])?, c.dag(&c.si(S::Unitary, o![a])?)?)
}

fn u3(c: &mut Ctx, x: &[ObjectExpr]) -> R {
    let a = &x[0];
    let l = c.seq(&[&c.s(S::Unitary, o![a])?, &c.s(S::Unitary, o![a.dag()])?])?;
    mm(l, c.s(S::Involutor, o![a])?)
}

fn u4a(c: &mut Ctx, _: &[ObjectExpr]) -> R {
    let l = c.seq(&[&c.s(S::LaxBot, &[])?, &c.si(S::Unitary, o![ObjectExpr::top()])?])?;
    mm(l, c.s(S::Mix, &[])?)
}

fn u4b(c: &mut Ctx, _: &[ObjectExpr]) -> R {
    let l = c.seq(&[&c.s(S::Unitary, o![ObjectExpr::bot()])?, &c.si(S::LaxTop, &[])?])?;
    mm(l, c.s(S::Mix, &[])?)
}

fn u5a(c: &mut Ctx, x: &[ObjectExpr]) -> R {
    let (a, b) = (&x[0], &x[1]);
    let l = c.seq(&[
        &c.t(&c.s(S::Unitary, o![a])?, &c.s(S::Unitary, o![b])?)?,
        &c.s(S::LaxTensor, o![a, b])?,
        &c.si(S::Unitary, o![a.par(b)])?,
    ])?;
    mm(l, c.s(S::Mixor, o![a, b])?)
}

fn u5b(c: &mut Ctx, x: &[ObjectExpr]) -> R {
    let (a, b) = (&x[0], &x[1]);
    let l = c.seq(&[
        &c.s(S::Unitary, o![a.tensor(b)])?,
        &c.si(S::LaxPar, o![a, b])?,
        &c.p(&c.si(S::Unitary, o![a])?, &c.si(S::Unitary, o![b])?)?,
    ])?;
    mm(l, c.s(S::Mixor, o![a, b])?)
}

fn udual_a(c: &mut Ctx, x: &[ObjectExpr]) -> R {
    let a = &x[0];
    let s = a.dual();
    let l = c.seq(&[
        &c.s(S::DualUnit, o![a])?,
        &c.p(&c.s(S::Unitary, o![s])?, &c.s(S::Unitary, o![a])?)?,
        &c.s(S::SymPar, o![s.dag(), a.dag()])?,
    ])?;
    let r = c.seq(&[
        &c.s(S::LaxTop, &[])?,
        &c.dag(&c.s(S::DualCounit, o![a])?)?,
        &c.si(S::LaxPar, o![a, s])?,
    ])?;
    mm(l, r)
}

fn udual_b(c: &mut Ctx, x: &[ObjectExpr]) -> R {
    let a = &x[0];
    let s = a.dual();
    let l = c.seq(&[
        &c.t(&c.s(S::Unitary, o![s])?, &c.s(S::Unitary, o![a])?)?,
        &c.s(S::LaxTensor, o![s, a])?,
        &c.dag(&c.s(S::DualUnit, o![a])?)?,
    ])?;
    let r = c.seq(&[
        &c.s(S::SymTensor, o![s, a])?,
        &c.s(S::DualCounit, o![a])?,
        &c.s(S::LaxBot, &[])?,
    ])?;
    mm(l, r)
}

fn uiso(c: &mut Ctx, x: &[ObjectExpr]) -> R {
    let a = &x[0];
    let f = c.unitary(a)?;
    let phi = c.s(S::Unitary, o![a])?;
    let r = c.seq(&[&f, &phi, &c.dag(&f)?])?;
    mm(phi, r)
}

// the inclusion functor M

fn mixpres(c: &mut Ctx, x: &[ObjectExpr]) -> R {
    let (a, b) = (&x[0], &x[1]);
    let r = c.seq(&[
        &c.s(S::StrengthTensor, o![a, b])?,
        &c.ms(S::Mixor, o![a, b])?,
        &c.s(S::StrengthPar, o![a, b])?,
    ])?;
    mm(c.s(S::Mixor, o![a, b])?, r)
}

fn ff_tensor(c: &mut Ctx, x: &[ObjectExpr]) -> R {
    let (a, b) = (&x[0], &x[1]);
    let (f, g) = (c.base_arrow(a)?, c.base_arrow(b)?);
    let fg = c.model.base().tensor(&f, &g)?;
    let l = c.seq(&[&c.s(S::StrengthTensor, o![a, b])?, &c.inc(&fg)?])?;
    let r = c.seq(&[&c.t(&c.inc(&f)?, &c.inc(&g)?)?, &c.s(S::StrengthTensor, o![f.cod(), g.cod()])?])?;
    mm(l, r)
}

fn ff_par(c: &mut Ctx, x: &[ObjectExpr]) -> R {
    let (a, b) = (&x[0], &x[1]);
    let (f, g) = (c.base_arrow(a)?, c.base_arrow(b)?);
    let fg = c.model.base().par(&f, &g)?;
    let l = c.seq(&[&c.inc(&fg)?, &c.s(S::StrengthPar, o![f.cod(), g.cod()])?])?;
    let r = c.seq(&[&c.s(S::StrengthPar, o![a, b])?, &c.p(&c.inc(&f)?, &c.inc(&g)?)?])?;
    mm(l, r)
}

fn ff_mix(c: &mut Ctx, _: &[ObjectExpr]) -> R {
    let r = c.seq(&[&c.s(S::StrengthBot, &[])?, &c.s(S::Mix, &[])?, &c.s(S::StrengthTop, &[])?])?;
    mm(c.ms(S::Mix, &[])?, r)
}

fn ff_isomix(c: &mut Ctx, _: &[ObjectExpr]) -> R {
    let r = c.seq(&[&c.s(S::StrengthTop, &[])?, &c.msi(S::Mix, &[])?, &c.s(S::StrengthBot, &[])?])?;
    mm(c.si(S::Mix, &[])?, r)
}

fn pres(c: &mut Ctx, x: &[ObjectExpr]) -> R {
    let a = &x[0];
    let l = c.seq(&[&c.s(S::Involutor, o![a])?, &c.dag(&c.s(S::Preservator, o![a])?)?])?;
    let r = c.seq(&[&c.ms(S::Involutor, o![a])?, &c.s(S::Preservator, o![a.dag()])?])?;
    mm(l, r)
}

fn rhotp_a(c: &mut Ctx, x: &[ObjectExpr]) -> R {
    let (a, b) = (&x[0], &x[1]);
    let ab = a.tensor(b);
    let l = c.seq(&[
        &c.s(S::StrengthTensor, o![a, b])?,
        &c.ms(S::Unitary, o![ab])?,
        &c.s(S::Preservator, o![ab])?,
        &c.dag(&c.s(S::StrengthTensor, o![a, b])?)?,
    ])?;
    let r = c.seq(&[
        &c.t(&c.ms(S::Unitary, o![a])?, &c.ms(S::Unitary, o![b])?)?,
        &c.t(&c.s(S::Preservator, o![a])?, &c.s(S::Preservator, o![b])?)?,
        &c.s(S::LaxTensor, o![a, b])?,
        &c.dag(&c.s(S::Mixor, o![a, b])?)?,
    ])?;
    mm(l, r)
}

fn rhotp_b(c: &mut Ctx, x: &[ObjectExpr]) -> R {
    let (a, b) = (&x[0], &x[1]);
    let ab = a.par(b);
    let l = c.seq(&[
        &c.si(S::StrengthPar, o![a, b])?,
        &c.ms(S::Unitary, o![ab])?,
        &c.s(S::Preservator, o![ab])?,
    ])?;
    let r = c.seq(&[
        &c.p(&c.ms(S::Unitary, o![a])?, &c.ms(S::Unitary, o![b])?)?,
        &c.p(&c.s(S::Preservator, o![a])?, &c.s(S::Preservator, o![b])?)?,
        &c.s(S::LaxPar, o![a, b])?,
        &c.dag(&c.si(S::Mixor, o![a, b])?)?,
        &c.dag(&c.s(S::StrengthPar, o![a, b])?)?,
    ])?;
    mm(l, r)
}

fn rho_unit(c: &mut Ctx, _: &[ObjectExpr]) -> R {
    let l = c.seq(&[&c.s(S::LaxTop, &[])?, &c.dag(&c.s(S::StrengthBot, &[])?)?])?;
    let r = c.seq(&[
        &c.s(S::StrengthTop, &[])?,
        &c.ms(S::LaxTop, &[])?,
        &c.s(S::Preservator, o![ObjectExpr::bot()])?,
    ])?;
    mm(l, r)
}

// dagger functor

fn inat(c: &mut Ctx, x: &[ObjectExpr]) -> R {
    let a = &x[0];
    let f = c.arrow(a)?;
    let l = c.seq(&[&c.s(S::Involutor, o![a])?, &c.dag(&c.dag(&f)?)?])?;
    let r = c.seq(&[&f, &c.s(S::Involutor, o![f.cod()])?])?;
    mm(l, r)
}

fn dagf(c: &mut Ctx, x: &[ObjectExpr]) -> R {
    let f = c.arrow(&x[0])?;
    let g = c.arrow(f.cod())?;
    let l = c.dag(&c.seq(&[&f, &g])?)?;
    let r = c.seq(&[&c.dag(&g)?, &c.dag(&f)?])?;
    mm(l, r)
}

fn fspace(c: &mut Ctx, x: &[ObjectExpr]) -> R {
    let (a, b) = (&x[0], &x[1]);
    let mut d = 0.0f64;
    for obj in [a.clone(), a.dag(), a.tensor(b), a.par(b).dag()] {
        d = d.max(c.model.object_defect(&obj)?);
    }
    Ok(Sides::Deviation(d))
}

// channels

fn cp_assoc(c: &mut Ctx, x: &[ObjectExpr]) -> R {
    let k1 = c.kraus(&x[0])?;
    let k2 = c.kraus(k1.cod())?;
    let k3 = c.kraus(k2.cod())?;
    let l = kraus_compose(&kraus_compose(&k1, &k2)?, &k3)?;
    let r = kraus_compose(&k1, &kraus_compose(&k2, &k3)?)?;
    Ok(Sides::Channels(l, r))
}

fn cp_idl(c: &mut Ctx, x: &[ObjectExpr]) -> R {
    let k = c.kraus(&x[0])?;
    let l = kraus_compose(&kraus_identity(c.model.kind(), k.dom())?, &k)?;
    Ok(Sides::Channels(l, k))
}

fn cp_idr(c: &mut Ctx, x: &[ObjectExpr]) -> R {
    let k = c.kraus(&x[0])?;
    let l = kraus_compose(&k, &kraus_identity(c.model.kind(), k.cod())?)?;
    Ok(Sides::Channels(l, k))
}

fn cp_uniteq(c: &mut Ctx, x: &[ObjectExpr]) -> R {
    let k = c.kraus(&x[0])?;
    let k2 = unitarily_equivalent(&k, c.rng)?;
    Ok(Sides::Channels(k, k2))
}

fn cp_welldef(c: &mut Ctx, x: &[ObjectExpr]) -> R {
    let k0 = c.kraus(&x[0])?;
    let k1 = c.kraus(k0.cod())?;
    let k1e = unitarily_equivalent(&k1, c.rng)?;
    let k2 = c.kraus(k1.cod())?;
    let post = crate::cpinf::channel_deviation(&kraus_compose(&k1, &k2)?, &kraus_compose(&k1e, &k2)?)?;
    let pre = crate::cpinf::channel_deviation(&kraus_compose(&k0, &k1)?, &kraus_compose(&k0, &k1e)?)?;
    Ok(Sides::Deviation(post.max(pre)))
}

/// Matrix-model channels with a one- or two-dimensional ancilla. Ancillas
/// multiply under `;` and `⊗̂`, so the bifunctoriality laws would otherwise
/// build structural matrices past the payload guard.
fn narrow_kraus(c: &mut Ctx, dom: &ObjectExpr) -> Result<KrausMorphism> {
    if c.model.kind() != Mat {
        return c.kraus(dom);
    }
    let m = standard_model(Mat);
    let u = ObjectExpr::dim(c.rng.random_range(1..=2));
    let cod = m.sample_object(Any, c.rng);
    let body = m.sample_arrow_to(dom, &u.par(&cod), c.rng)?;
    kraus_new(body, &u)
}

fn cp_tensor_bif(c: &mut Ctx, x: &[ObjectExpr]) -> R {
    let (k1, k3) = (narrow_kraus(c, &x[0])?, narrow_kraus(c, &x[1])?);
    let (k2, k4) = (narrow_kraus(c, k1.cod())?, narrow_kraus(c, k3.cod())?);
    let l = kraus_tensor(&kraus_compose(&k1, &k2)?, &kraus_compose(&k3, &k4)?)?;
    let r = kraus_compose(&kraus_tensor(&k1, &k3)?, &kraus_tensor(&k2, &k4)?)?;
    Ok(Sides::Channels(l, r))
}

fn cp_par_bif(c: &mut Ctx, x: &[ObjectExpr]) -> R {
    let (k1, k3) = (narrow_kraus(c, &x[0])?, narrow_kraus(c, &x[1])?);
    let (k2, k4) = (narrow_kraus(c, k1.cod())?, narrow_kraus(c, k3.cod())?);
    let l = kraus_par(&kraus_compose(&k1, &k2)?, &kraus_compose(&k3, &k4)?)?;
    let r = kraus_compose(&kraus_par(&k1, &k3)?, &kraus_par(&k2, &k4)?)?;
    Ok(Sides::Channels(l, r))
}

fn cp_mix_inv(c: &mut Ctx, _: &[ObjectExpr]) -> R {
    let kind = c.model.kind();
    let m = functor_q(&c.s(S::Mix, &[])?)?;
    let mi = functor_q(&c.si(S::Mix, &[])?)?;
    let there = crate::cpinf::channel_deviation(&kraus_compose(&m, &mi)?, &kraus_identity(kind, &ObjectExpr::bot())?)?;
    let back = crate::cpinf::channel_deviation(&kraus_compose(&mi, &m)?, &kraus_identity(kind, &ObjectExpr::top())?)?;
    Ok(Sides::Deviation(there.max(back)))
}

fn cp_tp_agree(c: &mut Ctx, x: &[ObjectExpr]) -> R {
    let (k1, k2) = (c.kraus(&x[0])?, c.kraus(&x[1])?);
    let l = kraus_compose(&kraus_tensor(&k1, &k2)?, &functor_q(&c.s(S::Mixor, o![k1.cod(), k2.cod()])?)?)?;
    let r = kraus_compose(&functor_q(&c.s(S::Mixor, o![x[0], x[1]])?)?, &kraus_par(&k1, &k2)?)?;
    Ok(Sides::Channels(l, r))
}

fn cp_q_funct(c: &mut Ctx, x: &[ObjectExpr]) -> R {
    let f = c.arrow(&x[0])?;
    let g = c.arrow(f.cod())?;
    let l = functor_q(&c.seq(&[&f, &g])?)?;
    let r = kraus_compose(&functor_q(&f)?, &functor_q(&g)?)?;
    Ok(Sides::Channels(l, r))
}

fn cp_n_dag(c: &mut Ctx, x: &[ObjectExpr]) -> R {
    let kind = c.model.kind();
    let f = c.base_arrow(&x[0])?;
    let l = functor_n(kind, &c.model.base().dagger(&f)?)?;
    let r = kraus_dagger(&functor_n(kind, &f)?)?;
    Ok(Sides::Channels(l, r))
}

fn cp_dag_inv(c: &mut Ctx, x: &[ObjectExpr]) -> R {
    let k = c.kraus(&x[0])?;
    Ok(Sides::Channels(kraus_dagger(&kraus_dagger(&k)?)?, k))
}

fn cp_dag_contra(c: &mut Ctx, x: &[ObjectExpr]) -> R {
    let k1 = c.kraus(&x[0])?;
    let k2 = c.kraus(k1.cod())?;
    let l = kraus_dagger(&kraus_compose(&k1, &k2)?)?;
    let r = kraus_compose(&kraus_dagger(&k2)?, &kraus_dagger(&k1)?)?;
    Ok(Sides::Channels(l, r))
}

fn cp_dag_wire(c: &mut Ctx, x: &[ObjectExpr]) -> R {
    let k = c.kraus(&x[0])?;
    Ok(Sides::Channels(kraus_dagger(&k)?, kraus_dagger_wired(&k)?))
}

// environment structure

fn env1a(c: &mut Ctx, x: &[ObjectExpr]) -> R {
    let (l, r) = env1a_sides(&EnvStructure::canonical(c.model.kind()), &x[0], &x[1])?;
    Ok(Sides::Channels(l, r))
}

fn env1b(c: &mut Ctx, x: &[ObjectExpr]) -> R {
    let (l, r) = env1b_sides(&EnvStructure::canonical(c.model.kind()), &x[0], &x[1])?;
    Ok(Sides::Channels(l, r))
}

fn env2(c: &mut Ctx, x: &[ObjectExpr]) -> R {
    Ok(Sides::Deviation(env2_deviation(&EnvStructure::canonical(c.model.kind()), &x[0], c.rng)?))
}

fn env3(c: &mut Ctx, x: &[ObjectExpr]) -> R {
    let k = c.kraus(&x[0])?;
    let (l, r) = env3_sides(&EnvStructure::canonical(c.model.kind()), &k)?;
    Ok(Sides::Channels(l, r))
}

/// Counts disagreements between the Choi decision and the test-map oracle
/// on one equivalent and one perturbed pair.
fn equiv_oracle(c: &mut Ctx, x: &[ObjectExpr]) -> R {
    let k = c.kraus(&x[0])?;
    let same = unitarily_equivalent(&k, c.rng)?;
    let other = perturbed(&k, 0.5, c.rng)?;
    let sampler = TestMapSampler::default();
    let mut wrong = 0.0;
    if !equiv_decide(&k, &same)? || !equiv_testmap_oracle(&k, &same, 50, &sampler, c.rng)?.consistent {
        wrong += 1.0;
    }
    if equiv_decide(&k, &other)? || equiv_testmap_oracle(&k, &other, 50, &sampler, c.rng)?.consistent {
        wrong += 1.0;
    }
    Ok(Sides::Deviation(wrong))
}

macro_rules! law {
    ($id:literal, $anchor:literal, [$($k:expr),*], $models:expr, $build:expr) => {
        Law { id: $id, anchor: $anchor, args: &[$($k),*], models: $models, flagged: false, build: $build }
    };
    ($id:literal, $anchor:literal, [$($k:expr),*], $models:expr, $build:expr, flagged) => {
        Law { id: $id, anchor: $anchor, args: &[$($k),*], models: $models, flagged: true, build: $build }
    };
}

static CATALOG: &[Law] = &[
    law!("DLDC1a", "(1 ⊗ λ⊗_{B,C}) ; λ⊗_{A,B⊕C} ; (a⊕⁻¹_{A,B,C})† = a⊗_{A†,B†,C†} ; (λ⊗_{A,B} ⊗ 1) ; λ⊗_{A⊕B,C}", [Any, Any, Any], ALL, dldc1a),
    law!("DLDC1b", "(1 ⊕ λ⊕_{B,C}) ; λ⊕_{A,B⊗C} ; (a⊗⁻¹_{A,B,C})† = a⊕_{A†,B†,C†} ; (λ⊕_{A,B} ⊕ 1) ; λ⊕_{A⊗B,C}", [Any, Any, Any], ALL, dldc1b),
    law!("DLDC2a", "(λ⊤ ⊗ 1) ; λ⊗_{⊥,A} = u⊗L_{A†} ; (u⊕L_A)†", [Any], ALL, dldc2a),
    law!("DLDC2b", "(λ⊥ ⊕ 1) ; λ⊕_{⊤,A} = u⊕L_{A†} ; (u⊗L_A)†", [Any], ALL, dldc2b),
    law!("DLDC2c", "(1 ⊗ λ⊤) ; λ⊗_{A,⊥} = u⊗R_{A†} ; (u⊕R_A)†", [Any], ALL, dldc2c),
    law!("DLDC2d", "(1 ⊕ λ⊥) ; λ⊕_{A,⊤} = u⊕R_{A†} ; (u⊗R_A)†", [Any], ALL, dldc2d),
    law!("DLDC3a", "(1 ⊗ λ⊕_{B,C}) ; λ⊗_{A,B⊗C} ; (δR_{A,B,C})† = δL_{A†,B†,C†} ; (λ⊗_{A,B} ⊕ 1) ; λ⊕_{A⊕B,C}", [Any, Any, Any], ALL, dldc3a),
    law!("DLDC3b", "(λ⊕_{A,B} ⊗ 1) ; λ⊗_{A⊗B,C} ; (δL_{A,B,C})† = δR_{A†,B†,C†} ; (1 ⊕ λ⊗_{B,C}) ; λ⊕_{A,B⊕C}", [Any, Any, Any], ALL, dldc3b),
    law!("DLDC4a", "ι_{A⊕B} ; (λ⊗_{A,B})† = (ι_A ⊕ ι_B) ; λ⊕_{A†,B†}", [Any, Any], ALL, dldc4a),
    law!("DLDC4b", "ι_{A⊗B} ; (λ⊕_{A,B})† = (ι_A ⊗ ι_B) ; λ⊗_{A†,B†}", [Any, Any], ALL, dldc4b),
    law!("DLDC5a", "ι_⊥ ; λ⊤† = λ⊥", [], ALL, dldc5a),
    law!("DLDC5b", "ι_⊤ ; λ⊥† = λ⊤", [], ALL, dldc5b),
    law!("DLDC6", "ι_{A†} = (ι_A⁻¹)†", [Any], ALL, dldc6),
    law!("DLDC7a", "λ⊗_{A,B} ; (c⊕_{B,A})† = c⊗_{A†,B†} ; λ⊗_{B,A}", [Any, Any], ALL, dldc7a),
    law!("DLDC7b", "λ⊕_{A,B} ; (c⊗_{B,A})† = c⊕_{A†,B†} ; λ⊕_{B,A}", [Any, Any], ALL, dldc7b),
    law!("DMIX", "m ; λ⊤ = λ⊥ ; m†", [], ALL, dmix),
    law!("MXDAG", "mx_{A†,B†} ; λ⊕_{A,B} = λ⊗_{A,B} ; (mx_{A,B})†", [Any, Any], ALL, mxdag),
    law!("MXDEF-L", "(1 ⊗ (u⊕L_B)⁻¹) ; (1 ⊗ (m ⊕ 1)) ; δL_{A,⊤,B} ; (u⊗R_A ⊕ 1) = mx_{A,B}", [Any, Any], ALL, mxdef_l),
    law!("MXDEF-R", "((u⊕R_A)⁻¹ ⊗ 1) ; ((1 ⊕ m) ⊗ 1) ; δR_{A,⊤,B} ; (1 ⊕ u⊗L_B) = mx_{A,B}", [Any, Any], ALL, mxdef_r),
    law!("ID-UNIT", "u⊗L_U ; (u⊕L_U)⁻¹ = (m⁻¹ ⊗ 1) ; mx_{⊥,U}", [Any], ALL, id_unit),
    law!("MXSLIDE-a", "(M f ⊕ M g) ; mx⁻¹ = mx⁻¹ ; (M f ⊗ M g)", [Base, Base], ALL, mxslide_a),
    law!("MXSLIDE-b", "(1 ⊕ mx⁻¹_{B,C}) ; mx⁻¹_{A,B⊗C} = mx⁻¹_{A,B⊕C} ; (1 ⊗ mx⁻¹_{B,C})", [Any, Any, Any], ALL, mxslide_b),
    law!("SNAKE-L", "(u⊗R_X)⁻¹ ; (1 ⊗ η_X) ; δL_{X,X*,X} ; (ε_X ⊕ 1) ; u⊕L_X = 1_X", [Unitary], ALL, snake_l),
    law!("SNAKE-R", "(u⊗L_{X*})⁻¹ ; (η_X ⊗ 1) ; δR_{X*,X,X*} ; (1 ⊕ ε_X) ; u⊕R_{X*} = 1_{X*}", [Unitary], ALL, snake_r),
    law!("U2", "φ_{A†} = (φ_A⁻¹)†", [Unitary], ALL, u2),
    law!("U3", "φ_A ; φ_{A†} = ι_A", [Unitary], ALL, u3),
    law!("U4a", "λ⊥ ; φ_⊤⁻¹ = m", [], ALL, u4a),
    law!("U4b", "φ_⊥ ; λ⊤⁻¹ = m", [], ALL, u4b, flagged),
    law!("U5a", "(φ_A ⊗ φ_B) λ⊗ = mx φ_{A⊕B}", [Unitary, Unitary], ALL, u5a),
    law!("U5b", "φ_{A⊗B} ; λ⊕_{A,B}⁻¹ ; (φ_A⁻¹ ⊕ φ_B⁻¹) = mx_{A,B}", [Unitary, Unitary], ALL, u5b, flagged),
    law!("UDUALa", "η_X ; (φ_{X*} ⊕ φ_X) ; c⊕_{X*†,X†} = λ⊤ ; ε_X† ; λ⊕_{X,X*}⁻¹", [Unitary], ALL, udual_a),
    law!("UDUALb", "(φ_{X*} ⊗ φ_X) ; λ⊗_{X*,X} ; η_X† = c⊗_{X*,X} ; ε_X ; λ⊥", [Unitary], ALL, udual_b),
    law!("UISO", "φ_A = f ; φ_A ; f† for unitary f : A → A", [Unitary], ALL, uiso),
    law!("MIXPRES", "mx_{A,B} = m⊗_{A,B} ; M(mx_{A,B}) ; n⊕_{A,B}", [Base, Base], ALL, mixpres),
    law!("FF-TENSOR", "m⊗_{A,B} ; M(f ⊗ g) = (M f ⊗ M g) ; m⊗_{A',B'}", [Base, Base], ALL, ff_tensor),
    law!("FF-PAR", "M(f ⊕ g) ; n⊕_{A',B'} = n⊕_{A,B} ; (M f ⊕ M g)", [Base, Base], ALL, ff_par),
    law!("FF-MIX", "M(m) = n⊥ ; m ; m⊤", [], ALL, ff_mix),
    law!("FF-ISOMIX", "m⁻¹ = m⊤ ; M(m⁻¹) ; n⊥", [], ALL, ff_isomix),
    law!("PRES", "ι_X ; (ρ_X)† = M(ι_X) ; ρ_{X†}", [Base], ALL, pres),
    law!("RHOTP-a", "m⊗ ; M(φ_{A⊗B}) ; ρ_{A⊗B} ; (m⊗)† = (M φ_A ⊗ M φ_B) ; (ρ_A ⊗ ρ_B) ; λ⊗_{A,B} ; (mx_{A,B})†", [Base, Base], ALL, rhotp_a),
    law!("RHOTP-b", "(n⊕)⁻¹ ; M(φ_{A⊕B}) ; ρ_{A⊕B} = (M φ_A ⊕ M φ_B) ; (ρ_A ⊕ ρ_B) ; λ⊕_{A,B} ; (mx_{A,B}⁻¹)† ; (n⊕)†", [Base, Base], ALL, rhotp_b),
    law!("RHO-UNIT", "λ⊤ ; (n⊥)† = m⊤ ; M(λ⊤) ; ρ_⊥", [], ALL, rho_unit),
    law!("INAT", "ι_A ; f†† = f ; ι_B", [Any], ALL, inat),
    law!("DAGF", "(f ; g)† = g† ; f†", [Any], ALL, dagf),
    law!("FSPACE", "A, A†, A ⊗ B and (A ⊕ B)† are finiteness spaces", [Any, Any], FMAT, fspace),
    law!("CP-ASSOC", "(k₁ ; k₂) ; k₃ ∼ k₁ ; (k₂ ; k₃)", [Any], ALL, cp_assoc),
    law!("CP-IDL", "1_A ; k ∼ k", [Any], ALL, cp_idl),
    law!("CP-IDR", "k ; 1_B ∼ k", [Any], ALL, cp_idr),
    law!("CP-UNITEQ", "(f, U) ∼ (f ; (α ⊕ 1), U) for unitary α", [Any], ALL, cp_uniteq),
    law!("CP-WELLDEF", "k₁ ∼ k₁' implies k₀ ; k₁ ∼ k₀ ; k₁' and k₁ ; k₂ ∼ k₁' ; k₂", [Any], ALL, cp_welldef),
    law!("CP-TENSOR-BIF", "(k₁ ; k₂) ⊗̂ (k₃ ; k₄) ∼ (k₁ ⊗̂ k₃) ; (k₂ ⊗̂ k₄)", [Any, Any], MAT_CPLANE, cp_tensor_bif),
    law!("CP-PAR-BIF", "(k₁ ; k₂) ⊕̂ (k₃ ; k₄) ∼ (k₁ ⊕̂ k₃) ; (k₂ ⊕̂ k₄)", [Any, Any], MAT_CPLANE, cp_par_bif),
    law!("CP-MIX-INV", "Q(m) ; Q(m⁻¹) ∼ 1_⊥ and Q(m⁻¹) ; Q(m) ∼ 1_⊤", [], ALL, cp_mix_inv),
    law!("CP-TP-AGREE", "(k₁ ⊗̂ k₂) ; Q(mx) ∼ Q(mx) ; (k₁ ⊕̂ k₂)", [Any, Any], ALL, cp_tp_agree),
    law!("CP-Q-FUNCT", "Q(f ; g) ∼ Q(f) ; Q(g)", [Any], ALL, cp_q_funct),
    law!("CP-N-DAG", "N(f†) ∼ N(f)†", [Base], ALL, cp_n_dag),
    law!("CP-DAG-INV", "k†† ∼ k", [Any], ALL, cp_dag_inv),
    law!("CP-DAG-CONTRA", "(k₁ ; k₂)† ∼ k₂† ; k₁†", [Any], ALL, cp_dag_contra),
    law!("CP-DAG-WIRE", "block adjoint ∼ adjoint built from (η, ε) and φ", [Any], ALL, cp_dag_wire),
    law!("ENV1a", "Q(m⊗_{U,V}) ; ⫠_{U⊗V} ∼ Q(mx_{U,V}) ; (⫠_U ⊕̂ ⫠_V) ; Q(u⊕L_⊥)", [Unitary, Unitary], ALL, env1a),
    law!("ENV1b", "⫠_{U⊕V} ∼ Q(n⊕_{U,V}) ; (⫠_U ⊕̂ ⫠_V) ; Q(u⊕L_⊥)", [Unitary, Unitary], ALL, env1b),
    law!("ENV2", "(f, U) ∼ (g, V) iff the discarded maps agree", [Any], MAT, env2),
    law!("ENV3", "every channel is a pure map followed by a discard", [Any], MAT, env3),
    law!("EQUIV-ORACLE", "Choi equality agrees with the test-map equations", [Any], MAT, equiv_oracle),
];

pub fn catalog() -> &'static [Law] {
    CATALOG
}

pub fn find_law(id: &str) -> Result<&'static Law> {
    CATALOG
        .iter()
        .find(|l| l.id == id)
        .ok_or_else(|| Error::UnknownLaw(id.to_string()))
}
