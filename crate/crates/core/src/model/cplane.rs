//! The discrete complex plane: objects are complex numbers, the only arrows
//! are identities, both monoidal products are multiplication and the dagger
//! is conjugation. The unitary subcategory is the nonzero reals.

use std::fmt;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Model, ModelKind, ObjectKind};
use crate::morphism::{Morphism, Payload, PointArrow};
use crate::object::{Atom, ObjectExpr};
use crate::rng::TrialRng;
use crate::structural::StructuralMapName;

/// Relative tolerance for all comparisons in this model.
pub const CPLANE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CNum {
    pub re: f64,
    pub im: f64,
}

impl CNum {
    pub const ONE: CNum = CNum { re: 1.0, im: 0.0 };
    pub const ZERO: CNum = CNum { re: 0.0, im: 0.0 };

    pub const fn new(re: f64, im: f64) -> Self {
        CNum { re, im }
    }

    pub fn real(re: f64) -> Self {
        CNum { re, im: 0.0 }
    }

    pub fn checked(re: f64, im: f64) -> Result<Self> {
        if re.is_finite() && im.is_finite() {
            Ok(CNum { re, im })
        } else {
            Err(Error::InvalidValue(format!("non-finite complex number {re}+{im}i")))
        }
    }

    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn norm(self) -> f64 {
        self.to_c64().norm()
    }

    pub fn is_zero(self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }

    /// Nonzero and real (up to the model tolerance).
    pub fn is_nonzero_real(self) -> bool {
        self.re != 0.0 && self.im.abs() <= CPLANE_TOL * self.re.abs()
    }
}

impl From<Complex64> for CNum {
    fn from(z: Complex64) -> Self {
        CNum { re: z.re, im: z.im }
    }
}

impl fmt::Display for CNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im == 0.0 {
            write!(f, "{}", self.re)
        } else if self.im < 0.0 {
            write!(f, "{}-{}i", self.re, -self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

/// `(a+ib) ⊗ (x+iy) = (ax − by) + i(ay + bx)`.
pub fn cnum_tensor(z: CNum, w: CNum) -> CNum {
    CNum {
        re: z.re * w.re - z.im * w.im,
        im: z.re * w.im + z.im * w.re,
    }
}

/// `(a+ib)† = a − ib`.
pub fn cnum_dagger(z: CNum) -> CNum {
    CNum { re: z.re, im: -z.im }
}

/// The linear dual `1/z`.
pub fn cnum_dual(z: CNum) -> Result<CNum> {
    if z.is_zero() {
        return Err(Error::InvalidValue("the object 0 has no dual".into()));
    }
    Ok((Complex64::new(1.0, 0.0) / z.to_c64()).into())
}

/// Relative distance `|z − w| / max(|z|, |w|)`, zero when both vanish.
pub fn rel_defect(z: CNum, w: CNum) -> f64 {
    if z == w {
        return 0.0;
    }
    let scale = z.norm().max(w.norm());
    (z.to_c64() - w.to_c64()).norm() / scale
}

pub fn approx_eq(z: CNum, w: CNum) -> bool {
    rel_defect(z, w) <= CPLANE_TOL
}

/// A Kraus map `(=, r) : c → c'`, which exists exactly when `c = r·c'`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CplaneKraus {
    pub dom: CNum,
    pub cod: CNum,
    pub ancilla: f64,
}

impl CplaneKraus {
    pub fn new(dom: CNum, cod: CNum, ancilla: f64) -> Result<Self> {
        if !kraus_valid(dom, ancilla, cod) {
            return Err(Error::TypingError(format!(
                "no Kraus map (=, {ancilla}) : {dom} → {cod}"
            )));
        }
        Ok(CplaneKraus { dom, cod, ancilla })
    }

    /// Sequential composition; ancillas multiply.
    pub fn then(&self, next: &CplaneKraus) -> Result<CplaneKraus> {
        if !approx_eq(self.cod, next.dom) {
            return Err(Error::DomCodMismatch(format!("{} vs {}", self.cod, next.dom)));
        }
        CplaneKraus::new(self.dom, next.cod, self.ancilla * next.ancilla)
    }
}

pub fn kraus_valid(c: CNum, r: f64, c_prime: CNum) -> bool {
    if r == 0.0 || !r.is_finite() {
        return false;
    }
    approx_eq(c, cnum_tensor(CNum::real(r), c_prime))
}

/// Decides `k1 ∼ k2`. Into a nonzero codomain there is at most one Kraus map;
/// into 0 every pair is equivalent.
pub fn cplane_equiv(k1: &CplaneKraus, k2: &CplaneKraus) -> Result<bool> {
    if !approx_eq(k1.dom, k2.dom) || !approx_eq(k1.cod, k2.cod) {
        return Err(Error::DomCodMismatch(format!(
            "{} → {} vs {} → {}",
            k1.dom, k1.cod, k2.dom, k2.cod
        )));
    }
    if !kraus_valid(k1.dom, k1.ancilla, k1.cod) || !kraus_valid(k2.dom, k2.ancilla, k2.cod) {
        return Ok(false);
    }
    if k1.cod.is_zero() {
        return Ok(true);
    }
    Ok(rel_defect(CNum::real(k1.ancilla), CNum::real(k2.ancilla)) <= CPLANE_TOL)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CplaneModel;

impl CplaneModel {
    pub const fn new() -> Self {
        CplaneModel
    }

    pub fn interpret(&self, a: &ObjectExpr) -> Result<CNum> {
        Ok(match a {
            ObjectExpr::Base(Atom::Num(z)) => CNum::checked(z.re, z.im)?,
            ObjectExpr::Base(other) => {
                return Err(Error::unsupported("cplane", format!("base object {other}")))
            }
            ObjectExpr::Tensor(l, r) | ObjectExpr::Par(l, r) => {
                cnum_tensor(self.interpret(l)?, self.interpret(r)?)
            }
            ObjectExpr::TensorUnit | ObjectExpr::ParUnit => CNum::ONE,
            ObjectExpr::Dagger(x) => cnum_dagger(self.interpret(x)?),
            ObjectExpr::Dual(x) => cnum_dual(self.interpret(x)?)?,
        })
    }

    /// The unique arrow `dom → cod`, provided both sides name the same number.
    pub fn arrow(&self, dom: &ObjectExpr, cod: &ObjectExpr) -> Result<Morphism> {
        let (d, c) = (self.interpret(dom)?, self.interpret(cod)?);
        let defect = rel_defect(d, c);
        if defect > CPLANE_TOL {
            return Err(Error::DomCodMismatch(format!(
                "no arrow {dom} → {cod} in the discrete plane ({d} ≠ {c})"
            )));
        }
        Ok(Morphism::new(
            ModelKind::Cplane,
            dom.clone(),
            cod.clone(),
            Payload::Point(PointArrow { dom: d, cod: c, defect }),
        ))
    }

    /// Reads a cplane channel representative back as `(=, r) : c → c'`.
    pub fn kraus_of(&self, dom: &ObjectExpr, cod: &ObjectExpr, ancilla: &ObjectExpr) -> Result<CplaneKraus> {
        let r = self.interpret(ancilla)?;
        if !r.is_nonzero_real() {
            return Err(Error::TypingError(format!("ancilla {r} is not a nonzero real")));
        }
        CplaneKraus::new(self.interpret(dom)?, self.interpret(cod)?, r.re)
    }

    fn point(f: &Morphism) -> Result<&PointArrow> {
        match f.payload() {
            Payload::Point(p) => Ok(p),
            _ => Err(Error::ModelMismatch {
                left: "cplane".into(),
                right: f.model().to_string(),
            }),
        }
    }

    fn combine(&self, dom: ObjectExpr, cod: ObjectExpr, d: CNum, c: CNum, defect: f64) -> Morphism {
        let defect = defect.max(rel_defect(d, c));
        Morphism::new(ModelKind::Cplane, dom, cod, Payload::Point(PointArrow { dom: d, cod: c, defect }))
    }

    fn random_nonzero_real(rng: &mut TrialRng) -> f64 {
        let mag = rng.random_range(0.25..2.0);
        if rng.random_bool(0.5) {
            mag
        } else {
            -mag
        }
    }
}

impl Model for CplaneModel {
    fn kind(&self) -> ModelKind {
        ModelKind::Cplane
    }

    fn name(&self) -> String {
        "cplane".into()
    }

    fn check_object(&self, a: &ObjectExpr) -> Result<()> {
        self.interpret(a).map(|_| ())
    }

    fn same_object(&self, a: &ObjectExpr, b: &ObjectExpr) -> Result<bool> {
        Ok(approx_eq(self.interpret(a)?, self.interpret(b)?))
    }

    fn is_unitary(&self, a: &ObjectExpr) -> Result<bool> {
        Ok(self.interpret(a)?.is_nonzero_real())
    }

    fn identity(&self, a: &ObjectExpr) -> Result<Morphism> {
        self.arrow(a, a)
    }

    fn compose(&self, f: &Morphism, g: &Morphism) -> Result<Morphism> {
        f.check_composable(g)?;
        let (p, q) = (Self::point(f)?, Self::point(g)?);
        let defect = p.defect.max(q.defect).max(rel_defect(p.cod, q.dom));
        Ok(self.combine(f.dom().clone(), g.cod().clone(), p.dom, q.cod, defect))
    }

    fn tensor(&self, f: &Morphism, g: &Morphism) -> Result<Morphism> {
        let (p, q) = (Self::point(f)?, Self::point(g)?);
        Ok(self.combine(
            f.dom().tensor(g.dom()),
            f.cod().tensor(g.cod()),
            cnum_tensor(p.dom, q.dom),
            cnum_tensor(p.cod, q.cod),
            p.defect.max(q.defect),
        ))
    }

    fn par(&self, f: &Morphism, g: &Morphism) -> Result<Morphism> {
        let (p, q) = (Self::point(f)?, Self::point(g)?);
        Ok(self.combine(
            f.dom().par(g.dom()),
            f.cod().par(g.cod()),
            cnum_tensor(p.dom, q.dom),
            cnum_tensor(p.cod, q.cod),
            p.defect.max(q.defect),
        ))
    }

    fn dagger(&self, f: &Morphism) -> Result<Morphism> {
        let p = Self::point(f)?;
        Ok(self.combine(
            f.cod().dag(),
            f.dom().dag(),
            cnum_dagger(p.cod),
            cnum_dagger(p.dom),
            p.defect,
        ))
    }

    fn structural(&self, name: StructuralMapName, args: &[ObjectExpr]) -> Result<Morphism> {
        if name == StructuralMapName::Unitary && !self.is_unitary(&args[0])? {
            return Err(Error::unsupported(
                "cplane",
                format!("φ at {}, which is not a nonzero real", self.interpret(&args[0])?),
            ));
        }
        let (dom, cod) = name.signature(args)?;
        self.arrow(&dom, &cod)
    }

    fn structural_inv(&self, name: StructuralMapName, args: &[ObjectExpr]) -> Result<Morphism> {
        let f = self.structural(name, args)?;
        let (dom, cod) = name.inverse_signature(args)?;
        let p = Self::point(&f)?;
        Ok(self.combine(dom, cod, p.cod, p.dom, p.defect))
    }

    fn deviation(&self, f: &Morphism, g: &Morphism) -> Result<f64> {
        let (p, q) = (Self::point(f)?, Self::point(g)?);
        Ok(rel_defect(p.dom, q.dom)
            .max(rel_defect(p.cod, q.cod))
            .max(p.defect)
            .max(q.defect))
    }

    fn include(&self, f: &Morphism) -> Result<Morphism> {
        Self::point(f)?;
        if !self.is_unitary(f.dom())? || !self.is_unitary(f.cod())? {
            return Err(Error::unsupported("cplane", "M is only defined on nonzero reals"));
        }
        Ok(f.clone())
    }

    fn base(&self) -> &dyn Model {
        self
    }

    fn sample_object(&self, kind: ObjectKind, rng: &mut TrialRng) -> ObjectExpr {
        match kind {
            ObjectKind::Any => {
                let re = rng.random_range(-2.0..2.0);
                let im = rng.random_range(-2.0..2.0);
                ObjectExpr::num(CNum::new(re, im))
            }
            ObjectKind::Unitary | ObjectKind::Base => {
                ObjectExpr::num(CNum::real(Self::random_nonzero_real(rng)))
            }
        }
    }

    fn sample_arrow(&self, dom: &ObjectExpr, _rng: &mut TrialRng) -> Result<Morphism> {
        self.identity(dom)
    }

    fn sample_arrow_to(&self, dom: &ObjectExpr, cod: &ObjectExpr, _rng: &mut TrialRng) -> Result<Morphism> {
        self.arrow(dom, cod)
    }

    fn sample_unitary(&self, a: &ObjectExpr, _rng: &mut TrialRng) -> Result<Morphism> {
        self.identity(a)
    }
}
