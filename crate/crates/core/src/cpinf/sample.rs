//! Random Kraus morphisms and constructed (in)equivalent partners.

use super::{kraus_new, KrausMorphism};
use crate::error::{Error, Result};
use crate::model::cplane::{CNum, CplaneModel};
use crate::model::matc::{DenseMatrix, MatModel, C64};
use crate::model::{standard_model, Model, ModelKind, ObjectKind};
use crate::object::ObjectExpr;
use crate::rng::{random_dense, random_isometry, TrialRng};

/// A random Kraus morphism out of `dom` with a fresh ancilla and codomain.
pub fn sample_kraus(model: &dyn Model, dom: &ObjectExpr, rng: &mut TrialRng) -> Result<KrausMorphism> {
    let u = model.sample_object(ObjectKind::Unitary, rng);
    let cod = match model.kind() {
        ModelKind::Cplane => {
            // (=, r) : c → c' exists exactly for c' = c / r
            let cp = CplaneModel::new();
            let (c, r) = (cp.interpret(dom)?, cp.interpret(&u)?);
            ObjectExpr::num(CNum::from(c.to_c64() / r.to_c64()))
        }
        _ => model.sample_object(ObjectKind::Any, rng),
    };
    let body = model.sample_arrow_to(dom, &u.par(&cod), rng)?;
    kraus_new(body, &u)
}

/// `(f ; (α ⊕ 1), U)` for a random unitary `α` on the ancilla.
pub fn unitarily_equivalent(k: &KrausMorphism, rng: &mut TrialRng) -> Result<KrausMorphism> {
    let m = standard_model(k.model());
    let alpha = m.sample_unitary(k.ancilla(), rng)?;
    let body = m.compose(k.body(), &m.par(&alpha, &m.identity(k.cod())?)?)?;
    kraus_new(body, k.ancilla())
}

/// `((W ⊗ 1) f, U')` for a random isometry `W : U → U'` with `extra` more
/// ancilla dimensions.
pub fn isometric_padding(k: &KrausMorphism, extra: usize, rng: &mut TrialRng) -> Result<KrausMorphism> {
    if k.model() != ModelKind::Mat {
        return Err(Error::unsupported(k.model().id(), "isometric padding"));
    }
    let (f, u) = k.dense_body()?;
    let b = f.rows() / u;
    let w = random_isometry(u + extra, u, rng)?;
    let body = w.kron(&DenseMatrix::identity(b)?)?.matmul(&f)?;
    let u2 = ObjectExpr::dim(u + extra);
    kraus_new(MatModel::new().arrow(k.dom(), &u2.par(k.cod()), body)?, &u2)
}

/// The same body plus a random perturbation of size `scale`; almost surely
/// a different channel.
pub fn perturbed(k: &KrausMorphism, scale: f64, rng: &mut TrialRng) -> Result<KrausMorphism> {
    if k.model() != ModelKind::Mat {
        return Err(Error::unsupported(k.model().id(), "perturbation"));
    }
    let (f, _) = k.dense_body()?;
    let noise = random_dense(f.rows(), f.cols(), rng)?.scale(C64::new(scale, 0.0));
    let body = MatModel::new().arrow(k.dom(), k.body().cod(), f.add(&noise)?)?;
    kraus_new(body, k.ancilla())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cpinf::equiv_decide;
    use crate::rng::rng_from_seed;

    #[test]
    fn sampled_kraus_maps_are_valid_in_every_model() {
        for kind in ModelKind::ALL {
            let m = standard_model(kind);
            let mut rng = rng_from_seed(1);
            let dom = m.sample_object(ObjectKind::Any, &mut rng);
            let k = sample_kraus(m, &dom, &mut rng).unwrap();
            assert_eq!(k.dom(), &dom);
            assert!(m.is_unitary(k.ancilla()).unwrap());
        }
    }

    #[test]
    fn padding_preserves_the_channel() {
        let m = standard_model(ModelKind::Mat);
        let mut rng = rng_from_seed(2);
        let k = sample_kraus(m, &ObjectExpr::dim(2), &mut rng).unwrap();
        let p = isometric_padding(&k, 2, &mut rng).unwrap();
        assert!(equiv_decide(&k, &p).unwrap());
        let q = perturbed(&k, 0.1, &mut rng).unwrap();
        assert!(!equiv_decide(&k, &q).unwrap());
    }
}
