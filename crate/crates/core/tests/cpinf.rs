use mucat::cpinf::{
    channel_deviation, equiv_decide, functor_n, functor_q, kraus_apply, kraus_compose, kraus_dagger, kraus_identity,
    kraus_new, kraus_par, kraus_tensor, pure_decomposition, purify, sample_kraus, to_choi, ChoiMatrix,
    EnvStructure, KrausMorphism,
};
use mucat::model::cplane::{CNum, CplaneModel};
use mucat::model::matc::{DenseMatrix, MatModel, C64};
use mucat::model::{standard_model, Model, ModelKind};
use mucat::object::ObjectExpr;
use mucat::rng::{random_density, random_unitary, rng_from_seed};

const TOL: f64 = 1e-9;

fn num(x: f64) -> ObjectExpr {
    ObjectExpr::num(CNum::real(x))
}

fn cplane_kraus(dom: f64, r: f64, cod: f64) -> KrausMorphism {
    let (u, b) = (num(r), num(cod));
    kraus_new(CplaneModel::new().arrow(&num(dom), &u.par(&b)).unwrap(), &u).unwrap()
}

fn mat_channel(seed: u64, a: usize, u: usize, b: usize) -> KrausMorphism {
    let mut rng = rng_from_seed(seed);
    let m = standard_model(ModelKind::Mat);
    let (uo, bo) = (ObjectExpr::dim(u), ObjectExpr::dim(b));
    kraus_new(m.sample_arrow_to(&ObjectExpr::dim(a), &uo.par(&bo), &mut rng).unwrap(), &uo).unwrap()
}

#[test]
fn cplane_composite_multiplies_ancillas() {
    let k = kraus_compose(&cplane_kraus(6.0, 2.0, 3.0), &cplane_kraus(3.0, 3.0, 1.0)).unwrap();
    let cp = CplaneModel::new();
    let read = cp.kraus_of(k.dom(), k.cod(), k.ancilla()).unwrap();
    assert_eq!((read.dom, read.cod, read.ancilla), (CNum::real(6.0), CNum::real(1.0), 6.0));
    assert!(channel_deviation(&k, &cplane_kraus(6.0, 6.0, 1.0)).unwrap() <= 1e-12);
}

#[test]
fn cplane_rejects_mistyped_kraus_maps() {
    let (u, b) = (num(2.0), num(2.0));
    assert!(CplaneModel::new().arrow(&num(6.0), &u.par(&b)).is_err());
}

#[test]
fn tensor_acts_on_product_states() {
    let (k1, k2) = (mat_channel(1, 2, 2, 3), mat_channel(2, 3, 2, 2));
    let mut rng = rng_from_seed(3);
    let (r1, r2) = (random_density(2, &mut rng).unwrap(), random_density(3, &mut rng).unwrap());
    let joint = kraus_apply(&kraus_tensor(&k1, &k2).unwrap(), &r1.kron(&r2).unwrap()).unwrap();
    let separate = kraus_apply(&k1, &r1).unwrap().kron(&kraus_apply(&k2, &r2).unwrap()).unwrap();
    assert!(joint.max_abs_diff(&separate).unwrap() <= TOL);
}

#[test]
fn tensor_and_par_agree_on_matrices() {
    let (k1, k2) = (mat_channel(4, 2, 3, 2), mat_channel(5, 1, 2, 3));
    assert!(equiv_decide(&kraus_tensor(&k1, &k2).unwrap(), &kraus_par(&k1, &k2).unwrap()).unwrap());
}

#[test]
fn dagger_of_unitary_conjugation_inverts_it() {
    let m = MatModel::new();
    let a = ObjectExpr::dim(3);
    let matrix = random_unitary(3, &mut rng_from_seed(6)).unwrap();
    let u = m.arrow(&a, &a, matrix.clone()).unwrap();
    let adjoint = kraus_dagger(&functor_q(&u).unwrap()).unwrap();
    let inverse = functor_q(&m.dagger(&u).unwrap()).unwrap();
    assert!(channel_deviation(&adjoint, &inverse).unwrap() <= TOL);
    let redo = functor_q(&m.arrow(&a.dag(), &a.dag(), matrix).unwrap()).unwrap();
    let round = kraus_compose(&adjoint, &redo).unwrap();
    assert!(channel_deviation(&round, &kraus_identity(ModelKind::Mat, &a.dag()).unwrap()).unwrap() <= TOL);
}

#[test]
fn adjoint_choi_is_swapped_conjugate() {
    let k = mat_channel(7, 2, 2, 3);
    let (c, cd) = (to_choi(&k).unwrap(), to_choi(&kraus_dagger(&k).unwrap()).unwrap());
    let (a, b) = (2, 3);
    assert_eq!((cd.a, cd.b), (b, a));
    for j in 0..b {
        for i in 0..a {
            for j2 in 0..b {
                for i2 in 0..a {
                    let want = c.matrix[(j * a + i, j2 * a + i2)].conj();
                    assert!((cd.matrix[(i * b + j, i2 * b + j2)] - want).norm() <= TOL);
                }
            }
        }
    }
}

#[test]
fn identity_is_not_discard_then_prepare() {
    let m = MatModel::new();
    let (a, bot) = (ObjectExpr::dim(2), ObjectExpr::bot());
    let discard = EnvStructure::canonical(ModelKind::Mat).discard(&a).unwrap();
    let ket0 = DenseMatrix::from_rows(&[vec![C64::new(1.0, 0.0)], vec![C64::new(0.0, 0.0)]]).unwrap();
    let prepare = functor_q(&m.arrow(&bot, &a, ket0).unwrap()).unwrap();
    let replace = kraus_compose(&discard, &prepare).unwrap();
    assert!(!equiv_decide(&replace, &kraus_identity(ModelKind::Mat, &a).unwrap()).unwrap());
}

#[test]
fn global_phase_is_invisible() {
    let m = MatModel::new();
    let a = ObjectExpr::dim(2);
    let u = random_unitary(2, &mut rng_from_seed(8)).unwrap();
    let phase = C64::from_polar(1.0, 0.7);
    let shifted = DenseMatrix::from_vec(2, 2, u.entries().iter().map(|z| z * phase).collect()).unwrap();
    let (q1, q2) = (
        functor_q(&m.arrow(&a, &a, u).unwrap()).unwrap(),
        functor_q(&m.arrow(&a, &a, shifted).unwrap()).unwrap(),
    );
    assert!(equiv_decide(&q1, &q2).unwrap());
}

#[test]
fn maximally_mixing_qubit_channel_has_four_kraus_operators() {
    let mut choi = DenseMatrix::zeros(4, 4).unwrap();
    for d in 0..4 {
        choi[(d, d)] = C64::new(0.5, 0.0);
    }
    let k = purify(&ChoiMatrix::new(2, 2, choi).unwrap()).unwrap();
    let ops = pure_decomposition(&k).unwrap();
    assert_eq!(ops.len(), 4);
    let rho = random_density(2, &mut rng_from_seed(9)).unwrap();
    let out = kraus_apply(&k, &rho).unwrap();
    let half = DenseMatrix::identity(2).unwrap().scale(C64::new(0.5, 0.0));
    assert!(out.max_abs_diff(&half).unwrap() <= TOL);
}

#[test]
fn n_commutes_with_dagger() {
    let m = standard_model(ModelKind::Mat);
    let mut rng = rng_from_seed(10);
    for _ in 0..10 {
        let f = m.base().sample_arrow(&ObjectExpr::dim(2), &mut rng).unwrap();
        let l = functor_n(ModelKind::Mat, &m.base().dagger(&f).unwrap()).unwrap();
        let r = kraus_dagger(&functor_n(ModelKind::Mat, &f).unwrap()).unwrap();
        assert!(channel_deviation(&l, &r).unwrap() <= TOL);
    }
}

#[test]
fn discard_computes_the_trace() {
    let discard = EnvStructure::canonical(ModelKind::Mat).discard(&ObjectExpr::dim(2)).unwrap();
    let rho = DenseMatrix::from_rows(&[
        vec![C64::new(0.3, 0.0), C64::new(0.1, 0.2)],
        vec![C64::new(0.1, -0.2), C64::new(0.7, 0.0)],
    ])
    .unwrap();
    let out = kraus_apply(&discard, &rho).unwrap();
    assert_eq!(out.shape(), (1, 1));
    assert!((out[(0, 0)] - C64::new(1.0, 0.0)).norm() <= TOL);
}

#[test]
fn channels_from_every_model_compose_with_identities() {
    for kind in ModelKind::ALL {
        let m = standard_model(kind);
        let mut rng = rng_from_seed(12);
        let a = m.sample_object(mucat::model::ObjectKind::Any, &mut rng);
        let k = sample_kraus(m, &a, &mut rng).unwrap();
        let l = kraus_compose(&kraus_identity(kind, &a).unwrap(), &k).unwrap();
        let r = kraus_compose(&k, &kraus_identity(kind, k.cod()).unwrap()).unwrap();
        assert!(channel_deviation(&l, &k).unwrap() <= kind.default_tolerance(), "{kind}");
        assert!(channel_deviation(&r, &k).unwrap() <= kind.default_tolerance(), "{kind}");
    }
}
