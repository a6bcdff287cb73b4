use std::collections::BTreeSet;

use mucat::laws::{check_law, find_law, law_deviation};
use mucat::model::cplane::CNum;
use mucat::model::fmat::FMatModel;
use mucat::model::matc::{MatModel, MatMutation};
use mucat::model::{standard_model, Model, ModelKind};
use mucat::object::ObjectExpr;
use mucat::rng::rng_from_seed;
use mucat::suite::{run_suite_on, SuiteConfig};

fn failing_laws(model: &dyn Model) -> BTreeSet<String> {
    let cfg = SuiteConfig {
        trials: 20,
        seed: 3,
        ..SuiteConfig::default()
    };
    run_suite_on(&[model], &cfg)
        .unwrap()
        .into_iter()
        .filter(|r| !r.pass)
        .map(|r| r.law)
        .collect()
}

#[test]
fn standard_matrix_model_is_clean() {
    assert!(failing_laws(&MatModel::new()).is_empty());
}

#[test]
fn each_matrix_mutation_is_caught() {
    let expected: &[(MatMutation, &[&str])] = &[
        (MatMutation::SwapLaxorArgs, &["DLDC3a", "MXDAG", "U5a"]),
        (MatMutation::ScaleLaxor, &["DLDC1a"]),
        (MatMutation::DropConjugation, &["UISO"]),
        (MatMutation::ScaleMix, &["U4a", "MXDEF-L", "MXDEF-R", "ID-UNIT"]),
        (MatMutation::TransposeSymmetry, &["DLDC7a"]),
    ];
    for &(mutation, laws) in expected {
        let failed = failing_laws(&MatModel::mutated(mutation));
        for law in laws {
            assert!(failed.contains(*law), "{} should break {law}; failing: {failed:?}", mutation.id());
        }
    }
}

#[test]
fn corrupted_laxor_witness_reproduces() {
    let law = find_law("DLDC1a").unwrap();
    let model = MatModel::mutated(MatMutation::ScaleLaxor);
    let report = check_law(law, &model, None, 50, 21, None).unwrap();
    assert!(!report.pass);
    assert_eq!(report.model, "mat+scale-laxor");
    let w = report.witness.clone().unwrap();
    assert!(w.deviation.unwrap() > report.tolerance);

    let mut rng = rng_from_seed(w.seed);
    let objects: Vec<ObjectExpr> = law.args.iter().map(|&k| model.sample_object(k, &mut rng)).collect();
    assert_eq!(objects.iter().map(ToString::to_string).collect::<Vec<_>>(), w.objects);
    let again = law_deviation(law, &model, &objects, &mut rng).unwrap();
    assert_eq!(Some(again), w.deviation);

    assert_eq!(check_law(law, &model, None, 50, 21, None).unwrap(), report);
}

#[test]
fn skipping_the_perp_closure_is_caught() {
    let failed = failing_laws(&FMatModel::skip_closure());
    assert!(failed.contains("FSPACE"), "{failed:?}");
    assert!(failing_laws(&FMatModel::new()).is_empty());
}

#[test]
fn symmetry_laws_hold_in_the_complex_plane() {
    let m = standard_model(ModelKind::Cplane);
    let objects = [ObjectExpr::num(CNum::real(2.0)), ObjectExpr::num(CNum::new(-0.5, 1.5))];
    for id in ["DLDC7a", "DLDC7b"] {
        let r = check_law(find_law(id).unwrap(), m, Some(&objects), 10, 0, None).unwrap();
        assert!(r.pass, "{id}: {r:?}");
        assert_eq!(r.tolerance, 1e-12);
    }
}

#[test]
fn explicit_tolerance_is_reported() {
    let r = check_law(find_law("DMIX").unwrap(), standard_model(ModelKind::Mat), None, 5, 1, Some(1e-3)).unwrap();
    assert_eq!(r.tolerance, 1e-3);
    assert_eq!(r.seed, 1);
    assert_eq!(r.trials, 5);
}
