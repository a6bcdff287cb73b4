//! Runs the law catalog across models.

use glob::Pattern;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laws::{catalog, check_law, Law, LawCheckReport};
use crate::model::{standard_model, Model, ModelKind};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    /// Model ids, e.g. `"mat"`.
    pub models: Vec<String>,
    /// Glob over law ids; `None` selects every law.
    pub filter: Option<String>,
    pub trials: usize,
    pub seed: u64,
    /// Overrides each model's default tolerance.
    pub tolerance: Option<f64>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            models: ModelKind::ALL.iter().map(|k| k.id().to_string()).collect(),
            filter: None,
            trials: 100,
            seed: 0,
            tolerance: None,
        }
    }
}

/// Laws whose id matches `filter`.
pub fn select_laws(filter: Option<&str>) -> Result<Vec<&'static Law>> {
    let Some(f) = filter else {
        return Ok(catalog().iter().collect());
    };
    let pattern = Pattern::new(f).map_err(|e| Error::InvalidValue(format!("bad law filter {f:?}: {e}")))?;
    let laws: Vec<&Law> = catalog().iter().filter(|l| pattern.matches(l.id)).collect();
    if laws.is_empty() {
        return Err(Error::UnknownLaw(f.to_string()));
    }
    Ok(laws)
}

pub fn run_suite(cfg: &SuiteConfig) -> Result<Vec<LawCheckReport>> {
    let models = cfg
        .models
        .iter()
        .map(|id| id.parse::<ModelKind>().map(standard_model))
        .collect::<Result<Vec<_>>>()?;
    run_suite_on(&models, cfg)
}

/// Runs the selected laws on the given model instances, which may be
/// mutated fixtures. Pairs a law does not support are skipped. Reports come
/// back sorted by law id, then model.
pub fn run_suite_on(models: &[&dyn Model], cfg: &SuiteConfig) -> Result<Vec<LawCheckReport>> {
    if let Some(t) = cfg.tolerance {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::InvalidValue(format!("tolerance must be positive, got {t}")));
        }
    }
    let laws = select_laws(cfg.filter.as_deref())?;
    let pairs: Vec<(&Law, &dyn Model)> = laws
        .iter()
        .flat_map(|&law| models.iter().filter(|m| law.supports(m.kind())).map(move |&m| (law, m)))
        .collect();
    let mut reports = pairs
        .into_par_iter()
        .map(|(law, m)| check_law(law, m, None, cfg.trials, cfg.seed, cfg.tolerance))
        .collect::<Result<Vec<_>>>()?;
    reports.sort_by(|a, b| (a.law.as_str(), a.model.as_str()).cmp(&(b.law.as_str(), b.model.as_str())));
    Ok(reports)
}

/// Catalog entry as exported by `laws-list`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LawInfo {
    pub id: String,
    pub anchor: String,
    pub arity: usize,
    pub models: Vec<String>,
    pub flagged: bool,
}

pub fn list_laws() -> Vec<LawInfo> {
    catalog()
        .iter()
        .map(|l| LawInfo {
            id: l.id.to_string(),
            anchor: l.anchor.to_string(),
            arity: l.arity(),
            models: l.models.iter().map(|k| k.id().to_string()).collect(),
            flagged: l.flagged,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filter_selects_by_glob() {
        let ids: Vec<&str> = select_laws(Some("DLDC7*")).unwrap().iter().map(|l| l.id).collect();
        assert_eq!(ids, ["DLDC7a", "DLDC7b"]);
        assert!(matches!(select_laws(Some("NOPE*")), Err(Error::UnknownLaw(_))));
        assert!(matches!(select_laws(Some("[")), Err(Error::InvalidValue(_))));
    }

    #[test]
    fn unknown_model_is_an_error() {
        let cfg = SuiteConfig {
            models: vec!["hilb".into()],
            ..SuiteConfig::default()
        };
        assert!(matches!(run_suite(&cfg), Err(Error::UnknownModel(_))));
    }

    #[test]
    fn reports_are_sorted_and_reproducible() {
        let cfg = SuiteConfig {
            filter: Some("DLDC*".into()),
            trials: 5,
            seed: 7,
            ..SuiteConfig::default()
        };
        let a = run_suite(&cfg).unwrap();
        assert_eq!(a, run_suite(&cfg).unwrap());
        assert!(a.windows(2).all(|w| (&w[0].law, &w[0].model) < (&w[1].law, &w[1].model)));
        assert!(a.iter().all(|r| r.pass));
    }

    #[test]
    fn rejects_bad_tolerance() {
        let cfg = SuiteConfig {
            tolerance: Some(0.0),
            ..SuiteConfig::default()
        };
        assert!(run_suite(&cfg).is_err());
    }

    #[test]
    fn catalog_listing() {
        let laws = list_laws();
        assert!(laws.len() >= 30);
        let u5a = laws.iter().find(|l| l.id == "U5a").unwrap();
        assert_eq!(u5a.anchor, "(φ_A ⊗ φ_B) λ⊗ = mx φ_{A⊕B}");
        assert!(laws.iter().any(|l| l.id == "DMIX"));
    }
}
