//! JSON formats for matrices, channels, Choi matrices, typed sparse
//! matrices and law reports.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::cpinf::{kraus_new, ChoiMatrix, KrausMorphism};
use crate::error::{Error, Result};
use crate::laws::LawCheckReport;
use crate::model::fmat::{FinitenessSpace, IndexSet, SetFamily, SparseMatrix};
use crate::model::matc::{DenseMatrix, MatModel, C64};
use crate::model::ModelKind;
use crate::object::ObjectExpr;

/// Row-major `{"rows","cols","entries":[[re,im],...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<[f64; 2]>,
}

impl MatrixJson {
    pub fn from_matrix(m: &DenseMatrix) -> Self {
        MatrixJson {
            rows: m.rows(),
            cols: m.cols(),
            entries: m.entries().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<DenseMatrix> {
        if self.entries.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::InvalidValue("matrix entries must be finite".into()));
        }
        let entries = self.entries.iter().map(|&[re, im]| C64::new(re, im)).collect();
        DenseMatrix::from_vec(self.rows, self.cols, entries)
    }
}

/// A matrix-model channel: `{"dom":a,"cod":b,"ancilla":u,"body":(u·b)×a}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelJson {
    pub dom: usize,
    pub cod: usize,
    pub ancilla: usize,
    pub body: MatrixJson,
}

impl ChannelJson {
    pub fn from_kraus(k: &KrausMorphism) -> Result<Self> {
        if k.model() != ModelKind::Mat {
            return Err(Error::unsupported(k.model().id(), "channel JSON"));
        }
        let m = MatModel::new();
        let (f, u) = k.dense_body()?;
        Ok(ChannelJson {
            dom: m.dim(k.dom())?,
            cod: m.dim(k.cod())?,
            ancilla: u,
            body: MatrixJson::from_matrix(&f),
        })
    }

    pub fn to_kraus(&self) -> Result<KrausMorphism> {
        let f = self.body.to_matrix()?;
        if f.shape() != (self.ancilla * self.cod, self.dom) {
            return Err(Error::ShapeMismatch(format!(
                "channel body must be {}×{}, got {}×{}",
                self.ancilla * self.cod,
                self.dom,
                f.rows(),
                f.cols()
            )));
        }
        let u = ObjectExpr::dim(self.ancilla);
        let body = MatModel::new().arrow(&ObjectExpr::dim(self.dom), &u.par(&ObjectExpr::dim(self.cod)), f)?;
        kraus_new(body, &u)
    }
}

/// A Choi matrix: the matrix fields plus its `a` and `b` dimensions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChoiJson {
    pub a: usize,
    pub b: usize,
    #[serde(flatten)]
    pub matrix: MatrixJson,
}

impl ChoiJson {
    pub fn from_choi(c: &ChoiMatrix) -> Self {
        ChoiJson {
            a: c.a,
            b: c.b,
            matrix: MatrixJson::from_matrix(&c.matrix),
        }
    }

    pub fn to_choi(&self) -> Result<ChoiMatrix> {
        ChoiMatrix::new(self.a, self.b, self.matrix.to_matrix()?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CarrierJson {
    Labels(Vec<u64>),
    /// `"omega"`.
    Tag(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FamilyJson {
    Sets(Vec<Vec<u64>>),
    /// `"fin"` or `"all"`.
    Tag(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpaceJson {
    #[serde(rename = "X")]
    pub x: CarrierJson,
    #[serde(rename = "A")]
    pub a: FamilyJson,
    #[serde(rename = "B")]
    pub b: FamilyJson,
}

impl SpaceJson {
    pub fn from_space(s: &FinitenessSpace) -> Self {
        let x = match s.carrier() {
            IndexSet::Finite(labels) => CarrierJson::Labels(labels.clone()),
            IndexSet::Omega => CarrierJson::Tag("omega".into()),
        };
        SpaceJson {
            x,
            a: family_json(s.family_a()),
            b: family_json(s.family_b()),
        }
    }

    /// Parses and validates the space.
    pub fn to_space(&self) -> Result<FinitenessSpace> {
        let x = match &self.x {
            CarrierJson::Labels(l) => IndexSet::finite(l.clone())?,
            CarrierJson::Tag(t) if t == "omega" => IndexSet::Omega,
            CarrierJson::Tag(t) => return Err(Error::InvalidValue(format!("unknown carrier {t:?}"))),
        };
        FinitenessSpace::new(x, parse_family(&self.a)?, parse_family(&self.b)?)
    }
}

fn family_json(f: &SetFamily) -> FamilyJson {
    match f {
        SetFamily::Fin => FamilyJson::Tag("fin".into()),
        SetFamily::All => FamilyJson::Tag("all".into()),
        SetFamily::Explicit { sets, .. } => FamilyJson::Sets(sets.iter().map(|s| s.iter().copied().collect()).collect()),
    }
}

fn parse_family(f: &FamilyJson) -> Result<SetFamily> {
    match f {
        FamilyJson::Tag(t) if t == "fin" => Ok(SetFamily::Fin),
        FamilyJson::Tag(t) if t == "all" => Ok(SetFamily::All),
        FamilyJson::Tag(t) => Err(Error::InvalidValue(format!("unknown set family tag {t:?}"))),
        FamilyJson::Sets(sets) => SetFamily::explicit(sets.iter().map(|s| s.iter().copied().collect())),
    }
}

/// `{"src":space,"tgt":space,"entries":[[x,y,re,im],...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SparseJson {
    pub src: SpaceJson,
    pub tgt: SpaceJson,
    pub entries: Vec<(u64, u64, f64, f64)>,
}

impl SparseJson {
    pub fn from_sparse(m: &SparseMatrix) -> Self {
        SparseJson {
            src: SpaceJson::from_space(m.src()),
            tgt: SpaceJson::from_space(m.tgt()),
            entries: m.entries().iter().map(|(&(x, y), z)| (x, y, z.re, z.im)).collect(),
        }
    }

    /// Parses the spaces and checks the support against them.
    pub fn to_sparse(&self) -> Result<SparseMatrix> {
        let (src, tgt) = (self.src.to_space()?, self.tgt.to_space()?);
        for &(x, y, _, _) in &self.entries {
            if !src.carrier().contains(x) || !tgt.carrier().contains(y) {
                return Err(Error::SpaceMismatch(format!("entry ({x}, {y}) lies outside {src} → {tgt}")));
            }
        }
        SparseMatrix::new(src, tgt, self.entries.iter().map(|&(x, y, re, im)| ((x, y), C64::new(re, im))))
    }
}

pub fn parse<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::InvalidValue(format!("malformed JSON: {e}")))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("serializable value")
}

/// One report per line.
pub fn reports_to_json_lines(reports: &[LawCheckReport]) -> String {
    reports.iter().map(|r| to_json(r) + "\n").collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cpinf::{env_discard, kraus_identity, to_choi};

    #[test]
    fn matrix_round_trip_and_exact_shape() {
        let m = DenseMatrix::from_rows(&[vec![C64::new(1.0, 2.0), C64::new(0.0, -1.0)]]).unwrap();
        let j = to_json(&MatrixJson::from_matrix(&m));
        assert_eq!(j, r#"{"rows":1,"cols":2,"entries":[[1.0,2.0],[0.0,-1.0]]}"#);
        assert_eq!(parse::<MatrixJson>(&j).unwrap().to_matrix().unwrap(), m);
    }

    #[test]
    fn rejects_non_finite_and_bad_shapes() {
        let bad = MatrixJson {
            rows: 1,
            cols: 1,
            entries: vec![[f64::NAN, 0.0]],
        };
        assert!(bad.to_matrix().is_err());
        assert!(parse::<MatrixJson>(r#"{"rows":1,"cols":1,"entries":[[1e999,0]]}"#).is_err());
        assert!(parse::<MatrixJson>(r#"{"rows":2,"cols":1,"entries":[[1,0]]}"#).unwrap().to_matrix().is_err());
    }

    #[test]
    fn channel_round_trip() {
        let k = env_discard(ModelKind::Mat, &ObjectExpr::dim(2)).unwrap();
        let j = ChannelJson::from_kraus(&k).unwrap();
        assert_eq!((j.dom, j.cod, j.ancilla), (2, 1, 2));
        let back = parse::<ChannelJson>(&to_json(&j)).unwrap().to_kraus().unwrap();
        assert_eq!(back.body().dense(), k.body().dense());
        let mut wrong = j.clone();
        wrong.ancilla = 3;
        assert!(matches!(wrong.to_kraus(), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn choi_carries_dimensions() {
        let c = to_choi(&kraus_identity(ModelKind::Mat, &ObjectExpr::dim(2)).unwrap()).unwrap();
        let text = to_json(&ChoiJson::from_choi(&c));
        assert!(text.starts_with(r#"{"a":2,"b":2,"rows":4"#));
        assert_eq!(parse::<ChoiJson>(&text).unwrap().to_choi().unwrap(), c);
    }

    #[test]
    fn sparse_json_with_tags() {
        let text = r#"{"src":{"X":[1,4],"A":"fin","B":"fin"},"tgt":{"X":"omega","A":"fin","B":"all"},
                       "entries":[[1,7,1.0,0.0],[4,7,0.0,2.0]]}"#;
        let m = parse::<SparseJson>(text).unwrap().to_sparse().unwrap();
        assert_eq!(m.get(4, 7), C64::new(0.0, 2.0));
        let again = parse::<SparseJson>(&to_json(&SparseJson::from_sparse(&m))).unwrap().to_sparse().unwrap();
        assert_eq!(again, m);
        let outside = text.replace("[4,7", "[5,7");
        assert!(matches!(parse::<SparseJson>(&outside).unwrap().to_sparse(), Err(Error::SpaceMismatch(_))));
        let bad_tag = text.replace(r#""B":"all""#, r#""B":"some""#);
        assert!(parse::<SparseJson>(&bad_tag).unwrap().to_sparse().is_err());
    }
}
