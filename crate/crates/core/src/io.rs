//! JSON input and output formats.
//!
//! Parsing (`parse_*`) only fails on malformed JSON or a wrong shape;
//! conversions into library types report semantic problems separately.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abelian::FGAbGroup;
use crate::complex::FreeCochainComplex;
use crate::coxeter::{CoxeterError, CoxeterSystem};
use crate::functor::{CoefFunctor, FunctorError};
use crate::global::{GlobalCoveringFamily, GlobalError};
use crate::linalg::IntMatrix;
use crate::morse::{parse_rational, MorseError, MorseFunction, Rational};
use crate::poset::{GradedPoset, PosetData};
use crate::simplex::{LocalCoveringFamily, SimplexError, SimplicialComplex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InputError {
    /// Malformed JSON or a document of the wrong shape.
    #[error("parse error: {0}")]
    Parse(String),
    /// Well-formed input describing an invalid object.
    #[error("{0}")]
    Invalid(String),
}

macro_rules! invalid_from {
    ($($t:ty),*) => {
        $(impl From<$t> for InputError {
            fn from(e: $t) -> Self {
                InputError::Invalid(e.to_string())
            }
        })*
    };
}

invalid_from!(FunctorError, GlobalError, MorseError, SimplexError, CoxeterError, crate::poset::PosetError);

pub fn parse<T: DeserializeOwned>(text: &str) -> Result<T, InputError> {
    serde_json::from_str(text).map_err(|e| InputError::Parse(e.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectEntry {
    pub id: String,
    pub degree: i64,
}

/// `{"objects": [{"id", "degree"}], "relations": [["p", "q"]]}` with `p ≤ q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetFile {
    pub objects: Vec<ObjectEntry>,
    #[serde(default)]
    pub relations: Vec<(String, String)>,
}

impl PosetFile {
    pub fn to_data(&self) -> PosetData {
        PosetData {
            objects: self.objects.iter().map(|o| (o.id.clone(), o.degree)).collect(),
            relations: self.relations.clone(),
        }
    }

    /// Cover relations only.
    pub fn from_poset(poset: &GradedPoset) -> Self {
        PosetFile {
            objects: (0..poset.len())
                .map(|p| ObjectEntry { id: poset.id(p).into(), degree: poset.degree(p) as i64 })
                .collect(),
            relations: poset.hasse_edges().map(|(p, q)| (poset.id(p).into(), poset.id(q).into())).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValueEntry {
    pub rank: usize,
    /// Relation vectors (columns of the presentation matrix).
    #[serde(default)]
    pub relations: Vec<Vec<i64>>,
}

/// `{"values": {"p": {"rank", "relations"}}, "arrows": {"p->q": [[row-major]]}}`.
///
/// The arrow matrix of `p -> q` has `rank(q)` rows and `rank(p)` columns.
/// Arrows between zero-rank values may be omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorFile {
    pub values: BTreeMap<String, ValueEntry>,
    #[serde(default)]
    pub arrows: BTreeMap<String, Vec<Vec<i64>>>,
}

impl FunctorFile {
    pub fn build(&self, poset: Arc<GradedPoset>) -> Result<CoefFunctor, InputError> {
        let mut values = Vec::with_capacity(poset.len());
        for p in 0..poset.len() {
            let id = poset.id(p);
            let entry = self.values.get(id).ok_or_else(|| InputError::Invalid(format!("no value for `{id}`")))?;
            for (k, r) in entry.relations.iter().enumerate() {
                if r.len() != entry.rank {
                    return Err(InputError::Invalid(format!(
                        "relation {k} of `{id}` has {} entries, expected {}",
                        r.len(),
                        entry.rank
                    )));
                }
            }
            let rels = IntMatrix::from_columns(&entry.relations, entry.rank)
                .map_err(|e| InputError::Invalid(format!("value of `{id}`: {e}")))?;
            values.push(FGAbGroup::new(entry.rank, rels).map_err(|e| InputError::Invalid(e.to_string()))?);
        }
        for id in self.values.keys() {
            poset.index_of(id)?;
        }
        let mut arrows = HashMap::new();
        for (key, rows) in &self.arrows {
            let (a, b) = key
                .split_once("->")
                .ok_or_else(|| InputError::Invalid(format!("arrow key `{key}` is not of the form `p->q`")))?;
            let (p, q) = (poset.index_of(a.trim())?, poset.index_of(b.trim())?);
            let (r, c) = (values[q].rank(), values[p].rank());
            if rows.len() != r {
                return Err(InputError::Invalid(format!("arrow `{key}` has {} rows, expected {r}", rows.len())));
            }
            let m = IntMatrix::from_rows(rows, c).map_err(|e| InputError::Invalid(format!("arrow `{key}`: {e}")))?;
            arrows.insert((p, q), m);
        }
        for (p, q) in poset.hasse_edges() {
            if !arrows.contains_key(&(p, q)) && (values[p].rank() == 0 || values[q].rank() == 0) {
                arrows.insert((p, q), IntMatrix::zeros(values[q].rank(), values[p].rank()));
            }
        }
        Ok(CoefFunctor::new(poset, values, &arrows)?)
    }

    pub fn from_functor(f: &CoefFunctor) -> Self {
        let poset = f.poset();
        let values = (0..poset.len())
            .map(|p| {
                let g = f.value(p);
                let rels = g.relations();
                (
                    poset.id(p).to_string(),
                    ValueEntry { rank: g.rank(), relations: (0..rels.cols()).map(|j| rels.column(j)).collect() },
                )
            })
            .collect();
        let arrows = poset
            .hasse_edges()
            .map(|(p, q)| (format!("{}->{}", poset.id(p), poset.id(q)), f.arrow(p, q).to_rows()))
            .collect();
        FunctorFile { values, arrows }
    }
}

/// `{"facets": [["v0", "v1"], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub facets: Vec<Vec<String>>,
}

impl ComplexFile {
    pub fn build(&self) -> Result<SimplicialComplex, InputError> {
        Ok(SimplicialComplex::from_facets(&self.facets)?)
    }
}

/// `{"facets": [...], "f": {"v0": "0", "v0 v1": "3/2"}}`. Values may be
/// strings (`"a"`, `"a/b"`, decimals) or JSON numbers with an exact decimal form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorseFile {
    pub facets: Vec<Vec<String>>,
    pub f: BTreeMap<String, serde_json::Value>,
}

impl MorseFile {
    pub fn values(&self) -> Result<BTreeMap<String, Rational>, InputError> {
        self.f
            .iter()
            .map(|(k, v)| {
                let text = match v {
                    serde_json::Value::String(s) => s.clone(),
                    serde_json::Value::Number(n) => n.to_string(),
                    other => return Err(InputError::Invalid(format!("value of `{k}` is not a number: {other}"))),
                };
                Ok((k.clone(), parse_rational(&text)?))
            })
            .collect()
    }

    pub fn build(&self) -> Result<(SimplicialComplex, MorseFunction), InputError> {
        let complex = SimplicialComplex::from_facets(&self.facets)?;
        let f = MorseFunction::new(&complex, &self.values()?)?;
        Ok((complex, f))
    }
}

fn parse_degree(key: &str) -> Result<usize, InputError> {
    key.trim().parse().map_err(|_| InputError::Invalid(format!("`{key}` is not a degree")))
}

/// `{"K": {"0": ["x"], "1": ["d", "e"]}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GlobalFamilyFile {
    #[serde(rename = "K")]
    pub k: BTreeMap<String, Vec<String>>,
}

impl GlobalFamilyFile {
    pub fn build(&self, poset: &GradedPoset) -> Result<GlobalCoveringFamily, InputError> {
        let raw = self
            .k
            .iter()
            .map(|(n, ids)| Ok((parse_degree(n)?, ids.clone())))
            .collect::<Result<BTreeMap<_, _>, InputError>>()?;
        Ok(GlobalCoveringFamily::from_ids(poset, &raw)?)
    }

    pub fn from_family(poset: &GradedPoset, k: &GlobalCoveringFamily) -> Self {
        GlobalFamilyFile { k: k.to_ids(poset).into_iter().map(|(n, v)| (n.to_string(), v)).collect() }
    }
}

/// `{"J": {"p": {"0": ["q"], ...}}}`; the level `J_{deg p}^p = {p}` may be omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocalFamilyFile {
    #[serde(rename = "J")]
    pub j: BTreeMap<String, BTreeMap<String, Vec<String>>>,
}

impl LocalFamilyFile {
    pub fn build(&self, poset: &GradedPoset) -> Result<LocalCoveringFamily, InputError> {
        let mut raw = BTreeMap::new();
        for (id, levels) in &self.j {
            let parsed = levels
                .iter()
                .map(|(n, ids)| Ok((parse_degree(n)?, ids.clone())))
                .collect::<Result<BTreeMap<_, _>, InputError>>()?;
            raw.insert(id.clone(), parsed);
        }
        Ok(LocalCoveringFamily::from_ids(poset, &raw)?)
    }

    pub fn from_family(poset: &GradedPoset, j: &LocalCoveringFamily) -> Self {
        LocalFamilyFile {
            j: j.to_ids(poset)
                .into_iter()
                .map(|(id, levels)| (id, levels.into_iter().map(|(n, v)| (n.to_string(), v)).collect()))
                .collect(),
        }
    }
}

/// `{"generators": ["s1", "s2"], "matrix": [[1, 3], [3, 1]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoxeterFile {
    pub generators: Vec<String>,
    pub matrix: Vec<Vec<u32>>,
}

impl CoxeterFile {
    pub fn build(&self) -> Result<CoxeterSystem, InputError> {
        Ok(CoxeterSystem::new(self.generators.clone(), self.matrix.clone())?)
    }
}

/// A cochain complex for external verification: ranks and row-major
/// differential matrices (`d_n` has `ranks[n+1]` rows).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexExport {
    pub ranks: Vec<usize>,
    pub differentials: Vec<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<Vec<String>>,
}

impl ComplexExport {
    pub fn from_complex(c: &FreeCochainComplex) -> Self {
        ComplexExport {
            ranks: c.ranks.clone(),
            differentials: c.differentials.iter().map(IntMatrix::to_rows).collect(),
            labels: c.labels.clone(),
        }
    }

    pub fn to_complex(&self) -> Result<FreeCochainComplex, InputError> {
        let ds = self
            .differentials
            .iter()
            .enumerate()
            .map(|(n, rows)| {
                let cols = *self.ranks.get(n).ok_or_else(|| InputError::Invalid("too many differentials".into()))?;
                IntMatrix::from_rows(rows, cols).map_err(|e| InputError::Invalid(format!("d_{n}: {e}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        FreeCochainComplex::new(self.ranks.clone(), ds)
            .map(|c| c.with_labels(self.labels.clone()))
            .map_err(|e| InputError::Invalid(e.to_string()))
    }
}

/// Which format a JSON document is in, judged by its top-level keys.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InputKind {
    Poset,
    Complex,
    Morse,
    Functor,
    GlobalFamily,
    LocalFamily,
    Coxeter,
}

pub fn detect_kind(text: &str) -> Result<InputKind, InputError> {
    let v: serde_json::Value = parse(text)?;
    let obj = v.as_object().ok_or_else(|| InputError::Parse("top level is not a JSON object".into()))?;
    let has = |k: &str| obj.contains_key(k);
    Ok(if has("objects") {
        InputKind::Poset
    } else if has("facets") && has("f") {
        InputKind::Morse
    } else if has("facets") {
        InputKind::Complex
    } else if has("generators") {
        InputKind::Coxeter
    } else if has("values") {
        InputKind::Functor
    } else if has("K") {
        InputKind::GlobalFamily
    } else if has("J") {
        InputKind::LocalFamily
    } else {
        return Err(InputError::Parse("unrecognised input format".into()));
    })
}
