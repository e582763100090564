//! JSON formats for relations, actions, cones and lattice certificates.
//!
//! Rationals are written as `"p/q"` strings so no precision is lost.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::action::{ActionError, GroupOptions, PermAction, Permutation};
use crate::lattice::{
    format_rational, parse_rational, BoundedSearch, ConeError, ConeOrder, GordanCertificate,
    MembershipCertificate, Rational, WeightOrder,
};
use crate::relation::{Relation, RelationError, Universe, DEFAULT_RELATION_CAP};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Relation(#[from] RelationError),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error("malformed rational {0:?}")]
    Rational(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationJson {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub pairs: Vec<[usize; 2]>,
    #[serde(rename = "reflexiveClose", default)]
    pub reflexive_close: bool,
    /// Human-readable rendering; ignored on input.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub summary: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorJson {
    pub name: String,
    pub map: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionJson {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub generators: Vec<GeneratorJson>,
    #[serde(
        rename = "allowNonabelian",
        default,
        skip_serializing_if = "Option::is_none"
    )]
    pub allow_nonabelian: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeJson {
    pub k: usize,
    pub gens: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum GordanJson {
    PositiveWeight { weight: Vec<String> },
    ZeroCombo { lambda: Vec<u64> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum MembershipJson {
    Combo { coefficients: Vec<String> },
    SeparatingWeight { weight: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum BoundedSearchJson {
    Found { coefficients: Vec<u64> },
    NotFound { bound: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightOrderJson {
    pub k: usize,
    pub rows: Vec<Vec<String>>,
}

fn universe_from(n: usize, labels: Option<Vec<String>>, cap: usize) -> Result<Universe, IoError> {
    if n > cap {
        return Err(RelationError::CapExceeded {
            what: "universe",
            size: n,
            cap,
        }
        .into());
    }
    match labels {
        None => Ok(Universe::new(n)?),
        Some(l) if l.len() != n => Err(RelationError::LabelCount {
            expected: n,
            found: l.len(),
        }
        .into()),
        Some(l) => Ok(Universe::with_labels(l)?),
    }
}

fn labels_of(u: &Universe) -> Option<Vec<String>> {
    (!u.has_default_labels()).then(|| u.labels().to_vec())
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn rationals(v: &[String]) -> Result<Vec<Rational>, IoError> {
    v.iter()
        .map(|s| parse_rational(s).ok_or_else(|| IoError::Rational(s.clone())))
        .collect()
}

impl RelationJson {
    pub fn into_relation(self, cap: usize) -> Result<Relation, IoError> {
        let universe = universe_from(self.n, self.labels, cap)?;
        let r = Relation::from_pairs(universe, self.pairs.iter().map(|p| (p[0], p[1])))?;
        Ok(if self.reflexive_close {
            r.reflexive_closure()
        } else {
            r
        })
    }

    /// Every pair listed explicitly, in row-major order.
    pub fn from_relation(r: &Relation) -> Self {
        RelationJson {
            n: r.size(),
            labels: labels_of(r.universe()),
            pairs: r.pairs().map(|(a, b)| [a, b]).collect(),
            reflexive_close: false,
            summary: None,
        }
    }

    pub fn with_summary(mut self, r: &Relation) -> Self {
        self.summary = Some(r.summary());
        self
    }
}

impl ActionJson {
    pub fn into_action(self, cap: usize) -> Result<PermAction, IoError> {
        let universe = universe_from(self.n, self.labels, cap)?;
        let mut gens = Vec::with_capacity(self.generators.len());
        for g in self.generators {
            if g.map.len() != self.n {
                return Err(ActionError::WrongLength {
                    name: g.name,
                    expected: self.n,
                    found: g.map.len(),
                }
                .into());
            }
            let perm = Permutation::from_map(g.map).ok_or_else(|| ActionError::NotBijection {
                name: g.name.clone(),
                size: self.n,
            })?;
            gens.push((g.name, perm));
        }
        let options = GroupOptions {
            allow_nonabelian: self.allow_nonabelian.unwrap_or(false),
            ..GroupOptions::default()
        };
        Ok(PermAction::with_options(universe, gens, options)?)
    }

    pub fn from_action(a: &PermAction) -> Self {
        ActionJson {
            n: a.universe().size(),
            labels: labels_of(a.universe()),
            generators: a
                .generators()
                .iter()
                .map(|g| GeneratorJson {
                    name: g.name.clone(),
                    map: g.perm.as_slice().to_vec(),
                })
                .collect(),
            allow_nonabelian: (!a.is_abelian()).then_some(true),
        }
    }
}

impl ConeJson {
    pub fn into_cone(self) -> Result<ConeOrder, IoError> {
        Ok(ConeOrder::new(self.k, self.gens)?)
    }

    pub fn from_cone(c: &ConeOrder) -> Self {
        ConeJson {
            k: c.dim(),
            gens: c.gens().to_vec(),
        }
    }
}

impl From<&GordanCertificate> for GordanJson {
    fn from(c: &GordanCertificate) -> Self {
        match c {
            GordanCertificate::PositiveWeight(w) => {
                GordanJson::PositiveWeight { weight: strings(w) }
            }
            GordanCertificate::ZeroCombo(l) => GordanJson::ZeroCombo { lambda: l.clone() },
        }
    }
}

impl GordanJson {
    pub fn into_certificate(self) -> Result<GordanCertificate, IoError> {
        Ok(match self {
            GordanJson::PositiveWeight { weight } => {
                GordanCertificate::PositiveWeight(rationals(&weight)?)
            }
            GordanJson::ZeroCombo { lambda } => GordanCertificate::ZeroCombo(lambda),
        })
    }
}

impl From<&MembershipCertificate> for MembershipJson {
    fn from(c: &MembershipCertificate) -> Self {
        match c {
            MembershipCertificate::Combo(q) => MembershipJson::Combo {
                coefficients: strings(q),
            },
            MembershipCertificate::SeparatingWeight(w) => {
                MembershipJson::SeparatingWeight { weight: strings(w) }
            }
        }
    }
}

impl MembershipJson {
    pub fn into_certificate(self) -> Result<MembershipCertificate, IoError> {
        Ok(match self {
            MembershipJson::Combo { coefficients } => {
                MembershipCertificate::Combo(rationals(&coefficients)?)
            }
            MembershipJson::SeparatingWeight { weight } => {
                MembershipCertificate::SeparatingWeight(rationals(&weight)?)
            }
        })
    }
}

impl From<&BoundedSearch> for BoundedSearchJson {
    fn from(b: &BoundedSearch) -> Self {
        match b {
            BoundedSearch::Found(c) => BoundedSearchJson::Found {
                coefficients: c.clone(),
            },
            BoundedSearch::NotFound { bound } => BoundedSearchJson::NotFound { bound: *bound },
        }
    }
}

impl From<&WeightOrder> for WeightOrderJson {
    fn from(w: &WeightOrder) -> Self {
        WeightOrderJson {
            k: w.dim(),
            rows: w.rows().iter().map(|r| strings(r)).collect(),
        }
    }
}

impl WeightOrderJson {
    pub fn into_order(self) -> Result<WeightOrder, IoError> {
        let rows = self
            .rows
            .iter()
            .map(|r| rationals(r))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(WeightOrder::new(self.k, rows)?)
    }
}

pub fn parse_relation(s: &str) -> Result<Relation, IoError> {
    parse_relation_capped(s, DEFAULT_RELATION_CAP)
}

pub fn parse_relation_capped(s: &str, cap: usize) -> Result<Relation, IoError> {
    serde_json::from_str::<RelationJson>(s)?.into_relation(cap)
}

pub fn parse_action(s: &str) -> Result<PermAction, IoError> {
    parse_action_capped(s, DEFAULT_RELATION_CAP)
}

pub fn parse_action_capped(s: &str, cap: usize) -> Result<PermAction, IoError> {
    serde_json::from_str::<ActionJson>(s)?.into_action(cap)
}

pub fn parse_cone(s: &str) -> Result<ConeOrder, IoError> {
    serde_json::from_str::<ConeJson>(s)?.into_cone()
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable value");
    s.push('\n');
    s
}
