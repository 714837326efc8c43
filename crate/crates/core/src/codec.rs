//! JSON document schemas for groups, homomorphisms, cocycles and triples.
//!
//! Rationals serialize as reduced "p/q" strings; pair tables are sparse
//! maps keyed "(a,b)" with absent entries meaning zero; all maps are
//! ordered, so serialization is byte-stable for identical inputs.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::duality::{DynCocycle, DynWitness};
use crate::group::{product_cyclic, FiniteGroup, GroupError, Side, Table2, TorusHom};
use crate::rational::{parse_rat, QVec, QmodZ, QmodZVec, Rat, ZVec};
use crate::triple::{PsiPart, TopTriple, TripleWitness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("bad element key {0:?}")]
    BadKey(String),
    #[error("bad rational literal {0:?}")]
    BadRational(String),
    #[error("element index {index} out of range for group of size {size}")]
    OutOfRange { index: usize, size: usize },
    #[error("vector has length {got}, expected rank {want}")]
    WrongRank { got: usize, want: usize },
    #[error("unknown side {0:?}")]
    BadSide(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("cocycle document rejected: {0}")]
    Dyn(String),
}

/// Group input: a product of cyclic groups or an explicit table.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpec {
    ProductCyclic { orders: Vec<usize> },
    Table { size: usize, mul: Vec<Vec<usize>> },
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup, CodecError> {
        match self {
            GroupSpec::ProductCyclic { orders } => Ok(product_cyclic(orders)?),
            GroupSpec::Table { size, mul } => Ok(FiniteGroup::from_table(*size, mul)?),
        }
    }

    pub fn from_group(group: &FiniteGroup) -> GroupSpec {
        GroupSpec::Table {
            size: group.size(),
            mul: group.mul_table(),
        }
    }
}

fn parse_index(key: &str, size: usize) -> Result<usize, CodecError> {
    let index: usize = key
        .trim()
        .parse()
        .map_err(|_| CodecError::BadKey(key.to_string()))?;
    if index >= size {
        return Err(CodecError::OutOfRange { index, size });
    }
    Ok(index)
}

fn parse_pair_key(key: &str, size: usize) -> Result<(usize, usize), CodecError> {
    let inner = key.trim().trim_start_matches('(').trim_end_matches(')');
    let (a, b) = inner
        .split_once(',')
        .ok_or_else(|| CodecError::BadKey(key.to_string()))?;
    Ok((parse_index(a, size)?, parse_index(b, size)?))
}

fn pair_key(a: usize, b: usize) -> String {
    format!("({a},{b})")
}

fn parse_rationals(entries: &[String], rank: usize) -> Result<Vec<Rat>, CodecError> {
    if entries.len() != rank {
        return Err(CodecError::WrongRank {
            got: entries.len(),
            want: rank,
        });
    }
    entries
        .iter()
        .map(|s| parse_rat(s).map_err(|_| CodecError::BadRational(s.clone())))
        .collect()
}

fn rat_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Homomorphism input: rank and per-element images, with generator-only
/// shorthand allowed (missing elements are derived multiplicatively).
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct HomSpec {
    pub rank: usize,
    pub images: BTreeMap<String, Vec<String>>,
}

impl HomSpec {
    pub fn build(&self, group: &FiniteGroup, side: Side) -> Result<TorusHom, CodecError> {
        let size = group.size();
        let mut given = Vec::new();
        for (key, entries) in &self.images {
            let elem = parse_index(key, size)?;
            let rats = parse_rationals(entries, self.rank)?;
            let image = QmodZVec::new(rats.into_iter().map(crate::rational::reduce_mod1).collect());
            given.push((elem, image));
        }
        if given.len() >= size.saturating_sub(1) {
            // full table (identity may be implicit)
            let mut images = vec![None; size];
            images[0] = Some(QmodZVec::zeros(self.rank));
            for (elem, image) in &given {
                images[*elem] = Some(image.clone());
            }
            if images.iter().all(Option::is_some) {
                let images = images.into_iter().map(Option::unwrap).collect();
                return Ok(TorusHom::new(group.clone(), self.rank, images, side)?);
            }
        }
        Ok(TorusHom::from_partial(
            group.clone(),
            self.rank,
            &given,
            side,
        )?)
    }

    pub fn from_hom(hom: &TorusHom) -> HomSpec {
        let images = hom
            .group()
            .elements()
            .filter(|&a| a != 0)
            .map(|a| {
                let entries = hom
                    .image(a)
                    .entries()
                    .iter()
                    .map(|q| q.to_string())
                    .collect();
                (a.to_string(), entries)
            })
            .collect();
        HomSpec {
            rank: hom.rank(),
            images,
        }
    }
}

fn side_from_str(s: &str) -> Result<Side, CodecError> {
    match s {
        "torus" => Ok(Side::Torus),
        "dual-torus" => Ok(Side::DualTorus),
        other => Err(CodecError::BadSide(other.to_string())),
    }
}

fn side_to_str(side: Side) -> &'static str {
    match side {
        Side::Torus => "torus",
        Side::DualTorus => "dual-torus",
    }
}

/// Document form of a dynamical cocycle; absent entries mean zero.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct DynDoc {
    pub hom: HomSpec,
    #[serde(default)]
    pub c: BTreeMap<String, String>,
    #[serde(default)]
    pub m: BTreeMap<String, Vec<i64>>,
    #[serde(default)]
    pub w: BTreeMap<String, Vec<String>>,
    pub side: String,
}

impl DynDoc {
    pub fn build(&self, group: &FiniteGroup) -> Result<DynCocycle, CodecError> {
        let side = side_from_str(&self.side)?;
        let hom = self.hom.build(group, side)?;
        let size = group.size();
        let n = self.hom.rank;
        let mut c = Table2::filled(size, QmodZ::zero());
        for (key, value) in &self.c {
            let (a, b) = parse_pair_key(key, size)?;
            let q = parse_rat(value).map_err(|_| CodecError::BadRational(value.clone()))?;
            c.set(a, b, crate::rational::reduce_mod1(q));
        }
        let mut m = Table2::filled(size, ZVec::zeros(n));
        for (key, value) in &self.m {
            let (a, b) = parse_pair_key(key, size)?;
            if value.len() != n {
                return Err(CodecError::WrongRank {
                    got: value.len(),
                    want: n,
                });
            }
            m.set(a, b, ZVec::new(value.clone()));
        }
        let mut w = vec![QVec::zeros(n); size];
        for (key, value) in &self.w {
            let a = parse_index(key, size)?;
            w[a] = QVec::new(parse_rationals(value, n)?);
        }
        DynCocycle::new(hom, c, m, w).map_err(|e| CodecError::Dyn(e.to_string()))
    }

    pub fn from_dyn(d: &DynCocycle) -> DynDoc {
        let mut c = BTreeMap::new();
        for (a, b, v) in d.c().pairs() {
            if !v.is_zero() {
                c.insert(pair_key(a, b), v.to_string());
            }
        }
        let mut m = BTreeMap::new();
        for (a, b, v) in d.m().pairs() {
            if !v.is_zero() {
                m.insert(pair_key(a, b), v.entries().to_vec());
            }
        }
        let mut w = BTreeMap::new();
        for (a, v) in d.w().iter().enumerate() {
            if v.entries().iter().any(|r| !num_traits::Zero::is_zero(r)) {
                w.insert(a.to_string(), v.entries().iter().map(rat_string).collect());
            }
        }
        DynDoc {
            hom: HomSpec::from_hom(d.hom()),
            c,
            m,
            w,
            side: side_to_str(d.hom().side()).to_string(),
        }
    }
}

/// One ψ-half of a triple document.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq, Default)]
#[serde(deny_unknown_fields)]
pub struct PsiDoc {
    #[serde(default)]
    pub c: BTreeMap<String, String>,
    #[serde(default)]
    pub m: BTreeMap<String, Vec<i64>>,
}

impl PsiDoc {
    fn build(&self, size: usize, n: usize) -> Result<PsiPart, CodecError> {
        let mut c = Table2::filled(size, QmodZ::zero());
        for (key, value) in &self.c {
            let (a, b) = parse_pair_key(key, size)?;
            let q = parse_rat(value).map_err(|_| CodecError::BadRational(value.clone()))?;
            c.set(a, b, crate::rational::reduce_mod1(q));
        }
        let mut m = Table2::filled(size, ZVec::zeros(n));
        for (key, value) in &self.m {
            let (a, b) = parse_pair_key(key, size)?;
            if value.len() != n {
                return Err(CodecError::WrongRank {
                    got: value.len(),
                    want: n,
                });
            }
            m.set(a, b, ZVec::new(value.clone()));
        }
        Ok(PsiPart { c, m })
    }

    fn from_part(part: &PsiPart) -> PsiDoc {
        let mut c = BTreeMap::new();
        for (a, b, v) in part.c.pairs() {
            if !v.is_zero() {
                c.insert(pair_key(a, b), v.to_string());
            }
        }
        let mut m = BTreeMap::new();
        for (a, b, v) in part.m.pairs() {
            if !v.is_zero() {
                m.insert(pair_key(a, b), v.entries().to_vec());
            }
        }
        PsiDoc { c, m }
    }
}

/// Document form of a topological triple.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct TripleDoc {
    pub order: i64,
    pub chi: HomSpec,
    pub chihat: HomSpec,
    #[serde(default)]
    pub psi: PsiDoc,
    #[serde(default)]
    pub psihat: PsiDoc,
}

impl TripleDoc {
    pub fn build(&self, group: &FiniteGroup) -> Result<TopTriple, CodecError> {
        let chi = self.chi.build(group, Side::Torus)?;
        let chihat = self.chihat.build(group, Side::DualTorus)?;
        let size = group.size();
        Ok(TopTriple {
            order: self.order,
            psi: self.psi.build(size, chi.rank())?,
            psihat: self.psihat.build(size, chihat.rank())?,
            chi,
            chihat,
        })
    }

    pub fn from_triple(t: &TopTriple) -> TripleDoc {
        TripleDoc {
            order: t.order,
            chi: HomSpec::from_hom(&t.chi),
            chihat: HomSpec::from_hom(&t.chihat),
            psi: PsiDoc::from_part(&t.psi),
            psihat: PsiDoc::from_part(&t.psihat),
        }
    }
}

/// Document form of an engine cochain: total value array in lexicographic
/// tuple order, with the module's twist spelled out per element.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct CochainDoc {
    pub degree: usize,
    pub module: ModuleDoc,
    pub values: Vec<CochainValueDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ModuleDoc {
    pub s: usize,
    pub twist: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct CochainValueDoc {
    pub c: String,
    #[serde(default)]
    pub v: Vec<i64>,
}

impl CochainDoc {
    pub fn from_cochain(c: &crate::cohomology::Cochain) -> CochainDoc {
        let module = ModuleDoc {
            s: c.module().s(),
            twist: (0..c.group_size())
                .map(|a| {
                    c.module()
                        .twist(a)
                        .entries()
                        .iter()
                        .map(|q| q.to_string())
                        .collect()
                })
                .collect(),
        };
        let values = c
            .values()
            .iter()
            .map(|v| CochainValueDoc {
                c: v.c.to_string(),
                v: v.v.entries().to_vec(),
            })
            .collect();
        CochainDoc {
            degree: c.degree(),
            module,
            values,
        }
    }

    pub fn build(&self, group: &FiniteGroup) -> Result<crate::cohomology::Cochain, CodecError> {
        let twist = self
            .module
            .twist
            .iter()
            .map(|row| {
                let rats = parse_rationals(row, self.module.s)?;
                Ok(QmodZVec::new(
                    rats.into_iter().map(crate::rational::reduce_mod1).collect(),
                ))
            })
            .collect::<Result<Vec<_>, CodecError>>()?;
        let module = crate::cohomology::UnipotentModule::new(group, self.module.s, twist)
            .map_err(|e| CodecError::Dyn(e.to_string()))?;
        let want = group.size().pow(self.degree as u32);
        if self.values.len() != want {
            return Err(CodecError::WrongRank {
                got: self.values.len(),
                want,
            });
        }
        let mut parsed = Vec::with_capacity(want);
        for value in &self.values {
            let q = parse_rat(&value.c).map_err(|_| CodecError::BadRational(value.c.clone()))?;
            if value.v.len() != self.module.s {
                return Err(CodecError::WrongRank {
                    got: value.v.len(),
                    want: self.module.s,
                });
            }
            parsed.push(crate::cohomology::CochainValue {
                c: crate::rational::reduce_mod1(q),
                v: ZVec::new(value.v.clone()),
            });
        }
        let mut iter = parsed.into_iter();
        crate::cohomology::Cochain::from_fn(group, module, self.degree, |_| {
            iter.next().expect("length checked")
        })
        .map_err(|e| CodecError::Dyn(e.to_string()))
    }
}

/// Witness documents: sparse maps from element index to value.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq, Default)]
pub struct WitnessDoc {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub k: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub t: BTreeMap<String, Vec<i64>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub that: BTreeMap<String, Vec<i64>>,
}

impl WitnessDoc {
    pub fn from_dyn_witness(w: &DynWitness) -> WitnessDoc {
        WitnessDoc {
            k: sparse_scalar(&w.k),
            t: sparse_vec(&w.t),
            that: BTreeMap::new(),
        }
    }

    pub fn from_triple_witness(w: &TripleWitness) -> WitnessDoc {
        WitnessDoc {
            k: sparse_scalar(&w.k),
            t: sparse_vec(&w.t),
            that: sparse_vec(&w.that),
        }
    }
}

fn sparse_scalar(values: &[QmodZ]) -> BTreeMap<String, String> {
    values
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(a, v)| (a.to_string(), v.to_string()))
        .collect()
}

fn sparse_vec(values: &[ZVec]) -> BTreeMap<String, Vec<i64>> {
    values
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(a, v)| (a.to_string(), v.entries().to_vec()))
        .collect()
}

/// The job manifest consumed by the command-line front end.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub group: GroupSpec,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi: Option<HomSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chihat: Option<HomSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cocycle: Option<DynDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub other: Option<DynDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub triple: Option<TripleDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_factor: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l_factor: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub element: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zhat: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sizes: Option<Vec<usize>>,
}

impl Manifest {
    pub fn point(&self, field: &Option<Vec<String>>, rank: usize) -> Result<QmodZVec, CodecError> {
        let entries = field
            .as_ref()
            .ok_or_else(|| CodecError::BadKey("missing point".into()))?;
        let rats = parse_rationals(entries, rank)?;
        Ok(QmodZVec::new(
            rats.into_iter().map(crate::rational::reduce_mod1).collect(),
        ))
    }
}
