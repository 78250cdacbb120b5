use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::category::{CatBuilder, LocalizationRecord, ProvenanceEntry, SemifreeDgCat};
use super::functor::DgFunctor;
use super::rewrite::RewriteSystem;
use crate::algebra::{parse_poly, GenTable, Ring};
use crate::error::{DgError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorJson {
    pub name: String,
    pub src: String,
    pub tgt: String,
    pub deg: i64,
    pub rank: usize,
    pub d: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleJson {
    pub lhs: String,
    pub rhs: String,
}

/// The shared on-disk presentation schema.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationJson {
    #[serde(default = "default_ring")]
    pub coefficients: Ring,
    pub objects: Vec<String>,
    pub generators: Vec<GeneratorJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub localizations: Vec<LocalizationRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rules: Vec<RuleJson>,
    #[serde(default)]
    pub provenance: Vec<ProvenanceEntry>,
}

fn default_ring() -> Ring {
    Ring::Integers
}

fn json_error(e: serde_json::Error) -> DgError {
    DgError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

impl PresentationJson {
    pub fn from_cat(cat: &SemifreeDgCat, rules: Option<&RewriteSystem>) -> Self {
        PresentationJson {
            coefficients: cat.ring(),
            objects: cat.objects().to_vec(),
            generators: cat
                .generators()
                .iter()
                .enumerate()
                .map(|(i, g)| GeneratorJson {
                    name: g.name.clone(),
                    src: cat.object_name(g.src).to_string(),
                    tgt: cat.object_name(g.tgt).to_string(),
                    deg: g.deg,
                    rank: i,
                    d: g.d.render(cat),
                })
                .collect(),
            localizations: cat.localizations().to_vec(),
            rules: rules
                .map(|r| {
                    r.rules()
                        .iter()
                        .map(|rule| RuleJson {
                            lhs: rule.lhs.render(cat, rule.rhs.src()),
                            rhs: rule.rhs.render(cat),
                        })
                        .collect()
                })
                .unwrap_or_default(),
            provenance: cat.provenance().to_vec(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(json_error)
    }

    pub fn to_string_pretty(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    /// Rebuilds and validates the presentation.
    pub fn into_cat(self) -> Result<(SemifreeDgCat, Option<RewriteSystem>)> {
        let mut b = CatBuilder::new(self.coefficients);
        for o in &self.objects {
            b.object(o)?;
        }
        let mut gens = self.generators;
        gens.sort_by_key(|g| g.rank);
        for (i, g) in gens.iter().enumerate() {
            if g.rank != i {
                return Err(DgError::Invalid(format!("ranks must be 0..n, found {} at {}", g.rank, g.name)));
            }
            b.generator_text(&g.name, &g.src, &g.tgt, g.deg, &g.d)
                .map_err(|e| DgError::Invalid(format!("generator {}: {e}", g.name)))?;
        }
        b.localizations = self.localizations;
        b.provenance = self.provenance;
        let cat = b.build()?;
        let rules = if self.rules.is_empty() {
            None
        } else {
            let mut rs = RewriteSystem::new();
            for r in &self.rules {
                let lhs = parse_poly(&cat, &r.lhs, None)?;
                let (w, c) = match lhs.terms().next() {
                    Some((w, c)) if lhs.len() == 1 => (w.clone(), c.clone()),
                    _ => return Err(DgError::Invalid(format!("rule left side {} is not a word", r.lhs))),
                };
                if !c.is_one() {
                    return Err(DgError::Invalid(format!("rule left side {} is not a word", r.lhs)));
                }
                let rhs = if r.rhs.trim() == "0" {
                    cat.zero(lhs.src(), lhs.tgt())
                } else {
                    parse_poly(&cat, &r.rhs, Some((lhs.src(), lhs.tgt())))?
                };
                rs.add_rule(&cat, w, rhs)?;
            }
            Some(rs)
        };
        Ok((cat, rules))
    }
}

impl PresentationJson {
    /// One line per object list, generator and rule.
    pub fn to_text(&self) -> String {
        let mut out = format!("coefficients {}\nobjects {}\n", self.coefficients, self.objects.join(", "));
        for g in &self.generators {
            out.push_str(&format!("{}: {} -> {}  |{}| = {}  d = {}\n", g.name, g.src, g.tgt, g.name, g.deg, g.d));
        }
        for r in &self.localizations {
            out.push_str(&format!("inverted {} by {}\n", r.morphism, r.inverse));
        }
        for r in &self.rules {
            out.push_str(&format!("rule {} -> {}\n", r.lhs, r.rhs));
        }
        out
    }
}

/// Object and generator images of a functor, as text.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct FunctorMapJson {
    pub objects: BTreeMap<String, String>,
    /// Unlisted generators go to zero.
    #[serde(default)]
    pub images: BTreeMap<String, String>,
}

impl FunctorMapJson {
    pub fn from_functor(f: &DgFunctor) -> Self {
        FunctorMapJson {
            objects: f
                .source
                .objects()
                .iter()
                .zip(&f.obj_map)
                .map(|(o, t)| (o.clone(), f.target.object_name(*t).to_string()))
                .collect(),
            images: f.render_images().into_iter().collect(),
        }
    }

    /// The functor between two presentations; images are compared modulo `relations`.
    pub fn into_functor(
        &self,
        source: Arc<SemifreeDgCat>,
        target: Arc<SemifreeDgCat>,
        relations: Option<RewriteSystem>,
    ) -> Result<DgFunctor> {
        let objects: Vec<(&str, &str)> = self.objects.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let images: Vec<(&str, &str)> = self.images.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let f = DgFunctor::from_text(source, target, &objects, &images)?;
        Ok(match relations {
            Some(r) => f.with_relations(Arc::new(r)),
            None => f,
        })
    }
}

/// A functor file: both presentations and the map between them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorJson {
    pub source: PresentationJson,
    pub target: PresentationJson,
    #[serde(flatten)]
    pub map: FunctorMapJson,
}

impl FunctorJson {
    pub fn from_functor(f: &DgFunctor) -> Self {
        FunctorJson {
            source: PresentationJson::from_cat(&f.source, None),
            target: PresentationJson::from_cat(&f.target, f.relations.as_deref()),
            map: FunctorMapJson::from_functor(f),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(json_error)
    }

    pub fn into_functor(self) -> Result<DgFunctor> {
        let (s, _) = self.source.into_cat()?;
        let (t, rules) = self.target.into_cat()?;
        self.map.into_functor(Arc::new(s), Arc::new(t), rules)
    }
}

/// A span `A ← C → B`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanJson {
    pub c: PresentationJson,
    pub a: PresentationJson,
    pub b: PresentationJson,
    pub alpha: FunctorMapJson,
    pub beta: FunctorMapJson,
}

impl SpanJson {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(json_error)
    }

    /// The two legs, sharing their source.
    pub fn into_functors(self) -> Result<(DgFunctor, DgFunctor)> {
        let c = Arc::new(self.c.into_cat()?.0);
        let a = Arc::new(self.a.into_cat()?.0);
        let b = Arc::new(self.b.into_cat()?.0);
        Ok((self.alpha.into_functor(c.clone(), a, None)?, self.beta.into_functor(c, b, None)?))
    }
}
