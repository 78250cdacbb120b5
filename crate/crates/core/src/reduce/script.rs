use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{cancel_pair, change_basis, greedy_simplify, rename, set_generator, strictify, strictify_t, Constant, Reduction};
use crate::algebra::{Coefficient, GenTable, NcPoly, ObjId};
use crate::constructions::localize;
use crate::dgcat::{DgFunctor, SemifreeDgCat};
use crate::error::{DgError, Result};

/// One replayable simplification move.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum ReductionStep {
    ChangeBasis {
        generator: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        rename: Option<String>,
        #[serde(default = "one")]
        unit: String,
        #[serde(default = "zero")]
        lower: String,
    },
    Cancel {
        a: String,
        b: String,
    },
    Set {
        generator: String,
        /// `"0"` or `"1"`.
        value: String,
    },
    /// Strictifies the listed inverted generators, or every `t_{…}` when empty.
    Strictify {
        #[serde(default)]
        generators: Vec<String>,
    },
    Localize {
        generators: Vec<String>,
    },
    Rename {
        #[serde(default)]
        objects: Vec<(String, String)>,
        #[serde(default)]
        generators: Vec<(String, String)>,
    },
    Greedy,
}

fn one() -> String {
    "1".into()
}

fn zero() -> String {
    "0".into()
}

/// A replayed step with generator counts before and after.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepRecord {
    pub step: ReductionStep,
    pub before: usize,
    pub after: usize,
}

fn inclusion(old: &Arc<SemifreeDgCat>, new: Arc<SemifreeDgCat>) -> Reduction {
    let obj_map = (0..old.object_count() as u32).map(ObjId).collect();
    let images = (0..old.generator_count() as u32)
        .map(|i| NcPoly::generator(new.as_ref(), crate::algebra::GenId(i)))
        .collect();
    Reduction {
        functor: DgFunctor::new(old.clone(), new.clone(), obj_map, images),
        cat: new,
    }
}

fn apply(cat: &Arc<SemifreeDgCat>, step: &ReductionStep) -> Result<Reduction> {
    match step {
        ReductionStep::ChangeBasis {
            generator,
            rename,
            unit,
            lower,
        } => {
            let g = cat.generator(cat.gen(generator)?);
            let u = Coefficient::parse(cat.ring(), unit)?;
            let lower = if lower.trim() == "0" {
                cat.zero(g.src, g.tgt)
            } else {
                crate::algebra::parse_poly(cat.as_ref(), lower, Some((g.src, g.tgt)))?
            };
            change_basis(cat, generator, rename.as_deref(), u, &lower)
        }
        ReductionStep::Cancel { a, b } => cancel_pair(cat, a, b),
        ReductionStep::Set { generator, value } => {
            let v = match value.trim() {
                "0" => Constant::Zero,
                "1" => Constant::Identity,
                other => return Err(DgError::Invalid(format!("set value must be 0 or 1, found {other}"))),
            };
            set_generator(cat, generator, v)
        }
        ReductionStep::Strictify { generators } if generators.is_empty() => strictify_t(cat),
        ReductionStep::Strictify { generators } => {
            let refs: Vec<&str> = generators.iter().map(|s| s.as_str()).collect();
            strictify(cat, &refs)
        }
        ReductionStep::Localize { generators } => {
            let refs: Vec<&str> = generators.iter().map(|s| s.as_str()).collect();
            Ok(inclusion(cat, Arc::new(localize(cat, &refs)?)))
        }
        ReductionStep::Rename { objects, generators } => {
            let o: Vec<(&str, &str)> = objects.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
            let g: Vec<(&str, &str)> = generators.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
            rename(cat, &o, &g)
        }
        ReductionStep::Greedy => greedy_simplify(cat).map(|(r, _)| r),
    }
}

/// Replays a script, composing the quotient functors.
pub fn run_script(cat: &Arc<SemifreeDgCat>, steps: &[ReductionStep]) -> Result<(Reduction, Vec<StepRecord>)> {
    let mut red = Reduction::identity(cat.clone());
    let mut log = Vec::new();
    for step in steps {
        let before = red.cat.generator_count();
        let next = apply(&red.cat, step)?;
        let after = next.cat.generator_count();
        red = red.then(next)?;
        log.push(StepRecord {
            step: step.clone(),
            before,
            after,
        });
    }
    Ok((red, log))
}
