use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::algebra::{Coefficient, GenTable};
use crate::dgcat::SemifreeDgCat;
use crate::error::{DgError, Result};

/// Object and signed generator renaming between two presentations.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Renaming {
    pub objects: BTreeMap<String, String>,
    /// `g ↦ ±g′`.
    pub generators: BTreeMap<String, (String, i64)>,
}

impl Renaming {
    pub fn identity(cat: &SemifreeDgCat) -> Self {
        Renaming {
            objects: cat.objects().iter().map(|o| (o.clone(), o.clone())).collect(),
            generators: cat.generators().iter().map(|g| (g.name.clone(), (g.name.clone(), 1))).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        Renaming {
            objects: self.objects.iter().map(|(a, b)| (b.clone(), a.clone())).collect(),
            generators: self.generators.iter().map(|(a, (b, s))| (b.clone(), (a.clone(), *s))).collect(),
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Renaming) -> Result<Self> {
        let objects = self
            .objects
            .iter()
            .map(|(a, b)| Ok((a.clone(), other.objects.get(b).ok_or_else(|| DgError::UnknownName(b.clone()))?.clone())))
            .collect::<Result<_>>()?;
        let generators = self
            .generators
            .iter()
            .map(|(a, (b, s))| {
                let (c, t) = other.generators.get(b).ok_or_else(|| DgError::UnknownName(b.clone()))?;
                Ok((a.clone(), (c.clone(), s * t)))
            })
            .collect::<Result<_>>()?;
        Ok(Renaming { objects, generators })
    }
}

/// Outcome of a successful comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EqualityReport {
    pub objects: usize,
    pub generators: usize,
}

fn bijective<'a>(what: &str, pairs: impl Iterator<Item = (&'a String, &'a String)>, a: &[String], b: &[String]) -> Result<()> {
    let mut seen = BTreeSet::new();
    let mut dom = BTreeSet::new();
    for (x, y) in pairs {
        if !b.contains(y) {
            return Err(DgError::Witness(format!("{what} {x} maps to unknown {y}")));
        }
        if !seen.insert(y.clone()) {
            return Err(DgError::Witness(format!("{what} {y} is hit twice")));
        }
        dom.insert(x.clone());
    }
    if let Some(x) = a.iter().find(|x| !dom.contains(*x)) {
        return Err(DgError::Witness(format!("{what} {x} is not renamed")));
    }
    if a.len() != b.len() {
        return Err(DgError::Witness(format!("{what} counts differ: {} vs {}", a.len(), b.len())));
    }
    Ok(())
}

/// Exact equality of degrees, boundaries and differentials under a renaming.
pub fn presentation_equal(a: &SemifreeDgCat, b: &SemifreeDgCat, renaming: &Renaming) -> Result<EqualityReport> {
    if a.ring() != b.ring() {
        return Err(DgError::RingMismatch(a.ring().to_string(), b.ring().to_string()));
    }
    bijective("object", renaming.objects.iter(), a.objects(), b.objects())?;
    let an: Vec<String> = a.generators().iter().map(|g| g.name.clone()).collect();
    let bn: Vec<String> = b.generators().iter().map(|g| g.name.clone()).collect();
    bijective("generator", renaming.generators.iter().map(|(x, (y, _))| (x, y)), &an, &bn)?;
    let ring = a.ring();
    let obj = |o| b.obj(&renaming.objects[a.object_name(o)]);
    let mut images = Vec::with_capacity(an.len());
    for g in a.generators() {
        let (name, s) = &renaming.generators[&g.name];
        if *s != 1 && *s != -1 {
            return Err(DgError::Invalid(format!("renaming sign {s} for {}", g.name)));
        }
        images.push(b.g(name)?.scale(&Coefficient::from_i64(ring, *s)));
    }
    for g in a.generators() {
        let (name, s) = &renaming.generators[&g.name];
        let h = b.generator(b.gen(name)?);
        let (src, tgt) = (obj(g.src)?, obj(g.tgt)?);
        if h.src != src || h.tgt != tgt {
            return Err(DgError::Witness(format!("{}: boundary differs from {name}", g.name)));
        }
        if h.deg != g.deg {
            return Err(DgError::Witness(format!("{}: degree {} vs {name}: degree {}", g.name, g.deg, h.deg)));
        }
        let lhs = g.d.substitute(ring, src, tgt, |x| Ok(images[x.index()].clone()))?;
        let rhs = h.d.scale(&Coefficient::from_i64(ring, *s));
        if lhs != rhs {
            return Err(DgError::Witness(format!(
                "d({}) = {} maps to {}, but {}d({name}) = {}",
                g.name,
                a.render(&g.d),
                b.render(&lhs),
                if *s < 0 { "-" } else { "" },
                b.render(&rhs)
            )));
        }
    }
    Ok(EqualityReport {
        objects: a.object_count(),
        generators: an.len(),
    })
}
