//! Semifree dg categories, dg functors, relations and hom-space enumeration.

mod category;
mod functor;
mod json;
mod rewrite;
mod slice;

use std::collections::BTreeSet;

pub use category::{CatBuilder, Generator, LocalizationRecord, ProvenanceEntry, SemifreeDgCat};
pub use functor::{DgFunctor, FunctorCertificate};
pub use json::{FunctorJson, FunctorMapJson, GeneratorJson, PresentationJson, RuleJson, SpanJson};
pub use rewrite::{CriticalPair, RewriteSystem, Rule};
pub use slice::{hom_slice, HomBasisSlice};

use crate::algebra::{GenId, GenTable, ObjId};
use crate::error::{DgError, Result};

/// The full subcategory on `objects`; fails when a kept differential leaves it.
pub fn full_subcategory(cat: &SemifreeDgCat, objects: &[ObjId]) -> Result<SemifreeDgCat> {
    let keep: BTreeSet<ObjId> = objects.iter().copied().collect();
    let mut b = CatBuilder::new(cat.ring());
    for o in &keep {
        b.object(cat.object_name(*o))?;
    }
    for g in cat.generators() {
        if !(keep.contains(&g.src) && keep.contains(&g.tgt)) {
            continue;
        }
        let mut missing = None;
        let d = g.d.substitute(cat.ring(), b.obj(cat.object_name(g.src))?, b.obj(cat.object_name(g.tgt))?, |x| {
            let name = cat.gen_name(x);
            match b.find_generator(name) {
                Some(id) => Ok(crate::algebra::NcPoly::generator(&b, id)),
                None => {
                    missing = Some(name.to_string());
                    Err(DgError::UnknownName(name.to_string()))
                }
            }
        });
        let d = d.map_err(|e| match missing.take() {
            Some(m) => DgError::Invalid(format!("d({}) leaves the subcategory through {m}", g.name)),
            None => e,
        })?;
        let (s, t) = (b.obj(cat.object_name(g.src))?, b.obj(cat.object_name(g.tgt))?);
        b.generator(&g.name, s, t, g.deg, d)?;
    }
    b.provenance("full_subcategory", format!("{} objects", keep.len()));
    b.build()
}

/// Ids of all generators with the given names.
pub fn gen_ids(cat: &SemifreeDgCat, names: &[&str]) -> Result<Vec<GenId>> {
    names.iter().map(|n| cat.gen(n)).collect()
}
