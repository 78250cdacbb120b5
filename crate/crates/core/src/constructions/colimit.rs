use std::collections::HashSet;
use std::sync::Arc;

use crate::algebra::{GenId, GenTable, NcPoly, ObjId};
use crate::dgcat::{CatBuilder, DgFunctor, LocalizationRecord, SemifreeDgCat};
use crate::error::{DgError, Result};

/// A span `A ← C → B` of dg functors.
#[derive(Debug, Clone)]
pub struct PushoutSpan {
    pub alpha: DgFunctor,
    pub beta: DgFunctor,
}

impl PushoutSpan {
    /// Checks that both legs share their source and are valid.
    pub fn new(alpha: DgFunctor, beta: DgFunctor) -> Result<Self> {
        if alpha.source != beta.source {
            return Err(DgError::Invalid("span legs have different sources".into()));
        }
        alpha.validate()?;
        beta.validate()?;
        Ok(PushoutSpan { alpha, beta })
    }

    pub fn a(&self) -> &Arc<SemifreeDgCat> {
        &self.alpha.target
    }

    pub fn b(&self) -> &Arc<SemifreeDgCat> {
        &self.beta.target
    }

    pub fn c(&self) -> &Arc<SemifreeDgCat> {
        &self.alpha.source
    }

    pub fn swapped(&self) -> PushoutSpan {
        PushoutSpan {
            alpha: self.beta.clone(),
            beta: self.alpha.clone(),
        }
    }
}

/// Result of a (homotopy) pushout together with the structure maps out of the legs.
#[derive(Debug, Clone)]
pub struct PushoutResult {
    pub cat: Arc<SemifreeDgCat>,
    pub from_a: DgFunctor,
    pub from_b: DgFunctor,
}

/// Where each object and generator of a component landed.
#[derive(Debug, Clone, Default)]
pub(crate) struct Embedding {
    pub objs: Vec<ObjId>,
    pub gens: Vec<Option<NcPoly>>,
}

/// The generator map of a semifree extension: every generator goes to a distinct generator,
/// objects injectively.
pub fn extension_map(f: &DgFunctor) -> Option<Vec<GenId>> {
    let objs: HashSet<ObjId> = f.obj_map.iter().copied().collect();
    if objs.len() != f.obj_map.len() {
        return None;
    }
    let mut out = Vec::with_capacity(f.images.len());
    let mut seen = HashSet::new();
    for p in &f.images {
        let (w, c) = p.terms().next()?;
        if p.len() != 1 || !c.is_one() || w.len() != 1 {
            return None;
        }
        let g = w.letters()[0];
        if !seen.insert(g) {
            return None;
        }
        out.push(g);
    }
    Some(out)
}

pub fn is_extension(f: &DgFunctor) -> bool {
    extension_map(f).is_some()
}

pub(crate) fn fresh_name(taken: impl Fn(&str) -> bool, base: &str, suffix: &str) -> String {
    if !taken(base) {
        return base.to_string();
    }
    let mut name = format!("{base}{suffix}");
    while taken(&name) {
        name.push('\'');
    }
    name
}

/// Re-renders a localization record after its generators moved into `b`.
pub(crate) fn transport_record(
    rec: &LocalizationRecord,
    from: &SemifreeDgCat,
    emb: &Embedding,
    b: &CatBuilder,
) -> Option<LocalizationRecord> {
    let name = |n: &str| -> Option<String> {
        let g = from.find_generator(n)?;
        let img = emb.gens[g.index()].as_ref()?;
        let (w, c) = img.terms().next()?;
        if img.len() != 1 || !c.is_one() || w.len() != 1 {
            return None;
        }
        Some(b.gen_name(w.letters()[0]).to_string())
    };
    let morphism = crate::algebra::parse_poly(from, &rec.morphism, None).ok()?;
    let moved = morphism
        .substitute(
            b.ring(),
            emb.objs[morphism.src().index()],
            emb.objs[morphism.tgt().index()],
            |g| emb.gens[g.index()].clone().ok_or_else(|| DgError::Invalid(String::new())),
        )
        .ok()?;
    Some(LocalizationRecord {
        morphism: moved.render(b),
        inverse: name(&rec.inverse)?,
        hat: name(&rec.hat)?,
        check: name(&rec.check)?,
        bar: name(&rec.bar)?,
    })
}

/// Copies every generator of `from` not fixed by `preset` into `b`, renaming on clashes.
pub(crate) fn copy_generators(
    b: &mut CatBuilder,
    from: &SemifreeDgCat,
    emb: &mut Embedding,
    suffix: &str,
    avoid: &HashSet<String>,
) -> Result<()> {
    for (i, g) in from.generators().iter().enumerate() {
        if emb.gens[i].is_some() {
            continue;
        }
        let (s, t) = (emb.objs[g.src.index()], emb.objs[g.tgt.index()]);
        let d = g.d.substitute(b.ring(), s, t, |x| {
            emb.gens[x.index()]
                .clone()
                .ok_or_else(|| DgError::OrdinalViolation {
                    generator: g.name.clone(),
                    uses: from.gen_name(x).to_string(),
                })
        })?;
        let name = fresh_name(|n| b.has_generator(n) || avoid.contains(n), &g.name, suffix);
        let id = b.generator(&name, s, t, g.deg, d)?;
        emb.gens[i] = Some(NcPoly::generator(b, id));
    }
    for rec in from.localizations() {
        if let Some(r) = transport_record(rec, from, emb, b) {
            b.record_localization(r);
        }
    }
    Ok(())
}

pub(crate) fn embedding_functor(
    source: Arc<SemifreeDgCat>,
    target: Arc<SemifreeDgCat>,
    emb: &Embedding,
) -> Result<DgFunctor> {
    let images = emb
        .gens
        .iter()
        .map(|p| p.clone().ok_or_else(|| DgError::Invalid("unmapped generator".into())))
        .collect::<Result<Vec<_>>>()?;
    Ok(DgFunctor::new(source, target, emb.objs.clone(), images))
}

/// The strict colimit of a span one of whose legs is a semifree extension.
pub fn colimit(span: &PushoutSpan) -> Result<PushoutResult> {
    if let Some(ext) = extension_map(&span.beta) {
        return colimit_along(span, &ext);
    }
    if let Some(ext) = extension_map(&span.alpha) {
        let r = colimit_along(&span.swapped(), &ext)?;
        return Ok(PushoutResult {
            cat: r.cat,
            from_a: r.from_b,
            from_b: r.from_a,
        });
    }
    Err(DgError::NotExtension("neither leg of the span is a semifree extension".into()))
}

fn colimit_along(span: &PushoutSpan, ext: &[GenId]) -> Result<PushoutResult> {
    let (a, b, c) = (span.a(), span.b(), span.c());
    let mut bld = CatBuilder::extending(a);
    bld.localizations.clear();
    bld.provenance.clear();
    for rec in a.localizations() {
        bld.record_localization(rec.clone());
    }
    let mut emb = Embedding {
        objs: vec![ObjId(u32::MAX); b.object_count()],
        gens: vec![None; b.generator_count()],
    };
    for (x, bx) in span.beta.obj_map.iter().enumerate() {
        emb.objs[bx.index()] = span.alpha.obj_map[x];
    }
    for (i, o) in b.objects().iter().enumerate() {
        if emb.objs[i].0 == u32::MAX {
            let name = fresh_name(|n| bld.find_object(n).is_some(), o, "_2");
            emb.objs[i] = bld.object(&name)?;
        }
    }
    for (ci, bg) in ext.iter().enumerate() {
        emb.gens[bg.index()] = Some(span.alpha.images[ci].clone());
    }
    copy_generators(&mut bld, b, &mut emb, "_2", &HashSet::new())?;
    bld.provenance(
        "colimit",
        format!("{} objects, {} generators identified", c.object_count(), c.generator_count()),
    );
    let cat = Arc::new(bld.build()?);
    let a_emb = Embedding {
        objs: (0..a.object_count() as u32).map(ObjId).collect(),
        gens: (0..a.generator_count() as u32)
            .map(|i| Some(NcPoly::generator(cat.as_ref(), GenId(i))))
            .collect(),
    };
    let from_a = embedding_functor(a.clone(), cat.clone(), &a_emb)?;
    let from_b = embedding_functor(b.clone(), cat.clone(), &emb)?;
    Ok(PushoutResult { cat, from_a, from_b })
}
