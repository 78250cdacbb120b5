use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use super::colimit::{colimit, copy_generators, embedding_functor, extension_map, fresh_name, Embedding, PushoutSpan};
use super::localize::{add_quadruple, localization_names};
use crate::algebra::{Coefficient, GenId, GenTable, NcPoly, ObjId};
use crate::dgcat::{CatBuilder, DgFunctor, SemifreeDgCat};
use crate::error::{DgError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HocolimOptions {
    /// Use the general formula even when a leg is a semifree extension.
    pub force_general: bool,
    /// Skip localization generators of `C` that nothing else refers to.
    pub drop_localization: bool,
}

impl Default for HocolimOptions {
    fn default() -> Self {
        HocolimOptions {
            force_general: false,
            drop_localization: true,
        }
    }
}

/// Where a generator of the homotopy colimit came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    A(GenId),
    B(GenId),
    /// `t_X` for an object of `C` (slot 0) or one of its four inverse generators (slots 1–4).
    TObject(ObjId, u8),
    TGenerator(GenId),
}

#[derive(Debug, Clone)]
pub struct HocolimResult {
    pub cat: Arc<SemifreeDgCat>,
    pub span: PushoutSpan,
    pub from_a: DgFunctor,
    pub from_b: DgFunctor,
    /// False when the span was resolved as a strict colimit.
    pub general: bool,
    pub origin: Vec<Origin>,
    pub t_objects: Vec<GenId>,
    pub t_generators: Vec<Option<GenId>>,
}

impl HocolimResult {
    fn t_obj(&self, x: ObjId) -> NcPoly {
        NcPoly::generator(self.cat.as_ref(), self.t_objects[x.index()])
    }

    /// The twisted derivation `T` on a morphism of `C`.
    pub fn twisted_derivation(&self, p: &NcPoly) -> Result<NcPoly> {
        let cat = self.cat.as_ref();
        let c = self.span.c().as_ref();
        let src = self.from_a.obj_map[self.span.alpha.obj_map[p.src().index()].index()];
        let tgt = self.from_b.obj_map[self.span.beta.obj_map[p.tgt().index()].index()];
        let mut out = NcPoly::zero(cat.ring(), src, tgt);
        for (w, coef) in p.terms() {
            let letters = w.letters();
            for i in 0..letters.len() {
                let right_deg: i64 = letters[i + 1..].iter().map(|g| c.gen_deg(*g)).sum();
                let t = self.t_generators[letters[i].index()].ok_or_else(|| {
                    DgError::Invalid(format!("no t-generator for {}", c.gen_name(letters[i])))
                })?;
                let mut chain = Vec::with_capacity(letters.len());
                for g in &letters[..i] {
                    chain.push(self.beta_image(*g)?);
                }
                chain.push(NcPoly::generator(cat, t));
                for g in &letters[i + 1..] {
                    chain.push(self.alpha_image(*g)?);
                }
                let term = NcPoly::compose_all(&chain)?;
                let sign = Coefficient::sign(cat.ring(), right_deg).mul(&crate::algebra::convert_coefficient(coef, cat.ring())?);
                out.add_assign(&term.scale(&sign))?;
            }
        }
        Ok(out)
    }

    fn alpha_image(&self, g: GenId) -> Result<NcPoly> {
        self.from_a.apply(&self.span.alpha.images[g.index()])
    }

    fn beta_image(&self, g: GenId) -> Result<NcPoly> {
        self.from_b.apply(&self.span.beta.images[g.index()])
    }
}

/// Generators of `C` belonging to an inverse quadruple that nothing outside the quadruple uses.
fn droppable(c: &SemifreeDgCat) -> BTreeSet<GenId> {
    let mut cand: BTreeSet<GenId> = BTreeSet::new();
    for rec in c.localizations() {
        for n in [&rec.inverse, &rec.hat, &rec.check, &rec.bar] {
            if let Some(g) = c.find_generator(n) {
                cand.insert(g);
            }
        }
    }
    loop {
        let used: HashSet<GenId> = c
            .generators()
            .iter()
            .enumerate()
            .filter(|(i, _)| !cand.contains(&GenId(*i as u32)))
            .flat_map(|(_, g)| g.d.generators_used())
            .collect();
        let before = cand.len();
        cand.retain(|g| !used.contains(g));
        if cand.len() == before {
            return cand;
        }
    }
}

/// The homotopy pushout of a span of semifree dg categories.
pub fn hocolim(span: &PushoutSpan, opts: HocolimOptions) -> Result<HocolimResult> {
    if !opts.force_general && (extension_map(&span.alpha).is_some() || extension_map(&span.beta).is_some()) {
        let r = colimit(span)?;
        let n = r.cat.generator_count();
        return Ok(HocolimResult {
            cat: r.cat,
            span: span.clone(),
            from_a: r.from_a,
            from_b: r.from_b,
            general: false,
            origin: Vec::with_capacity(n),
            t_objects: Vec::new(),
            t_generators: Vec::new(),
        });
    }
    let (a, b, c) = (span.a().clone(), span.b().clone(), span.c().clone());
    let ring = a.ring();
    if b.ring() != ring || c.ring() != ring {
        return Err(DgError::RingMismatch(b.ring().to_string(), ring.to_string()));
    }
    let dropped = if opts.drop_localization { droppable(&c) } else { BTreeSet::new() };
    let mut bld = CatBuilder::new(ring);
    let a_names: HashSet<&str> = a.objects().iter().map(|s| s.as_str()).collect();
    let b_names: HashSet<&str> = b.objects().iter().map(|s| s.as_str()).collect();
    let mut a_emb = Embedding {
        objs: Vec::new(),
        gens: vec![None; a.generator_count()],
    };
    for o in a.objects() {
        let name = if b_names.contains(o.as_str()) { format!("{o}_1") } else { o.clone() };
        a_emb.objs.push(bld.object(&name)?);
    }
    let mut b_emb = Embedding {
        objs: Vec::new(),
        gens: vec![None; b.generator_count()],
    };
    for o in b.objects() {
        let name = if a_names.contains(o.as_str()) { format!("{o}_2") } else { o.clone() };
        b_emb.objs.push(bld.object(&name)?);
    }
    let b_gen_names: HashSet<String> = b.generators().iter().map(|g| g.name.clone()).collect();
    let a_gen_names: HashSet<String> = a.generators().iter().map(|g| g.name.clone()).collect();
    // A-side clashes take `_1`; B-side names are reserved so they can take `_2`.
    {
        let mut tmp = bld.clone();
        for (i, g) in a.generators().iter().enumerate() {
            let (s, t) = (a_emb.objs[g.src.index()], a_emb.objs[g.tgt.index()]);
            let d = g.d.substitute(ring, s, t, |x| {
                a_emb.gens[x.index()].clone().ok_or_else(|| DgError::Invalid("order".into()))
            })?;
            let name = if b_gen_names.contains(&g.name) { format!("{}_1", g.name) } else { g.name.clone() };
            let id = tmp.generator(&name, s, t, g.deg, d)?;
            a_emb.gens[i] = Some(NcPoly::generator(&tmp, id));
        }
        for rec in a.localizations() {
            if let Some(r) = super::colimit::transport_record(rec, &a, &a_emb, &tmp) {
                tmp.record_localization(r);
            }
        }
        bld = tmp;
    }
    let b_suffix_avoid: HashSet<String> = a_gen_names
        .iter()
        .filter(|n| b_gen_names.contains(*n))
        .cloned()
        .collect();
    copy_b(&mut bld, &b, &mut b_emb, &b_suffix_avoid)?;

    let mut origin: Vec<Origin> = Vec::new();
    for (i, p) in a_emb.gens.iter().enumerate() {
        let _ = p;
        origin.push(Origin::A(GenId(i as u32)));
    }
    for i in 0..b.generator_count() {
        origin.push(Origin::B(GenId(i as u32)));
    }

    let alpha_poly = |g: usize| -> Result<NcPoly> { apply_emb(&span.alpha.images[g], &a_emb, ring) };
    let beta_poly = |g: usize| -> Result<NcPoly> { apply_emb(&span.beta.images[g], &b_emb, ring) };

    let mut t_objects = Vec::new();
    for (xi, xname) in c.objects().iter().enumerate() {
        let ax = a_emb.objs[span.alpha.obj_map[xi].index()];
        let bx = b_emb.objs[span.beta.obj_map[xi].index()];
        let label = fresh_name(|n| bld.has_generator(n), &format!("t_{{{xname}}}"), "'");
        let t = bld.closed(&label, ax, bx, 0)?;
        t_objects.push(t);
        origin.push(Origin::TObject(ObjId(xi as u32), 0));
        let tp = NcPoly::generator(&bld, t);
        add_quadruple(&mut bld, &label, &tp)?;
        for slot in 1..=4 {
            origin.push(Origin::TObject(ObjId(xi as u32), slot));
        }
    }

    let mut t_generators: Vec<Option<GenId>> = vec![None; c.generator_count()];
    for (fi, f) in c.generators().iter().enumerate() {
        if dropped.contains(&GenId(fi as u32)) {
            continue;
        }
        let ax = a_emb.objs[span.alpha.obj_map[f.src.index()].index()];
        let by = b_emb.objs[span.beta.obj_map[f.tgt.index()].index()];
        let tx = NcPoly::generator(&bld, t_objects[f.src.index()]);
        let ty = NcPoly::generator(&bld, t_objects[f.tgt.index()]);
        let main = beta_poly(fi)?.compose(&tx)?.sub(&ty.compose(&alpha_poly(fi)?)?)?;
        let mut d = main.scale(&Coefficient::sign(ring, f.deg));
        for (w, coef) in f.d.terms() {
            let letters = w.letters();
            for i in 0..letters.len() {
                let right_deg: i64 = letters[i + 1..].iter().map(|g| c.gen_deg(*g)).sum();
                let t = t_generators[letters[i].index()].ok_or_else(|| {
                    DgError::Invalid(format!(
                        "d({}) uses {}, which has no t-generator",
                        f.name,
                        c.gen_name(letters[i])
                    ))
                })?;
                let mut chain = Vec::with_capacity(letters.len());
                for g in &letters[..i] {
                    chain.push(beta_poly(g.index())?);
                }
                chain.push(NcPoly::generator(&bld, t));
                for g in &letters[i + 1..] {
                    chain.push(alpha_poly(g.index())?);
                }
                let term = NcPoly::compose_all(&chain)?;
                let sign = Coefficient::sign(ring, right_deg).mul(coef);
                d.add_assign(&term.scale(&sign))?;
            }
        }
        let label = fresh_name(|n| bld.has_generator(n), &format!("t_{{{}}}", f.name), "'");
        let id = bld.generator(&label, ax, by, f.deg - 1, d)?;
        t_generators[fi] = Some(id);
        origin.push(Origin::TGenerator(GenId(fi as u32)));
    }
    bld.provenance(
        "hocolim",
        format!(
            "{} objects and {} generators of the middle category; {} inverse generators skipped",
            c.object_count(),
            c.generator_count(),
            dropped.len()
        ),
    );
    let cat = Arc::new(bld.build()?);
    let from_a = embedding_functor(a.clone(), cat.clone(), &a_emb)?;
    let from_b = embedding_functor(b.clone(), cat.clone(), &b_emb)?;
    Ok(HocolimResult {
        cat,
        span: span.clone(),
        from_a,
        from_b,
        general: true,
        origin,
        t_objects,
        t_generators,
    })
}

fn copy_b(bld: &mut CatBuilder, b: &SemifreeDgCat, emb: &mut Embedding, avoid: &HashSet<String>) -> Result<()> {
    // Names shared with A were already suffixed on the A side; B keeps its own unless taken.
    copy_generators(bld, b, emb, "_2", avoid)
}

fn apply_emb(p: &NcPoly, emb: &Embedding, ring: crate::algebra::Ring) -> Result<NcPoly> {
    p.substitute(ring, emb.objs[p.src().index()], emb.objs[p.tgt().index()], |g| {
        emb.gens[g.index()]
            .clone()
            .ok_or_else(|| DgError::Invalid("unmapped generator".into()))
    })
}

/// The functor induced on homotopy colimits by a commuting ladder of spans.
pub fn hocolim_functor(
    h1: &HocolimResult,
    h2: &HocolimResult,
    f_a: &DgFunctor,
    f_c: &DgFunctor,
    f_b: &DgFunctor,
) -> Result<DgFunctor> {
    if !h1.general || !h2.general {
        return Err(DgError::Invalid("induced functors need the general homotopy colimit formula".into()));
    }
    check_ladder(&h1.span.alpha, &h2.span.alpha, f_c, f_a, "A")?;
    check_ladder(&h1.span.beta, &h2.span.beta, f_c, f_b, "B")?;
    let src = h1.cat.clone();
    let tgt = h2.cat.clone();
    let mut obj_map = vec![ObjId(0); src.object_count()];
    for (i, o) in h1.from_a.obj_map.iter().enumerate() {
        obj_map[o.index()] = h2.from_a.obj_map[f_a.obj_map[i].index()];
    }
    for (i, o) in h1.from_b.obj_map.iter().enumerate() {
        obj_map[o.index()] = h2.from_b.obj_map[f_b.obj_map[i].index()];
    }
    let mut images = Vec::with_capacity(src.generator_count());
    for (gi, origin) in h1.origin.iter().enumerate() {
        let img = match origin {
            Origin::A(g) => h2.from_a.apply(&f_a.images[g.index()])?,
            Origin::B(g) => h2.from_b.apply(&f_b.images[g.index()])?,
            Origin::TObject(x, slot) => {
                let fx = f_c.obj_map[x.index()];
                let t = h2.t_objects[fx.index()];
                if *slot == 0 {
                    h2.t_obj(fx)
                } else {
                    let label = tgt.gen_name(t).to_string();
                    let names = localization_names(&label);
                    tgt.g(&names[*slot as usize - 1])?
                }
            }
            Origin::TGenerator(f) => h2.twisted_derivation(&f_c.images[f.index()])?,
        };
        let g = src.generator(GenId(gi as u32));
        let (s, t) = (obj_map[g.src.index()], obj_map[g.tgt.index()]);
        images.push(if img.is_zero() { NcPoly::zero(tgt.ring(), s, t) } else { img });
    }
    let f = DgFunctor::new(src, tgt, obj_map, images);
    f.validate()?;
    Ok(f)
}

fn check_ladder(leg1: &DgFunctor, leg2: &DgFunctor, f_c: &DgFunctor, f_side: &DgFunctor, side: &str) -> Result<()> {
    for (x, o) in leg1.obj_map.iter().enumerate() {
        if f_side.obj_map[o.index()] != leg2.obj_map[f_c.obj_map[x].index()] {
            return Err(DgError::Invalid(format!("ladder does not commute on objects ({side} side)")));
        }
    }
    for (i, p) in leg1.images.iter().enumerate() {
        let left = f_side.apply(p)?;
        let right = leg2.apply(&f_c.images[i])?;
        if left != right {
            return Err(DgError::Invalid(format!(
                "ladder does not commute on {} ({side} side): {} vs {}",
                leg1.source.gen_name(GenId(i as u32)),
                left.render(f_side.target.as_ref()),
                right.render(f_side.target.as_ref())
            )));
        }
    }
    Ok(())
}
