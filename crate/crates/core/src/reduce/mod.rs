//! Simplification moves on presentations: basis change, cancellation, substitution and
//! strictification of the comparison morphisms left behind by homotopy colimits.

mod script;

use std::sync::Arc;

pub use script::{run_script, ReductionStep, StepRecord};

use crate::algebra::{leibniz_d, Coefficient, GenId, GenTable, NcPoly, ObjId, Word};
use crate::dgcat::{CatBuilder, DgFunctor, LocalizationRecord, SemifreeDgCat};
use crate::error::{DgError, Result};

/// A simplified presentation with the quotient functor from the old one.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub cat: Arc<SemifreeDgCat>,
    pub functor: DgFunctor,
}

impl Reduction {
    pub fn identity(cat: Arc<SemifreeDgCat>) -> Self {
        Reduction {
            functor: DgFunctor::identity(cat.clone()),
            cat,
        }
    }

    /// Follows `self` by `next`.
    pub fn then(&self, next: Reduction) -> Result<Reduction> {
        let functor = next.functor.compose(&self.functor)?;
        Ok(Reduction { cat: next.cat, functor })
    }
}

#[derive(Debug, Clone)]
enum Fate {
    Keep,
    Zero,
    Identity,
    /// Replaced by a polynomial in earlier generators of the old presentation.
    Value(NcPoly),
    /// `f̃ = u·f + g`; the new generator takes the given name.
    Basis { name: String, unit: Coefficient, lower: NcPoly },
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    parent[x] = r;
    r
}

fn rebuild(cat: &Arc<SemifreeDgCat>, merge: &[(ObjId, ObjId)], fates: Vec<Fate>, op: &str, detail: String) -> Result<Reduction> {
    let ring = cat.ring();
    let mut parent: Vec<usize> = (0..cat.object_count()).collect();
    for (p, q) in merge {
        let (rp, rq) = (find(&mut parent, p.index()), find(&mut parent, q.index()));
        if rp != rq {
            let (lo, hi) = (rp.min(rq), rp.max(rq));
            parent[hi] = lo;
        }
    }
    let mut b = CatBuilder::new(ring);
    let mut obj_map = vec![ObjId(0); cat.object_count()];
    for i in 0..cat.object_count() {
        let r = find(&mut parent, i);
        if r == i {
            obj_map[i] = b.object(&cat.objects()[i])?;
        }
    }
    for i in 0..cat.object_count() {
        let r = find(&mut parent, i);
        obj_map[i] = obj_map[r];
    }
    let mut images: Vec<Option<NcPoly>> = vec![None; cat.generator_count()];
    for (i, (g, fate)) in cat.generators().iter().zip(fates).enumerate() {
        let (s, t) = (obj_map[g.src.index()], obj_map[g.tgt.index()]);
        let map = |p: &NcPoly, images: &[Option<NcPoly>]| -> Result<NcPoly> {
            p.substitute(ring, obj_map[p.src().index()], obj_map[p.tgt().index()], |x| {
                images[x.index()].clone().ok_or_else(|| DgError::OrdinalViolation {
                    generator: g.name.clone(),
                    uses: cat.gen_name(x).to_string(),
                })
            })
        };
        let img = match fate {
            Fate::Keep => {
                let d = map(&g.d, &images)?;
                let id = b.generator(&g.name, s, t, g.deg, d)?;
                NcPoly::generator(&b, id)
            }
            Fate::Zero => NcPoly::zero(ring, s, t),
            Fate::Identity => {
                if s != t {
                    return Err(DgError::Invalid(format!("{} cannot be set to an identity", g.name)));
                }
                NcPoly::identity(ring, s)
            }
            Fate::Value(p) => map(&p, &images)?,
            Fate::Basis { name, unit, lower } => {
                let dl = leibniz_d(&lower, cat.as_ref())?;
                let d_old = g.d.scale(&unit).add(&dl)?;
                let d = map(&d_old, &images)?;
                let id = b.generator(&name, s, t, g.deg, d)?;
                let inv = unit.inverse().ok_or_else(|| DgError::NotUnit(unit.to_string()))?;
                NcPoly::generator(&b, id).sub(&map(&lower, &images)?)?.scale(&inv)
            }
        };
        images[i] = Some(img);
    }
    for rec in cat.localizations() {
        if let Some(r) = transport(rec, cat, &images, &obj_map, &b) {
            b.record_localization(r);
        }
    }
    b.provenance = cat.provenance().to_vec();
    b.provenance(op, detail);
    let new = Arc::new(b.build()?);
    let images = images.into_iter().map(|p| p.expect("all generators processed")).collect();
    let functor = DgFunctor::new(cat.clone(), new.clone(), obj_map, images);
    functor.validate()?;
    Ok(Reduction { cat: new, functor })
}

fn single_generator(p: &NcPoly) -> Option<GenId> {
    let (w, c) = p.terms().next()?;
    (p.len() == 1 && c.is_one() && w.len() == 1).then(|| w.letters()[0])
}

fn transport(
    rec: &LocalizationRecord,
    cat: &SemifreeDgCat,
    images: &[Option<NcPoly>],
    obj_map: &[ObjId],
    b: &CatBuilder,
) -> Option<LocalizationRecord> {
    let name = |n: &str| -> Option<String> {
        let g = cat.find_generator(n)?;
        single_generator(images[g.index()].as_ref()?).map(|x| b.gen_name(x).to_string())
    };
    let m = cat.poly(&rec.morphism).ok()?;
    let m = m
        .substitute(b.ring(), obj_map[m.src().index()], obj_map[m.tgt().index()], |g| {
            images[g.index()].clone().ok_or_else(|| DgError::Invalid(String::new()))
        })
        .ok()?;
    Some(LocalizationRecord {
        morphism: m.render(b),
        inverse: name(&rec.inverse)?,
        hat: name(&rec.hat)?,
        check: name(&rec.check)?,
        bar: name(&rec.bar)?,
    })
}

fn keep_all(cat: &SemifreeDgCat) -> Vec<Fate> {
    vec![Fate::Keep; cat.generator_count()]
}

/// Replaces `f` by `f̃ = u·f + g`, where `g` only uses generators below `f`.
pub fn change_basis(
    cat: &Arc<SemifreeDgCat>,
    generator: &str,
    rename: Option<&str>,
    unit: Coefficient,
    lower: &NcPoly,
) -> Result<Reduction> {
    let id = cat.gen(generator)?;
    let g = cat.generator(id);
    if !unit.is_unit() {
        return Err(DgError::NotUnit(unit.to_string()));
    }
    if lower.src() != g.src || lower.tgt() != g.tgt {
        return Err(DgError::Boundary {
            generator: generator.to_string(),
            detail: "lower term has a different boundary".into(),
        });
    }
    if let Some(bad) = lower.generators_used().into_iter().find(|x| x.0 >= id.0) {
        return Err(DgError::OrdinalViolation {
            generator: generator.to_string(),
            uses: cat.gen_name(bad).to_string(),
        });
    }
    if let Some(d) = lower.degrees(cat.as_ref()).into_iter().find(|d| *d != g.deg) {
        return Err(DgError::DegreeError {
            generator: generator.to_string(),
            expected: g.deg,
            found: d.to_string(),
        });
    }
    let mut fates = keep_all(cat);
    let name = rename.unwrap_or(generator).to_string();
    let detail = format!(
        "{name} := {} {generator} + {}",
        unit,
        lower.render(cat.as_ref())
    );
    fates[id.index()] = Fate::Basis {
        name,
        unit,
        lower: lower.clone(),
    };
    rebuild(cat, &[], fates, "change_basis", detail)
}

/// Splits `da = u·b + r`; errors unless `u` is a unit and `r` only uses generators below `b`.
pub fn cancellation_data(cat: &SemifreeDgCat, a: GenId, b: GenId) -> Result<(Coefficient, NcPoly)> {
    let da = &cat.generator(a).d;
    let name = || format!("{} against {}", cat.gen_name(a), cat.gen_name(b));
    let u = da
        .coefficient(&Word::letter(b))
        .cloned()
        .ok_or_else(|| DgError::NoCancellation(format!("{}: no linear term", name())))?;
    if !u.is_unit() {
        return Err(DgError::NoCancellation(format!("{}: coefficient {u} is not a unit", name())));
    }
    let bterm = NcPoly::monomial(cat.ring(), da.src(), da.tgt(), Word::letter(b), u.clone());
    let r = da.sub(&bterm)?;
    if let Some(bad) = r.generators_used().into_iter().find(|x| x.0 >= b.0) {
        return Err(DgError::NoCancellation(format!(
            "{}: remainder uses {}",
            name(),
            cat.gen_name(bad)
        )));
    }
    Ok((u, r))
}

/// Removes `a` and `b` when `da = u·b + r`; `b` is replaced by `−u⁻¹r` everywhere.
pub fn cancel_pair(cat: &Arc<SemifreeDgCat>, a: &str, b: &str) -> Result<Reduction> {
    let (ia, ib) = (cat.gen(a)?, cat.gen(b)?);
    let (u, r) = cancellation_data(cat, ia, ib)?;
    let inv = u.inverse().expect("unit");
    let mut fates = keep_all(cat);
    fates[ia.index()] = Fate::Zero;
    fates[ib.index()] = Fate::Value(r.scale(&inv).neg());
    rebuild(cat, &[], fates, "cancel", format!("{a} against {b}"))
}

/// The value a generator is set to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constant {
    Zero,
    Identity,
}

/// Sets a generator to `0` or to the identity; the quotient functor must stay a dg functor.
pub fn set_generator(cat: &Arc<SemifreeDgCat>, generator: &str, value: Constant) -> Result<Reduction> {
    let id = cat.gen(generator)?;
    let mut fates = keep_all(cat);
    fates[id.index()] = match value {
        Constant::Zero => Fate::Zero,
        Constant::Identity => Fate::Identity,
    };
    let v = match value {
        Constant::Zero => "0",
        Constant::Identity => "1",
    };
    rebuild(cat, &[], fates, "set", format!("{generator} = {v}"))
}

/// Identifies the endpoints of each listed inverted generator, setting it and its inverse to
/// the identity and the homotopies to zero.
pub fn strictify(cat: &Arc<SemifreeDgCat>, generators: &[&str]) -> Result<Reduction> {
    let mut fates = keep_all(cat);
    let mut merge = Vec::new();
    for name in generators {
        let id = cat.gen(name)?;
        let g = cat.generator(id);
        let rec = cat
            .localizations()
            .iter()
            .find(|r| r.morphism == *name)
            .ok_or_else(|| DgError::NotUnit(format!("{name} is not inverted in the presentation")))?;
        if g.deg != 0 || !g.d.is_zero() {
            return Err(DgError::NotUnit(format!("{name} is not a closed degree-0 generator")));
        }
        merge.push((g.src, g.tgt));
        fates[id.index()] = Fate::Identity;
        fates[cat.gen(&rec.inverse)?.index()] = Fate::Identity;
        for n in [&rec.hat, &rec.check, &rec.bar] {
            fates[cat.gen(n)?.index()] = Fate::Zero;
        }
    }
    rebuild(cat, &merge, fates, "strictify", generators.join(", "))
}

/// Strictifies every inverted comparison generator `t_{…}` left by a homotopy colimit.
pub fn strictify_t(cat: &Arc<SemifreeDgCat>) -> Result<Reduction> {
    let names: Vec<String> = cat
        .localizations()
        .iter()
        .filter(|r| r.morphism.starts_with("t_") && cat.find_generator(&r.morphism).is_some())
        .map(|r| r.morphism.clone())
        .collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    strictify(cat, &refs)
}

/// Renames generators and objects; unlisted names are kept.
pub fn rename(cat: &Arc<SemifreeDgCat>, objects: &[(&str, &str)], generators: &[(&str, &str)]) -> Result<Reduction> {
    let ring = cat.ring();
    let mut b = CatBuilder::new(ring);
    let lookup = |pairs: &[(&str, &str)], n: &str| -> String {
        pairs.iter().find(|(a, _)| *a == n).map(|(_, b)| b.to_string()).unwrap_or_else(|| n.to_string())
    };
    let mut obj_map = Vec::new();
    for o in cat.objects() {
        obj_map.push(b.object(&lookup(objects, o))?);
    }
    let mut images = Vec::new();
    for g in cat.generators() {
        let d = g.d.relabel(obj_map[g.src.index()], obj_map[g.tgt.index()], |x| x);
        let id = b.generator(&lookup(generators, &g.name), obj_map[g.src.index()], obj_map[g.tgt.index()], g.deg, d)?;
        images.push(NcPoly::generator(&b, id));
    }
    let ren = |n: &str| lookup(generators, n);
    for rec in cat.localizations() {
        let m = cat.poly(&rec.morphism)?;
        let m = m.relabel(obj_map[m.src().index()], obj_map[m.tgt().index()], |x| x);
        b.record_localization(LocalizationRecord {
            morphism: m.render(&b),
            inverse: ren(&rec.inverse),
            hat: ren(&rec.hat),
            check: ren(&rec.check),
            bar: ren(&rec.bar),
        });
    }
    b.provenance = cat.provenance().to_vec();
    b.provenance("rename", format!("{} objects, {} generators", objects.len(), generators.len()));
    let new = Arc::new(b.build()?);
    let functor = DgFunctor::new(cat.clone(), new.clone(), obj_map, images);
    Ok(Reduction { cat: new, functor })
}

/// Finds the first cancellable pair: earliest `a`, and among its linear terms the latest `b`.
pub fn find_cancellable(cat: &SemifreeDgCat) -> Option<(GenId, GenId)> {
    let protected: std::collections::HashSet<&str> = cat
        .localizations()
        .iter()
        .flat_map(|r| [r.inverse.as_str(), r.hat.as_str(), r.check.as_str(), r.bar.as_str()])
        .collect();
    for (i, g) in cat.generators().iter().enumerate() {
        if protected.contains(g.name.as_str()) {
            continue;
        }
        let mut cands: Vec<GenId> = g
            .d
            .terms()
            .filter(|(w, c)| w.len() == 1 && c.is_unit())
            .map(|(w, _)| w.letters()[0])
            .filter(|b| !protected.contains(cat.gen_name(*b)))
            .collect();
        cands.sort();
        for b in cands.into_iter().rev() {
            if cancellation_data(cat, GenId(i as u32), b).is_ok() {
                return Some((GenId(i as u32), b));
            }
        }
    }
    None
}

/// Cancels pairs until none is left; returns the composite reduction and the pairs used.
pub fn greedy_simplify(cat: &Arc<SemifreeDgCat>) -> Result<(Reduction, Vec<(String, String)>)> {
    let mut red = Reduction::identity(cat.clone());
    let mut pairs = Vec::new();
    while let Some((a, b)) = find_cancellable(&red.cat) {
        let (an, bn) = (red.cat.gen_name(a).to_string(), red.cat.gen_name(b).to_string());
        let next = cancel_pair(&red.cat, &an, &bn)?;
        red = red.then(next)?;
        pairs.push((an, bn));
    }
    Ok((red, pairs))
}
