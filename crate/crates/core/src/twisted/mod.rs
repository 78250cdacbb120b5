//! Shifted objects and one-step cones inside the twisted closure.

mod cone;

use std::sync::Arc;

pub use cone::{
    alpha2, check_relations, cone_extend, d01_lemma, e12, e12_full_to_cone, e12_simplified_to_full, generator_change_d12,
    ConeExtension, GeneratorChange,
};

use crate::algebra::{Coefficient, GenId, GenTable, NcPoly, Word};
use crate::dgcat::{CatBuilder, DgFunctor, LocalizationRecord, SemifreeDgCat};
use crate::error::{DgError, Result};

/// Name of `X[m]`; the unshifted object keeps its name.
pub fn shifted_name(base: &str, m: i64) -> String {
    if m == 0 {
        base.to_string()
    } else {
        format!("{base}[{m}]")
    }
}

/// The presentation obtained by replacing every object `X` by `X[m_X]`.
///
/// A generator `f: X → Y` becomes `f̃ := 1_{m_Y,m_X} ⊗ f` of degree `|f| + m_X − m_Y`.
#[derive(Debug, Clone)]
pub struct ShiftedPresentation {
    pub base: Arc<SemifreeDgCat>,
    pub cat: Arc<SemifreeDgCat>,
    pub shifts: Vec<i64>,
    pub gen_map: Vec<GenId>,
}

/// `(1_{p,q}⊗f)∘(1_{q,r}⊗g) = (−1)^{|f|(q−r)} 1_{p,r}⊗(f∘g)`.
pub fn koszul_sign(f_degree: i64, q: i64, r: i64) -> i64 {
    if (f_degree * (q - r)).rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

impl ShiftedPresentation {
    fn word_sign(&self, w: &Word) -> i64 {
        let letters = w.letters();
        let Some(first) = letters.last() else {
            return 1;
        };
        let m0 = self.shifts[self.base.gen_src(*first).index()];
        let mut sign = 1;
        for g in letters.iter().rev().skip(1) {
            let q = self.shifts[self.base.gen_src(*g).index()];
            sign *= koszul_sign(self.base.gen_deg(*g), q, m0);
        }
        sign
    }

    /// `1_{m_Y,m_X} ⊗ p` written in the shifted generators.
    pub fn transport(&self, p: &NcPoly) -> Result<NcPoly> {
        if p.ring() != self.base.ring() {
            return Err(DgError::RingMismatch(p.ring().to_string(), self.base.ring().to_string()));
        }
        let ring = p.ring();
        let mut out = NcPoly::zero(ring, p.src(), p.tgt());
        for (w, c) in p.terms() {
            let s = Coefficient::from_i64(ring, self.word_sign(w));
            let nw = Word(w.letters().iter().map(|g| self.gen_map[g.index()]).collect());
            out.add_term(nw, c.mul(&s));
        }
        Ok(out)
    }

    /// `shift ∘ F` for a functor into the base presentation.
    pub fn shift_functor(&self, f: &DgFunctor) -> Result<DgFunctor> {
        if f.target.as_ref() != self.base.as_ref() {
            return Err(DgError::Invalid("functor does not land in the shifted presentation".into()));
        }
        let images = f.images.iter().map(|p| self.transport(p)).collect::<Result<Vec<_>>>()?;
        let mut out = DgFunctor::new(f.source.clone(), self.cat.clone(), f.obj_map.clone(), images);
        out.shifts = Some(f.obj_map.iter().map(|o| self.shifts[o.index()]).collect());
        out.validate()?;
        Ok(out)
    }
}

/// Shifts the listed objects; generators touching a shifted object are renamed `f~`.
pub fn shift_presentation(cat: &Arc<SemifreeDgCat>, shifts: &[(&str, i64)]) -> Result<ShiftedPresentation> {
    let mut m = vec![0i64; cat.object_count()];
    for (name, s) in shifts {
        m[cat.obj(name)?.index()] = *s;
    }
    if m.iter().all(|s| *s == 0) {
        return Ok(ShiftedPresentation {
            base: cat.clone(),
            cat: cat.clone(),
            shifts: m,
            gen_map: (0..cat.generator_count() as u32).map(GenId).collect(),
        });
    }
    let ring = cat.ring();
    let mut b = CatBuilder::new(ring);
    for (i, o) in cat.objects().iter().enumerate() {
        b.object(&shifted_name(o, m[i]))?;
    }
    let gen_map: Vec<GenId> = (0..cat.generator_count() as u32).map(GenId).collect();
    let mut sp = ShiftedPresentation {
        base: cat.clone(),
        cat: cat.clone(),
        shifts: m.clone(),
        gen_map,
    };
    for g in cat.generators() {
        let (ms, mt) = (m[g.src.index()], m[g.tgt.index()]);
        let name = if ms == 0 && mt == 0 { g.name.clone() } else { format!("{}~", g.name) };
        let d = sp.transport(&g.d)?;
        let d = if (ms - mt).rem_euclid(2) == 0 { d } else { d.neg() };
        b.generator(&name, g.src, g.tgt, g.deg + ms - mt, d)?;
    }
    let names: Vec<String> = b_names(&b);
    for rec in cat.localizations() {
        let mp = sp.transport(&cat.poly(&rec.morphism)?)?;
        let ren = |n: &str| -> Result<String> { Ok(names[cat.gen(n)?.index()].clone()) };
        let rec = LocalizationRecord {
            morphism: mp.render(&b),
            inverse: ren(&rec.inverse)?,
            hat: ren(&rec.hat)?,
            check: ren(&rec.check)?,
            bar: ren(&rec.bar)?,
        };
        b.record_localization(rec);
    }
    b.provenance = cat.provenance().to_vec();
    let detail: Vec<String> = shifts.iter().map(|(o, s)| format!("{o}[{s}]")).collect();
    b.provenance("shift", detail.join(", "));
    sp.cat = Arc::new(b.build()?);
    sp.cat.validate()?;
    Ok(sp)
}

fn b_names(b: &CatBuilder) -> Vec<String> {
    (0..b.generator_count() as u32).map(|i| b.gen_name(GenId(i)).to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Ring;

    fn d12(n: i64) -> Arc<SemifreeDgCat> {
        let mut b = CatBuilder::new(Ring::Integers);
        let l1 = b.object("L1").unwrap();
        let l2 = b.object("L2").unwrap();
        b.closed("x", l1, l2, 0).unwrap();
        b.closed("y", l2, l1, 2 - n).unwrap();
        Arc::new(b.build().unwrap())
    }

    #[test]
    fn zero_shift_is_identity() {
        let cat = d12(3);
        let sp = shift_presentation(&cat, &[("L1", 0)]).unwrap();
        assert_eq!(sp.cat.as_ref(), cat.as_ref());
        let yx = cat.poly("y∘x").unwrap();
        assert_eq!(sp.transport(&yx).unwrap(), yx);
    }

    #[test]
    fn shifted_degrees_and_sign() {
        for n in 2..6 {
            for d in -3..4 {
                let cat = d12(n);
                let sp = shift_presentation(&cat, &[("L1", d)]).unwrap();
                let c = sp.cat.as_ref();
                if d != 0 {
                    assert_eq!(c.generator(c.gen("x~").unwrap()).deg, d);
                    assert_eq!(c.generator(c.gen("y~").unwrap()).deg, 2 - n - d);
                }
                let yx = sp.transport(&cat.poly("y∘x").unwrap()).unwrap();
                let expected = if (n * d) % 2 == 0 { "" } else { "-" };
                let names = if d == 0 { "y∘x" } else { "y~∘x~" };
                assert_eq!(c.render(&yx), format!("{expected}{names}"));
                let xy = sp.transport(&cat.poly("x∘y").unwrap()).unwrap();
                assert!(!c.render(&xy).starts_with('-'));
            }
        }
    }
}
