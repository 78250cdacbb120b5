use crate::algebra::{GenId, GenTable, NcPoly, ObjId, Word};
use crate::constructions::RelationalDgCat;
use crate::dgcat::{CatBuilder, RewriteSystem, SemifreeDgCat};
use crate::error::Result;

/// `End(⊕ L_v)` as a one-object presentation with idempotents `e_v`.
#[derive(Debug, Clone)]
pub struct EndomorphismAlgebra {
    pub algebra: RelationalDgCat,
    /// Idempotent names, one per source object (empty when the source has one object).
    pub idempotents: Vec<String>,
}

impl EndomorphismAlgebra {
    /// Carries a morphism of the source into the algebra.
    pub fn embed(&self, cat: &SemifreeDgCat, p: &NcPoly) -> Result<NcPoly> {
        if self.idempotents.is_empty() {
            return Ok(p.clone());
        }
        let shift = self.idempotents.len() as u32;
        let ring = cat.ring();
        let l = ObjId(0);
        let mut out = NcPoly::zero(ring, l, l);
        for (w, c) in p.terms() {
            let word = if w.is_empty() {
                Word::letter(GenId(p.src().0))
            } else {
                Word(w.letters().iter().map(|g| GenId(g.0 + shift)).collect())
            };
            out.add_term(word, c.clone());
        }
        Ok(self.algebra.normal_form(&out))
    }
}

pub fn idempotent_name(object: &str) -> String {
    format!("e_{object}")
}

/// The endomorphism algebra of the sum of all objects: generators keep their names, identities
/// become idempotents, and words that do not compose are zero. The core alone is not a valid
/// presentation; `d² = 0` holds modulo the rules.
pub fn total_endomorphism_algebra(cat: &SemifreeDgCat) -> Result<EndomorphismAlgebra> {
    if cat.object_count() == 1 {
        return Ok(EndomorphismAlgebra {
            algebra: RelationalDgCat::new(cat.clone(), RewriteSystem::new())?,
            idempotents: Vec::new(),
        });
    }
    let ring = cat.ring();
    let mut b = CatBuilder::new(ring);
    let l = b.object("L")?;
    let idempotents: Vec<String> = cat.objects().iter().map(|o| idempotent_name(o)).collect();
    for e in &idempotents {
        b.closed(e, l, l, 0)?;
    }
    let shift = idempotents.len() as u32;
    let lift = |p: &NcPoly| {
        let mut out = NcPoly::zero(ring, l, l);
        for (w, c) in p.terms() {
            let word = if w.is_empty() {
                Word::letter(GenId(p.src().0))
            } else {
                Word(w.letters().iter().map(|g| GenId(g.0 + shift)).collect())
            };
            out.add_term(word, c.clone());
        }
        out
    };
    for g in cat.generators() {
        b.generator_modulo_relations(&g.name, l, l, g.deg, lift(&g.d))?;
    }
    b.provenance("endomorphism_algebra", format!("{} objects", cat.object_count()));
    let core = b.build()?;
    let mut rules = RewriteSystem::new();
    let zero = NcPoly::zero(ring, l, l);
    let idem = |i: u32| GenId(i);
    for v in 0..shift {
        for w in 0..shift {
            let rhs = if v == w { NcPoly::generator(&core, idem(v)) } else { zero.clone() };
            rules.add_rule(&core, Word(vec![idem(v), idem(w)]), rhs)?;
        }
    }
    let gens = cat.generators();
    for (i, g) in gens.iter().enumerate() {
        let gi = GenId(i as u32 + shift);
        let me = NcPoly::generator(&core, gi);
        for v in 0..shift {
            let after = if g.src.0 == v { me.clone() } else { zero.clone() };
            rules.add_rule(&core, Word(vec![gi, idem(v)]), after)?;
            let before = if g.tgt.0 == v { me.clone() } else { zero.clone() };
            rules.add_rule(&core, Word(vec![idem(v), gi]), before)?;
        }
        for (j, h) in gens.iter().enumerate() {
            if g.src != h.tgt {
                rules.add_rule(&core, Word(vec![gi, GenId(j as u32 + shift)]), zero.clone())?;
            }
        }
    }
    Ok(EndomorphismAlgebra {
        algebra: RelationalDgCat::new(core, rules)?,
        idempotents,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fukaya::{c, d12};
    use crate::plumbing::{build_wrapped, Manifold, PlumbingData};
    use crate::Ring;

    #[test]
    fn one_object() {
        let cat = c(3, Ring::Integers, true).unwrap();
        let e = total_endomorphism_algebra(&cat).unwrap();
        assert_eq!(e.algebra.core, cat);
        assert!(e.idempotents.is_empty());
    }

    #[test]
    fn idempotents() {
        let cat = d12(3, Ring::Integers, true).unwrap();
        let e = total_endomorphism_algebra(&cat).unwrap();
        let a = &e.algebra;
        assert_eq!(a.render(&a.poly("e_L1∘e_L1").unwrap()), "e_L1");
        assert_eq!(a.render(&a.poly("e_L1∘e_L2").unwrap()), "0");
        assert_eq!(a.render(&a.poly("x∘e_L1").unwrap()), "x");
        assert_eq!(a.render(&a.poly("e_L1∘x").unwrap()), "0");
        assert_eq!(a.render(&a.poly("x∘x").unwrap()), "0");
        assert_eq!(a.render(&a.poly("y∘x").unwrap()), "y∘x");
        let one = e.embed(&cat, &cat.identity(cat.obj("L2").unwrap())).unwrap();
        assert_eq!(a.render(&one), "e_L2");
        assert!(a.critical_pairs(3).unwrap().is_empty());
    }

    #[test]
    fn multiplicative_preprojective() {
        let mut data = PlumbingData::spheres(2, &["v", "w"], &[("e", "v", "w", 1, 0)]);
        data.vertices[0].manifold = Manifold::Surface { genus: 1 };
        let cat = build_wrapped(&data).unwrap();
        let e = total_endomorphism_algebra(&cat).unwrap();
        let a = &e.algebra;
        assert_eq!(
            a.core.d_text("h_v").unwrap(),
            "-e_L_v + delta_1^v + delta_1^v∘y_e∘x_e"
        );
        assert_eq!(a.core.d_text("h_w").unwrap(), "-x_e∘y_e");
        let dd = a.d(&a.d(&a.poly("h_v").unwrap()).unwrap()).unwrap();
        assert!(dd.is_zero());
    }
}
