use super::relational::RelationalDgCat;
use crate::algebra::{Coefficient, GenId, GenTable, NcPoly, ObjId, Word};
use crate::dgcat::{CatBuilder, RewriteSystem, SemifreeDgCat};
use crate::error::Result;

fn pair(a: &str, b: &str) -> String {
    format!("{a}⊗{b}")
}

/// The tensor product with interchange relations `(1⊗g)(f⊗1) → (−1)^{|f||g|}(f⊗1)(1⊗g)`.
pub fn tensor(a: &SemifreeDgCat, b: &SemifreeDgCat) -> Result<RelationalDgCat> {
    let ring = a.ring();
    let mut bld = CatBuilder::new(ring);
    let (na, nb) = (a.object_count(), b.object_count());
    let obj = |i: usize, j: usize| ObjId((i * nb + j) as u32);
    for x in a.objects() {
        for y in b.objects() {
            bld.object(&pair(x, y))?;
        }
    }
    // f⊗1_{y}, indexed by (generator of A, object of B)
    let mut left = vec![vec![GenId(0); nb]; a.generator_count()];
    for (fi, f) in a.generators().iter().enumerate() {
        for j in 0..nb {
            let (s, t) = (obj(f.src.index(), j), obj(f.tgt.index(), j));
            let d = f.d.substitute(ring, s, t, |g| Ok(NcPoly::generator(&bld, left[g.index()][j])))?;
            let name = format!("{}⊗1_{{{}}}", f.name, b.objects()[j]);
            left[fi][j] = bld.generator(&name, s, t, f.deg, d)?;
        }
    }
    let mut right = vec![vec![GenId(0); na]; b.generator_count()];
    for (gi, g) in b.generators().iter().enumerate() {
        for i in 0..na {
            let (s, t) = (obj(i, g.src.index()), obj(i, g.tgt.index()));
            let d = g.d.substitute(ring, s, t, |h| Ok(NcPoly::generator(&bld, right[h.index()][i])))?;
            let name = format!("1_{{{}}}⊗{}", a.objects()[i], g.name);
            right[gi][i] = bld.generator(&name, s, t, g.deg, d)?;
        }
    }
    let mut rules = RewriteSystem::new();
    for (gi, g) in b.generators().iter().enumerate() {
        for (fi, f) in a.generators().iter().enumerate() {
            // (1_{a'}⊗g)∘(f⊗1_{y}) with f: a→a', g: y→y'
            let lhs = Word(vec![right[gi][f.tgt.index()], left[fi][g.src.index()]]);
            let rhs_word = Word(vec![left[fi][g.tgt.index()], right[gi][f.src.index()]]);
            let s = obj(f.src.index(), g.src.index());
            let t = obj(f.tgt.index(), g.tgt.index());
            let rhs = NcPoly::monomial(ring, s, t, rhs_word, Coefficient::sign(ring, f.deg * g.deg));
            rules.add_rule(&bld, lhs, rhs)?;
        }
    }
    bld.provenance("tensor", format!("{} objects ⊗ {} objects", na, nb));
    RelationalDgCat::new(bld.build()?, rules)
}
