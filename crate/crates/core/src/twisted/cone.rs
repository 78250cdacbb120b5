use std::sync::Arc;

use crate::algebra::{Coefficient, GenId, GenTable, NcPoly, ObjId, Ring, Word};
use crate::constructions::RelationalDgCat;
use crate::dgcat::{CatBuilder, DgFunctor, RewriteSystem, SemifreeDgCat};
use crate::error::{DgError, Result};

/// A presentation extended by `Cone(g: L₀ → L₁)` and its structural morphisms.
#[derive(Debug, Clone)]
pub struct ConeExtension {
    pub rel: RelationalDgCat,
    pub g: NcPoly,
    pub l0: ObjId,
    pub l1: ObjId,
    pub cone: ObjId,
    pub i0: GenId,
    pub i1: GenId,
    pub p0: GenId,
    pub p1: GenId,
}

impl ConeExtension {
    pub fn core(&self) -> &SemifreeDgCat {
        &self.rel.core
    }

    pub fn rules(&self) -> Arc<RewriteSystem> {
        Arc::new(self.rel.rules.clone())
    }
}

fn word(letters: &[GenId]) -> Word {
    Word(letters.to_vec())
}

/// Adjoins `cone = Cone(g)` with `i₁, p₀, i₀, p₁` (in that order), `di₀ = i₁∘g`,
/// `dp₁ = −g∘p₀`, and the rules `p₀i₀ → 1`, `p₀i₁ → 0`, `p₁i₀ → 0`, `p₁i₁ → 1`,
/// `i₀p₀ → 1 − i₁p₁`.
pub fn cone_extend(cat: &SemifreeDgCat, g: &NcPoly, cone: &str) -> Result<ConeExtension> {
    if !cat.d(g)?.is_zero() {
        return Err(DgError::NotClosed(cat.render(g)));
    }
    if let Some(d) = g.degrees(cat).into_iter().find(|d| *d != 0) {
        return Err(DgError::DegreeError {
            generator: cat.render(g),
            expected: 0,
            found: d.to_string(),
        });
    }
    let ring = cat.ring();
    let (l0, l1) = (g.src(), g.tgt());
    let mut b = CatBuilder::extending(cat);
    let l2 = b.object(cone)?;
    let i1 = b.closed("i1", l1, l2, 0)?;
    let p0 = b.closed("p0", l2, l0, 1)?;
    let i1p = NcPoly::generator(&b, i1);
    let p0p = NcPoly::generator(&b, p0);
    let i0 = b.generator("i0", l0, l2, -1, i1p.compose(g)?)?;
    let p1 = b.generator("p1", l2, l1, 0, g.compose(&p0p)?.neg())?;
    b.provenance("cone", format!("{cone} = Cone({})", cat.render(g)));
    let core = b.build()?;
    let mut rules = RewriteSystem::new();
    rules.add_rule(&core, word(&[p0, i0]), NcPoly::identity(ring, l0))?;
    rules.add_rule(&core, word(&[p0, i1]), NcPoly::zero(ring, l1, l0))?;
    rules.add_rule(&core, word(&[p1, i0]), NcPoly::zero(ring, l0, l1))?;
    rules.add_rule(&core, word(&[p1, i1]), NcPoly::identity(ring, l1))?;
    let rhs = NcPoly::identity(ring, l2).sub(&NcPoly::word(&core, &[i1, p1])?)?;
    rules.add_rule(&core, word(&[i0, p0]), rhs)?;
    let rel = RelationalDgCat::new(core, rules)?;
    Ok(ConeExtension {
        rel,
        g: g.clone(),
        l0,
        l1,
        cone: l2,
        i0,
        i1,
        p0,
        p1,
    })
}

fn sign(ring: Ring, n: i64) -> Coefficient {
    Coefficient::sign(ring, n)
}

/// The two-object category with `α₁: L₁ → L₁`, `g: L₀ → L₁`, `h: L₀ → L₁` and `dh = α₁∘g`.
pub fn d01_lemma(n: i64, ring: Ring) -> Result<SemifreeDgCat> {
    let mut b = CatBuilder::new(ring);
    let l0 = b.object("L0")?;
    let l1 = b.object("L1")?;
    b.closed("alpha1", l1, l1, 2 - n)?;
    b.closed("g", l0, l1, 0)?;
    let d = b.poly("alpha1∘g")?;
    b.generator("h", l0, l1, 1 - n, d)?;
    b.provenance("build", format!("D01({n}) with dh = alpha1∘g"));
    b.build()
}

/// `α₂ = i₁∘α₁∘p₁ + (−1)ⁿ i₁∘h∘p₀` in the cone extension of [`d01_lemma`].
pub fn alpha2(ext: &ConeExtension, n: i64) -> Result<NcPoly> {
    let c = ext.core();
    let ring = c.ring();
    let a = NcPoly::word(c, &[ext.i1, c.gen("alpha1")?, ext.p1])?;
    let h = NcPoly::word(c, &[ext.i1, c.gen("h")?, ext.p0])?.scale(&sign(ring, n));
    a.add(&h)
}

/// The comparison of the cone extension of `D01(n)` with `D12(n)`.
#[derive(Debug, Clone)]
pub struct GeneratorChange {
    pub d01: Arc<SemifreeDgCat>,
    pub ext: ConeExtension,
    pub d12: Arc<SemifreeDgCat>,
    /// `x ↦ i₁`, `y ↦ (−1)ⁿ h∘p₀ + α₁∘p₁`, checked modulo the cone rules.
    pub functor: DgFunctor,
    pub yx_image: NcPoly,
    pub xy_image: NcPoly,
    pub alpha2: NcPoly,
}

pub fn generator_change_d12(n: i64, ring: Ring) -> Result<GeneratorChange> {
    let d01 = Arc::new(d01_lemma(n, ring)?);
    let g = d01.g("g")?;
    let ext = cone_extend(&d01, &g, "L2")?;
    let d12 = Arc::new(crate::fukaya::d12_raw(n, ring)?);
    let core = Arc::new(ext.core().clone());
    let y = format!("{}h∘p0 + alpha1∘p1", if n % 2 == 0 { "" } else { "-" });
    let functor = DgFunctor::from_text(d12.clone(), core.clone(), &[("L1", "L1"), ("L2", "L2")], &[("x", "i1"), ("y", &y)])?
        .with_relations(ext.rules());
    functor.validate()?;
    let yx_image = functor.apply(&d12.poly("y∘x")?)?;
    let xy_image = functor.apply(&d12.poly("x∘y")?)?;
    let alpha2 = alpha2(&ext, n)?;
    Ok(GeneratorChange {
        d01,
        ext,
        d12,
        functor,
        yx_image,
        xy_image,
        alpha2,
    })
}

/// The full subcategory on `L₁`, `Cone(g)`; `simplified` replaces `c` and `α₁` by `y`.
pub fn e12(n: i64, simplified: bool, ring: Ring) -> Result<RelationalDgCat> {
    let mut b = CatBuilder::new(ring);
    let l1 = b.object("L1")?;
    let l2 = b.object("L2")?;
    if simplified {
        b.closed("x", l1, l2, 0)?;
        b.closed("y", l2, l1, 2 - n)?;
        b.closed("b", l2, l1, 1)?;
        let d = b.poly("-b")?;
        b.generator("a", l2, l1, 0, d)?;
    } else {
        b.closed("alpha1", l1, l1, 2 - n)?;
        b.closed("x", l1, l2, 0)?;
        b.closed("b", l2, l1, 1)?;
        let d = b.poly("-b")?;
        b.generator("a", l2, l1, 0, d)?;
        let d = b.poly("alpha1∘b")?;
        b.generator("c", l2, l1, 2 - n, d)?;
    }
    b.provenance("build", format!("E12({n}){}", if simplified { " simplified" } else { "" }));
    let core = b.build()?;
    let x = core.gen("x")?;
    let mut rules = RewriteSystem::new();
    rules.add_rule(&core, word(&[core.gen("a")?, x]), NcPoly::identity(ring, l1))?;
    rules.add_rule(&core, word(&[core.gen("b")?, x]), NcPoly::zero(ring, l1, l1))?;
    if !simplified {
        rules.add_rule(&core, word(&[core.gen("c")?, x]), NcPoly::zero(ring, l1, l1))?;
    }
    RelationalDgCat::new(core, rules)
}

/// Checks that every rule of the source holds after applying `f`.
pub fn check_relations(f: &DgFunctor, source_rules: &RewriteSystem) -> Result<()> {
    for r in source_rules.rules() {
        let (s, t) = crate::algebra::word_boundary(f.source.as_ref(), &r.lhs)?.expect("nonempty");
        let lhs = NcPoly::monomial(f.source.ring(), s, t, r.lhs.clone(), f.source.ring().one());
        let l = f.apply(&lhs)?;
        let rr = f.apply(&r.rhs)?;
        if l != rr {
            return Err(DgError::Witness(format!(
                "relation {} is not preserved: {} vs {}",
                r.lhs.render(f.source.as_ref(), s),
                l.render(f.target.as_ref()),
                rr.render(f.target.as_ref())
            )));
        }
    }
    Ok(())
}

/// `x ↦ i₁`, `a ↦ p₁`, `b ↦ g∘p₀`, `c ↦ h∘p₀`, `α₁ ↦ α₁`.
pub fn e12_full_to_cone(n: i64, ring: Ring) -> Result<(RelationalDgCat, ConeExtension, DgFunctor)> {
    let e = e12(n, false, ring)?;
    let d01 = d01_lemma(n, ring)?;
    let ext = cone_extend(&d01, &d01.g("g")?, "L2")?;
    let f = DgFunctor::from_text(
        Arc::new(e.core.clone()),
        Arc::new(ext.core().clone()),
        &[("L1", "L1"), ("L2", "L2")],
        &[("alpha1", "alpha1"), ("x", "i1"), ("a", "p1"), ("b", "g∘p0"), ("c", "h∘p0")],
    )?
    .with_relations(ext.rules());
    f.validate()?;
    check_relations(&f, &e.rules)?;
    Ok((e, ext, f))
}

/// `y ↦ (−1)ⁿ c + α₁∘a`, the other generators to themselves.
pub fn e12_simplified_to_full(n: i64, ring: Ring) -> Result<(RelationalDgCat, RelationalDgCat, DgFunctor)> {
    let s = e12(n, true, ring)?;
    let full = e12(n, false, ring)?;
    let y = format!("{}c + alpha1∘a", if n % 2 == 0 { "" } else { "-" });
    let f = DgFunctor::from_text(
        Arc::new(s.core.clone()),
        Arc::new(full.core.clone()),
        &[("L1", "L1"), ("L2", "L2")],
        &[("x", "x"), ("y", &y), ("a", "a"), ("b", "b")],
    )?
    .with_relations(Arc::new(full.rules.clone()));
    f.validate()?;
    check_relations(&f, &s.rules)?;
    Ok((s, full, f))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cone_differentials() {
        for n in 1..6 {
            let ext = generator_change_d12(n, Ring::Integers).unwrap().ext;
            let c = ext.core();
            assert_eq!(c.d_text("i0").unwrap(), "i1∘g");
            assert_eq!(c.d_text("p1").unwrap(), "-g∘p0");
            assert_eq!(c.d_text("i1").unwrap(), "0");
            assert!(ext.rel.critical_pairs(4).unwrap().is_empty());
        }
    }

    #[test]
    fn cone_of_zero() {
        let mut b = CatBuilder::new(Ring::Integers);
        b.object("A").unwrap();
        b.object("B").unwrap();
        let cat = b.build().unwrap();
        let z = cat.zero(ObjId(0), ObjId(1));
        let ext = cone_extend(&cat, &z, "C").unwrap();
        assert_eq!(ext.core().d_text("i0").unwrap(), "0");
        assert_eq!(ext.rel.rules.rules().len(), 5);
    }

    #[test]
    fn identity_on_cone_is_closed() {
        let ext = generator_change_d12(3, Ring::Integers).unwrap().ext;
        let one = ext.rel.poly("i0∘p0 + i1∘p1").unwrap();
        assert_eq!(ext.rel.render(&one), "1_{L2}");
        let c = ext.core();
        let raw = c.poly("i0∘p0 + i1∘p1").unwrap();
        assert!(ext.rel.d(&raw).unwrap().is_zero());
    }

    #[test]
    fn images_of_yx_and_xy() {
        for n in 2..6 {
            let gc = generator_change_d12(n, Ring::Integers).unwrap();
            let c = gc.ext.core();
            assert_eq!(c.render(&gc.yx_image), "alpha1");
            assert_eq!(gc.xy_image, gc.alpha2);
            assert!(gc.ext.rel.d(&gc.alpha2).unwrap().is_zero());
        }
    }

    #[test]
    fn e12_functors() {
        for n in 2..6 {
            e12_full_to_cone(n, Ring::Integers).unwrap();
            e12_simplified_to_full(n, Ring::Integers).unwrap();
        }
    }

    #[test]
    fn not_closed_rejected() {
        let d01 = d01_lemma(3, Ring::Integers).unwrap();
        assert!(matches!(cone_extend(&d01, &d01.g("h").unwrap(), "L2"), Err(DgError::NotClosed(_))));
        let d = d01_lemma(3, Ring::Integers).unwrap();
        assert!(matches!(
            cone_extend(&d, &d.g("alpha1").unwrap(), "L2"),
            Err(DgError::DegreeError { .. })
        ));
    }
}
