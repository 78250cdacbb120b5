use std::sync::Arc;

use super::{d12_raw, sphere, BuildOptions};
use crate::algebra::{NcPoly, Ring};
use crate::constructions::{localize, localize_morphisms};
use crate::dgcat::SemifreeDgCat;
use crate::error::{DgError, Result};

/// A two-sided homotopy inverse: `d(right) = f∘g − 1`, `d(left) = g∘f − 1`.
#[derive(Debug, Clone)]
pub struct InverseWitness {
    pub cat: Arc<SemifreeDgCat>,
    pub morphism: NcPoly,
    pub inverse: NcPoly,
    pub right_homotopy: NcPoly,
    pub left_homotopy: NcPoly,
}

impl InverseWitness {
    pub fn verify(&self) -> Result<()> {
        let c = self.cat.as_ref();
        let fail = |what: &str, p: &NcPoly| Err(DgError::Witness(format!("{what}: residual {}", c.render(p))));
        let df = c.d(&self.morphism)?;
        if !df.is_zero() {
            return fail("morphism not closed", &df);
        }
        let dg = c.d(&self.inverse)?;
        if !dg.is_zero() {
            return fail("inverse not closed", &dg);
        }
        let (s, t) = (self.morphism.src(), self.morphism.tgt());
        let right = self.morphism.compose(&self.inverse)?.sub(&c.identity(t))?;
        let r = c.d(&self.right_homotopy)?.sub(&right)?;
        if !r.is_zero() {
            return fail("right homotopy", &r);
        }
        let left = self.inverse.compose(&self.morphism)?.sub(&c.identity(s))?;
        let l = c.d(&self.left_homotopy)?.sub(&left)?;
        if !l.is_zero() {
            return fail("left homotopy", &l);
        }
        Ok(())
    }
}

/// In `S(2,m)` with only `a₁,…,a_{m−1}` inverted, `a_m` is already invertible with inverse
/// `a_{m−1}⋯a₁`.
pub fn sphere_last_inverse_witness(m: usize, ring: Ring) -> Result<InverseWitness> {
    if m == 0 {
        return Err(DgError::Invalid("needs at least one puncture".into()));
    }
    let raw = sphere(2, m, 0, &BuildOptions::raw(ring))?;
    let names: Vec<String> = (1..m).map(|i| format!("a_{i}")).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let cat = Arc::new(localize(&raw, &refs)?);
    let c = cat.as_ref();
    let l = c.obj("L")?;
    let one = c.identity(l);
    let mut p = one.clone();
    let mut q = one.clone();
    let mut k = c.zero(l, l);
    for name in &names {
        let a = c.g(name)?;
        let inv = c.g(&format!("inv({name})"))?;
        let check = c.g(&format!("check({name})"))?;
        k = check.add(&NcPoly::compose_all(&[a.clone(), k, inv.clone()])?)?;
        p = a.compose(&p)?;
        q = q.compose(&inv)?;
    }
    let am = c.g(&format!("a_{m}"))?;
    let h = c.g("h")?;
    let left = NcPoly::compose_all(&[p.clone(), h.clone(), q])?
        .add(&NcPoly::compose_all(&[p.clone(), am.clone(), k.clone()])?)?
        .sub(&k)?;
    let w = InverseWitness {
        cat: cat.clone(),
        morphism: am,
        inverse: p,
        right_homotopy: h,
        left_homotopy: left,
    };
    w.verify()?;
    Ok(w)
}

/// In `D12(2)[(1+yx)⁻¹]`, `1 + xy` has inverse `1 − x∘inv(1+yx)∘y`.
pub fn one_plus_xy_witness(ring: Ring) -> Result<InverseWitness> {
    let raw = d12_raw(2, ring)?;
    let u = raw.poly_between("1_{L1} + y∘x", "L1", "L1")?;
    let cat = Arc::new(localize_morphisms(&raw, &[("1+yx", u)])?);
    let c = cat.as_ref();
    let w = InverseWitness {
        morphism: c.poly_between("1_{L2} + x∘y", "L2", "L2")?,
        inverse: c.poly_between("1_{L2} - x∘inv(1+yx)∘y", "L2", "L2")?,
        right_homotopy: c.poly("x∘check(1+yx)∘y")?,
        left_homotopy: c.poly("x∘hat(1+yx)∘y")?,
        cat: cat.clone(),
    };
    w.verify()?;
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn last_puncture_is_redundant() {
        for m in 1..6 {
            let w = sphere_last_inverse_witness(m, Ring::Integers).unwrap();
            assert_eq!(w.cat.localizations().len(), m - 1);
        }
        let w = sphere_last_inverse_witness(1, Ring::Integers).unwrap();
        assert_eq!(w.cat.render(&w.inverse), "1_{L}");
    }

    #[test]
    fn xy_inverse() {
        let w = one_plus_xy_witness(Ring::Integers).unwrap();
        w.verify().unwrap();
        let mut bad = w.clone();
        bad.left_homotopy = bad.left_homotopy.neg();
        assert!(matches!(bad.verify(), Err(DgError::Witness(_))));
    }
}
