use std::sync::Arc;

use super::{a1, a2, c, d12};
use crate::algebra::{GenTable, Ring};
use crate::dgcat::{DgFunctor, SemifreeDgCat};
use crate::error::{DgError, Result};
use crate::twisted::{cone_extend, shift_presentation, ShiftedPresentation};

/// A boundary component of a punctured sphere.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Puncture {
    Plus(usize),
    Minus(usize),
}

/// Which copy of `D^{n−1}` in the plumbing sector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum D12Side {
    /// `L ↦ L1`, `z ↦ yx`.
    Phi,
    /// `L ↦ L2`, `z ↦ xy`.
    Psi,
}

fn source_c(n: i64, ring: Ring) -> Result<Arc<SemifreeDgCat>> {
    Ok(Arc::new(c(n, ring, true)?))
}

/// `z ↦ label` and, when `z` is inverted in the source, the quadruple of `z` onto that of `label`.
fn onto_generator(src: Arc<SemifreeDgCat>, tgt: &Arc<SemifreeDgCat>, object: &str, label: &str) -> Result<DgFunctor> {
    tgt.gen(label)
        .map_err(|_| DgError::Invalid(format!("no generator {label} in the target")))?;
    let mut images = vec![("z".to_string(), label.to_string())];
    if let Some(rec) = src.localizations().first() {
        let t = tgt
            .localizations()
            .iter()
            .find(|r| r.morphism == label)
            .ok_or_else(|| DgError::NotUnit(format!("{label} is not inverted in the target")))?;
        images.push((rec.inverse.clone(), t.inverse.clone()));
        images.push((rec.hat.clone(), t.hat.clone()));
        images.push((rec.check.clone(), t.check.clone()));
        images.push((rec.bar.clone(), t.bar.clone()));
    }
    let pairs: Vec<(&str, &str)> = images.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let f = DgFunctor::from_text(src, tgt.clone(), &[("L", object)], &pairs)?;
    f.validate()?;
    Ok(f)
}

/// `Fⁿᵢ` (`z ↦ aᵢ`) or `Gⁿᵢ` (`z ↦ bᵢ`) from `C(n−1)` into a built sphere model.
pub fn sphere_inclusion(target: &Arc<SemifreeDgCat>, n: i64, puncture: Puncture) -> Result<DgFunctor> {
    let label = match puncture {
        Puncture::Plus(i) if i >= 1 => format!("a_{i}"),
        Puncture::Minus(i) if i >= 1 => format!("b_{i}"),
        p => return Err(DgError::Invalid(format!("puncture index out of range: {p:?}"))),
    };
    if target.find_generator(&label).is_none() {
        return Err(DgError::Invalid(format!("puncture index out of range: {label}")));
    }
    onto_generator(source_c(n - 1, target.ring())?, target, "L", &label)
}

/// `Fᵢ: C(1)[z⁻¹] → M(g,m)`, `z ↦ aᵢ`.
pub fn surface_inclusion(target: &Arc<SemifreeDgCat>, i: usize) -> Result<DgFunctor> {
    let label = format!("a_{i}");
    if i == 0 || target.find_generator(&label).is_none() {
        return Err(DgError::Invalid(format!("puncture index out of range: {i}")));
    }
    onto_generator(source_c(1, target.ring())?, target, "L", &label)
}

/// `Φ` or `Ψ` from `C(n−1)` into `D12(n)` (localized at `1 + xy` when `n = 2`).
pub fn d12_inclusion(n: i64, side: D12Side, ring: Ring) -> Result<DgFunctor> {
    let src = source_c(n - 1, ring)?;
    let tgt = Arc::new(d12(n, ring, true)?);
    let f = if n == 2 {
        match side {
            D12Side::Phi => DgFunctor::from_text(
                src,
                tgt,
                &[("L", "L1")],
                &[
                    ("z", "1_{L1} + y∘x"),
                    ("inv(z)", "1_{L1} - y∘inv(1+xy)∘x"),
                    ("hat(z)", "-y∘hat(1+xy)∘x"),
                    ("check(z)", "-y∘check(1+xy)∘x"),
                    ("bar(z)", "-y∘bar(1+xy)∘x"),
                ],
            )?,
            D12Side::Psi => DgFunctor::from_text(
                src,
                tgt,
                &[("L", "L2")],
                &[
                    ("z", "1_{L2} + x∘y"),
                    ("inv(z)", "inv(1+xy)"),
                    ("hat(z)", "hat(1+xy)"),
                    ("check(z)", "check(1+xy)"),
                    ("bar(z)", "bar(1+xy)"),
                ],
            )?,
        }
    } else {
        match side {
            D12Side::Phi => DgFunctor::from_text(src, tgt, &[("L", "L1")], &[("z", "y∘x")])?,
            D12Side::Psi => DgFunctor::from_text(src, tgt, &[("L", "L2")], &[("z", "x∘y")])?,
        }
    };
    f.validate()?;
    Ok(f)
}

/// `Φ̃` or `Ψ̃`: the functor followed by the shift `L1 ↦ L1[m₁]`, `L2 ↦ L2[m₂]`.
pub fn d12_inclusion_shifted(
    n: i64,
    side: D12Side,
    m1: i64,
    m2: i64,
    ring: Ring,
) -> Result<(ShiftedPresentation, DgFunctor)> {
    let f = d12_inclusion(n, side, ring)?;
    let sp = shift_presentation(&f.target, &[("L1", m1), ("L2", m2)])?;
    let g = sp.shift_functor(&f)?;
    Ok((sp, g))
}

/// `jᵢ: A1 → A2` with `K ↦ Kᵢ`; `j₂` lands on `K2 = Cone(f)`.
pub fn a2_inclusion(j: usize, ring: Ring) -> Result<DgFunctor> {
    let src = Arc::new(a1(ring, "K")?);
    let base = a2(ring)?;
    let f = match j {
        0 | 1 => DgFunctor::from_text(src, Arc::new(base), &[("K", &format!("K{j}"))], &[])?,
        2 => {
            let ext = cone_extend(&base, &base.g("f")?, "K2")?;
            let tgt = Arc::new(ext.core().clone());
            DgFunctor::from_text(src, tgt, &[("K", "K2")], &[])?.with_relations(ext.rules())
        }
        _ => return Err(DgError::Invalid(format!("edge index {j} out of range 0..=2"))),
    };
    f.validate()?;
    Ok(f)
}
