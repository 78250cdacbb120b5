use crate::algebra::{leibniz_d, GenTable, NcPoly};
use crate::dgcat::{CatBuilder, LocalizationRecord, SemifreeDgCat};
use crate::error::{DgError, Result};

/// Names of the four generators inverting `label`.
pub fn localization_names(label: &str) -> [String; 4] {
    [
        format!("inv({label})"),
        format!("hat({label})"),
        format!("check({label})"),
        format!("bar({label})"),
    ]
}

/// Appends the inverse quadruple for a closed degree-0 morphism `g: A → B`.
pub(crate) fn add_quadruple(b: &mut CatBuilder, label: &str, g: &NcPoly) -> Result<LocalizationRecord> {
    let (a, t) = (g.src(), g.tgt());
    if !leibniz_d(g, b)?.is_zero() {
        return Err(DgError::NotClosed(g.render(b)));
    }
    if g.is_zero() || g.homogeneous_degree(b)? != Some(0) {
        return Err(DgError::DegreeError {
            generator: label.to_string(),
            expected: 0,
            found: format!("{:?}", g.degrees(b)),
        });
    }
    let ring = b.ring();
    let [inv, hat, check, bar] = localization_names(label);
    let gi = b.closed(&inv, t, a, 0)?;
    let gi = NcPoly::generator(b, gi);
    let dhat = NcPoly::identity(ring, a).sub(&gi.compose(g)?)?;
    let gh = b.generator(&hat, a, a, -1, dhat)?;
    let gh = NcPoly::generator(b, gh);
    let dcheck = NcPoly::identity(ring, t).sub(&g.compose(&gi)?)?;
    let gc = b.generator(&check, t, t, -1, dcheck)?;
    let gc = NcPoly::generator(b, gc);
    let dbar = g.compose(&gh)?.sub(&gc.compose(g)?)?;
    b.generator(&bar, a, t, -2, dbar)?;
    let rec = LocalizationRecord {
        morphism: g.render(b),
        inverse: inv,
        hat,
        check,
        bar,
    };
    b.record_localization(rec.clone());
    Ok(rec)
}

/// Inverts closed degree-0 generators by appending `inv`, `hat`, `check`, `bar` for each.
pub fn localize(cat: &SemifreeDgCat, generators: &[&str]) -> Result<SemifreeDgCat> {
    let mut b = CatBuilder::extending(cat);
    for name in generators {
        let id = cat.gen(name)?;
        let gen = cat.generator(id);
        if !gen.d.is_zero() {
            return Err(DgError::NotClosed(name.to_string()));
        }
        if gen.deg != 0 {
            return Err(DgError::DegreeError {
                generator: name.to_string(),
                expected: 0,
                found: gen.deg.to_string(),
            });
        }
        let g = NcPoly::generator(&b, id);
        add_quadruple(&mut b, name, &g)?;
    }
    b.provenance("localize", generators.join(", "));
    b.build()
}

/// Inverts closed degree-0 expressions such as `1 + y∘x`, each under a label used for the new names.
pub fn localize_morphisms(cat: &SemifreeDgCat, morphisms: &[(&str, NcPoly)]) -> Result<SemifreeDgCat> {
    let mut b = CatBuilder::extending(cat);
    let mut detail = Vec::new();
    for (label, p) in morphisms {
        let rec = add_quadruple(&mut b, label, p)?;
        detail.push(format!("{label} = {}", rec.morphism));
    }
    b.provenance("localize", detail.join("; "));
    b.build()
}
