use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{leibniz_d, parse_poly, word_boundary, GenId, GenTable, NcPoly, ObjId, Ring};
use crate::error::{DgError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub src: ObjId,
    pub tgt: ObjId,
    pub deg: i64,
    pub d: NcPoly,
}

/// One step in the construction history of a presentation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProvenanceEntry {
    pub op: String,
    pub detail: String,
}

/// Names of the four generators added when a closed degree-0 morphism is inverted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalizationRecord {
    /// The inverted morphism, rendered.
    pub morphism: String,
    pub inverse: String,
    pub hat: String,
    pub check: String,
    pub bar: String,
}

/// A finitely generated semifree dg category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemifreeDgCat {
    ring: Ring,
    objects: Vec<String>,
    gens: Vec<Generator>,
    localizations: Vec<LocalizationRecord>,
    provenance: Vec<ProvenanceEntry>,
    obj_index: HashMap<String, ObjId>,
    gen_index: HashMap<String, GenId>,
}

impl GenTable for SemifreeDgCat {
    fn ring(&self) -> Ring {
        self.ring
    }
    fn object_count(&self) -> usize {
        self.objects.len()
    }
    fn object_name(&self, o: ObjId) -> &str {
        &self.objects[o.index()]
    }
    fn generator_count(&self) -> usize {
        self.gens.len()
    }
    fn gen_name(&self, g: GenId) -> &str {
        &self.gens[g.index()].name
    }
    fn gen_src(&self, g: GenId) -> ObjId {
        self.gens[g.index()].src
    }
    fn gen_tgt(&self, g: GenId) -> ObjId {
        self.gens[g.index()].tgt
    }
    fn gen_deg(&self, g: GenId) -> i64 {
        self.gens[g.index()].deg
    }
    fn gen_d(&self, g: GenId) -> Option<&NcPoly> {
        self.gens.get(g.index()).map(|x| &x.d)
    }
    fn find_object(&self, name: &str) -> Option<ObjId> {
        self.obj_index.get(name).copied()
    }
    fn find_generator(&self, name: &str) -> Option<GenId> {
        self.gen_index.get(name).copied()
    }
}

impl SemifreeDgCat {
    /// Validated construction from objects and generators listed in ordinal order.
    pub fn new_semifree(ring: Ring, objects: &[&str], generators: Vec<Generator>) -> Result<Self> {
        let mut b = CatBuilder::new(ring);
        for o in objects {
            b.object(o)?;
        }
        for g in generators {
            b.generator(&g.name, g.src, g.tgt, g.deg, g.d)?;
        }
        b.build()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn generator(&self, g: GenId) -> &Generator {
        &self.gens[g.index()]
    }

    pub fn localizations(&self) -> &[LocalizationRecord] {
        &self.localizations
    }

    pub fn provenance(&self) -> &[ProvenanceEntry] {
        &self.provenance
    }

    pub fn obj(&self, name: &str) -> Result<ObjId> {
        self.find_object(name)
            .ok_or_else(|| DgError::UnknownName(name.to_string()))
    }

    pub fn gen(&self, name: &str) -> Result<GenId> {
        self.find_generator(name)
            .ok_or_else(|| DgError::UnknownName(name.to_string()))
    }

    /// The single-generator polynomial for `name`.
    pub fn g(&self, name: &str) -> Result<NcPoly> {
        Ok(NcPoly::generator(self, self.gen(name)?))
    }

    /// Parses a morphism expression against this category.
    pub fn poly(&self, text: &str) -> Result<NcPoly> {
        parse_poly(self, text, None)
    }

    pub fn poly_between(&self, text: &str, src: &str, tgt: &str) -> Result<NcPoly> {
        parse_poly(self, text, Some((self.obj(src)?, self.obj(tgt)?)))
    }

    pub fn d(&self, p: &NcPoly) -> Result<NcPoly> {
        leibniz_d(p, self)
    }

    /// Differential of a named generator, rendered.
    pub fn d_text(&self, name: &str) -> Result<String> {
        Ok(self.generator(self.gen(name)?).d.render(self))
    }

    pub fn render(&self, p: &NcPoly) -> String {
        p.render(self)
    }

    pub fn identity(&self, x: ObjId) -> NcPoly {
        NcPoly::identity(self.ring, x)
    }

    pub fn zero(&self, src: ObjId, tgt: ObjId) -> NcPoly {
        NcPoly::zero(self.ring, src, tgt)
    }

    pub fn is_closed(&self, g: GenId) -> bool {
        self.gens[g.index()].d.is_zero()
    }

    pub fn with_provenance(mut self, op: &str, detail: impl Into<String>) -> Self {
        self.provenance.push(ProvenanceEntry {
            op: op.to_string(),
            detail: detail.into(),
        });
        self
    }

    /// Re-runs every structural check: boundaries, degrees, ordinal condition and d² = 0.
    pub fn validate(&self) -> Result<()> {
        for (i, g) in self.gens.iter().enumerate() {
            check_generator(self, GenId(i as u32), g)?;
        }
        Ok(())
    }

    /// Re-runs only the d² = 0 audit.
    pub fn audit_d_squared(&self) -> Result<()> {
        for (i, g) in self.gens.iter().enumerate() {
            check_d_squared(self, GenId(i as u32), &g.name, &g.d)?;
        }
        Ok(())
    }

    /// The same presentation with coefficients moved into `ring`.
    pub fn with_ring(&self, ring: Ring) -> Result<Self> {
        let mut b = CatBuilder::new(ring);
        for o in &self.objects {
            b.object(o)?;
        }
        for g in &self.gens {
            b.generator(&g.name, g.src, g.tgt, g.deg, g.d.with_ring(ring)?)?;
        }
        b.localizations = self.localizations.clone();
        b.provenance = self.provenance.clone();
        b.build()
    }
}

fn check_generator<T: GenTable + ?Sized>(table: &T, id: GenId, g: &Generator) -> Result<()> {
    check_shape(table, id, g)?;
    check_d_squared(table, id, &g.name, &g.d)
}

/// Boundaries, ring, ordinal condition and degrees.
fn check_shape<T: GenTable + ?Sized>(table: &T, id: GenId, g: &Generator) -> Result<()> {
    let n = table.object_count();
    if g.src.index() >= n || g.tgt.index() >= n {
        return Err(DgError::Boundary {
            generator: g.name.clone(),
            detail: "undeclared object".into(),
        });
    }
    if g.d.src() != g.src || g.d.tgt() != g.tgt {
        return Err(DgError::Boundary {
            generator: g.name.clone(),
            detail: format!(
                "differential runs {}→{}, generator runs {}→{}",
                table.object_name(g.d.src()),
                table.object_name(g.d.tgt()),
                table.object_name(g.src),
                table.object_name(g.tgt)
            ),
        });
    }
    if g.d.ring() != table.ring() {
        return Err(DgError::RingMismatch(g.d.ring().to_string(), table.ring().to_string()));
    }
    for (w, _) in g.d.terms() {
        if let Some(bad) = w.letters().iter().find(|x| x.0 >= id.0) {
            return Err(DgError::OrdinalViolation {
                generator: g.name.clone(),
                uses: table.gen_name(*bad).to_string(),
            });
        }
        match word_boundary(table, w)? {
            Some((s, t)) if s != g.src || t != g.tgt => {
                return Err(DgError::Boundary {
                    generator: g.name.clone(),
                    detail: format!("word {} has wrong boundary", w.render(table, g.src)),
                })
            }
            None if g.src != g.tgt => {
                return Err(DgError::Boundary {
                    generator: g.name.clone(),
                    detail: "identity term between distinct objects".into(),
                })
            }
            _ => {}
        }
        let wd = w.degree(table);
        if wd != g.deg + 1 {
            return Err(DgError::DegreeError {
                generator: g.name.clone(),
                expected: g.deg + 1,
                found: format!("{} in word {}", wd, w.render(table, g.src)),
            });
        }
    }
    Ok(())
}

fn check_d_squared<T: GenTable + ?Sized>(table: &T, _id: GenId, name: &str, d: &NcPoly) -> Result<()> {
    let dd = leibniz_d(d, table)?;
    if !dd.is_zero() {
        return Err(DgError::DSquaredNonzero {
            generator: name.to_string(),
            residual: dd.render(table),
        });
    }
    Ok(())
}

/// Incremental, validating constructor for presentations.
#[derive(Debug, Clone)]
pub struct CatBuilder {
    ring: Ring,
    objects: Vec<String>,
    gens: Vec<Generator>,
    pub(crate) localizations: Vec<LocalizationRecord>,
    pub(crate) provenance: Vec<ProvenanceEntry>,
    obj_index: HashMap<String, ObjId>,
    gen_index: HashMap<String, GenId>,
}

impl GenTable for CatBuilder {
    fn ring(&self) -> Ring {
        self.ring
    }
    fn object_count(&self) -> usize {
        self.objects.len()
    }
    fn object_name(&self, o: ObjId) -> &str {
        &self.objects[o.index()]
    }
    fn generator_count(&self) -> usize {
        self.gens.len()
    }
    fn gen_name(&self, g: GenId) -> &str {
        &self.gens[g.index()].name
    }
    fn gen_src(&self, g: GenId) -> ObjId {
        self.gens[g.index()].src
    }
    fn gen_tgt(&self, g: GenId) -> ObjId {
        self.gens[g.index()].tgt
    }
    fn gen_deg(&self, g: GenId) -> i64 {
        self.gens[g.index()].deg
    }
    fn gen_d(&self, g: GenId) -> Option<&NcPoly> {
        self.gens.get(g.index()).map(|x| &x.d)
    }
    fn find_object(&self, name: &str) -> Option<ObjId> {
        self.obj_index.get(name).copied()
    }
    fn find_generator(&self, name: &str) -> Option<GenId> {
        self.gen_index.get(name).copied()
    }
}

fn check_name(name: &str) -> Result<()> {
    let bad = name.is_empty()
        || name.chars().any(|c| c.is_whitespace() || c == '∘')
        || name.starts_with('-')
        || (name.starts_with("1_{") && name.ends_with('}'))
        || name.chars().all(|c| c.is_ascii_digit() || c == '/');
    if bad {
        return Err(DgError::Invalid(format!("illegal name {name:?}")));
    }
    Ok(())
}

impl CatBuilder {
    pub fn new(ring: Ring) -> Self {
        CatBuilder {
            ring,
            objects: Vec::new(),
            gens: Vec::new(),
            localizations: Vec::new(),
            provenance: Vec::new(),
            obj_index: HashMap::new(),
            gen_index: HashMap::new(),
        }
    }

    /// Starts from an existing presentation; new generators are appended after it.
    pub fn extending(cat: &SemifreeDgCat) -> Self {
        CatBuilder {
            ring: cat.ring,
            objects: cat.objects.clone(),
            gens: cat.gens.clone(),
            localizations: cat.localizations.clone(),
            provenance: cat.provenance.clone(),
            obj_index: cat.obj_index.clone(),
            gen_index: cat.gen_index.clone(),
        }
    }

    pub fn object(&mut self, name: &str) -> Result<ObjId> {
        check_name(name)?;
        if self.obj_index.contains_key(name) {
            return Err(DgError::DuplicateName(name.to_string()));
        }
        let id = ObjId(self.objects.len() as u32);
        self.objects.push(name.to_string());
        self.obj_index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn obj(&self, name: &str) -> Result<ObjId> {
        self.find_object(name)
            .ok_or_else(|| DgError::UnknownName(name.to_string()))
    }

    pub fn gen(&self, name: &str) -> Result<GenId> {
        self.find_generator(name)
            .ok_or_else(|| DgError::UnknownName(name.to_string()))
    }

    pub fn g(&self, name: &str) -> Result<NcPoly> {
        Ok(NcPoly::generator(self, self.gen(name)?))
    }

    pub fn poly(&self, text: &str) -> Result<NcPoly> {
        parse_poly(self, text, None)
    }

    pub fn poly_between(&self, text: &str, src: ObjId, tgt: ObjId) -> Result<NcPoly> {
        parse_poly(self, text, Some((src, tgt)))
    }

    pub fn has_generator(&self, name: &str) -> bool {
        self.gen_index.contains_key(name)
    }

    /// Appends a generator; its differential may only use generators already present.
    pub fn generator(&mut self, name: &str, src: ObjId, tgt: ObjId, deg: i64, d: NcPoly) -> Result<GenId> {
        check_name(name)?;
        if self.gen_index.contains_key(name) {
            return Err(DgError::DuplicateName(name.to_string()));
        }
        let id = GenId(self.gens.len() as u32);
        let g = Generator {
            name: name.to_string(),
            src,
            tgt,
            deg,
            d,
        };
        check_generator(self, id, &g)?;
        self.gens.push(g);
        self.gen_index.insert(name.to_string(), id);
        Ok(id)
    }

    /// [`CatBuilder::generator`] without the `d² = 0` check, for cores whose `d²` vanishes only
    /// modulo relations that are audited afterwards.
    pub(crate) fn generator_modulo_relations(
        &mut self,
        name: &str,
        src: ObjId,
        tgt: ObjId,
        deg: i64,
        d: NcPoly,
    ) -> Result<GenId> {
        check_name(name)?;
        if self.gen_index.contains_key(name) {
            return Err(DgError::DuplicateName(name.to_string()));
        }
        let id = GenId(self.gens.len() as u32);
        let g = Generator {
            name: name.to_string(),
            src,
            tgt,
            deg,
            d,
        };
        check_shape(self, id, &g)?;
        self.gens.push(g);
        self.gen_index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn closed(&mut self, name: &str, src: ObjId, tgt: ObjId, deg: i64) -> Result<GenId> {
        let z = NcPoly::zero(self.ring, src, tgt);
        self.generator(name, src, tgt, deg, z)
    }

    /// Appends a generator whose differential is given as text.
    pub fn generator_text(&mut self, name: &str, src: &str, tgt: &str, deg: i64, d: &str) -> Result<GenId> {
        let (s, t) = (self.obj(src)?, self.obj(tgt)?);
        let d = if d.trim() == "0" {
            NcPoly::zero(self.ring, s, t)
        } else {
            self.poly_between(d, s, t)?
        };
        self.generator(name, s, t, deg, d)
    }

    pub fn record_localization(&mut self, rec: LocalizationRecord) {
        self.localizations.push(rec);
    }

    pub fn provenance(&mut self, op: &str, detail: impl Into<String>) {
        self.provenance.push(ProvenanceEntry {
            op: op.to_string(),
            detail: detail.into(),
        });
    }

    pub fn build(self) -> Result<SemifreeDgCat> {
        let cat = SemifreeDgCat {
            ring: self.ring,
            objects: self.objects,
            gens: self.gens,
            localizations: self.localizations,
            provenance: self.provenance,
            obj_index: self.obj_index,
            gen_index: self.gen_index,
        };
        Ok(cat)
    }
}
