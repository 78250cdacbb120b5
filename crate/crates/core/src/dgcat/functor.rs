use std::sync::Arc;

use super::category::SemifreeDgCat;
use super::rewrite::RewriteSystem;
use crate::algebra::{leibniz_d, GenId, GenTable, NcPoly, ObjId};
use crate::error::{DgError, Result};

/// A dg functor between presentations, determined by objects and generator images.
#[derive(Debug, Clone)]
pub struct DgFunctor {
    pub source: Arc<SemifreeDgCat>,
    pub target: Arc<SemifreeDgCat>,
    /// Relations holding in the target; images are compared modulo these.
    pub relations: Option<Arc<RewriteSystem>>,
    pub obj_map: Vec<ObjId>,
    pub images: Vec<NcPoly>,
    /// Optional per-object shift annotations of the source.
    pub shifts: Option<Vec<i64>>,
}

/// Proof that boundary, degree and d-commutation checks all passed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctorCertificate {
    pub generators_checked: usize,
    pub modulo_relations: bool,
}

impl DgFunctor {
    pub fn new(
        source: Arc<SemifreeDgCat>,
        target: Arc<SemifreeDgCat>,
        obj_map: Vec<ObjId>,
        images: Vec<NcPoly>,
    ) -> Self {
        DgFunctor {
            source,
            target,
            relations: None,
            obj_map,
            images,
            shifts: None,
        }
    }

    pub fn with_relations(mut self, rel: Arc<RewriteSystem>) -> Self {
        self.relations = Some(rel);
        self
    }

    /// Builds a functor from named object pairs and generator images written as text.
    /// Generators not listed are sent to zero.
    pub fn from_text(
        source: Arc<SemifreeDgCat>,
        target: Arc<SemifreeDgCat>,
        objects: &[(&str, &str)],
        images: &[(&str, &str)],
    ) -> Result<Self> {
        let mut obj_map = vec![None; source.object_count()];
        for (a, b) in objects {
            obj_map[source.obj(a)?.index()] = Some(target.obj(b)?);
        }
        let obj_map: Vec<ObjId> = obj_map
            .into_iter()
            .enumerate()
            .map(|(i, o)| {
                o.ok_or_else(|| DgError::Invalid(format!(
                    "object {} has no image",
                    source.object_name(ObjId(i as u32))
                )))
            })
            .collect::<Result<_>>()?;
        let mut imgs: Vec<NcPoly> = source
            .generators()
            .iter()
            .map(|g| target.zero(obj_map[g.src.index()], obj_map[g.tgt.index()]))
            .collect();
        for (g, text) in images {
            let id = source.gen(g)?;
            let gen = source.generator(id);
            let (s, t) = (obj_map[gen.src.index()], obj_map[gen.tgt.index()]);
            imgs[id.index()] = if text.trim() == "0" {
                target.zero(s, t)
            } else {
                crate::algebra::parse_poly(target.as_ref(), text, Some((s, t)))?
            };
        }
        Ok(DgFunctor::new(source, target, obj_map, imgs))
    }

    pub fn identity(cat: Arc<SemifreeDgCat>) -> Self {
        let obj_map = (0..cat.object_count() as u32).map(ObjId).collect();
        let images = (0..cat.generator_count() as u32)
            .map(|i| NcPoly::generator(cat.as_ref(), GenId(i)))
            .collect();
        DgFunctor::new(cat.clone(), cat, obj_map, images)
    }

    pub fn image_of(&self, name: &str) -> Result<&NcPoly> {
        Ok(&self.images[self.source.gen(name)?.index()])
    }

    pub fn image_text(&self, name: &str) -> Result<String> {
        Ok(self.image_of(name)?.render(self.target.as_ref()))
    }

    fn reduce(&self, p: NcPoly) -> NcPoly {
        match &self.relations {
            Some(r) => r.normal_form(&p),
            None => p,
        }
    }

    /// Applies the functor to a morphism of the source.
    pub fn apply(&self, p: &NcPoly) -> Result<NcPoly> {
        let src = self.obj_map[p.src().index()];
        let tgt = self.obj_map[p.tgt().index()];
        let out = p.substitute(self.target.ring(), src, tgt, |g| Ok(self.images[g.index()].clone()))?;
        Ok(self.reduce(out))
    }

    /// Checks boundary, degree and d-commutation for every generator.
    pub fn validate(&self) -> Result<FunctorCertificate> {
        let src = self.source.as_ref();
        let tgt = self.target.as_ref();
        if self.obj_map.len() != src.object_count() || self.images.len() != src.generator_count() {
            return Err(DgError::Invalid("functor tables have the wrong size".into()));
        }
        if let Some(o) = self.obj_map.iter().find(|o| o.index() >= tgt.object_count()) {
            return Err(DgError::Invalid(format!("object image {o:?} out of range")));
        }
        for (i, g) in src.generators().iter().enumerate() {
            let img = &self.images[i];
            let (s, t) = (self.obj_map[g.src.index()], self.obj_map[g.tgt.index()]);
            if img.src() != s || img.tgt() != t {
                return Err(DgError::Boundary {
                    generator: g.name.clone(),
                    detail: format!(
                        "image runs {}→{}, expected {}→{}",
                        tgt.object_name(img.src()),
                        tgt.object_name(img.tgt()),
                        tgt.object_name(s),
                        tgt.object_name(t)
                    ),
                });
            }
            for d in img.degrees(tgt) {
                if d != g.deg {
                    return Err(DgError::DegreeError {
                        generator: g.name.clone(),
                        expected: g.deg,
                        found: format!("{d} in image {}", img.render(tgt)),
                    });
                }
            }
            let lhs = self.apply(&g.d)?;
            let rhs = self.reduce(leibniz_d(img, tgt)?);
            if lhs != rhs {
                let residual = lhs.sub(&rhs)?;
                return Err(DgError::NotChainMap {
                    generator: g.name.clone(),
                    residual: residual.render(tgt),
                });
            }
        }
        Ok(FunctorCertificate {
            generators_checked: src.generator_count(),
            modulo_relations: self.relations.is_some(),
        })
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &DgFunctor) -> Result<DgFunctor> {
        if inner.target.as_ref() != self.source.as_ref() {
            return Err(DgError::Invalid("functors are not composable".into()));
        }
        let obj_map = inner.obj_map.iter().map(|o| self.obj_map[o.index()]).collect();
        let images = inner
            .images
            .iter()
            .map(|p| self.apply(p))
            .collect::<Result<Vec<_>>>()?;
        Ok(DgFunctor {
            source: inner.source.clone(),
            target: self.target.clone(),
            relations: self.relations.clone(),
            obj_map,
            images,
            shifts: inner.shifts.clone(),
        })
    }

    /// Restriction to the full subcategory on the listed source objects.
    pub fn restrict(&self, objects: &[ObjId]) -> Result<DgFunctor> {
        let sub = Arc::new(super::full_subcategory(&self.source, objects)?);
        let obj_map = sub
            .objects()
            .iter()
            .map(|n| Ok(self.obj_map[self.source.obj(n)?.index()]))
            .collect::<Result<Vec<_>>>()?;
        let images = sub
            .generators()
            .iter()
            .map(|g| Ok(self.images[self.source.gen(&g.name)?.index()].clone()))
            .collect::<Result<Vec<_>>>()?;
        Ok(DgFunctor {
            source: sub,
            target: self.target.clone(),
            relations: self.relations.clone(),
            obj_map,
            images,
            shifts: None,
        })
    }

    /// Rendered generator images, in source order.
    pub fn render_images(&self) -> Vec<(String, String)> {
        self.source
            .generators()
            .iter()
            .zip(&self.images)
            .map(|(g, p)| (g.name.clone(), p.render(self.target.as_ref())))
            .collect()
    }
}
