use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{build_wrapped, h_name, object_name, x_name, y_name, Arrow, Manifold, PlumbingData, Vertex};
use crate::algebra::{Coefficient, NcPoly, Ring};
use crate::analysis::{presentation_equal, EqualityReport, Renaming};
use crate::dgcat::{CatBuilder, DgFunctor, FunctorCertificate, SemifreeDgCat};
use crate::error::{DgError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedArrow {
    pub id: String,
    pub src: String,
    pub tgt: String,
    #[serde(default)]
    pub q: i64,
}

/// A quiver whose arrows carry integers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedQuiver {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub arrows: Vec<GradedArrow>,
}

impl GradedQuiver {
    pub fn from_json(text: &str) -> Result<Self> {
        let q: GradedQuiver = serde_json::from_str(text).map_err(|e| DgError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        q.endpoints()?;
        Ok(q)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graded quiver serializes")
    }

    fn endpoints(&self) -> Result<Vec<(usize, usize)>> {
        let find = |v: &str| {
            self.vertices
                .iter()
                .position(|x| x == v)
                .ok_or_else(|| DgError::UnknownName(v.to_string()))
        };
        self.arrows.iter().map(|a| Ok((find(&a.src)?, find(&a.tgt)?))).collect()
    }
}

pub fn dual_name(arrow: &str) -> String {
    format!("{arrow}*")
}

pub fn loop_name(vertex: &str) -> String {
    format!("t_{vertex}")
}

/// `e`, `e*` and `t_v` with `dt_v = ∑_{e=v→•} e*e − ∑_{e=•→v} (−1)^{|e||e*|} e e*`.
pub fn build_ginzburg(gq: &GradedQuiver, n: i64, ring: Ring) -> Result<SemifreeDgCat> {
    let ends = gq.endpoints()?;
    let mut b = CatBuilder::new(ring);
    let objs = gq.vertices.iter().map(|v| b.object(v)).collect::<Result<Vec<_>>>()?;
    for (a, (s, t)) in gq.arrows.iter().zip(&ends) {
        b.closed(&a.id, objs[*s], objs[*t], a.q)?;
        b.closed(&dual_name(&a.id), objs[*t], objs[*s], 2 - n - a.q)?;
    }
    for (v, name) in gq.vertices.iter().enumerate() {
        let l = objs[v];
        let mut d = NcPoly::zero(ring, l, l);
        for (a, (s, _)) in gq.arrows.iter().zip(&ends) {
            if *s == v {
                d.add_assign(&b.g(&dual_name(&a.id))?.compose(&b.g(&a.id)?)?)?;
            }
        }
        for (a, (_, t)) in gq.arrows.iter().zip(&ends) {
            if *t == v {
                let c = Coefficient::sign(ring, a.q * (2 - n - a.q)).neg();
                d.add_assign(&b.g(&a.id)?.compose(&b.g(&dual_name(&a.id))?)?.scale(&c))?;
            }
        }
        b.generator(&loop_name(name), l, l, 1 - n, d)?;
    }
    b.provenance("ginzburg", format!("n = {n}, {} vertices, {} arrows", gq.vertices.len(), gq.arrows.len()));
    b.build()
}

/// The Ginzburg category identified with a sphere plumbing, generator by generator.
#[derive(Debug, Clone)]
pub struct GinzburgWitness {
    pub data: PlumbingData,
    pub ginzburg: Arc<SemifreeDgCat>,
    pub plumbing: Arc<SemifreeDgCat>,
    pub renaming: Renaming,
    pub functor: DgFunctor,
    pub certificate: FunctorCertificate,
    pub report: EqualityReport,
}

/// `sgn(e) = −(−1)^{q_e + n(n−1)/2}`, `d_e = q_e`, sphere vertices; `e* ↦ (−1)^{n q_e} y_e`.
pub fn ginzburg_witness(gq: &GradedQuiver, n: i64, ring: Ring) -> Result<GinzburgWitness> {
    if n < 3 {
        return Err(DgError::Invalid(format!("the Ginzburg comparison needs n >= 3, got {n}")));
    }
    let ginzburg = Arc::new(build_ginzburg(gq, n, ring)?);
    let parity = |k: i64| if k.rem_euclid(2) == 0 { 1 } else { -1 };
    let data = PlumbingData {
        n,
        vertices: gq
            .vertices
            .iter()
            .map(|v| Vertex {
                id: v.clone(),
                manifold: Manifold::Sphere,
            })
            .collect(),
        arrows: gq
            .arrows
            .iter()
            .map(|a| Arrow {
                id: a.id.clone(),
                src: a.src.clone(),
                tgt: a.tgt.clone(),
                sign: -parity(a.q + n * (n - 1) / 2),
                d: a.q,
            })
            .collect(),
        coefficients: ring,
    };
    let plumbing = Arc::new(build_wrapped(&data)?);
    let mut renaming = Renaming::default();
    for v in &gq.vertices {
        renaming.objects.insert(v.clone(), object_name(v));
        renaming.generators.insert(loop_name(v), (h_name(v), 1));
    }
    for a in &gq.arrows {
        renaming.generators.insert(a.id.clone(), (x_name(&a.id), 1));
        renaming.generators.insert(dual_name(&a.id), (y_name(&a.id), parity(n * a.q)));
    }
    let report = presentation_equal(&ginzburg, &plumbing, &renaming)?;
    let objects: Vec<(&str, &str)> = renaming.objects.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let images: Vec<(String, String)> = renaming
        .generators
        .iter()
        .map(|(g, (h, s))| (g.clone(), if *s < 0 { format!("-{h}") } else { h.clone() }))
        .collect();
    let refs: Vec<(&str, &str)> = images.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let functor = DgFunctor::from_text(ginzburg.clone(), plumbing.clone(), &objects, &refs)?;
    let certificate = functor.validate()?;
    Ok(GinzburgWitness {
        data,
        ginzburg,
        plumbing,
        renaming,
        functor,
        certificate,
        report,
    })
}
