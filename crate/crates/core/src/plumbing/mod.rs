//! Plumbing data, the wrapped Fukaya presentation of a plumbing, Ginzburg categories and
//! the combinatorial moves relating different plumbing data.

mod endo;
mod ginzburg;
mod moves;
pub mod random;
mod sigma;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

pub use endo::{total_endomorphism_algebra, EndomorphismAlgebra};
pub use ginzburg::{build_ginzburg, ginzburg_witness, GinzburgWitness, GradedArrow, GradedQuiver};
pub use moves::{edge_flip_witness, normalize, sign_gauge_witness, EdgeFlipWitness, SignGaugeWitness};
pub use sigma::{regauge, sigma, GradingClass};

use crate::algebra::{Coefficient, GenTable, NcPoly, ObjId, Ring};
use crate::constructions::{localize, localize_morphisms};
use crate::dgcat::{CatBuilder, SemifreeDgCat};
use crate::error::{DgError, Result};

fn default_ring() -> Ring {
    Ring::Integers
}

fn default_sign() -> i64 {
    1
}

/// A generator of a custom loop-space model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CustomGenerator {
    pub name: String,
    pub deg: i64,
}

/// A semifree model of chains on the based loop space of `M ∖ pt`, with a chosen class `η`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CustomManifold {
    pub generators: Vec<CustomGenerator>,
    #[serde(default)]
    pub differentials: BTreeMap<String, String>,
    pub eta: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Manifold {
    Sphere,
    Surface { genus: usize },
    Disk,
    Custom(CustomManifold),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: String,
    pub manifold: Manifold,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub id: String,
    pub src: String,
    pub tgt: String,
    #[serde(default = "default_sign")]
    pub sign: i64,
    #[serde(default)]
    pub d: i64,
}

/// A quiver with manifolds at the vertices, signs and integers on the arrows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlumbingData {
    pub n: i64,
    pub vertices: Vec<Vertex>,
    #[serde(default)]
    pub arrows: Vec<Arrow>,
    #[serde(default = "default_ring")]
    pub coefficients: Ring,
}

impl PlumbingData {
    /// Sphere vertices, arrows given as `(id, src, tgt, sign, d)`.
    pub fn spheres(n: i64, vertices: &[&str], arrows: &[(&str, &str, &str, i64, i64)]) -> Self {
        PlumbingData {
            n,
            vertices: vertices
                .iter()
                .map(|v| Vertex {
                    id: v.to_string(),
                    manifold: Manifold::Sphere,
                })
                .collect(),
            arrows: arrows
                .iter()
                .map(|(id, s, t, sign, d)| Arrow {
                    id: id.to_string(),
                    src: s.to_string(),
                    tgt: t.to_string(),
                    sign: *sign,
                    d: *d,
                })
                .collect(),
            coefficients: Ring::Integers,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let data: PlumbingData = serde_json::from_str(text).map_err(|e| DgError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        data.validate()?;
        Ok(data)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plumbing data serializes")
    }

    pub fn vertex_index(&self, id: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v.id == id)
            .ok_or_else(|| DgError::UnknownName(id.to_string()))
    }

    pub fn arrow_index(&self, id: &str) -> Result<usize> {
        self.arrows
            .iter()
            .position(|a| a.id == id)
            .ok_or_else(|| DgError::UnknownName(id.to_string()))
    }

    /// `(src, tgt)` vertex indices of every arrow.
    pub fn endpoints(&self) -> Result<Vec<(usize, usize)>> {
        self.arrows
            .iter()
            .map(|a| Ok((self.vertex_index(&a.src)?, self.vertex_index(&a.tgt)?)))
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(DgError::Invalid(format!("dimension must be at least 2, got {}", self.n)));
        }
        let mut ids = BTreeSet::new();
        for v in &self.vertices {
            if !ids.insert(&v.id) {
                return Err(DgError::DuplicateName(v.id.clone()));
            }
            if let Manifold::Surface { .. } = v.manifold {
                if self.n != 2 {
                    return Err(DgError::Invalid(format!("surface vertex {} needs n = 2", v.id)));
                }
            }
        }
        let mut ids = BTreeSet::new();
        for a in &self.arrows {
            if !ids.insert(&a.id) {
                return Err(DgError::DuplicateName(a.id.clone()));
            }
            if a.sign != 1 && a.sign != -1 {
                return Err(DgError::Invalid(format!("arrow {} has sign {}", a.id, a.sign)));
            }
        }
        self.endpoints()?;
        Ok(())
    }

    pub fn first_betti_number(&self) -> Result<usize> {
        Ok(sigma(self)?.coordinates.len())
    }
}

pub fn object_name(vertex: &str) -> String {
    format!("L_{vertex}")
}

pub fn h_name(vertex: &str) -> String {
    format!("h_{vertex}")
}

pub fn x_name(arrow: &str) -> String {
    format!("x_{arrow}")
}

pub fn y_name(arrow: &str) -> String {
    format!("y_{arrow}")
}

/// Label of the inverted `1 + y_e x_e`.
pub fn edge_label(arrow: &str) -> String {
    format!("1+{}{}", y_name(arrow), x_name(arrow))
}

/// A factor `1 + y_e x_e` (outgoing) or `1 + x_e y_e` (incoming) of a two-dimensional relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Factor {
    Out(usize),
    In(usize),
}

/// `dh_v = η·∏left − ∏right` for `n = 2`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct VertexLayout {
    pub left: Vec<Factor>,
    pub right: Vec<Factor>,
}

/// Incoming negative arrows then outgoing arrows on the left, incoming positive ones on the right.
pub fn standard_layout(data: &PlumbingData) -> Result<Vec<VertexLayout>> {
    let ends = data.endpoints()?;
    let mut out = vec![VertexLayout::default(); data.vertices.len()];
    for (e, (_, t)) in ends.iter().enumerate() {
        if data.arrows[e].sign < 0 {
            out[*t].left.push(Factor::In(e));
        }
    }
    for (e, (s, _)) in ends.iter().enumerate() {
        out[*s].left.push(Factor::Out(e));
    }
    for (e, (_, t)) in ends.iter().enumerate() {
        if data.arrows[e].sign > 0 {
            out[*t].right.push(Factor::In(e));
        }
    }
    Ok(out)
}

/// The standard layout with each block read backwards.
pub fn reordered_layout(data: &PlumbingData) -> Result<Vec<VertexLayout>> {
    let mut l = standard_layout(data)?;
    for v in &mut l {
        v.left.reverse();
        v.right.reverse();
    }
    Ok(l)
}

fn check_layout(data: &PlumbingData, layout: &[VertexLayout]) -> Result<()> {
    if layout.len() != data.vertices.len() {
        return Err(DgError::Invalid("layout needs one entry per vertex".into()));
    }
    let ends = data.endpoints()?;
    let mut seen = BTreeSet::new();
    for (v, l) in layout.iter().enumerate() {
        for f in l.left.iter().chain(&l.right) {
            let ok = match *f {
                Factor::Out(e) => e < ends.len() && ends[e].0 == v,
                Factor::In(e) => e < ends.len() && ends[e].1 == v,
            };
            if !ok || !seen.insert(*f) {
                return Err(DgError::Invalid(format!("bad layout factor {f:?} at vertex {}", data.vertices[v].id)));
            }
        }
    }
    if seen.len() != 2 * ends.len() {
        return Err(DgError::Invalid("layout misses a factor".into()));
    }
    Ok(())
}

fn surface_names(j: usize, v: &str) -> [String; 4] {
    [
        format!("alpha_{j}^{v}"),
        format!("beta_{j}^{v}"),
        format!("delta_{j}^{v}"),
        format!("gamma_{j}^{v}"),
    ]
}

/// Adds the loop-space generators of one vertex and returns `η_v`.
fn vertex_model(b: &mut CatBuilder, n: i64, v: &Vertex, l: ObjId) -> Result<NcPoly> {
    let ring = b.ring();
    match &v.manifold {
        Manifold::Sphere => Ok(if n == 2 {
            NcPoly::identity(ring, l)
        } else {
            NcPoly::zero(ring, l, l)
        }),
        Manifold::Surface { genus } => {
            if n != 2 {
                return Err(DgError::Invalid(format!("surface vertex {} needs n = 2", v.id)));
            }
            for j in 1..=*genus {
                let [a, be, de, _] = surface_names(j, &v.id);
                b.closed(&a, l, l, 0)?;
                b.closed(&be, l, l, 0)?;
                b.closed(&de, l, l, 0)?;
            }
            let mut eta = NcPoly::identity(ring, l);
            for j in 1..=*genus {
                let [a, be, de, ga] = surface_names(j, &v.id);
                let d = b.poly_between(&format!("{a}∘{be} - {be}∘{a}∘{de}"), l, l)?;
                b.generator(&ga, l, l, -1, d)?;
                eta = b.g(&de)?.compose(&eta)?;
            }
            Ok(eta)
        }
        Manifold::Disk => {
            let m = b.closed(&format!("m_{}", v.id), l, l, 2 - n)?;
            Ok(NcPoly::generator(b, m))
        }
        Manifold::Custom(c) => {
            for g in &c.generators {
                let d = match c.differentials.get(&g.name) {
                    Some(text) if text.trim() != "0" => b.poly_between(text, l, l)?,
                    _ => NcPoly::zero(ring, l, l),
                };
                b.generator(&g.name, l, l, g.deg, d)?;
            }
            if let Some(k) = c.differentials.keys().find(|k| !c.generators.iter().any(|g| &g.name == *k)) {
                return Err(DgError::UnknownName(k.clone()));
            }
            let eta = if c.eta.trim() == "0" {
                NcPoly::zero(ring, l, l)
            } else {
                b.poly_between(&c.eta, l, l)?
            };
            if !crate::algebra::leibniz_d(&eta, b)?.is_zero() {
                return Err(DgError::NotClosed(format!("eta at {}", v.id)));
            }
            match eta.homogeneous_degree(b)? {
                Some(deg) if deg != 2 - n => Err(DgError::DegreeError {
                    generator: format!("eta at {}", v.id),
                    expected: 2 - n,
                    found: deg.to_string(),
                }),
                None if !eta.is_zero() => Err(DgError::DegreeError {
                    generator: format!("eta at {}", v.id),
                    expected: 2 - n,
                    found: format!("{:?}", eta.degrees(b)),
                }),
                _ => Ok(eta),
            }
        }
    }
}

/// The wrapped Fukaya presentation of the plumbing, localized when `n = 2`.
pub fn build_wrapped(data: &PlumbingData) -> Result<SemifreeDgCat> {
    build_wrapped_with_layout(data, &standard_layout(data)?)
}

/// [`build_wrapped`] with every block of factors reversed (`n = 2`).
pub fn build_wrapped_reordered(data: &PlumbingData) -> Result<SemifreeDgCat> {
    build_wrapped_with_layout(data, &reordered_layout(data)?)
}

/// [`build_wrapped`] with an explicit placement of the two-dimensional factors.
pub fn build_wrapped_with_layout(data: &PlumbingData, layout: &[VertexLayout]) -> Result<SemifreeDgCat> {
    data.validate()?;
    let n = data.n;
    let ring = data.coefficients;
    let ends = data.endpoints()?;
    if n == 2 {
        check_layout(data, layout)?;
    }
    let mut b = CatBuilder::new(ring);
    let objs: Vec<ObjId> = data
        .vertices
        .iter()
        .map(|v| b.object(&object_name(&v.id)))
        .collect::<Result<_>>()?;
    let etas: Vec<NcPoly> = data
        .vertices
        .iter()
        .zip(&objs)
        .map(|(v, l)| vertex_model(&mut b, n, v, *l))
        .collect::<Result<_>>()?;
    for (a, (s, t)) in data.arrows.iter().zip(&ends) {
        b.closed(&x_name(&a.id), objs[*s], objs[*t], a.d)?;
        b.closed(&y_name(&a.id), objs[*t], objs[*s], 2 - n - a.d)?;
    }
    let yx = |b: &CatBuilder, e: usize| -> Result<NcPoly> {
        let id = &data.arrows[e].id;
        b.g(&y_name(id))?.compose(&b.g(&x_name(id))?)
    };
    let xy = |b: &CatBuilder, e: usize| -> Result<NcPoly> {
        let id = &data.arrows[e].id;
        b.g(&x_name(id))?.compose(&b.g(&y_name(id))?)
    };
    for (v, vert) in data.vertices.iter().enumerate() {
        let l = objs[v];
        let dh = if n == 2 {
            let factor = |f: &Factor| -> Result<NcPoly> {
                let p = match *f {
                    Factor::Out(e) => yx(&b, e)?,
                    Factor::In(e) => xy(&b, e)?,
                };
                NcPoly::identity(ring, l).add(&p)
            };
            let mut left = etas[v].clone();
            for f in &layout[v].left {
                left = left.compose(&factor(f)?)?;
            }
            let mut right = NcPoly::identity(ring, l);
            for f in &layout[v].right {
                right = right.compose(&factor(f)?)?;
            }
            left.sub(&right)?
        } else {
            let mut dh = etas[v].clone();
            for (e, (s, _)) in ends.iter().enumerate() {
                if *s == v {
                    let c = Coefficient::sign(ring, n * data.arrows[e].d);
                    dh.add_assign(&yx(&b, e)?.scale(&c))?;
                }
            }
            for (e, (_, t)) in ends.iter().enumerate() {
                if *t == v {
                    let mut c = Coefficient::sign(ring, n * (n - 1) / 2);
                    if data.arrows[e].sign < 0 {
                        c = c.neg();
                    }
                    dh.add_assign(&xy(&b, e)?.scale(&c))?;
                }
            }
            dh
        };
        b.generator(&h_name(&vert.id), l, l, 1 - n, dh)?;
    }
    b.provenance(
        "plumbing",
        format!("n = {n}, {} vertices, {} arrows", data.vertices.len(), data.arrows.len()),
    );
    let cat = b.build()?;
    if n != 2 {
        return Ok(cat);
    }
    let labels: Vec<(String, NcPoly)> = data
        .arrows
        .iter()
        .zip(&ends)
        .map(|(a, (s, _))| {
            let u = NcPoly::identity(ring, objs[*s]).add(&cat.poly(&format!("{}∘{}", y_name(&a.id), x_name(&a.id)))?)?;
            Ok((edge_label(&a.id), u))
        })
        .collect::<Result<_>>()?;
    let refs: Vec<(&str, NcPoly)> = labels.iter().map(|(l, p)| (l.as_str(), p.clone())).collect();
    let cat = localize_morphisms(&cat, &refs)?;
    let mut inv = Vec::new();
    for v in &data.vertices {
        if let Manifold::Surface { genus } = v.manifold {
            for j in 1..=genus {
                let [a, be, _, _] = surface_names(j, &v.id);
                inv.push(a);
                inv.push(be);
            }
        }
    }
    if inv.is_empty() {
        return Ok(cat);
    }
    let refs: Vec<&str> = inv.iter().map(|s| s.as_str()).collect();
    localize(&cat, &refs)
}
