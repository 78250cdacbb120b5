//! Builders for the named model categories and their inclusion functors.

mod functors;
mod surface;
mod witness;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use functors::{
    a2_inclusion, d12_inclusion, d12_inclusion_shifted, sphere_inclusion, surface_inclusion, D12Side, Puncture,
};
pub use surface::{surface_relation_form, FreeWord, SurfaceRelationForm};
pub use witness::{one_plus_xy_witness, sphere_last_inverse_witness, InverseWitness};

use crate::algebra::{Coefficient, GenTable, NcPoly, Ring};
use crate::constructions::{localize, localize_morphisms};
use crate::dgcat::{CatBuilder, SemifreeDgCat};
use crate::error::{DgError, Result};

/// A named model presentation with its parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModelId {
    A1,
    A2,
    C(i64),
    S { n: i64, plus: usize, minus: usize },
    M { g: usize, m: usize },
    D12(i64),
    B01(i64),
    D01(i64),
}

impl fmt::Display for ModelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelId::A1 => write!(f, "A1"),
            ModelId::A2 => write!(f, "A2"),
            ModelId::C(n) => write!(f, "C:{n}"),
            ModelId::S { n, plus, minus } => write!(f, "S:{n},{plus},{minus}"),
            ModelId::M { g, m } => write!(f, "M:{g},{m}"),
            ModelId::D12(n) => write!(f, "D12:{n}"),
            ModelId::B01(n) => write!(f, "B01:{n}"),
            ModelId::D01(n) => write!(f, "D01:{n}"),
        }
    }
}

impl FromStr for ModelId {
    type Err = DgError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || DgError::Invalid(format!("unknown model {s:?}"));
        let (tag, args) = match s.split_once(':') {
            Some((t, a)) => (t.trim(), a),
            None => (s.trim(), ""),
        };
        let nums: Vec<i64> = if args.trim().is_empty() {
            Vec::new()
        } else {
            args.split(',')
                .map(|x| x.trim().parse::<i64>().map_err(|_| bad()))
                .collect::<Result<_>>()?
        };
        let usize_of = |v: i64| usize::try_from(v).map_err(|_| bad());
        let id = match (tag, nums.as_slice()) {
            ("A1", []) => ModelId::A1,
            ("A2", []) => ModelId::A2,
            ("C", [n]) => ModelId::C(*n),
            ("S", [n, m]) => ModelId::S {
                n: *n,
                plus: usize_of(*m)?,
                minus: 0,
            },
            ("S", [n, p, q]) => ModelId::S {
                n: *n,
                plus: usize_of(*p)?,
                minus: usize_of(*q)?,
            },
            ("M", [g, m]) => ModelId::M {
                g: usize_of(*g)?,
                m: usize_of(*m)?,
            },
            ("D12", [n]) => ModelId::D12(*n),
            ("B01", [n]) => ModelId::B01(*n),
            ("D01", [n]) => ModelId::D01(*n),
            _ => return Err(bad()),
        };
        id.check()?;
        Ok(id)
    }
}

impl ModelId {
    /// Parameter ranges.
    pub fn check(&self) -> Result<()> {
        let fail = |msg: &str| Err(DgError::Invalid(format!("{self}: {msg}")));
        match self {
            ModelId::C(n) if *n < 1 => fail("n must be at least 1"),
            ModelId::S { n, .. } if *n < 2 => fail("n must be at least 2"),
            ModelId::S { plus, minus, .. } if plus + minus == 0 => fail("needs at least one puncture"),
            ModelId::M { g, m } if *g < 1 || *m < 1 => fail("g and m must be at least 1"),
            ModelId::D12(n) if *n < 2 => fail("n must be at least 2"),
            _ => Ok(()),
        }
    }
}

/// Nonstandard gradings `|αⱼ| = pⱼ`, `|βⱼ| = qⱼ`, `|aᵢ| = rᵢ` with `∑ rᵢ = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SurfaceGrading {
    pub p: Vec<i64>,
    pub q: Vec<i64>,
    pub r: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildOptions {
    pub ring: Ring,
    /// Invert the morphisms the model inverts (degree 0 ones only).
    pub localize: bool,
    /// `|aᵢ| = dᵢ` (then `|bᵢ|`) for two-dimensional spheres.
    pub sphere_degrees: Option<Vec<i64>>,
    /// One-based indices `i < m` with `daᵢ = 2·1_L` for three-dimensional spheres.
    pub background: Vec<usize>,
    pub surface_grading: Option<SurfaceGrading>,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            ring: Ring::Integers,
            localize: true,
            sphere_degrees: None,
            background: Vec::new(),
            surface_grading: None,
        }
    }
}

impl BuildOptions {
    pub fn with_ring(ring: Ring) -> Self {
        BuildOptions {
            ring,
            ..Default::default()
        }
    }

    pub fn raw(ring: Ring) -> Self {
        BuildOptions {
            ring,
            localize: false,
            ..Default::default()
        }
    }
}

pub fn build(model: &ModelId, opts: &BuildOptions) -> Result<SemifreeDgCat> {
    model.check()?;
    let ring = opts.ring;
    match model {
        ModelId::A1 => a1(ring, "K"),
        ModelId::A2 => a2(ring),
        ModelId::C(n) => c(*n, ring, opts.localize),
        ModelId::S { n, plus, minus } => sphere(*n, *plus, *minus, opts),
        ModelId::M { g, m } => surface(*g, *m, opts),
        ModelId::D12(n) => d12(*n, ring, opts.localize),
        ModelId::B01(n) => b01(*n, ring, opts.localize),
        ModelId::D01(n) => d01(*n, ring, opts.localize),
    }
}

/// One object, no generators.
pub fn a1(ring: Ring, object: &str) -> Result<SemifreeDgCat> {
    let mut b = CatBuilder::new(ring);
    b.object(object)?;
    b.provenance("build", "A1");
    b.build()
}

/// `f: K0 → K1` of degree 0, closed.
pub fn a2(ring: Ring) -> Result<SemifreeDgCat> {
    let mut b = CatBuilder::new(ring);
    let k0 = b.object("K0")?;
    let k1 = b.object("K1")?;
    b.closed("f", k0, k1, 0)?;
    b.provenance("build", "A2");
    b.build()
}

/// One object `L` and a closed `z` of degree `1 − n`; for `n = 1` and `localize`, `z` is inverted.
pub fn c(n: i64, ring: Ring, localize_z: bool) -> Result<SemifreeDgCat> {
    ModelId::C(n).check()?;
    let mut b = CatBuilder::new(ring);
    let l = b.object("L")?;
    b.closed("z", l, l, 1 - n)?;
    b.provenance("build", format!("C({n})"));
    let cat = b.build()?;
    if n == 1 && localize_z {
        localize(&cat, &["z"])
    } else {
        Ok(cat)
    }
}

fn product(b: &CatBuilder, names: &[String], obj: &str) -> Result<NcPoly> {
    let l = b.obj(obj)?;
    let mut p = NcPoly::identity(b.ring(), l);
    for n in names {
        p = b.g(n)?.compose(&p)?;
    }
    Ok(p)
}

fn sum(b: &CatBuilder, names: &[String], obj: &str) -> Result<NcPoly> {
    let l = b.obj(obj)?;
    let mut p = NcPoly::zero(b.ring(), l, l);
    for n in names {
        p.add_assign(&b.g(n)?)?;
    }
    Ok(p)
}

/// `L` with `a₁…a_{m₊}`, `b₁…b_{m₋}`, `h`; `dh = ∏a − ∏b` for `n = 2`, `∑a − ∑b` otherwise.
pub fn sphere(n: i64, plus: usize, minus: usize, opts: &BuildOptions) -> Result<SemifreeDgCat> {
    let id = ModelId::S { n, plus, minus };
    id.check()?;
    let ring = opts.ring;
    let m = plus + minus;
    let degrees: Vec<i64> = match &opts.sphere_degrees {
        None => vec![2 - n; m],
        Some(d) => {
            if n != 2 {
                return Err(DgError::Invalid("sphere gradings apply to n = 2 only".into()));
            }
            if d.len() != m {
                return Err(DgError::Invalid(format!("expected {m} sphere degrees, got {}", d.len())));
            }
            let (da, db) = d.split_at(plus);
            if da.iter().sum::<i64>() != 0 || db.iter().sum::<i64>() != 0 {
                return Err(DgError::Invalid(format!("grading constraint violated: degrees {d:?} do not sum to 0")));
            }
            d.clone()
        }
    };
    if !opts.background.is_empty() {
        if n != 3 || minus != 0 {
            return Err(DgError::Invalid("the background class option applies to S(3,m) only".into()));
        }
        if let Some(i) = opts.background.iter().find(|i| **i == 0 || **i >= m) {
            return Err(DgError::Invalid(format!("background index {i} outside 1..{}", m - 1)));
        }
    }
    let mut b = CatBuilder::new(ring);
    let l = b.object("L")?;
    let a: Vec<String> = (1..=plus).map(|i| format!("a_{i}")).collect();
    let bs: Vec<String> = (1..=minus).map(|i| format!("b_{i}")).collect();
    let flagged = opts.background.len() as i64;
    for (i, name) in a.iter().enumerate() {
        let d = if opts.background.contains(&(i + 1)) {
            NcPoly::scalar(ring, l, Coefficient::from_i64(ring, 2))
        } else if i + 1 == m && flagged > 0 {
            NcPoly::scalar(ring, l, Coefficient::from_i64(ring, -2 * flagged))
        } else {
            NcPoly::zero(ring, l, l)
        };
        b.generator(name, l, l, degrees[i], d)?;
    }
    for (i, name) in bs.iter().enumerate() {
        b.closed(name, l, l, degrees[plus + i])?;
    }
    let dh = if n == 2 {
        product(&b, &a, "L")?.sub(&product(&b, &bs, "L")?)?
    } else {
        sum(&b, &a, "L")?.sub(&sum(&b, &bs, "L")?)?
    };
    b.generator("h", l, l, 1 - n, dh)?;
    let mut detail = format!("S({n},{plus},{minus})");
    if opts.sphere_degrees.is_some() {
        detail.push_str(&format!(" degrees {degrees:?}"));
    }
    if !opts.background.is_empty() {
        detail.push_str(&format!(" background {:?}", opts.background));
    }
    b.provenance("build", detail);
    let cat = b.build()?;
    if n == 2 && opts.localize {
        let inv: Vec<&str> = a
            .iter()
            .chain(bs.iter())
            .zip(&degrees)
            .filter(|(_, d)| **d == 0)
            .map(|(s, _)| s.as_str())
            .collect();
        localize(&cat, &inv)
    } else {
        Ok(cat)
    }
}

/// `L` with `αⱼ, βⱼ, δⱼ, γⱼ, aᵢ, h`; `dγⱼ = αⱼβⱼ − βⱼαⱼδⱼ`, `dh = ∏aᵢ − ∏δⱼ`.
pub fn surface(g: usize, m: usize, opts: &BuildOptions) -> Result<SemifreeDgCat> {
    ModelId::M { g, m }.check()?;
    let ring = opts.ring;
    let grading = opts.surface_grading.clone().unwrap_or(SurfaceGrading {
        p: vec![0; g],
        q: vec![0; g],
        r: vec![0; m],
    });
    if grading.p.len() != g || grading.q.len() != g || grading.r.len() != m {
        return Err(DgError::Invalid(format!("surface grading needs {g}, {g} and {m} entries")));
    }
    if grading.r.iter().sum::<i64>() != 0 {
        return Err(DgError::Invalid(format!("grading constraint violated: {:?} does not sum to 0", grading.r)));
    }
    let mut b = CatBuilder::new(ring);
    let l = b.object("L")?;
    for j in 1..=g {
        b.closed(&format!("alpha_{j}"), l, l, grading.p[j - 1])?;
    }
    for j in 1..=g {
        b.closed(&format!("beta_{j}"), l, l, grading.q[j - 1])?;
    }
    for j in 1..=g {
        b.closed(&format!("delta_{j}"), l, l, 0)?;
    }
    for j in 1..=g {
        let d = b.poly(&format!("alpha_{j}∘beta_{j} - beta_{j}∘alpha_{j}∘delta_{j}"))?;
        b.generator(&format!("gamma_{j}"), l, l, grading.p[j - 1] + grading.q[j - 1] - 1, d)?;
    }
    let a: Vec<String> = (1..=m).map(|i| format!("a_{i}")).collect();
    for (i, name) in a.iter().enumerate() {
        b.closed(name, l, l, grading.r[i])?;
    }
    let deltas: Vec<String> = (1..=g).map(|j| format!("delta_{j}")).collect();
    let dh = product(&b, &a, "L")?.sub(&product(&b, &deltas, "L")?)?;
    b.generator("h", l, l, -1, dh)?;
    let mut detail = format!("M({g},{m})");
    if opts.surface_grading.is_some() {
        detail.push_str(&format!(" grading p={:?} q={:?} r={:?}", grading.p, grading.q, grading.r));
    }
    b.provenance("build", detail);
    let cat = b.build()?;
    if !opts.localize {
        return Ok(cat);
    }
    let mut inv = Vec::new();
    for j in 1..=g {
        if grading.p[j - 1] == 0 {
            inv.push(format!("alpha_{j}"));
        }
        if grading.q[j - 1] == 0 {
            inv.push(format!("beta_{j}"));
        }
    }
    for (i, name) in a.iter().enumerate() {
        if grading.r[i] == 0 {
            inv.push(name.clone());
        }
    }
    let refs: Vec<&str> = inv.iter().map(|s| s.as_str()).collect();
    localize(&cat, &refs)
}

/// `x: L1 → L2` of degree 0 and `y: L2 → L1` of degree `2 − n`, both closed.
pub fn d12_raw(n: i64, ring: Ring) -> Result<SemifreeDgCat> {
    let mut b = CatBuilder::new(ring);
    let l1 = b.object("L1")?;
    let l2 = b.object("L2")?;
    b.closed("x", l1, l2, 0)?;
    b.closed("y", l2, l1, 2 - n)?;
    b.provenance("build", format!("D12({n})"));
    b.build()
}

/// [`d12_raw`], with `1_{L2} + x∘y` inverted when `n = 2`.
pub fn d12(n: i64, ring: Ring, localize_n2: bool) -> Result<SemifreeDgCat> {
    ModelId::D12(n).check()?;
    let cat = d12_raw(n, ring)?;
    if n == 2 && localize_n2 {
        let u = cat.poly_between("1_{L2} + x∘y", "L2", "L2")?;
        localize_morphisms(&cat, &[("1+xy", u)])
    } else {
        Ok(cat)
    }
}

/// `α₀, α₁, g, h` with `dh = α₁∘g − g∘α₀`; for `n = 2` both `αᵢ` are inverted.
pub fn b01(n: i64, ring: Ring, localize_n2: bool) -> Result<SemifreeDgCat> {
    let mut b = CatBuilder::new(ring);
    let l0 = b.object("L0")?;
    let l1 = b.object("L1")?;
    b.closed("alpha0", l0, l0, 2 - n)?;
    b.closed("alpha1", l1, l1, 2 - n)?;
    b.closed("g", l0, l1, 0)?;
    let d = b.poly("alpha1∘g - g∘alpha0")?;
    b.generator("h", l0, l1, 1 - n, d)?;
    b.provenance("build", format!("B01({n})"));
    let cat = b.build()?;
    if n == 2 && localize_n2 {
        localize(&cat, &["alpha0", "alpha1"])
    } else {
        Ok(cat)
    }
}

/// `α₁, g, h` with `dh = α₁∘g`, or `dh = α₁∘g − g` with `α₁` inverted when `n = 2`.
pub fn d01(n: i64, ring: Ring, localize_n2: bool) -> Result<SemifreeDgCat> {
    let mut b = CatBuilder::new(ring);
    let l0 = b.object("L0")?;
    let l1 = b.object("L1")?;
    b.closed("alpha1", l1, l1, 2 - n)?;
    b.closed("g", l0, l1, 0)?;
    let d = if n == 2 { b.poly("alpha1∘g - g")? } else { b.poly("alpha1∘g")? };
    b.generator("h", l0, l1, 1 - n, d)?;
    b.provenance("build", format!("D01({n})"));
    let cat = b.build()?;
    if n == 2 && localize_n2 {
        localize(&cat, &["alpha1"])
    } else {
        Ok(cat)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> BuildOptions {
        BuildOptions::default()
    }

    #[test]
    fn parse_and_display() {
        for s in ["A1", "A2", "C:3", "S:3,2,1", "M:1,2", "D12:4", "B01:3", "D01:2"] {
            let id: ModelId = s.parse().unwrap();
            assert_eq!(id.to_string(), s);
        }
        assert_eq!("S:3,2".parse::<ModelId>().unwrap().to_string(), "S:3,2,0");
        assert!("C:0".parse::<ModelId>().is_err());
        assert!("S:1,2".parse::<ModelId>().is_err());
        assert!("M:0,1".parse::<ModelId>().is_err());
        assert!("Q:1".parse::<ModelId>().is_err());
    }

    #[test]
    fn spheres() {
        let s = sphere(3, 3, 0, &z()).unwrap();
        assert_eq!(s.d_text("h").unwrap(), "a_1 + a_2 + a_3");
        let s = sphere(2, 3, 0, &BuildOptions::raw(Ring::Integers)).unwrap();
        assert_eq!(s.d_text("h").unwrap(), "-1_{L} + a_3∘a_2∘a_1");
        let s = sphere(2, 2, 0, &z()).unwrap();
        assert_eq!(s.localizations().len(), 2);
        let s = sphere(4, 2, 1, &z()).unwrap();
        assert_eq!(s.d_text("h").unwrap(), "a_1 + a_2 - b_1");
        let s = sphere(2, 2, 2, &BuildOptions::raw(Ring::Integers)).unwrap();
        assert_eq!(s.d_text("h").unwrap(), "a_2∘a_1 - b_2∘b_1");
        assert_eq!(s.generator(s.gen("h").unwrap()).deg, -1);
    }

    #[test]
    fn sphere_options() {
        let mut o = z();
        o.sphere_degrees = Some(vec![1, -1, 0]);
        let s = sphere(2, 3, 0, &o).unwrap();
        assert_eq!(s.localizations().len(), 1);
        s.validate().unwrap();
        o.sphere_degrees = Some(vec![1, 1, 0]);
        assert!(sphere(2, 3, 0, &o).is_err());
        let mut o = z();
        o.background = vec![1, 2];
        let s = sphere(3, 3, 0, &o).unwrap();
        assert_eq!(s.d_text("a_1").unwrap(), "2 1_{L}");
        assert_eq!(s.d_text("a_3").unwrap(), "-4 1_{L}");
        s.validate().unwrap();
        assert!(sphere(4, 3, 0, &o).is_err());
        o.background = vec![3];
        assert!(sphere(3, 3, 0, &o).is_err());
    }

    #[test]
    fn surfaces() {
        let m = surface(1, 2, &BuildOptions::raw(Ring::Integers)).unwrap();
        assert_eq!(m.d_text("gamma_1").unwrap(), "alpha_1∘beta_1 - beta_1∘alpha_1∘delta_1");
        assert_eq!(m.d_text("h").unwrap(), "-delta_1 + a_2∘a_1");
        let m = surface(2, 1, &z()).unwrap();
        assert_eq!(m.localizations().len(), 5);
        let mut o = z();
        o.surface_grading = Some(SurfaceGrading {
            p: vec![1],
            q: vec![0],
            r: vec![2, -2],
        });
        let m = surface(1, 2, &o).unwrap();
        assert_eq!(m.generator(m.gen("gamma_1").unwrap()).deg, 0);
        assert_eq!(m.localizations().len(), 1);
        o.surface_grading = Some(SurfaceGrading {
            p: vec![1],
            q: vec![0],
            r: vec![2, 1],
        });
        assert!(surface(1, 2, &o).is_err());
    }

    #[test]
    fn two_object_models() {
        let b = b01(3, Ring::Integers, true).unwrap();
        assert_eq!(b.d_text("h").unwrap(), "alpha1∘g - g∘alpha0");
        assert_eq!(b01(2, Ring::Integers, true).unwrap().localizations().len(), 2);
        assert_eq!(d01(2, Ring::Integers, true).unwrap().d_text("h").unwrap(), "-g + alpha1∘g");
        let d = d12(2, Ring::Integers, true).unwrap();
        assert_eq!(d.localizations()[0].morphism, "1_{L2} + x∘y");
        assert_eq!(d.gen("inv(1+xy)").unwrap().0, 2);
        for n in 1..7 {
            c(n, Ring::Integers, true).unwrap().validate().unwrap();
        }
        assert_eq!(c(1, Ring::Integers, true).unwrap().generator_count(), 5);
    }
}
