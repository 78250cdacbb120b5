use std::collections::{BTreeMap, VecDeque};
use std::sync::Arc;

use super::sigma::{arrow_order, spanning_forest};
use super::{
    build_wrapped, build_wrapped_with_layout, edge_label, standard_layout, x_name, y_name, Factor, PlumbingData,
    VertexLayout,
};
use crate::algebra::{Coefficient, GenId, GenTable, NcPoly, Word};
use crate::constructions::localization_names;
use crate::dgcat::{DgFunctor, FunctorCertificate, SemifreeDgCat};
use crate::error::{DgError, Result};

fn parity(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Reversal of one arrow, with functors in both directions.
#[derive(Debug, Clone)]
pub struct EdgeFlipWitness {
    pub data: PlumbingData,
    pub arrow: String,
    pub flipped: String,
    /// Placement of the two-dimensional factors used for the target.
    pub layout: Vec<VertexLayout>,
    pub source: Arc<SemifreeDgCat>,
    pub target: Arc<SemifreeDgCat>,
    pub forward: DgFunctor,
    pub backward: DgFunctor,
    pub certificates: (FunctorCertificate, FunctorCertificate),
}

/// Images of the quadruple inverting `1 + Y X` under a functor sending `1 + Y X` to `1 + X′ Y′`,
/// where the target inverts `1 + Y′ X′` under `label`.
fn transported_quadruple(tgt: &SemifreeDgCat, xp: &NcPoly, yp: &NcPoly, label: &str) -> Result<[NcPoly; 4]> {
    let ring = tgt.ring();
    let [inv, hat, check, bar] = localization_names(label);
    let eps = Coefficient::sign(ring, xp.homogeneous_degree(tgt)?.unwrap_or(0));
    let around = |name: &str| NcPoly::compose_all(&[xp.clone(), tgt.g(name)?, yp.clone()]);
    let one = NcPoly::identity(ring, xp.tgt());
    Ok([
        one.sub(&around(&inv)?)?,
        around(&hat)?.scale(&eps).neg(),
        around(&check)?.scale(&eps).neg(),
        around(&bar)?.neg(),
    ])
}

/// `x_from ↦ cx·y_to`, `y_from ↦ cy·x_to`, identity elsewhere.
fn flip_functor(
    src: &Arc<SemifreeDgCat>,
    tgt: &Arc<SemifreeDgCat>,
    from: &str,
    to: &str,
    cx: &Coefficient,
    cy: &Coefficient,
) -> Result<DgFunctor> {
    let obj_map = src
        .objects()
        .iter()
        .map(|o| tgt.obj(o))
        .collect::<Result<Vec<_>>>()?;
    let x_img = tgt.g(&y_name(to))?.scale(cx);
    let y_img = tgt.g(&x_name(to))?.scale(cy);
    let quad_names = localization_names(&edge_label(from));
    let quad = if src.find_generator(&quad_names[0]).is_some() {
        transported_quadruple(tgt, &tgt.g(&x_name(to))?, &tgt.g(&y_name(to))?, &edge_label(to))?.to_vec()
    } else {
        Vec::new()
    };
    let mut images = Vec::with_capacity(src.generator_count());
    for g in src.generators() {
        let img = if g.name == x_name(from) {
            x_img.clone()
        } else if g.name == y_name(from) {
            y_img.clone()
        } else if let Some(i) = quad_names.iter().position(|m| *m == g.name).filter(|_| !quad.is_empty()) {
            quad[i].clone()
        } else {
            tgt.g(&g.name)?
        };
        images.push(img);
    }
    Ok(DgFunctor::new(src.clone(), tgt.clone(), obj_map, images))
}

/// Reverses arrow `u`: `sgn′(ū) = (−1)ⁿ sgn(u)`, `d′_ū = 2 − n − d_u`.
///
/// For `n = 2` the factor of `ū` keeps the slot the factor of `u` had, which is the standard
/// construction up to reordering for `sgn(u) = −1` and the modified one for `sgn(u) = +1`.
pub fn edge_flip_witness(data: &PlumbingData, u: &str) -> Result<EdgeFlipWitness> {
    data.validate()?;
    let n = data.n;
    let e = data.arrow_index(u)?;
    let flipped = format!("{u}'");
    if data.arrows.iter().any(|a| a.id == flipped) {
        return Err(DgError::DuplicateName(flipped));
    }
    let mut out = data.clone();
    {
        let a = &mut out.arrows[e];
        std::mem::swap(&mut a.src, &mut a.tgt);
        a.id = flipped.clone();
        a.sign *= parity(n);
        a.d = 2 - n - a.d;
    }
    let ring = data.coefficients;
    let (d_u, s_u) = (data.arrows[e].d, data.arrows[e].sign);
    let c = if n == 2 {
        Coefficient::from_i64(ring, 1)
    } else {
        Coefficient::from_i64(ring, s_u * parity(n + n * d_u + n * (n - 1) / 2))
    };
    let source_layout = standard_layout(data)?;
    let layout: Vec<VertexLayout> = source_layout
        .iter()
        .map(|l| {
            let swap = |f: &Factor| match *f {
                Factor::Out(a) if a == e => Factor::In(a),
                Factor::In(a) if a == e => Factor::Out(a),
                f => f,
            };
            VertexLayout {
                left: l.left.iter().map(swap).collect(),
                right: l.right.iter().map(swap).collect(),
            }
        })
        .collect();
    let source = Arc::new(build_wrapped(data)?);
    let target = Arc::new(build_wrapped_with_layout(&out, &layout)?);
    let one = Coefficient::from_i64(ring, 1);
    let forward = flip_functor(&source, &target, u, &flipped, &one, &c)?;
    let backward = flip_functor(&target, &source, &flipped, u, &c, &one)?;
    let certificates = (forward.validate()?, backward.validate()?);
    let round = backward.compose(&forward)?;
    let quads: Vec<String> = if n == 2 { localization_names(&edge_label(u)).to_vec() } else { Vec::new() };
    for g in source.generators() {
        if quads.contains(&g.name) {
            continue;
        }
        let img = round.image_of(&g.name)?;
        if *img != source.g(&g.name)? {
            return Err(DgError::Witness(format!(
                "round trip sends {} to {}",
                g.name,
                source.render(img)
            )));
        }
    }
    Ok(EdgeFlipWitness {
        data: out,
        arrow: u.to_string(),
        flipped,
        layout,
        source,
        target,
        forward,
        backward,
        certificates,
    })
}

/// Sign change on the arrows with exactly one endpoint in a vertex subset.
#[derive(Debug, Clone)]
pub struct SignGaugeWitness {
    pub data: PlumbingData,
    pub subset: Vec<String>,
    pub source: Arc<SemifreeDgCat>,
    pub target: Arc<SemifreeDgCat>,
    /// Generators sent to minus themselves.
    pub negated: Vec<String>,
    pub functor: DgFunctor,
    pub certificate: FunctorCertificate,
}

struct Gf2System {
    vars: usize,
    rows: Vec<(Vec<u64>, bool, String)>,
}

impl Gf2System {
    fn new(vars: usize) -> Self {
        Gf2System { vars, rows: Vec::new() }
    }

    fn push(&mut self, vars: &[usize], rhs: bool, why: String) {
        let mut row = vec![0u64; self.vars.div_ceil(64)];
        for v in vars {
            row[v / 64] ^= 1 << (v % 64);
        }
        self.rows.push((row, rhs, why));
    }

    /// One solution with free variables set to zero; later variables are solved for first.
    fn solve(mut self) -> std::result::Result<Vec<bool>, String> {
        let bit = |r: &[u64], v: usize| r[v / 64] >> (v % 64) & 1 == 1;
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut next = 0;
        for v in (0..self.vars).rev() {
            let Some(p) = (next..self.rows.len()).find(|i| bit(&self.rows[*i].0, v)) else {
                continue;
            };
            self.rows.swap(next, p);
            let (pr, pb) = (self.rows[next].0.clone(), self.rows[next].1);
            for i in 0..self.rows.len() {
                if i != next && bit(&self.rows[i].0, v) {
                    let row = &mut self.rows[i];
                    row.0.iter_mut().zip(&pr).for_each(|(a, b)| *a ^= b);
                    row.1 ^= pb;
                }
            }
            pivots.push((next, v));
            next += 1;
        }
        if let Some((_, _, why)) = self.rows[next..].iter().find(|(_, b, _)| *b) {
            return Err(why.clone());
        }
        let mut x = vec![false; self.vars];
        for (r, v) in pivots {
            x[v] = self.rows[r].1;
        }
        Ok(x)
    }
}

fn relabel_word(w: &Word, map: &[GenId]) -> Word {
    Word(w.letters().iter().map(|g| map[g.index()]).collect())
}

/// Flips `sgn` on arrows with one endpoint in `subset` and solves for a diagonal `±1` functor.
pub fn sign_gauge_witness(data: &PlumbingData, subset: &[&str]) -> Result<SignGaugeWitness> {
    data.validate()?;
    let inside: Vec<bool> = {
        let mut v = vec![false; data.vertices.len()];
        for s in subset {
            v[data.vertex_index(s)?] = true;
        }
        v
    };
    let ends = data.endpoints()?;
    let mut out = data.clone();
    for (a, (s, t)) in out.arrows.iter_mut().zip(&ends) {
        if inside[*s] != inside[*t] {
            a.sign = -a.sign;
        }
    }
    let source = Arc::new(build_wrapped(data)?);
    let target = Arc::new(build_wrapped(&out)?);
    let (src, tgt) = (source.as_ref(), target.as_ref());
    let map: Vec<GenId> = src
        .generators()
        .iter()
        .map(|g| tgt.gen(&g.name))
        .collect::<Result<_>>()?;
    let mut sys = Gf2System::new(src.generator_count());
    for (i, g) in src.generators().iter().enumerate() {
        let dt = &tgt.generator(map[i]).d;
        let mut words: BTreeMap<Word, (Option<Coefficient>, Option<Coefficient>, Vec<usize>)> = BTreeMap::new();
        for (w, c) in g.d.terms() {
            let vars = w.letters().iter().map(|l| l.index()).collect();
            words.insert(relabel_word(w, &map), (Some(c.clone()), None, vars));
        }
        for (w, c) in dt.terms() {
            match words.get_mut(w) {
                Some(entry) => entry.1 = Some(c.clone()),
                None => {
                    let why = format!("d({}) gains the term {}", g.name, w.render(tgt, dt.src()));
                    sys.push(&[], true, why);
                }
            }
        }
        for (w, (a, b, mut vars)) in words {
            let why = |what: &str| format!("d({}) {what} at {}", g.name, w.render(tgt, dt.src()));
            let (Some(a), Some(b)) = (a, b) else {
                sys.push(&[], true, why("loses a term"));
                continue;
            };
            vars.push(i);
            if a == b {
                sys.push(&vars, false, why("keeps its sign"));
            } else if a == b.neg() {
                sys.push(&vars, true, why("changes sign"));
            } else {
                sys.push(&[], true, why("changes coefficient"));
            }
        }
    }
    let bits = sys
        .solve()
        .map_err(|why| DgError::Witness(format!("no sign assignment: {why}")))?;
    let ring = data.coefficients;
    let obj_map = src.objects().iter().map(|o| tgt.obj(o)).collect::<Result<Vec<_>>>()?;
    let images = map
        .iter()
        .zip(&bits)
        .map(|(g, b)| {
            let p = NcPoly::generator(tgt, *g);
            if *b {
                p.scale(&Coefficient::from_i64(ring, -1))
            } else {
                p
            }
        })
        .collect();
    let functor = DgFunctor::new(source.clone(), target.clone(), obj_map, images);
    let certificate = functor.validate()?;
    let negated = src
        .generators()
        .iter()
        .zip(&bits)
        .filter(|(_, b)| **b)
        .map(|(g, _)| g.name.clone())
        .collect();
    Ok(SignGaugeWitness {
        data: out,
        subset: subset.iter().map(|s| s.to_string()).collect(),
        source,
        target,
        negated,
        functor,
        certificate,
    })
}

/// Canonical representative: arrows point from the earlier vertex to the later one (with the
/// compensating `sgn ↦ (−1)ⁿ sgn`, `d ↦ 2 − n − d`), loops carry sign `+1` when `n` is odd, and
/// the signs on a spanning forest are gauged to `+1`.
pub fn normalize(data: &PlumbingData) -> Result<PlumbingData> {
    data.validate()?;
    let n = data.n;
    let mut out = data.clone();
    let ends = data.endpoints()?;
    for (a, (s, t)) in out.arrows.iter_mut().zip(&ends) {
        let reverse = s > t || (s == t && n % 2 == 1 && a.sign < 0);
        if reverse {
            std::mem::swap(&mut a.src, &mut a.tgt);
            a.sign *= parity(n);
            a.d = 2 - n - a.d;
        }
    }
    let ends = out.endpoints()?;
    let order = arrow_order(&out, &ends);
    out.arrows = order.iter().map(|e| out.arrows[*e].clone()).collect();
    let ends = out.endpoints()?;
    let (tree, _) = spanning_forest(&out)?;
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); out.vertices.len()];
    for &e in &tree {
        let (s, t) = ends[e];
        adj[s].push((t, e));
        adj[t].push((s, e));
    }
    let mut flip: Vec<Option<bool>> = vec![None; out.vertices.len()];
    for root in 0..out.vertices.len() {
        if flip[root].is_some() {
            continue;
        }
        flip[root] = Some(false);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &(w, e) in &adj[v] {
                if flip[w].is_none() {
                    flip[w] = Some(flip[v].expect("visited") ^ (out.arrows[e].sign < 0));
                    queue.push_back(w);
                }
            }
        }
    }
    for (a, (s, t)) in out.arrows.iter_mut().zip(&ends) {
        if flip[*s] != flip[*t] {
            a.sign = -a.sign;
        }
    }
    Ok(out)
}
