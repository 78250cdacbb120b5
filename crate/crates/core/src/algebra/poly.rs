use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::coeff::{Coefficient, Ring};
use crate::error::{DgError, Result};

/// Index of an object inside a presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ObjId(pub u32);

/// Index of a generator inside a presentation; equal to its ordinal rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GenId(pub u32);

impl GenId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl ObjId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Lookup interface for everything that knows generator boundaries, degrees and differentials.
pub trait GenTable {
    fn ring(&self) -> Ring;
    fn object_count(&self) -> usize;
    fn object_name(&self, o: ObjId) -> &str;
    fn generator_count(&self) -> usize;
    fn gen_name(&self, g: GenId) -> &str;
    fn gen_src(&self, g: GenId) -> ObjId;
    fn gen_tgt(&self, g: GenId) -> ObjId;
    fn gen_deg(&self, g: GenId) -> i64;
    fn gen_d(&self, g: GenId) -> Option<&NcPoly>;
    fn find_object(&self, name: &str) -> Option<ObjId>;
    fn find_generator(&self, name: &str) -> Option<GenId>;
}

/// A composable string of generators written left to right as in `a_m∘…∘a_1`;
/// the rightmost letter is applied first. The empty word is an identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<GenId>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(g: GenId) -> Self {
        Word(vec![g])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[GenId] {
        &self.0
    }

    /// `self ∘ other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn degree<T: GenTable + ?Sized>(&self, table: &T) -> i64 {
        self.0.iter().map(|g| table.gen_deg(*g)).sum()
    }

    pub fn render<T: GenTable + ?Sized>(&self, table: &T, obj: ObjId) -> String {
        if self.0.is_empty() {
            return format!("1_{{{}}}", table.object_name(obj));
        }
        let names: Vec<&str> = self.0.iter().map(|g| table.gen_name(*g)).collect();
        names.join("∘")
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A finite linear combination of words sharing one source and one target.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NcPoly {
    ring: Ring,
    src: ObjId,
    tgt: ObjId,
    terms: BTreeMap<Word, Coefficient>,
}

impl NcPoly {
    pub fn zero(ring: Ring, src: ObjId, tgt: ObjId) -> Self {
        NcPoly {
            ring,
            src,
            tgt,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(ring: Ring, x: ObjId) -> Self {
        let mut p = NcPoly::zero(ring, x, x);
        p.terms.insert(Word::empty(), ring.one());
        p
    }

    pub fn scalar(ring: Ring, x: ObjId, c: Coefficient) -> Self {
        let mut p = NcPoly::zero(ring, x, x);
        p.add_term(Word::empty(), c);
        p
    }

    pub fn generator<T: GenTable + ?Sized>(table: &T, g: GenId) -> Self {
        let mut p = NcPoly::zero(table.ring(), table.gen_src(g), table.gen_tgt(g));
        p.terms.insert(Word::letter(g), table.ring().one());
        p
    }

    pub fn monomial(ring: Ring, src: ObjId, tgt: ObjId, word: Word, c: Coefficient) -> Self {
        let mut p = NcPoly::zero(ring, src, tgt);
        p.add_term(word, c);
        p
    }

    /// Builds a word from generators listed left to right and checks composability.
    pub fn word<T: GenTable + ?Sized>(table: &T, letters: &[GenId]) -> Result<Self> {
        let w = Word(letters.to_vec());
        let (src, tgt) = word_boundary(table, &w)?
            .ok_or_else(|| DgError::Invalid("empty word needs an object".into()))?;
        Ok(NcPoly::monomial(table.ring(), src, tgt, w, table.ring().one()))
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn src(&self) -> ObjId {
        self.src
    }

    pub fn tgt(&self) -> ObjId {
        self.tgt
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order (length, then lexicographic on ranks).
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Coefficient)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> Option<&Coefficient> {
        self.terms.get(w)
    }

    pub fn add_term(&mut self, w: Word, c: Coefficient) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn check_same_boundary(&self, other: &NcPoly) -> Result<()> {
        if self.src != other.src || self.tgt != other.tgt {
            return Err(DgError::Composability(format!(
                "cannot add morphisms {:?}->{:?} and {:?}->{:?}",
                self.src, self.tgt, other.src, other.tgt
            )));
        }
        if self.ring != other.ring {
            return Err(DgError::RingMismatch(self.ring.to_string(), other.ring.to_string()));
        }
        Ok(())
    }

    pub fn add(&self, other: &NcPoly) -> Result<NcPoly> {
        self.check_same_boundary(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &NcPoly) -> Result<NcPoly> {
        self.add(&other.neg())
    }

    pub fn add_assign(&mut self, other: &NcPoly) -> Result<()> {
        self.check_same_boundary(other)?;
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c.clone());
        }
        Ok(())
    }

    pub fn neg(&self) -> NcPoly {
        NcPoly {
            ring: self.ring,
            src: self.src,
            tgt: self.tgt,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &Coefficient) -> NcPoly {
        let mut out = NcPoly::zero(self.ring, self.src, self.tgt);
        for (w, d) in &self.terms {
            out.add_term(w.clone(), d.mul(c));
        }
        out
    }

    /// `self ∘ q`: first `q`, then `self`.
    pub fn compose(&self, q: &NcPoly) -> Result<NcPoly> {
        if q.tgt != self.src {
            return Err(DgError::Composability(format!(
                "target {:?} of right factor differs from source {:?} of left factor",
                q.tgt, self.src
            )));
        }
        if self.ring != q.ring {
            return Err(DgError::RingMismatch(self.ring.to_string(), q.ring.to_string()));
        }
        let mut out = NcPoly::zero(self.ring, q.src, self.tgt);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &q.terms {
                out.add_term(w1.concat(w2), c1.mul(c2));
            }
        }
        Ok(out)
    }

    /// Composes a chain given left to right, `ps[0] ∘ ps[1] ∘ …`.
    pub fn compose_all(ps: &[NcPoly]) -> Result<NcPoly> {
        let (last, rest) = ps
            .split_last()
            .ok_or_else(|| DgError::Invalid("empty composition".into()))?;
        let mut acc = last.clone();
        for p in rest.iter().rev() {
            acc = p.compose(&acc)?;
        }
        Ok(acc)
    }

    pub fn generators_used(&self) -> BTreeSet<GenId> {
        self.terms.keys().flat_map(|w| w.0.iter().copied()).collect()
    }

    pub fn contains_generator(&self, g: GenId) -> bool {
        self.terms.keys().any(|w| w.0.contains(&g))
    }

    pub fn max_word_len(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }

    /// Set of degrees of the words in the polynomial.
    pub fn degrees<T: GenTable + ?Sized>(&self, table: &T) -> BTreeSet<i64> {
        self.terms.keys().map(|w| w.degree(table)).collect()
    }

    /// The degree if homogeneous, `None` for the zero polynomial.
    pub fn homogeneous_degree<T: GenTable + ?Sized>(&self, table: &T) -> Result<Option<i64>> {
        let ds = self.degrees(table);
        match ds.len() {
            0 => Ok(None),
            1 => Ok(ds.into_iter().next()),
            _ => Err(DgError::Invalid(format!(
                "inhomogeneous polynomial with degrees {ds:?}"
            ))),
        }
    }

    /// Homogeneous component of the given degree.
    pub fn component<T: GenTable + ?Sized>(&self, table: &T, degree: i64) -> NcPoly {
        let mut out = NcPoly::zero(self.ring, self.src, self.tgt);
        for (w, c) in &self.terms {
            if w.degree(table) == degree {
                out.add_term(w.clone(), c.clone());
            }
        }
        out
    }

    /// Applies a multiplicative map: every letter is replaced by `image(letter)` and words
    /// are recomposed. `src`/`tgt` are the boundaries of the result.
    pub fn substitute<F>(&self, ring: Ring, src: ObjId, tgt: ObjId, mut image: F) -> Result<NcPoly>
    where
        F: FnMut(GenId) -> Result<NcPoly>,
    {
        let mut out = NcPoly::zero(ring, src, tgt);
        let mut cache: BTreeMap<GenId, NcPoly> = BTreeMap::new();
        for (w, c) in &self.terms {
            let c = convert_coefficient(c, ring)?;
            if w.is_empty() {
                if src != tgt {
                    return Err(DgError::Composability("identity term between distinct objects".into()));
                }
                out.add_term(Word::empty(), c);
                continue;
            }
            let mut acc: Option<NcPoly> = None;
            for g in w.0.iter().rev() {
                if !cache.contains_key(g) {
                    let img = image(*g)?;
                    cache.insert(*g, img);
                }
                let img = &cache[g];
                acc = Some(match acc {
                    None => img.clone(),
                    Some(a) => img.compose(&a)?,
                });
                if acc.as_ref().map(|a| a.is_zero()).unwrap_or(false) {
                    break;
                }
            }
            let acc = acc.expect("nonempty word");
            if acc.is_zero() {
                continue;
            }
            if acc.src != src || acc.tgt != tgt {
                return Err(DgError::Composability(format!(
                    "substituted word lands in {:?}->{:?}, expected {:?}->{:?}",
                    acc.src, acc.tgt, src, tgt
                )));
            }
            for (w2, c2) in acc.terms {
                out.add_term(w2, c2.mul(&c));
            }
        }
        Ok(out)
    }

    /// Renames letters and boundaries without changing coefficients.
    pub fn relabel<F>(&self, src: ObjId, tgt: ObjId, mut f: F) -> NcPoly
    where
        F: FnMut(GenId) -> GenId,
    {
        let mut out = NcPoly::zero(self.ring, src, tgt);
        for (w, c) in &self.terms {
            out.add_term(Word(w.0.iter().map(|g| f(*g)).collect()), c.clone());
        }
        out
    }

    /// Same polynomial with coefficients moved into another ring.
    pub fn with_ring(&self, ring: Ring) -> Result<NcPoly> {
        let mut out = NcPoly::zero(ring, self.src, self.tgt);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), convert_coefficient(c, ring)?);
        }
        Ok(out)
    }

    pub fn render<T: GenTable + ?Sized>(&self, table: &T) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let body = w.render(table, self.src);
            let neg = c.is_negative();
            let abs = if neg { c.neg() } else { c.clone() };
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if !abs.is_one() {
                s.push_str(&abs.to_string());
                s.push(' ');
            }
            s.push_str(&body);
        }
        s
    }
}

pub(crate) fn convert_coefficient(c: &Coefficient, ring: Ring) -> Result<Coefficient> {
    if c.ring() == ring {
        Ok(c.clone())
    } else {
        Coefficient::from_rational(ring, &c.to_rational())
    }
}

/// Source and target of a word, `None` for the empty word.
pub fn word_boundary<T: GenTable + ?Sized>(table: &T, w: &Word) -> Result<Option<(ObjId, ObjId)>> {
    let Some(first) = w.0.last() else {
        return Ok(None);
    };
    let src = table.gen_src(*first);
    let mut cur = table.gen_tgt(*first);
    for g in w.0.iter().rev().skip(1) {
        if table.gen_src(*g) != cur {
            return Err(DgError::Composability(format!(
                "{} cannot follow a morphism ending at {}",
                table.gen_name(*g),
                table.object_name(cur)
            )));
        }
        cur = table.gen_tgt(*g);
    }
    Ok(Some((src, cur)))
}

/// The graded Leibniz differential `d(fg) = df·g + (−1)^{|f|} f·dg`.
pub fn leibniz_d<T: GenTable + ?Sized>(p: &NcPoly, table: &T) -> Result<NcPoly> {
    let mut out = NcPoly::zero(p.ring, p.src, p.tgt);
    for (w, c) in &p.terms {
        let mut prefix_deg = 0i64;
        for (i, g) in w.0.iter().enumerate() {
            let dg = table
                .gen_d(*g)
                .ok_or_else(|| DgError::MissingDifferential(table.gen_name(*g).to_string()))?;
            if !dg.is_zero() {
                let sign = Coefficient::sign(p.ring, prefix_deg);
                let coef = c.mul(&sign);
                let left = &w.0[..i];
                let right = &w.0[i + 1..];
                for (dw, dc) in &dg.terms {
                    let mut v = Vec::with_capacity(left.len() + dw.len() + right.len());
                    v.extend_from_slice(left);
                    v.extend_from_slice(&dw.0);
                    v.extend_from_slice(right);
                    out.add_term(Word(v), coef.mul(dc));
                }
            }
            prefix_deg += table.gen_deg(*g);
        }
    }
    Ok(out)
}
