use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::linalg::rank;
use crate::algebra::{leibniz_d, Coefficient, GenTable, NcPoly, ObjId, Ring, Word};
use crate::dgcat::{hom_slice, DgFunctor, RewriteSystem, SemifreeDgCat};
use crate::error::{DgError, Result};

const CAVEAT: &str = "word-length truncation approximates the hom complex by a filtration piece; \
a degree is exact when no differential of a word in it or one degree below leaves the bound";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankRow {
    pub degree: i64,
    /// Words in this degree within the bound.
    pub slice: usize,
    pub cycles: usize,
    pub boundaries: usize,
    pub rank: usize,
    pub exact: bool,
}

/// Cohomology ranks of a truncated hom complex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankTable {
    pub source: String,
    pub target: String,
    pub window: (i64, i64),
    pub bound: usize,
    pub field: Ring,
    pub rows: Vec<RankRow>,
    /// Every degree in the window is exact.
    pub exact: bool,
    /// Enlarging the bound by one adds no words in the window or next to it.
    pub saturated: bool,
    pub caveat: String,
}

impl RankTable {
    pub fn ranks(&self) -> Vec<(i64, usize)> {
        self.rows.iter().map(|r| (r.degree, r.rank)).collect()
    }

    pub fn rank_in(&self, degree: i64) -> Option<usize> {
        self.rows.iter().find(|r| r.degree == degree).map(|r| r.rank)
    }

    pub fn same_ranks(&self, other: &RankTable) -> bool {
        self.ranks() == other.ranks()
    }
}

fn into_field(c: &Coefficient, field: Ring) -> Result<Coefficient> {
    if c.ring() == field {
        return Ok(c.clone());
    }
    match c.ring() {
        Ring::Integers | Ring::Rationals => Coefficient::from_rational(field, &c.to_rational()),
        r => Err(DgError::RingMismatch(r.to_string(), field.to_string())),
    }
}

fn d_word(cat: &SemifreeDgCat, relations: Option<&RewriteSystem>, x: ObjId, y: ObjId, w: &Word) -> Result<NcPoly> {
    let ring = cat.ring();
    let m = NcPoly::monomial(ring, x, y, w.clone(), ring.one());
    let d = leibniz_d(&m, cat)?;
    Ok(match relations {
        Some(r) => r.normal_form(&d),
        None => d,
    })
}

/// Ranks of `H^k(hom(X, Y))` for `k` in `window`, using words of length at most `bound`.
pub fn truncated_cohomology(
    cat: &SemifreeDgCat,
    relations: Option<&RewriteSystem>,
    x: ObjId,
    y: ObjId,
    window: (i64, i64),
    bound: usize,
    field: Ring,
) -> Result<RankTable> {
    if !field.is_field() {
        return Err(DgError::NotAField(field.to_string()));
    }
    let (lo, hi) = window;
    let slice = hom_slice(cat, relations, x, y, (lo - 1, hi + 1), bound);
    let wider = hom_slice(cat, relations, x, y, (lo - 1, hi + 1), bound + 1);
    let saturated = (lo - 1..=hi + 1).all(|k| slice.in_degree(k).len() == wider.in_degree(k).len());
    let mut d_rank = BTreeMap::new();
    let mut crosses = BTreeMap::new();
    for k in lo - 1..=hi {
        let mut columns: BTreeMap<Word, usize> = BTreeMap::new();
        let mut rows = Vec::new();
        let mut cross = false;
        for w in slice.in_degree(k) {
            let d = d_word(cat, relations, x, y, w)?;
            let mut row = Vec::new();
            for (v, c) in d.terms() {
                if v.len() > bound {
                    cross = true;
                }
                let n = columns.len();
                let j = *columns.entry(v.clone()).or_insert(n);
                row.push((j, into_field(c, field)?));
            }
            rows.push(row);
        }
        d_rank.insert(k, rank(field, &rows)?);
        crosses.insert(k, cross);
    }
    let rows: Vec<RankRow> = (lo..=hi)
        .map(|k| {
            let size = slice.in_degree(k).len();
            let cycles = size - d_rank[&k];
            let boundaries = d_rank[&(k - 1)];
            RankRow {
                degree: k,
                slice: size,
                cycles,
                boundaries,
                rank: cycles.saturating_sub(boundaries),
                exact: !crosses[&k] && !crosses[&(k - 1)],
            }
        })
        .collect();
    Ok(RankTable {
        source: cat.object_name(x).to_string(),
        target: cat.object_name(y).to_string(),
        window,
        bound,
        field,
        exact: rows.iter().all(|r| r.exact),
        rows,
        saturated,
        caveat: CAVEAT.to_string(),
    })
}

/// Source and target tables for one pair of source objects.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompatEntry {
    pub source_pair: (String, String),
    pub target_pair: (String, String),
    pub source: RankTable,
    pub target: RankTable,
    pub matches: bool,
}

/// Agreement of truncated cohomology along a functor; evidence for a quasi-equivalence, not a proof.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompatReport {
    pub entries: Vec<CompatEntry>,
    pub all_match: bool,
    pub note: String,
}

impl CompatReport {
    pub fn mismatches(&self) -> impl Iterator<Item = &CompatEntry> {
        self.entries.iter().filter(|e| !e.matches)
    }
}

pub fn functor_rank_compat(f: &DgFunctor, window: (i64, i64), bound: usize, field: Ring) -> Result<CompatReport> {
    let src = f.source.as_ref();
    let tgt = f.target.as_ref();
    let mut entries = Vec::new();
    for a in 0..src.object_count() {
        for b in 0..src.object_count() {
            let (a, b) = (ObjId(a as u32), ObjId(b as u32));
            let (fa, fb) = (f.obj_map[a.index()], f.obj_map[b.index()]);
            let s = truncated_cohomology(src, None, a, b, window, bound, field)?;
            let t = truncated_cohomology(tgt, f.relations.as_deref(), fa, fb, window, bound, field)?;
            entries.push(CompatEntry {
                source_pair: (src.object_name(a).to_string(), src.object_name(b).to_string()),
                target_pair: (tgt.object_name(fa).to_string(), tgt.object_name(fb).to_string()),
                matches: s.same_ranks(&t),
                source: s,
                target: t,
            });
        }
    }
    Ok(CompatReport {
        all_match: entries.iter().all(|e| e.matches),
        entries,
        note: "matching truncated ranks are evidence of a quasi-equivalence, not a proof".to_string(),
    })
}
