use std::collections::BTreeMap;

use serde::Serialize;

use super::rewrite::RewriteSystem;
use crate::algebra::{GenId, GenTable, ObjId, Word};

/// All composable words `X → Y` in a degree window up to a length bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomBasisSlice {
    pub src: ObjId,
    pub tgt: ObjId,
    pub window: (i64, i64),
    pub bound: usize,
    #[serde(skip)]
    pub words: BTreeMap<i64, Vec<Word>>,
}

impl HomBasisSlice {
    pub fn in_degree(&self, d: i64) -> &[Word] {
        self.words.get(&d).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn total(&self) -> usize {
        self.words.values().map(|v| v.len()).sum()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words.values().any(|v| v.contains(w))
    }
}

/// Exhaustive enumeration; with relations only normal words are listed.
pub fn hom_slice<T: GenTable + ?Sized>(
    table: &T,
    relations: Option<&RewriteSystem>,
    x: ObjId,
    y: ObjId,
    window: (i64, i64),
    bound: usize,
) -> HomBasisSlice {
    let mut by_src: Vec<Vec<GenId>> = vec![Vec::new(); table.object_count()];
    for i in 0..table.generator_count() {
        let g = GenId(i as u32);
        by_src[table.gen_src(g).index()].push(g);
    }
    let mut words: BTreeMap<i64, Vec<Word>> = BTreeMap::new();
    // Words are grown on the left, so each stack entry ends at `at`.
    let mut stack: Vec<(Vec<GenId>, ObjId, i64)> = vec![(Vec::new(), x, 0)];
    while let Some((w, at, deg)) = stack.pop() {
        if at == y && deg >= window.0 && deg <= window.1 {
            words.entry(deg).or_default().push(Word(w.clone()));
        }
        if w.len() == bound {
            continue;
        }
        for g in &by_src[at.index()] {
            let mut v = Vec::with_capacity(w.len() + 1);
            v.push(*g);
            v.extend_from_slice(&w);
            let nw = Word(v);
            if let Some(r) = relations {
                if r.has_prefix_redex(&nw) {
                    continue;
                }
            }
            stack.push((nw.0, table.gen_tgt(*g), deg + table.gen_deg(*g)));
        }
    }
    for v in words.values_mut() {
        v.sort();
    }
    HomBasisSlice {
        src: x,
        tgt: y,
        window,
        bound,
        words,
    }
}
