use std::collections::BTreeMap;

use crate::algebra::{leibniz_d, word_boundary, Coefficient, GenId, GenTable, NcPoly, Word};
use crate::error::{DgError, Result};

/// An oriented relation `lhs → rhs` on words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: NcPoly,
}

/// A terminating word-rewriting system under the length-lexicographic order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RewriteSystem {
    rules: Vec<Rule>,
}

/// An overlap whose two reductions disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalPair {
    pub overlap: Word,
    pub left: NcPoly,
    pub right: NcPoly,
}

impl RewriteSystem {
    pub fn new() -> Self {
        RewriteSystem { rules: Vec::new() }
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Adds a rule after checking that it strictly decreases the reduction order.
    pub fn add_rule<T: GenTable + ?Sized>(&mut self, table: &T, lhs: Word, rhs: NcPoly) -> Result<()> {
        let (s, t) = word_boundary(table, &lhs)?
            .ok_or_else(|| DgError::Invalid("rule with empty left side".into()))?;
        if rhs.src() != s || rhs.tgt() != t {
            return Err(DgError::Boundary {
                generator: lhs.render(table, s),
                detail: "rule sides have different boundaries".into(),
            });
        }
        if let Some((w, _)) = rhs.terms().find(|(w, _)| **w >= lhs) {
            return Err(DgError::Invalid(format!(
                "rule {} → … does not decrease: contains {}",
                lhs.render(table, s),
                w.render(table, s)
            )));
        }
        self.rules.push(Rule { lhs, rhs });
        Ok(())
    }

    fn find_match(&self, w: &Word) -> Option<(usize, usize)> {
        let letters = w.letters();
        for pos in 0..letters.len() {
            for (ri, r) in self.rules.iter().enumerate() {
                let l = r.lhs.letters();
                if pos + l.len() <= letters.len() && letters[pos..pos + l.len()] == *l {
                    return Some((pos, ri));
                }
            }
        }
        None
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        self.find_match(w).is_none()
    }

    /// True when some rule's left side is a prefix of `w`.
    pub fn has_prefix_redex(&self, w: &Word) -> bool {
        self.rules
            .iter()
            .any(|r| w.letters().starts_with(r.lhs.letters()))
    }

    fn rewrite_at(&self, w: &Word, pos: usize, rule: usize, c: &Coefficient, out: &mut NcPoly) {
        let r = &self.rules[rule];
        let letters = w.letters();
        let left = &letters[..pos];
        let right = &letters[pos + r.lhs.len()..];
        for (rw, rc) in r.rhs.terms() {
            let mut v = Vec::with_capacity(left.len() + rw.len() + right.len());
            v.extend_from_slice(left);
            v.extend_from_slice(rw.letters());
            v.extend_from_slice(right);
            out.add_term(Word(v), c.mul(rc));
        }
    }

    /// The unique normal form (the system terminates; confluence is checked separately).
    pub fn normal_form(&self, p: &NcPoly) -> NcPoly {
        if self.rules.is_empty() {
            return p.clone();
        }
        let mut done = NcPoly::zero(p.ring(), p.src(), p.tgt());
        let mut pending: BTreeMap<Word, Coefficient> = p.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
        // Largest words first: rewriting only produces smaller words.
        while let Some((w, c)) = pending.pop_last() {
            match self.find_match(&w) {
                None => done.add_term(w, c),
                Some((pos, ri)) => {
                    let mut tmp = NcPoly::zero(p.ring(), p.src(), p.tgt());
                    self.rewrite_at(&w, pos, ri, &c, &mut tmp);
                    for (w2, c2) in tmp.terms() {
                        let e = pending.entry(w2.clone()).or_insert_with(|| p.ring().zero());
                        *e = e.add(c2);
                        if e.is_zero() {
                            pending.remove(w2);
                        }
                    }
                }
            }
        }
        done
    }

    /// All overlaps of left sides with total length at most `max_len` that fail to join.
    pub fn critical_pairs<T: GenTable + ?Sized>(&self, table: &T, max_len: usize) -> Result<Vec<CriticalPair>> {
        let mut bad = Vec::new();
        for (i, r1) in self.rules.iter().enumerate() {
            for (j, r2) in self.rules.iter().enumerate() {
                let a = r1.lhs.letters();
                let b = r2.lhs.letters();
                // proper overlaps: suffix of a equals prefix of b
                for k in 1..a.len().min(b.len()) + 1 {
                    if k == a.len() && k == b.len() {
                        continue;
                    }
                    if a[a.len() - k..] != b[..k] {
                        continue;
                    }
                    let mut v = a.to_vec();
                    v.extend_from_slice(&b[k..]);
                    if v.len() > max_len || (k == b.len()) {
                        continue;
                    }
                    let w = Word(v);
                    self.join(table, &w, (0, i), (a.len() - k, j), &mut bad)?;
                }
                // inclusions: b strictly inside a
                if i != j && b.len() < a.len() {
                    for pos in 0..=a.len() - b.len() {
                        if a[pos..pos + b.len()] == *b && a.len() <= max_len {
                            self.join(table, &r1.lhs, (0, i), (pos, j), &mut bad)?;
                        }
                    }
                }
            }
        }
        Ok(bad)
    }

    fn join<T: GenTable + ?Sized>(
        &self,
        table: &T,
        w: &Word,
        first: (usize, usize),
        second: (usize, usize),
        bad: &mut Vec<CriticalPair>,
    ) -> Result<()> {
        let (s, t) = word_boundary(table, w)?.expect("nonempty overlap");
        let one = table.ring().one();
        let mut l = NcPoly::zero(table.ring(), s, t);
        self.rewrite_at(w, first.0, first.1, &one, &mut l);
        let mut r = NcPoly::zero(table.ring(), s, t);
        self.rewrite_at(w, second.0, second.1, &one, &mut r);
        let (l, r) = (self.normal_form(&l), self.normal_form(&r));
        if l != r {
            bad.push(CriticalPair {
                overlap: w.clone(),
                left: l,
                right: r,
            });
        }
        Ok(())
    }

    /// Checks that every rule is compatible with the differential: `d(lhs) ≡ d(rhs)`.
    pub fn check_differential<T: GenTable + ?Sized>(&self, table: &T) -> Result<()> {
        for r in &self.rules {
            let (s, t) = word_boundary(table, &r.lhs)?.expect("nonempty lhs");
            let lhs = NcPoly::monomial(table.ring(), s, t, r.lhs.clone(), table.ring().one());
            let dl = self.normal_form(&leibniz_d(&lhs, table)?);
            let dr = self.normal_form(&leibniz_d(&r.rhs, table)?);
            if dl != dr {
                let diff = dl.sub(&dr)?;
                return Err(DgError::DSquaredNonzero {
                    generator: format!("relation {}", r.lhs.render(table, s)),
                    residual: diff.render(table),
                });
            }
        }
        Ok(())
    }

    /// d² = 0 modulo the relations.
    pub fn check_d_squared<T: GenTable + ?Sized>(&self, table: &T) -> Result<()> {
        for i in 0..table.generator_count() {
            let g = GenId(i as u32);
            let d = table.gen_d(g).expect("generator");
            let dd = self.normal_form(&leibniz_d(&self.normal_form(d), table)?);
            if !dd.is_zero() {
                return Err(DgError::DSquaredNonzero {
                    generator: table.gen_name(g).to_string(),
                    residual: dd.render(table),
                });
            }
        }
        Ok(())
    }

    /// Keeps rules whose letters all survive, renaming them through `map`.
    pub fn filter_map<F>(&self, map: F) -> RewriteSystem
    where
        F: FnMut(&Rule) -> Option<Rule>,
    {
        RewriteSystem {
            rules: self.rules.iter().filter_map(map).collect(),
        }
    }
}
