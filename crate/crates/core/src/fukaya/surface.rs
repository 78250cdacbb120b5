use std::fmt;
use std::sync::Arc;

use super::{sphere, surface, BuildOptions};
use crate::algebra::{GenId, GenTable, NcPoly, Ring, Word};
use crate::constructions::RelationalDgCat;
use crate::dgcat::{CatBuilder, DgFunctor, RewriteSystem, SemifreeDgCat};
use crate::error::{DgError, Result};

/// A reduced word in a free group, letters written left to right as composed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FreeWord(Vec<(String, bool)>);

impl FreeWord {
    pub fn letter(name: &str) -> Self {
        FreeWord(vec![(name.to_string(), false)])
    }

    pub fn one() -> Self {
        FreeWord(Vec::new())
    }

    pub fn inverse(&self) -> Self {
        FreeWord(self.0.iter().rev().map(|(n, i)| (n.clone(), !i)).collect())
    }

    pub fn mul(&self, other: &FreeWord) -> Self {
        let mut out = self.0.clone();
        for (n, i) in &other.0 {
            match out.last() {
                Some((m, j)) if m == n && j != i => {
                    out.pop();
                }
                _ => out.push((n.clone(), *i)),
            }
        }
        FreeWord(out)
    }

    pub fn product(ws: &[FreeWord]) -> Self {
        ws.iter().fold(FreeWord::one(), |acc, w| acc.mul(w))
    }

    /// `[a,b] = a⁻¹b⁻¹ab`.
    pub fn commutator(a: &FreeWord, b: &FreeWord) -> Self {
        FreeWord::product(&[a.inverse(), b.inverse(), a.clone(), b.clone()])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Reads a word in the generators `x` and `inv(x)`.
    pub fn from_word<T: GenTable + ?Sized>(table: &T, w: &Word) -> Self {
        let letters = w.letters().iter().map(|g| {
            let n = table.gen_name(*g);
            match n.strip_prefix("inv(").and_then(|r| r.strip_suffix(')')) {
                Some(base) => FreeWord(vec![(base.to_string(), true)]),
                None => FreeWord::letter(n),
            }
        });
        letters.fold(FreeWord::one(), |acc, l| acc.mul(&l))
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(n, i)| if *i { format!("{n}^-1") } else { n.clone() })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// The quotient of the localized surface model with `γⱼ = h = 0` and `δⱼ = [αⱼ,βⱼ]`.
///
/// The relation `a_m⋯a₁ = ∏[αⱼ,βⱼ]` is solved for `a_m`, which leaves free-group rules.
#[derive(Debug, Clone)]
pub struct SurfaceRelationForm {
    pub genus: usize,
    pub punctures: usize,
    pub source: Arc<SemifreeDgCat>,
    pub rel: RelationalDgCat,
    pub quotient: DgFunctor,
    /// `a_m⋯a₁` and `[α_g,β_g]⋯[α₁,β₁]` as free-group words.
    pub lhs: FreeWord,
    pub rhs: FreeWord,
}

impl SurfaceRelationForm {
    pub fn relation_text(&self) -> String {
        format!("{} = {}", self.lhs, self.rhs)
    }

    /// Both sides of the relation, mapped and rewritten, as polynomials in the quotient.
    pub fn sides(&self) -> Result<(NcPoly, NcPoly)> {
        let s = self.source.as_ref();
        let a: Vec<NcPoly> = (1..=self.punctures)
            .rev()
            .map(|i| s.g(&format!("a_{i}")))
            .collect::<Result<_>>()?;
        let l = s.obj("L")?;
        let lhs = self.quotient.apply(&compose_or_one(s.ring(), l, &a)?)?;
        let d: Vec<NcPoly> = (1..=self.genus)
            .rev()
            .map(|j| s.g(&format!("delta_{j}")))
            .collect::<Result<_>>()?;
        let rhs = self.quotient.apply(&compose_or_one(s.ring(), l, &d)?)?;
        Ok((lhs, rhs))
    }

    /// Checks the relation by rewriting and against the free-group oracle.
    pub fn verify(&self) -> Result<()> {
        let (l, r) = self.sides()?;
        if l != r {
            return Err(DgError::Witness(format!(
                "relation fails: {} vs {}",
                self.rel.render(&l),
                self.rel.render(&r)
            )));
        }
        let words: Vec<&Word> = l.terms().map(|(w, _)| w).collect();
        let got = match words.as_slice() {
            [w] => FreeWord::from_word(&self.rel.core, w),
            _ => return Err(DgError::Witness(format!("not a monomial: {}", self.rel.render(&l)))),
        };
        if got != self.rhs {
            return Err(DgError::Witness(format!("free-group mismatch: {got} vs {}", self.rhs)));
        }
        Ok(())
    }
}

fn compose_or_one(ring: Ring, l: crate::algebra::ObjId, ps: &[NcPoly]) -> Result<NcPoly> {
    if ps.is_empty() {
        Ok(NcPoly::identity(ring, l))
    } else {
        NcPoly::compose_all(ps)
    }
}

fn word(ids: &[GenId]) -> Word {
    Word(ids.to_vec())
}

/// Builds the relation form of the localized `M(g,m)`; `g = 0` uses `S(2,m)`.
pub fn surface_relation_form(g: usize, m: usize, ring: Ring) -> Result<SurfaceRelationForm> {
    if m == 0 {
        return Err(DgError::Invalid("needs at least one puncture".into()));
    }
    let opts = BuildOptions::with_ring(ring);
    let source = Arc::new(if g == 0 { sphere(2, m, 0, &opts)? } else { surface(g, m, &opts)? });
    let mut b = CatBuilder::new(ring);
    let l = b.object("L")?;
    let mut letters: Vec<String> = Vec::new();
    for j in 1..=g {
        letters.push(format!("alpha_{j}"));
        letters.push(format!("beta_{j}"));
    }
    for i in 1..m {
        letters.push(format!("a_{i}"));
    }
    let mut pairs = Vec::new();
    for x in &letters {
        let gx = b.closed(x, l, l, 0)?;
        let gi = b.closed(&format!("inv({x})"), l, l, 0)?;
        pairs.push((gx, gi));
    }
    b.provenance("relation_form", format!("M({g},{m}) with gamma = h = 0, delta = [alpha,beta]"));
    let core = b.build()?;
    let mut rules = RewriteSystem::new();
    for (x, i) in &pairs {
        rules.add_rule(&core, word(&[*x, *i]), core.identity(l))?;
        rules.add_rule(&core, word(&[*i, *x]), core.identity(l))?;
    }
    let rel = RelationalDgCat::new(core, rules)?;

    let comm = |j: usize| format!("inv(alpha_{j})∘inv(beta_{j})∘alpha_{j}∘beta_{j}");
    let comm_inv = |j: usize| format!("inv(beta_{j})∘inv(alpha_{j})∘beta_{j}∘alpha_{j}");
    let join = |parts: Vec<String>| if parts.is_empty() { "1_{L}".to_string() } else { parts.join("∘") };
    let mut am: Vec<String> = (1..=g).rev().map(comm).collect();
    am.extend((1..m).map(|i| format!("inv(a_{i})")));
    let mut am_inv: Vec<String> = (1..m).rev().map(|i| format!("a_{i}")).collect();
    am_inv.extend((1..=g).map(comm_inv));
    let (am, am_inv) = (join(am), join(am_inv));

    let mut images: Vec<(String, String)> = Vec::new();
    for x in &letters {
        images.push((x.clone(), x.clone()));
        images.push((format!("inv({x})"), format!("inv({x})")));
    }
    for j in 1..=g {
        images.push((format!("delta_{j}"), comm(j)));
    }
    images.push((format!("a_{m}"), am));
    images.push((format!("inv(a_{m})"), am_inv));
    let refs: Vec<(&str, &str)> = images.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let target = Arc::new(rel.core.clone());
    let quotient = DgFunctor::from_text(source.clone(), target, &[("L", "L")], &refs)?
        .with_relations(Arc::new(rel.rules.clone()));
    quotient.validate()?;

    let lhs = FreeWord::product(&(1..=m).rev().map(|i| FreeWord::letter(&format!("a_{i}"))).collect::<Vec<_>>());
    let rhs = FreeWord::product(
        &(1..=g)
            .rev()
            .map(|j| {
                FreeWord::commutator(
                    &FreeWord::letter(&format!("alpha_{j}")),
                    &FreeWord::letter(&format!("beta_{j}")),
                )
            })
            .collect::<Vec<_>>(),
    );
    let form = SurfaceRelationForm {
        genus: g,
        punctures: m,
        source,
        rel,
        quotient,
        lhs,
        rhs,
    };
    form.verify()?;
    Ok(form)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_words() {
        let a = FreeWord::letter("a");
        let b = FreeWord::letter("b");
        assert!(a.mul(&a.inverse()).is_empty());
        assert_eq!(FreeWord::commutator(&a, &b).to_string(), "a^-1 b^-1 a b");
        assert!(FreeWord::commutator(&a, &a).is_empty());
    }

    #[test]
    fn torus_with_one_puncture() {
        let f = surface_relation_form(1, 1, Ring::Integers).unwrap();
        assert_eq!(f.relation_text(), "a_1 = alpha_1^-1 beta_1^-1 alpha_1 beta_1");
        assert_eq!(f.quotient.image_text("a_1").unwrap(), "inv(alpha_1)∘inv(beta_1)∘alpha_1∘beta_1");
        assert_eq!(f.quotient.image_text("gamma_1").unwrap(), "0");
    }

    #[test]
    fn sphere_case() {
        let f = surface_relation_form(0, 3, Ring::Integers).unwrap();
        assert_eq!(f.relation_text(), "a_3 a_2 a_1 = 1");
        let f = surface_relation_form(0, 1, Ring::Integers).unwrap();
        assert_eq!(f.quotient.image_text("a_1").unwrap(), "1_{L}");
    }

    #[test]
    fn small_surfaces() {
        for g in 1..3 {
            for m in 1..3 {
                let f = surface_relation_form(g, m, Ring::Integers).unwrap();
                assert_eq!(f.lhs.len(), m);
                assert_eq!(f.rhs.len(), 4 * g);
                assert!(f.rel.critical_pairs(3).unwrap().is_empty());
            }
        }
    }
}
