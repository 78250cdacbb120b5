use crate::algebra::{leibniz_d, GenTable, NcPoly};
use crate::dgcat::{CriticalPair, RewriteSystem, SemifreeDgCat};
use crate::error::Result;

/// A semifree core together with a terminating rewrite system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationalDgCat {
    pub core: SemifreeDgCat,
    pub rules: RewriteSystem,
}

impl RelationalDgCat {
    /// Checks that the rules are compatible with `d` and that `d² = 0` modulo the rules.
    pub fn new(core: SemifreeDgCat, rules: RewriteSystem) -> Result<Self> {
        rules.check_differential(&core)?;
        rules.check_d_squared(&core)?;
        Ok(RelationalDgCat { core, rules })
    }

    pub fn normal_form(&self, p: &NcPoly) -> NcPoly {
        self.rules.normal_form(p)
    }

    pub fn d(&self, p: &NcPoly) -> Result<NcPoly> {
        Ok(self.normal_form(&leibniz_d(&self.normal_form(p), &self.core)?))
    }

    pub fn poly(&self, text: &str) -> Result<NcPoly> {
        Ok(self.normal_form(&self.core.poly(text)?))
    }

    pub fn render(&self, p: &NcPoly) -> String {
        p.render(&self.core)
    }

    /// Overlaps of length at most `max_len` whose reductions do not join.
    pub fn critical_pairs(&self, max_len: usize) -> Result<Vec<CriticalPair>> {
        self.rules.critical_pairs(&self.core, max_len)
    }

    pub fn generator_count(&self) -> usize {
        self.core.generator_count()
    }
}
