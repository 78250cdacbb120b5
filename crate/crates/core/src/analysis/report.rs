use super::cohomology::{CompatReport, RankTable};

fn flag(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl RankTable {
    pub fn to_markdown(&self) -> String {
        let mut s = format!(
            "### H*(hom({}, {})) over {}, window [{}, {}], bound {}\n\n",
            self.source, self.target, self.field, self.window.0, self.window.1, self.bound
        );
        s.push_str("| degree | words | cycles | boundaries | rank | exact |\n");
        s.push_str("|---:|---:|---:|---:|---:|:---:|\n");
        for r in &self.rows {
            s.push_str(&format!(
                "| {} | {} | {} | {} | {} | {} |\n",
                r.degree,
                r.slice,
                r.cycles,
                r.boundaries,
                r.rank,
                flag(r.exact)
            ));
        }
        s.push_str(&format!(
            "\nexact: {}, saturated: {}\n\nNote: {}.\n",
            flag(self.exact),
            flag(self.saturated),
            self.caveat
        ));
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("rank table serializes")
    }
}

impl CompatReport {
    pub fn to_markdown(&self) -> String {
        let mut s = String::from("| source | target | ranks (source) | ranks (target) | match |\n");
        s.push_str("|---|---|---|---|:---:|\n");
        let ranks = |t: &RankTable| {
            t.ranks()
                .iter()
                .map(|(d, r)| format!("{d}:{r}"))
                .collect::<Vec<_>>()
                .join(" ")
        };
        for e in &self.entries {
            s.push_str(&format!(
                "| hom({}, {}) | hom({}, {}) | {} | {} | {} |\n",
                e.source_pair.0,
                e.source_pair.1,
                e.target_pair.0,
                e.target_pair.1,
                ranks(&e.source),
                ranks(&e.target),
                flag(e.matches)
            ));
        }
        s.push_str(&format!("\nNote: {}.\n", self.note));
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
