//! Benchmark fixtures for the semifree engine.

use std::sync::Arc;

use semifree::constructions::PushoutSpan;
use semifree::fukaya::{a1, sphere, BuildOptions};
use semifree::{DgFunctor, Result, Ring};

/// `S(2,m) → A1` sending every `a_i` and `inv(a_i)` to the identity, used as both legs.
pub fn sphere_collapse_span(m: usize) -> Result<PushoutSpan> {
    let s = Arc::new(sphere(2, m, 0, &BuildOptions::default())?);
    let a = Arc::new(a1(Ring::Integers, "L")?);
    let mut images = Vec::new();
    for i in 1..=m {
        images.push((format!("a_{i}"), "1_{L}".to_string()));
        images.push((format!("inv(a_{i})"), "1_{L}".to_string()));
    }
    let refs: Vec<(&str, &str)> = images.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let f = DgFunctor::from_text(s, a, &[("L", "L")], &refs)?;
    PushoutSpan::new(f.clone(), f)
}
