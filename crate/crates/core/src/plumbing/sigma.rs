use std::collections::VecDeque;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use super::PlumbingData;
use crate::error::Result;

/// The class in `H¹(Q;ℤ)` of the arrow integers, in the cycle basis of a spanning forest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradingClass {
    /// Arrow ids of the spanning forest.
    pub tree: Vec<String>,
    /// Each basis loop as `(arrow id, traversed forwards)`.
    pub loops: Vec<Vec<(String, bool)>>,
    pub coordinates: Vec<i64>,
}

/// Arrow indices sorted by `(src, tgt, id)`.
pub(crate) fn arrow_order(data: &PlumbingData, ends: &[(usize, usize)]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..ends.len()).collect();
    order.sort_by(|a, b| (ends[*a], &data.arrows[*a].id).cmp(&(ends[*b], &data.arrows[*b].id)));
    order
}

/// Forest arrows chosen greedily in [`arrow_order`], and the remaining arrows.
pub(crate) fn spanning_forest(data: &PlumbingData) -> Result<(Vec<usize>, Vec<usize>)> {
    let ends = data.endpoints()?;
    let mut uf = UnionFind::<usize>::new(data.vertices.len());
    let (mut tree, mut rest) = (Vec::new(), Vec::new());
    for e in arrow_order(data, &ends) {
        let (s, t) = ends[e];
        if uf.union(s, t) {
            tree.push(e);
        } else {
            rest.push(e);
        }
    }
    Ok((tree, rest))
}

/// Path from `from` to `to` along the forest, as `(arrow, forwards)`.
fn tree_path(ends: &[(usize, usize)], tree: &[usize], vertices: usize, from: usize, to: usize) -> Vec<(usize, bool)> {
    let mut adj: Vec<Vec<(usize, usize, bool)>> = vec![Vec::new(); vertices];
    for &e in tree {
        let (s, t) = ends[e];
        adj[s].push((t, e, true));
        adj[t].push((s, e, false));
    }
    let mut prev: Vec<Option<(usize, usize, bool)>> = vec![None; vertices];
    let mut seen = vec![false; vertices];
    let mut queue = VecDeque::from([from]);
    seen[from] = true;
    while let Some(v) = queue.pop_front() {
        if v == to {
            break;
        }
        for &(w, e, fwd) in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                prev[w] = Some((v, e, fwd));
                queue.push_back(w);
            }
        }
    }
    let mut path = Vec::new();
    let mut at = to;
    while at != from {
        let (p, e, fwd) = prev[at].expect("endpoints of a non-forest arrow are connected");
        path.push((e, fwd));
        at = p;
    }
    path.reverse();
    path
}

/// Coordinates `cᵢ = ∑ ±d_e` over the fundamental loops; `+` when an arrow is traversed forwards.
pub fn sigma(data: &PlumbingData) -> Result<GradingClass> {
    let ends = data.endpoints()?;
    let (tree, rest) = spanning_forest(data)?;
    let mut loops = Vec::new();
    let mut coordinates = Vec::new();
    for e in rest {
        let (s, t) = ends[e];
        let mut lp = vec![(e, true)];
        lp.extend(tree_path(&ends, &tree, data.vertices.len(), t, s));
        let c = lp
            .iter()
            .map(|(a, fwd)| if *fwd { data.arrows[*a].d } else { -data.arrows[*a].d })
            .sum();
        coordinates.push(c);
        loops.push(lp.into_iter().map(|(a, fwd)| (data.arrows[a].id.clone(), fwd)).collect());
    }
    Ok(GradingClass {
        tree: tree.into_iter().map(|e| data.arrows[e].id.clone()).collect(),
        loops,
        coordinates,
    })
}

/// `d_e ↦ d_e + δ_src − δ_tgt`.
pub fn regauge(data: &PlumbingData, delta: &[i64]) -> Result<PlumbingData> {
    let ends = data.endpoints()?;
    let mut out = data.clone();
    for (a, (s, t)) in out.arrows.iter_mut().zip(ends) {
        a.d += delta[s] - delta[t];
    }
    Ok(out)
}
