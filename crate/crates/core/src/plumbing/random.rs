//! Random plumbing data and graded quivers for property checks and benchmarks.

use rand::Rng;

use super::{Arrow, GradedArrow, GradedQuiver, Manifold, PlumbingData, Vertex};
use crate::algebra::Ring;

/// Up to `max_vertices` vertices (at least one) and `max_arrows` arrows, gauges in `[−3, 3]`.
/// Two-dimensional data may carry surfaces of genus at most 2 and disks; higher ones spheres and disks.
pub fn random_plumbing<R: Rng>(rng: &mut R, n: i64, max_vertices: usize, max_arrows: usize, ring: Ring) -> PlumbingData {
    let nv = rng.gen_range(1..=max_vertices.max(1));
    let ne = rng.gen_range(0..=max_arrows);
    let vertices = (0..nv)
        .map(|i| {
            let manifold = match rng.gen_range(0..6) {
                0 => Manifold::Disk,
                1 | 2 if n == 2 => Manifold::Surface {
                    genus: rng.gen_range(0..3),
                },
                _ => Manifold::Sphere,
            };
            Vertex {
                id: format!("v{i}"),
                manifold,
            }
        })
        .collect();
    let arrows = (0..ne)
        .map(|i| Arrow {
            id: format!("e{i}"),
            src: format!("v{}", rng.gen_range(0..nv)),
            tgt: format!("v{}", rng.gen_range(0..nv)),
            sign: if rng.gen_bool(0.5) { 1 } else { -1 },
            d: rng.gen_range(-3..=3),
        })
        .collect();
    PlumbingData {
        n,
        vertices,
        arrows,
        coefficients: ring,
    }
}

/// Sphere vertices only.
pub fn random_sphere_plumbing<R: Rng>(rng: &mut R, n: i64, max_vertices: usize, max_arrows: usize, ring: Ring) -> PlumbingData {
    let mut data = random_plumbing(rng, n, max_vertices, max_arrows, ring);
    for v in &mut data.vertices {
        v.manifold = Manifold::Sphere;
    }
    data
}

pub fn random_graded_quiver<R: Rng>(rng: &mut R, max_vertices: usize, max_arrows: usize, q_range: i64) -> GradedQuiver {
    let nv = rng.gen_range(1..=max_vertices.max(1));
    let ne = rng.gen_range(0..=max_arrows);
    GradedQuiver {
        vertices: (0..nv).map(|i| format!("v{i}")).collect(),
        arrows: (0..ne)
            .map(|i| GradedArrow {
                id: format!("e{i}"),
                src: format!("v{}", rng.gen_range(0..nv)),
                tgt: format!("v{}", rng.gen_range(0..nv)),
                q: rng.gen_range(-q_range..=q_range),
            })
            .collect(),
    }
}

/// A random subset of the vertex ids.
pub fn random_subset<R: Rng>(rng: &mut R, data: &PlumbingData) -> Vec<String> {
    data.vertices
        .iter()
        .filter(|_| rng.gen_bool(0.5))
        .map(|v| v.id.clone())
        .collect()
}
