mod common;

use std::sync::Arc;

use proptest::prelude::*;
use semifree::analysis::{presentation_equal, truncated_cohomology, Renaming};
use semifree::fukaya::d12;
use semifree::plumbing::random::{random_plumbing, random_sphere_plumbing};
use semifree::plumbing::{build_wrapped, normalize, object_name, regauge, sigma};
use semifree::reduce::rename;
use semifree::twisted::{koszul_sign, shift_presentation};
use semifree::{Coefficient, GenTable, NcPoly, Ring, SemifreeDgCat};

fn ring(i: usize) -> Ring {
    common::RINGS[i % 3]
}

/// The alternating word of length `k` in `x`, `y` that starts at `L1` or `L2`.
fn alternating(cat: &SemifreeDgCat, k: usize, from_l1: bool) -> NcPoly {
    let (start, other) = if from_l1 { ("L1", "L2") } else { ("L2", "L1") };
    if k == 0 {
        return cat.identity(cat.obj(start).unwrap());
    }
    let letters: Vec<&str> = (0..k)
        .map(|i| if (i % 2 == 0) == from_l1 { "x" } else { "y" })
        .collect();
    let text: Vec<&str> = letters.into_iter().rev().collect();
    let end = if k % 2 == 0 { start } else { other };
    cat.poly_between(&text.join("∘"), start, end).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn plumbing_differentials_square_to_zero(seed in any::<u64>(), n in 2i64..=6, r in 0usize..3) {
        let data = random_plumbing(&mut common::rng(seed), n, 5, 8, ring(r));
        let cat = build_wrapped(&data).unwrap();
        prop_assert!(cat.audit_d_squared().is_ok());
        prop_assert_eq!(cat.object_count(), data.vertices.len());
    }

    #[test]
    fn sigma_ignores_tree_gauges(seed in any::<u64>(), n in 2i64..=6, delta in prop::collection::vec(-5i64..=5, 5)) {
        let data = random_plumbing(&mut common::rng(seed), n, 5, 8, Ring::Integers);
        let delta = &delta[..data.vertices.len()];
        let moved = regauge(&data, delta).unwrap();
        prop_assert_eq!(sigma(&data).unwrap(), sigma(&moved).unwrap());
    }

    #[test]
    fn normal_form_is_idempotent(seed in any::<u64>(), n in 2i64..=6, r in 0usize..3) {
        let data = random_plumbing(&mut common::rng(seed), n, 5, 8, ring(r));
        let once = normalize(&data).unwrap();
        prop_assert_eq!(&normalize(&once).unwrap(), &once);
        prop_assert_eq!(once.first_betti_number().unwrap(), data.first_betti_number().unwrap());
        let ends = once.endpoints().unwrap();
        prop_assert!(ends.iter().all(|(s, t)| s <= t));
        prop_assert!(build_wrapped(&once).unwrap().audit_d_squared().is_ok());
    }

    #[test]
    fn presentation_equality_is_an_equivalence(seed in any::<u64>(), n in 2i64..=5) {
        let data = random_plumbing(&mut common::rng(seed), n, 4, 5, Ring::Integers);
        let a = Arc::new(build_wrapped(&data).unwrap());
        let prime = |s: &String| format!("{s}'");
        let objs: Vec<(String, String)> = a.objects().iter().map(|o| (o.clone(), prime(o))).collect();
        let gens: Vec<(String, String)> = a.generators().iter().map(|g| (g.name.clone(), prime(&g.name))).collect();
        let o: Vec<(&str, &str)> = objs.iter().map(|(x, y)| (x.as_str(), y.as_str())).collect();
        let g: Vec<(&str, &str)> = gens.iter().map(|(x, y)| (x.as_str(), y.as_str())).collect();
        let b = rename(&a, &o, &g).unwrap().cat;
        let ab = Renaming {
            objects: objs.iter().cloned().collect(),
            generators: gens.iter().map(|(x, y)| (x.clone(), (y.clone(), 1))).collect(),
        };
        prop_assert!(presentation_equal(&a, &a, &Renaming::identity(&a)).is_ok());
        prop_assert!(presentation_equal(&a, &b, &ab).is_ok());
        prop_assert!(presentation_equal(&b, &a, &ab.inverse()).is_ok());
        let back = ab.then(&ab.inverse()).unwrap();
        prop_assert_eq!(&back, &Renaming::identity(&a));
        prop_assert!(presentation_equal(&a, &a, &back).is_ok());
        if let Some(g) = a.generators().iter().find(|g| !g.d.is_zero()) {
            let mut flipped = ab.clone();
            flipped.generators.get_mut(&g.name).unwrap().1 = -1;
            prop_assert!(presentation_equal(&a, &b, &flipped).is_err());
        }
    }

    #[test]
    fn shifts_respect_composition_and_differentials(
        n in 2i64..=5,
        m1 in -3i64..=3,
        m2 in -3i64..=3,
        k1 in 0usize..5,
        k2 in 0usize..5,
        from_l1 in any::<bool>(),
    ) {
        let cat = Arc::new(d12(n, Ring::Integers, false).unwrap());
        let sp = shift_presentation(&cat, &[("L1", m1), ("L2", m2)]).unwrap();
        let q = alternating(&cat, k2, from_l1);
        let mid_l1 = (k2 % 2 == 0) == from_l1;
        let p = alternating(&cat, k1, mid_l1);
        let pq = p.compose(&q).unwrap();
        let shift = |o: semifree::ObjId| sp.shifts[o.index()];
        let deg = p.homogeneous_degree(cat.as_ref()).unwrap().unwrap_or(0);
        let koszul = koszul_sign(deg, shift(p.src()), shift(q.src()));
        let tp = sp.transport(&p).unwrap().compose(&sp.transport(&q).unwrap()).unwrap();
        prop_assert_eq!(sp.transport(&pq).unwrap(), tp.scale(&Coefficient::from_i64(Ring::Integers, koszul)));
        let s = Coefficient::sign(Ring::Integers, shift(pq.src()) - shift(pq.tgt()));
        let lhs = sp.cat.d(&sp.transport(&pq).unwrap()).unwrap();
        let rhs = sp.transport(&cat.d(&pq).unwrap()).unwrap().scale(&s);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn ranks_agree_over_rationals_and_a_large_prime(seed in any::<u64>(), n in 3i64..=5) {
        let data = random_sphere_plumbing(&mut common::rng(seed), n, 3, 3, Ring::Integers);
        let cat = build_wrapped(&data).unwrap();
        let v = cat.obj(&object_name(&data.vertices[0].id)).unwrap();
        let q = truncated_cohomology(&cat, None, v, v, (-4, 0), 4, Ring::Rationals).unwrap();
        let p = truncated_cohomology(&cat, None, v, v, (-4, 0), 4, Ring::IntegersMod(10007)).unwrap();
        prop_assert!(q.same_ranks(&p));
    }
}
