#![allow(dead_code)]

use std::fmt::Display;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use semifree::analysis::{presentation_equal, truncated_cohomology, Renaming};
use semifree::constructions::{colimit, hocolim, localize, localize_morphisms, HocolimOptions, PushoutSpan};
use semifree::fukaya::{
    a1, a2, b01, build, c, d01, d12, d12_inclusion, d12_raw, one_plus_xy_witness, sphere, surface,
    surface_relation_form, BuildOptions, D12Side, ModelId,
};
use semifree::plumbing::{
    build_wrapped, build_wrapped_reordered, edge_flip_witness, ginzburg_witness, regauge, sigma,
    sign_gauge_witness,
};
use semifree::plumbing::random::{random_graded_quiver, random_plumbing, random_subset};
use semifree::reduce::{change_basis, strictify_t};
use semifree::twisted::{alpha2, cone_extend, e12};
use semifree::{Coefficient, DgFunctor, NcPoly, Ring, SemifreeDgCat};

pub type Outcome = std::result::Result<String, String>;

pub const RINGS: [Ring; 3] = [Ring::Integers, Ring::Rationals, Ring::IntegersMod(7)];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn ctx<E: Display>(what: impl Display) -> impl FnOnce(E) -> String {
    move |e| format!("{what}: {e}")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

pub fn renaming(objects: &[(&str, &str)], generators: &[(&str, &str, i64)]) -> Renaming {
    Renaming {
        objects: objects.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
        generators: generators.iter().map(|(a, b, s)| (a.to_string(), (b.to_string(), *s))).collect(),
    }
}

pub fn expect_d(cat: &SemifreeDgCat, generator: &str, expected: &str) -> std::result::Result<(), String> {
    let g = cat.gen(generator).map_err(|e| e.to_string())?;
    let got = &cat.generator(g).d;
    let want = if expected == "0" {
        cat.zero(got.src(), got.tgt())
    } else {
        cat.poly(expected).map_err(ctx(format!("parse {expected}")))?
    };
    ensure(*got == want, || format!("d({generator}) = {}, expected {expected}", cat.render(got)))
}

pub fn expect_deg(cat: &SemifreeDgCat, generator: &str, deg: i64) -> std::result::Result<(), String> {
    let g = cat.gen(generator).map_err(|e| e.to_string())?;
    let got = cat.generator(g).deg;
    ensure(got == deg, || format!("|{generator}| = {got}, expected {deg}"))
}

// d² audit

fn audit(cat: &SemifreeDgCat, what: impl Display) -> std::result::Result<(), String> {
    cat.audit_d_squared().map_err(ctx(what))
}

pub fn builder_audit() -> Outcome {
    let mut count = 0;
    for ring in RINGS {
        let raw = BuildOptions::raw(ring);
        let loc = BuildOptions::with_ring(ring);
        let mut models = vec![ModelId::A1, ModelId::A2];
        models.extend((1..=6).map(ModelId::C));
        models.extend((2..=6).map(ModelId::D12));
        models.extend((2..=6).map(ModelId::B01));
        models.extend((2..=6).map(ModelId::D01));
        for n in 2..=5 {
            for plus in 0..=4 {
                for minus in 0..=4 - plus {
                    if plus + minus > 0 {
                        models.push(ModelId::S { n, plus, minus });
                    }
                }
            }
        }
        for g in 1..=3 {
            for m in 1..=3 {
                models.push(ModelId::M { g, m });
            }
        }
        for id in &models {
            for opts in [&raw, &loc] {
                let cat = build(id, opts).map_err(ctx(format!("{id} over {ring}")))?;
                audit(&cat, format!("{id} over {ring}"))?;
                count += 1;
            }
        }
        let bg = BuildOptions {
            background: vec![1, 2],
            ..raw.clone()
        };
        audit(&sphere(3, 4, 0, &bg).map_err(|e| e.to_string())?, "S(3,4) with background")?;
        audit(&a1(ring, "K").map_err(|e| e.to_string())?, "A1")?;
        audit(&a2(ring).map_err(|e| e.to_string())?, "A2")?;
        count += 3;
    }
    Ok(format!("{count} builder outputs"))
}

pub fn random_plumbing_audit(cases: usize, seed: u64) -> Outcome {
    let mut r = rng(seed);
    for i in 0..cases {
        let n = r.gen_range(2..=6);
        let ring = RINGS[i % 3];
        let data = random_plumbing(&mut r, n, 5, 8, ring);
        let what = || format!("case {i}: {}", data.to_json());
        let cat = build_wrapped(&data).map_err(|e| format!("{}: {e}", what()))?;
        cat.audit_d_squared().map_err(|e| format!("{}: {e}", what()))?;
        let re = build_wrapped_reordered(&data).map_err(|e| format!("{}: {e}", what()))?;
        re.audit_d_squared().map_err(|e| format!("{}: {e}", what()))?;
    }
    Ok(format!("{cases} random plumbings, both layouts"))
}

// localization golden

pub const GOLDEN_LOCALIZE_C1: &str = include_str!("../golden/localize_c1.json");

pub fn localized_c1() -> std::result::Result<SemifreeDgCat, String> {
    let raw = c(1, Ring::Integers, false).map_err(|e| e.to_string())?;
    localize(&raw, &["z"]).map_err(|e| e.to_string())
}

pub fn localization_golden() -> Outcome {
    let cat = localized_c1()?;
    let text = semifree::dgcat::PresentationJson::from_cat(&cat, None).to_string_pretty();
    ensure(text == GOLDEN_LOCALIZE_C1, || format!("output differs from golden file:\n{text}"))?;
    for (name, deg) in [("inv(z)", 0), ("hat(z)", -1), ("check(z)", -1), ("bar(z)", -2)] {
        expect_deg(&cat, name, deg)?;
    }
    expect_d(&cat, "hat(z)", "1_{L} - inv(z)∘z")?;
    expect_d(&cat, "check(z)", "1_{L} - z∘inv(z)")?;
    expect_d(&cat, "bar(z)", "z∘hat(z) - check(z)∘z")?;
    Ok("quadruple (0,-1,-1,-2) byte-exact".into())
}

// homotopy colimit

/// `S(2,m) → A1` with `aᵢ ↦ 1`, `h ↦ 0`.
pub fn collapse_sphere(m: usize) -> std::result::Result<DgFunctor, String> {
    let s = Arc::new(sphere(2, m, 0, &BuildOptions::default()).map_err(|e| e.to_string())?);
    let a = Arc::new(a1(Ring::Integers, "L").map_err(|e| e.to_string())?);
    let mut images = Vec::new();
    for i in 1..=m {
        images.push((format!("a_{i}"), "1_{L}".to_string()));
        images.push((format!("inv(a_{i})"), "1_{L}".to_string()));
    }
    let refs: Vec<(&str, &str)> = images.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let f = DgFunctor::from_text(s, a, &[("L", "L")], &refs).map_err(|e| e.to_string())?;
    f.validate().map_err(|e| e.to_string())?;
    Ok(f)
}

pub fn sphere_hocolim(m: usize) -> Outcome {
    let f = collapse_sphere(m)?;
    let span = PushoutSpan::new(f.clone(), f).map_err(|e| e.to_string())?;
    let h = hocolim(&span, HocolimOptions::default()).map_err(|e| e.to_string())?;
    ensure(h.general, || "resolved as a strict colimit".into())?;
    let cat = h.cat.as_ref();
    let sum: Vec<String> = (1..=m).map(|i| format!("t_{{a_{i}}}")).collect();
    for t in &sum {
        expect_deg(cat, t, -1)?;
        expect_d(cat, t, "0")?;
    }
    expect_deg(cat, "t_{h}", -2)?;
    expect_d(cat, "t_{h}", &sum.join(" + "))?;
    let red = strictify_t(&h.cat).map_err(|e| e.to_string())?;
    let s3 = sphere(3, m, 0, &BuildOptions::default()).map_err(|e| e.to_string())?;
    let plain: Vec<String> = (1..=m).map(|i| format!("a_{i}")).collect();
    expect_d(&s3, "h", &plain.join(" + "))?;
    let mut gens: Vec<(&str, &str, i64)> = sum.iter().zip(&plain).map(|(a, b)| (a.as_str(), b.as_str(), 1)).collect();
    gens.push(("t_{h}", "h", 1));
    let ren = renaming(&[("L_1", "L")], &gens);
    presentation_equal(&red.cat, &s3, &ren).map_err(|e| format!("m = {m}: {e}"))?;
    Ok(format!("m = {m}"))
}

// plumbing sector replay

pub fn sector_span(n: i64) -> std::result::Result<PushoutSpan, String> {
    let e = |e: semifree::DgError| e.to_string();
    let z = Arc::new(c(n - 1, Ring::Integers, true).map_err(e)?);
    let a = Arc::new(a1(Ring::Integers, "L0").map_err(e)?);
    let b = Arc::new(b01(n, Ring::Integers, true).map_err(e)?);
    let (al, be) = if n == 2 {
        (
            DgFunctor::from_text(z.clone(), a, &[("L", "L0")], &[("z", "1_{L0}"), ("inv(z)", "1_{L0}")]),
            DgFunctor::from_text(
                z,
                b,
                &[("L", "L0")],
                &[
                    ("z", "alpha0"),
                    ("inv(z)", "inv(alpha0)"),
                    ("hat(z)", "hat(alpha0)"),
                    ("check(z)", "check(alpha0)"),
                    ("bar(z)", "bar(alpha0)"),
                ],
            ),
        )
    } else {
        (
            DgFunctor::from_text(z.clone(), a, &[("L", "L0")], &[]),
            DgFunctor::from_text(z, b, &[("L", "L0")], &[("z", "alpha0")]),
        )
    };
    PushoutSpan::new(al.map_err(e)?, be.map_err(e)?).map_err(e)
}

fn check_sector_functors(n: i64) -> std::result::Result<(), String> {
    let phi = d12_inclusion(n, D12Side::Phi, Ring::Integers).map_err(|e| format!("Phi: {e}"))?;
    let psi = d12_inclusion(n, D12Side::Psi, Ring::Integers).map_err(|e| format!("Psi: {e}"))?;
    let (zp, zq) = if n == 2 { ("1_{L1} + y∘x", "1_{L2} + x∘y") } else { ("y∘x", "x∘y") };
    let got = (phi.image_text("z").unwrap_or_default(), psi.image_text("z").unwrap_or_default());
    ensure(got.0 == zp && got.1 == zq, || format!("Phi(z) = {}, Psi(z) = {}", got.0, got.1))
}

/// Colimit, cone, generator change and the functors `Φ`, `Ψ` for `n ≥ 3`.
pub fn sector_replay(n: i64) -> Outcome {
    let e = |e: semifree::DgError| format!("n = {n}: {e}");
    let span = sector_span(n)?;
    let col = colimit(&span).map_err(e)?;
    let cat = col.cat.as_ref();
    ensure(cat.objects() == ["L0", "L1"], || format!("objects {:?}", cat.objects()))?;
    expect_deg(cat, "alpha1", 2 - n)?;
    expect_deg(cat, "g", 0)?;
    expect_deg(cat, "h", 1 - n)?;
    expect_d(cat, "h", "alpha1∘g")?;
    let target = d01(n, Ring::Integers, true).map_err(e)?;
    presentation_equal(cat, &target, &Renaming::identity(cat)).map_err(e)?;

    let ext = cone_extend(cat, &cat.g("g").map_err(e)?, "L2").map_err(e)?;
    expect_d(ext.core(), "i0", "i1∘g")?;
    expect_d(ext.core(), "p1", "-g∘p0")?;
    ensure(ext.rel.critical_pairs(4).map_err(e)?.is_empty(), || "cone rules have unjoinable critical pairs".into())?;

    let d12 = Arc::new(d12_raw(n, Ring::Integers).map_err(e)?);
    let core = Arc::new(ext.core().clone());
    let y = format!("{}h∘p0 + alpha1∘p1", if n % 2 == 0 { "" } else { "-" });
    let f = DgFunctor::from_text(d12.clone(), core, &[("L1", "L1"), ("L2", "L2")], &[("x", "i1"), ("y", &y)])
        .map_err(e)?
        .with_relations(ext.rules());
    f.validate().map_err(e)?;
    let yx = f.apply(&d12.poly("y∘x").map_err(e)?).map_err(e)?;
    ensure(ext.rel.render(&yx) == "alpha1", || format!("y∘x ↦ {}", ext.rel.render(&yx)))?;
    let xy = f.apply(&d12.poly("x∘y").map_err(e)?).map_err(e)?;
    let a2 = alpha2(&ext, n).map_err(e)?;
    ensure(xy == a2, || format!("x∘y ↦ {}", ext.rel.render(&xy)))?;
    check_sector_functors(n)?;
    Ok(format!("n = {n}"))
}

/// The two-dimensional variant: `α₀ ↦ 1`, `α₁′ = α₁ − 1`, and `1 + yx` inverted.
pub fn sector_replay_two() -> Outcome {
    let e = |e: semifree::DgError| format!("n = 2: {e}");
    let span = sector_span(2)?;
    let col = colimit(&span).map_err(e)?;
    let cat = col.cat.as_ref();
    expect_d(cat, "h", "alpha1∘g - g")?;
    presentation_equal(cat, &d01(2, Ring::Integers, true).map_err(e)?, &Renaming::identity(cat)).map_err(e)?;

    let minus_one = cat.poly_between("-1_{L1}", "L1", "L1").map_err(e)?;
    let red = change_basis(&col.cat, "alpha1", Some("alpha1'"), Ring::Integers.one(), &minus_one).map_err(e)?;
    let b = red.cat.as_ref();
    expect_d(b, "h", "alpha1'∘g")?;
    let rec = &b.localizations()[0];
    ensure(rec.morphism == "1_{L1} + alpha1'", || format!("inverted morphism {}", rec.morphism))?;

    let ext = cone_extend(b, &b.g("g").map_err(e)?, "L2").map_err(e)?;
    let raw = d12_raw(2, Ring::Integers).map_err(e)?;
    let u = raw.poly_between("1_{L1} + y∘x", "L1", "L1").map_err(e)?;
    let src = Arc::new(localize_morphisms(&raw, &[("1+yx", u)]).map_err(e)?);
    let f = DgFunctor::from_text(
        src.clone(),
        Arc::new(ext.core().clone()),
        &[("L1", "L1"), ("L2", "L2")],
        &[
            ("x", "i1"),
            ("y", "h∘p0 + alpha1'∘p1"),
            ("inv(1+yx)", &rec.inverse),
            ("hat(1+yx)", &rec.hat),
            ("check(1+yx)", &rec.check),
            ("bar(1+yx)", &rec.bar),
        ],
    )
    .map_err(e)?
    .with_relations(ext.rules());
    f.validate().map_err(e)?;
    let yx = f.apply(&src.poly("y∘x").map_err(e)?).map_err(e)?;
    ensure(ext.rel.render(&yx) == "alpha1'", || format!("y∘x ↦ {}", ext.rel.render(&yx)))?;
    one_plus_xy_witness(Ring::Integers).map_err(e)?;
    check_sector_functors(2)?;
    Ok("n = 2 with 1+xy inverse witness".into())
}

// Ginzburg

pub fn ginzburg_equalities(quivers: usize, seed: u64) -> Outcome {
    let mut r = rng(seed);
    let mut generators = 0;
    for i in 0..quivers {
        let gq = random_graded_quiver(&mut r, 5, 8, 3);
        for n in 3..=5 {
            let w = ginzburg_witness(&gq, n, Ring::Integers).map_err(|e| format!("quiver {i}, n = {n}: {e}"))?;
            for a in &gq.arrows {
                let (y, s) = &w.renaming.generators[&format!("{}*", a.id)];
                let want = if (n * a.q).rem_euclid(2) == 0 { 1 } else { -1 };
                ensure(*y == format!("y_{}", a.id) && *s == want, || format!("{}* ↦ {s}·{y}", a.id))?;
            }
            generators += w.report.generators;
        }
    }
    Ok(format!("{quivers} quivers x 3 dimensions, {generators} generators matched"))
}

// equivalence moves

pub fn edge_flips(cases: usize, seed: u64) -> Outcome {
    let mut r = rng(seed);
    let mut done = 0;
    while done < cases {
        let n = 2 + (done % 4) as i64;
        let data = random_plumbing(&mut r, n, 5, 8, RINGS[done % 3]);
        if data.arrows.is_empty() {
            continue;
        }
        let a = data.arrows[r.gen_range(0..data.arrows.len())].clone();
        let w = edge_flip_witness(&data, &a.id).map_err(|e| format!("{} / {}: {e}", data.to_json(), a.id))?;
        let f = &w.data.arrows[w.data.arrow_index(&w.flipped).map_err(|e| e.to_string())?];
        let sign = if n % 2 == 0 { a.sign } else { -a.sign };
        ensure(f.src == a.tgt && f.tgt == a.src && f.sign == sign && f.d == 2 - n - a.d, || {
            format!("flipped arrow {f:?} from {a:?}")
        })?;
        w.forward.validate().map_err(|e| e.to_string())?;
        w.backward.validate().map_err(|e| e.to_string())?;
        done += 1;
    }
    Ok(format!("{cases} flips, both directions"))
}

pub fn sign_gauges(cases: usize, seed: u64) -> Outcome {
    let mut r = rng(seed);
    for i in 0..cases {
        let n = 3 + (i % 3) as i64;
        let data = random_plumbing(&mut r, n, 5, 8, RINGS[i % 3]);
        let subset = random_subset(&mut r, &data);
        let refs: Vec<&str> = subset.iter().map(|s| s.as_str()).collect();
        let w = sign_gauge_witness(&data, &refs).map_err(|e| format!("{} / {subset:?}: {e}", data.to_json()))?;
        for (a, b) in data.arrows.iter().zip(&w.data.arrows) {
            let crosses = subset.contains(&a.src) != subset.contains(&a.tgt);
            ensure(b.sign == if crosses { -a.sign } else { a.sign }, || format!("sign of {} not updated", a.id))?;
        }
    }
    Ok(format!("{cases} gauges"))
}

/// How often a sign gauge of two-dimensional data admits a diagonal `±1` functor.
pub fn two_dimensional_gauge_rate(cases: usize, seed: u64) -> (usize, usize) {
    let mut r = rng(seed);
    let mut ok = 0;
    for i in 0..cases {
        let data = random_plumbing(&mut r, 2, 5, 8, RINGS[i % 3]);
        let subset = random_subset(&mut r, &data);
        let refs: Vec<&str> = subset.iter().map(|s| s.as_str()).collect();
        if sign_gauge_witness(&data, &refs).is_ok() {
            ok += 1;
        }
    }
    (ok, cases)
}

pub fn sigma_regauges(cases: usize, seed: u64) -> Outcome {
    let mut r = rng(seed);
    let mut loops = 0;
    for _ in 0..cases {
        let n = r.gen_range(2..=6);
        let data = random_plumbing(&mut r, n, 5, 8, Ring::Integers);
        let delta: Vec<i64> = data.vertices.iter().map(|_| r.gen_range(-3..=3)).collect();
        let before = sigma(&data).map_err(|e| e.to_string())?;
        let after = sigma(&regauge(&data, &delta).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure(before == after, || format!("{:?} vs {:?} for {}", before.coordinates, after.coordinates, data.to_json()))?;
        loops += before.loops.len();
    }
    Ok(format!("{cases} regauges over {loops} loops"))
}

// truncated cohomology

pub fn sector_ranks() -> Outcome {
    let e = |e: semifree::DgError| e.to_string();
    let d = d12(3, Ring::Integers, true).map_err(e)?;
    let ex = e12(3, false, Ring::Integers).map_err(e)?;
    let (l1, l2) = (d.obj("L1").map_err(e)?, d.obj("L2").map_err(e)?);
    let mut tables = Vec::new();
    for field in [Ring::Rationals, Ring::IntegersMod(10007)] {
        let t = truncated_cohomology(&d, None, l1, l1, (-3, 0), 8, field).map_err(e)?;
        ensure(t.ranks() == [(-3, 1), (-2, 1), (-1, 1), (0, 1)], || format!("hom(L1,L1) over {field}: {:?}", t.ranks()))?;
        ensure(t.exact, || "hom(L1,L1) slice not exact".into())?;
        let td = truncated_cohomology(&d, None, l2, l1, (-3, 1), 8, field).map_err(e)?;
        let te = truncated_cohomology(
            &ex.core,
            Some(&ex.rules),
            ex.core.obj("L2").map_err(e)?,
            ex.core.obj("L1").map_err(e)?,
            (-3, 1),
            8,
            field,
        )
        .map_err(e)?;
        ensure(td.same_ranks(&te), || format!("D12 {:?} vs E12 {:?} over {field}", td.ranks(), te.ranks()))?;
        tables.push((t.ranks(), td.ranks()));
    }
    ensure(tables[0] == tables[1], || "Q and Zmod:10007 tables differ".into())?;
    Ok(format!("hom(L1,L1) {:?}, hom(L2,L1) {:?}", tables[0].0, tables[0].1))
}

// surfaces

fn product(names: &[String]) -> String {
    if names.is_empty() {
        "1_{L}".into()
    } else {
        names.join("∘")
    }
}

pub fn surface_presentations() -> Outcome {
    for ring in RINGS {
        for g in 1..=3 {
            for m in 1..=3 {
                for opts in [BuildOptions::raw(ring), BuildOptions::with_ring(ring)] {
                    let cat = surface(g, m, &opts).map_err(|e| e.to_string())?;
                    for j in 1..=g {
                        expect_deg(&cat, &format!("gamma_{j}"), -1)?;
                        expect_d(&cat, &format!("gamma_{j}"), &format!("alpha_{j}∘beta_{j} - beta_{j}∘alpha_{j}∘delta_{j}"))?;
                    }
                    let a: Vec<String> = (1..=m).rev().map(|i| format!("a_{i}")).collect();
                    let d: Vec<String> = (1..=g).rev().map(|j| format!("delta_{j}")).collect();
                    expect_deg(&cat, "h", -1)?;
                    expect_d(&cat, "h", &format!("{} - {}", product(&a), product(&d)))?;
                }
            }
        }
    }
    let mut rels = Vec::new();
    for g in 1..=2 {
        for m in 1..=2 {
            let f = surface_relation_form(g, m, Ring::Integers).map_err(|e| format!("M({g},{m}): {e}"))?;
            f.verify().map_err(|e| e.to_string())?;
            rels.push(f.relation_text());
        }
    }
    Ok(format!("M(g,m) for g,m <= 3; {}", rels.join("; ")))
}

// cone calculus

pub fn cone_calculus() -> Outcome {
    for n in 2..=4 {
        let e = |e: semifree::DgError| format!("n = {n}: {e}");
        let base = d01(n, Ring::Integers, false).map_err(e)?;
        let base = if n == 2 {
            let red = change_basis(
                &Arc::new(base),
                "alpha1",
                None,
                Ring::Integers.one(),
                &NcPoly::identity(Ring::Integers, semifree::ObjId(1)).neg(),
            )
            .map_err(e)?;
            red.cat.as_ref().clone()
        } else {
            base
        };
        expect_d(&base, "h", "alpha1∘g")?;
        let ext = cone_extend(&base, &base.g("g").map_err(e)?, "L2").map_err(e)?;
        expect_d(ext.core(), "i0", "i1∘g")?;
        expect_d(ext.core(), "p1", "-g∘p0")?;
        ensure(ext.rel.critical_pairs(4).map_err(e)?.is_empty(), || format!("n = {n}: unjoinable critical pairs"))?;
        let a = alpha2(&ext, n).map_err(e)?;
        let sign = Coefficient::sign(Ring::Integers, n);
        let expected = ext
            .rel
            .poly("i1∘alpha1∘p1")
            .map_err(e)?
            .add(&ext.rel.poly("i1∘h∘p0").map_err(e)?.scale(&sign))
            .map_err(e)?;
        ensure(a == expected, || format!("n = {n}: alpha2 = {}", ext.rel.render(&a)))?;
        let da = ext.rel.d(&a).map_err(e)?;
        ensure(da.is_zero(), || format!("n = {n}: d(alpha2) = {}", ext.rel.render(&da)))?;
    }
    Ok("n = 2, 3, 4".into())
}
