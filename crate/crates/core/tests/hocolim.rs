mod common;

use std::sync::Arc;

use semifree::constructions::{hocolim, hocolim_functor, HocolimOptions, PushoutSpan};
use semifree::fukaya::{a1, a2, sphere, BuildOptions};
use semifree::analysis::presentation_equal;
use semifree::reduce::{cancel_pair, strictify_t};
use semifree::{Coefficient, CatBuilder, DgFunctor, GenTable, NcPoly, Ring};

#[test]
fn punctured_spheres_glue_to_three_dimensional_ones() {
    for m in 1..=3 {
        common::sphere_hocolim(m).unwrap();
    }
}

#[test]
fn inverse_generators_of_the_middle_are_dropped() {
    let f = common::collapse_sphere(2).unwrap();
    let span = PushoutSpan::new(f.clone(), f).unwrap();
    let kept = hocolim(
        &span,
        HocolimOptions {
            drop_localization: false,
            ..Default::default()
        },
    )
    .unwrap();
    let dropped = hocolim(&span, HocolimOptions::default()).unwrap();
    assert_eq!(kept.cat.generator_count(), dropped.cat.generator_count() + 8);
    kept.cat.audit_d_squared().unwrap();
    let a = strictify_t(&kept.cat).unwrap();
    let b = strictify_t(&dropped.cat).unwrap();
    assert!(a.cat.find_generator("t_{inv(a_1)}").is_some());
    assert!(b.cat.find_generator("t_{inv(a_1)}").is_none());
}

#[test]
fn extension_legs_give_the_strict_colimit() {
    let cat = Arc::new(a2(Ring::Integers).unwrap());
    let pt = Arc::new(a1(Ring::Integers, "K0").unwrap());
    let incl = DgFunctor::from_text(pt.clone(), cat.clone(), &[("K0", "K0")], &[]).unwrap();
    let id = DgFunctor::identity(pt);
    let span = PushoutSpan::new(id, incl).unwrap();
    let h = hocolim(&span, HocolimOptions::default()).unwrap();
    assert!(!h.general);
    assert_eq!(h.cat.generator_count(), 1);
}

#[test]
fn identity_leg_strictifies_to_the_other_side() {
    let cat = Arc::new(sphere(3, 2, 0, &BuildOptions::default()).unwrap());
    let id = DgFunctor::identity(cat.clone());
    let span = PushoutSpan::new(id.clone(), id).unwrap();
    let h = hocolim(
        &span,
        HocolimOptions {
            force_general: true,
            ..Default::default()
        },
    )
    .unwrap();
    let mut red = strictify_t(&h.cat).unwrap();
    for (a, b) in [("t_{a_1}", "a_1_2"), ("t_{a_2}", "a_2_2"), ("t_{h}", "h_2")] {
        red = red.then(cancel_pair(&red.cat, a, b).unwrap()).unwrap();
    }
    let ren = common::renaming(&[("L_1", "L")], &[("a_1_1", "a_1", 1), ("a_2_1", "a_2", 1), ("h_1", "h", 1)]);
    presentation_equal(&red.cat, &cat, &ren).unwrap();
    red.functor.validate().unwrap();
}

/// `C` has `u, v` of degree −1 and `f` with `df = u∘v`; both legs are the identity.
fn odd_middle() -> Arc<semifree::SemifreeDgCat> {
    let mut b = CatBuilder::new(Ring::Integers);
    let x = b.object("X").unwrap();
    b.closed("u", x, x, -1).unwrap();
    b.closed("v", x, x, -1).unwrap();
    let d = b.poly("u∘v").unwrap();
    b.generator("f", x, x, -3, d).unwrap();
    Arc::new(b.build().unwrap())
}

#[test]
fn right_block_sign_is_forced() {
    let c = odd_middle();
    let id = DgFunctor::identity(c.clone());
    let span = PushoutSpan::new(id.clone(), id).unwrap();
    let h = hocolim(
        &span,
        HocolimOptions {
            force_general: true,
            ..Default::default()
        },
    )
    .unwrap();
    let cat = h.cat.as_ref();
    cat.audit_d_squared().unwrap();
    let tf = cat.generator(cat.gen("t_{f}").unwrap());
    let df = &c.generator(c.gen("f").unwrap()).d;
    let right = h.twisted_derivation(df).unwrap();
    let main = tf.d.sub(&right).unwrap();

    // The left-block variant: the sign is the degree of the letters before the homotopy.
    let ring = cat.ring();
    let mut left = NcPoly::zero(ring, tf.src, tf.tgt);
    for (w, coef) in df.terms() {
        let letters = w.letters();
        for i in 0..letters.len() {
            let left_deg: i64 = letters[..i].iter().map(|g| c.gen_deg(*g)).sum();
            let mut chain = Vec::new();
            for g in &letters[..i] {
                chain.push(h.from_b.apply(&span.beta.images[g.index()]).unwrap());
            }
            chain.push(NcPoly::generator(cat, h.t_generators[letters[i].index()].unwrap()));
            for g in &letters[i + 1..] {
                chain.push(h.from_a.apply(&span.alpha.images[g.index()]).unwrap());
            }
            let term = NcPoly::compose_all(&chain).unwrap();
            left.add_assign(&term.scale(&Coefficient::sign(ring, left_deg).mul(coef))).unwrap();
        }
    }
    let wrong = main.add(&left).unwrap();
    let dd = cat.d(&wrong).unwrap();
    assert!(!dd.is_zero());
    assert!(cat.d(&tf.d).unwrap().is_zero());
    println!("left-block residual: {}", cat.render(&dd));
}

/// `S(2,m+1) → S(2,m)` with `a_{m+1} ↦ 1`.
fn forget_last(m: usize) -> DgFunctor {
    let big = Arc::new(sphere(2, m + 1, 0, &BuildOptions::default()).unwrap());
    let small = Arc::new(sphere(2, m, 0, &BuildOptions::default()).unwrap());
    let mut images = vec![("h".to_string(), "h".to_string())];
    for i in 1..=m {
        for name in semifree::constructions::localization_names(&format!("a_{i}")) {
            images.push((name.clone(), name));
        }
        images.push((format!("a_{i}"), format!("a_{i}")));
    }
    images.push((format!("a_{}", m + 1), "1_{L}".into()));
    images.push((format!("inv(a_{})", m + 1), "1_{L}".into()));
    let refs: Vec<(&str, &str)> = images.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let f = DgFunctor::from_text(big, small, &[("L", "L")], &refs).unwrap();
    f.validate().unwrap();
    f
}

#[test]
fn strictification_commutes_with_induced_functors() {
    for m in 1..=2 {
        let (f1, f2) = (common::collapse_sphere(m + 1).unwrap(), common::collapse_sphere(m).unwrap());
        let h1 = hocolim(&PushoutSpan::new(f1.clone(), f1).unwrap(), HocolimOptions::default()).unwrap();
        let h2 = hocolim(&PushoutSpan::new(f2.clone(), f2).unwrap(), HocolimOptions::default()).unwrap();
        let point = DgFunctor::identity(h1.span.a().clone());
        let induced = hocolim_functor(&h1, &h2, &point, &forget_last(m), &point).unwrap();
        assert_eq!(induced.image_text(&format!("t_{{a_{}}}", m + 1)).unwrap(), "0");
        assert_eq!(induced.image_text("t_{h}").unwrap(), "t_{h}");

        let (r1, r2) = (strictify_t(&h1.cat).unwrap(), strictify_t(&h2.cat).unwrap());
        let mut images = vec![("t_{h}".to_string(), "t_{h}".to_string())];
        for i in 1..=m {
            images.push((format!("t_{{a_{i}}}"), format!("t_{{a_{i}}}")));
        }
        let refs: Vec<(&str, &str)> = images.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let strict = DgFunctor::from_text(r1.cat.clone(), r2.cat.clone(), &[("L_1", "L_1")], &refs).unwrap();
        strict.validate().unwrap();
        let one = r2.functor.compose(&induced).unwrap();
        let other = strict.compose(&r1.functor).unwrap();
        assert_eq!(one.render_images(), other.render_images());
    }
}
