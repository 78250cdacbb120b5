mod common;

use std::io::Write;
use std::time::{Duration, Instant};

use common::Outcome;

struct Criterion {
    id: usize,
    title: &'static str,
    budget: Option<Duration>,
    run: fn() -> Outcome,
}

fn all_of(parts: Vec<Outcome>) -> Outcome {
    let mut notes = Vec::new();
    for p in parts {
        notes.push(p?);
    }
    Ok(notes.join("; "))
}

fn d_squared() -> Outcome {
    all_of(vec![common::builder_audit(), common::random_plumbing_audit(1000, 1)])
}

fn hocolim_oracle() -> Outcome {
    all_of((1..=3).map(common::sphere_hocolim).collect())
}

fn sector_replay() -> Outcome {
    let mut parts: Vec<Outcome> = (3..=5).map(common::sector_replay).collect();
    parts.push(common::sector_replay_two());
    all_of(parts)
}

fn equivalence_moves() -> Outcome {
    let (ok, total) = common::two_dimensional_gauge_rate(100, 4);
    let mut out = all_of(vec![
        common::edge_flips(100, 2),
        common::sign_gauges(100, 3),
        common::sigma_regauges(100, 5),
    ])?;
    out.push_str(&format!("; dimension 2 sign gauges realizable in {ok}/{total} (reported, not required)"));
    Ok(out)
}

const CRITERIA: [Criterion; 9] = [
    Criterion {
        id: 1,
        title: "d² = 0 audit",
        budget: Some(Duration::from_secs(60)),
        run: d_squared,
    },
    Criterion {
        id: 2,
        title: "localization golden file",
        budget: None,
        run: common::localization_golden,
    },
    Criterion {
        id: 3,
        title: "homotopy colimit of punctured spheres",
        budget: None,
        run: hocolim_oracle,
    },
    Criterion {
        id: 4,
        title: "plumbing sector replay",
        budget: None,
        run: sector_replay,
    },
    Criterion {
        id: 5,
        title: "Ginzburg equality",
        budget: Some(Duration::from_secs(10)),
        run: || common::ginzburg_equalities(50, 6),
    },
    Criterion {
        id: 6,
        title: "equivalence witnesses",
        budget: None,
        run: equivalence_moves,
    },
    Criterion {
        id: 7,
        title: "truncated cohomology",
        budget: Some(Duration::from_secs(10)),
        run: common::sector_ranks,
    },
    Criterion {
        id: 8,
        title: "surface presentations",
        budget: None,
        run: common::surface_presentations,
    },
    Criterion {
        id: 9,
        title: "cone calculus",
        budget: None,
        run: common::cone_calculus,
    },
];

#[test]
fn acceptance() {
    let mut failed = Vec::new();
    for c in &CRITERIA {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.budget) {
            (Ok(_), Some(b)) if elapsed > b => Err(format!("took {elapsed:.2?}, budget {b:?}")),
            (o, _) => o,
        };
        let line = match outcome {
            Ok(note) => format!("PASS {}. {} ({elapsed:.2?}): {note}\n", c.id, c.title),
            Err(e) => {
                failed.push(c.id);
                format!("FAIL {}. {} ({elapsed:.2?}): {e}\n", c.id, c.title)
            }
        };
        std::io::stdout().lock().write_all(line.as_bytes()).unwrap();
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
