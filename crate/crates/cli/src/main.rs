use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use semifree::analysis::{truncated_cohomology, RankTable};
use semifree::constructions::{hocolim, localize, localize_morphisms, tensor, HocolimOptions, PushoutSpan, RelationalDgCat};
use semifree::dgcat::{FunctorJson, FunctorMapJson, PresentationJson, SpanJson};
use semifree::fukaya::{build, BuildOptions, ModelId};
use semifree::plumbing::{
    build_ginzburg, build_wrapped, build_wrapped_reordered, edge_flip_witness, ginzburg_witness, normalize, regauge,
    sigma, sign_gauge_witness, total_endomorphism_algebra, GradedQuiver, PlumbingData,
};
use semifree::reduce::{run_script, strictify_t, ReductionStep};
use semifree::algebra::GenTable;
use semifree::{Ring, RewriteSystem, SemifreeDgCat};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "semifree", version, about = "Presentations of semifree dg categories and wrapped Fukaya categories of plumbings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Json,
    Text,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value = "json")]
    emit: Emit,
    /// Write to a file instead of standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named model, e.g. `S:3,2,1`, `M:1,2`, `D12:3`.
    Build {
        #[arg(long)]
        model: String,
        #[arg(long, default_value = "Z")]
        coeff: String,
        /// Skip the localizations the model normally carries.
        #[arg(long)]
        raw: bool,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        sphere_degrees: Option<Vec<i64>>,
        #[arg(long, value_delimiter = ',')]
        background: Vec<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Invert closed degree-0 generators or labelled morphisms.
    Localize {
        input: PathBuf,
        #[arg(long = "gen")]
        generators: Vec<String>,
        /// `label=polynomial`.
        #[arg(long = "morphism")]
        morphisms: Vec<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Tensor product of two presentations.
    Tensor {
        left: PathBuf,
        right: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Homotopy pushout of a span file.
    Hocolim {
        span: PathBuf,
        #[arg(long)]
        force_general: bool,
        #[arg(long)]
        keep_localization: bool,
        /// Strictify the comparison morphisms afterwards.
        #[arg(long)]
        strictify: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Replay a reduction script, strictify, or cancel greedily.
    Simplify {
        input: PathBuf,
        #[arg(long)]
        script: Option<PathBuf>,
        #[arg(long)]
        greedy: bool,
        #[arg(long)]
        strictify: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Re-audit every JSON file in a directory; exits nonzero on any failure.
    Verify { path: PathBuf },
    /// Truncated cohomology ranks of a hom complex.
    Hom {
        input: PathBuf,
        #[arg(long)]
        source: Option<String>,
        #[arg(long)]
        target: Option<String>,
        #[arg(long, default_value = "-5:2", allow_hyphen_values = true)]
        window: String,
        #[arg(long, default_value_t = 4)]
        bound: usize,
        #[arg(long, default_value = "Q")]
        field: String,
        #[command(flatten)]
        out: Output,
    },
    /// Plumbing data to its presentation.
    Plumb {
        input: PathBuf,
        #[command(flatten)]
        data: DataOverrides,
        /// Use the reordered factor layout.
        #[arg(long)]
        reorder: bool,
        /// Emit the endomorphism algebra of the sum of all vertex objects.
        #[arg(long)]
        endomorphism: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Ginzburg category of a graded quiver.
    Ginzburg {
        input: PathBuf,
        #[arg(long)]
        n: i64,
        #[arg(long, default_value = "Z")]
        coeff: String,
        /// Compare with the sphere plumbing and report.
        #[arg(long)]
        witness: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Equivalence witnesses on plumbing data.
    Equiv {
        input: PathBuf,
        #[command(flatten)]
        data: DataOverrides,
        /// Reverse an arrow.
        #[arg(long)]
        flip: Option<String>,
        /// Change signs across the boundary of a vertex subset.
        #[arg(long, value_delimiter = ',')]
        gauge: Option<Vec<String>>,
        /// Compare the grading class before and after `v=k,…`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        regauge: Option<Vec<String>>,
        #[command(flatten)]
        out: Output,
    },
    /// Orientation, order and sign normal form of plumbing data.
    Normalize {
        input: PathBuf,
        #[command(flatten)]
        data: DataOverrides,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
struct DataOverrides {
    #[arg(long)]
    n: Option<i64>,
    #[arg(long)]
    coeff: Option<String>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn ring(s: &str) -> Result<Ring> {
    let v: Value = Value::String(s.to_string());
    serde_json::from_value(v).map_err(|_| anyhow!("unknown coefficient ring {s:?}; use Z, Q or Zmod:p"))
}

fn load(path: &Path) -> Result<(SemifreeDgCat, Option<RewriteSystem>)> {
    let text = read(path)?;
    let p = PresentationJson::parse(&text).with_context(|| path.display().to_string())?;
    p.into_cat().with_context(|| path.display().to_string())
}

fn load_data(path: &Path, o: &DataOverrides) -> Result<PlumbingData> {
    let mut data = PlumbingData::from_json(&read(path)?).with_context(|| path.display().to_string())?;
    if let Some(n) = o.n {
        data.n = n;
    }
    if let Some(c) = &o.coeff {
        data.coefficients = ring(c)?;
    }
    data.validate()?;
    Ok(data)
}

fn emit(out: &Output, json: String, text: String) -> Result<()> {
    let body = match out.emit {
        Emit::Json => json,
        Emit::Text => text,
    };
    match &out.output {
        Some(p) => fs::write(p, body).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(body.as_bytes())?;
            Ok(())
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn emit_cat(out: &Output, cat: &SemifreeDgCat, rules: Option<&RewriteSystem>) -> Result<()> {
    let p = PresentationJson::from_cat(cat, rules);
    emit(out, p.to_string_pretty(), p.to_text())
}

fn emit_rel(out: &Output, rel: &RelationalDgCat) -> Result<()> {
    emit_cat(out, &rel.core, Some(&rel.rules))
}

fn images_text(map: &FunctorMapJson) -> String {
    let mut s = String::new();
    for (a, b) in &map.objects {
        s.push_str(&format!("  {a} ↦ {b}\n"));
    }
    for (a, b) in &map.images {
        s.push_str(&format!("  {a} ↦ {b}\n"));
    }
    s
}

fn window(s: &str) -> Result<(i64, i64)> {
    let (a, b) = s.split_once(':').ok_or_else(|| anyhow!("window must look like -5:2"))?;
    let (a, b) = (a.trim().parse()?, b.trim().parse()?);
    if a > b {
        bail!("empty window {s}");
    }
    Ok((a, b))
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Build {
            model,
            coeff,
            raw,
            sphere_degrees,
            background,
            out,
        } => {
            let id: ModelId = model.parse()?;
            let opts = BuildOptions {
                ring: ring(&coeff)?,
                localize: !raw,
                sphere_degrees,
                background,
                surface_grading: None,
            };
            emit_cat(&out, &build(&id, &opts)?, None)?;
        }
        Command::Localize {
            input,
            generators,
            morphisms,
            out,
        } => {
            let (cat, _) = load(&input)?;
            let refs: Vec<&str> = generators.iter().map(|s| s.as_str()).collect();
            let mut cat = if refs.is_empty() { cat } else { localize(&cat, &refs)? };
            if !morphisms.is_empty() {
                let mut pairs = Vec::new();
                for m in &morphisms {
                    let (label, poly) = m.split_once('=').ok_or_else(|| anyhow!("--morphism takes label=polynomial"))?;
                    pairs.push((label.trim().to_string(), cat.poly(poly.trim())?));
                }
                let refs: Vec<(&str, _)> = pairs.iter().map(|(l, p)| (l.as_str(), p.clone())).collect();
                cat = localize_morphisms(&cat, &refs)?;
            }
            emit_cat(&out, &cat, None)?;
        }
        Command::Tensor { left, right, out } => {
            let (a, ra) = load(&left)?;
            let (b, rb) = load(&right)?;
            if ra.is_some() || rb.is_some() {
                bail!("tensor takes semifree presentations without rules");
            }
            emit_rel(&out, &tensor(&a, &b)?)?;
        }
        Command::Hocolim {
            span,
            force_general,
            keep_localization,
            strictify,
            out,
        } => {
            let (alpha, beta) = SpanJson::parse(&read(&span)?)?.into_functors()?;
            let span = PushoutSpan::new(alpha, beta)?;
            let opts = HocolimOptions {
                force_general,
                drop_localization: !keep_localization,
            };
            let h = hocolim(&span, opts)?;
            let cat = if strictify && h.general { strictify_t(&h.cat)?.cat } else { h.cat };
            emit_cat(&out, &cat, None)?;
        }
        Command::Simplify {
            input,
            script,
            greedy,
            strictify,
            out,
        } => {
            let (cat, rules) = load(&input)?;
            if rules.is_some() {
                bail!("simplify works on semifree presentations without rules");
            }
            let mut steps: Vec<ReductionStep> = Vec::new();
            if strictify {
                steps.push(ReductionStep::Strictify { generators: Vec::new() });
            }
            if let Some(s) = script {
                let more: Vec<ReductionStep> = serde_json::from_str(&read(&s)?)
                    .map_err(|e| anyhow!("{}: invalid JSON: {e}", s.display()))?;
                steps.extend(more);
            }
            if greedy {
                steps.push(ReductionStep::Greedy);
            }
            let cat = Arc::new(cat);
            let (red, log) = run_script(&cat, &steps)?;
            for r in &log {
                eprintln!("{}: {} -> {} generators", serde_json::to_string(&r.step)?, r.before, r.after);
            }
            emit_cat(&out, &red.cat, None)?;
        }
        Command::Verify { path } => return verify(&path),
        Command::Hom {
            input,
            source,
            target,
            window: w,
            bound,
            field,
            out,
        } => {
            let (cat, rules) = load(&input)?;
            let first = cat.objects().first().cloned().ok_or_else(|| anyhow!("no objects"))?;
            let x = cat.obj(source.as_deref().unwrap_or(&first))?;
            let y = cat.obj(target.as_deref().unwrap_or(&first))?;
            let t: RankTable = truncated_cohomology(&cat, rules.as_ref(), x, y, window(&w)?, bound, ring(&field)?)?;
            emit(&out, t.to_json(), t.to_markdown())?;
        }
        Command::Plumb {
            input,
            data,
            reorder,
            endomorphism,
            out,
        } => {
            let data = load_data(&input, &data)?;
            let cat = if reorder { build_wrapped_reordered(&data)? } else { build_wrapped(&data)? };
            if endomorphism {
                emit_rel(&out, &total_endomorphism_algebra(&cat)?.algebra)?;
            } else {
                emit_cat(&out, &cat, None)?;
            }
        }
        Command::Ginzburg {
            input,
            n,
            coeff,
            witness,
            out,
        } => {
            let gq = GradedQuiver::from_json(&read(&input)?)?;
            let r = ring(&coeff)?;
            if witness {
                let w = ginzburg_witness(&gq, n, r)?;
                let map = FunctorMapJson::from_functor(&w.functor);
                let v = json!({
                    "equal": true,
                    "objects": w.report.objects,
                    "generators": w.report.generators,
                    "renaming": w.renaming,
                    "plumbing": w.data,
                });
                let text = format!(
                    "equal: {} objects, {} generators\n{}",
                    w.report.objects,
                    w.report.generators,
                    images_text(&map)
                );
                emit(&out, pretty(&v), text)?;
            } else {
                emit_cat(&out, &build_ginzburg(&gq, n, r)?, None)?;
            }
        }
        Command::Equiv {
            input,
            data,
            flip,
            gauge,
            regauge: shifts,
            out,
        } => {
            let data = load_data(&input, &data)?;
            let chosen = [flip.is_some(), gauge.is_some(), shifts.is_some()].iter().filter(|b| **b).count();
            if chosen != 1 {
                bail!("choose exactly one of --flip, --gauge, --regauge");
            }
            if let Some(u) = flip {
                let w = edge_flip_witness(&data, &u)?;
                let (f, b) = (FunctorMapJson::from_functor(&w.forward), FunctorMapJson::from_functor(&w.backward));
                let v = json!({
                    "move": "flip",
                    "arrow": w.arrow,
                    "flipped": w.flipped,
                    "data": w.data,
                    "forward": f,
                    "backward": b,
                    "checked": [w.certificates.0.generators_checked, w.certificates.1.generators_checked],
                });
                let text = format!(
                    "flip {} -> {}: both functors valid\nforward\n{}backward\n{}",
                    w.arrow,
                    w.flipped,
                    images_text(&f),
                    images_text(&b)
                );
                emit(&out, pretty(&v), text)?;
            } else if let Some(subset) = gauge {
                let refs: Vec<&str> = subset.iter().map(|s| s.as_str()).collect();
                let w = sign_gauge_witness(&data, &refs)?;
                let v = json!({
                    "move": "gauge",
                    "subset": w.subset,
                    "negated": w.negated,
                    "data": w.data,
                    "checked": w.certificate.generators_checked,
                });
                let text = format!("gauge {}: negate [{}]\n", w.subset.join(", "), w.negated.join(", "));
                emit(&out, pretty(&v), text)?;
            } else if let Some(shifts) = shifts {
                let mut delta = vec![0i64; data.vertices.len()];
                for s in &shifts {
                    let (v, k) = s.split_once('=').ok_or_else(|| anyhow!("--regauge takes vertex=integer"))?;
                    delta[data.vertex_index(v.trim())?] = k.trim().parse()?;
                }
                let moved = regauge(&data, &delta)?;
                let (before, after) = (sigma(&data)?, sigma(&moved)?);
                let v = json!({
                    "move": "regauge",
                    "data": moved,
                    "before": before,
                    "after": after,
                    "invariant": before == after,
                });
                let text = format!("sigma {:?} -> {:?}\n", before.coordinates, after.coordinates);
                emit(&out, pretty(&v), text)?;
                if before != after {
                    return Ok(ExitCode::from(1));
                }
            }
        }
        Command::Normalize { input, data, out } => {
            let data = normalize(&load_data(&input, &data)?)?;
            let mut json = data.to_json();
            json.push('\n');
            let mut text = String::new();
            for a in &data.arrows {
                text.push_str(&format!("{}: {} -> {}  sign {}  d {}\n", a.id, a.src, a.tgt, a.sign, a.d));
            }
            emit(&out, json, text)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn verify_file(path: &Path) -> Result<String> {
    let text = read(path)?;
    let v: Value = serde_json::from_str(&text)
        .map_err(|e| anyhow!("invalid JSON: {e}"))?;
    let has = |k: &str| v.get(k).is_some();
    if has("source") && has("target") {
        let f = FunctorJson::parse(&text)?.into_functor()?;
        f.source.audit_d_squared()?;
        f.target.audit_d_squared()?;
        let c = f.validate()?;
        Ok(format!("functor, {} generators checked", c.generators_checked))
    } else if has("alpha") && has("beta") {
        let (a, b) = SpanJson::parse(&text)?.into_functors()?;
        PushoutSpan::new(a, b)?;
        Ok("span, both legs valid".into())
    } else if has("vertices") && has("arrows") {
        let data = PlumbingData::from_json(&text)?;
        let cat = build_wrapped(&data)?;
        cat.audit_d_squared()?;
        Ok(format!("plumbing data, {} generators", cat.generator_count()))
    } else if has("generators") {
        let (cat, rules) = PresentationJson::parse(&text)?.into_cat()?;
        cat.audit_d_squared()?;
        match rules {
            Some(r) => {
                let rel = RelationalDgCat::new(cat, r)?;
                let bad = rel.critical_pairs(4)?;
                if !bad.is_empty() {
                    bail!("{} unjoinable critical pairs", bad.len());
                }
                Ok(format!("presentation, {} generators, {} rules", rel.generator_count(), rel.rules.rules().len()))
            }
            None => Ok(format!("presentation, {} generators", cat.generator_count())),
        }
    } else {
        bail!("not a presentation, functor, span or plumbing file")
    }
}

fn json_files(path: &Path) -> Result<Vec<PathBuf>> {
    if path.is_file() {
        return Ok(vec![path.to_path_buf()]);
    }
    let mut files: Vec<PathBuf> = fs::read_dir(path)
        .with_context(|| format!("reading {}", path.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    files.sort();
    Ok(files)
}

fn threads() -> usize {
    std::env::var("SEMIFREE_THREADS")
        .ok()
        .and_then(|s| s.parse().ok())
        .filter(|n| *n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
}

fn verify(path: &Path) -> Result<ExitCode> {
    let files = json_files(path)?;
    let chunk = files.len().div_ceil(threads()).max(1);
    let mut results: BTreeMap<usize, std::result::Result<String, String>> = BTreeMap::new();
    std::thread::scope(|s| {
        let handles: Vec<_> = files
            .chunks(chunk)
            .enumerate()
            .map(|(c, part)| {
                s.spawn(move || {
                    part.iter()
                        .enumerate()
                        .map(|(i, f)| (c * chunk + i, verify_file(f).map_err(|e| format!("{e:#}"))))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            results.extend(h.join().expect("verify worker panicked"));
        }
    });
    let mut failures = 0;
    for (i, r) in results {
        let name = files[i].file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        match r {
            Ok(note) => println!("ok {name}: {note}"),
            Err(e) => {
                failures += 1;
                println!("FAILED {name}: {e}");
            }
        }
    }
    println!("{} files, {failures} failures", files.len());
    Ok(if failures == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
