use std::fs;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use anyhow::{bail, ensure, Context, Result};
use serde_json::{json, Value};

use dwlab_core::approx::{approx_degreewidth, degreewidth_bounds};
use dwlab_core::domset::{fpt_dominating_set, greedy_dominating_set, FamilyMode};
use dwlab_core::generators::{generate, GeneratorSpec};
use dwlab_core::oracles::{
    cutwidth_tournament, exact_degreewidth, exact_fas, exact_fvst, exact_min_ds,
    in_degree_ordering, Caps, CAP_ENV,
};
use dwlab_core::reductions::{
    assignment_from_nice_ordering, audit_construction, cubic_to_fvst, fvst_solution_to_vc,
    is_feedback_vertex_set, nice_ordering_from_assignment, normalize_parity, sat_to_degreewidth,
    vc_to_fvst_solution,
};
use dwlab_core::sparse::{fast_sparse, is_m_sparse};
use dwlab_core::{Error, Ordering, Tournament, VertexSet};

use crate::formats::{
    emit_ids, emit_tournament, parse_cnf, parse_edge_graph, parse_ids, parse_ordering,
    parse_tournament,
};
use crate::report::{sha256_hex, InputDigest, RunReport};
use crate::{
    BenchArgs, Cli, Command, DsArgs, DwArgs, Family, FasArgs, FvsArgs, GenArgs, ReduceCommand,
    Sat2dwArgs, SparseArgs, Vc2fvstArgs, VerifyArgs,
};

pub const BENCH_HEADER: &str = "n,seed,exact_dw,approx,ratio,ctw,fas,approx_us,exact_us";

/// Exit code plus the `result` object of the report.
enum Outcome {
    Yes(Value),
    No(Value),
}

struct Ctx {
    command: &'static str,
    echo: Vec<String>,
    inputs: Vec<InputDigest>,
    timing: bool,
    started: Instant,
}

impl Ctx {
    fn read(&mut self, path: &Path) -> Result<String> {
        let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
        self.inputs.push(InputDigest {
            path: path.display().to_string(),
            sha256: sha256_hex(&bytes),
        });
        String::from_utf8(bytes).with_context(|| format!("{} is not UTF-8", path.display()))
    }

    fn tournament(&mut self, path: &Path) -> Result<Tournament> {
        let text = self.read(path)?;
        parse_tournament(&text).with_context(|| path.display().to_string())
    }

    fn ordering(&mut self, path: &Path, n: usize) -> Result<Ordering> {
        let text = self.read(path)?;
        parse_ordering(&text, n).with_context(|| path.display().to_string())
    }

    fn finish(self, outcome: Outcome, out: &mut dyn Write) -> Result<i32> {
        let (code, result) = match outcome {
            Outcome::Yes(v) => (0, v),
            Outcome::No(v) => (1, v),
        };
        let report = RunReport {
            command: self.command.to_string(),
            args: self.echo,
            inputs: self.inputs,
            result,
            elapsed_us: self.timing.then(|| self.started.elapsed().as_micros()),
        };
        out.write_all(report.to_line().as_bytes())?;
        Ok(code)
    }
}

fn caps() -> Result<Caps> {
    Ok(Caps::from_env()?)
}

/// Adds the cap override hint to cap violations.
fn core<T>(r: dwlab_core::Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::CapExceeded { cap, .. } => {
            anyhow::anyhow!("{e} (raise with {CAP_ENV}, currently {cap}, hard limit 30)")
        }
        other => other.into(),
    })
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn check_width(t: &Tournament, sigma: &Ordering, claimed: usize) -> Result<()> {
    let width = t.backward_profile(sigma)?.width;
    ensure!(
        width == claimed,
        "witness revalidation failed: width {width}, reported {claimed}"
    );
    Ok(())
}

fn set_of(t: &Tournament, ids: &[usize]) -> VertexSet {
    VertexSet::from_iter_with_capacity(t.n(), ids.iter().copied())
}

pub(crate) fn dispatch(cli: &Cli, echo: Vec<String>, out: &mut dyn Write) -> Result<i32> {
    let mut ctx = Ctx {
        command: "",
        echo,
        inputs: Vec::new(),
        timing: cli.timing,
        started: Instant::now(),
    };
    let outcome = match &cli.command {
        Command::Gen(a) => {
            ctx.command = "gen";
            match gen(a, out)? {
                Some(o) => o,
                None => return Ok(0),
            }
        }
        Command::Dw(a) => {
            ctx.command = "dw";
            dw(&mut ctx, a)?
        }
        Command::Sparse(a) => {
            ctx.command = "sparse";
            sparse(&mut ctx, a)?
        }
        Command::Fas(a) => {
            ctx.command = "fas";
            fas(&mut ctx, a)?
        }
        Command::Fvs(a) => {
            ctx.command = "fvs";
            fvs(&mut ctx, a)?
        }
        Command::Ds(a) => {
            ctx.command = "ds";
            ds(&mut ctx, a)?
        }
        Command::Reduce(ReduceCommand::Sat2dw(a)) => {
            ctx.command = "reduce sat2dw";
            sat2dw(&mut ctx, a)?
        }
        Command::Reduce(ReduceCommand::Vc2fvst(a)) => {
            ctx.command = "reduce vc2fvst";
            vc2fvst(&mut ctx, a)?
        }
        Command::Verify(a) => {
            ctx.command = "verify";
            verify(&mut ctx, a)?
        }
        Command::Bench(a) => {
            ctx.command = "bench";
            match bench(a, cli.timing, out)? {
                Some(o) => o,
                None => return Ok(0),
            }
        }
    };
    ctx.finish(outcome, out)
}

fn gen(a: &GenArgs, out: &mut dyn Write) -> Result<Option<Outcome>> {
    let spec = match a.family {
        Family::Acyclic { n } => GeneratorSpec::Acyclic { n },
        Family::Rotational { k } => GeneratorSpec::Rotational { k },
        Family::U { n } => GeneratorSpec::U { n },
        Family::Random { n, seed } => GeneratorSpec::Random { n, seed },
    };
    let g = generate(spec)?;
    let text = emit_tournament(&g.tournament);
    match &a.output {
        None => {
            out.write_all(text.as_bytes())?;
            Ok(None)
        }
        Some(path) => {
            write_file(path, &text)?;
            Ok(Some(Outcome::Yes(json!({
                "spec": spec,
                "n": g.tournament.n(),
                "output": path.display().to_string(),
                "sha256": sha256_hex(text.as_bytes()),
            }))))
        }
    }
}

fn dw(ctx: &mut Ctx, a: &DwArgs) -> Result<Outcome> {
    let t = ctx.tournament(&a.input)?;
    if a.exact {
        let r = core(exact_degreewidth(&t, &caps()?))?;
        check_width(&t, &r.witness, r.value)?;
        Ok(Outcome::Yes(json!({
            "mode": "exact",
            "value": r.value,
            "ordering": r.witness.perm(),
            "explored": r.explored,
        })))
    } else if a.approx {
        let (w, sigma) = approx_degreewidth(&t);
        check_width(&t, &sigma, w)?;
        Ok(Outcome::Yes(json!({
            "mode": "approx",
            "value": w,
            "ordering": sigma.perm(),
            "guarantee": "at most 3 times the degreewidth",
        })))
    } else {
        let b = degreewidth_bounds(&t, &caps()?);
        Ok(Outcome::Yes(json!({
            "mode": "bounds",
            "bounds": b,
            "best_upper": b.best_upper(),
        })))
    }
}

fn sparse(ctx: &mut Ctx, a: &SparseArgs) -> Result<Outcome> {
    let t = ctx.tournament(&a.input)?;
    if let Some(&v) = a.protect.iter().find(|&&v| v >= t.n()) {
        bail!("protected vertex {v} out of range for {} vertices", t.n());
    }
    let m = set_of(&t, &a.protect);
    let Some(cert) = is_m_sparse(&t, &m) else {
        return Ok(Outcome::No(
            json!({ "sparse": false, "protected": m.to_vec() }),
        ));
    };
    let profile = t.backward_profile(&cert.ordering)?;
    ensure!(
        profile.width <= 1,
        "witness revalidation failed: width {}",
        profile.width
    );
    ensure!(
        m.iter().all(|v| profile.per_vertex[v] == 0),
        "witness revalidation failed: protected vertex carries a backward arc"
    );
    let blocks: Vec<Value> = cert
        .blocks
        .iter()
        .map(|b| {
            json!({
                "vertices": b.vertices,
                "closure": b.closure,
                "canonical": b.canonical.map(|k| k.name()),
            })
        })
        .collect();
    Ok(Outcome::Yes(json!({
        "sparse": true,
        "protected": m.to_vec(),
        "ordering": cert.ordering.perm(),
        "width": profile.width,
        "backward_arcs": t.backward_arcs(&cert.ordering),
        "blocks": blocks,
    })))
}

fn fas(ctx: &mut Ctx, a: &FasArgs) -> Result<Outcome> {
    let t = ctx.tournament(&a.input)?;
    let (mode, sigma) = if a.sparse {
        match fast_sparse(&t) {
            Ok(f) => ("sparse", f.ordering),
            Err(Error::NotSparse) => {
                return Ok(Outcome::No(json!({ "mode": "sparse", "sparse": false })));
            }
            Err(e) => return Err(e.into()),
        }
    } else {
        ("exact", core(exact_fas(&t, &caps()?))?.witness)
    };
    // the backward arcs of any ordering form a feedback arc set
    let arcs = t.backward_arcs(&sigma);
    let flipped = Tournament::from_fn(t.n(), |u, v| {
        t.has_arc(u, v) != (arcs.contains(&(u, v)) || arcs.contains(&(v, u)))
    })?;
    ensure!(
        flipped.is_acyclic(),
        "witness revalidation failed: reversal leaves a cycle"
    );
    Ok(Outcome::Yes(json!({
        "mode": mode,
        "value": arcs.len(),
        "arcs": arcs,
        "ordering": sigma.perm(),
    })))
}

fn fvs(ctx: &mut Ctx, a: &FvsArgs) -> Result<Outcome> {
    let t = ctx.tournament(&a.input)?;
    let (budget, found) = match a.k {
        Some(k) => (k, exact_fvst(&t, k).witness),
        None => {
            let mut k = 0;
            loop {
                if let Some(x) = exact_fvst(&t, k).witness {
                    break (k, Some(x));
                }
                k += 1;
            }
        }
    };
    match found {
        Some(x) => {
            ensure!(
                x.len() <= budget && is_feedback_vertex_set(&t, &x),
                "witness revalidation failed: not a feedback vertex set"
            );
            Ok(Outcome::Yes(json!({
                "k": budget,
                "minimum": a.k.is_none(),
                "size": x.len(),
                "set": x,
            })))
        }
        None => Ok(Outcome::No(json!({ "k": budget, "set": null }))),
    }
}

fn ds(ctx: &mut Ctx, a: &DsArgs) -> Result<Outcome> {
    let t = ctx.tournament(&a.input)?;
    let check = |set: &[usize]| -> Result<()> {
        ensure!(
            t.is_dominating_set(&set_of(&t, set)),
            "witness revalidation failed: not a dominating set"
        );
        Ok(())
    };
    if a.exact {
        let r = core(exact_min_ds(&t, &caps()?))?;
        check(&r.witness)?;
        return Ok(Outcome::Yes(
            json!({ "mode": "exact", "value": r.value, "set": r.witness }),
        ));
    }
    if a.greedy {
        let sigma = match &a.ordering {
            Some(p) => ctx.ordering(p, t.n())?,
            None => in_degree_ordering(&t),
        };
        let set = greedy_dominating_set(&t, &sigma)?;
        check(&set)?;
        let width = t.backward_profile(&sigma)?.width;
        ensure!(set.len() <= width + 1);
        return Ok(Outcome::Yes(json!({
            "mode": "greedy",
            "size": set.len(),
            "set": set,
            "ordering_width": width,
        })));
    }
    let s = a.s.expect("clap requires -s with --fpt");
    let mode = match a.seed {
        Some(seed) => FamilyMode::randomized(seed),
        None => FamilyMode::Exhaustive,
    };
    let r = fpt_dominating_set(&t, s, mode)?;
    let base = json!({
        "mode": "fpt",
        "s": s,
        "family": mode,
        "approx_width": r.approx_width,
        "members_examined": r.members_examined,
    });
    let with = |set: Value| {
        let mut v = base.clone();
        v["set"] = set;
        v
    };
    match r.set {
        Some(set) => {
            check(&set)?;
            Ok(Outcome::Yes(with(json!(set))))
        }
        None => Ok(Outcome::No(with(Value::Null))),
    }
}

fn sat2dw(ctx: &mut Ctx, a: &Sat2dwArgs) -> Result<Outcome> {
    let text = ctx.read(&a.input)?;
    let original = parse_cnf(&text).with_context(|| a.input.display().to_string())?;
    let f = normalize_parity(&original)?;
    let inst = sat_to_degreewidth(&f)?;
    let audit = audit_construction(&inst);
    ensure!(
        audit.is_empty(),
        "construction audit failed: {}",
        audit.join("; ")
    );
    let t = &inst.tournament;
    if let Some(p) = &a.output {
        write_file(p, &emit_tournament(t))?;
    }
    if let Some(p) = &a.sidecar {
        let sidecar = json!({
            "formula": f,
            "layout": inst.layout,
            "threshold": inst.threshold,
            "labels": inst.labels(),
            "blocks": inst.block_map(),
        });
        write_file(p, &(serde_json::to_string_pretty(&sidecar)? + "\n"))?;
    }
    let mut result = json!({
        "variables": f.n(),
        "clauses": f.m(),
        "normalized": f != original,
        "w": inst.w,
        "threshold": inst.threshold,
        "vertices": t.n(),
        "audit": audit,
    });

    if let Some(p) = &a.extract {
        let sigma = ctx.ordering(p, t.n())?;
        return Ok(match assignment_from_nice_ordering(&inst, &sigma) {
            Ok(assignment) => {
                ensure!(f.satisfied_by(&assignment));
                result["assignment"] = json!(assignment);
                Outcome::Yes(result)
            }
            Err(e @ (Error::NotNice(_) | Error::ThresholdReached { .. })) => {
                result["rejected"] = json!(e.to_string());
                Outcome::No(result)
            }
            Err(e) => return Err(e.into()),
        });
    }

    let assignment = if a.solve {
        match f.find_satisfying() {
            Some(x) => Some(x),
            None => {
                result["satisfiable"] = json!(false);
                return Ok(Outcome::No(result));
            }
        }
    } else {
        a.assignment.as_ref().map(|bits| {
            let mut x: Vec<bool> = bits.iter().map(|&b| b != 0).collect();
            // the padding variable added by normalization is free
            if x.len() + 1 == f.n() && f.n() != original.n() {
                x.push(false);
            }
            x
        })
    };
    let Some(assignment) = assignment else {
        return Ok(Outcome::Yes(result));
    };
    let sigma = nice_ordering_from_assignment(&inst, &assignment)?;
    let width = t.backward_profile(&sigma)?.width;
    if let Some(p) = &a.ordering_out {
        write_file(p, &emit_ids(sigma.perm()))?;
    }
    let below = width < inst.threshold;
    if below {
        ensure!(
            assignment_from_nice_ordering(&inst, &sigma)? == assignment,
            "witness revalidation failed: nice ordering does not read back"
        );
    }
    result["assignment"] = json!(assignment);
    result["nice_width"] = json!(width);
    result["below_threshold"] = json!(below);
    Ok(if below {
        Outcome::Yes(result)
    } else {
        Outcome::No(result)
    })
}

fn vc2fvst(ctx: &mut Ctx, a: &Vc2fvstArgs) -> Result<Outcome> {
    let text = ctx.read(&a.input)?;
    let g = parse_edge_graph(&text).with_context(|| a.input.display().to_string())?;
    let inst = cubic_to_fvst(&g)?;
    let t = &inst.tournament;
    let profile = t.backward_profile(&inst.sparse_ordering)?;
    ensure!(
        profile.width <= 1,
        "witness revalidation failed: emitted ordering has width {}",
        profile.width
    );
    if let Some(p) = &a.output {
        write_file(p, &emit_tournament(t))?;
    }
    if let Some(p) = &a.ordering_out {
        write_file(p, &emit_ids(inst.sparse_ordering.perm()))?;
    }
    if let Some(p) = &a.sidecar {
        let sidecar = json!({
            "graph": g,
            "offset": inst.offset,
            "patterns": inst.patterns,
            "arcs": inst.arcs,
            "labels": inst.labels(),
            "sparse_ordering": inst.sparse_ordering.perm(),
        });
        write_file(p, &(serde_json::to_string_pretty(&sidecar)? + "\n"))?;
    }
    let mut result = json!({
        "graph_vertices": g.n,
        "edges": g.edges.len(),
        "vertices": t.n(),
        "offset": inst.offset,
        "ordering_width": profile.width,
        "backward_arcs": profile.total_backward,
    });
    if let Some(cover) = &a.cover {
        return Ok(match vc_to_fvst_solution(&inst, cover) {
            Ok(x) => {
                ensure!(is_feedback_vertex_set(t, &x), "witness revalidation failed");
                if let Some(p) = &a.set_out {
                    write_file(p, &emit_ids(&x))?;
                }
                result["cover"] = json!(cover);
                result["fvs_size"] = json!(x.len());
                result["fvs"] = json!(x);
                Outcome::Yes(result)
            }
            Err(e @ Error::NotVertexCover(..)) => {
                result["rejected"] = json!(e.to_string());
                Outcome::No(result)
            }
            Err(e) => return Err(e.into()),
        });
    }
    if let Some(p) = &a.fvs {
        let text = ctx.read(p)?;
        let x = parse_ids(&text).with_context(|| p.display().to_string())?;
        return Ok(match fvst_solution_to_vc(&inst, &x) {
            Ok(rec) => {
                g.is_vertex_cover(&rec.cover)?;
                result["fvs_size"] = json!(x.len());
                result["normalized"] = json!(rec.normalized);
                result["cover_size"] = json!(rec.cover.len());
                result["cover"] = json!(rec.cover);
                Outcome::Yes(result)
            }
            Err(e @ Error::NotFeedbackVertexSet) => {
                result["rejected"] = json!(e.to_string());
                Outcome::No(result)
            }
            Err(e) => return Err(e.into()),
        });
    }
    Ok(Outcome::Yes(result))
}

fn verify(ctx: &mut Ctx, a: &VerifyArgs) -> Result<Outcome> {
    let t = ctx.tournament(&a.input)?;
    let sigma = ctx.ordering(&a.ordering, t.n())?;
    let p = t.backward_profile(&sigma)?;
    let matches = a.width.map(|w| w == p.width);
    let result = json!({
        "width": p.width,
        "total_backward": p.total_backward,
        "max_cut": p.max_cut,
        "per_vertex": p.per_vertex,
        "claimed_width": a.width,
        "matches": matches,
    });
    Ok(if matches == Some(false) {
        Outcome::No(result)
    } else {
        Outcome::Yes(result)
    })
}

fn bench(a: &BenchArgs, timing: bool, out: &mut dyn Write) -> Result<Option<Outcome>> {
    ensure!(
        a.n_min >= 1 && a.n_min <= a.n_max,
        "need 1 <= n-min <= n-max"
    );
    let caps = caps()?;
    let mut csv = String::from(BENCH_HEADER);
    csv.push('\n');
    let mut rows = 0;
    for n in a.n_min..=a.n_max {
        for i in 0..a.per_n {
            let seed = a.seed.wrapping_add(i);
            let t = dwlab_core::generators::random(n, seed)?;
            let clock = Instant::now();
            let (approx, sigma) = approx_degreewidth(&t);
            let approx_us = clock.elapsed().as_micros();
            check_width(&t, &sigma, approx)?;
            let (ctw, _) = cutwidth_tournament(&t);
            let clock = Instant::now();
            let exact = exact_degreewidth(&t, &caps).ok();
            let exact_us = clock.elapsed().as_micros();
            let fas = exact_fas(&t, &caps).ok().map(|r| r.value);
            let (exact_col, ratio_col) = match &exact {
                Some(r) => {
                    check_width(&t, &r.witness, r.value)?;
                    let ratio = if r.value == 0 {
                        1.0
                    } else {
                        approx as f64 / r.value as f64
                    };
                    (r.value.to_string(), format!("{ratio:.4}"))
                }
                None => (String::new(), String::new()),
            };
            let fas_col = fas.map(|f| f.to_string()).unwrap_or_default();
            let (a_us, e_us) = if timing {
                (
                    approx_us.to_string(),
                    if exact.is_some() {
                        exact_us.to_string()
                    } else {
                        String::new()
                    },
                )
            } else {
                (String::new(), String::new())
            };
            csv.push_str(&format!(
                "{n},{seed},{exact_col},{approx},{ratio_col},{ctw},{fas_col},{a_us},{e_us}\n"
            ));
            rows += 1;
        }
    }
    match &a.output {
        None => {
            out.write_all(csv.as_bytes())?;
            Ok(None)
        }
        Some(p) => {
            write_file(p, &csv)?;
            Ok(Some(Outcome::Yes(json!({
                "rows": rows,
                "output": p.display().to_string(),
                "sha256": sha256_hex(csv.as_bytes()),
            }))))
        }
    }
}
