use std::path::Path;
use std::sync::Arc;

use log::{info, warn};
use partspec_core::commlattice::{enumerate_commutative_subrings, CommLattice, LatticeCache};
use partspec_core::finring::parse_ring_definition;
use partspec_core::ks::{ks_colorable, lift_to_dimension, load_rays, save_rays, BranchOrder, Coloring, RaySystem};
use partspec_core::obstruction::{build_report, ReportTargets};
use partspec_core::partial::{partial_ideal_violation, prime_violation, PartialStructure};
use partspec_core::primespec::{enumerate_partial_morphisms, part_spec, spec, SearchStats};
use partspec_core::{Budget, ElementSet, Error, ExecMode, Result, RingTable};
use serde_json::{json, Map, Value};

use crate::{render, status, Cli, Command, Format};

struct Ctx<'a> {
    cli: &'a Cli,
    mode: ExecMode,
}

impl Ctx<'_> {
    fn budget(&self) -> Budget {
        Budget::new(self.cli.global.node_budget, Some(self.cli.global.time_budget))
    }

    fn load_ring(&self, path: &Path) -> Result<Arc<RingTable>> {
        let ring = parse_ring_definition(path)?;
        info!("loaded {} ({} elements) from {}", ring.label(), ring.size(), path.display());
        Ok(Arc::new(ring))
    }

    fn lattice(&self, ring: &Arc<RingTable>) -> Result<CommLattice> {
        let Some(dir) = &self.cli.global.cache_dir else {
            return enumerate_commutative_subrings(ring, &self.budget(), self.mode);
        };
        let cache = LatticeCache::new(dir);
        match cache.load(ring) {
            Ok(lat) => {
                info!("lattice for {} loaded from {}", ring.label(), dir.display());
                return Ok(lat);
            }
            Err(Error::CacheMiss(_)) => info!("cache miss for {}", ring.label()),
            Err(e) => warn!("ignoring unusable cache entry: {e}"),
        }
        let lat = enumerate_commutative_subrings(ring, &self.budget(), self.mode)?;
        std::fs::create_dir_all(dir)?;
        cache.store(&lat)?;
        Ok(lat)
    }

    fn emit(&self, command: &str, body: Value) {
        let mut out = Map::new();
        out.insert("schema_version".into(), json!(crate::SCHEMA_VERSION));
        out.insert("command".into(), json!(command));
        if let Value::Object(fields) = body {
            out.extend(fields);
        }
        let out = Value::Object(out);
        match self.cli.global.format {
            Format::Json => println!("{}", serde_json::to_string_pretty(&out).expect("serializable")),
            Format::Text => print!("{}", render::text(&out)),
        }
    }

    fn stats(&self, stats: &SearchStats) -> Value {
        json!({ "nodes": stats.nodes, "backtracks": stats.backtracks })
    }

    fn with_timing(&self, body: &mut Value, stats: &SearchStats) {
        if self.cli.global.timings {
            body["timings"] = json!({ "search_seconds": stats.wall_time.as_secs_f64() });
        }
    }
}

pub fn run(cli: &Cli) -> Result<u8> {
    let mode = if cli.global.jobs == Some(1) { ExecMode::Sequential } else { ExecMode::Parallel };
    let ctx = Ctx { cli, mode };
    match &cli.command {
        Command::Subrings { ring } => subrings(&ctx, ring),
        Command::Spec { ring } => spec_cmd(&ctx, ring),
        Command::Partspec { ring } => partspec(&ctx, ring),
        Command::Morphisms { ring, field } => morphisms(&ctx, ring, field),
        Command::CheckIdeal { ring, elements } => check_ideal(&ctx, ring, elements),
        Command::KsCheck { rays, replays } => {
            let loaded = load_rays(rays)?;
            if loaded.duplicates > 0 {
                warn!("{} duplicate rays dropped", loaded.duplicates);
            }
            coloring(&ctx, "ks-check", &loaded.system, *replays, loaded.duplicates)
        }
        Command::KsLift { rays, dim, out } => {
            let loaded = load_rays(rays)?;
            let lifted = lift_to_dimension(&loaded.system, *dim)?;
            if let Some(out) = out {
                save_rays(&lifted, out)?;
                info!("lifted system written to {}", out.display());
            }
            coloring(&ctx, "ks-lift", &lifted, 0, loaded.duplicates)
        }
        Command::VerifyPaper { rays } => verify_paper(&ctx, rays.as_deref()),
    }
}

fn subrings(ctx: &Ctx, path: &Path) -> Result<u8> {
    let ring = ctx.load_ring(path)?;
    let lat = ctx.lattice(&ring)?;
    let subrings: Vec<Value> = lat
        .subrings()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            json!({
                "index": i,
                "size": c.len(),
                "maximal": lat.maximal().contains(&i),
                "elements": c.members().to_vec(),
            })
        })
        .collect();
    ctx.emit(
        "subrings",
        json!({
            "ring": ring.label(),
            "size": ring.size(),
            "fingerprint": ring.fingerprint(),
            "count": lat.len(),
            "maximal": lat.maximal(),
            "subrings": subrings,
        }),
    );
    Ok(status::OK)
}

fn spec_cmd(ctx: &Ctx, path: &Path) -> Result<u8> {
    let ring = ctx.load_ring(path)?;
    if !ring.is_commutative() {
        return Err(Error::NotCommutative(format!("{} (use `partspec` for noncommutative rings)", ring.label())));
    }
    let s = spec(&ring, &ctx.budget())?;
    ctx.emit("spec", s.to_json());
    Ok(status::OK)
}

fn partspec(ctx: &Ctx, path: &Path) -> Result<u8> {
    let ring = ctx.load_ring(path)?;
    let lat = ctx.lattice(&ring)?;
    let ps = part_spec(&lat, &ctx.budget(), ctx.mode)?;
    let mut body = ps.to_json();
    body["stats"] = ctx.stats(ps.stats());
    ctx.with_timing(&mut body, ps.stats());
    if !ps.is_complete() {
        // a truncated search proves nothing about the total count
        let found = body.as_object_mut().expect("object").remove("count");
        body["found_before_budget"] = found.unwrap_or(Value::Null);
        ctx.emit("partspec", body);
        eprintln!("error: budget_exhausted: prime partial ideal search stopped after {} nodes", ps.stats().nodes);
        return Ok(status::BUDGET);
    }
    ctx.emit("partspec", body);
    Ok(status::OK)
}

fn morphisms(ctx: &Ctx, ring_path: &Path, field_path: &Path) -> Result<u8> {
    let ring = ctx.load_ring(ring_path)?;
    let field = ctx.load_ring(field_path)?;
    let lat = ctx.lattice(&ring)?;
    let found = enumerate_partial_morphisms(&lat, &field, &ctx.budget(), ctx.mode)?;
    let list: Vec<Value> = found
        .morphisms
        .iter()
        .map(|f| json!({ "table": f.table(), "kernel": f.kernel().to_vec() }))
        .collect();
    let complete = found.stats.complete;
    let mut body = json!({
        "ring": ring.label(),
        "field": field.label(),
        "complete": complete,
        "morphisms": list,
        "stats": ctx.stats(&found.stats),
    });
    if complete {
        body["count"] = json!(found.morphisms.len());
    }
    ctx.with_timing(&mut body, &found.stats);
    ctx.emit("morphisms", body);
    if !complete {
        eprintln!("error: budget_exhausted: partial morphism search stopped after {} nodes", found.stats.nodes);
        return Ok(status::BUDGET);
    }
    Ok(status::OK)
}

fn check_ideal(ctx: &Ctx, path: &Path, elements: &[usize]) -> Result<u8> {
    let ring = ctx.load_ring(path)?;
    if let Some(&bad) = elements.iter().find(|&&x| x >= ring.size()) {
        return Err(Error::ElementOutOfRange { index: bad, size: ring.size() });
    }
    let set = ElementSet::from_indices(ring.size(), elements.iter().copied());
    let s = PartialStructure::standard(&ring);
    let violation = partial_ideal_violation(&s, &set);
    let mut body = json!({
        "ring": ring.label(),
        "elements": set.to_vec(),
        "partial_ideal": violation.is_none(),
        "violation": violation,
    });
    if violation.is_none() {
        let prime = prime_violation(&s, &set)?;
        body["prime"] = json!(prime.is_none());
        body["prime_violation"] = json!(prime);
    }
    ctx.emit("check-ideal", body);
    Ok(if violation.is_none() { status::OK } else { status::VERIFICATION_FAILED })
}

fn coloring(ctx: &Ctx, command: &str, sys: &RaySystem, replays: u64, duplicates: usize) -> Result<u8> {
    let first = ks_colorable(sys, BranchOrder::MostBases, &ctx.budget())?;
    let mut stats = vec![first.stats.clone()];
    let mut agree = true;
    if first.is_unsat() {
        for seed in 0..replays {
            let r = ks_colorable(sys, BranchOrder::Shuffled(seed), &ctx.budget())?;
            agree &= r.status == first.status || !r.stats.complete;
            stats.push(r.stats);
        }
    }
    let complete = stats.iter().all(|s| s.complete);
    let mut body = json!({
        "dim": sys.dim(),
        "rays": sys.len(),
        "bases": sys.bases().len(),
        "duplicates_dropped": duplicates,
        "complete": complete,
        "orderings": stats.len(),
        "orderings_agree": agree,
        "stats": ctx.stats(&first.stats),
    });
    match &first.status {
        Coloring::Sat { witness } => {
            body["result"] = json!("sat");
            body["witness"] = json!(witness);
        }
        Coloring::Unsat if complete => body["result"] = json!("unsat"),
        _ => body["result"] = json!("unknown"),
    }
    if ctx.cli.global.timings {
        body["timings"] = json!({ "search_seconds": stats.iter().map(|s| s.wall_time.as_secs_f64()).collect::<Vec<_>>() });
    }
    ctx.emit(command, body);
    if !complete {
        eprintln!("error: budget_exhausted: coloring search incomplete");
        return Ok(status::BUDGET);
    }
    Ok(if agree { status::OK } else { status::VERIFICATION_FAILED })
}

fn verify_paper(ctx: &Ctx, rays: Option<&Path>) -> Result<u8> {
    let mut targets = ReportTargets::paper_default()?;
    if let Some(path) = rays {
        let loaded = load_rays(path)?;
        targets.ray_systems = vec![("peres".into(), loaded.system)];
    }
    let report = build_report(&targets, || ctx.budget(), ctx.mode)?;
    let json = report.to_json(ctx.cli.global.timings);
    match ctx.cli.global.format {
        Format::Json => ctx.emit("verify-paper", json),
        Format::Text => print!("{}", partspec_core::obstruction::render_text(&json)),
    }
    Ok(match report.verdict {
        Some(true) => status::OK,
        Some(false) => status::VERIFICATION_FAILED,
        None if report.claims.iter().any(|c| c.status == partspec_core::obstruction::ClaimStatus::Incomplete) => {
            status::BUDGET
        }
        None => status::VERIFICATION_FAILED,
    })
}
