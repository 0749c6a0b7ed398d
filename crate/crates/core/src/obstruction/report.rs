use std::sync::Arc;
use std::time::{Duration, Instant};

use serde::Serialize;
use serde_json::{json, Value};

use super::eigen::eigenvalue_check;
use super::morita::{derive_contradiction, verify_corner_commutation, verify_fixed_point_free, MoritaScenario};
use crate::commlattice::enumerate_commutative_subrings;
use crate::error::{Error, Result};
use crate::exec::{self, Budget, ExecMode};
use crate::finring::{make_gf, make_matrix_ring, make_triangular_ring, scalar_field, RingTable};
use crate::ks::{generate_peres, ks_colorable, lift_to_dimension, BranchOrder, RaySystem};
use crate::primespec::{enumerate_partial_morphisms, part_spec};

/// Randomized orderings used to confirm each UNSAT answer.
pub const UNSAT_REPLAYS: u64 = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClaimStatus {
    Verified,
    Failed,
    /// A search ran out of budget; nothing is claimed.
    Incomplete,
}

#[derive(Clone, Debug, Serialize)]
pub struct Claim {
    pub id: String,
    pub status: ClaimStatus,
    pub detail: Value,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Clone, Debug)]
pub struct ReportTargets {
    pub rings: Vec<Arc<RingTable>>,
    pub ray_systems: Vec<(String, RaySystem)>,
    /// Name of a ray system above and the target dimension.
    pub lifts: Vec<(String, usize)>,
    pub morita: Vec<(Arc<RingTable>, usize)>,
}

impl ReportTargets {
    /// M₂(F₂), M₂(F₃), T₂(F₂), the Peres system and its 4-dimensional lift,
    /// and the permutation-matrix scenarios over F₂, F₃, F₄, F₅ for n = 2, 3, 4.
    pub fn paper_default() -> Result<Self> {
        let f2 = Arc::new(make_gf(2, 1)?);
        let f3 = Arc::new(make_gf(3, 1)?);
        let fields = [Arc::clone(&f2), Arc::clone(&f3), Arc::new(make_gf(2, 2)?), Arc::new(make_gf(5, 1)?)];
        Ok(Self {
            rings: vec![
                Arc::new(make_matrix_ring(&f2, 2)?),
                Arc::new(make_matrix_ring(&f3, 2)?),
                Arc::new(make_triangular_ring(&f2, 2)?),
            ],
            ray_systems: vec![("peres".into(), generate_peres())],
            lifts: vec![("peres".into(), 4)],
            morita: fields.iter().flat_map(|k| (2..=4).map(move |n| (Arc::clone(k), n))).collect(),
        })
    }
}

#[derive(Clone, Debug)]
pub struct ObstructionReport {
    pub claims: Vec<Claim>,
    /// `None` when a component is incomplete or a required component is
    /// missing.
    pub verdict: Option<bool>,
}

impl ObstructionReport {
    pub fn claim(&self, id: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self, timings: bool) -> Value {
        let mut v = json!({
            "claims": self.claims,
            "verdict": match self.verdict {
                Some(true) => "verified",
                Some(false) => "failed",
                None => "withheld",
            },
        });
        if timings {
            v["timings"] = self.claims.iter().map(|c| (c.id.clone(), json!(c.elapsed.as_secs_f64()))).collect();
        }
        v
    }
}

enum Task<'a> {
    Ring(&'a Arc<RingTable>),
    Rays(&'a str, &'a RaySystem),
    Lift(&'a str, &'a RaySystem, usize),
    Morita(&'a Arc<RingTable>, usize),
}

/// Recomputes every claim from scratch, each with a fresh budget.
pub fn build_report(targets: &ReportTargets, budget: impl Fn() -> Budget + Sync, mode: ExecMode) -> Result<ObstructionReport> {
    let mut tasks: Vec<Task> = targets.rings.iter().map(Task::Ring).collect();
    tasks.extend(targets.ray_systems.iter().map(|(name, sys)| Task::Rays(name, sys)));
    for (name, n) in &targets.lifts {
        let sys = targets
            .ray_systems
            .iter()
            .find(|(m, _)| m == name)
            .map(|(_, s)| s)
            .ok_or_else(|| Error::Definition(format!("lift refers to unknown ray system `{name}`")))?;
        tasks.push(Task::Lift(name, sys, *n));
    }
    tasks.extend(targets.morita.iter().map(|(k, n)| Task::Morita(k, *n)));
    // the outer split already saturates the pool; inner searches run sequentially
    let inner = ExecMode::Sequential;
    let per_task = exec::try_map_vec(mode, &tasks, |task| match task {
        Task::Ring(r) => ring_claims(r, &budget, inner),
        Task::Rays(name, sys) => Ok(vec![timed(format!("ks.{name}.unsat"), || unsat_claim(sys, &budget))]),
        Task::Lift(name, sys, n) => Ok(vec![timed(format!("ks.{name}.lift{n}.unsat"), || {
            unsat_claim(&lift_to_dimension(sys, *n)?, &budget)
        })]),
        Task::Morita(k, n) => morita_claims(k, *n, &budget),
    })?;
    let claims: Vec<Claim> = per_task.into_iter().flatten().collect();

    let verified = |prefix: &str, suffix: &str| {
        claims
            .iter()
            .any(|c| c.id.starts_with(prefix) && c.id.ends_with(suffix) && c.status == ClaimStatus::Verified)
    };
    let verdict = if claims.iter().any(|c| c.status == ClaimStatus::Incomplete)
        || !verified("ks.", ".unsat")
        || !verified("morita.contradiction.", "")
    {
        None
    } else {
        Some(claims.iter().all(|c| c.status == ClaimStatus::Verified))
    };
    Ok(ObstructionReport { claims, verdict })
}

fn timed(id: String, f: impl FnOnce() -> Result<(ClaimStatus, Value)>) -> Claim {
    let started = Instant::now();
    let (status, detail) = match f() {
        Ok(out) => out,
        Err(e) if e.is_budget() => (ClaimStatus::Incomplete, json!({ "error": e.to_string() })),
        Err(e) => (ClaimStatus::Failed, json!({ "error": e.to_string() })),
    };
    Claim { id, status, detail, elapsed: started.elapsed() }
}

fn ring_claims(ring: &Arc<RingTable>, budget: &(impl Fn() -> Budget + Sync), mode: ExecMode) -> Result<Vec<Claim>> {
    let label = ring.label();
    let lattice = match enumerate_commutative_subrings(ring, &budget(), mode) {
        Ok(lat) => lat,
        Err(e) => return Ok(vec![timed(format!("lattice.{label}"), || Err(e))]),
    };
    let mut claims = vec![timed(format!("lattice.{label}"), || {
        let max_sizes: Vec<usize> = lattice.maximal().iter().map(|&i| lattice.subring(i).len()).collect();
        Ok((ClaimStatus::Verified, json!({ "subrings": lattice.len(), "maximal_sizes": max_sizes })))
    })];
    let ps = match part_spec(&lattice, &budget(), mode) {
        Ok(ps) => {
            claims.push(timed(format!("partspec.{label}"), || {
                let status = if ps.is_complete() { ClaimStatus::Verified } else { ClaimStatus::Incomplete };
                Ok((status, json!({ "count": ps.len(), "complete": ps.is_complete() })))
            }));
            ps
        }
        Err(e) => {
            claims.push(timed(format!("partspec.{label}"), || Err(e)));
            return Ok(claims);
        }
    };
    if let Some(scalars) = scalar_field(ring) {
        let k = Arc::clone(scalars.domain());
        claims.push(timed(format!("morphisms.{label}.{}", k.label()), || {
            let found = enumerate_partial_morphisms(&lattice, &k, &budget(), mode)?;
            if !found.stats.complete || !ps.is_complete() {
                return Ok((ClaimStatus::Incomplete, json!({ "count": found.morphisms.len() })));
            }
            let mut kernels_in_partspec = true;
            let mut eigen_failures = Vec::new();
            for f in &found.morphisms {
                kernels_in_partspec &= ps.index_of(&f.kernel()).is_some();
                if let Some(w) = eigenvalue_check(f, &scalars)? {
                    eigen_failures.push(w);
                }
            }
            let ok = kernels_in_partspec && eigen_failures.is_empty();
            Ok((
                if ok { ClaimStatus::Verified } else { ClaimStatus::Failed },
                json!({
                    "count": found.morphisms.len(),
                    "kernels_in_partspec": kernels_in_partspec,
                    "eigenvalue_failures": eigen_failures,
                }),
            ))
        }));
    }
    Ok(claims)
}

fn unsat_claim(sys: &RaySystem, budget: &(impl Fn() -> Budget + Sync)) -> Result<(ClaimStatus, Value)> {
    let first = ks_colorable(sys, BranchOrder::MostBases, &budget())?;
    let mut replays = Vec::new();
    for seed in 0..UNSAT_REPLAYS {
        replays.push(ks_colorable(sys, BranchOrder::Shuffled(seed), &budget())?);
    }
    let all = std::iter::once(&first).chain(&replays);
    let status = if all.clone().any(|r| !r.stats.complete) {
        ClaimStatus::Incomplete
    } else if all.clone().all(|r| r.is_unsat()) {
        ClaimStatus::Verified
    } else {
        ClaimStatus::Failed
    };
    Ok((
        status,
        json!({
            "rays": sys.len(),
            "bases": sys.bases().len(),
            "dim": sys.dim(),
            "result": first.status,
            "orderings": 1 + UNSAT_REPLAYS,
        }),
    ))
}

fn morita_claims(k: &Arc<RingTable>, n: usize, budget: &(impl Fn() -> Budget + Sync)) -> Result<Vec<Claim>> {
    let tag = format!("{}.n{n}", k.label());
    let scenario = MoritaScenario::new(k, n)?;
    let verdict = |holds: bool| if holds { ClaimStatus::Verified } else { ClaimStatus::Failed };
    Ok(vec![
        timed(format!("morita.corner.{tag}"), || {
            scenario.check_invariants()?;
            let c = verify_corner_commutation(&scenario)?;
            Ok((verdict(c.holds), serde_json::to_value(&c)?))
        }),
        timed(format!("morita.fixedpoint.{tag}"), || {
            let c = verify_fixed_point_free(&scenario, &budget())?;
            Ok((verdict(c.holds), serde_json::to_value(&c)?))
        }),
        timed(format!("morita.contradiction.{tag}"), || {
            let chain = derive_contradiction(&scenario, &budget())?;
            Ok((ClaimStatus::Verified, json!({ "steps": chain.steps })))
        }),
    ])
}

/// Human-readable rendering of the JSON report.
pub fn render_text(report: &Value) -> String {
    let mut out = String::new();
    if let Some(claims) = report["claims"].as_array() {
        for c in claims {
            out.push_str(&format!(
                "{:<11} {}\n",
                c["status"].as_str().unwrap_or("?"),
                c["id"].as_str().unwrap_or("?")
            ));
        }
    }
    out.push_str(&format!("verdict: {}\n", report["verdict"].as_str().unwrap_or("?")));
    out
}
