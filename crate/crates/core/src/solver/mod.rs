//! Exact exhaustive search for partitions, LP export and theorem verdicts.

mod decide;
mod family;
mod lp;
mod search;

use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::partition::{validate, Mode, Partition};
use crate::wheelgeom::{EdgeId, WheelModel};
use search::{fnv_step, Limits, Outcome, Problem, Search, Stop};

pub use decide::{decide_theorem, Verdict, Verdicts};
pub use family::{is_crossing_family, max_crossing_family, max_crossing_family_with_budget};
pub use lp::export_lp;

/// Default node cap when none is configured.
pub const DEFAULT_NODE_LIMIT: u64 = 50_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("{0} colors exceed the supported maximum of 32")]
    TooManyColors(usize),
    #[error("domain restriction has {got} entries, expected {expected}")]
    RestrictionShape { expected: usize, got: usize },
    #[error("solver produced an invalid witness: {0}")]
    InvalidWitness(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveConfig {
    pub mode: Mode,
    /// Every class has exactly `2n - 1` edges. Implied by the tree modes.
    pub enforce_class_size: bool,
    /// No monochromatic triangle.
    pub enforce_triangle: bool,
    pub node_limit: Option<u64>,
    pub time_limit_secs: Option<f64>,
    /// Reserved; the search is deterministic.
    pub seed: u64,
    /// Worker threads; `1` runs on the calling thread.
    pub parallel_width: usize,
    pub symmetry_breaking: bool,
    /// Depth of the deterministic split into independent subtrees.
    pub split_depth: usize,
}

impl SolveConfig {
    pub fn new(mode: Mode) -> Self {
        SolveConfig {
            mode,
            enforce_class_size: mode != Mode::Subgraph,
            enforce_triangle: false,
            node_limit: None,
            time_limit_secs: None,
            seed: 0,
            parallel_width: 1,
            symmetry_breaking: true,
            split_depth: 4,
        }
    }

    pub fn with_parallel_width(mut self, w: usize) -> Self {
        self.parallel_width = w;
        self
    }

    pub fn with_node_limit(mut self, limit: u64) -> Self {
        self.node_limit = Some(limit);
        self
    }

    fn node_budget(&self) -> u64 {
        self.node_limit.unwrap_or(DEFAULT_NODE_LIMIT)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Sat,
    Unsat,
    Limit,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub nodes: u64,
    pub max_depth: usize,
    pub wall_ms: u64,
    /// Hash of the explored decision sequence.
    pub fingerprint: String,
    pub subtrees: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveOutcome {
    pub status: Status,
    pub witness: Option<Partition>,
    pub stats: Stats,
}

/// Extra constraints for restricted searches: allowed colors per edge (bit
/// masks in lexicographic edge order) and pre-assigned edges.
#[derive(Clone, Debug, Default)]
pub struct Restrictions {
    pub domains: Option<Vec<u32>>,
    pub fixed: Vec<(EdgeId, usize)>,
}

pub fn solve(model: &WheelModel, cfg: &SolveConfig) -> Result<SolveOutcome, SolveError> {
    solve_restricted(model, cfg, &Restrictions::default())
}

/// Like [`solve`] with domain restrictions. Color symmetry breaking is only
/// applied when no restriction is given, since restrictions tell colors apart.
pub fn solve_restricted(model: &WheelModel, cfg: &SolveConfig, r: &Restrictions) -> Result<SolveOutcome, SolveError> {
    let start = Instant::now();
    let problem = build_problem(model, cfg, r)?;
    let run = drive(&problem, cfg, false, start);
    let witness = match &run.solutions.first() {
        Some(colors) => {
            let p = Partition::new(model.clone(), problem.m, colors.to_vec())
                .map_err(|e| SolveError::InvalidWitness(e.to_string()))?;
            let report = validate(&p, cfg.mode);
            if !report.ok() {
                return Err(SolveError::InvalidWitness(format!("{:?}", report.violations)));
            }
            Some(p)
        }
        None => None,
    };
    Ok(SolveOutcome { status: run.status, witness, stats: run.stats(start) })
}

/// Every solution, one representative per color relabeling when symmetry
/// breaking is on. Stops with `Status::Limit` when the node budget runs out.
pub fn solve_all(model: &WheelModel, cfg: &SolveConfig) -> Result<(Status, Vec<Partition>, Stats), SolveError> {
    let start = Instant::now();
    let problem = build_problem(model, cfg, &Restrictions::default())?;
    let run = drive(&problem, cfg, true, start);
    let parts = run
        .solutions
        .iter()
        .map(|c| Partition::new(model.clone(), problem.m, c.clone()).map_err(|e| SolveError::InvalidWitness(e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    let stats = run.stats(start);
    Ok((run.status, parts, stats))
}

fn build_problem(model: &WheelModel, cfg: &SolveConfig, r: &Restrictions) -> Result<Problem, SolveError> {
    let m = model.n();
    if m > 32 {
        return Err(SolveError::TooManyColors(m));
    }
    let restricted = r.domains.is_some() || !r.fixed.is_empty();
    let symmetry = cfg.symmetry_breaking && !restricted;
    let mut problem = Problem::new(model, m, cfg.mode, cfg.enforce_class_size, cfg.enforce_triangle, symmetry);
    if let Some(d) = &r.domains {
        if d.len() != problem.edges.len() {
            return Err(SolveError::RestrictionShape { expected: problem.edges.len(), got: d.len() });
        }
        for (slot, &mask) in problem.initial.iter_mut().zip(d) {
            *slot &= mask;
        }
    }
    problem.fixed = r.fixed.iter().map(|&(e, c)| (model.edge_index(e), c)).collect();
    if symmetry {
        let seed = max_crossing_family(model);
        let idx: Vec<usize> = seed.iter().map(|&e| model.edge_index(e)).collect();
        problem.fixed = idx.iter().enumerate().filter(|&(c, _)| c < m).map(|(c, &e)| (e, c)).collect();
        problem.promote(&idx);
    }
    Ok(problem)
}

struct Run {
    status: Status,
    solutions: Vec<Vec<usize>>,
    nodes: u64,
    max_depth: usize,
    fingerprint: u64,
    subtrees: usize,
}

impl Run {
    fn stats(&self, start: Instant) -> Stats {
        Stats {
            nodes: self.nodes,
            max_depth: self.max_depth,
            wall_ms: start.elapsed().as_millis() as u64,
            fingerprint: format!("{:016x}", self.fingerprint),
            subtrees: self.subtrees,
        }
    }
}

struct SubResult {
    outcome: Outcome,
    nodes: u64,
    max_depth: usize,
    fingerprint: u64,
    solutions: Vec<Vec<usize>>,
}

fn drive(problem: &Problem, cfg: &SolveConfig, all: bool, start: Instant) -> Run {
    let budget = cfg.node_budget();
    let deadline = cfg.time_limit_secs.map(|s| start + Duration::from_secs_f64(s));
    let Some(mut root) = Search::new(problem) else {
        return Run { status: Status::Unsat, solutions: Vec::new(), nodes: 0, max_depth: 0, fingerprint: 0, subtrees: 0 };
    };
    let mut prefixes = Vec::new();
    root.frontier(cfg.split_depth, &mut Vec::new(), &mut prefixes);

    let first_sat = AtomicUsize::new(usize::MAX);
    let job = |(i, prefix): (usize, &Vec<(usize, usize)>)| -> SubResult {
        let mut s = Search::new(problem).expect("root was feasible");
        for &(e, c) in prefix {
            let ok = s.decide(e, c);
            debug_assert!(ok, "replayed prefix must stay feasible");
        }
        let limits = Limits {
            nodes: budget,
            deadline,
            first_sat: (!all).then_some((&first_sat, i)),
        };
        let outcome = s.dfs(prefix.len(), all, &limits);
        if matches!(outcome, Outcome::Sat) {
            first_sat.fetch_min(i, Ordering::Relaxed);
        }
        SubResult { outcome, nodes: s.nodes, max_depth: s.max_depth, fingerprint: s.fingerprint, solutions: s.solutions }
    };
    let results: Vec<SubResult> = if cfg.parallel_width > 1 {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.parallel_width).build().expect("thread pool");
        pool.install(|| prefixes.par_iter().enumerate().map(job).collect())
    } else {
        let mut out = Vec::with_capacity(prefixes.len());
        for item in prefixes.iter().enumerate() {
            let r = job(item);
            let done = matches!(r.outcome, Outcome::Sat | Outcome::Stopped(_));
            out.push(r);
            if done {
                break;
            }
        }
        out
    };

    let mut run = Run {
        status: Status::Unsat,
        solutions: Vec::new(),
        nodes: root.nodes,
        max_depth: root.max_depth,
        fingerprint: root.fingerprint,
        subtrees: prefixes.len(),
    };
    for r in results {
        run.nodes += r.nodes;
        run.max_depth = run.max_depth.max(r.max_depth);
        run.fingerprint = fnv_step(run.fingerprint, r.fingerprint);
        run.solutions.extend(r.solutions);
        match r.outcome {
            Outcome::Sat => {
                run.status = Status::Sat;
                break;
            }
            Outcome::Stopped(Stop::Cancelled) => unreachable!("only subtrees after a solution are cancelled"),
            Outcome::Stopped(_) => {
                run.status = Status::Limit;
                break;
            }
            Outcome::Unsat => {}
        }
        if run.nodes > budget {
            run.status = Status::Limit;
            break;
        }
    }
    if all && run.status == Status::Unsat && !run.solutions.is_empty() {
        run.status = Status::Sat;
    }
    run
}
