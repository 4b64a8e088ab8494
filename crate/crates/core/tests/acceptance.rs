//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness; exits non-zero if any criterion fails.
//!
//! Set `PLANEWHEEL_LONG=1` to also run the optional long-running criterion.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use common::{gw_family, predicate_matrix, random_set};
use planewheel::doublestar::{bad_halfplanes, criterion_small_families, empty_triple};
use planewheel::enumerate_k3::enumerate_all;
use planewheel::partition::{canonical_form, structural_audit, validate, AuditReport, Mode, Partition, Symmetry};
use planewheel::solver::{export_lp, solve, solve_all, SolveConfig, SolveOutcome, Status};
use planewheel::wheelgeom::{
    canonicalize, combinatorial_cross, crossing_graph, realize_coordinates, segments_cross, EdgeId, WheelModel,
};
use rand::rngs::StdRng;
use rand::SeedableRng;

const MIN: Duration = Duration::from_secs(60);

/// Audit totals for criterion 10.
#[derive(Default)]
struct Audits {
    partitions: usize,
    structural: usize,
    forced_budget: usize,
    violations: Vec<String>,
}

impl Audits {
    fn record(&mut self, p: &Partition, mode: Mode) -> bool {
        let r: AuditReport = structural_audit(p, mode);
        self.partitions += 1;
        if r.structural {
            self.structural += 1;
        }
        if mode == Mode::Subgraph && r.forced.is_some() {
            self.forced_budget += 1;
        }
        for v in &r.violations {
            self.violations.push(format!("{:?} {:?}: {}", p.model().sizes(), v.claim, v.detail));
        }
        r.ok()
    }
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn solve_exhaustive(model: &WheelModel, mode: Mode, budget: Duration) -> SolveOutcome {
    let mut cfg = SolveConfig::new(mode);
    cfg.time_limit_secs = Some(budget.as_secs_f64());
    solve(model, &cfg).expect("solver error")
}

fn enumeration_counts(audits: &mut Audits) -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for (k, expected) in [(3, 20usize), (5, 320), (7, 5120)] {
        let mut forms = BTreeSet::new();
        let mut count = 0;
        for p in enumerate_all(k).expect("odd k") {
            count += 1;
            pass &= validate(&p, Mode::SpanningTree).ok() && audits.record(&p, Mode::SpanningTree);
            forms.insert(canonical_form(&p, Symmetry::RotationReflection));
        }
        pass &= count == expected && forms.len() == expected;
        parts.push(format!("k={k}: {count} generated, {} non-isomorphic, expected {expected}", forms.len()));
    }
    outcome(pass, parts.join("; "))
}

fn completeness(audits: &mut Audits) -> Outcome {
    let enumerated: BTreeSet<Vec<u8>> =
        enumerate_all(3).unwrap().map(|p| canonical_form(&p, Symmetry::RotationReflection)).collect();
    let model = WheelModel::bumpy(3, 3).unwrap();
    let (status, sols, stats) = solve_all(&model, &SolveConfig::new(Mode::SpanningTree)).unwrap();
    let mut ok = status != Status::Limit;
    for p in &sols {
        ok &= audits.record(p, Mode::SpanningTree);
    }
    let found: BTreeSet<Vec<u8>> = sols.iter().map(|p| canonical_form(p, Symmetry::RotationReflection)).collect();
    outcome(
        ok && found == enumerated,
        format!(
            "{} solutions, {} classes under rotation and reflection, enumerator {} , equal sets: {} ({} nodes)",
            sols.len(),
            found.len(),
            enumerated.len(),
            found == enumerated,
            stats.nodes
        ),
    )
}

fn tree_positive(audits: &mut Audits) -> Outcome {
    let out = solve_exhaustive(&WheelModel::bumpy(3, 3).unwrap(), Mode::SpanningTree, MIN);
    let valid = out.witness.as_ref().is_some_and(|p| validate(p, Mode::SpanningTree).ok() && audits.record(p, Mode::SpanningTree));
    outcome(out.status == Status::Sat && valid, format!("BW(3,3) spanning trees: {:?}, witness audited: {valid}", out.status))
}

fn tree_negative() -> Outcome {
    let out = solve_exhaustive(&WheelModel::bumpy(3, 5).unwrap(), Mode::SpanningTree, 60 * MIN);
    outcome(
        out.status == Status::Unsat,
        format!("BW(3,5) spanning trees: {:?} after {} nodes (fingerprint {})", out.status, out.stats.nodes, out.stats.fingerprint),
    )
}

fn subgraph_positive(audits: &mut Audits) -> Outcome {
    let out = solve_exhaustive(&WheelModel::bumpy(3, 5).unwrap(), Mode::Subgraph, 10 * MIN);
    let detail = match &out.witness {
        Some(p) => {
            let nonempty = p.classes().iter().filter(|c| !c.is_empty()).count();
            let valid = validate(p, Mode::Subgraph).ok() && audits.record(p, Mode::Subgraph);
            (nonempty == 8 && p.m() == 8 && valid, format!("SAT with {nonempty} non-empty plane classes, valid: {valid}"))
        }
        None => (false, format!("{:?}", out.status)),
    };
    outcome(out.status == Status::Sat && detail.0, format!("BW(3,5) plane subgraphs: {}", detail.1))
}

fn double_star_family(audits: &mut Audits) -> Outcome {
    let family = gw_family(&[3, 5], 11);
    let mut disagreements = Vec::new();
    let mut unsat = 0;
    for model in &family {
        let ps = realize_coordinates(model).unwrap();
        let criterion = criterion_small_families(model);
        let triple = empty_triple(&bad_halfplanes(model, &ps)).is_some();
        let out = solve_exhaustive(model, Mode::DoubleStar, 30 * MIN);
        if let Some(p) = &out.witness {
            audits.record(p, Mode::DoubleStar);
        }
        let no_partition = out.status == Status::Unsat;
        unsat += usize::from(no_partition);
        if out.status == Status::Limit || criterion != triple || criterion != no_partition {
            disagreements.push(format!("{:?}", model.sizes()));
        }
    }
    outcome(
        disagreements.is_empty(),
        format!("{} wheels, {unsat} without a partition, disagreements: {:?}", family.len(), disagreements),
    )
}

fn double_star_examples(audits: &mut Audits) -> Outcome {
    let bw = WheelModel::bumpy(3, 3).unwrap();
    let ps = realize_coordinates(&bw).unwrap();
    let crit = criterion_small_families(&bw);
    let triple = empty_triple(&bad_halfplanes(&bw, &ps)).is_some();
    let status = solve_exhaustive(&bw, Mode::DoubleStar, MIN).status;
    let mut pass = crit && triple && status == Status::Unsat;
    let mut regular = Vec::new();
    for k in [3, 5, 7, 9, 11] {
        let model = WheelModel::generalized(&vec![1; k]).unwrap();
        let start = Instant::now();
        let out = solve_exhaustive(&model, Mode::DoubleStar, MIN);
        let ok = !criterion_small_families(&model)
            && out.status == Status::Sat
            && out.witness.as_ref().is_some_and(|p| audits.record(p, Mode::DoubleStar))
            && start.elapsed() < MIN;
        pass &= ok;
        regular.push(format!("{}:{}", k + 1, if ok { "SAT" } else { "FAIL" }));
    }
    outcome(
        pass,
        format!("BW(3,3): criterion {crit}, empty triple {triple}, solver {status:?}; regular wheels by point count {}", regular.join(" ")),
    )
}

fn predicate_equivalence() -> Outcome {
    let mut pairs = 0usize;
    let mut bad = Vec::new();
    let models = predicate_matrix();
    for model in &models {
        let ps = realize_coordinates(model).unwrap();
        let edges: Vec<EdgeId> = model.edges().collect();
        for (i, &e) in edges.iter().enumerate() {
            for &f in &edges[i + 1..] {
                pairs += 1;
                if combinatorial_cross(model, e, f) != segments_cross(e, f, &ps) {
                    bad.push(format!("{:?} {e} {f}", model.sizes()));
                }
            }
        }
    }
    outcome(bad.is_empty(), format!("{} models up to 16 points, {pairs} edge pairs, {} mismatches", models.len(), bad.len()))
}

fn canonicalization() -> Outcome {
    let mut rng = StdRng::seed_from_u64(2024);
    let mut failures = 0;
    let mut even_totals = 0;
    for _ in 0..100 {
        let ps = random_set(&mut rng);
        let Ok(c) = canonicalize(&ps) else {
            failures += 1;
            continue;
        };
        even_totals += usize::from(c.model.hull_count() % 2 == 0);
        let edges: Vec<EdgeId> = c.model.edges().collect();
        let map = |e: EdgeId| EdgeId::new(c.vertex_map[e.a], c.vertex_map[e.b]);
        let same = edges.iter().enumerate().all(|(i, &e)| {
            edges[i + 1..].iter().all(|&f| combinatorial_cross(&c.model, e, f) == segments_cross(map(e), map(f), &ps))
        });
        if c.model.k() % 2 == 0 || !same {
            failures += 1;
        }
    }
    outcome(failures == 0, format!("100 random sets ({even_totals} with an even hull), {failures} failures"))
}

fn structural_audits(audits: &Audits) -> Outcome {
    outcome(
        audits.violations.is_empty() && audits.structural > 0 && audits.forced_budget > 0,
        format!(
            "{} partitions audited, {} with structural checks, {} subgraph forced-edge budgets, {} violations{}",
            audits.partitions,
            audits.structural,
            audits.forced_budget,
            audits.violations.len(),
            audits.violations.first().map(|v| format!(", first: {v}")).unwrap_or_default()
        ),
    )
}

fn lp_export() -> Outcome {
    let model = WheelModel::bumpy(3, 5).unwrap();
    let mut cfg = SolveConfig::new(Mode::Subgraph);
    cfg.enforce_class_size = true;
    let lp = export_lp(&model, &cfg);
    let count = |prefix: &str| lp.lines().filter(|l| l.starts_with(prefix)).count();
    let binaries = lp.split("Binaries\n").nth(1).map_or(0, |s| s.lines().filter(|l| l.starts_with(" x_")).count());
    let crossing_pairs = crossing_graph(&model).pair_count();
    let stable = export_lp(&model, &cfg) == lp;
    let (c1, c2, c3, c4) = (count(" c1_"), count(" c2_"), count(" c3_"), count(" c4_"));
    outcome(
        binaries == 960 && c1 == 120 && c2 == crossing_pairs * 8 && c3 == 8 && c4 == 0 && stable,
        format!(
            "{binaries} binaries, {c1} one-color rows, {c2} crossing rows ({crossing_pairs} pairs x 8 colors), {c3} class-size rows, byte-stable: {stable}"
        ),
    )
}

fn long_running() -> Outcome {
    let bw = solve_exhaustive(&WheelModel::bumpy(3, 7).unwrap(), Mode::SpanningTree, 24 * 60 * MIN);
    let gw = solve_exhaustive(&WheelModel::generalized(&[2, 3, 3, 4, 5]).unwrap(), Mode::SpanningTree, 24 * 60 * MIN);
    outcome(
        bw.status == Status::Unsat && gw.status == Status::Unsat,
        format!(
            "BW(3,7) spanning trees {:?} ({} nodes); GW[2,3,3,4,5] spanning trees {:?} ({} nodes)",
            bw.status, bw.stats.nodes, gw.status, gw.stats.nodes
        ),
    )
}

fn main() {
    let mut audits = Audits::default();
    let mut failed = 0;
    let mut report = |id: &str, name: &str, budget: Duration, run: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let out = run();
        let took = start.elapsed();
        let pass = out.pass && took <= budget;
        if !pass {
            failed += 1;
        }
        println!(
            "{} [{id:>2}] {name}: {} ({:.2}s, budget {}s)",
            if pass { "PASS" } else { "FAIL" },
            out.detail,
            took.as_secs_f64(),
            budget.as_secs()
        );
    };
    report("1", "enumeration counts", Duration::from_secs(10), &mut || enumeration_counts(&mut audits));
    report("2", "k=3 completeness", 5 * MIN, &mut || completeness(&mut audits));
    report("3", "tree partition exists for l=3", Duration::from_secs(1), &mut || tree_positive(&mut audits));
    report("4", "no tree partition for l=5", 60 * MIN, &mut tree_negative);
    report("5", "plane subgraph partition for BW(3,5)", 10 * MIN, &mut || subgraph_positive(&mut audits));
    report("6", "double star triple equivalence", 30 * MIN, &mut || double_star_family(&mut audits));
    report("7", "double star examples", 6 * MIN, &mut || double_star_examples(&mut audits));
    report("8", "crossing predicate equivalence", MIN, &mut predicate_equivalence);
    report("9", "canonicalization of random sets", MIN, &mut canonicalization);
    report("10", "structural audits", Duration::from_secs(1), &mut || structural_audits(&audits));
    report("11", "LP export", Duration::from_secs(10), &mut lp_export);
    if std::env::var_os("PLANEWHEEL_LONG").is_some() {
        report("12", "long-running infeasibility", Duration::MAX, &mut long_running);
    } else {
        println!("SKIP [12] long-running infeasibility: optional, set PLANEWHEEL_LONG=1");
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
