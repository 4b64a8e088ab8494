use super::{AuditReport, Claim, ClassReport, Mode, Partition};
use crate::dsu::RollbackDsu;
use crate::edgeorder::{dist, maximal_edges};
use crate::wheelgeom::{combinatorial_cross, EdgeId, WheelModel};

struct ClassFacts {
    report: ClassReport,
    crossing: Option<(EdgeId, EdgeId)>,
    cycle_edge: Option<EdgeId>,
}

fn examine(model: &WheelModel, class: usize, edges: &[EdgeId]) -> ClassFacts {
    let points = model.point_count();
    let crossing = edges.iter().enumerate().find_map(|(i, &e)| {
        edges[i + 1..].iter().find(|&&f| combinatorial_cross(model, e, f)).map(|&f| (e, f))
    });

    let mut dsu = RollbackDsu::new(points);
    let mut degree = vec![0usize; points];
    let mut cycle_edge = None;
    for &e in edges {
        degree[e.a] += 1;
        degree[e.b] += 1;
        if !dsu.union(e.a, e.b) && cycle_edge.is_none() {
            cycle_edge = Some(e);
        }
    }
    let touched: Vec<usize> = (0..points).filter(|&v| degree[v] > 0).collect();
    let connected = !touched.is_empty() && touched.iter().all(|&v| dsu.same(v, touched[0]));
    let spanning = connected && touched.len() == points;

    let internal: Vec<usize> = (0..points).filter(|&v| degree[v] >= 2).collect();
    let star_shape = match internal.as_slice() {
        [] | [_] => true,
        [u, v] => edges.contains(&EdgeId::new(*u, *v)),
        _ => false,
    };

    let non_radial: Vec<EdgeId> = edges.iter().copied().filter(|e| !e.is_radial()).collect();
    let boundary_edges = non_radial.iter().filter(|&&e| dist(model, e) == Ok(1)).count();
    let maximal_diagonals = maximal_edges(model, &non_radial)
        .into_iter()
        .filter(|&e| dist(model, e).map_or(false, |d| d >= 2))
        .collect();

    ClassFacts {
        report: ClassReport {
            class,
            edges: edges.len(),
            plane: crossing.is_none(),
            size_2n_minus_1: edges.len() + 1 == points,
            connected,
            spanning,
            acyclic: cycle_edge.is_none(),
            double_star: spanning && cycle_edge.is_none() && star_shape,
            boundary_edges,
            maximal_diagonals,
        },
        crossing,
        cycle_edge,
    }
}

fn run(p: &Partition, mode: Mode) -> AuditReport {
    let model = p.model();
    let mut report = AuditReport { mode, classes: Vec::new(), violations: Vec::new(), structural: false, forced: None };
    if p.m() != model.n() {
        report.flag(Claim::ClassCount, None, Vec::new(), format!("{} classes for n = {}", p.m(), model.n()));
    }
    for (c, edges) in p.classes().iter().enumerate() {
        let facts = examine(model, c, edges);
        let r = &facts.report;
        if let Some((e, f)) = facts.crossing {
            report.flag(Claim::Plane, Some(c), vec![e, f], format!("class {c} contains crossing edges {e} and {f}"));
        }
        if mode != Mode::Subgraph {
            if !r.size_2n_minus_1 {
                report.flag(Claim::ClassSize, Some(c), Vec::new(), format!("class {c} has {} edges", r.edges));
            }
            if !r.connected {
                report.flag(Claim::Connected, Some(c), Vec::new(), format!("class {c} is disconnected"));
            }
            if r.connected && !r.spanning {
                report.flag(Claim::Spanning, Some(c), Vec::new(), format!("class {c} misses vertices"));
            }
            if let Some(e) = facts.cycle_edge {
                report.flag(Claim::Acyclic, Some(c), vec![e], format!("class {c} has a cycle through {e}"));
            }
        }
        if mode == Mode::DoubleStar && r.spanning && r.acyclic && !r.double_star {
            report.flag(Claim::DoubleStar, Some(c), Vec::new(), format!("class {c} is not a double star"));
        }
        report.classes.push(facts.report);
    }
    report
}

/// Every class is plane; the verdict also requires exactly `n` classes.
pub fn validate_plane_partition(p: &Partition) -> AuditReport {
    run(p, Mode::Subgraph)
}

/// Every class is a plane spanning tree and there are `n` of them.
pub fn validate_spanning_trees(p: &Partition) -> AuditReport {
    run(p, Mode::SpanningTree)
}

/// Every class is a plane spanning double star and there are `n` of them.
pub fn validate_double_stars(p: &Partition) -> AuditReport {
    run(p, Mode::DoubleStar)
}

pub fn validate(p: &Partition, mode: Mode) -> AuditReport {
    run(p, mode)
}
