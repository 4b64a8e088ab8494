use std::collections::BTreeMap;

use super::{validate, AuditReport, Claim, ForcedSlots, Mode, Partition};
use crate::edgeorder::{children, closer_than, d_value, directed_opposite_pairs, dist, opposite_group_pairs, span};
use crate::wheelgeom::{combinatorial_cross, far_arc, EdgeId, WheelModel};

/// Run the mode validator and, on bumpy wheels with groups of at least three
/// vertices, the structural checks that every valid partition must satisfy.
pub fn structural_audit(p: &Partition, mode: Mode) -> AuditReport {
    let mut report = validate(p, mode);
    let Some((_, l)) = p.model().bumpy_params() else { return report };
    if l < 3 || !report.ok() {
        return report;
    }
    report.structural = true;
    let classes = p.classes();
    if mode != Mode::Subgraph {
        boundary_counts(&mut report);
        tree_spans(p.model(), &classes, &mut report);
        distance_chains(p.model(), &classes, &mut report);
        max_edge_per_distance(p.model(), &mut report);
    }
    distance_sums(p.model(), &classes, &mut report);
    forced_edges(p.model(), &classes, mode, &mut report);
    report
}

fn boundary_counts(report: &mut AuditReport) {
    let mut singles = Vec::new();
    for r in &report.classes {
        match (r.boundary_edges, r.maximal_diagonals.len()) {
            (1, 1) => singles.push(r.class),
            (2, 2) => {}
            (b, d) => {
                let detail = format!("class {} has {b} boundary edges and {d} maximal diagonals", r.class);
                report.violations.push(super::Violation {
                    claim: Claim::BoundaryCounts,
                    class: Some(r.class),
                    edges: r.maximal_diagonals.clone(),
                    detail,
                });
            }
        }
    }
    if singles.len() != 1 {
        report.flag(
            Claim::BoundaryCounts,
            None,
            Vec::new(),
            format!("{} classes with a single boundary edge", singles.len()),
        );
    }
}

fn tree_spans(model: &WheelModel, classes: &[Vec<EdgeId>], report: &mut AuditReport) {
    for (c, edges) in classes.iter().enumerate() {
        let maxd = report.classes[c].maximal_diagonals.clone();
        match maxd.as_slice() {
            [e] => {
                let (from, to) = far_arc(model, *e).expect("diagonal");
                for &g in edges {
                    let ok = if g.is_radial() {
                        !model.strictly_between(from, to, g.b)
                    } else {
                        g == *e || closer_than(model, g, *e).unwrap_or(false)
                    };
                    if !ok {
                        report.flag(Claim::SpanConfinement, Some(c), vec![*e, g], format!("{g} lies outside the far side of {e} in class {c}"));
                    }
                }
            }
            [e, f] => match span(model, *e, *f) {
                Ok(s) => {
                    for &g in edges {
                        let inside = s.vertices.contains(&g.a) && s.vertices.contains(&g.b);
                        if g.is_radial() != inside && g != *e && g != *f {
                            let what = if g.is_radial() { "radial edge outside" } else { "non-radial edge inside" };
                            report.flag(Claim::SpanConfinement, Some(c), vec![*e, *f, g], format!("{what} the span in class {c}: {g}"));
                        }
                    }
                }
                Err(err) => report.flag(Claim::SpanConfinement, Some(c), vec![*e, *f], err.to_string()),
            },
            _ => {}
        }
    }
}

fn distance_chains(model: &WheelModel, classes: &[Vec<EdgeId>], report: &mut AuditReport) {
    for (c, edges) in classes.iter().enumerate() {
        for &e in edges.iter().filter(|e| !e.is_radial()) {
            if let Some((s, t)) = children(model, e) {
                let count = edges.contains(&s) as usize + edges.contains(&t) as usize;
                if count != 1 {
                    report.flag(Claim::DistanceChain, Some(c), vec![e, s, t], format!("{e} has {count} of its two children in class {c}"));
                }
            }
        }
    }
}

fn between(model: &WheelModel, e: EdgeId, (a, b): (usize, usize)) -> bool {
    if e.is_radial() {
        return false;
    }
    let (ga, gb) = (model.group_of(e.a), model.group_of(e.b));
    (ga, gb) == (a, b) || (ga, gb) == (b, a)
}

fn max_edge_per_distance(model: &WheelModel, report: &mut AuditReport) {
    let (k, l) = model.bumpy_params().expect("bumpy");
    let maximal: Vec<EdgeId> = report.classes.iter().flat_map(|r| r.maximal_diagonals.clone()).collect();
    for pair in directed_opposite_pairs(model) {
        for j in 1..=l {
            let dj = d_value(k, l, j).expect("in range");
            let hits: Vec<EdgeId> = maximal
                .iter()
                .copied()
                .filter(|&e| between(model, e, pair) && dist(model, e) == Ok(dj))
                .collect();
            if hits.len() != 1 {
                report.flag(
                    Claim::MaxEdgePerDistance,
                    None,
                    hits.clone(),
                    format!("groups {:?}: {} maximal diagonals of distance {dj}", pair, hits.len()),
                );
            }
        }
    }
}

fn incomparable(model: &WheelModel, e: EdgeId, f: EdgeId) -> bool {
    !closer_than(model, e, f).unwrap_or(true) && !closer_than(model, f, e).unwrap_or(true)
}

fn distance_sums(model: &WheelModel, classes: &[Vec<EdgeId>], report: &mut AuditReport) {
    let two_n = model.point_count();
    for (c, edges) in classes.iter().enumerate() {
        let non_radial: Vec<EdgeId> = edges.iter().copied().filter(|e| !e.is_radial()).collect();
        let maximal = crate::edgeorder::maximal_edges(model, &non_radial);
        let total: usize = maximal.iter().map(|&e| dist(model, e).expect("non-radial")).sum();
        if total > two_n - 1 {
            report.flag(Claim::DistanceSums, Some(c), maximal.clone(), format!("maximal distances in class {c} sum to {total}"));
        }
        for (i, &e) in non_radial.iter().enumerate() {
            for &f in &non_radial[i + 1..] {
                if combinatorial_cross(model, e, f) || !incomparable(model, e, f) {
                    continue;
                }
                let sum = dist(model, e).expect("non-radial") + dist(model, f).expect("non-radial");
                if sum > two_n - 2 {
                    report.flag(Claim::DistanceSums, Some(c), vec![e, f], format!("incomparable {e}, {f} have distance sum {sum}"));
                }
            }
        }
    }
}

fn forced_edges(model: &WheelModel, classes: &[Vec<EdgeId>], mode: Mode, report: &mut AuditReport) {
    let (k, l) = model.bumpy_params().expect("bumpy");
    let n = model.n();
    let d = |i: usize| d_value(k, l, i).expect("in range");
    let class_of = |e: EdgeId| classes.iter().position(|cl| cl.contains(&e)).expect("total");
    let maximal: Vec<EdgeId> = report.classes.iter().flat_map(|r| r.maximal_diagonals.clone()).collect();

    let mut slots = Vec::new();
    for pair in opposite_group_pairs(model) {
        let mut cands: Vec<(usize, EdgeId)> = maximal
            .iter()
            .copied()
            .filter(|&e| between(model, e, pair))
            .map(|e| (dist(model, e).expect("diagonal"), e))
            .filter(|&(de, _)| de >= d(l))
            .collect();
        cands.sort_by(|x, y| y.cmp(x));
        for i in 1..=l {
            match cands.get(i - 1) {
                Some(&(de, e)) if de >= d(i) => slots.push((pair, i, e, class_of(e))),
                _ => report.flag(
                    Claim::ForcedEdges,
                    None,
                    Vec::new(),
                    format!("groups {:?} lack a maximal diagonal of distance at least {}", pair, d(i)),
                ),
            }
        }
    }
    if report.violated(Claim::ForcedEdges) {
        return;
    }

    let mut per_class: BTreeMap<usize, Vec<EdgeId>> = BTreeMap::new();
    for &(_, _, e, c) in &slots {
        per_class.entry(c).or_default().push(e);
    }
    let singles: Vec<usize> = (0..classes.len()).filter(|c| per_class.get(c).map_or(0, Vec::len) == 1).collect();
    let bad: Vec<usize> = (0..classes.len()).filter(|c| per_class.get(c).map_or(0, Vec::len) != 2 && !singles.contains(c)).collect();
    if singles.len() != 1 || !bad.is_empty() {
        report.flag(
            Claim::ForcedEdges,
            None,
            Vec::new(),
            format!("forced diagonals per class: {} classes with one, {} with neither one nor two", singles.len(), bad.len()),
        );
        return;
    }

    let mut slack = Vec::with_capacity(classes.len());
    for c in 0..classes.len() {
        let fe = &per_class[&c];
        let x = if fe.len() == 1 {
            d(1).saturating_sub(dist(model, fe[0]).expect("diagonal"))
        } else {
            let sum = dist(model, fe[0]).expect("diagonal") + dist(model, fe[1]).expect("diagonal");
            (2 * n - 2).saturating_sub(sum)
        };
        slack.push(x);
        if mode == Mode::Subgraph && fe.len() == 2 {
            if let Ok(s) = span(model, fe[0], fe[1]) {
                for &g in classes[c].iter().filter(|g| g.is_radial()) {
                    if !s.vertices.contains(&g.b) {
                        report.flag(Claim::SpanConfinement, Some(c), vec![fe[0], fe[1], g], format!("radial {g} outside the span of class {c}"));
                    }
                }
            }
        }
    }
    let slack_sum = slack.iter().sum();
    let budget = (l - 1) / 2;
    if slack_sum > budget {
        report.flag(Claim::ForcedEdges, None, Vec::new(), format!("forced slack {slack_sum} exceeds {budget}"));
    }
    report.forced = Some(ForcedSlots { slots, slack, slack_sum, budget });
}
