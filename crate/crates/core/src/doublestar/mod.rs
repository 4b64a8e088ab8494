//! Plane spanning double stars on generalized wheels: halving edges, bad
//! halfplanes, potential and spine matchings, the family criteria, and
//! completion of a spine matching to a partition.

mod geometry;

use serde::{Deserialize, Serialize};

use crate::edgeorder::{dist, is_halving};
use crate::partition::{Mode, Partition};
use crate::solver::{solve_restricted, Restrictions, SolveConfig, SolveError, Status};
use crate::wheelgeom::{far_arc, realize_coordinates, EdgeId, GeomError, Point, PointSet, Vertex, WheelModel, CENTER};

pub use geometry::{cross_blocker, halfplanes_meet, in_hull_of, parallel, stabs, Halfplane};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DsError {
    #[error("edges {0} and {1} share an endpoint")]
    SharedEndpoint(EdgeId, EdgeId),
    #[error("not a perfect matching: {0}")]
    NotPerfect(String),
    #[error("vertex {0} is not a hull vertex")]
    NotHull(Vertex),
    #[error("matching is not a spine matching: {0:?}")]
    NotSpine(SpineViolation),
    #[error(transparent)]
    Geometry(#[from] GeomError),
    #[error(transparent)]
    Solver(#[from] SolveError),
}

/// A perfect matching on all points of a wheel.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matching {
    pub pairs: Vec<EdgeId>,
}

impl Matching {
    /// Pairs sorted; fails unless every point of `model` is covered once.
    pub fn new(model: &WheelModel, mut pairs: Vec<EdgeId>) -> Result<Self, DsError> {
        pairs.sort();
        let m = Matching { pairs };
        m.check(model)?;
        Ok(m)
    }

    pub fn check(&self, model: &WheelModel) -> Result<(), DsError> {
        let mut seen = vec![false; model.point_count()];
        for e in &self.pairs {
            for v in [e.a, e.b] {
                match seen.get_mut(v) {
                    Some(s) if !*s => *s = true,
                    Some(_) => return Err(DsError::NotPerfect(format!("vertex {v} matched twice"))),
                    None => return Err(DsError::NotPerfect(format!("vertex {v} out of range"))),
                }
            }
        }
        match seen.iter().position(|s| !s) {
            Some(v) => Err(DsError::NotPerfect(format!("vertex {v} unmatched"))),
            None => Ok(()),
        }
    }

    /// The edge at the interior point.
    pub fn radial(&self) -> Option<EdgeId> {
        self.pairs.iter().copied().find(|e| e.is_radial())
    }
}

/// Halving edges: radial ones first, then non-radial ones, each sorted.
pub fn halving_edges(model: &WheelModel) -> (Vec<EdgeId>, Vec<EdgeId>) {
    model.edges().filter(|&e| is_halving(model, e)).partition(|e| e.is_radial())
}

/// The closed far side of a non-radial halving edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BadHalfplane {
    pub edge: EdgeId,
    /// Hull vertices in the closed far side, clockwise.
    pub vertex_arc: Vec<Vertex>,
    pub region: Halfplane,
}

pub fn bad_halfplanes(model: &WheelModel, ps: &PointSet) -> Vec<BadHalfplane> {
    halving_edges(model)
        .1
        .into_iter()
        .map(|edge| {
            let (from, to) = far_arc(model, edge).expect("non-radial");
            let len = model.cw_steps(from, to);
            let vertex_arc: Vec<Vertex> = (0..=len).map(|s| model.cw(from, s as isize)).collect();
            let inside = &ps.points[vertex_arc[1]];
            let region = Halfplane::through(&ps.points[edge.a], &ps.points[edge.b], inside);
            BadHalfplane { edge, vertex_arc, region }
        })
        .collect()
}

/// Indices of three halfplanes with empty common intersection, first in
/// lexicographic order.
pub fn empty_triple(hs: &[BadHalfplane]) -> Option<(usize, usize, usize)> {
    let n = hs.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let trio = [hs[i].region.clone(), hs[j].region.clone(), hs[k].region.clone()];
                if !halfplanes_meet(&trio) {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

/// `{v_0, v}` plus the antipodal matching of the other hull vertices in
/// clockwise order starting after `v`.
pub fn potential_matching(model: &WheelModel, v: Vertex) -> Result<Matching, DsError> {
    if !model.is_hull(v) {
        return Err(DsError::NotHull(v));
    }
    let rest: Vec<Vertex> = (1..model.hull_count()).map(|s| model.cw(v, s as isize)).collect();
    let half = rest.len() / 2;
    let mut pairs = vec![EdgeId::new(CENTER, v)];
    pairs.extend((0..half).map(|i| EdgeId::new(rest[i], rest[i + half])));
    Matching::new(model, pairs)
}

/// Why a matching cannot be the spine matching of a double star partition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpineViolation {
    Parallel(EdgeId, EdgeId),
    CrossBlocker(EdgeId, EdgeId, EdgeId),
}

/// `Ok(None)` if `m` has no parallel pair and no cross-blocker, which on a
/// wheel makes it a spine matching.
pub fn spine_violation(model: &WheelModel, ps: &PointSet, m: &Matching) -> Result<Option<SpineViolation>, DsError> {
    m.check(model)?;
    let edges = &m.pairs;
    for (i, &e) in edges.iter().enumerate() {
        for &f in &edges[i + 1..] {
            if parallel(e, f, ps)? {
                return Ok(Some(SpineViolation::Parallel(e, f)));
            }
        }
    }
    let r = m.radial().expect("perfect matching covers the center");
    let others: Vec<EdgeId> = edges.iter().copied().filter(|&e| e != r).collect();
    for (i, &f) in others.iter().enumerate() {
        for &g in &others[i + 1..] {
            if cross_blocker(r, f, g, ps)? {
                return Ok(Some(SpineViolation::CrossBlocker(r, f, g)));
            }
        }
    }
    Ok(None)
}

pub fn is_spine_matching(model: &WheelModel, m: &Matching) -> Result<bool, DsError> {
    let ps = realize_coordinates(model)?;
    Ok(spine_violation(model, &ps, m)?.is_none())
}

/// Point counts of the `k` runs of `(k-1)/2` consecutive groups.
fn family_sizes(model: &WheelModel) -> Vec<usize> {
    (0..model.k()).map(|g| model.family_size(g, model.half_k())).collect()
}

/// True iff three runs of `(k-1)/2` groups with at most `n - 2` points each
/// cover every group; then no double star partition exists.
pub fn criterion_small_families(model: &WheelModel) -> bool {
    let k = model.k();
    let h = model.half_k();
    let n = model.n();
    let sizes = family_sizes(model);
    let small: Vec<usize> = (0..k).filter(|&g| sizes[g] + 2 <= n).collect();
    let covers = |fams: [usize; 3]| (0..k).all(|g| fams.iter().any(|&f| (g + k - f) % k < h));
    small
        .iter()
        .any(|&a| small.iter().any(|&b| small.iter().any(|&c| covers([a, b, c]))))
}

/// True iff `(k-1)/2` consecutive runs each have more than `n - 2` points;
/// then a double star partition exists.
pub fn criterion_large_families(model: &WheelModel) -> bool {
    let k = model.k();
    let h = model.half_k();
    let n = model.n();
    let sizes = family_sizes(model);
    (0..k).any(|start| (0..h).all(|i| sizes[(start + i) % k] + 2 > n))
}

/// True iff every run of `(k-1)/2` groups has fewer than `n - 2` points, which
/// rules out a plane spanning tree partition. The converse does not hold.
pub fn tree_nonpartition_criterion(model: &WheelModel) -> bool {
    let n = model.n();
    family_sizes(model).iter().all(|&s| s + 2 < n)
}

/// The spine of every class, as a perfect matching. Stars pick a leaf so that
/// the spines stay disjoint. `None` if some class is not a double star or no
/// consistent choice exists.
pub fn spines(p: &Partition) -> Option<Matching> {
    let model = p.model();
    let points = model.point_count();
    let mut fixed: Vec<Option<EdgeId>> = Vec::new();
    let mut stars: Vec<(Vertex, Vec<Vertex>)> = Vec::new();
    for class in p.classes() {
        let mut deg = vec![0usize; points];
        for e in &class {
            deg[e.a] += 1;
            deg[e.b] += 1;
        }
        let internal: Vec<Vertex> = (0..points).filter(|&v| deg[v] >= 2).collect();
        match internal.as_slice() {
            [u, v] if class.contains(&EdgeId::new(*u, *v)) => fixed.push(Some(EdgeId::new(*u, *v))),
            [c] => {
                let leaves = class.iter().map(|e| e.other(*c)).collect();
                stars.push((*c, leaves));
                fixed.push(None);
            }
            [] if class.len() == 1 => fixed.push(Some(class[0])),
            _ => return None,
        }
    }
    let mut used = vec![false; points];
    for e in fixed.iter().flatten() {
        for v in [e.a, e.b] {
            if std::mem::replace(&mut used[v], true) {
                return None;
            }
        }
    }
    fn place(stars: &[(Vertex, Vec<Vertex>)], used: &mut [bool], out: &mut Vec<EdgeId>) -> bool {
        let Some(((c, leaves), rest)) = stars.split_first() else { return true };
        if used[*c] {
            return false;
        }
        used[*c] = true;
        for &l in leaves {
            if !used[l] {
                used[l] = true;
                out.push(EdgeId::new(*c, l));
                if place(rest, used, out) {
                    return true;
                }
                out.pop();
                used[l] = false;
            }
        }
        used[*c] = false;
        false
    }
    let mut star_spines = Vec::new();
    if !place(&stars, &mut used, &mut star_spines) {
        return None;
    }
    let mut pairs: Vec<EdgeId> = fixed.into_iter().flatten().collect();
    pairs.extend(star_spines);
    Matching::new(model, pairs).ok()
}

/// Search for a double star partition whose spines are exactly `m`: spine
/// `i` gets class `i`, and every other edge may only join a class whose spine
/// touches it.
pub fn complete_double_stars(model: &WheelModel, m: &Matching, cfg: &SolveConfig) -> Result<Option<Partition>, DsError> {
    let ps = realize_coordinates(model)?;
    if let Some(v) = spine_violation(model, &ps, m)? {
        return Err(DsError::NotSpine(v));
    }
    let domains: Vec<u32> = model
        .edges()
        .map(|e| {
            m.pairs
                .iter()
                .enumerate()
                .filter(|(_, s)| **s == e || s.contains(e.a) || s.contains(e.b))
                .fold(0u32, |acc, (c, _)| acc | 1 << c)
        })
        .collect();
    let fixed = m.pairs.iter().enumerate().map(|(c, &e)| (e, c)).collect();
    let mut cfg = cfg.clone();
    cfg.mode = Mode::DoubleStar;
    let out = solve_restricted(model, &cfg, &Restrictions { domains: Some(domains), fixed })?;
    Ok(match out.status {
        Status::Sat => out.witness,
        _ => None,
    })
}

/// Non-radial halving edges have distance `n`; used as an independent check
/// of the group arithmetic.
pub fn halving_by_distance(model: &WheelModel, e: EdgeId) -> bool {
    !e.is_radial() && dist(model, e).ok() == Some(model.n())
}

/// Points strictly on each side of the supporting line of `e`, by orientation.
pub fn side_counts(ps: &PointSet, e: EdgeId) -> (usize, usize) {
    use crate::wheelgeom::{orientation, Orientation};
    let (p, q): (&Point, &Point) = (&ps.points[e.a], &ps.points[e.b]);
    let mut left = 0;
    let mut right = 0;
    for (i, x) in ps.points.iter().enumerate() {
        if i == e.a || i == e.b {
            continue;
        }
        match orientation(p, q, x) {
            Orientation::CounterClockwise => left += 1,
            Orientation::Clockwise => right += 1,
            Orientation::Collinear => {}
        }
    }
    (left, right)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn criteria_examples() {
        let bw = WheelModel::generalized(&[3, 3, 3]).unwrap();
        assert!(criterion_small_families(&bw));
        assert!(!criterion_large_families(&bw));
        let reg = WheelModel::generalized(&[1; 7]).unwrap();
        assert!(!criterion_small_families(&reg));
        assert!(criterion_large_families(&reg));
        assert!(!tree_nonpartition_criterion(&reg));
        let g = WheelModel::generalized(&[1, 1, 3]).unwrap();
        assert!(!criterion_small_families(&g));
    }

    #[test]
    fn potential_matching_shape() {
        let bw = WheelModel::bumpy(3, 3).unwrap();
        let m = potential_matching(&bw, 2).unwrap();
        assert_eq!(m.pairs.len(), 5);
        assert_eq!(m.radial(), Some(EdgeId::new(0, 2)));
        assert!(potential_matching(&bw, 0).is_err());
    }

    #[test]
    fn bumpy_33_halfplanes() {
        let bw = WheelModel::bumpy(3, 3).unwrap();
        let ps = realize_coordinates(&bw).unwrap();
        let hs = bad_halfplanes(&bw, &ps);
        assert_eq!(hs.len(), 3);
        assert!(empty_triple(&hs).is_some());
        for v in 1..=9 {
            let m = potential_matching(&bw, v).unwrap();
            assert!(spine_violation(&bw, &ps, &m).unwrap().is_some());
        }
    }
}
