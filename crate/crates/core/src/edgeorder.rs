//! Edge classification and the closer-than order on non-radial edges.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::wheelgeom::{all_edges, combinatorial_cross, far_arc, EdgeId, Vertex, WheelModel, CENTER};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrderError {
    #[error("edge {0} is radial")]
    Radial(EdgeId),
    #[error("edges {0} and {1} cross")]
    Crossing(EdgeId, EdgeId),
    #[error("span needs two distinct edges, got {0} twice")]
    SameEdge(EdgeId),
    #[error("index {index} outside 1..={max}")]
    OutOfRange { index: usize, max: usize },
    #[error("model is not a bumpy wheel")]
    NotBumpy,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeKind {
    Radial,
    Boundary,
    Diagonal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeClass {
    pub kind: EdgeKind,
    /// Hull vertices strictly on the far side, in clockwise order.
    pub far_arc: Vec<Vertex>,
    pub dist: Option<usize>,
}

pub fn classify_edge(model: &WheelModel, e: EdgeId) -> EdgeClass {
    if e.is_radial() {
        return EdgeClass { kind: EdgeKind::Radial, far_arc: Vec::new(), dist: None };
    }
    let far = far_side_vertices(model, e).expect("non-radial");
    let kind = if far.is_empty() { EdgeKind::Boundary } else { EdgeKind::Diagonal };
    EdgeClass { kind, dist: Some(far.len() + 1), far_arc: far }
}

fn arc(model: &WheelModel, e: EdgeId) -> Result<(Vertex, Vertex), OrderError> {
    far_arc(model, e).ok_or(OrderError::Radial(e))
}

pub fn far_side_vertices(model: &WheelModel, e: EdgeId) -> Result<Vec<Vertex>, OrderError> {
    let (from, to) = arc(model, e)?;
    let len = model.cw_steps(from, to);
    Ok((1..len).map(|s| model.cw(from, s as isize)).collect())
}

pub fn dist(model: &WheelModel, e: EdgeId) -> Result<usize, OrderError> {
    let (from, to) = arc(model, e)?;
    Ok(model.cw_steps(from, to))
}

/// `d_i = (k+1)/2 * l - i`, the i-th largest distance in `BW_{k,l}`.
pub fn d_value(k: usize, l: usize, i: usize) -> Result<usize, OrderError> {
    let top = (k + 1) / 2 * l;
    if i == 0 || i >= top {
        return Err(OrderError::OutOfRange { index: i, max: top - 1 });
    }
    Ok(top - i)
}

/// Largest distance of any non-radial edge.
pub fn max_dist(model: &WheelModel) -> usize {
    model
        .edges()
        .filter(|e| !e.is_radial())
        .map(|e| dist(model, e).expect("non-radial"))
        .max()
        .unwrap_or(1)
}

fn in_closed_arc(model: &WheelModel, (from, to): (Vertex, Vertex), v: Vertex) -> bool {
    model.cw_steps(from, v) <= model.cw_steps(from, to)
}

/// `e <_c f`: `e` lies in the closed far side of `f`.
pub fn closer_than(model: &WheelModel, e: EdgeId, f: EdgeId) -> Result<bool, OrderError> {
    let (ea, fa) = (arc(model, e)?, arc(model, f)?);
    if e == f {
        return Ok(false);
    }
    let s = |v| model.cw_steps(fa.0, v);
    Ok(in_closed_arc(model, fa, ea.0) && in_closed_arc(model, fa, ea.1) && s(ea.0) < s(ea.1))
}

/// Members of `edges` with no strictly larger member.
pub fn maximal_edges(model: &WheelModel, edges: &[EdgeId]) -> Vec<EdgeId> {
    edges
        .iter()
        .copied()
        .filter(|&e| !edges.iter().any(|&f| closer_than(model, e, f).unwrap_or(false)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Span {
    pub left_edge: EdgeId,
    pub right_edge: EdgeId,
    pub vertices: BTreeSet<Vertex>,
    pub edges: Vec<EdgeId>,
    pub apex: Option<BTreeSet<Vertex>>,
}

/// Closed region between two non-crossing non-radial edges.
pub fn span(model: &WheelModel, e: EdgeId, f: EdgeId) -> Result<Span, OrderError> {
    let (ea, fa) = (arc(model, e)?, arc(model, f)?);
    if e == f {
        return Err(OrderError::SameEdge(e));
    }
    if combinatorial_cross(model, e, f) {
        return Err(OrderError::Crossing(e, f));
    }
    let open = |(from, to): (Vertex, Vertex), v: Vertex| model.strictly_between(from, to, v);
    let hull = 1..=model.hull_count();
    let (vertices, incomparable): (BTreeSet<Vertex>, bool) = if closer_than(model, e, f)? {
        (hull.filter(|&v| in_closed_arc(model, fa, v) && !open(ea, v)).collect(), false)
    } else if closer_than(model, f, e)? {
        (hull.filter(|&v| in_closed_arc(model, ea, v) && !open(fa, v)).collect(), false)
    } else {
        let mut vs: BTreeSet<Vertex> = hull.filter(|&v| !open(ea, v) && !open(fa, v)).collect();
        vs.insert(CENTER);
        (vs, true)
    };
    let list: Vec<Vertex> = vertices.iter().copied().collect();
    let edges = list
        .iter()
        .enumerate()
        .flat_map(|(i, &a)| list[i + 1..].iter().map(move |&b| EdgeId::new(a, b)))
        .collect();
    let apex = incomparable.then(|| apex_of(model, e, f, &vertices)).flatten();
    Ok(Span { left_edge: e, right_edge: f, vertices, edges, apex })
}

fn groups_of(model: &WheelModel, e: EdgeId) -> [usize; 2] {
    [model.group_of(e.a), model.group_of(e.b)]
}

fn apex_of(model: &WheelModel, e: EdgeId, f: EdgeId, vertices: &BTreeSet<Vertex>) -> Option<BTreeSet<Vertex>> {
    let (ge, gf) = (groups_of(model, e), groups_of(model, f));
    let common: Vec<usize> = ge.iter().copied().filter(|g| gf.contains(g)).collect();
    let apex: BTreeSet<Vertex> = vertices
        .iter()
        .copied()
        .filter(|&v| v != CENTER && common.contains(&model.group_of(v)))
        .collect();
    (!apex.is_empty()).then_some(apex)
}

/// Unordered opposite group pairs `(i, j)`, `i < j`, zero-based.
pub fn opposite_group_pairs(model: &WheelModel) -> Vec<(usize, usize)> {
    let mut pairs: Vec<(usize, usize)> = directed_opposite_pairs(model)
        .into_iter()
        .map(|(a, b)| (a.min(b), a.max(b)))
        .collect();
    pairs.sort_unstable();
    pairs
}

/// Opposite pairs `(a, b)` with `b = a + (k-1)/2 mod k`; edges between them
/// have their far side running clockwise from the `a` endpoint to the `b` one.
pub fn directed_opposite_pairs(model: &WheelModel) -> Vec<(usize, usize)> {
    let k = model.k();
    (0..k).map(|a| (a, (a + model.half_k()) % k)).collect()
}

/// Distinct first and last vertices of every group.
pub fn outmost_vertices(model: &WheelModel) -> Vec<Vertex> {
    (0..model.k())
        .flat_map(|g| {
            let (a, b) = (model.first(g), model.last(g));
            if a == b {
                vec![a]
            } else {
                vec![a, b]
            }
        })
        .collect()
}

pub fn inside_vertices(model: &WheelModel) -> Vec<Vertex> {
    (0..model.k()).flat_map(|g| model.first(g) + 1..model.last(g)).collect()
}

pub fn center_vertices(model: &WheelModel) -> Vec<Vertex> {
    (0..model.k()).filter_map(|g| model.center_of(g)).collect()
}

pub fn is_outmost(model: &WheelModel, v: Vertex) -> bool {
    let g = model.group_of(v);
    v == model.first(g) || v == model.last(g)
}

/// Apex of a special wedge formed by `e` and `f`, if they form one.
pub fn is_special_wedge(model: &WheelModel, e: EdgeId, f: EdgeId) -> Option<BTreeSet<Vertex>> {
    if e.is_radial() || f.is_radial() || e == f || combinatorial_cross(model, e, f) {
        return None;
    }
    let k = model.k();
    for (x, y) in [(e, f), (f, e)] {
        for u in [x.a, x.b] {
            for u2 in [y.a, y.b] {
                let g = model.group_of(u);
                let g2 = model.group_of(u2);
                if u != model.last(g) || u2 != model.first(g2) || g2 != (g + 1) % k {
                    continue;
                }
                let opp = (g2 + model.half_k()) % k;
                let (v, v2) = (x.other(u), y.other(u2));
                let inside = |w: Vertex| model.group_of(w) == opp && !is_outmost(model, w);
                if inside(v) && inside(v2) {
                    return span(model, e, f).ok().and_then(|s| s.apex);
                }
            }
        }
    }
    None
}

/// Non-radial edges of distance `d`, ordered by the clockwise position of
/// their far-arc start, ties broken by the end.
pub fn edges_of_distance(model: &WheelModel, d: usize) -> Result<Vec<EdgeId>, OrderError> {
    let max = max_dist(model);
    if d == 0 || d > max {
        return Err(OrderError::OutOfRange { index: d, max });
    }
    let mut list: Vec<((Vertex, Vertex), EdgeId)> = all_edges(model.point_count())
        .filter(|e| !e.is_radial())
        .filter_map(|e| {
            let a = far_arc(model, e).expect("non-radial");
            (model.cw_steps(a.0, a.1) == d).then_some((a, e))
        })
        .collect();
    list.sort_unstable();
    Ok(list.into_iter().map(|(_, e)| e).collect())
}

/// The two distance `d - 1` edges under an edge of distance `d >= 2`:
/// one keeps the arc start, the other keeps the arc end.
pub fn children(model: &WheelModel, e: EdgeId) -> Option<(EdgeId, EdgeId)> {
    let (from, to) = far_arc(model, e)?;
    (model.cw_steps(from, to) >= 2)
        .then(|| (EdgeId::new(from, model.cw(to, -1)), EdgeId::new(model.cw(from, 1), to)))
}

/// Per opposite pair, the minimum distances `d_1..d_l` of its forced diagonals.
pub fn forced_edge_template(model: &WheelModel) -> Result<Vec<((usize, usize), Vec<usize>)>, OrderError> {
    let (k, l) = model.bumpy_params().ok_or(OrderError::NotBumpy)?;
    let mins = (1..=l).map(|i| d_value(k, l, i)).collect::<Result<Vec<_>, _>>()?;
    Ok(opposite_group_pairs(model).into_iter().map(|p| (p, mins.clone())).collect())
}

/// The hull edge opposite to `v`: it joins the last vertex of group
/// `g + (k-1)/2` to the first vertex of the next group.
pub fn opposite_edge(model: &WheelModel, v: Vertex) -> EdgeId {
    let g = model.group_of(v);
    let k = model.k();
    let a = (g + model.half_k()) % k;
    EdgeId::new(model.last(a), model.first((a + 1) % k))
}

/// Hull vertices strictly on each side of the line through `v_0` and `v`.
pub fn radial_sides(model: &WheelModel, v: Vertex) -> (usize, usize) {
    let g = model.group_of(v);
    let p = model.position(v);
    let size = model.sizes()[g];
    let h = model.half_k() as isize;
    let ahead = size - 1 - p + (1..=h).map(|i| model.sizes()[model.group_mod(g as isize + i)]).sum::<usize>();
    let behind = p + (1..=h).map(|i| model.sizes()[model.group_mod(g as isize - i)]).sum::<usize>();
    (ahead, behind)
}

/// Halving test for any edge, from the group sizes alone.
pub fn is_halving(model: &WheelModel, e: EdgeId) -> bool {
    let half = model.n() - 1;
    if model.point_count() % 2 == 1 {
        return false;
    }
    if e.is_radial() {
        radial_sides(model, e.b) == (half, half)
    } else {
        dist(model, e).expect("non-radial") == model.n()
    }
}
