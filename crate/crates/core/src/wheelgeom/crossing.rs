use super::{EdgeId, Vertex, WheelModel};

/// Closed clockwise hull arc `(from, to)` bounding the far side of a
/// non-radial edge. The far-side vertices are the ones strictly between.
pub fn far_arc(model: &WheelModel, e: EdgeId) -> Option<(Vertex, Vertex)> {
    if e.is_radial() {
        return None;
    }
    let (a, b) = (e.a, e.b);
    let (ga, gb) = (model.group_of(a), model.group_of(b));
    if ga == gb {
        return Some((a, b));
    }
    let k = model.k();
    if (gb + k - ga) % k <= model.half_k() {
        Some((a, b))
    } else {
        Some((b, a))
    }
}

/// Crossing predicate read off the group structure alone.
pub fn combinatorial_cross(model: &WheelModel, e: EdgeId, f: EdgeId) -> bool {
    if e.shares_endpoint(&f) {
        return false;
    }
    match (e.is_radial(), f.is_radial()) {
        (true, true) => false,
        (true, false) => radial_crosses(model, e.b, f),
        (false, true) => radial_crosses(model, f.b, e),
        (false, false) => {
            let inside = |v: Vertex| e.a < v && v < e.b;
            inside(f.a) != inside(f.b)
        }
    }
}

fn radial_crosses(model: &WheelModel, v: Vertex, f: EdgeId) -> bool {
    let (from, to) = far_arc(model, f).expect("non-radial");
    model.strictly_between(from, to, v)
}

/// Symmetric crossing adjacency, indexed by lexicographic edge index.
#[derive(Clone, Debug)]
pub struct CrossingGraph {
    points: usize,
    adj: Vec<Vec<usize>>,
}

impl CrossingGraph {
    pub fn from_predicate(points: usize, cross: impl Fn(EdgeId, EdgeId) -> bool) -> Self {
        let m = points * (points - 1) / 2;
        let mut adj = vec![Vec::new(); m];
        for i in 0..m {
            let e = EdgeId::from_index(i, points);
            for j in i + 1..m {
                let f = EdgeId::from_index(j, points);
                if cross(e, f) {
                    adj[i].push(j);
                    adj[j].push(i);
                }
            }
        }
        CrossingGraph { points, adj }
    }

    pub fn edge_count(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, idx: usize) -> &[usize] {
        &self.adj[idx]
    }

    pub fn crosses(&self, e: EdgeId, f: EdgeId) -> bool {
        let (i, j) = (e.index(self.points), f.index(self.points));
        self.adj[i].binary_search(&j).is_ok()
    }

    pub fn degree(&self, idx: usize) -> usize {
        self.adj[idx].len()
    }

    /// Number of unordered crossing pairs.
    pub fn pair_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Crossing pairs `(i, j)` with `i < j`, in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(i, ns)| ns.iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
    }
}

pub fn crossing_graph(model: &WheelModel) -> CrossingGraph {
    CrossingGraph::from_predicate(model.point_count(), |e, f| combinatorial_cross(model, e, f))
}
