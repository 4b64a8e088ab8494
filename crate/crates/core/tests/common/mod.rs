//! Shared model families and brute-force oracles built on exact geometry.
#![allow(dead_code)]

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use planewheel::wheelgeom::{canonicalize, realize_coordinates, segments_cross, EdgeId, GeomError, Point, PointSet, WheelModel};
use rand::rngs::StdRng;
use rand::Rng;

/// Ordered group sizes with `k` positive parts summing to `total`.
pub fn compositions(k: usize, total: usize) -> Vec<Vec<usize>> {
    fn go(k: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() + 1 == k {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for s in 1..=left - (k - cur.len() - 1) {
            cur.push(s);
            go(k, left - s, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if total >= k {
        go(k, total, &mut Vec::new(), &mut out);
    }
    out
}

/// Every generalized wheel with `k` in `ks` and odd hull total at most `max_total`.
pub fn gw_family(ks: &[usize], max_total: usize) -> Vec<WheelModel> {
    let mut out = Vec::new();
    for &k in ks {
        for total in (k..=max_total).step_by(2) {
            for sizes in compositions(k, total) {
                out.push(WheelModel::generalized(&sizes).unwrap());
            }
        }
    }
    out
}

/// Crossing structure from exact coordinates, edges in lexicographic order.
pub struct Geo {
    pub points: usize,
    pub edges: Vec<EdgeId>,
    pub cross: Vec<u64>,
}

impl Geo {
    pub fn new(model: &WheelModel) -> Self {
        let ps = realize_coordinates(model).unwrap();
        let points = ps.len();
        let edges: Vec<EdgeId> = (0..points).flat_map(|a| (a + 1..points).map(move |b| EdgeId::new(a, b))).collect();
        assert!(edges.len() <= 64);
        let cross = edges
            .iter()
            .map(|&e| {
                edges.iter().enumerate().filter(|&(_, &f)| segments_cross(e, f, &ps)).fold(0u64, |m, (j, _)| m | 1 << j)
            })
            .collect();
        Geo { points, edges, cross }
    }

    fn acyclic_with(&self, mask: u64, e: EdgeId) -> bool {
        // Is `e.b` unreachable from `e.a` in `mask`?
        let mut seen = 1u64 << e.a;
        let mut stack = vec![e.a];
        while let Some(v) = stack.pop() {
            for (i, f) in self.edges.iter().enumerate() {
                if mask & (1 << i) != 0 && f.contains(v) {
                    let w = f.other(v);
                    if seen & (1 << w) == 0 {
                        seen |= 1 << w;
                        stack.push(w);
                    }
                }
            }
        }
        seen & (1 << e.b) == 0
    }

    /// All plane spanning trees as edge masks.
    pub fn plane_spanning_trees(&self) -> Vec<u64> {
        fn go(g: &Geo, next: usize, mask: u64, size: usize, out: &mut Vec<u64>) {
            if size == g.points - 1 {
                out.push(mask);
                return;
            }
            let need = g.points - 1 - size;
            for i in next..g.edges.len() {
                if g.edges.len() - i < need {
                    break;
                }
                if g.cross[i] & mask == 0 && g.acyclic_with(mask, g.edges[i]) {
                    go(g, i + 1, mask | 1 << i, size + 1, out);
                }
            }
        }
        let mut out = Vec::new();
        go(self, 0, 0, 0, &mut out);
        out
    }

    pub fn is_double_star(&self, tree: u64) -> bool {
        let mut deg = vec![0; self.points];
        for (i, e) in self.edges.iter().enumerate() {
            if tree & (1 << i) != 0 {
                deg[e.a] += 1;
                deg[e.b] += 1;
            }
        }
        deg.iter().filter(|&&d| d >= 2).count() <= 2
    }

    /// All plane double stars: a spine `{u, v}` with every other vertex
    /// joined to `u` or to `v`.
    pub fn plane_double_stars(&self) -> Vec<u64> {
        let index = |a: usize, b: usize| self.edges.iter().position(|e| *e == EdgeId::new(a, b)).unwrap();
        let mut out = std::collections::BTreeSet::new();
        for (s, spine) in self.edges.iter().enumerate() {
            let rest: Vec<usize> = (0..self.points).filter(|&w| !spine.contains(w)).collect();
            for pick in 0u64..1 << rest.len() {
                let mut mask = 1u64 << s;
                for (i, &w) in rest.iter().enumerate() {
                    let hub = if pick & (1 << i) == 0 { spine.a } else { spine.b };
                    mask |= 1 << index(hub, w);
                }
                let plane = (0..self.edges.len()).all(|i| mask & (1 << i) == 0 || self.cross[i] & mask == 0);
                if plane {
                    out.insert(mask);
                }
            }
        }
        out.into_iter().collect()
    }

    /// Whether the edge set splits into members of `pieces`.
    pub fn exact_cover(&self, pieces: &[u64]) -> bool {
        let ne = self.edges.len();
        let full = if ne == 64 { u64::MAX } else { (1u64 << ne) - 1 };
        let mut by_edge = vec![Vec::new(); ne];
        for &p in pieces {
            for (i, list) in by_edge.iter_mut().enumerate() {
                if p & (1 << i) != 0 {
                    list.push(p);
                }
            }
        }
        fn go(covered: u64, full: u64, by_edge: &[Vec<u64>]) -> bool {
            if covered == full {
                return true;
            }
            // Branch on the uncovered edge with the fewest fitting pieces.
            let mut best: Option<(usize, usize)> = None;
            for (i, list) in by_edge.iter().enumerate() {
                if covered & (1 << i) != 0 {
                    continue;
                }
                let cap = best.map_or(usize::MAX, |b| b.1);
                let mut count = 0;
                for &p in list {
                    if p & covered == 0 {
                        count += 1;
                        if count >= cap {
                            break;
                        }
                    }
                }
                if count == 0 {
                    return false;
                }
                if count < cap {
                    best = Some((i, count));
                }
            }
            let (edge, _) = best.expect("an uncovered edge");
            by_edge[edge].iter().any(|&p| p & covered == 0 && go(covered | p, full, by_edge))
        }
        go(0, full, &by_edge)
    }

    /// Whether the crossing graph is `m`-colorable.
    pub fn colorable(&self, m: usize) -> bool {
        fn go(g: &Geo, i: usize, m: usize, used: usize, classes: &mut Vec<u64>) -> bool {
            if i == g.edges.len() {
                return true;
            }
            for c in 0..m.min(used + 1) {
                if classes[c] & g.cross[i] == 0 {
                    classes[c] |= 1 << i;
                    let ok = go(g, i + 1, m, used.max(c + 1), classes);
                    classes[c] &= !(1 << i);
                    if ok {
                        return true;
                    }
                }
            }
            false
        }
        go(self, 0, m, 0, &mut vec![0; m])
    }
}

/// Oracle verdicts `(subgraph, spanning tree, double star)`.
pub fn oracle_verdicts(model: &WheelModel) -> (bool, bool, bool) {
    let g = Geo::new(model);
    let trees = g.plane_spanning_trees();
    (g.colorable(model.n()), g.exact_cover(&trees), g.exact_cover(&g.plane_double_stars()))
}

pub fn rational(x: f64) -> BigRational {
    let scale = 1i64 << 40;
    BigRational::new(BigInt::from((x * scale as f64).round() as i64), BigInt::from(scale))
}

/// A point exactly on the unit circle near angle `theta`.
pub fn on_circle(theta: f64) -> Point {
    let t = rational((theta / 2.0).tan());
    let one = BigRational::from_integer(1.into());
    let d = &one + &t * &t;
    Point::new((&one - &t * &t) / &d, (BigRational::from_integer(2.into()) * &t) / &d)
}

/// Independent drawing: groups around the unit circle, members packed tightly
/// around each group's direction.
pub fn tight_drawing(model: &WheelModel) -> PointSet {
    let k = model.k() as f64;
    let widest = *model.sizes().iter().max().unwrap() as f64;
    let delta = 0.05 * (2.0 * PI / k) / widest;
    let mut points = vec![Point::new(rational(0.0013), rational(-0.0007))];
    for g in 0..model.k() {
        let s = model.sizes()[g] as f64;
        for i in 0..model.sizes()[g] {
            let mut theta = PI / 2.0 - 2.0 * PI * g as f64 / k - (i as f64 - (s - 1.0) / 2.0) * delta + 0.1;
            if theta <= -PI {
                theta += 2.0 * PI;
            }
            points.push(on_circle(theta));
        }
    }
    PointSet::new(points)
}

pub fn predicate_matrix() -> Vec<WheelModel> {
    let mut out = gw_family(&[3, 5], 9);
    for (k, l) in [(3, 3), (3, 5), (5, 3), (3, 1), (5, 1), (7, 1), (9, 1), (11, 1), (13, 1), (15, 1)] {
        out.push(WheelModel::bumpy(k, l).unwrap());
    }
    for sizes in [[1, 5, 9], [2, 6, 7], [4, 4, 7], [1, 1, 13]] {
        out.push(WheelModel::generalized(&sizes).unwrap());
    }
    for sizes in [[1, 2, 3, 4, 5], [3, 3, 3, 3, 3], [1, 3, 3, 3, 5]] {
        out.push(WheelModel::generalized(&sizes).unwrap());
    }
    out
}

/// Random hull of 3 to 11 points on a circle plus one interior point, in
/// general position.
pub fn random_set(rng: &mut StdRng) -> PointSet {
    loop {
        let hull = rng.gen_range(3..=11);
        let mut angles: Vec<f64> = (0..hull).map(|_| rng.gen_range(-PI + 0.01..PI)).collect();
        angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
        if angles.windows(2).any(|w| w[1] - w[0] < 1e-3) {
            continue;
        }
        let mut points: Vec<Point> = angles.iter().map(|&a| on_circle(a)).collect();
        let r = rng.gen_range(0.0..0.5);
        let a = rng.gen_range(-PI..PI);
        points.insert(rng.gen_range(0..=points.len()), Point::new(rational(r * a.cos()), rational(r * a.sin())));
        let ps = PointSet::new(points);
        let inside = canonicalize(&ps);
        if ps.in_general_position() && !matches!(inside, Err(GeomError::InteriorCount(_))) {
            return ps;
        }
    }
}
