use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{combinatorial_cross, EdgeId, GeomError, Orientation, Point, PointSet, WheelModel, CENTER};

/// Upper bound on spread halvings before giving up.
pub const REALIZE_ITERATION_CAP: u32 = 64;

/// Exact rational coordinates for `model`: the center at the origin and hull
/// vertices on the unit circle, group `g` centered at angle `pi/2 - 2 pi g / k`
/// (clockwise from the top). The in-group spread is halved until the drawing
/// is in general position, its geometric crossings match
/// [`combinatorial_cross`] on every pair, and every `(k+1)/2` consecutive
/// groups have a hull that misses the center.
pub fn realize_coordinates(model: &WheelModel) -> Result<PointSet, GeomError> {
    realize_with_cap(model, REALIZE_ITERATION_CAP)
}

pub fn realize_with_cap(model: &WheelModel, cap: u32) -> Result<PointSet, GeomError> {
    let k = model.k() as f64;
    let widest = *model.sizes().iter().max().expect("k >= 3") as f64;
    let base = 0.6 * (2.0 * PI / k) / widest;
    for iter in 0..cap {
        let delta = base / f64::powi(2.0, iter as i32);
        let Some(ps) = place(model, delta, iter) else { continue };
        if Checker::new(&ps).accepts(model) {
            return Ok(ps);
        }
    }
    Err(GeomError::RealizationCap(cap))
}

fn place(model: &WheelModel, delta: f64, iter: u32) -> Option<PointSet> {
    let k = model.k() as f64;
    let mut points = vec![Point::from_ints(0, 0)];
    for g in 0..model.k() {
        let center = PI / 2.0 - 2.0 * PI * g as f64 / k;
        let spread = (model.sizes()[g] as f64 - 1.0) / 2.0;
        for v in model.members(g) {
            let p = model.position(v) as f64;
            points.push(circle_point(center - delta * (p - spread), iter)?);
        }
    }
    Some(PointSet { points, interior: Some(CENTER) })
}

/// Rational point on the unit circle near angle `theta`, through the
/// half-angle parameterization with a dyadic parameter.
fn circle_point(theta: f64, iter: u32) -> Option<Point> {
    let theta = (theta + PI).rem_euclid(2.0 * PI) - PI;
    let t = (theta / 2.0).tan();
    let bits = (30 + iter).min(52) as i32;
    let scaled = (t * f64::powi(2.0, bits)).round();
    if !scaled.is_finite() || scaled.abs() > 1e30 {
        return None;
    }
    let t = BigRational::new(BigInt::from(scaled as i128), BigInt::from(1u8) << bits as usize);
    let one = BigRational::from_integer(1.into());
    let t2 = &t * &t;
    let denom = &one + &t2;
    Some(Point::new((&one - &t2) / &denom, (&t + &t) / &denom))
}

/// Orientation signs of all triples, computed once per candidate drawing.
struct Checker {
    n: usize,
    signs: Vec<i8>,
}

impl Checker {
    fn new(ps: &PointSet) -> Self {
        let n = ps.len();
        let mut signs = vec![0i8; n * n * n];
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let s = match ps.orient(i, j, k) {
                        Orientation::CounterClockwise => 1,
                        Orientation::Clockwise => -1,
                        Orientation::Collinear => 0,
                    };
                    for (a, b, c, sign) in [
                        (i, j, k, s),
                        (j, k, i, s),
                        (k, i, j, s),
                        (j, i, k, -s),
                        (i, k, j, -s),
                        (k, j, i, -s),
                    ] {
                        signs[(a * n + b) * n + c] = sign;
                    }
                }
            }
        }
        Checker { n, signs }
    }

    fn sign(&self, a: usize, b: usize, c: usize) -> i8 {
        self.signs[(a * self.n + b) * self.n + c]
    }

    fn general_position(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| {
            (i + 1..n).all(|j| (j + 1..n).all(|k| self.sign(i, j, k) != 0))
        })
    }

    fn cross(&self, e: EdgeId, f: EdgeId) -> bool {
        !e.shares_endpoint(&f)
            && self.sign(e.a, e.b, f.a) * self.sign(e.a, e.b, f.b) < 0
            && self.sign(f.a, f.b, e.a) * self.sign(f.a, f.b, e.b) < 0
    }

    fn convex_around_center(&self, model: &WheelModel) -> bool {
        let h = model.hull_count();
        (1..=h).all(|v| {
            let (w, x) = (model.cw(v, 1), model.cw(v, 2));
            self.sign(v, w, CENTER) < 0 && (h < 3 || self.sign(v, w, x) < 0)
        })
    }

    fn crossings_agree(&self, model: &WheelModel) -> bool {
        let edges: Vec<EdgeId> = model.edges().collect();
        edges.iter().enumerate().all(|(i, &e)| {
            edges[i + 1..]
                .iter()
                .all(|&f| self.cross(e, f) == combinatorial_cross(model, e, f))
        })
    }

    fn half_hulls_miss_center(&self, model: &WheelModel) -> bool {
        let k = model.k();
        (0..k).all(|g| {
            let verts: Vec<usize> = (0..=model.half_k())
                .flat_map(|i| model.members((g + i) % k))
                .collect();
            !self.hull_contains_center(&verts)
        })
    }

    fn hull_contains_center(&self, verts: &[usize]) -> bool {
        for (x, &a) in verts.iter().enumerate() {
            for (y, &b) in verts.iter().enumerate().skip(x + 1) {
                for &c in &verts[y + 1..] {
                    let s = [self.sign(a, b, CENTER), self.sign(b, c, CENTER), self.sign(c, a, CENTER)];
                    if s.iter().all(|&v| v > 0) || s.iter().all(|&v| v < 0) {
                        return true;
                    }
                }
            }
        }
        false
    }

    fn accepts(&self, model: &WheelModel) -> bool {
        self.general_position()
            && self.convex_around_center(model)
            && self.half_hulls_miss_center(model)
            && self.crossings_agree(model)
    }
}
