//! Exact line arithmetic for stabbing, parallel edges and halfplanes.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::DsError;
use crate::wheelgeom::{orientation, EdgeId, Orientation, Point, PointSet, Vertex};

fn cross(ax: &BigRational, ay: &BigRational, bx: &BigRational, by: &BigRational) -> BigRational {
    ax * by - ay * bx
}

/// Where the supporting line of `f` meets that of `e`, as parameters along
/// `e` and `f` (`0` at `.a`, `1` at `.b`); `None` for parallel lines.
fn line_params(e: EdgeId, f: EdgeId, ps: &PointSet) -> Option<(BigRational, BigRational)> {
    let (p, p2) = (&ps.points[e.a], &ps.points[e.b]);
    let (q, q2) = (&ps.points[f.a], &ps.points[f.b]);
    let (rx, ry) = (&p2.x - &p.x, &p2.y - &p.y);
    let (sx, sy) = (&q2.x - &q.x, &q2.y - &q.y);
    let denom = cross(&rx, &ry, &sx, &sy);
    if denom.is_zero() {
        return None;
    }
    let (wx, wy) = (&q.x - &p.x, &q.y - &p.y);
    let t = cross(&wx, &wy, &sx, &sy) / &denom;
    let u = cross(&wx, &wy, &rx, &ry) / &denom;
    Some((t, u))
}

fn inside_unit(t: &BigRational) -> bool {
    !t.is_negative() && *t <= BigRational::from_integer(1.into())
}

fn disjoint(e: EdgeId, f: EdgeId) -> Result<(), DsError> {
    if e.shares_endpoint(&f) {
        return Err(DsError::SharedEndpoint(e, f));
    }
    Ok(())
}

/// The stabbing vertex of `e` if `e` stabs `f`: the supporting lines meet
/// inside `f` but outside `e`.
pub fn stabs(e: EdgeId, f: EdgeId, ps: &PointSet) -> Result<Option<Vertex>, DsError> {
    disjoint(e, f)?;
    let Some((t, u)) = line_params(e, f, ps) else { return Ok(None) };
    debug_assert!(!t.is_zero() && !u.is_zero(), "general position");
    if inside_unit(&u) && !inside_unit(&t) {
        return Ok(Some(if t.is_negative() { e.a } else { e.b }));
    }
    Ok(None)
}

/// The supporting lines meet in neither edge, or not at all.
pub fn parallel(e: EdgeId, f: EdgeId, ps: &PointSet) -> Result<bool, DsError> {
    disjoint(e, f)?;
    Ok(match line_params(e, f, ps) {
        None => true,
        Some((t, u)) => !inside_unit(&t) && !inside_unit(&u),
    })
}

fn in_triangle(p: &Point, a: &Point, b: &Point, c: &Point) -> bool {
    let o = [orientation(a, b, p), orientation(b, c, p), orientation(c, a, p)];
    !(o.contains(&Orientation::Clockwise) && o.contains(&Orientation::CounterClockwise))
}

/// Whether point `x` lies in the convex hull of the endpoints of `f` and `g`.
pub fn in_hull_of(x: usize, f: EdgeId, g: EdgeId, ps: &PointSet) -> bool {
    let pts = [f.a, f.b, g.a, g.b];
    let p = &ps.points[x];
    (0..4).any(|skip| {
        let t: Vec<&Point> = pts.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| &ps.points[v]).collect();
        in_triangle(p, t[0], t[1], t[2])
    })
}

/// Radial `e` stabs both `f` and `g`, `f` and `g` cross, and the interior
/// point lies outside the hull of `f` and `g`.
pub fn cross_blocker(e: EdgeId, f: EdgeId, g: EdgeId, ps: &PointSet) -> Result<bool, DsError> {
    disjoint(e, f)?;
    disjoint(e, g)?;
    disjoint(f, g)?;
    let Some(center) = ps.interior else { return Ok(false) };
    if !e.contains(center) {
        return Ok(false);
    }
    Ok(stabs(e, f, ps)?.is_some()
        && stabs(e, g, ps)?.is_some()
        && crate::wheelgeom::segments_cross(f, g, ps)
        && !in_hull_of(center, f, g, ps))
}

/// Closed halfplane `a x + b y + c >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Halfplane {
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
}

impl Halfplane {
    /// The closed side of the line through `p` and `q` that holds `side`.
    pub fn through(p: &Point, q: &Point, side: &Point) -> Self {
        let a = -(&q.y - &p.y);
        let b = &q.x - &p.x;
        let c = -(&a * &p.x + &b * &p.y);
        let h = Halfplane { a, b, c };
        if h.value(side).is_negative() {
            Halfplane { a: -h.a, b: -h.b, c: -h.c }
        } else {
            h
        }
    }

    fn value(&self, x: &Point) -> BigRational {
        &self.a * &x.x + &self.b * &x.y + &self.c
    }

    pub fn contains(&self, x: &Point) -> bool {
        !self.value(x).is_negative()
    }
}

/// Exact non-emptiness of a finite intersection of closed halfplanes.
///
/// Unless every boundary is parallel, a non-empty intersection contains no
/// line and so has a vertex on two boundary lines.
pub fn halfplanes_meet(hs: &[Halfplane]) -> bool {
    if hs.is_empty() {
        return true;
    }
    let mut any_vertex = false;
    for (i, h1) in hs.iter().enumerate() {
        for h2 in &hs[i + 1..] {
            let det = &h1.a * &h2.b - &h2.a * &h1.b;
            if det.is_zero() {
                continue;
            }
            any_vertex = true;
            let x = (-&h1.c * &h2.b + &h2.c * &h1.b) / &det;
            let y = (-&h1.a * &h2.c + &h2.a * &h1.c) / &det;
            let p = Point::new(x, y);
            if hs.iter().all(|h| h.contains(&p)) {
                return true;
            }
        }
    }
    if any_vertex {
        return false;
    }
    // All boundaries parallel: compare offsets along the common normal.
    let (a0, b0) = (&hs[0].a, &hs[0].b);
    let mut lower: Option<BigRational> = None;
    let mut upper: Option<BigRational> = None;
    for h in hs {
        let lambda = if a0.is_zero() { &h.b / b0 } else { &h.a / a0 };
        let bound = -&h.c / &lambda;
        if lambda.is_positive() {
            lower = Some(lower.map_or(bound.clone(), |l| l.max(bound)));
        } else {
            upper = Some(upper.map_or(bound.clone(), |u| u.min(bound)));
        }
    }
    match (lower, upper) {
        (Some(l), Some(u)) => l <= u,
        _ => true,
    }
}
