use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{EdgeId, GeomError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Clockwise,
    CounterClockwise,
    Collinear,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: BigRational,
    pub y: BigRational,
}

impl Point {
    pub fn new(x: BigRational, y: BigRational) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point { x: BigRational::from_integer(x.into()), y: BigRational::from_integer(y.into()) }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        (self.x.to_f64().unwrap_or(f64::NAN), self.y.to_f64().unwrap_or(f64::NAN))
    }
}

/// Sign of the determinant `(q - p) x (r - p)`.
pub fn orientation(p: &Point, q: &Point, r: &Point) -> Orientation {
    let det = (&q.x - &p.x) * (&r.y - &p.y) - (&q.y - &p.y) * (&r.x - &p.x);
    if det.is_zero() {
        Orientation::Collinear
    } else if det.is_positive() {
        Orientation::CounterClockwise
    } else {
        Orientation::Clockwise
    }
}

/// Points with exact coordinates; `interior` names the unique interior point when known.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PointSetJson", into = "PointSetJson")]
pub struct PointSet {
    pub points: Vec<Point>,
    pub interior: Option<usize>,
}

#[derive(Serialize, Deserialize)]
struct PointSetJson {
    points: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    interior: Option<usize>,
}

fn parse_rational(s: &str) -> Result<BigRational, GeomError> {
    BigRational::from_str(s.trim()).map_err(|_| GeomError::BadCoordinate(s.to_string()))
}

impl TryFrom<PointSetJson> for PointSet {
    type Error = GeomError;

    fn try_from(raw: PointSetJson) -> Result<Self, Self::Error> {
        let points = raw
            .points
            .iter()
            .map(|[x, y]| Ok(Point::new(parse_rational(x)?, parse_rational(y)?)))
            .collect::<Result<Vec<_>, GeomError>>()?;
        if let Some(i) = raw.interior {
            if i >= points.len() {
                return Err(GeomError::BadCoordinate(format!("interior index {i} out of range")));
            }
        }
        Ok(PointSet { points, interior: raw.interior })
    }
}

impl From<PointSet> for PointSetJson {
    fn from(ps: PointSet) -> Self {
        PointSetJson {
            points: ps.points.iter().map(|p| [p.x.to_string(), p.y.to_string()]).collect(),
            interior: ps.interior,
        }
    }
}

impl PointSet {
    pub fn new(points: Vec<Point>) -> Self {
        PointSet { points, interior: None }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn orient(&self, i: usize, j: usize, k: usize) -> Orientation {
        orientation(&self.points[i], &self.points[j], &self.points[k])
    }

    /// First collinear triple, if any.
    pub fn collinear_triple(&self) -> Option<(usize, usize, usize)> {
        let n = self.len();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    if self.orient(i, j, k) == Orientation::Collinear {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn in_general_position(&self) -> bool {
        self.collinear_triple().is_none()
    }
}

/// True iff the open segments of `e` and `f` intersect. Edges sharing an
/// endpoint never cross.
pub fn segments_cross(e: EdgeId, f: EdgeId, ps: &PointSet) -> bool {
    if e.shares_endpoint(&f) {
        return false;
    }
    let strictly_opposite = |a: Orientation, b: Orientation| {
        matches!(
            (a, b),
            (Orientation::Clockwise, Orientation::CounterClockwise)
                | (Orientation::CounterClockwise, Orientation::Clockwise)
        )
    };
    strictly_opposite(ps.orient(e.a, e.b, f.a), ps.orient(e.a, e.b, f.b))
        && strictly_opposite(ps.orient(f.a, f.b, e.a), ps.orient(f.a, f.b, e.b))
}
