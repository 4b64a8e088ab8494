use std::cmp::Ordering;

use super::{EdgeId, GeomError, Orientation, PointSet, WheelModel};

/// A generalized wheel recovered from a point set, with `vertex_map[v]` the
/// index in the input of model vertex `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Canonical {
    pub model: WheelModel,
    pub vertex_map: Vec<usize>,
}

struct Hull {
    /// Input indices of hull vertices in clockwise order.
    cw: Vec<usize>,
    interior: usize,
}

fn hull_of(ps: &PointSet) -> Result<Hull, GeomError> {
    if ps.len() < 4 {
        return Err(GeomError::TooFewPoints(ps.len()));
    }
    if let Some((i, j, k)) = ps.collinear_triple() {
        return Err(GeomError::Collinear(i, j, k));
    }
    let mut order: Vec<usize> = (0..ps.len()).collect();
    order.sort_by(|&i, &j| {
        let (p, q) = (&ps.points[i], &ps.points[j]);
        p.x.cmp(&q.x).then_with(|| p.y.cmp(&q.y))
    });

    // Monotone chain; collinear triples were excluded above.
    let mut lower: Vec<usize> = Vec::new();
    for &i in &order {
        while lower.len() >= 2
            && ps.orient(lower[lower.len() - 2], lower[lower.len() - 1], i) != Orientation::CounterClockwise
        {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in order.iter().rev() {
        while upper.len() >= 2
            && ps.orient(upper[upper.len() - 2], upper[upper.len() - 1], i) != Orientation::CounterClockwise
        {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    let mut ccw = lower;
    ccw.extend(upper);

    let interior: Vec<usize> = (0..ps.len()).filter(|i| !ccw.contains(i)).collect();
    if interior.len() != 1 {
        return Err(GeomError::InteriorCount(interior.len()));
    }
    ccw.reverse();
    Ok(Hull { cw: ccw, interior: interior[0] })
}

fn strictly_inside(ps: &PointSet, p: usize, a: usize, b: usize, c: usize) -> bool {
    let s = [ps.orient(a, b, p), ps.orient(b, c, p), ps.orient(c, a, p)];
    s.iter().all(|&o| o == s[0]) && s[0] != Orientation::Collinear
}

/// Position `j` in the clockwise hull such that the center lies in the
/// triangle spanned by `hull[i]`, `hull[j]`, `hull[j + 1]`.
fn opposite_position(ps: &PointSet, hull: &Hull, i: usize) -> Result<usize, GeomError> {
    let h = hull.cw.len();
    let hits: Vec<usize> = (1..h - 1)
        .map(|s| (i + s) % h)
        .filter(|&j| strictly_inside(ps, hull.interior, hull.cw[i], hull.cw[j], hull.cw[(j + 1) % h]))
        .collect();
    match hits.as_slice() {
        [j] => Ok(*j),
        _ => Err(GeomError::WheelProperty(format!(
            "hull vertex {} has {} opposite boundary edges",
            hull.cw[i],
            hits.len()
        ))),
    }
}

/// The hull edge `{v_j, v_j+1}` whose triangle with `v` strictly contains the
/// interior point. Indices refer to `ps`.
pub fn opposite_boundary_edge(ps: &PointSet, v: usize) -> Result<EdgeId, GeomError> {
    let hull = hull_of(ps)?;
    let i = hull.cw.iter().position(|&w| w == v).ok_or(GeomError::NotHullVertex(v))?;
    let j = opposite_position(ps, &hull, i)?;
    Ok(EdgeId::new(hull.cw[j], hull.cw[(j + 1) % hull.cw.len()]))
}

/// Group the hull of a one-interior-point set into a generalized wheel.
pub fn canonicalize(ps: &PointSet) -> Result<Canonical, GeomError> {
    let hull = hull_of(ps)?;
    let h = hull.cw.len();
    let opp = (0..h)
        .map(|i| opposite_position(ps, &hull, i))
        .collect::<Result<Vec<_>, _>>()?;

    let start = (0..h)
        .find(|&i| opp[i] != opp[(i + h - 1) % h])
        .ok_or_else(|| GeomError::WheelProperty("all hull vertices share one opposite edge".into()))?;
    let cw: Vec<usize> = (0..h).map(|s| hull.cw[(start + s) % h]).collect();
    let opp: Vec<usize> = (0..h).map(|s| opp[(start + s) % h]).collect();

    let mut sizes = vec![1usize];
    for s in 1..h {
        if opp[s] == opp[s - 1] {
            *sizes.last_mut().expect("non-empty") += 1;
        } else {
            sizes.push(1);
        }
    }
    if sizes.len() % 2 == 0 {
        return Err(GeomError::WheelProperty(format!("even group count {}", sizes.len())));
    }
    let model = WheelModel::from_groups(&sizes)?;
    let mut vertex_map = vec![hull.interior];
    vertex_map.extend(cw);
    check_balanced_split(ps, &model, &vertex_map)?;
    Ok(Canonical { model, vertex_map })
}

/// The line through the center and any hull vertex leaves the other groups
/// whole, with equally many on each side.
fn check_balanced_split(ps: &PointSet, model: &WheelModel, map: &[usize]) -> Result<(), GeomError> {
    for v in 1..=model.hull_count() {
        let own = model.group_of(v);
        let (mut left, mut right) = (0, 0);
        for g in (0..model.k()).filter(|&g| g != own) {
            let sides: Vec<Orientation> =
                model.members(g).map(|w| ps.orient(map[0], map[v], map[w])).collect();
            if sides.iter().any(|&s| s != sides[0]) {
                return Err(GeomError::WheelProperty(format!("line through v{v} splits group {g}")));
            }
            match sides[0] {
                Orientation::CounterClockwise => left += 1,
                _ => right += 1,
            }
        }
        if left.cmp(&right) != Ordering::Equal {
            return Err(GeomError::WheelProperty(format!(
                "line through v{v} leaves {left} groups on one side and {right} on the other"
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wheelgeom::{realize_coordinates, Point};

    #[test]
    fn triangle_plus_center() {
        let ps = PointSet::new(vec![
            Point::from_ints(0, 0),
            Point::from_ints(10, 0),
            Point::from_ints(3, 2),
            Point::from_ints(0, 10),
        ]);
        let c = canonicalize(&ps).unwrap();
        assert_eq!(c.model.sizes(), &[1, 1, 1]);
        assert_eq!(c.vertex_map[0], 2);
        assert_eq!(opposite_boundary_edge(&ps, 0).unwrap(), EdgeId::new(1, 3));
    }

    #[test]
    fn bw33_opposite_edge() {
        let m = WheelModel::bumpy(3, 3).unwrap();
        let ps = realize_coordinates(&m).unwrap();
        assert_eq!(opposite_boundary_edge(&ps, 1).unwrap(), EdgeId::new(6, 7));
        assert_eq!(canonicalize(&ps).unwrap().model.sizes(), &[3, 3, 3]);
    }

    #[test]
    fn square_with_center() {
        let ps = PointSet::new(vec![
            Point::from_ints(0, 0),
            Point::from_ints(10, 1),
            Point::from_ints(11, 10),
            Point::from_ints(1, 11),
            Point::from_ints(5, 4),
        ]);
        for v in 0..4 {
            let e = opposite_boundary_edge(&ps, v).unwrap();
            assert!(!e.contains(v) && !e.contains(4));
        }
    }

    #[test]
    fn rejects_two_interior_points() {
        let ps = PointSet::new(vec![
            Point::from_ints(0, 0),
            Point::from_ints(100, 0),
            Point::from_ints(0, 100),
            Point::from_ints(10, 20),
            Point::from_ints(21, 11),
        ]);
        assert_eq!(canonicalize(&ps), Err(GeomError::InteriorCount(2)));
    }
}
