mod common;

use common::{predicate_matrix, random_set, tight_drawing};
use planewheel::wheelgeom::{canonicalize, combinatorial_cross, realize_coordinates, segments_cross, EdgeId, PointSet, WheelModel};
use rand::rngs::StdRng;
use rand::SeedableRng;

fn mismatches(model: &WheelModel, ps: &PointSet) -> usize {
    let edges: Vec<EdgeId> = model.edges().collect();
    let mut bad = 0;
    for (i, &e) in edges.iter().enumerate() {
        for &f in &edges[i + 1..] {
            if combinatorial_cross(model, e, f) != segments_cross(e, f, ps) {
                bad += 1;
            }
        }
    }
    bad
}

#[test]
fn combinatorial_crossings_match_geometry() {
    for model in predicate_matrix() {
        assert!(model.point_count() <= 16);
        let ps = tight_drawing(&model);
        assert!(ps.in_general_position(), "{:?}", model.sizes());
        assert_eq!(mismatches(&model, &ps), 0, "{:?}", model.sizes());
        let ps = realize_coordinates(&model).unwrap();
        assert_eq!(mismatches(&model, &ps), 0, "{:?}", model.sizes());
    }
}

#[test]
fn realized_points_canonicalize_back() {
    for model in predicate_matrix() {
        let c = canonicalize(&realize_coordinates(&model).unwrap()).unwrap();
        // The model comes back up to rotation of the group list.
        let k = model.k();
        let rotated = (0..k).any(|r| (0..k).all(|g| c.model.sizes()[g] == model.sizes()[(g + r) % k]));
        assert!(rotated, "{:?} -> {:?}", model.sizes(), c.model.sizes());
    }
}

#[test]
fn random_one_interior_point_sets() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..100 {
        let ps = random_set(&mut rng);
        let c = canonicalize(&ps).unwrap();
        assert_eq!(c.model.k() % 2, 1);
        assert_eq!(c.model.point_count(), ps.len());
        let edges: Vec<EdgeId> = c.model.edges().collect();
        let map = |e: EdgeId| EdgeId::new(c.vertex_map[e.a], c.vertex_map[e.b]);
        for (i, &e) in edges.iter().enumerate() {
            for &f in &edges[i + 1..] {
                assert_eq!(combinatorial_cross(&c.model, e, f), segments_cross(map(e), map(f), &ps));
            }
        }
    }
}
