mod common;

use common::gw_family;
use planewheel::doublestar::{
    bad_halfplanes, complete_double_stars, criterion_large_families, criterion_small_families, empty_triple,
    halving_by_distance, halving_edges, is_spine_matching, parallel, potential_matching, side_counts, spine_violation,
    spines, Matching, SpineViolation,
};
use planewheel::partition::{validate_double_stars, Mode};
use planewheel::solver::{solve, SolveConfig, Status};
use planewheel::wheelgeom::{realize_coordinates, EdgeId, WheelModel, CENTER};

fn family() -> Vec<WheelModel> {
    gw_family(&[3, 5], 11)
}

fn solve_ds(model: &WheelModel) -> (Status, Option<planewheel::partition::Partition>) {
    let out = solve(model, &SolveConfig::new(Mode::DoubleStar)).unwrap();
    assert_ne!(out.status, Status::Limit);
    (out.status, out.witness)
}

#[test]
fn criterion_halfplanes_and_solver_agree() {
    for model in family() {
        let ps = realize_coordinates(&model).unwrap();
        let small = criterion_small_families(&model);
        let triple = empty_triple(&bad_halfplanes(&model, &ps)).is_some();
        let (status, _) = solve_ds(&model);
        assert_eq!(small, triple, "{:?}", model.sizes());
        assert_eq!(small, status == Status::Unsat, "{:?}", model.sizes());
        if criterion_large_families(&model) {
            assert_eq!(status, Status::Sat, "{:?}", model.sizes());
        }
    }
}

#[test]
fn halving_edges_three_ways() {
    for model in family() {
        let ps = realize_coordinates(&model).unwrap();
        let n = model.n();
        let (radial, other) = halving_edges(&model);
        for e in model.edges() {
            let by_sides = side_counts(&ps, e) == (n - 1, n - 1);
            let listed = radial.contains(&e) || other.contains(&e);
            assert_eq!(listed, by_sides, "{:?} {e}", model.sizes());
            if !e.is_radial() {
                assert_eq!(halving_by_distance(&model, e), by_sides, "{:?} {e}", model.sizes());
            }
        }
    }
}

#[test]
fn pairwise_meeting_halfplanes_share_a_point_of_the_set() {
    for model in family() {
        let ps = realize_coordinates(&model).unwrap();
        let hs = bad_halfplanes(&model, &ps);
        if hs.is_empty() || empty_triple(&hs).is_some() {
            continue;
        }
        let hit = ps.points.iter().any(|p| hs.iter().all(|h| h.region.contains(p)));
        assert!(hit, "{:?}", model.sizes());
    }
}

/// Every perfect matching of the hull minus `v` without a parallel pair.
fn parallel_free_matchings(model: &WheelModel, v: usize, par: &[Vec<bool>]) -> Vec<Vec<EdgeId>> {
    let points = model.point_count();
    fn go(left: &[usize], cur: &mut Vec<EdgeId>, points: usize, par: &[Vec<bool>], out: &mut Vec<Vec<EdgeId>>) {
        let Some((&first, rest)) = left.split_first() else {
            out.push(cur.clone());
            return;
        };
        for (i, &partner) in rest.iter().enumerate() {
            let e = EdgeId::new(first, partner);
            if cur.iter().any(|f| par[e.index(points)][f.index(points)]) {
                continue;
            }
            let remaining: Vec<usize> = rest.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &w)| w).collect();
            cur.push(e);
            go(&remaining, cur, points, par, out);
            cur.pop();
        }
    }
    let rest: Vec<usize> = (1..=model.hull_count()).filter(|&w| w != v).collect();
    let mut out = Vec::new();
    go(&rest, &mut Vec::new(), points, par, &mut out);
    out
}

#[test]
fn potential_matching_is_the_unique_parallel_free_one() {
    for model in gw_family(&[3, 5, 7, 9], 9) {
        let ps = realize_coordinates(&model).unwrap();
        let edges: Vec<EdgeId> = model.edges().collect();
        let par: Vec<Vec<bool>> = edges
            .iter()
            .map(|&e| edges.iter().map(|&f| !e.shares_endpoint(&f) && parallel(e, f, &ps).unwrap()).collect())
            .collect();
        for v in 1..=model.hull_count() {
            let free = parallel_free_matchings(&model, v, &par);
            assert_eq!(free.len(), 1, "{:?} v{v}", model.sizes());
            let mut expected = free[0].clone();
            expected.push(EdgeId::new(CENTER, v));
            assert_eq!(potential_matching(&model, v).unwrap(), Matching::new(&model, expected).unwrap());
        }
    }
}

#[test]
fn witnesses_have_potential_spine_matchings() {
    for model in gw_family(&[3, 5, 7, 9], 9) {
        let (_, witness) = solve_ds(&model);
        let Some(p) = witness else { continue };
        let m = spines(&p).expect("double star classes");
        let r = m.radial().expect("radial spine");
        assert_eq!(m, potential_matching(&model, r.other(CENTER)).unwrap(), "{:?}", model.sizes());
        assert!(is_spine_matching(&model, &m).unwrap());
    }
}

#[test]
fn spine_certificate_matches_completion() {
    for model in gw_family(&[3, 5], 9) {
        let cfg = SolveConfig::new(Mode::DoubleStar);
        for v in 1..=model.hull_count() {
            let m = potential_matching(&model, v).unwrap();
            let certified = is_spine_matching(&model, &m).unwrap();
            let completed = if certified { complete_double_stars(&model, &m, &cfg).unwrap() } else { None };
            assert_eq!(certified, completed.is_some(), "{:?} v{v}", model.sizes());
            if let Some(p) = completed {
                assert!(validate_double_stars(&p).ok());
                assert_eq!(spines(&p).unwrap(), m);
            }
        }
    }
}

#[test]
fn bumpy_three_three_has_no_double_star_partition() {
    let model = WheelModel::bumpy(3, 3).unwrap();
    let ps = realize_coordinates(&model).unwrap();
    assert!(criterion_small_families(&model));
    let hs = bad_halfplanes(&model, &ps);
    assert_eq!(hs.len(), 3);
    assert!(empty_triple(&hs).is_some());
    for v in 1..=model.hull_count() {
        let m = potential_matching(&model, v).unwrap();
        assert!(matches!(spine_violation(&model, &ps, &m).unwrap(), Some(SpineViolation::Parallel(..) | SpineViolation::CrossBlocker(..))));
    }
    assert_eq!(solve_ds(&model).0, Status::Unsat);
}

#[test]
fn regular_wheels_have_double_star_partitions() {
    for k in [3, 5, 7, 9, 11] {
        let model = WheelModel::generalized(&vec![1; k]).unwrap();
        assert!(!criterion_small_families(&model));
        let (status, witness) = solve_ds(&model);
        assert_eq!(status, Status::Sat, "k = {k}");
        assert!(validate_double_stars(&witness.unwrap()).ok());
    }
}

#[test]
fn matching_errors() {
    let model = WheelModel::generalized(&[1, 1, 1]).unwrap();
    assert!(Matching::new(&model, vec![EdgeId::new(0, 1)]).is_err());
    assert!(Matching::new(&model, vec![EdgeId::new(0, 1), EdgeId::new(1, 2)]).is_err());
    assert!(potential_matching(&model, CENTER).is_err());
}
