use serde::{Deserialize, Serialize};

use super::{Partition, PartitionError};
use crate::wheelgeom::{EdgeId, WheelModel};

/// Point-set symmetries allowed when comparing partitions; color
/// permutations are always allowed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Symmetry {
    None,
    Rotation,
    #[default]
    RotationReflection,
}

/// Vertex permutations of the model (center fixed) that carry groups onto
/// groups: rotations and, if allowed, reflections of the hull.
pub fn symmetries(model: &WheelModel, sym: Symmetry) -> Vec<Vec<usize>> {
    let h = model.hull_count();
    let mut out = vec![(0..=h).collect::<Vec<usize>>()];
    if sym == Symmetry::None {
        return out;
    }
    let reflections: &[bool] = if sym == Symmetry::RotationReflection { &[false, true] } else { &[false] };
    let same = |a: usize, b: usize| model.group_of(a) == model.group_of(b);
    for &reflect in reflections {
        for r in 0..h {
            if r == 0 && !reflect {
                continue;
            }
            let mut perm = vec![0; h + 1];
            for (v, slot) in perm.iter_mut().enumerate().skip(1) {
                let base = if reflect { h + 1 - v } else { v };
                *slot = model.cw(base, r as isize);
            }
            let keeps_groups = (1..=h).all(|v| {
                let w = model.cw(v, 1);
                same(v, w) == same(perm[v], perm[w])
            });
            if keeps_groups {
                out.push(perm);
            }
        }
    }
    out
}

/// Colors renumbered by first appearance in lexicographic edge order.
fn normalize(colors: &[usize]) -> Vec<u16> {
    let mut names: Vec<Option<u16>> = Vec::new();
    let mut next = 0u16;
    colors
        .iter()
        .map(|&c| {
            if c >= names.len() {
                names.resize(c + 1, None);
            }
            *names[c].get_or_insert_with(|| {
                next += 1;
                next - 1
            })
        })
        .collect()
}

/// Lexicographically least normalized coloring over the symmetry group,
/// encoded as little-endian `u16` values.
pub fn canonical_form(p: &Partition, sym: Symmetry) -> Vec<u8> {
    let model = p.model();
    let points = model.point_count();
    let mut best: Option<Vec<u16>> = None;
    let mut image = vec![0usize; p.colors().len()];
    for perm in symmetries(model, sym) {
        for (i, e) in model.edges().enumerate() {
            let f = EdgeId::new(perm[e.a], perm[e.b]);
            image[f.index(points)] = p.colors()[i];
        }
        let cand = normalize(&image);
        if best.as_ref().map_or(true, |b| cand < *b) {
            best = Some(cand);
        }
    }
    best.expect("identity present").iter().flat_map(|c| c.to_le_bytes()).collect()
}

pub fn isomorphic(p1: &Partition, p2: &Partition, sym: Symmetry) -> Result<bool, PartitionError> {
    if p1.model() != p2.model() || p1.m() != p2.m() {
        return Err(PartitionError::Mismatch);
    }
    Ok(canonical_form(p1, sym) == canonical_form(p2, sym))
}

/// Apply a vertex permutation to a partition.
pub fn permuted(p: &Partition, perm: &[usize]) -> Partition {
    let model = p.model();
    let points = model.point_count();
    let mut colors = vec![0usize; p.colors().len()];
    for (i, e) in model.edges().enumerate() {
        colors[EdgeId::new(perm[e.a], perm[e.b]).index(points)] = p.colors()[i];
    }
    Partition::new(model.clone(), p.m(), colors).expect("same shape")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_counts() {
        let bw = WheelModel::bumpy(3, 3).unwrap();
        assert_eq!(symmetries(&bw, Symmetry::None).len(), 1);
        assert_eq!(symmetries(&bw, Symmetry::Rotation).len(), 3);
        assert_eq!(symmetries(&bw, Symmetry::RotationReflection).len(), 6);
        let gw = WheelModel::generalized(&[1, 2, 4]).unwrap();
        assert_eq!(symmetries(&gw, Symmetry::RotationReflection).len(), 1);
        let pal = WheelModel::generalized(&[2, 1, 2]).unwrap();
        assert_eq!(symmetries(&pal, Symmetry::RotationReflection).len(), 2);
    }

    #[test]
    fn normalize_by_first_use() {
        assert_eq!(normalize(&[3, 3, 1, 0, 1]), vec![0, 0, 1, 2, 1]);
    }
}
