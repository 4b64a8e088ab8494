//! Constructive enumeration of the plane spanning tree partitions of
//! bumpy wheels with groups of three.
//!
//! Generation runs in three steps: a base partial partition fixing every
//! radial edge and one maximal diagonal per opposite pair and distance
//! `d_1, d_2, d_3`; the unique extension covering all diagonals of those
//! distances; and one left/right bit per lower distance level.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dsu::RollbackDsu;
use crate::edgeorder::{children, closer_than, d_value, directed_opposite_pairs, dist};
use crate::partition::{Partition, PartitionError};
use crate::wheelgeom::{combinatorial_cross, EdgeId, Vertex, WheelModel, CENTER};

const L: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnumError {
    #[error("k = {0} must be odd and at least 3")]
    BadK(usize),
    #[error("expected stage {expected}, got {got}")]
    Stage { expected: Stage, got: Stage },
    #[error("expected {expected} choice bits, got {got}")]
    ChoiceLength { expected: usize, got: usize },
    #[error("invalid partial partition: {0}")]
    Invalid(String),
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    Base,
    BaseExtended,
    Full,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::Base => "base",
            Stage::BaseExtended => "base_extended",
            Stage::Full => "full",
        })
    }
}

/// Which tree carries the apex of the `d_2`/`d_3` pair of the second tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BaseCase {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2a")]
    TwoA,
    #[serde(rename = "2b")]
    TwoB,
}

impl BaseCase {
    pub const ALL: [BaseCase; 3] = [BaseCase::One, BaseCase::TwoA, BaseCase::TwoB];

    /// Number of free radial swaps for `k`.
    pub fn swap_bits(self, k: usize) -> usize {
        match self {
            BaseCase::One => (k - 3) / 2,
            _ => (k - 1) / 2,
        }
    }
}

impl fmt::Display for BaseCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BaseCase::One => "1",
            BaseCase::TwoA => "2a",
            BaseCase::TwoB => "2b",
        })
    }
}

impl std::str::FromStr for BaseCase {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "1" => Ok(BaseCase::One),
            "2a" => Ok(BaseCase::TwoA),
            "2b" => Ok(BaseCase::TwoB),
            _ => Err(format!("unknown base case {s:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialPartition {
    pub model: WheelModel,
    pub classes: Vec<BTreeSet<EdgeId>>,
    pub covered: BTreeSet<EdgeId>,
    pub stage: Stage,
    pub case: BaseCase,
    /// Radial swap bits of the base, one per group with two outmost apexes.
    pub swaps: Vec<bool>,
}

impl PartialPartition {
    fn class_of(&self) -> BTreeMap<EdgeId, usize> {
        self.classes.iter().enumerate().flat_map(|(c, s)| s.iter().map(move |&e| (e, c))).collect()
    }

    fn add(&mut self, c: usize, e: EdgeId) -> Result<(), EnumError> {
        if !self.covered.insert(e) {
            return Err(EnumError::Invalid(format!("{e} covered twice")));
        }
        self.classes[c].insert(e);
        Ok(())
    }
}

fn check_k(k: usize) -> Result<(), EnumError> {
    if k < 3 || k % 2 == 0 {
        return Err(EnumError::BadK(k));
    }
    Ok(())
}

/// `4^(k-1) + 4^(k-2)`.
pub fn predicted_count(k: usize) -> u128 {
    assert!(k >= 2, "k must be at least 2");
    4u128.pow(k as u32 - 1) + 4u128.pow(k as u32 - 2)
}

/// Number of choice bits taken by [`extend_full`].
pub fn choice_bits(k: usize) -> usize {
    (k - 1) / 2 * L - 1
}

/// Group `i` (1-based, taken mod `k`) in hull numbering: left, middle and
/// right vertex as seen from the center.
struct Groups {
    k: usize,
}

impl Groups {
    fn idx(&self, i: usize) -> usize {
        (i + self.k - 1) % self.k
    }

    fn left(&self, i: usize) -> Vertex {
        L * self.idx(i) + 1
    }

    fn mid(&self, i: usize) -> Vertex {
        L * self.idx(i) + 2
    }

    fn right(&self, i: usize) -> Vertex {
        L * self.idx(i) + 3
    }
}

fn radial(v: Vertex) -> EdgeId {
    EdgeId::new(CENTER, v)
}

/// One base partial partition.
pub fn base_partition(k: usize, case: BaseCase, swaps: &[bool]) -> Result<PartialPartition, EnumError> {
    check_k(k)?;
    let want = case.swap_bits(k);
    if swaps.len() != want {
        return Err(EnumError::ChoiceLength { expected: want, got: swaps.len() });
    }
    let model = WheelModel::bumpy(k, L).map_err(|e| EnumError::Invalid(e.to_string()))?;
    let g = Groups { k };
    let h = (k - 1) / 2;
    let e = EdgeId::new;
    let mut trees: Vec<Vec<EdgeId>> = Vec::new();

    // The tree with one maximal diagonal takes the radial block on its near side.
    let mut t0: Vec<EdgeId> = (1..=L * h + 1).map(radial).collect();
    t0.push(e(g.left(h + 1), g.right(k)));
    trees.push(t0);

    let mut t1 = vec![radial(g.mid(h + 1)), e(g.left(1), g.mid(h + 1))];
    match case {
        BaseCase::One => t1.extend([e(g.left(h + 2), g.left(1)), radial(g.right(h + 1))]),
        BaseCase::TwoA => t1.extend([e(g.right(h + 1), g.right(k)), radial(g.right(k))]),
        BaseCase::TwoB => t1.extend([e(g.mid(h + 1), g.mid(k)), radial(g.right(k))]),
    }
    trees.push(t1);

    for c in h + 2..=k {
        trees.push(vec![radial(g.mid(c)), e(g.mid(c), g.right(c + h)), e(g.left(c + k - h), g.mid(c))]);
    }

    // Trees with apex at the right vertex of groups 1..h, then at the left
    // vertex of groups 2..h, then the last tree.
    let right_first = trees.len();
    for a in 1..=h {
        trees.push(vec![e(g.left(a + h + 1), g.right(a)), e(g.right(a), g.right(a + h))]);
    }
    let left_first = trees.len();
    for a in 2..=h {
        trees.push(vec![e(g.left(a), g.right(a + h)), e(g.left(a + h + 1), g.left(a))]);
    }
    let last = trees.len();
    let mut tl = vec![e(g.left(1), g.right(h + 1))];
    match case {
        BaseCase::One => tl.extend([e(g.right(h + 1), g.right(k)), radial(g.right(k))]),
        _ => tl.push(e(g.left(h + 2), g.left(1))),
    }
    trees.push(tl);

    // Both apex trees of group a share the radials of the gap opposite to a.
    let partner = |a: usize| if a == 1 { last } else { left_first + a - 2 };
    let pairs: Vec<usize> = match case {
        BaseCase::One => {
            trees[right_first].push(radial(g.left(h + 2)));
            (2..=h).collect()
        }
        _ => (1..=h).collect(),
    };
    for (&a, &swap) in pairs.iter().zip(swaps) {
        let (near, far) = (radial(g.right(a + h)), radial(g.left(a + h + 1)));
        let (x, y) = if swap { (far, near) } else { (near, far) };
        trees[right_first + a - 1].push(x);
        trees[partner(a)].push(y);
    }

    let mut pp = PartialPartition {
        model,
        classes: vec![BTreeSet::new(); trees.len()],
        covered: BTreeSet::new(),
        stage: Stage::Base,
        case,
        swaps: swaps.to_vec(),
    };
    for (c, t) in trees.into_iter().enumerate() {
        for edge in t {
            pp.add(c, edge)?;
        }
    }
    check_partial(&pp)?;
    Ok(pp)
}

/// Every base partial partition for `k`, by case and then by swap bits.
pub fn base_partitions(k: usize) -> Result<Vec<PartialPartition>, EnumError> {
    check_k(k)?;
    let mut out = Vec::new();
    for case in BaseCase::ALL {
        out.extend(case_bases(k, case)?);
    }
    Ok(out)
}

/// Base partial partitions of a single case.
pub fn case_bases(k: usize, case: BaseCase) -> Result<Vec<PartialPartition>, EnumError> {
    check_k(k)?;
    let bits = case.swap_bits(k);
    (0..1usize << bits)
        .map(|mask| {
            let swaps: Vec<bool> = (0..bits).map(|i| mask >> i & 1 == 1).collect();
            base_partition(k, case, &swaps)
        })
        .collect()
}

/// Edge between groups `a` and `b = a + (k-1)/2` (0-based) at positions
/// `s` in `a` and `t` in `b`; its distance is `h*l + t - s`.
fn pair_edge(model: &WheelModel, (a, b): (usize, usize), s: usize, t: usize) -> EdgeId {
    EdgeId::new(model.first(a) + s, model.first(b) + t)
}

/// Checks the invariants of the partial partition's stage.
pub fn check_partial(pp: &PartialPartition) -> Result<(), EnumError> {
    let model = &pp.model;
    let (k, l) = model.bumpy_params().ok_or_else(|| EnumError::Invalid("not a bumpy wheel".into()))?;
    let bad = |s: String| Err(EnumError::Invalid(s));
    let mut seen = BTreeSet::new();
    for class in &pp.classes {
        for &e in class {
            if !seen.insert(e) {
                return bad(format!("{e} in two classes"));
            }
        }
    }
    if seen != pp.covered {
        return bad("covered set disagrees with the classes".into());
    }
    if let Some(v) = (1..=model.hull_count()).find(|&v| !pp.covered.contains(&radial(v))) {
        return bad(format!("radial edge to {v} uncovered"));
    }
    let top = d_value(k, l, 1).expect("in range");
    let low = d_value(k, l, l).expect("in range");
    let diagonals: Vec<EdgeId> = pp.covered.iter().copied().filter(|e| !e.is_radial()).collect();
    for &e in &diagonals {
        let d = dist(model, e).expect("non-radial");
        if d < low || d > top {
            return bad(format!("{e} has distance {d} outside d_1..d_l"));
        }
    }
    let per_pair = |pair: (usize, usize), j: usize| {
        (0..j).filter(|&s| pp.covered.contains(&pair_edge(model, pair, s, s + l - j))).count()
    };
    for pair in directed_opposite_pairs(model) {
        for j in 1..=l {
            let want = if pp.stage == Stage::Base { 1 } else { j };
            let got = per_pair(pair, j);
            if got != want {
                return bad(format!("groups {pair:?} have {got} covered edges of distance d_{j}, expected {want}"));
            }
        }
    }
    let expected_diagonals = k * if pp.stage == Stage::Base { l } else { l * (l + 1) / 2 };
    if diagonals.len() != expected_diagonals {
        return bad(format!("{} diagonals covered, expected {expected_diagonals}", diagonals.len()));
    }
    for (c, class) in pp.classes.iter().enumerate() {
        if class.is_empty() {
            return bad(format!("class {c} is empty"));
        }
        let edges: Vec<EdgeId> = class.iter().copied().collect();
        for (i, &e) in edges.iter().enumerate() {
            if let Some(&f) = edges[i + 1..].iter().find(|&&f| combinatorial_cross(model, e, f)) {
                return bad(format!("class {c} has crossing edges {e} and {f}"));
            }
        }
        let mut dsu = RollbackDsu::new(model.point_count());
        for &e in &edges {
            if !dsu.union(e.a, e.b) {
                return bad(format!("class {c} has a cycle through {e}"));
            }
        }
        let root = edges[0].a;
        if edges.iter().any(|e| !dsu.same(e.a, root)) {
            return bad(format!("class {c} is disconnected"));
        }
        if pp.stage == Stage::Base {
            let non_radial: Vec<EdgeId> = edges.iter().copied().filter(|e| !e.is_radial()).collect();
            for &e in &non_radial {
                if non_radial.iter().any(|&f| closer_than(model, e, f).unwrap_or(false)) {
                    return bad(format!("{e} is not maximal in class {c}"));
                }
            }
        }
    }
    Ok(())
}

/// Cover the remaining diagonals of distance `d_2..d_l` per opposite pair.
/// The choice at each distance is forced by the one edge already present.
pub fn extend_base(pp: &PartialPartition) -> Result<PartialPartition, EnumError> {
    if pp.stage != Stage::Base {
        return Err(EnumError::Stage { expected: Stage::Base, got: pp.stage });
    }
    check_partial(pp)?;
    let model = &pp.model;
    let (_, l) = model.bumpy_params().expect("checked");
    let mut out = pp.clone();
    let mut class_of = out.class_of();
    for pair in directed_opposite_pairs(model) {
        for j in 2..=l {
            let parents: Vec<EdgeId> = (0..j - 1).map(|s| pair_edge(model, pair, s, s + l - j + 1)).collect();
            let slots: Vec<EdgeId> = (0..j).map(|s| pair_edge(model, pair, s, s + l - j)).collect();
            let free: Vec<EdgeId> = slots.iter().copied().filter(|e| !out.covered.contains(e)).collect();
            if free.len() != parents.len() {
                return Err(EnumError::Invalid(format!("groups {pair:?} at d_{j}: {} free slots", free.len())));
            }
            for (&p, &child) in parents.iter().zip(&free) {
                let (x, y) = children(model, p).expect("diagonal");
                if child != x && child != y {
                    return Err(EnumError::Invalid(format!("{child} is not a child of {p}")));
                }
                let c = class_of[&p];
                out.add(c, child)?;
                class_of.insert(child, c);
            }
        }
    }
    out.stage = Stage::BaseExtended;
    check_partial(&out)?;
    Ok(out)
}

/// Complete a base-extended partial partition. Bit `i` picks, for level
/// `d_l - i`, whether every edge passes to its child keeping the arc start
/// (`false`) or the arc end (`true`).
pub fn extend_full(pp: &PartialPartition, choices: &[bool]) -> Result<Partition, EnumError> {
    if pp.stage != Stage::BaseExtended {
        return Err(EnumError::Stage { expected: Stage::BaseExtended, got: pp.stage });
    }
    let model = &pp.model;
    let (k, l) = model.bumpy_params().ok_or_else(|| EnumError::Invalid("not a bumpy wheel".into()))?;
    let want = (k - 1) / 2 * l - 1;
    if choices.len() != want {
        return Err(EnumError::ChoiceLength { expected: want, got: choices.len() });
    }
    let mut class_of = pp.class_of();
    let mut level: Vec<EdgeId> = crate::edgeorder::edges_of_distance(model, d_value(k, l, l).expect("in range"))
        .map_err(|e| EnumError::Invalid(e.to_string()))?;
    for &bit in choices {
        let mut next = Vec::with_capacity(level.len());
        for &e in &level {
            let c = *class_of
                .get(&e)
                .ok_or_else(|| EnumError::Invalid(format!("{e} uncovered before its level")))?;
            let (x, y) = children(model, e).expect("distance at least 2");
            let child = if bit { y } else { x };
            if class_of.insert(child, c).is_some() {
                return Err(EnumError::Invalid(format!("{child} reached twice")));
            }
            next.push(child);
        }
        level = next;
    }
    let mut classes = vec![Vec::new(); pp.classes.len()];
    for (e, c) in class_of {
        classes[c].push(e);
    }
    Ok(Partition::from_classes(model.clone(), &classes)?)
}

fn bits_of(mask: usize, len: usize) -> Vec<bool> {
    (0..len).map(|i| mask >> i & 1 == 1).collect()
}

/// Every partition for `k`, base by base and then by choice string.
pub fn enumerate_all(k: usize) -> Result<impl Iterator<Item = Partition>, EnumError> {
    enumerate_case(k, None)
}

/// Like [`enumerate_all`], optionally restricted to one base case.
pub fn enumerate_case(k: usize, case: Option<BaseCase>) -> Result<impl Iterator<Item = Partition>, EnumError> {
    check_k(k)?;
    let mut extended = Vec::new();
    for c in BaseCase::ALL.into_iter().filter(|c| case.map_or(true, |x| x == *c)) {
        for base in case_bases(k, c)? {
            extended.push(extend_base(&base)?);
        }
    }
    let bits = choice_bits(k);
    Ok(extended.into_iter().flat_map(move |pp| {
        (0..1usize << bits).map(move |mask| extend_full(&pp, &bits_of(mask, bits)).expect("valid base-extended input"))
    }))
}

/// Number of partitions [`enumerate_case`] yields, without generating them.
pub fn enumeration_count(k: usize, case: Option<BaseCase>) -> Result<u128, EnumError> {
    check_k(k)?;
    let bases: u128 = BaseCase::ALL
        .into_iter()
        .filter(|c| case.map_or(true, |x| x == *c))
        .map(|c| 1u128 << c.swap_bits(k))
        .sum();
    Ok(bases << choice_bits(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::validate_spanning_trees;

    #[test]
    fn base_counts() {
        assert_eq!(base_partitions(3).unwrap().len(), 5);
        assert_eq!(base_partitions(5).unwrap().len(), 10);
        assert!(matches!(base_partitions(4), Err(EnumError::BadK(4))));
    }

    #[test]
    fn extension_covers_six_per_pair() {
        for base in base_partitions(3).unwrap() {
            let ext = extend_base(&base).unwrap();
            assert_eq!(ext.covered.iter().filter(|e| !e.is_radial()).count(), 3 * 6);
            assert!(matches!(extend_base(&ext), Err(EnumError::Stage { .. })));
        }
    }

    #[test]
    fn full_partitions_are_trees() {
        let all: Vec<Partition> = enumerate_all(3).unwrap().collect();
        assert_eq!(all.len() as u128, predicted_count(3));
        for p in &all {
            assert!(validate_spanning_trees(p).ok());
        }
    }

    #[test]
    fn choice_length_checked() {
        let ext = extend_base(&base_partitions(3).unwrap()[0]).unwrap();
        assert!(matches!(extend_full(&ext, &[true]), Err(EnumError::ChoiceLength { expected: 2, got: 1 })));
    }
}
