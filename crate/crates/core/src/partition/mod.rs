//! Edge partitions, mode validators, structural audits and isomorphism.

mod audit;
mod iso;
mod validate;

use serde::{Deserialize, Serialize};

use crate::wheelgeom::{EdgeId, WheelModel};

pub use audit::structural_audit;
pub use iso::{canonical_form, isomorphic, permuted, symmetries, Symmetry};
pub use validate::{validate, validate_double_stars, validate_plane_partition, validate_spanning_trees};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PartitionError {
    #[error("expected {expected} colors, got {got}")]
    Length { expected: usize, got: usize },
    #[error("edge index {edge} has color {color} outside 0..{m}")]
    ColorRange { edge: usize, color: usize, m: usize },
    #[error("partitions are over different models or color counts")]
    Mismatch,
}

/// What each color class is required to be.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    #[default]
    Subgraph,
    SpanningTree,
    DoubleStar,
}

/// A total coloring of the edges of the complete graph on the model's
/// points, indexed in lexicographic edge order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PartitionJson", into = "PartitionJson")]
pub struct Partition {
    model: WheelModel,
    m: usize,
    colors: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct PartitionJson {
    model: WheelModel,
    m: usize,
    colors: Vec<usize>,
}

impl TryFrom<PartitionJson> for Partition {
    type Error = PartitionError;

    fn try_from(raw: PartitionJson) -> Result<Self, Self::Error> {
        Partition::new(raw.model, raw.m, raw.colors)
    }
}

impl From<Partition> for PartitionJson {
    fn from(p: Partition) -> Self {
        PartitionJson { model: p.model, m: p.m, colors: p.colors }
    }
}

impl Partition {
    pub fn new(model: WheelModel, m: usize, colors: Vec<usize>) -> Result<Self, PartitionError> {
        let expected = model.edge_count();
        if colors.len() != expected {
            return Err(PartitionError::Length { expected, got: colors.len() });
        }
        if let Some((edge, &color)) = colors.iter().enumerate().find(|(_, &c)| c >= m) {
            return Err(PartitionError::ColorRange { edge, color, m });
        }
        Ok(Partition { model, m, colors })
    }

    /// Build from explicit classes; every edge must appear in exactly one.
    pub fn from_classes(model: WheelModel, classes: &[Vec<EdgeId>]) -> Result<Self, PartitionError> {
        let total = model.edge_count();
        let mut colors = vec![usize::MAX; total];
        for (c, class) in classes.iter().enumerate() {
            for &e in class {
                let idx = model.edge_index(e);
                if colors[idx] != usize::MAX {
                    return Err(PartitionError::ColorRange { edge: idx, color: c, m: classes.len() });
                }
                colors[idx] = c;
            }
        }
        if let Some(edge) = colors.iter().position(|&c| c == usize::MAX) {
            return Err(PartitionError::ColorRange { edge, color: usize::MAX, m: classes.len() });
        }
        Partition::new(model, classes.len(), colors)
    }

    pub fn model(&self) -> &WheelModel {
        &self.model
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color(&self, e: EdgeId) -> usize {
        self.colors[self.model.edge_index(e)]
    }

    pub fn class(&self, c: usize) -> Vec<EdgeId> {
        self.model.edges().filter(|&e| self.color(e) == c).collect()
    }

    pub fn classes(&self) -> Vec<Vec<EdgeId>> {
        let mut out = vec![Vec::new(); self.m];
        for (i, &c) in self.colors.iter().enumerate() {
            out[c].push(self.model.edge_at(i));
        }
        out
    }

    /// Same partition with the colors of `e` and `f` exchanged.
    pub fn with_swapped(&self, e: EdgeId, f: EdgeId) -> Partition {
        let mut colors = self.colors.clone();
        colors.swap(self.model.edge_index(e), self.model.edge_index(f));
        Partition { model: self.model.clone(), m: self.m, colors }
    }

    /// Same partition with colors renamed through `perm`.
    pub fn relabeled(&self, perm: &[usize]) -> Partition {
        let colors = self.colors.iter().map(|&c| perm[c]).collect();
        Partition { model: self.model.clone(), m: self.m, colors }
    }
}

/// One class-level finding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    pub class: usize,
    pub edges: usize,
    pub plane: bool,
    pub size_2n_minus_1: bool,
    pub connected: bool,
    pub spanning: bool,
    pub acyclic: bool,
    pub double_star: bool,
    pub boundary_edges: usize,
    pub maximal_diagonals: Vec<EdgeId>,
}

impl ClassReport {
    pub fn spanning_tree(&self) -> bool {
        self.plane && self.size_2n_minus_1 && self.connected && self.spanning
    }
}

/// The claim a violation refutes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Claim {
    ClassCount,
    Plane,
    ClassSize,
    Connected,
    Spanning,
    Acyclic,
    DoubleStar,
    /// One class with a single boundary edge and maximal diagonal, the rest with two.
    BoundaryCounts,
    /// Radial edges of a two-diagonal tree lie in the span of its maximal diagonals.
    SpanConfinement,
    /// A diagonal of distance `d` is followed by exactly one child of distance `d - 1`.
    DistanceChain,
    /// Exactly one maximal diagonal per opposite pair and distance `d_j`.
    MaxEdgePerDistance,
    /// Distance sums of incomparable edges inside one class.
    DistanceSums,
    /// Forced diagonal accounting.
    ForcedEdges,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub claim: Claim,
    pub class: Option<usize>,
    pub edges: Vec<EdgeId>,
    pub detail: String,
}

/// Assignment of forced diagonals to classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForcedSlots {
    /// `(pair, slot index i, edge, class)` with the edge of distance at least `d_i`.
    pub slots: Vec<((usize, usize), usize, EdgeId, usize)>,
    /// Slack `x_i` per class, in class order.
    pub slack: Vec<usize>,
    pub slack_sum: usize,
    pub budget: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub mode: Mode,
    pub classes: Vec<ClassReport>,
    pub violations: Vec<Violation>,
    /// Whether the structural checks ran (bumpy wheels with group size at least 3).
    pub structural: bool,
    pub forced: Option<ForcedSlots>,
}

impl AuditReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violated(&self, claim: Claim) -> bool {
        self.violations.iter().any(|v| v.claim == claim)
    }

    pub(crate) fn flag(&mut self, claim: Claim, class: Option<usize>, edges: Vec<EdgeId>, detail: String) {
        self.violations.push(Violation { claim, class, edges, detail });
    }
}
