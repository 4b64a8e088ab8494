//! Wheel models, exact rational geometry and the crossing predicates.

mod canonical;
mod crossing;
mod geometry;
mod model;
mod realize;

pub use canonical::{canonicalize, opposite_boundary_edge, Canonical};
pub use crossing::{combinatorial_cross, crossing_graph, far_arc, CrossingGraph};
pub use geometry::{orientation, segments_cross, Orientation, Point, PointSet};
pub use model::{all_edges, EdgeId, Vertex, WheelModel, CENTER};
pub use realize::{realize_coordinates, realize_with_cap, REALIZE_ITERATION_CAP};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeomError {
    #[error("invalid wheel model: {0}")]
    InvalidModel(String),
    #[error("point set is not in general position: points {0}, {1}, {2} are collinear")]
    Collinear(usize, usize, usize),
    #[error("expected exactly one interior point, found {0}")]
    InteriorCount(usize),
    #[error("need at least 4 points, got {0}")]
    TooFewPoints(usize),
    #[error("vertex {0} is not a hull vertex")]
    NotHullVertex(usize),
    #[error("wheel property violated: {0}")]
    WheelProperty(String),
    #[error("realization did not converge after {0} halvings")]
    RealizationCap(u32),
    #[error("malformed coordinate {0:?}")]
    BadCoordinate(String),
}
