//! Exact tools for partitioning complete geometric graphs on wheel-type point
//! sets into plane subgraphs, plane spanning trees and plane double stars.

pub mod wheelgeom;
pub mod edgeorder;
pub mod dsu;
pub mod partition;
pub mod solver;
pub mod enumerate_k3;
pub mod doublestar;
