//! Almost-empty monochromatic triangles in colored planar point sets.
//!
//! The crate builds exact integer point sets (including Horton sets),
//! colors them, counts the interior points of monochromatic triangles and
//! decides by complete search whether a set admits a `c`-coloring in which
//! every monochromatic triangle has more than `s` interior points.

pub mod chroma;
pub mod error;
pub mod format;
pub mod geom;
pub mod horton;
pub mod random;
pub mod solver;

pub use chroma::{cyclic_coloring, min_interior_statistics, scan, Coloring, ScanReport, Scanner, TriangleRecord};
pub use error::{Error, Result};
pub use geom::{
    convex_hull, interior_count, orientation, triangulate, validate_general_position, GeneralPosition, Hull,
    InteriorTable, Orientation, Point, PointSet, Triangle,
};
pub use horton::{check_cross_pairs, generate, split, verify_horton, HortonSet, HortonSplit, HortonViolation};
pub use solver::{
    build_hypergraph, decide, export_cnf, verify_model, witness_search, Budget, ForbiddenHypergraph, ModelCheck,
    SearchOutcome, Verdict,
};
