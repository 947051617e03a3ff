//! Exact enumeration of vertex normal surfaces in compact 3-manifold
//! triangulations, in standard (7n) and quadrilateral (3n) coordinates,
//! together with conversions between the two solution sets.
//!
//! The fast route to the standard solution set enumerates in quadrilateral
//! coordinates and then converts, see [`convert::enumerate_std_via_quad`].

pub mod convert;
pub mod coords;
pub mod enumerate;
pub mod error;
pub mod families;
pub mod int;
pub mod io;
pub mod oracle;
pub mod perm;
pub mod triangulation;

pub use coords::{Coords, MatchingSystem, NormalVector, SolutionSet};
pub use error::{Error, Result};
pub use int::{IntVec, PositionMask};
pub use perm::Perm4;
pub use triangulation::{
    build_skeleton, parse_triangulation, serialize_triangulation, validate_compact, Skeleton, Triangulation,
    ValidationReport,
};
