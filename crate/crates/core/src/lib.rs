//! Exact computation of the regions lit by diffuse reflection inside a
//! simple polygon, together with certifying reflection paths.

pub mod boundary;
pub mod fixtures;
pub mod generators;
pub mod geom;
pub mod oracle;
pub mod paths;
pub mod rational;
pub mod regions;
pub mod visibility;

pub use boundary::ArcSet;
pub use geom::{BoundaryPoint, EdgeRef, GeomError, Location, Orientation, Point, Polygon, ValidationReport, Violation};
pub use paths::{PathError, ReflectionPath};
pub use rational::Rational;
pub use visibility::{BoundaryPiece, PieceKind, Region, VisibilityError, WindowChord};
