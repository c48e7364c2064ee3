//! Two-list-coloring of planar graphs of girth at least six so that every
//! monochromatic component is a short path.

pub mod coloring;
pub mod error;
pub mod families;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod paths;
pub mod reducer;

pub use coloring::{Color, Coloring, ListAssignment};
pub use error::{Error, Result};
pub use graph::{Face, FaceId, PlanarGraph, Vertex};
