//! Geometric models of hereditary gentle algebras.
//!
//! The crate covers gentle presentations, their marked ribbon surfaces,
//! permissible curves and string modules, the embedding of module curves into
//! graded curves for the perfect derived category, an exact linear-algebra
//! oracle, and the 2-term silting pipeline that certifies the global
//! dimension bound for silted algebras.

pub mod algebra;
pub mod curves;
pub mod embed;
mod canon;
pub mod error;
pub mod fixtures;
pub mod linalg;
pub mod oracle;
pub mod rational;
pub mod silting;
pub mod surface;

pub use algebra::{GentlePresentation, HereditaryType, Quiver};
pub use error::{AlgebraError, CurveError, OracleError, SiltingError, SurfaceError};
