//! Homotopical Khovanov homology over GF(2) for link diagrams drawn on a
//! closed oriented surface.
//!
//! A diagram's resolution circles carry free-homotopy classes in the surface;
//! the chain complex gains a third grading valued in the free abelian group on
//! nontrivial classes, and the differential keeps only the part of the usual
//! Khovanov differential that preserves it.

pub mod diagram;
pub mod error;
pub mod gf2;
pub mod homology;
pub mod khovanov;
pub mod random;
pub mod state_cube;
pub mod surface_group;

pub use diagram::Diagram;
pub use error::{CaseError, CubeError, DiagramError, Gf2Error, GroupError, KhError, WordError};
pub use homology::{compare, kh_classical, kh_h, kh_with, verify_d_squared, HomologyTable, Mismatch};
pub use khovanov::{Flavor, KhOptions};
pub use surface_group::{ConjClass, GradingElem, SurfaceBackend, Word};
