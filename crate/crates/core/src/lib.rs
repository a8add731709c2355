#![allow(clippy::needless_range_loop, clippy::len_without_is_empty)]

pub mod algebra;
pub mod decomp;
pub mod dsl;
pub mod homology;
pub mod igusa;
pub mod linalg;
pub mod morita;
pub mod quiver;
pub mod report;
pub mod repmod;
pub mod sample;

pub use algebra::{AlgebraError, BoundAlgebra, Presentation, Relation};
pub use decomp::{ClassId, DecompError, IsoRegistry};
pub use homology::DimResult;
pub use igusa::{K0Element, PhiReport};
pub use linalg::{FieldSpec, Matrix, Scalar};
pub use morita::{GluedAlgebra, IdealMode};
pub use quiver::{Path, Quiver};
pub use report::{Report, Status};
pub use repmod::Representation;
