//! Exact-arithmetic engine for cyclotomic aperiodic substitution tilings:
//! arithmetic in Z[zeta_2n] and the ring of diagonals, substitution-matrix
//! algebra, prototiles and substitution rules with exact vertices, rhombic
//! edge analysis, and a gaps-to-prototiles search.

pub mod bigfloat;
pub mod builtins;
pub mod cyclo;
pub mod diag;
pub mod edge;
pub mod matrix;
pub mod render;
pub mod tiling;
pub mod error;
pub mod gaps;
pub mod geom;
pub mod ksk;
pub mod lb;

pub use cyclo::CycloInt;
pub use diag::{DiagElem, ParitySetTag};
pub use error::CastError;
