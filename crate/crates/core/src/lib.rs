//! Pivot, loop complementation and dual pivot on set systems, delta-matroid
//! checkers, exact linear algebra over prime fields, graphs with loops and
//! the vertex-flip group.

pub mod checks;
mod dense;
pub mod error;
pub mod flip;
pub mod gen;
pub mod graph;
pub mod ground;
pub mod input;
pub mod linalg;
pub mod setsys;
pub mod suites;

pub use checks::{CheckVerdict, MatroidDescription, Method, RankProfile, TripleReport, Witness};
pub use error::{Error, Result};
pub use flip::{Flip, FlipAssignment, FlipOp, FlipWord, NormalForm};
pub use graph::{Graph, KernelSet, LocalMode};
pub use ground::{GroundSet, Subset, MAX_GROUND};
pub use input::{parse_inputs, Input};
pub use linalg::{FMatrix, Field, StandardRep, Symmetry};
pub use setsys::{Extremal, PseudoMode, SetSystem};
pub use suites::{run_verify, Report, SuiteOptions};
