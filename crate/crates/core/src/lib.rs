//! Kirby elements and HKR-type invariants of closed 3-manifolds from finite-dimensional
//! ribbon Hopf algebras given by structure constants.

pub mod families;
pub mod cli;
pub mod evaluator;
pub mod field;
pub mod fusion;
pub mod hopf;
pub mod io;
pub mod kirby;
pub mod links;
pub mod linalg;
pub mod ribbon;
