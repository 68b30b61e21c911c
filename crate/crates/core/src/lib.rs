//! Cohomology of graded posets with coefficients in functors to abelian groups.

pub mod abelian;
pub mod complex;
pub mod coxeter;
pub mod fixtures;
pub mod functor;
pub mod global;
pub mod io;
pub mod linalg;
pub mod morse;
pub mod pipeline;
pub mod poset;
pub mod sequence;
pub mod simplex;
