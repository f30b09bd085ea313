//! Exact computations with modules over finite rings and the functors they define.

pub mod functor;
pub mod linalg;
pub mod module;
pub mod oracle;
pub mod ring;
