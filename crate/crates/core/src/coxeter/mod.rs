//! Finite simply-laced Coxeter groups: graphs, root systems and exact
//! arithmetic on group elements (the simple elements of the Garside structure).

mod element;
mod graph;
mod roots;

pub use element::CoxeterElement;
pub use graph::{CoxeterGraph, DynkinType, GraphError};
pub use roots::{IndexOutOfRange, RootSystem};
