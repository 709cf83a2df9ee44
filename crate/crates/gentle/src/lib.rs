//! Gentle algebras and their marked-surface models.

pub mod algebra;
pub mod arcs;
pub mod higher;
pub mod io;
pub mod linalg;
pub mod oracle;
pub mod rigidity;
pub mod strings;
pub mod surface;
