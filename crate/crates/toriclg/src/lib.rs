pub mod exact_linalg;
pub mod lp;
pub mod polyhedra;
pub mod characters;
pub mod secondary_fan;
pub mod fixtures;
pub mod lg;
