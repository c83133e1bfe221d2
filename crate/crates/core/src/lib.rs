pub mod affine_base;
pub mod cli;
pub mod gf2;
pub mod lattice;
pub mod mirror_square;
pub mod monodromy;
pub mod sheaf;
