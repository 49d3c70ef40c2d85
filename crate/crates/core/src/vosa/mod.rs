//! Concrete block families: the neutral free fermion, charged free fermions
//! and lattice theta blocks.

mod charged;
mod fermion;
mod lattice;

pub use charged::{charged_char_product, charged_char_theta, ChargedConstants, ChargedFermionParams};
pub use fermion::{ff_block, ff_family, fermion_zhu_algebra, FermionBlockLabel, Insertion};
pub use lattice::{
    lattice_block_table, lattice_theta, poisson_sides, smith_normal_form, CosetVector, Lattice, LatticeDualData,
    ThetaParity, DEFAULT_RANK_CAP,
};
