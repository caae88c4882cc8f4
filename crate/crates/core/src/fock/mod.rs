//! Charged free fermions `ψₙ, ψ*ₙ` (odd `n`) acting on dual Fock words, and
//! the boson–fermion correspondence on the charge `−1` sector.

pub mod boson;
pub mod word;

pub use boson::{
    bar_s_series, j_bar_s_convert, j_in_bar_s, t_matrix_element_oracle, Direction, FockTables,
};
pub use word::{basis_enum, normal_order, DualWord, Mode, ModeKind};
