//! The Weil representation on `Sp(2m) × O(2k)` acting on polynomial Gaussians.

mod word;

pub use word::{
    embed_matrices, fourier_rows_matrix, is_symplectic, j_matrix, theta_matrix, Generator,
    Primitive, SymplecticWord,
};

mod action;

pub use action::{act_group, act_orthogonal, epsilon_sign, matrix_coefficient, pairing, section_value};

mod lie;

pub use lie::{act_lie, act_lie_raising, build_p0, lowering_element, raising_element};
