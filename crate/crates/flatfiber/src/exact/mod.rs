//! Exact linear algebra over the rationals and integer-lattice normal
//! forms: the arithmetic substrate for every other module.

pub mod lattice;
pub mod mat;
pub mod rat;

pub use lattice::{
    hnf_int, hnf_int_with_transform, snf, solve_affine, solve_affine_mod_lattice,
    solve_affine_mod_lattice_full, solve_int, IMat, IVec, Lattice,
};
pub use mat::{
    dot, is_zero_vec, kernel_basis, left_kernel_basis, rank, rref, solve, unit_vec, vadd, vneg,
    vscale, vsub, zero_vec, Mat, Vector,
};
pub use rat::{common_denominator, fmt_rat, frac, is_int, parse_rat, rat, Rat};
