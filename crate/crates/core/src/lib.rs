//! Symmetric rank, symmetric border rank and Waring decompositions of binary
//! forms, i.e. of states of `N` indistinguishable two-level bosons.
//!
//! The crate is `no_std` (it needs `alloc`). File formats, the command line
//! front end and parallel sweeps live in the `waring-lab` companion crate.
//!
//! Conventions used throughout:
//!
//! * A [`BinaryForm`] of degree `N` stores `a_0..a_N` in the binomial
//!   convention `p(x, y) = Σ C(N, i) a_i x^i y^(N-i)`; index `i` is the power
//!   of `x`. Monomial coefficients are available through
//!   [`BinaryForm::to_monomial_coeffs`].
//! * A [`ManyBodyState`] stores `c_0..c_N`, where `c_k` multiplies the
//!   normalized Fock state with `N - k` particles up and `k` particles down.
//!   The variable `x` is the up mode and `y` the down mode.
#![no_std]
#![warn(rust_2018_idioms)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod catalecticant;
mod error;
pub mod form;
mod linalg;
pub mod oracle;
pub mod roots;
mod special;
pub mod states;
pub mod sylvester;

pub use catalecticant::{catalecticant, numerical_rank, weighted_catalecticant, ComplexMatrix, RankReport};
pub use error::{Error, Result};
pub use form::{
    expand_linear_power, form_distance, form_to_state, state_to_form, BinaryForm, LinearForm, ManyBodyState,
};
pub use roots::{is_square_free, roots_of_binary_form, ProjectiveRoot, SquareFreeReport};
pub use special::{binomial, generic_rank};
pub use sylvester::{
    border_rank, decompose, generalized_decompose, symmetric_rank, Decomposition, GeneralizedDecomposition,
    GeneralizedTerm, SylvesterConfig, SymmetricRank, Term, Tolerances,
};

pub use num_complex::Complex64;
