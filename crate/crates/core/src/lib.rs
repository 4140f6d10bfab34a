//! Exact computation of the geometric and algebraic Jantzen filtrations of
//! `sl2` modules arising as global sections of D-modules on base affine
//! space `C^2 \ {0}`.
//!
//! The crate is organised bottom-up:
//!
//! * [`scalar`]: exact rationals and the deformation ring `Q[s]/s^n`.
//! * [`weyl`]: normal-ordered differential operators, the embeddings `L` and
//!   `R`, PBW ordering in `U(sl2)` and the Harish-Chandra projection.
//! * [`linalg`]: subspaces of `Q^n` in reduced row echelon form.
//! * [`dmodules`]: the five global-sections modules on monomial bases.
//! * [`filtration`]: monodromy filtrations of nilpotent endomorphisms and the
//!   induced geometric Jantzen filtrations.
//! * [`jantzen`]: the algebraic Jantzen filtration and its comparison with the
//!   geometric one.
//! * [`render`]: DOT and ASCII diagrams of the module structures.

pub mod dmodules;
pub mod filtration;
pub mod jantzen;
pub mod linalg;
pub mod render;
pub mod scalar;
pub mod weyl;
