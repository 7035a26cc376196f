//! Exact computations around Rock blocks of symmetric groups.
//!
//! - [`partitions`]: abacus calculus, cores, quotients, Rouquier cores and block index sets.
//! - [`lr`]: Littlewood–Richardson coefficients.
//! - [`decmat`]: Rock block decomposition matrices and the James adjustment factorization.
//! - [`weyl`]: a brute-force oracle for decomposition numbers of Schur algebras.
//! - [`superalg`], [`algebra`], [`doubles`]: Schur super-bialgebras and their doubles.
//! - [`schiver`]: Schiver doubles of quivers, edge reversal and θ.
//! - [`wreath`]: the corner of 𝒟_{A₁}(n, r) that is a wreath product k[x]/(x²) ≀ Σ_r.
//! - [`complex`], [`walk`], [`powersum`]: cochain complexes, walk complexes and power-sum complexes.
//! - [`exactlin`], [`matrix`]: linear algebra over Q and F_p, labelled integer matrices.

pub mod algebra;
pub mod complex;
pub mod decmat;
pub mod doubles;
pub mod error;
pub mod exactlin;
pub mod lr;
pub mod matrix;
pub mod partitions;
pub mod powersum;
pub mod schiver;
pub mod superalg;
pub mod walk;
pub mod weyl;
pub mod wreath;

pub use error::{Error, Result};
pub use matrix::{Label, LabeledMatrix};
pub use partitions::{PQuotient, Partition};
