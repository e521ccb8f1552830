//! Local polynomial quasi-Trefftz spaces for linear differential operators.
//!
//! Given a linear scalar differential operator `L` with smooth variable
//! coefficients (any dimension, any order), a center point, and a degree
//! `p`, this crate constructs a basis of the space of polynomials `Π` of
//! degree ≤ p whose image `LΠ` has vanishing Taylor expansion of degree
//! `p − γ` at the center, where `γ` is the order of `L`. Such polynomials
//! approximate smooth solutions of `L u = 0` to the same local order as
//! their degree, while the space is much smaller than full `P_p` — the
//! dimension drops from `dim P_p` to `dim P_p − dim P_{p−γ}`.
//!
//! The construction never forms a global linear system. It works degree by
//! degree: the operator splits into its principal part (the order-`γ` terms,
//! frozen at the center), which maps each degree slice onto the slice `γ`
//! lower and admits an explicit one-term-at-a-time inverse on a cone of
//! monomials, plus a remainder that strictly raises the degree offset and is
//! therefore nilpotent under truncation. Forward substitution through the
//! degrees then extends any seed polynomial taken outside the cone into a
//! kernel element, and the seeds enumerate a basis.
//!
//! Everything is generic over the coefficient scalar: [`Rational`] runs the
//! identical algorithms in exact arithmetic (residuals are identically zero,
//! not small), `num_complex::Complex64` trades that for speed and complex
//! coefficients. The [`oracle`] module provides an independent validation
//! route — dense matrix assembly plus fraction-free integer elimination —
//! that shares no code with the constructive path.
//!
//! ```
//! use qtrefftz::{GradedPoly, MultiIndex, OperatorSpec, Rational};
//! use num_traits::One;
//!
//! // the Laplacian in two variables, truncated at degree 2
//! let one = GradedPoly::constant(2, vec![0.0, 0.0], Rational::one());
//! let op = OperatorSpec::new(
//!     2, 2, 2, vec![0.0, 0.0],
//!     [
//!         (MultiIndex::new(vec![2, 0]), one.clone()),
//!         (MultiIndex::new(vec![0, 2]), one),
//!     ],
//! ).unwrap();
//! let basis = qtrefftz::quasi_trefftz_basis(&op).unwrap();
//! // 1, y, x, xy and y² − x²: five of the six polynomials of degree ≤ 2
//! assert_eq!(basis.len(), 5);
//! for e in basis.elements() {
//!     assert!(op.apply_quasi_trefftz(e).unwrap().is_zero());
//! }
//! ```

pub mod basis;
pub mod error;
pub mod io;
pub mod multiindex;
pub mod operator;
pub mod oracle;
pub mod polynomial;
pub mod rightinverse;
pub mod scalar;

pub use basis::{
    expected_basis_len, kernel_element, particular_solution, quasi_trefftz_basis,
    quasi_trefftz_basis_with_seeds, right_inverse_s, u_seed_monomials, QTBasis,
};
pub use error::Error;
pub use multiindex::MultiIndex;
pub use operator::{OperatorSpec, PrincipalPart};
pub use polynomial::{GradedPoly, HomogeneousPoly, DEFAULT_REL_TOL};
pub use rightinverse::{select_pivot, PivotData};
pub use scalar::{CoeffRepr, Rational, Scalar};

/// Floating-point coefficient scalar, re-exported for downstream callers.
pub use num_complex::Complex64;
