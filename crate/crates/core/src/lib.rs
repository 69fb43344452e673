//! Exact-arithmetic engine for 2,3-integrable GL(2)-structures of degree 4.
//!
//! The library is organized around the objects that appear in the geometry:
//!
//! - [`binform`]: binary forms with exact rational coefficients in the
//!   binomial-scaled basis, Clebsch--Gordan pairings (transvectants), the
//!   SL(2)/GL(2) actions, and the degree-8 discriminant.
//! - [`exterior`]: a small exterior-calculus kernel -- differential forms on
//!   an abstract coframe with multivariate (Laurent) polynomial coefficients,
//!   wedge products, form-valued pairings, and a rule-driven exterior
//!   derivative.
//! - [`structeq`]: the structure equations of a 2,3-integrable
//!   GL(2)-structure, the 9x9 torsion matrix J(T), the equivalence-method
//!   absorption constants, the bi-secant torsion obstruction, and the d^2 = 0
//!   closure verification.
//! - [`roottype`]: classification of real binary octics into the 55 root
//!   types, the degeneration poset with numeric limit witnesses, and DOT
//!   export of the Hasse diagram.
//! - [`leafcheck`]: rank and tangency verification for the leaf
//!   classification (rank J(v) = k+1, range J(v) = tangent space of the root
//!   type, det J proportional to the discriminant).
//! - [`csp3`]: the conformal-symplectic group CSp(3), its action on the
//!   Lagrangian Grassmannian chart, nilpotent exponentials, reconstruction of
//!   representative hydrodynamic PDE relations, PDE symbols, hyperbolicity,
//!   and Veronese cone sections.
//! - [`reduction`]: the symmetry-reduced coframe for the rational normal
//!   cone orbit and its integrated structure equations.
//!
//! All core computations are exact over arbitrary-precision rationals; the
//! only floating-point paths are the numeric root classifier and the float
//! variants of the hyperbolicity/rank checks, each with an explicit
//! tolerance.

pub mod binform;
pub mod csp3;
pub mod error;
pub mod exterior;
pub mod leafcheck;
pub mod linalg;
pub mod rat;
pub mod reduction;
pub mod roottype;
pub mod sampling;
pub mod structeq;

pub use error::Gl2Error;
pub use rat::Rat;
