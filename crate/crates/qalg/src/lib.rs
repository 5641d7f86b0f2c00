//! Exact computer algebra for quantized enveloping algebras.
//!
//! The crate builds, over the exact field Q(nu^(1/D)) of univariate rational
//! functions, the quantized enveloping algebra U_q(g) of a finite-type root
//! system, its Type-1 weight modules, braidings and coboundary commutors,
//! quantum symmetric and exterior algebras with Hilbert-series and flatness
//! checks, and, for a cominuscule parabolic, the quantum Clifford algebra
//! together with the Dolbeault-Dirac element. Every identity is checked by
//! exact matrix or relation computation; floating point enters only through
//! explicitly requested specialization at numeric q.

pub mod braiding;
pub mod clifford;
pub mod dirac;
pub mod linalg;
pub mod quadratic;
pub mod rep;
pub mod roots;
pub mod scalar;
pub mod uq;

pub use braiding::{BraidError, LinearMap};
pub use clifford::{CliffError, CominusculeContext, ExteriorAlgebraRep, Side, StarStructure};
pub use dirac::{DiracError, DiracMatrix, KoszulElement};
pub use linalg::Matrix;
pub use quadratic::{AlgebraKind, QuadError, QuadraticAlgebra};
pub use rep::{GrothendieckElement, RepError, WeightModule};
pub use roots::{ParabolicDatum, Root, RootSystem, Type, Weight};
pub use scalar::{FieldElement, ScalarContext, ScalarError};
