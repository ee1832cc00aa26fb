//! Exact-rational computations on finitely generated Sullivan minimal algebras.
//!
//! The crate computes cohomology, the word-length (Milnor–Moore type) spectral
//! sequence and its Ext version built from the acyclic closure, the Toomer
//! invariant e₀ and the Ext-filtration invariant r. It needs only `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
pub mod closure;
pub mod complex;
pub mod corpus;
pub mod error;
pub mod ext;
pub mod homology;
pub mod invariants;
pub mod linalg;
pub mod model;
pub mod spectral;

pub use algebra::{FreeAlgebra, Generator, GradedBasis, Monomial, Polynomial};
pub use closure::{AcyclicClosure, ClosureElement, GammaMonomial};
pub use complex::Level;
pub use error::{Error, Result};
pub use ext::{ExtClass, HomComplex, HomElement, RInvariant};
pub use invariants::{InvariantReport, Outcome};
pub use homology::{Cohomology, CohomologyClass, Ellipticity, EllipticityCertificate};
pub use model::{SullivanModel, ValidationReport, Violation, WordDecomposition};

/// Exact rational coefficients.
pub type Rational = num_rational::BigRational;
