//! Exact computational engine for finite-type cluster algebras.
//!
//! The library realizes cluster algebras of simply-laced finite type from the
//! representation theory of Dynkin quivers: indecomposable modules over F_p,
//! quiver-Grassmannian point counts interpolated to polynomials in q, the
//! Laurent-polynomial map from objects to cluster variables, seed mutation and
//! exchange-graph enumeration, and the degeneration (Hall-style) product on
//! exceptional objects. Everything is exact: prime-field linear algebra,
//! arbitrary-precision integers, rational interpolation with integrality
//! checks.
//!
//! Layering, bottom up:
//! - [`quiver`]: Dynkin quivers, Euler form, Coxeter transformation, roots.
//! - [`ffalg`]: dense F_p matrices, kernels, echelon forms, subspace streams.
//! - [`rep`]: explicit indecomposables, Hom/Ext, iso-type decomposition.
//! - [`context`]: the per-quiver immutable context (tables + caches).
//! - [`grassmann`]: submodule counting and polynomial interpolation.
//! - [`category`]: objects of the orbit category, Ext¹ there, middle terms,
//!   exceptional objects, tilting objects, λ-vectors.
//! - [`laurent`]: exact multivariate Laurent polynomials.
//! - [`ccmap`]: the object → cluster-variable map and denominators.
//! - [`mutation`]: seeds, mutation, exchange-graph BFS.
//! - [`filtration`]: ε-forms, graded leading terms, fans, toric lifts.
//! - [`hall`]: multiplication identities, degeneration chains, basis expansion.

pub mod category;
pub mod ccmap;
pub mod context;
pub mod error;
pub mod ffalg;
pub mod filtration;
pub mod grassmann;
pub mod hall;
pub mod laurent;
pub mod mutation;
pub mod quiver;
pub mod rep;

pub use error::{Error, Result};
