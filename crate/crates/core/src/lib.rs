//! Exact discrete mixed volumes and mixed Ehrhart theory for lattice polytopes.
//!
//! The crate computes, with exact rational arithmetic throughout:
//!
//! - lattice-point counts of lattice polytopes and their Minkowski sums,
//! - univariate and multivariate Ehrhart polynomials, h*-vectors and
//!   mixed volumes read off from Ehrhart data,
//! - the discrete mixed volume `DMV(P_1, …, P_k)`, the mixed Ehrhart
//!   polynomial `ME(n) = DMV(nP_1, …, nP_k)` and the mixed h*-vector,
//! - real-rootedness, log-concavity and unimodality of mixed
//!   h*-polynomials of dilated collections, certified with Sturm sequences.
//!
//! ```
//! use mixed_ehrhart::{lattice::LatticePolytope, mixed::{dmv, PolytopeCollection}};
//!
//! let cube = LatticePolytope::cube(3, 1);
//! let pair = PolytopeCollection::new(vec![cube.clone(), cube]).unwrap();
//! assert_eq!(dmv(&pair).unwrap(), 12.into());
//! ```

pub mod ehrhart;
pub mod enumerate;
pub mod error;
pub mod io;
pub mod lattice;
pub mod mixed;
pub mod poly;
pub mod roots;
pub mod suite;

pub use error::{Error, Result};
