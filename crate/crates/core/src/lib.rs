//! Degree-based weighted adjacency matrices.
//!
//! For a simple graph `G` and a symmetric weight `φ(x, y)` on vertex degrees,
//! the matrix `A_φ(G)` carries `φ(d_u, d_v)` on every edge `uv` and zero
//! elsewhere. This crate builds those matrices for a catalog of
//! topological-index weights, computes their spectra and energies, provides
//! closed-form spectra for complete, complete multipartite, crown and star
//! families, and runs edge-deletion/addition energy comparisons.
//!
//! Module map:
//!
//! | module | contents |
//! |--------|----------|
//! | [`graph`] | simple graphs, family generators, edge-list I/O |
//! | [`weight`] | the weight catalog with exact evaluation |
//! | [`exact`] | exact values of the form `c·√r` |
//! | [`matrix`] | `A_φ(G)`, partitions, quotient matrices |
//! | [`spectrum`] | numeric eigenvalues, grouping, energy, integrality |
//! | [`closed_form`] | closed-form spectra of the special families |
//! | [`perturbation`] | edge deletion/addition reports and sweeps |
//! | [`tables`] | reproduction of the reference comparison tables |
//! | [`oracle`] | exact characteristic polynomials and a Jacobi eigensolver |

pub mod closed_form;
pub mod error;
pub mod exact;
pub mod graph;
pub mod matrix;
pub mod oracle;
pub mod perturbation;
pub mod spectrum;
pub mod tables;
pub mod weight;

pub use error::{Error, Result};
pub use exact::Surd;
pub use graph::{FamilySpec, Graph};
pub use matrix::{Partition, SquareMatrix, SymmetricMatrix};
pub use spectrum::Spectrum;
pub use weight::WeightFunction;
