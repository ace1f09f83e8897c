//! Numerical machinery for weighted mixed-norm Bergman spaces on homogeneous
//! cones and Siegel domains: generalized power functions and gamma integrals,
//! invariant lattices, Bergman kernels and projectors, the positive cone
//! operator and its norm scans, atomic synthesis/sampling, spectral boundary
//! extension, and quantitative branch-oscillation and ratio bounds — all at
//! desk scale, with every experiment reproducible from a seeded config.

pub mod atomic;
pub mod boundary;
pub mod cone;
pub mod domain;
pub mod error;
pub mod experiment;
pub mod kernel;
pub mod lattice;
pub mod opnorm;
pub mod projector;
pub mod quad;
pub mod util;
pub mod weight;

pub use cone::{from_spec, Cone, ConeSpec};
pub use domain::{DomainSpec, Grid, GridFunction, SiegelDomain};
pub use error::{Error, Result};
pub use lattice::{DomainLattice, Lattice};
pub use weight::WeightVector;
