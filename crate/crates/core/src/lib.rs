//! Exact computational algebra for finitely presented graded modules over
//! GF(2) polynomial algebras.
//!
//! The crate expands a finite presentation into degreewise GF(2) linear
//! algebra and computes Hilbert functions, Koszul homology (Tor and Ext
//! against the residue field), projective dimension, depth by three
//! independent routes, Dickson invariant generators, and the coinvariant /
//! torsion decomposition attached to a corank-one restriction of variables.
//! A curated catalog of module pairs and a verification harness turn the
//! structural identities relating these invariants into runnable checks.

pub mod catalog;
pub mod dickson;
pub mod error;
pub mod f2poly;
pub mod grmodule;
pub mod gysin;
pub mod homalg;
pub mod linalg;
pub mod suites;
pub mod textio;

pub use catalog::{CatalogEntry, Suite};
pub use dickson::{DicksonSystem, SubgroupFlag};
pub use error::Error;
pub use f2poly::{AlgebraMap, Monomial, Polynomial, Ring, RingDescriptor};
pub use grmodule::{DegreewiseModule, GradedPresentation, HilbertFunction};
pub use gysin::GysinTriple;
pub use homalg::{BettiTable, Depth, DepthMethod, DepthReport, ProjDim};

pub type Result<T> = std::result::Result<T, Error>;
