//! Finite left loops, their transversal decompositions in groups, and the
//! semidirect products of left loops with groups.

pub mod error;
pub mod fingroup;
pub mod finloop;
pub mod identities;
pub mod numerics;
pub mod perm;
pub mod semidirect;
pub mod sweep;
pub mod transversal;

pub use error::{Error, Result};
pub use fingroup::{small_group_catalog, CatalogGroup, FiniteGroup, IndexSet};
pub use finloop::{enumerate_left_loops, FiniteLeftLoop};
pub use identities::{check_identity, IdentityReport, IdentityTag};
pub use perm::{PermGroup, Permutation};
pub use semidirect::{
    external_product, heisenberg_spec, standard_product, validate_external, ExternalSpec,
    ProductGroup, StdProductSpec,
};
pub use sweep::{catalog_sweep, SweepConfig, Violation};
pub use transversal::{decompose, triangular_decomposition, TransversalDecomposition};
