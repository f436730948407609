//! Finite connectivity spaces, their sheaf topoi, and the translations
//! between connectivity spaces, finite topologies and finite posets.
//!
//! Subsets of a ground set are stored as `u64` bitsets, so every ground set
//! has at most 64 points.

pub mod connectivity;
pub mod error;
pub mod format;
pub mod poset;
pub mod random;
pub mod sheaf;
pub mod sieve;
pub mod subset;
pub mod topology;
pub mod translate;

pub use connectivity::{is_connective_morphism, ConnectiveMorphism, ConnectivitySpace};
pub use error::{Error, Result};
pub use poset::{
    are_isomorphic, birkhoff_representation, BirkhoffRepresentation, MonotoneMap, Poset,
};
pub use sheaf::{
    glue_from_irreducibles, is_sheaf, limit_over, restrict_to_irreducibles, verify_equivalence,
    FinitePresheaf, Site,
};
pub use sieve::{covering_sieves, minimal_covering_sieve, verify_topology_axioms, Sieve};
pub use subset::{
    connectivity_closure, integral_closure, GroundSet, PointMap, Subset, SubsetFamily,
};
pub use topology::{is_continuous, FiniteTopology};
pub use translate::{
    down_set_space, down_set_topology, irreducible_open_poset, irreducible_poset,
    morita_equivalent, MoritaObject,
};
