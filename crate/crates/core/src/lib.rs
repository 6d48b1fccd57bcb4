//! Finite transformation semigroups with an invariant set.
//!
//! For `X = {0, .., n-1}` and a nonempty `Y ⊆ X` this crate works with the chain of
//! subsemigroups `Fix(X,Y) ⊆ S̄(X,Y) ⊆ Ω̄(X,Y) ⊆ T̄(X,Y)` of the full transformation
//! semigroup, where `Ω̄(X,Y) = { f : Yf = Y }`. Each structural characterization
//! (regular and unit-regular elements, Green's relations, ideals, the kernel) is
//! implemented as a fast predicate next to a definitional brute-force oracle.

mod bitset;
pub mod error;
pub mod extnat;
pub mod ideals;
pub mod partition;
pub mod regularity;
pub mod semigroup;
pub mod transform;
pub mod verify;

pub use error::{Error, Result};
pub use extnat::{ExtNat, FiberProfile, IndexedCover};
pub use partition::KernelPartition;
pub use transform::{Context, Family, MembershipFlags, Transformation};
