//! Exact computation of the associated primes of every power of a graph's
//! edge ideal, for simple connected non-bipartite graphs at desk scale.
//!
//! The formula side works through generalized ear decompositions (the
//! invariants `phi` and `psi`), factor-critical replication, and
//! enumeration of dominant* vertex sets, producing `astab`, `dstab`, and
//! the full chain `Ass(I^k)`. The [`ideal`] module is an independent
//! monomial-ideal oracle (powers, colon, irreducible decomposition) used to
//! verify every answer directly on `I_G^k`.
//!
//! With the default `parallel` feature the enumeration loops fan out over
//! rayon; disabling it yields a fully sequential build with identical
//! results.

#![forbid(unsafe_code)]

pub mod corpus;
pub mod ear;
pub mod error;
pub mod graph;
pub mod ideal;
pub mod limits;
pub mod matching;
mod par;
pub mod replication;
pub mod stab;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
pub use limits::Limits;
