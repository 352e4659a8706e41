//! Exact multiplicity data for blocks of the Schur algebras `S(2,r)` and
//! `S_q(2,r)`.
//!
//! The crate computes, for a block with `w` simple modules,
//!
//! * the decomposition matrix `D` (`[Δ(m):L(n)]`),
//! * the tilting matrix `T` (`[T(m):Δ(n)]`),
//! * the Cartan matrix `C = DᵀD` and the Cartan matrix `C' = T·Tᵀ` of the
//!   Ringel dual,
//!
//! all from the short-exact-sequence recursions for Weyl and tilting modules
//! of `GL₂` and its quantum analogue. On top of these it provides a linkage
//! partitioner for the whole algebra and a set of executable checks
//! ([`verify`]) for the combinatorial identities satisfied by the matrices,
//! including Ringel self-duality of blocks with `2p^k` simple modules.
//!
//! Weights are identified with the integer `λ₁ − λ₂`; block indices `m`
//! enumerate the weights of a primitive block in increasing order.

pub mod block;
pub mod classical;
mod error;
pub mod linkage;
pub mod row;
pub mod verify;
pub mod weights;

pub use block::{BlockMatrices, BlockShape, CartanMatrix, MultiplicityMatrix, TorsionImage};
pub use classical::{Recursions, RowKind};
pub use error::{Error, Result};
pub use linkage::BlockComponent;
pub use row::SparseRow;
pub use verify::{Status, VerificationReport, Witness};
pub use weights::{BlockSpec, LeadingPart, StripResult, Variant};
