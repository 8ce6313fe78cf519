//! Symbolic machinery for ordinals below ε₀ and for prae-dilators.
//!
//! The crate is organised bottom-up:
//!
//! - [`ordinal`]: Cantor normal form arithmetic, the normal functions `f` and
//!   `g`, and their derivatives.
//! - [`order`]: finite orders, embeddings, finite subsets and coded countable
//!   orders (`1+X`, `(1+X)²`, `2^X`, ordinals, ...).
//! - [`praedilator`]: the prae-dilator interface, validators and a small zoo.
//! - [`extension`]: the extension `D^T(X)`, composition of dilators and the
//!   comparison isomorphism `ζ`.
//! - [`normal_f`]: the normal dilator `F` with `F(X) = 1 + Σ_{x∈1+X} (1+X)↾x`.
//! - [`exp_derivative`]: the exponential dilator `E`, the upper derivative
//!   `(E, ξ)` of `F` and the embedding `J: 2^X → D^G(X)`.
//! - [`wf`]: bounded descending-chain search and chain transfer.
//!
//! Every element of every order is an [`Elem`]; orders and dilators are trait
//! objects so that constructions can be nested freely.

pub mod elem;
pub mod exp_derivative;
pub mod extension;
pub mod normal_f;
pub mod order;
pub mod ordinal;
pub mod praedilator;
pub mod wf;

pub use elem::Elem;
pub use order::{CodedOrder, FinSubset, Order, OrderEmbedding};
pub use ordinal::{OrdKind, Ordinal};
pub use praedilator::{Dilator, NormalData, PraeDilator};
