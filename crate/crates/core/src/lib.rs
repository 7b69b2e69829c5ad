//! Equivariant complex K-theory ranks `K^0_G(V)`, `K^1_G(V)` for finite
//! groups `G` of orthogonal matrices acting on `R^n`.
//!
//! The main pipeline constructs the Pin double cover `G_rho` of `G` inside
//! the real Clifford algebra, counts conjugacy classes of the cover and of
//! the preimage of `SO(V)`, and solves for the ranks. Two independent routes
//! cross-check the result: Karoubi's oriented-conjugacy-class count, which
//! never touches the cover, and closed-form partition combinatorics for the
//! symmetric and alternating groups. The [`onfamily`] module evaluates the
//! symbolic answers for compact `O(n)` families, including the K-theory of
//! the reduced group C*-algebra of `GL(n, R)`.
//!
//! Module map:
//! - [`clifford`]: blade arithmetic in `Cl(R^n)` with `v*v = -<v,v>`.
//! - [`matgroup`]: finite orthogonal matrix groups, classes, centralizers.
//! - [`cover`]: Pin lifts and the exact `(g, ±1)` double cover.
//! - [`ktheory`]: the rank formulas and Karoubi's independent count.
//! - [`partitions`]: distinct-part partition statistics `a_n, b_n, p_n, i_n`.
//! - [`onfamily`]: symbolic `O(n)` / `GL(n, R)` answers.
//! - [`groups`]: the built-in group zoo used by the CLI and the test corpus.
//! - [`verify`]: the cross-verification suite run by `pinrank verify`.

pub mod clifford;
pub mod cover;
pub mod error;
pub mod exec;
pub mod groups;
pub mod ktheory;
pub mod matgroup;
pub mod onfamily;
pub mod partitions;
pub mod verify;

pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;
