//! Exact-enumeration toolkit for the low-degree long code over F3.
//!
//! The crate is organised bottom-up:
//!
//! - [`gf3poly`]: the field F3, polynomials with individual degrees at most 2,
//!   dense value tables, the subspaces `P(r, d)` and their duals.
//! - [`fourier`]: characters of `P(r, d)`, minimum-support coset
//!   representatives, the Fourier transform, Parseval, influences, dictators.
//! - [`cayley`]: Cayley noise operators on F3, on all functions and on
//!   `P(r, 2d)`, their eigenvalues, lifts, moment equality, the noise
//!   interpolation bound, the key-lemma pipeline and the xi-gap probe.
//! - [`graphprod`]: the derandomized graph on `P(r, 2d)` with edges
//!   `f ~ f + a(p^2 + 1)`, dictator sets, the triangle partition and the
//!   Fourier identities satisfied by its independent sets.
//! - [`ugreduce`]: Unique Games instances with invertible linear constraints,
//!   the reduction to the coloring graph, the completeness coloring and the
//!   influence-based soundness decoder.
//! - [`cli`]: the subcommand driver used by the `lowdeg` binary.
//!
//! Conventions shared by every module:
//!
//! - Points of `F3^r` are indexed little-endian, `index = sum x_i * 3^i`.
//! - Elements of `P(r, d)` are indexed by their coefficient vector over
//!   [`gf3poly::basis`] (graded order), again little-endian base 3. Because the
//!   basis of `P(r, d)` is a prefix of the basis of `P(r, d')` for `d <= d'`,
//!   an element keeps the same index in every larger space.
//! - Characters of `P(r, d)` are indexed by coset id: the base-3 index of the
//!   functional `y_j = <beta, m_j>` over the same basis.

pub mod cayley;
pub mod cli;
pub mod error;
pub mod fourier;
pub mod gf3poly;
pub mod graphprod;
pub mod rng;
pub mod ugreduce;

pub use error::{Error, Result};
